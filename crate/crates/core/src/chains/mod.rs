//! Operators on selected qudits, collective operators, spin-chain and
//! square-lattice Hamiltonians, ground and thermal states.

mod classical;
mod ising;
mod quad;

pub use classical::{ising_classical_ground, xy_classical_ground};
pub use ising::{ising_free, ising_ground, ising_thermal};

use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::{QuantumOperator, Storage};
use crate::permute::{reorder_operator, Permutation};
use crate::policy::NumericPolicy;
use crate::state::{DensityMatrix, RegisterShape, StateVector};
use crate::states::pauli;
use crate::{CMatrix, CVector, C64};

/// Hermitian operators above this side use Lanczos for the ground state.
const LANCZOS_THRESHOLD: usize = 1 << 11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Boundary {
    #[default]
    Aperiodic,
    Periodic,
}

impl Boundary {
    pub fn from_periodic(periodic: bool) -> Self {
        if periodic {
            Boundary::Periodic
        } else {
            Boundary::Aperiodic
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainSpec {
    pub n_sites: usize,
    pub boundary: Boundary,
}

impl ChainSpec {
    pub fn new(n_sites: usize, boundary: Boundary) -> Result<Self> {
        if n_sites < 2 {
            return Err(Error::InvalidArgument(format!("a chain needs at least 2 sites, got {n_sites}")));
        }
        Ok(ChainSpec { n_sites, boundary })
    }

    /// Nearest-neighbor pairs `(k, k+1)`, then `(N, 1)` when periodic.
    pub fn bonds(&self) -> Vec<(usize, usize)> {
        let n = self.n_sites;
        let mut b: Vec<_> = (1..n).map(|k| (k, k + 1)).collect();
        if self.boundary == Boundary::Periodic {
            b.push((n, 1));
        }
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XYParams {
    pub jx: f64,
    pub jy: f64,
    pub b: f64,
}

impl XYParams {
    pub fn new(jx: f64, jy: f64, b: f64) -> Result<Self> {
        if !(jx.is_finite() && jy.is_finite() && b.is_finite()) {
            return Err(Error::InvalidArgument("XY parameters must be finite".into()));
        }
        Ok(XYParams { jx, jy, b })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams {
    temperature: f64,
}

impl ThermalParams {
    pub fn new(temperature: f64) -> Result<Self> {
        check_temperature(temperature)?;
        Ok(ThermalParams { temperature })
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }
}

pub(crate) fn check_temperature(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("temperature must be positive and finite, got {t}")));
    }
    Ok(())
}

fn single_qudit_dim(op: &QuantumOperator) -> usize {
    op.side()
}

fn check_site(k: usize, n: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::InvalidQuditList(format!("site {k} outside 1..={n}")));
    }
    Ok(())
}

fn identity_block(side: usize, storage: Storage) -> QuantumOperator {
    QuantumOperator::identity(RegisterShape::new(1, side).expect("identity block"), storage)
}

/// Kronecker chain with `ops[i].1` on site `ops[i].0` and identities
/// elsewhere. Sites must be distinct.
fn embed(ops: &[(usize, &QuantumOperator)], n: usize, d: usize, storage: Storage) -> Result<QuantumOperator> {
    let shape = RegisterShape::new(n, d)?;
    let mut acc: Option<QuantumOperator> = None;
    let mut pending = 1usize;
    let push = |acc: Option<QuantumOperator>, factor: QuantumOperator| match acc {
        None => factor,
        Some(a) => a.kron(&factor),
    };
    for site in (1..=n).rev() {
        match ops.iter().find(|(k, _)| *k == site) {
            Some((_, op)) => {
                if pending > 1 {
                    acc = Some(push(acc, identity_block(pending, storage)));
                    pending = 1;
                }
                acc = Some(push(acc, op.to_storage(storage)?));
            }
            None => pending *= d,
        }
    }
    if pending > 1 {
        acc = Some(push(acc, identity_block(pending, storage)));
    }
    acc.expect("at least one factor").with_shape(shape)
}

/// `op` acting on qudit `k` of an `n`-qudit register.
pub fn quditop(op: &QuantumOperator, k: usize, n: usize, storage: Storage) -> Result<QuantumOperator> {
    check_site(k, n)?;
    embed(&[(k, op)], n, single_qudit_dim(op), storage)
}

/// Two-qudit `op` with its qudit 1 placed on `k1` and its qudit 2 on `k2`.
pub fn twoquditop(op: &QuantumOperator, k1: usize, k2: usize, n: usize, storage: Storage) -> Result<QuantumOperator> {
    check_site(k1, n)?;
    check_site(k2, n)?;
    if k1 == k2 {
        return Err(Error::InvalidQuditList(format!("sites coincide ({k1})")));
    }
    let d = two_qudit_dim(op)?;
    let rest = d.pow((n - 2) as u32);
    let op = op.to_storage(storage)?;
    let base = if rest == 1 { op } else { identity_block(rest, storage).kron(&op) };
    let base = base.with_shape(RegisterShape::new(n, d)?)?;
    // output qudit k1 takes original qudit 1, k2 takes 2, the others keep their order
    let mut source = vec![0usize; n + 1];
    source[k1] = 1;
    source[k2] = 2;
    let mut next = 3;
    for (q, s) in source.iter_mut().enumerate().skip(1) {
        if q != k1 && q != k2 {
            *s = next;
            next += 1;
        }
    }
    let perm = Permutation::new((1..=n).rev().map(|q| source[q]).collect())?;
    reorder_operator(&base, &perm)
}

fn two_qudit_dim(op: &QuantumOperator) -> Result<usize> {
    let side = op.side();
    let d = (side as f64).sqrt().round() as usize;
    if d < 2 || d * d != side {
        return Err(Error::InvalidArgument(format!("two-qudit operator side {side} is not a square")));
    }
    Ok(d)
}

/// `quditop(op1, n1) * quditop(op2, n2)`.
pub fn interact(
    op1: &QuantumOperator,
    op2: &QuantumOperator,
    n1: usize,
    n2: usize,
    n: usize,
    storage: Storage,
) -> Result<QuantumOperator> {
    check_site(n1, n)?;
    check_site(n2, n)?;
    if n1 == n2 {
        return Err(Error::InvalidQuditList(format!("sites coincide ({n1})")));
    }
    if op1.side() != op2.side() {
        return Err(Error::DimensionMismatch { expected: op1.side(), found: op2.side() });
    }
    embed(&[(n1, op1), (n2, op2)], n, op1.side(), storage)
}

fn sum(terms: impl IntoIterator<Item = Result<QuantumOperator>>, shape: RegisterShape, storage: Storage) -> Result<QuantumOperator> {
    let mut acc = QuantumOperator::zeros(shape, storage);
    for t in terms {
        acc = acc.checked_add(&t?)?;
    }
    Ok(acc)
}

/// `sum_k quditop(op, k, n)`.
pub fn coll(op: &QuantumOperator, n: usize, storage: Storage) -> Result<QuantumOperator> {
    let shape = RegisterShape::new(n, op.side())?;
    sum((1..=n).map(|k| quditop(op, k, n, storage)), shape, storage)
}

/// `sum_k op1^(k) op2^(k+1)`, plus `op1^(N) op2^(1)` when periodic.
pub fn nnchain(
    op1: &QuantumOperator,
    op2: &QuantumOperator,
    n: usize,
    boundary: Boundary,
    storage: Storage,
) -> Result<QuantumOperator> {
    let spec = ChainSpec::new(n, boundary)?;
    let shape = RegisterShape::new(n, op1.side())?;
    sum(spec.bonds().into_iter().map(|(a, b)| interact(op1, op2, a, b, n, storage)), shape, storage)
}

/// `-sum sigma_z sigma_z + b sum sigma_x`.
pub fn ising(b: f64, n: usize, boundary: Boundary, storage: Storage) -> Result<QuantumOperator> {
    let zz = nnchain(&pauli::z(), &pauli::z(), n, boundary, storage)?;
    let field = coll(&pauli::x(), n, storage)?;
    zz.scale_real(-1.0).checked_add(&field.scale_real(b))
}

/// Nearest-neighbor `xx + yy + zz`.
pub fn heisenberg(n: usize, boundary: Boundary, storage: Storage) -> Result<QuantumOperator> {
    let xx = nnchain(&pauli::x(), &pauli::x(), n, boundary, storage)?;
    let yy = nnchain(&pauli::y(), &pauli::y(), n, boundary, storage)?;
    let zz = nnchain(&pauli::z(), &pauli::z(), n, boundary, storage)?;
    xx.checked_add(&yy)?.checked_add(&zz)
}

/// `jx sum xx + jy sum yy + b sum x`.
pub fn xy_hamiltonian(p: &XYParams, n: usize, boundary: Boundary, storage: Storage) -> Result<QuantumOperator> {
    let xx = nnchain(&pauli::x(), &pauli::x(), n, boundary, storage)?;
    let yy = nnchain(&pauli::y(), &pauli::y(), n, boundary, storage)?;
    let field = coll(&pauli::x(), n, storage)?;
    xx.scale_real(p.jx).checked_add(&yy.scale_real(p.jy))?.checked_add(&field.scale_real(p.b))
}

/// Site `(ix, iy)`, both 1-based, is qudit `ix + nx (iy - 1)`.
pub fn lattice_site(ix: usize, iy: usize, nx: usize) -> usize {
    ix + nx * (iy - 1)
}

/// Bonds of an `nx x ny` square lattice: horizontal rows first, then
/// vertical columns. Periodic wrap bonds are added for every direction of
/// length at least 2, so a length-2 direction carries each bond twice.
pub fn lattice_bonds(nx: usize, ny: usize, boundary: Boundary) -> Result<Vec<(usize, usize)>> {
    if nx == 0 || ny == 0 || nx * ny < 2 {
        return Err(Error::InvalidArgument(format!("lattice {nx}x{ny} needs at least 2 sites")));
    }
    let periodic = boundary == Boundary::Periodic;
    let mut bonds = Vec::new();
    for iy in 1..=ny {
        for ix in 1..nx {
            bonds.push((lattice_site(ix, iy, nx), lattice_site(ix + 1, iy, nx)));
        }
        if periodic && nx >= 2 {
            bonds.push((lattice_site(nx, iy, nx), lattice_site(1, iy, nx)));
        }
    }
    for ix in 1..=nx {
        for iy in 1..ny {
            bonds.push((lattice_site(ix, iy, nx), lattice_site(ix, iy + 1, nx)));
        }
        if periodic && ny >= 2 {
            bonds.push((lattice_site(ix, ny, nx), lattice_site(ix, 1, nx)));
        }
    }
    Ok(bonds)
}

/// `sum over bonds (a, b) of op1^(a) op2^(b)`.
pub fn lattice2d(
    op1: &QuantumOperator,
    op2: &QuantumOperator,
    nx: usize,
    ny: usize,
    boundary: Boundary,
    storage: Storage,
) -> Result<QuantumOperator> {
    let bonds = lattice_bonds(nx, ny, boundary)?;
    let n = nx * ny;
    let shape = RegisterShape::new(n, op1.side())?;
    sum(bonds.into_iter().map(|(a, b)| interact(op1, op2, a, b, n, storage)), shape, storage)
}

/// `-lattice2d(z, z) + b sum x`.
pub fn ising2d(b: f64, nx: usize, ny: usize, boundary: Boundary, storage: Storage) -> Result<QuantumOperator> {
    let zz = lattice2d(&pauli::z(), &pauli::z(), nx, ny, boundary, storage)?;
    let field = coll(&pauli::x(), nx * ny, storage)?;
    zz.scale_real(-1.0).checked_add(&field.scale_real(b))
}

fn require_hermitian(h: &QuantumOperator) -> Result<()> {
    let dev = h.hermitian_deviation();
    if dev > NumericPolicy::DEFAULT.hermitian_tol {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Rotates the global phase so the first largest-magnitude amplitude is
/// real and positive.
fn fix_phase(v: &mut [C64]) {
    let mut best = 0;
    let mut best_mag = -1.0;
    for (i, a) in v.iter().enumerate() {
        // small slack so rounding noise does not decide the pivot
        if a.norm() > best_mag * (1.0 + 1e-9) {
            best = i;
            best_mag = a.norm();
        }
    }
    if best_mag > 0.0 {
        let phase = v[best].conj() / best_mag;
        v.iter_mut().for_each(|a| *a *= phase);
    }
}

/// Normalized eigenvector of the smallest eigenvalue. Ties go to the first
/// eigenvector returned by the solver; the global phase makes the first
/// largest-magnitude amplitude real positive.
pub fn grstate(h: &QuantumOperator) -> Result<StateVector> {
    require_hermitian(h)?;
    let mut v: Vec<C64> = if h.side() > LANCZOS_THRESHOLD {
        linalg::lanczos_lowest(h.side(), |x, y| h.apply(x, y), 1e-12)?.1
    } else {
        let (_, vecs) = linalg::hermitian_eigen(&*h.dense()?);
        vecs.column(0).iter().copied().collect()
    };
    fix_phase(&mut v);
    StateVector::from_amplitudes(CVector::from_vec(v), h.shape())?.normalize()
}

/// `exp(-h/t) / Tr exp(-h/t)` through the eigendecomposition, shifted by
/// the smallest eigenvalue.
pub fn thstate(h: &QuantumOperator, t: f64) -> Result<DensityMatrix> {
    check_temperature(t)?;
    require_hermitian(h)?;
    let (vals, vecs) = linalg::hermitian_eigen(&*h.dense()?);
    let e0 = vals[0];
    let w: Vec<f64> = vals.iter().map(|&l| (-(l - e0) / t).exp()).collect();
    let z: f64 = w.iter().sum();
    let n = vals.len();
    let scaled = CMatrix::from_fn(n, n, |i, j| vecs[(i, j)] * (w[j] / z));
    let rho = &scaled * vecs.adjoint();
    let rho = (&rho + rho.adjoint()).unscale(2.0);
    Ok(DensityMatrix::new_unchecked(rho, h.shape()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirac::{ex, mkron};
    use crate::pauli_io::{decompose, DECOMPOSE_THRESHOLD};
    use crate::states::{cstate, u_cnot};
    use crate::util::{maxeig, mineig};
    use pauli::{e, x, y, z};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn terms(op: &QuantumOperator) -> usize {
        let s = decompose(op, false, DECOMPOSE_THRESHOLD).unwrap();
        s.split(['+', '-']).filter(|t| !t.is_empty()).count()
    }

    #[test]
    fn quditop_positions() {
        let d = Storage::Dense;
        assert_eq!(quditop(&x(), 1, 2, d).unwrap(), mkron([&e(), &x()]).unwrap());
        assert_eq!(quditop(&z(), 2, 2, d).unwrap(), mkron([&z(), &e()]).unwrap());
        assert_eq!(quditop(&z(), 2, 3, d).unwrap(), mkron([&e(), &z(), &e()]).unwrap());
        assert!(quditop(&z(), 0, 3, d).is_err());
        assert!(quditop(&z(), 4, 3, d).is_err());
        let q = quditop(&z(), 2, 3, d).unwrap();
        let eig = crate::linalg::hermitian_eigenvalues(&q.dense().unwrap());
        assert_eq!(eig.iter().filter(|&&v| v == 1.0).count(), 4);
    }

    #[test]
    fn twoquditop_embedding() {
        let d = Storage::Dense;
        assert_eq!(twoquditop(&u_cnot(), 1, 2, 2, d).unwrap(), u_cnot());
        let zz = mkron([&z(), &z()]).unwrap();
        assert_eq!(twoquditop(&zz, 1, 2, 3, d).unwrap(), interact(&z(), &z(), 1, 2, 3, d).unwrap());
        let swap = crate::permute::reordermat(&Permutation::new(vec![1, 2]).unwrap(), 2, d).unwrap();
        let s = twoquditop(&swap, 1, 2, 2, d).unwrap();
        let v01 = [c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)];
        let mut out = [c(0., 0.); 4];
        s.apply(&v01, &mut out);
        assert_eq!(out, [c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)]);
        // reversed slots put op's qudit 1 on the more significant site
        let xz = mkron([&x(), &z()]).unwrap();
        assert_eq!(twoquditop(&xz, 2, 1, 2, d).unwrap(), mkron([&z(), &x()]).unwrap());
        assert_eq!(twoquditop(&xz, 3, 1, 3, d).unwrap(), interact(&z(), &x(), 3, 1, 3, d).unwrap());
        assert!(twoquditop(&xz, 1, 1, 3, d).is_err());
        assert!(twoquditop(&xz, 1, 4, 3, d).is_err());
    }

    #[test]
    fn interact_properties() {
        let d = Storage::Dense;
        assert_eq!(interact(&z(), &z(), 1, 2, 2, d).unwrap(), mkron([&z(), &z()]).unwrap());
        let a = interact(&x(), &y(), 1, 2, 3, d).unwrap();
        let b = interact(&y(), &x(), 2, 1, 3, d).unwrap();
        assert_eq!(a, b);
        let third = quditop(&x(), 3, 3, d).unwrap();
        assert_eq!(&a * &third, &third * &a);
        assert!(interact(&x(), &y(), 2, 2, 3, d).is_err());
    }

    #[test]
    fn collective_operators() {
        let d = Storage::Dense;
        let cz = coll(&z(), 2, d).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| cz.get(i, i).re).collect();
        assert_eq!(diag, vec![2., 0., 0., -2.]);
        assert_eq!(coll(&e(), 3, d).unwrap(), QuantumOperator::identity(RegisterShape::qubits(3).unwrap(), d).scale_real(3.0));
        let jx = coll(&x(), 4, d).unwrap().scale_real(0.5);
        let jy = coll(&y(), 4, d).unwrap().scale_real(0.5);
        let j2 = &(&jx * &jx) + &(&jy * &jy);
        assert!((maxeig(&j2).unwrap() - 6.0).abs() < 1e-9);
    }

    #[test]
    fn chain_term_counts() {
        let d = Storage::Dense;
        assert_eq!(nnchain(&z(), &z(), 2, Boundary::Aperiodic, d).unwrap(), mkron([&z(), &z()]).unwrap());
        for n in 3..=6 {
            assert_eq!(terms(&nnchain(&z(), &z(), n, Boundary::Aperiodic, d).unwrap()), n - 1);
            assert_eq!(terms(&nnchain(&z(), &z(), n, Boundary::Periodic, d).unwrap()), n);
        }
        let ring = nnchain(&z(), &z(), 3, Boundary::Periodic, d).unwrap();
        let ev = crate::linalg::hermitian_eigenvalues(&ring.dense().unwrap());
        assert_eq!(ev.first(), Some(&-1.0));
        assert_eq!(ev.last(), Some(&3.0));
        assert!(nnchain(&z(), &z(), 1, Boundary::Aperiodic, d).is_err());
    }

    #[test]
    fn hamiltonian_examples() {
        let d = Storage::Dense;
        let h = ising(0.0, 2, Boundary::Aperiodic, d).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| h.get(i, i).re).collect();
        assert_eq!(diag, vec![-1., 1., 1., -1.]);
        for n in 2..=6 {
            let h = ising(0.0, n, Boundary::Aperiodic, d).unwrap();
            assert!((mineig(&h).unwrap() + (n - 1) as f64).abs() < 1e-12);
        }
        let hh = heisenberg(2, Boundary::Aperiodic, d).unwrap();
        let r = |a: f64| c(a, 0.);
        #[rustfmt::skip]
        let expected = [
            r(1.), r(0.), r(0.), r(0.),
            r(0.), r(-1.), r(2.), r(0.),
            r(0.), r(2.), r(-1.), r(0.),
            r(0.), r(0.), r(0.), r(1.),
        ];
        assert_eq!(hh, QuantumOperator::from_rows(4, 2, &expected).unwrap());
        assert!((mineig(&hh).unwrap() + 3.0).abs() < 1e-12);
        let h4 = heisenberg(4, Boundary::Periodic, d).unwrap();
        let cz = coll(&z(), 4, d).unwrap();
        assert_eq!(crate::util::comm(&h4, &cz).unwrap().max_abs_diff(&cz.scale_real(0.0)).unwrap(), 0.0);
    }

    #[test]
    fn xy_special_cases() {
        let d = Storage::Dense;
        let p = XYParams::new(1.0, 1.0, 0.0).unwrap();
        let zz = nnchain(&z(), &z(), 3, Boundary::Aperiodic, d).unwrap();
        let reduced = &heisenberg(3, Boundary::Aperiodic, d).unwrap() - &zz;
        assert!(xy_hamiltonian(&p, 3, Boundary::Aperiodic, d).unwrap().max_abs_diff(&reduced).unwrap() < 1e-15);
        let p = XYParams::new(0.0, 0.0, 0.7).unwrap();
        let field = coll(&x(), 3, d).unwrap().scale_real(0.7);
        assert!(xy_hamiltonian(&p, 3, Boundary::Periodic, d).unwrap().max_abs_diff(&field).unwrap() < 1e-15);
        assert!(XYParams::new(f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn lattice_bond_counts() {
        assert_eq!(lattice_bonds(2, 2, Boundary::Aperiodic).unwrap().len(), 4);
        assert_eq!(lattice_bonds(2, 2, Boundary::Periodic).unwrap().len(), 8);
        assert_eq!(lattice_bonds(3, 2, Boundary::Aperiodic).unwrap().len(), 7);
        assert_eq!(lattice_bonds(3, 3, Boundary::Periodic).unwrap().len(), 18);
        assert!(lattice_bonds(1, 1, Boundary::Aperiodic).is_err());
        // doubled wrap bonds double the zz coefficients of the 2x2 torus
        let s = Storage::Sparse;
        let torus = lattice2d(&z(), &z(), 2, 2, Boundary::Periodic, s).unwrap();
        let open = lattice2d(&z(), &z(), 2, 2, Boundary::Aperiodic, s).unwrap();
        assert_eq!(terms(&open), 4);
        assert_eq!(torus.max_abs_diff(&open.scale_real(2.0)).unwrap(), 0.0);
    }

    #[test]
    fn ising2d_examples() {
        let s = Storage::Sparse;
        let h = ising2d(0.0, 2, 2, Boundary::Aperiodic, s).unwrap();
        assert!(h.is_sparse());
        assert!((mineig(&h).unwrap() + 4.0).abs() < 1e-12);
        let line = ising2d(0.7, 5, 1, Boundary::Aperiodic, s).unwrap();
        assert!(line.entries_equal(&ising(0.7, 5, Boundary::Aperiodic, s).unwrap()));
        let h = ising2d(1.0, 3, 2, Boundary::Periodic, s).unwrap();
        assert_eq!(h.hermitian_deviation(), 0.0);
    }

    #[test]
    fn dense_sparse_agree() {
        let p = XYParams::new(0.3, -1.1, 0.45).unwrap();
        for n in [2, 3, 5] {
            for bnd in [Boundary::Aperiodic, Boundary::Periodic] {
                let pairs = [
                    (ising(0.8, n, bnd, Storage::Dense).unwrap(), ising(0.8, n, bnd, Storage::Sparse).unwrap()),
                    (heisenberg(n, bnd, Storage::Dense).unwrap(), heisenberg(n, bnd, Storage::Sparse).unwrap()),
                    (xy_hamiltonian(&p, n, bnd, Storage::Dense).unwrap(), xy_hamiltonian(&p, n, bnd, Storage::Sparse).unwrap()),
                ];
                for (a, b) in pairs {
                    assert!(!a.is_sparse() && b.is_sparse());
                    assert!(a.entries_equal(&b));
                }
            }
        }
    }

    #[test]
    fn ground_states() {
        let g = grstate(&z()).unwrap();
        assert_eq!(g.amplitudes().as_slice(), &[c(0., 0.), c(1., 0.)]);
        let g = grstate(&ising(0.0, 2, Boundary::Aperiodic, Storage::Dense).unwrap()).unwrap();
        assert!(g.amplitudes()[1].norm() < 1e-12 && g.amplitudes()[2].norm() < 1e-12);
        // -sum of the cluster stabilizers has the cluster state as ground state
        let stab = crate::states::gstate_stabilizer(&crate::states::GraphSpec::line(4).unwrap()).unwrap();
        let mut hcl = QuantumOperator::zeros(RegisterShape::qubits(4).unwrap(), Storage::Dense);
        for gk in stab.generators() {
            hcl = &hcl - gk;
        }
        let psi = grstate(&hcl).unwrap();
        assert!((ex(&hcl, &psi).unwrap().re + 4.0).abs() < 1e-10);
        assert!((ex(&hcl, &cstate(4).unwrap()).unwrap().re + 4.0).abs() < 1e-12);
        let nonherm = QuantumOperator::from_rows(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert!(grstate(&nonherm).is_err());
    }

    #[test]
    fn thermal_states() {
        let h = ising(0.6, 3, Boundary::Periodic, Storage::Dense).unwrap();
        let hot = thstate(&h, 1e6).unwrap();
        let mm = DensityMatrix::maximally_mixed(h.shape());
        assert!((hot.matrix() - mm.matrix()).camax() < 1e-6);
        let cold = thstate(&h, 1e-3).unwrap();
        let g = grstate(&h).unwrap();
        let proj = g.amplitudes() * g.amplitudes().adjoint();
        assert!((cold.matrix() - proj).camax() < 1e-9);
        for t in [0.1, 1.0, 10.0] {
            assert!((thstate(&h, t).unwrap().matrix().trace().re - 1.0).abs() < 1e-12);
        }
        assert!(thstate(&h, 0.0).is_err());
        assert!(thstate(&h, -1.0).is_err());
    }
}
