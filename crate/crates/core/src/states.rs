//! Named states, standard gates and operator bases.

use crate::dirac::mkron;
use crate::error::{Error, Result};
use crate::operator::QuantumOperator;
use crate::state::{DensityMatrix, RegisterShape, StateVector};
use crate::util::binom;
use crate::{CMatrix, CVector, C64};

const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Single-qubit Pauli matrices and the identity.
pub mod pauli {
    use super::c;
    use crate::operator::QuantumOperator;
    use crate::state::RegisterShape;
    use crate::{CMatrix, C64};

    fn qubit_op(entries: [C64; 4]) -> QuantumOperator {
        let shape = RegisterShape::qubits(1).expect("qubit shape");
        QuantumOperator::from_dense(CMatrix::from_row_slice(2, 2, &entries), shape).expect("2x2 operator")
    }

    pub fn x() -> QuantumOperator {
        qubit_op([c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])
    }

    pub fn y() -> QuantumOperator {
        qubit_op([c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)])
    }

    pub fn z() -> QuantumOperator {
        qubit_op([c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])
    }

    pub fn e() -> QuantumOperator {
        qubit_op([c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)])
    }

    /// `[x, y, z, e]`.
    pub fn basis() -> [QuantumOperator; 4] {
        [x(), y(), z(), e()]
    }
}

fn qubit_state(n: usize, mut amps: impl FnMut(usize) -> C64) -> Result<StateVector> {
    let shape = RegisterShape::qubits(n)?;
    let v = CVector::from_fn(shape.total_dim(), |i, _| amps(i));
    StateVector::from_amplitudes(v, shape)
}

/// `(|0...0> + |1...1>)/sqrt(2)`.
pub fn ghzstate(n: usize) -> Result<StateVector> {
    let shape = RegisterShape::qubits(n)?;
    let last = shape.total_dim() - 1;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    qubit_state(n, |i| if i == 0 || i == last { c(h, 0.) } else { c(0., 0.) })
}

/// Uniform superposition of the single-excitation basis states.
pub fn wstate(n: usize) -> Result<StateVector> {
    if n < 2 {
        return Err(Error::InvalidArgument("W state needs at least 2 qubits".into()));
    }
    dstate(1, n)
}

/// Symmetric Dicke state with `m` excitations.
pub fn dstate(m: usize, n: usize) -> Result<StateVector> {
    if m > n {
        return Err(Error::InvalidArgument(format!("{m} excitations on {n} qubits")));
    }
    let count = binom(m as u64, n as u64)? as f64;
    let amp = count.sqrt().recip();
    qubit_state(n, |i| if i.count_ones() as usize == m { c(amp, 0.) } else { c(0., 0.) })
}

/// Adjacency matrix of a simple undirected graph; vertex `k` (0-based)
/// is qubit `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    n: usize,
    adjacency: Vec<bool>,
}

impl GraphSpec {
    pub fn new(adjacency: &[Vec<u8>]) -> Result<Self> {
        let n = adjacency.len();
        if n == 0 {
            return Err(Error::InvalidArgument("graph needs at least one vertex".into()));
        }
        let mut adj = vec![false; n * n];
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!("adjacency row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, &v) in row.iter().enumerate() {
                if v > 1 {
                    return Err(Error::InvalidArgument(format!("adjacency entry ({i},{j}) = {v} is not 0/1")));
                }
                adj[i * n + j] = v == 1;
            }
        }
        for i in 0..n {
            if adj[i * n + i] {
                return Err(Error::InvalidArgument(format!("self loop at vertex {i}")));
            }
            for j in 0..i {
                if adj[i * n + j] != adj[j * n + i] {
                    return Err(Error::InvalidArgument(format!("adjacency not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(GraphSpec { n, adjacency: adj })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut rows = vec![vec![0u8; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidArgument(format!("bad edge ({a}, {b})")));
            }
            rows[a][b] = 1;
            rows[b][a] = 1;
        }
        Self::new(&rows)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn line(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|k| (k - 1, k)).collect();
        Self::from_edges(n, &edges)
    }

    /// Line plus the edge closing the ring.
    pub fn ring(n: usize) -> Result<Self> {
        let mut edges: Vec<_> = (1..n).map(|k| (k - 1, k)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.n + j]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).filter(move |&j| self.has_edge(i, j)).map(move |j| (i, j)))
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.has_edge(i, j))
    }
}

/// Graph state: controlled-Z on every edge applied to `|+>^N`.
pub fn gstate(g: &GraphSpec) -> Result<StateVector> {
    let n = g.n_vertices();
    let amp = (2f64).powi(n as i32).sqrt().recip();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    qubit_state(n, |idx| {
        let parity = edges.iter().filter(|&&(a, b)| (idx >> a) & 1 == 1 && (idx >> b) & 1 == 1).count();
        if parity % 2 == 0 { c(amp, 0.) } else { c(-amp, 0.) }
    })
}

/// N commuting generators stabilizing a graph state.
#[derive(Debug, Clone, PartialEq)]
pub struct StabilizerSet {
    generators: Vec<QuantumOperator>,
}

impl StabilizerSet {
    pub fn generators(&self) -> &[QuantumOperator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Generator `k` is sigma_x on qubit `k` times sigma_z on each neighbor.
pub fn gstate_stabilizer(g: &GraphSpec) -> Result<StabilizerSet> {
    let n = g.n_vertices();
    let mut generators = Vec::with_capacity(n);
    for k in 0..n {
        // factors listed from qubit n down to qubit 1
        let factors: Vec<QuantumOperator> = (0..n)
            .rev()
            .map(|v| {
                if v == k {
                    pauli::x()
                } else if g.has_edge(k, v) {
                    pauli::z()
                } else {
                    pauli::e()
                }
            })
            .collect();
        generators.push(mkron(&factors)?);
    }
    Ok(StabilizerSet { generators })
}

/// Linear cluster state.
pub fn cstate(n: usize) -> Result<StateVector> {
    if n < 3 {
        return Err(Error::InvalidArgument("cluster state needs at least 3 qubits".into()));
    }
    gstate(&GraphSpec::line(n)?)
}

/// Ring cluster state.
pub fn rstate(n: usize) -> Result<StateVector> {
    if n < 3 {
        return Err(Error::InvalidArgument("ring cluster state needs at least 3 qubits".into()));
    }
    gstate(&GraphSpec::ring(n)?)
}

pub fn mmstate(shape: RegisterShape) -> DensityMatrix {
    DensityMatrix::maximally_mixed(shape)
}

/// `sum_k |k>|k> / sqrt(d)` on two qudits.
pub fn mestate(d: usize) -> Result<StateVector> {
    let shape = RegisterShape::new(2, d)?;
    let amp = (d as f64).sqrt().recip();
    let v = CVector::from_fn(d * d, |i, _| if i / d == i % d { c(amp, 0.) } else { c(0., 0.) });
    StateVector::from_amplitudes(v, shape)
}

/// Two- and four-qubit singlets.
pub fn singlet(n: usize) -> Result<StateVector> {
    match n {
        2 => {
            let h = std::f64::consts::FRAC_1_SQRT_2;
            qubit_state(2, |i| match i {
                0b01 => c(h, 0.),
                0b10 => c(-h, 0.),
                _ => c(0., 0.),
            })
        }
        4 => {
            let s = 1.0 / (2.0 * 3f64.sqrt());
            qubit_state(4, |i| match i {
                0b1100 | 0b0011 => c(2.0 * s, 0.),
                0b0101 | 0b1010 | 0b0110 | 0b1001 => c(-s, 0.),
                _ => c(0., 0.),
            })
        }
        _ => Err(Error::Unsupported(format!("singlet is defined for 2 and 4 qubits, not {n}"))),
    }
}

fn bell_states() -> [StateVector; 4] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mk = |a: [f64; 4]| qubit_state(2, |i| c(a[i] * h, 0.)).expect("bell state");
    [mk([1., 0., 0., 1.]), mk([1., 0., 0., -1.]), mk([0., 1., 1., 0.]), mk([0., 1., -1., 0.])]
}

/// Smolin's four-qubit state: equal mixture of `|B_i><B_i| (x) |B_i><B_i|`
/// over the four Bell states, pairs (12) and (34).
pub fn smolinstate() -> Result<DensityMatrix> {
    let mut m = CMatrix::zeros(16, 16);
    for b in bell_states() {
        let p = b.projector()?.into_matrix();
        m += p.kronecker(&p).unscale(4.0);
    }
    Ok(DensityMatrix::new_unchecked(m, RegisterShape::qubits(4)?))
}

fn check_bes_param(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::InvalidArgument(format!("parameter {a} outside (0, 1)")));
    }
    Ok(())
}

/// Horodecki's bound entangled two-qutrit family.
pub fn bes_horodecki3x3(a: f64) -> Result<DensityMatrix> {
    check_bes_param(a)?;
    let p = (1.0 + a) / 2.0;
    let q = (1.0 - a * a).sqrt() / 2.0;
    #[rustfmt::skip]
    let rows = [
        [a, 0., 0., 0., a, 0., 0., 0., a],
        [0., a, 0., 0., 0., 0., 0., 0., 0.],
        [0., 0., a, 0., 0., 0., 0., 0., 0.],
        [0., 0., 0., a, 0., 0., 0., 0., 0.],
        [a, 0., 0., 0., a, 0., 0., 0., a],
        [0., 0., 0., 0., 0., a, 0., 0., 0.],
        [0., 0., 0., 0., 0., 0., p, 0., q],
        [0., 0., 0., 0., 0., 0., 0., a, 0.],
        [a, 0., 0., 0., a, 0., q, 0., p],
    ];
    let m = CMatrix::from_fn(9, 9, |i, j| c(rows[i][j], 0.)).unscale(8.0 * a + 1.0);
    Ok(DensityMatrix::new_unchecked(m, RegisterShape::new(2, 3)?))
}

/// Horodecki's bound entangled 2x4 family as three qubits: the two-level
/// party is qubit 3, the four-level party is qubits 2 and 1.
pub fn bes_horodecki4x2(b: f64) -> Result<DensityMatrix> {
    check_bes_param(b)?;
    let p = (1.0 + b) / 2.0;
    let q = (1.0 - b * b).sqrt() / 2.0;
    #[rustfmt::skip]
    let rows = [
        [b, 0., 0., 0., 0., b, 0., 0.],
        [0., b, 0., 0., 0., 0., b, 0.],
        [0., 0., b, 0., 0., 0., 0., b],
        [0., 0., 0., b, 0., 0., 0., 0.],
        [0., 0., 0., 0., p, 0., 0., q],
        [b, 0., 0., 0., 0., b, 0., 0.],
        [0., b, 0., 0., 0., 0., b, 0.],
        [0., 0., b, 0., q, 0., 0., p],
    ];
    let m = CMatrix::from_fn(8, 8, |i, j| c(rows[i][j], 0.)).unscale(7.0 * b + 1.0);
    Ok(DensityMatrix::new_unchecked(m, RegisterShape::qubits(3)?))
}

/// The five "Tiles" product vectors of the 3x3 unextendible product basis.
pub fn upb_tiles() -> Vec<StateVector> {
    let qutrit = |a: [f64; 3]| {
        StateVector::from_amplitudes(CVector::from_fn(3, |i, _| c(a[i], 0.)), RegisterShape::new(1, 3).unwrap()).unwrap()
    };
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let t = 1.0 / 3f64.sqrt();
    let pairs = [
        (qutrit([1., 0., 0.]), qutrit([h, -h, 0.])),
        (qutrit([h, -h, 0.]), qutrit([0., 0., 1.])),
        (qutrit([0., 0., 1.]), qutrit([0., h, -h])),
        (qutrit([0., h, -h]), qutrit([1., 0., 0.])),
        (qutrit([t, t, t]), qutrit([t, t, t])),
    ];
    pairs.iter().map(|(a, b)| a.kron(b)).collect()
}

/// `(I - sum_i |psi_i><psi_i|)/4` over the Tiles basis.
pub fn bes_upb3x3() -> Result<DensityMatrix> {
    let mut m = CMatrix::identity(9, 9);
    for v in upb_tiles() {
        m -= v.amplitudes() * v.amplitudes().adjoint();
    }
    Ok(DensityMatrix::new_unchecked(m.unscale(4.0), RegisterShape::new(2, 3)?))
}

/// CNOT with qubit 2 as control and qubit 1 as target.
pub fn u_cnot() -> QuantumOperator {
    let mut m = CMatrix::zeros(4, 4);
    for (r, col) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(r, col)] = c(1., 0.);
    }
    QuantumOperator::from_dense(m, RegisterShape::qubits(2).unwrap()).unwrap()
}

pub fn u_hadamard() -> QuantumOperator {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    QuantumOperator::from_rows(2, 2, &[c(h, 0.), c(h, 0.), c(h, 0.), c(-h, 0.)]).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Su3Variant {
    /// The eight Gell-Mann matrices.
    Standard,
    /// Spin-1 dipole and quadrupole operators: `Jx, Jy, Jz`,
    /// `{Jy,Jz}, {Jx,Jz}, {Jx,Jy}`, `Jx^2 - Jy^2` and `(3 Jz^2 - 2)/sqrt(3)`.
    Alternative,
}

/// Eight traceless Hermitian SU(3) generators followed by the 3x3 identity.
pub fn gellmann_basis(variant: Su3Variant) -> Vec<QuantumOperator> {
    let shape = RegisterShape::new(1, 3).unwrap();
    let mats = match variant {
        Su3Variant::Standard => gellmann_standard(),
        Su3Variant::Alternative => gellmann_alternative(),
    };
    mats.into_iter()
        .chain(std::iter::once(CMatrix::identity(3, 3)))
        .map(|m| QuantumOperator::from_dense(m, shape).unwrap())
        .collect()
}

fn gellmann_standard() -> Vec<CMatrix> {
    let unit = |entries: &[(usize, usize, C64)]| {
        let mut m = CMatrix::zeros(3, 3);
        for &(r, col, v) in entries {
            m[(r, col)] = v;
        }
        m
    };
    let s3 = 3f64.sqrt();
    vec![
        unit(&[(0, 1, c(1., 0.)), (1, 0, c(1., 0.))]),
        unit(&[(0, 1, c(0., -1.)), (1, 0, c(0., 1.))]),
        unit(&[(0, 0, c(1., 0.)), (1, 1, c(-1., 0.))]),
        unit(&[(0, 2, c(1., 0.)), (2, 0, c(1., 0.))]),
        unit(&[(0, 2, c(0., -1.)), (2, 0, c(0., 1.))]),
        unit(&[(1, 2, c(1., 0.)), (2, 1, c(1., 0.))]),
        unit(&[(1, 2, c(0., -1.)), (2, 1, c(0., 1.))]),
        unit(&[(0, 0, c(1. / s3, 0.)), (1, 1, c(1. / s3, 0.)), (2, 2, c(-2. / s3, 0.))]),
    ]
}

fn gellmann_alternative() -> Vec<CMatrix> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let jx = CMatrix::from_row_slice(3, 3, &[c(0., 0.), c(h, 0.), c(0., 0.), c(h, 0.), c(0., 0.), c(h, 0.), c(0., 0.), c(h, 0.), c(0., 0.)]);
    let jy = CMatrix::from_row_slice(3, 3, &[c(0., 0.), c(0., -h), c(0., 0.), c(0., h), c(0., 0.), c(0., -h), c(0., 0.), c(0., h), c(0., 0.)]);
    let jz = CMatrix::from_diagonal(&CVector::from_vec(vec![c(1., 0.), c(0., 0.), c(-1., 0.)]));
    let anti = |a: &CMatrix, b: &CMatrix| a * b + b * a;
    let id = CMatrix::identity(3, 3);
    let y = (&jz * &jz * c(3., 0.) - id * c(2., 0.)).unscale(3f64.sqrt());
    vec![
        jx.clone(),
        jy.clone(),
        jz.clone(),
        anti(&jy, &jz),
        anti(&jx, &jz),
        anti(&jx, &jy),
        &jx * &jx - &jy * &jy,
        y,
    ]
}

/// `d^2` Hermitian observables with `Tr(M_m M_n) = delta_mn`: the diagonal
/// projectors, then the symmetric and antisymmetric off-diagonal pairs.
pub fn orthogobs(d: usize) -> Result<Vec<QuantumOperator>> {
    let shape = RegisterShape::new(1, d)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut out = Vec::with_capacity(d * d);
    for k in 0..d {
        let mut m = CMatrix::zeros(d, d);
        m[(k, k)] = c(1., 0.);
        out.push(m);
    }
    for k in 0..d {
        for l in (k + 1)..d {
            let mut m = CMatrix::zeros(d, d);
            m[(k, l)] = c(h, 0.);
            m[(l, k)] = c(h, 0.);
            out.push(m);
        }
    }
    for k in 0..d {
        for l in (k + 1)..d {
            // (|k><l| - |l><k|) / (sqrt(2) i)
            let mut m = CMatrix::zeros(d, d);
            m[(k, l)] = c(0., -h);
            m[(l, k)] = c(0., h);
            out.push(m);
        }
    }
    out.into_iter().map(|m| QuantumOperator::from_dense(m, shape)).collect()
}
