//! Random states, density matrices and unitaries; twirling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dirac::mkron;
use crate::error::{Error, Result};
use crate::operator::QuantumOperator;
use crate::permute::keep;
use crate::state::{DensityMatrix, RegisterShape, StateRef, StateVector};
use crate::{CMatrix, CVector, C64};

/// Seedable stream of uniform and standard-normal variates.
#[derive(Debug, Clone)]
pub struct RandomSource {
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn seed_from_u64(seed: u64) -> Self {
        RandomSource { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Real and imaginary parts independent standard normal.
    pub fn complex_normal(&mut self) -> C64 {
        let re = self.normal();
        let im = self.normal();
        C64::new(re, im)
    }
}

/// Gaussian vector normalized onto the unit sphere of `C^(d^n)`.
pub fn rvec(n: usize, d: usize, rng: &mut RandomSource) -> Result<StateVector> {
    let shape = RegisterShape::new(n, d)?;
    let v = CVector::from_fn(shape.total_dim(), |_, _| rng.complex_normal());
    StateVector::from_amplitudes(v, shape)?.normalize()
}

/// Tensor product of `n` independent single-qudit `rvec` draws.
pub fn rproduct(n: usize, d: usize, rng: &mut RandomSource) -> Result<StateVector> {
    RegisterShape::new(n, d)?;
    let factors: Vec<StateVector> = (0..n).map(|_| rvec(1, d, rng)).collect::<Result<_>>()?;
    mkron(&factors)
}

/// Qudits `1..=n` of a random pure state on `2n` qudits.
pub fn rdmat(n: usize, d: usize, rng: &mut RandomSource) -> Result<DensityMatrix> {
    let v = rvec(2 * n, d, rng)?;
    let kept: Vec<usize> = (1..=n).collect();
    keep(&v, &kept)
}

/// Haar unitary: QR of a complex Gaussian matrix with the columns of Q
/// rephased so that R has a positive real diagonal.
pub fn runitary(n: usize, d: usize, rng: &mut RandomSource) -> Result<QuantumOperator> {
    let shape = RegisterShape::new(n, d)?;
    let side = shape.total_dim();
    let g = CMatrix::from_fn(side, side, |_, _| rng.complex_normal());
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..side {
        let rjj = r[(j, j)];
        let norm = rjj.norm();
        if norm == 0.0 {
            return Err(Error::Numerical("singular Gaussian matrix".into()));
        }
        let phase = rjj / norm;
        q.column_mut(j).iter_mut().for_each(|x| *x *= phase);
    }
    QuantumOperator::from_dense(q, shape)
}

/// `sum_kl |A_kl|^2`.
pub fn square_sum(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum()
}

/// `(U (x) ... (x) U) rho (U (x) ... (x) U)^dagger`.
fn multilateral(rho: &CMatrix, u: &CMatrix, n: usize) -> CMatrix {
    let mut big = u.clone();
    for _ in 1..n {
        big = big.kronecker(u);
    }
    &big * rho * big.adjoint()
}

fn single_qudit_unitary(d: usize, rng: &mut RandomSource) -> Result<CMatrix> {
    runitary(1, d, rng)?.into_dense_matrix()
}

/// Approximate projection onto states commuting with every `U (x) ... (x) U`:
/// `n_it` rounds of `rho <- (rho + U^{(x)N} rho U^{(x)N dagger}) / 2`, each
/// with a fresh Haar `U`. Returns the result and `sum |input - output|^2`.
pub fn twirl<'a>(s: impl Into<StateRef<'a>>, n_it: usize, rng: &mut RandomSource) -> Result<(DensityMatrix, f64)> {
    let rho = s.into().to_density()?;
    let shape = rho.shape();
    let mut m = rho.matrix().clone();
    for _ in 0..n_it {
        let u = single_qudit_unitary(shape.dim(), rng)?;
        let rotated = multilateral(&m, &u, shape.n_qudits());
        m = (&m + rotated).unscale(2.0);
    }
    let m = (&m + m.adjoint()).unscale(2.0);
    let diff = square_sum(&(rho.matrix() - &m));
    Ok((DensityMatrix::new_unchecked(m, shape), diff))
}

/// Largest `sum |rho - U^{(x)N} rho U^{(x)N dagger}|^2` over `n_it` Haar
/// draws of `U`, with the maximizing single-qudit `U`.
pub fn twirl2<'a>(s: impl Into<StateRef<'a>>, n_it: usize, rng: &mut RandomSource) -> Result<(f64, QuantumOperator)> {
    if n_it == 0 {
        return Err(Error::InvalidArgument("twirl2 needs at least one iteration".into()));
    }
    let rho = s.into().to_density()?;
    let shape = rho.shape();
    let mut best = f64::NEG_INFINITY;
    let mut best_u = CMatrix::identity(shape.dim(), shape.dim());
    for _ in 0..n_it {
        let u = single_qudit_unitary(shape.dim(), rng)?;
        let diff = square_sum(&(rho.matrix() - multilateral(rho.matrix(), &u, shape.n_qudits())));
        if diff > best {
            best = diff;
            best_u = u;
        }
    }
    Ok((best, QuantumOperator::from_dense(best_u, RegisterShape::new(1, shape.dim())?)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_streams_repeat() {
        let mut a = RandomSource::seed_from_u64(7);
        let mut b = RandomSource::seed_from_u64(7);
        let mut c = RandomSource::seed_from_u64(8);
        let va = rvec(3, 2, &mut a).unwrap();
        assert_eq!(va, rvec(3, 2, &mut b).unwrap());
        assert_ne!(va, rvec(3, 2, &mut c).unwrap());
    }

    #[test]
    fn samplers_are_normalized() {
        let mut rng = RandomSource::seed_from_u64(1);
        for _ in 0..20 {
            assert!((rvec(3, 3, &mut rng).unwrap().norm() - 1.0).abs() < 1e-12);
            assert!((rproduct(4, 2, &mut rng).unwrap().norm() - 1.0).abs() < 1e-12);
            let rho = rdmat(2, 2, &mut rng).unwrap();
            assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
            let ev = rho.eigenvalues();
            assert!(ev[0] > -1e-12 && ev[3] < 1.0 + 1e-12);
        }
    }

    #[test]
    fn unitaries_are_unitary() {
        let mut rng = RandomSource::seed_from_u64(2);
        for (n, d) in [(1, 2), (2, 2), (1, 3), (2, 3)] {
            let u = runitary(n, d, &mut rng).unwrap().into_dense_matrix().unwrap();
            let side = u.nrows();
            let err = (u.adjoint() * &u - CMatrix::identity(side, side)).iter().map(|x| x.norm()).fold(0.0, f64::max);
            assert!(err < 1e-12);
            assert!((u.determinant().norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn twirl_is_trace_preserving() {
        let mut rng = RandomSource::seed_from_u64(3);
        let rho = rdmat(2, 2, &mut rng).unwrap();
        let (out, diff) = twirl(&rho, 50, &mut rng).unwrap();
        assert!((out.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!(out.eigenvalues()[0] > -1e-12);
        assert!(diff >= 0.0);
    }

    fn werner(p: f64) -> DensityMatrix {
        let singlet = crate::states::singlet(2).unwrap();
        crate::util::addnoise(&singlet, p).unwrap()
    }

    #[test]
    fn werner_states_are_fixed_points() {
        let mut rng = RandomSource::seed_from_u64(4);
        for p in [0.0, 0.3, 1.0] {
            let (out, diff) = twirl(&werner(p), 100, &mut rng).unwrap();
            assert!(diff <= 1e-20);
            assert!((out.matrix() - werner(p).matrix()).norm() < 1e-12);
            let (d2, u) = twirl2(&werner(p), 100, &mut rng).unwrap();
            assert!(d2 <= 1e-10);
            assert_eq!(u.side(), 2);
        }
        let up = StateVector::basis(0, RegisterShape::qubits(2).unwrap()).unwrap();
        assert!(twirl2(&up, 10, &mut rng).unwrap().0 > 0.0);
    }

    #[test]
    fn twirled_state_commutes_with_collective_unitaries() {
        let mut rng = RandomSource::seed_from_u64(5);
        let rho = rdmat(2, 2, &mut rng).unwrap();
        let (out, _) = twirl(&rho, 100, &mut rng).unwrap();
        for _ in 0..20 {
            let v = single_qudit_unitary(2, &mut rng).unwrap();
            let vv = v.kronecker(&v);
            let c = &vv * out.matrix() - out.matrix() * &vv;
            assert!(c.norm() < 1e-6);
        }
    }
}
