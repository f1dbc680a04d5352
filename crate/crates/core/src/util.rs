//! Small matrix utilities: extremal eigenvalues, norms, commutators, noise.

use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::QuantumOperator;
use crate::policy::NumericPolicy;
use crate::state::{DensityMatrix, RegisterShape, StateRef};
use crate::{CMatrix, C64};

/// Operators larger than this are handled by Lanczos when Hermitian.
const LANCZOS_THRESHOLD: usize = 1 << 11;

/// Largest real part of the eigenvalues.
pub fn maxeig(m: &QuantumOperator) -> Result<f64> {
    extremal(m, true)
}

/// Smallest real part of the eigenvalues.
pub fn mineig(m: &QuantumOperator) -> Result<f64> {
    extremal(m, false)
}

fn extremal(m: &QuantumOperator, largest: bool) -> Result<f64> {
    let hermitian = m.is_hermitian(NumericPolicy::DEFAULT.hermitian_tol);
    if hermitian && m.side() > LANCZOS_THRESHOLD {
        let sign = if largest { -1.0 } else { 1.0 };
        let (theta, _) = linalg::lanczos_lowest(
            m.side(),
            |x, y| {
                m.apply(x, y);
                if largest {
                    y.iter_mut().for_each(|v| *v = -*v);
                }
            },
            1e-12,
        )?;
        return Ok(sign * theta);
    }
    let dense = m.dense()?;
    let values: Vec<f64> = if hermitian {
        linalg::hermitian_eigenvalues(&dense)
    } else {
        linalg::eigenvalues(&dense)?.iter().map(|v| v.re).collect()
    };
    let pick = if largest { values.iter().copied().fold(f64::NEG_INFINITY, f64::max) } else { values.iter().copied().fold(f64::INFINITY, f64::min) };
    Ok(pick)
}

/// `Tr(m^2)`.
pub fn trace2(m: &QuantumOperator) -> C64 {
    let s = m.sparse();
    let mut acc = C64::new(0.0, 0.0);
    for (r, c, v) in s.iter() {
        acc += v * s.get(c, r);
    }
    acc
}

/// Sum of singular values.
pub fn trnorm(m: &CMatrix) -> f64 {
    linalg::singular_values(m).iter().sum()
}

/// `a b - b a`.
pub fn comm(a: &QuantumOperator, b: &QuantumOperator) -> Result<QuantumOperator> {
    a.checked_mul(b)?.checked_sub(&b.checked_mul(a)?)
}

/// `p rho + (1 - p) I / Tr(I)`.
pub fn addnoise<'a>(s: impl Into<StateRef<'a>>, p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("noise weight {p} outside [0, 1]")));
    }
    let rho = s.into().to_density()?;
    let n = rho.side();
    let mixed = CMatrix::identity(n, n).unscale(n as f64);
    let mat = rho.matrix().scale(p) + mixed.scale(1.0 - p);
    Ok(DensityMatrix::new_unchecked(mat, rho.shape()))
}

/// `n` choose `m`.
pub fn binom(m: u64, n: u64) -> Result<u64> {
    if m > n {
        return Err(Error::InvalidArgument(format!("binom({m}, {n}) needs 0 <= m <= n")));
    }
    let k = m.min(n - m);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).map_err(|_| Error::InvalidArgument(format!("binom({m}, {n}) overflows")))
}

/// Projector onto the symmetric subspace of two qudits.
pub fn proj_sym(shape: RegisterShape) -> Result<QuantumOperator> {
    two_qudit_projector(shape, 1.0)
}

/// Projector onto the antisymmetric subspace of two qudits.
pub fn proj_asym(shape: RegisterShape) -> Result<QuantumOperator> {
    two_qudit_projector(shape, -1.0)
}

fn two_qudit_projector(shape: RegisterShape, sign: f64) -> Result<QuantumOperator> {
    if shape.n_qudits() != 2 {
        return Err(Error::Unsupported("symmetric projectors are implemented for two qudits only".into()));
    }
    let d = shape.dim();
    let n = d * d;
    let mut m = CMatrix::zeros(n, n);
    for a in 0..d {
        for b in 0..d {
            let i = a * d + b;
            m[(i, i)] += C64::new(0.5, 0.0);
            m[(b * d + a, i)] += C64::new(0.5 * sign, 0.0);
        }
    }
    QuantumOperator::from_dense(m, shape)
}
