//! Separability criteria and entanglement quantities.

mod search;

pub use search::{maxb, maxbisep, maxsep, maxsymsep, BipartitionMask, SearchParams, SearchResult};


use crate::chains::coll;
use crate::dirac::ex;
use crate::error::{Error, Result};
use crate::linalg;
use crate::operator::{QuantumOperator, Storage};
use crate::permute::{digit_offsets, Permutation, QuditList};
use crate::state::{DensityMatrix, RegisterShape, StateRef, StateVector};
use crate::states::pauli;
use crate::CMatrix;

/// Partial transpose on the listed qudits of a normalized state.
pub fn pt<'a>(s: impl Into<StateRef<'a>>, list: &[usize]) -> Result<QuantumOperator> {
    let rho = s.into().to_density()?;
    let shape = rho.shape();
    let out = pt_matrix(rho.matrix(), shape, list)?;
    QuantumOperator::from_dense(out, shape)
}

/// Partial transpose of an arbitrary operator, without normalization.
pub fn pt_nonorm(m: &QuantumOperator, list: &[usize]) -> Result<QuantumOperator> {
    let shape = m.shape();
    let out = pt_matrix(&*m.dense()?, shape, list)?;
    QuantumOperator::from_dense(out, shape)
}

fn pt_matrix(m: &CMatrix, shape: RegisterShape, list: &[usize]) -> Result<CMatrix> {
    let list = QuditList::new(list, shape.n_qudits())?;
    let d = shape.dim();
    let weights: Vec<usize> = list.as_slice().iter().map(|&q| d.pow((q - 1) as u32)).collect();
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, n);
    for c in 0..n {
        for r in 0..n {
            let (mut r2, mut c2) = (r, c);
            for &w in &weights {
                let dr = (r / w) % d;
                let dc = (c / w) % d;
                r2 = r2 - dr * w + dc * w;
                c2 = c2 - dc * w + dr * w;
            }
            out[(r2, c2)] = m[(r, c)];
        }
    }
    Ok(out)
}

/// Sum of the absolute values of the negative eigenvalues of the partial
/// transpose.
pub fn negativity<'a>(s: impl Into<StateRef<'a>>, list: &[usize]) -> Result<f64> {
    let p = pt(s, list)?;
    Ok(linalg::hermitian_eigenvalues(&*p.dense()?).iter().map(|&l| (-l).max(0.0)).sum())
}

/// Realignment of an operator on `C^dA (x) C^dB`:
/// `R[(i,k),(j,l)] = m[(i,j),(k,l)]`, a `dA^2 x dB^2` matrix.
pub fn realign(m: &CMatrix, d_a: usize, d_b: usize) -> Result<CMatrix> {
    let side = d_a * d_b;
    if m.nrows() != side || m.ncols() != side {
        return Err(Error::DimensionMismatch { expected: side, found: m.nrows() });
    }
    Ok(CMatrix::from_fn(d_a * d_a, d_b * d_b, |row, col| {
        let (i, k) = (row / d_a, row % d_a);
        let (j, l) = (col / d_b, col % d_b);
        m[(i * d_b + j, k * d_b + l)]
    }))
}

/// Realignment with equal halves, `dA = dB = sqrt(side)`.
pub fn realign_square(m: &CMatrix) -> Result<CMatrix> {
    let side = m.nrows();
    let d = (side as f64).sqrt().round() as usize;
    if d * d != side {
        return Err(Error::InvalidArgument(format!("side {side} does not split into equal halves")));
    }
    realign(m, d, d)
}

/// Permutes the `2N` qudit indices of a `d^N x d^N` matrix. The matrix is
/// read row-major as a `2N`-qudit vector, so row qudit `k` is index `N + k`
/// and column qudit `k` is index `k`; `iperm` uses the reorder convention.
pub fn mrealign(m: &CMatrix, iperm: &[usize], d: usize) -> Result<CMatrix> {
    let side = m.nrows();
    if m.ncols() != side {
        return Err(Error::NotSquare { rows: side, cols: m.ncols() });
    }
    let shape = RegisterShape::from_total(side, d)?;
    let n = shape.n_qudits();
    if iperm.len() != 2 * n {
        return Err(Error::InvalidPermutation(format!("expected {} entries, got {}", 2 * n, iperm.len())));
    }
    let perm = Permutation::new(iperm.to_vec())?;
    let map = perm.index_map(d);
    let mut out = CMatrix::zeros(side, side);
    for r in 0..side {
        for c in 0..side {
            let t = map[r * side + c];
            out[(t / side, t % side)] = m[(r, c)];
        }
    }
    Ok(out)
}

/// Trace norm of the realigned state. The first block holds the
/// `first_block` most significant qudits, by default half of them.
pub fn ccnr<'a>(s: impl Into<StateRef<'a>>, first_block: Option<usize>) -> Result<f64> {
    let rho = s.into().to_density()?;
    let shape = rho.shape();
    let n = shape.n_qudits();
    let k = match first_block {
        Some(k) => k,
        None if n % 2 == 0 => n / 2,
        None => {
            return Err(Error::InvalidArgument(format!("{n} qudits do not split evenly; give the first block size")))
        }
    };
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("block size {k} must be within 1..{n}")));
    }
    let d_a = shape.dim().pow(k as u32);
    let d_b = shape.dim().pow((n - k) as u32);
    Ok(crate::util::trnorm(&realign(rho.matrix(), d_a, d_b)?))
}

/// Wootters concurrence of a two-qubit state.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.side() != 4 || rho.shape().dim() != 2 {
        return Err(Error::InvalidShape(format!("concurrence needs a two-qubit state, got side {}", rho.side())));
    }
    let yy = pauli::y().kron(&pauli::y()).into_dense_matrix()?;
    let m = rho.matrix();
    let tilde = &yy * m.conjugate() * &yy;
    let prod = m * tilde;
    let mut lambdas: Vec<f64> = linalg::eigenvalues(&prod)?.iter().map(|z| z.re.max(0.0).sqrt()).collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Amplitudes reshaped to (block, rest). Rows always belong to the block
/// that contains the highest qudit, so a mask and its complement give the
/// same matrix.
fn bipartite_matrix(v: &StateVector, mask: &BipartitionMask) -> CMatrix {
    let shape = v.shape();
    let n = shape.n_qudits();
    let a = if mask.qudits().contains(n) { mask.qudits().clone() } else { mask.qudits().complement(n) };
    let b = a.complement(n);
    let ra = digit_offsets(a.as_slice(), shape.dim());
    let rb = digit_offsets(b.as_slice(), shape.dim());
    let amps = v.amplitudes();
    CMatrix::from_fn(ra.len(), rb.len(), |i, j| amps[ra[i] + rb[j]])
}

/// Schmidt coefficients across the bipartition, decreasing.
pub fn schmidt(v: &StateVector, mask: &BipartitionMask) -> Result<Vec<f64>> {
    if mask.n_qudits() != v.shape().n_qudits() {
        return Err(Error::InvalidQuditList(format!(
            "mask is for {} qudits, state has {}",
            mask.n_qudits(),
            v.shape().n_qudits()
        )));
    }
    let v = v.normalize()?;
    let mut s = linalg::singular_values(&bipartite_matrix(&v, mask));
    s.sort_by(|a, b| b.total_cmp(a));
    Ok(s)
}

/// Largest squared Schmidt coefficient over every bipartition.
pub fn overlapb(v: &StateVector) -> Result<f64> {
    let n = v.shape().n_qudits();
    if n < 2 {
        return Err(Error::InvalidArgument("overlapb needs at least 2 qudits".into()));
    }
    let mut best = 0.0f64;
    // subsets of 1..n-1 pick each bipartition once
    for bits in 1..(1usize << (n - 1)) {
        let qudits: Vec<usize> = (1..n).filter(|q| (bits >> (q - 1)) & 1 == 1).collect();
        let mask = BipartitionMask::new(&qudits, n)?;
        let s0 = schmidt(v, &mask)?[0];
        best = best.max(s0 * s0);
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinSqueezingReport {
    pub fmin: f64,
    pub f123: [f64; 3],
}

/// Optimal spin-squeezing inequalities for `N` qubits with `J = coll(sigma)/2`,
/// `gamma` the covariance matrix, `C_kl = <J_k J_l + J_l J_k>/2` and
/// `X = (N-1) gamma + C`:
///
/// * `f1 = Tr gamma - N/2`
/// * `f2 = lambda_min(X) - Tr C + N/2`
/// * `f3 = (N-1) Tr gamma - lambda_max(X) - N(N-2)/4`
///
/// All are nonnegative for separable states.
pub fn optspinsq<'a>(s: impl Into<StateRef<'a>>) -> Result<SpinSqueezingReport> {
    let rho = s.into().to_density()?;
    let shape = rho.shape();
    if shape.dim() != 2 {
        return Err(Error::Unsupported("spin squeezing is defined for qubits".into()));
    }
    let n = shape.n_qudits();
    let nf = n as f64;
    let j: Vec<QuantumOperator> = [pauli::x(), pauli::y(), pauli::z()]
        .iter()
        .map(|p| coll(p, n, Storage::Sparse).map(|o| o.scale_real(0.5)))
        .collect::<Result<_>>()?;
    let mean: Vec<f64> = j.iter().map(|o| ex(o, &rho).map(|z| z.re)).collect::<Result<_>>()?;
    let mut c = nalgebra::Matrix3::<f64>::zeros();
    for k in 0..3 {
        for l in k..3 {
            let anti = j[k].checked_mul(&j[l])?.checked_add(&j[l].checked_mul(&j[k])?)?;
            let v = 0.5 * ex(&anti, &rho)?.re;
            c[(k, l)] = v;
            c[(l, k)] = v;
        }
    }
    let gamma = nalgebra::Matrix3::from_fn(|k, l| c[(k, l)] - mean[k] * mean[l]);
    let x = gamma * (nf - 1.0) + c;
    let ev = x.symmetric_eigenvalues();
    let lmin = ev.min();
    let lmax = ev.max();
    let f1 = gamma.trace() - nf / 2.0;
    let f2 = lmin - c.trace() + nf / 2.0;
    let f3 = (nf - 1.0) * gamma.trace() - lmax - nf * (nf - 2.0) / 4.0;
    let f123 = [f1, f2, f3];
    Ok(SpinSqueezingReport { fmin: f1.min(f2).min(f3), f123 })
}
