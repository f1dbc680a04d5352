//! Dense eigen/singular-value helpers and a Lanczos solver for large sparse
//! Hermitian operators.

use crate::error::{Error, Result};
use crate::{CMatrix, C64};
use nalgebra::{DMatrix, DVector};
use num_complex::ComplexFloat;
use rand::{Rng, SeedableRng};

/// Largest entrywise deviation `|m_ij - conj(m_ji)|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    if !m.is_square() {
        return f64::INFINITY;
    }
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).abs());
        }
    }
    dev
}

/// `Tr(a b)` without forming the product.
pub fn trace_of_product(a: &CMatrix, b: &CMatrix) -> C64 {
    let n = a.nrows();
    let mut s = C64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..a.ncols() {
            s += a[(i, k)] * b[(k, i)];
        }
    }
    s
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
///
/// Ties keep the solver's original column order, which makes the choice of
/// eigenvector within a degenerate eigenspace deterministic.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    // symmetrize so round-off asymmetry cannot leak into the solver
    let h = (m + m.adjoint()).unscale(2.0);
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()).unscale(2.0);
    let mut values: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Eigenvalues of a general complex square matrix.
pub fn eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let schur = m.clone().schur();
    schur
        .eigenvalues()
        .map(|v| v.iter().copied().collect())
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    m.singular_values().iter().copied().collect()
}

/// Lowest eigenpair of a Hermitian linear map given only through its action.
///
/// Lanczos iteration with full reorthogonalization; stops once the lowest
/// Ritz value changes by less than `tol` between checks.
pub fn lanczos_lowest<F>(dim: usize, apply: F, tol: f64) -> Result<(f64, Vec<C64>)>
where
    F: Fn(&[C64], &mut [C64]),
{
    if dim == 0 {
        return Err(Error::InvalidArgument("empty operator".into()));
    }
    let max_steps = dim.min(400);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
    let mut q: Vec<C64> = (0..dim).map(|_| C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)).collect();
    normalize(&mut q);
    let mut basis: Vec<Vec<C64>> = vec![q];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![C64::new(0.0, 0.0); dim];
    let mut last = f64::INFINITY;

    loop {
        let k = basis.len() - 1;
        apply(&basis[k], &mut w);
        let alpha = dotc(&basis[k], &w).re;
        alphas.push(alpha);
        // full reorthogonalization, twice for stability
        for _ in 0..2 {
            for b in &basis {
                let c = dotc(b, &w);
                for (wi, bi) in w.iter_mut().zip(b) {
                    *wi -= c * bi;
                }
            }
        }
        let beta = w.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let steps = alphas.len();
        let done = steps >= max_steps || beta < 1e-12;
        if done || steps.is_multiple_of(10) {
            let (theta, y) = tridiagonal_lowest(&alphas, &betas);
            if done || (last - theta).abs() < tol {
                let mut v = vec![C64::new(0.0, 0.0); dim];
                for (coef, b) in y.iter().zip(&basis) {
                    for (vi, bi) in v.iter_mut().zip(b) {
                        *vi += *coef * bi;
                    }
                }
                normalize(&mut v);
                return Ok((theta, v));
            }
            last = theta;
        }
        betas.push(beta);
        let next: Vec<C64> = w.iter().map(|x| x / beta).collect();
        basis.push(next);
    }
}

fn tridiagonal_lowest(alphas: &[f64], betas: &[f64]) -> (f64, Vec<f64>) {
    let m = alphas.len();
    let t = DMatrix::<f64>::from_fn(m, m, |i, j| {
        if i == j {
            alphas[i]
        } else if i + 1 == j {
            betas[i]
        } else if j + 1 == i {
            betas[j]
        } else {
            0.0
        }
    });
    let eig = t.symmetric_eigen();
    let (idx, theta) = eig
        .eigenvalues
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap();
    let y: DVector<f64> = eig.eigenvectors.column(idx).into_owned();
    (theta, y.iter().copied().collect())
}

fn dotc(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn normalize(v: &mut [C64]) {
    let n = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    for x in v.iter_mut() {
        *x /= n;
    }
}
