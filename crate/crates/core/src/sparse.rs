//! Compressed sparse row storage for complex matrices.
//!
//! Only the handful of kernels the operator builders need are provided.
//! Every kernel accumulates contributions in the same order as its dense
//! counterpart, so dense and sparse builds agree entry for entry.

use crate::{CMatrix, C64};
use num_complex::ComplexFloat;

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    rows: usize,
    cols: usize,
    indptr: Vec<usize>,
    indices: Vec<usize>,
    values: Vec<C64>,
}

impl CsrMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CsrMatrix {
            rows,
            cols,
            indptr: vec![0; rows + 1],
            indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        CsrMatrix {
            rows: n,
            cols: n,
            indptr: (0..=n).collect(),
            indices: (0..n).collect(),
            values: vec![C64::new(1.0, 0.0); n],
        }
    }

    /// Builds a matrix from `(row, col, value)` triplets. Duplicates are
    /// summed in the order they appear; exact zeros are dropped.
    pub fn from_triplets(rows: usize, cols: usize, mut triplets: Vec<(usize, usize, C64)>) -> Self {
        // stable sort keeps insertion order among duplicates
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut indptr = vec![0usize; rows + 1];
        let mut indices = Vec::with_capacity(triplets.len());
        let mut values: Vec<C64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "triplet ({r}, {c}) out of bounds");
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
            } else {
                indptr[r + 1] += 1;
                indices.push(c);
                values.push(v);
                last = Some((r, c));
            }
        }
        for r in 0..rows {
            indptr[r + 1] += indptr[r];
        }
        CsrMatrix { rows, cols, indptr, indices, values }.pruned()
    }

    pub fn from_dense(m: &CMatrix) -> Self {
        let mut indptr = Vec::with_capacity(m.nrows() + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                let v = m[(r, c)];
                if v != C64::new(0.0, 0.0) {
                    indices.push(c);
                    values.push(v);
                }
            }
            indptr.push(indices.len());
        }
        CsrMatrix { rows: m.nrows(), cols: m.ncols(), indptr, indices, values }
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            m[(r, c)] = v;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Number of stored entries.
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        let (lo, hi) = (self.indptr[r], self.indptr[r + 1]);
        match self.indices[lo..hi].binary_search(&c) {
            Ok(k) => self.values[lo + k],
            Err(_) => C64::new(0.0, 0.0),
        }
    }

    /// Iterates stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        (0..self.rows).flat_map(move |r| {
            (self.indptr[r]..self.indptr[r + 1]).map(move |k| (r, self.indices[k], self.values[k]))
        })
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, C64)> + '_ {
        (self.indptr[r]..self.indptr[r + 1]).map(move |k| (self.indices[k], self.values[k]))
    }

    fn pruned(mut self) -> Self {
        let zero = C64::new(0.0, 0.0);
        if self.values.iter().all(|v| *v != zero) {
            return self;
        }
        let mut indptr = vec![0usize; self.rows + 1];
        let mut indices = Vec::with_capacity(self.values.len());
        let mut values = Vec::with_capacity(self.values.len());
        for r in 0..self.rows {
            for k in self.indptr[r]..self.indptr[r + 1] {
                if self.values[k] != zero {
                    indices.push(self.indices[k]);
                    values.push(self.values[k]);
                }
            }
            indptr[r + 1] = indices.len();
        }
        self.indptr = indptr;
        self.indices = indices;
        self.values = values;
        self
    }

    pub fn kron(&self, other: &CsrMatrix) -> CsrMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut indptr = Vec::with_capacity(rows + 1);
        let mut indices = Vec::with_capacity(self.nnz() * other.nnz());
        let mut values = Vec::with_capacity(self.nnz() * other.nnz());
        indptr.push(0);
        for r1 in 0..self.rows {
            for r2 in 0..other.rows {
                for (c1, v1) in self.row(r1) {
                    for (c2, v2) in other.row(r2) {
                        indices.push(c1 * other.cols + c2);
                        values.push(v1 * v2);
                    }
                }
                indptr.push(indices.len());
            }
        }
        CsrMatrix { rows, cols, indptr, indices, values }.pruned()
    }

    /// Entrywise `self + other`, adding `other`'s entry to `self`'s.
    pub fn add(&self, other: &CsrMatrix) -> CsrMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut indptr = Vec::with_capacity(self.rows + 1);
        let mut indices = Vec::with_capacity(self.nnz() + other.nnz());
        let mut values = Vec::with_capacity(self.nnz() + other.nnz());
        indptr.push(0);
        for r in 0..self.rows {
            let (mut i, ie) = (self.indptr[r], self.indptr[r + 1]);
            let (mut j, je) = (other.indptr[r], other.indptr[r + 1]);
            while i < ie || j < je {
                let ci = if i < ie { self.indices[i] } else { usize::MAX };
                let cj = if j < je { other.indices[j] } else { usize::MAX };
                if ci == cj {
                    indices.push(ci);
                    values.push(self.values[i] + other.values[j]);
                    i += 1;
                    j += 1;
                } else if ci < cj {
                    indices.push(ci);
                    values.push(self.values[i]);
                    i += 1;
                } else {
                    indices.push(cj);
                    values.push(other.values[j]);
                    j += 1;
                }
            }
            indptr.push(indices.len());
        }
        CsrMatrix { rows: self.rows, cols: self.cols, indptr, indices, values }.pruned()
    }

    pub fn scale(&self, s: C64) -> CsrMatrix {
        let mut out = self.clone();
        for v in out.values.iter_mut() {
            *v = s * *v;
        }
        out.pruned()
    }

    /// Matrix product. For each output entry the nonzero contributions are
    /// summed in ascending order of the inner index.
    pub fn matmul(&self, other: &CsrMatrix) -> CsrMatrix {
        assert_eq!(self.cols, other.rows);
        let mut acc = vec![C64::new(0.0, 0.0); other.cols];
        let mut touched = vec![false; other.cols];
        let mut indptr = Vec::with_capacity(self.rows + 1);
        let mut indices = Vec::new();
        let mut values = Vec::new();
        indptr.push(0);
        let mut cols_in_row = Vec::new();
        for r in 0..self.rows {
            cols_in_row.clear();
            for (k, a) in self.row(r) {
                for (c, b) in other.row(k) {
                    if !touched[c] {
                        touched[c] = true;
                        acc[c] = a * b;
                        cols_in_row.push(c);
                    } else {
                        acc[c] += a * b;
                    }
                }
            }
            cols_in_row.sort_unstable();
            for &c in &cols_in_row {
                indices.push(c);
                values.push(acc[c]);
                touched[c] = false;
            }
            indptr.push(indices.len());
        }
        CsrMatrix { rows: self.rows, cols: other.cols, indptr, indices, values }.pruned()
    }

    pub fn matvec(&self, x: &[C64], y: &mut [C64]) {
        assert_eq!(x.len(), self.cols);
        assert_eq!(y.len(), self.rows);
        for (r, yr) in y.iter_mut().enumerate() {
            let mut s = C64::new(0.0, 0.0);
            for (c, v) in self.row(r) {
                s += v * x[c];
            }
            *yr = s;
        }
    }

    pub fn adjoint(&self) -> CsrMatrix {
        let triplets = self.iter().map(|(r, c, v)| (c, r, v.conj())).collect();
        CsrMatrix::from_triplets(self.cols, self.rows, triplets)
    }

    pub fn transpose(&self) -> CsrMatrix {
        let triplets = self.iter().map(|(r, c, v)| (c, r, v)).collect();
        CsrMatrix::from_triplets(self.cols, self.rows, triplets)
    }

    /// Largest entrywise deviation `|a_rc - conj(a_cr)|`.
    pub fn hermitian_deviation(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for (r, c, v) in self.iter() {
            dev = dev.max((v - self.get(c, r).conj()).abs());
        }
        dev
    }

    pub fn trace(&self) -> C64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }
}
