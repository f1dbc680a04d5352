//! Square operators over a register, stored densely or sparsely.

use std::borrow::Cow;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::linalg;
use crate::policy::NumericPolicy;
use crate::sparse::CsrMatrix;
use crate::state::{check_square, kron_shape, RegisterShape};
use crate::{CMatrix, C64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Storage {
    #[default]
    Dense,
    Sparse,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Dense(CMatrix),
    Sparse(CsrMatrix),
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuantumOperator {
    shape: RegisterShape,
    repr: Repr,
}

impl QuantumOperator {
    pub fn from_dense(mat: CMatrix, shape: RegisterShape) -> Result<Self> {
        check_square(&mat, shape)?;
        Ok(QuantumOperator { shape, repr: Repr::Dense(mat) })
    }

    pub fn from_sparse(mat: CsrMatrix, shape: RegisterShape) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::NotSquare { rows: mat.nrows(), cols: mat.ncols() });
        }
        if mat.nrows() != shape.total_dim() {
            return Err(Error::DimensionMismatch { expected: shape.total_dim(), found: mat.nrows() });
        }
        Ok(QuantumOperator { shape, repr: Repr::Sparse(mat) })
    }

    /// Dense operator on qudits of dimension `dim`; the count is inferred.
    pub fn from_matrix(mat: CMatrix, dim: usize) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::NotSquare { rows: mat.nrows(), cols: mat.ncols() });
        }
        let shape = RegisterShape::from_total(mat.nrows(), dim)?;
        Self::from_dense(mat, shape)
    }

    /// Row-major complex entries of a `side x side` matrix.
    pub fn from_rows(side: usize, dim: usize, entries: &[C64]) -> Result<Self> {
        if entries.len() != side * side {
            return Err(Error::DimensionMismatch { expected: side * side, found: entries.len() });
        }
        Self::from_matrix(CMatrix::from_row_slice(side, side, entries), dim)
    }

    pub fn identity(shape: RegisterShape, storage: Storage) -> Self {
        let n = shape.total_dim();
        let repr = match storage {
            Storage::Dense => Repr::Dense(CMatrix::identity(n, n)),
            Storage::Sparse => Repr::Sparse(CsrMatrix::identity(n)),
        };
        QuantumOperator { shape, repr }
    }

    pub fn zeros(shape: RegisterShape, storage: Storage) -> Self {
        let n = shape.total_dim();
        let repr = match storage {
            Storage::Dense => Repr::Dense(CMatrix::zeros(n, n)),
            Storage::Sparse => Repr::Sparse(CsrMatrix::zeros(n, n)),
        };
        QuantumOperator { shape, repr }
    }

    pub fn shape(&self) -> RegisterShape {
        self.shape
    }

    pub fn side(&self) -> usize {
        self.shape.total_dim()
    }

    pub fn storage(&self) -> Storage {
        match self.repr {
            Repr::Dense(_) => Storage::Dense,
            Repr::Sparse(_) => Storage::Sparse,
        }
    }

    pub fn is_sparse(&self) -> bool {
        self.storage() == Storage::Sparse
    }

    /// Stored entries: all `side^2` for dense storage.
    pub fn stored_entries(&self) -> usize {
        match &self.repr {
            Repr::Dense(m) => m.len(),
            Repr::Sparse(s) => s.nnz(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> C64 {
        match &self.repr {
            Repr::Dense(m) => m[(r, c)],
            Repr::Sparse(s) => s.get(r, c),
        }
    }

    /// Reinterprets the operator over a different register of the same total
    /// dimension.
    pub fn with_shape(mut self, shape: RegisterShape) -> Result<Self> {
        if shape.total_dim() != self.side() {
            return Err(Error::DimensionMismatch { expected: self.side(), found: shape.total_dim() });
        }
        self.shape = shape;
        Ok(self)
    }

    pub fn to_dense(&self) -> Result<QuantumOperator> {
        self.to_dense_with(&NumericPolicy::DEFAULT)
    }

    pub fn to_dense_with(&self, policy: &NumericPolicy) -> Result<QuantumOperator> {
        Ok(QuantumOperator { shape: self.shape, repr: Repr::Dense(self.dense_with(policy)?.into_owned()) })
    }

    pub fn to_sparse(&self) -> QuantumOperator {
        QuantumOperator { shape: self.shape, repr: Repr::Sparse(self.sparse().into_owned()) }
    }

    pub fn to_storage(&self, storage: Storage) -> Result<QuantumOperator> {
        match storage {
            Storage::Dense => self.to_dense(),
            Storage::Sparse => Ok(self.to_sparse()),
        }
    }

    /// Dense view, materialized if necessary (subject to the default cap).
    pub fn dense(&self) -> Result<Cow<'_, CMatrix>> {
        self.dense_with(&NumericPolicy::DEFAULT)
    }

    pub fn dense_with(&self, policy: &NumericPolicy) -> Result<Cow<'_, CMatrix>> {
        match &self.repr {
            Repr::Dense(m) => Ok(Cow::Borrowed(m)),
            Repr::Sparse(s) => {
                if s.nrows() > policy.dense_side_cap {
                    return Err(Error::SizeCap { side: s.nrows(), cap: policy.dense_side_cap });
                }
                Ok(Cow::Owned(s.to_dense()))
            }
        }
    }

    pub fn sparse(&self) -> Cow<'_, CsrMatrix> {
        match &self.repr {
            Repr::Dense(m) => Cow::Owned(CsrMatrix::from_dense(m)),
            Repr::Sparse(s) => Cow::Borrowed(s),
        }
    }

    pub fn into_dense_matrix(self) -> Result<CMatrix> {
        match self.repr {
            Repr::Dense(m) => Ok(m),
            Repr::Sparse(s) => {
                let cap = NumericPolicy::DEFAULT.dense_side_cap;
                if s.nrows() > cap {
                    return Err(Error::SizeCap { side: s.nrows(), cap });
                }
                Ok(s.to_dense())
            }
        }
    }

    /// Kronecker product with `self` as the more significant factor. The
    /// result is sparse when either factor is.
    pub fn kron(&self, other: &QuantumOperator) -> QuantumOperator {
        let shape = kron_shape(self.shape, other.shape);
        let repr = match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => Repr::Dense(a.kronecker(b)),
            _ => Repr::Sparse(self.sparse().kron(&other.sparse())),
        };
        QuantumOperator { shape, repr }
    }

    pub fn checked_add(&self, other: &QuantumOperator) -> Result<QuantumOperator> {
        self.check_same_side(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => Repr::Dense(a + b),
            _ => Repr::Sparse(self.sparse().add(&other.sparse())),
        };
        Ok(QuantumOperator { shape: self.shape, repr })
    }

    pub fn checked_sub(&self, other: &QuantumOperator) -> Result<QuantumOperator> {
        self.checked_add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn checked_mul(&self, other: &QuantumOperator) -> Result<QuantumOperator> {
        self.check_same_side(other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Dense(a), Repr::Dense(b)) => Repr::Dense(a * b),
            _ => Repr::Sparse(self.sparse().matmul(&other.sparse())),
        };
        Ok(QuantumOperator { shape: self.shape, repr })
    }

    pub fn scale(&self, s: C64) -> QuantumOperator {
        let repr = match &self.repr {
            Repr::Dense(m) => Repr::Dense(m.map(|v| s * v)),
            Repr::Sparse(m) => Repr::Sparse(m.scale(s)),
        };
        QuantumOperator { shape: self.shape, repr }
    }

    pub fn scale_real(&self, s: f64) -> QuantumOperator {
        self.scale(C64::new(s, 0.0))
    }

    pub fn adjoint(&self) -> QuantumOperator {
        let repr = match &self.repr {
            Repr::Dense(m) => Repr::Dense(m.adjoint()),
            Repr::Sparse(m) => Repr::Sparse(m.adjoint()),
        };
        QuantumOperator { shape: self.shape, repr }
    }

    pub fn trace(&self) -> C64 {
        match &self.repr {
            Repr::Dense(m) => m.trace(),
            Repr::Sparse(m) => m.trace(),
        }
    }

    pub fn hermitian_deviation(&self) -> f64 {
        match &self.repr {
            Repr::Dense(m) => linalg::hermitian_deviation(m),
            Repr::Sparse(m) => m.hermitian_deviation(),
        }
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub fn apply(&self, x: &[C64], y: &mut [C64]) {
        match &self.repr {
            Repr::Dense(m) => {
                for (r, yr) in y.iter_mut().enumerate() {
                    let mut s = C64::new(0.0, 0.0);
                    for (c, xc) in x.iter().enumerate() {
                        s += m[(r, c)] * xc;
                    }
                    *yr = s;
                }
            }
            Repr::Sparse(m) => m.matvec(x, y),
        }
    }

    /// Largest entrywise difference to another operator of the same side.
    pub fn max_abs_diff(&self, other: &QuantumOperator) -> Result<f64> {
        self.check_same_side(other)?;
        let d = self.checked_sub(other)?;
        Ok(match &d.repr {
            Repr::Dense(m) => m.iter().map(|v| v.norm()).fold(0.0, f64::max),
            Repr::Sparse(s) => s.iter().map(|(_, _, v)| v.norm()).fold(0.0, f64::max),
        })
    }

    /// Exact entrywise equality regardless of storage.
    pub fn entries_equal(&self, other: &QuantumOperator) -> bool {
        if self.side() != other.side() {
            return false;
        }
        let a = self.sparse();
        let b = other.sparse();
        a.iter().eq(b.iter())
    }

    fn check_same_side(&self, other: &QuantumOperator) -> Result<()> {
        if self.side() != other.side() {
            return Err(Error::DimensionMismatch { expected: self.side(), found: other.side() });
        }
        Ok(())
    }
}

impl Add for &QuantumOperator {
    type Output = QuantumOperator;
    fn add(self, rhs: &QuantumOperator) -> QuantumOperator {
        self.checked_add(rhs).expect("operator sides differ")
    }
}

impl Sub for &QuantumOperator {
    type Output = QuantumOperator;
    fn sub(self, rhs: &QuantumOperator) -> QuantumOperator {
        self.checked_sub(rhs).expect("operator sides differ")
    }
}

impl Mul for &QuantumOperator {
    type Output = QuantumOperator;
    fn mul(self, rhs: &QuantumOperator) -> QuantumOperator {
        self.checked_mul(rhs).expect("operator sides differ")
    }
}

impl Mul<f64> for &QuantumOperator {
    type Output = QuantumOperator;
    fn mul(self, rhs: f64) -> QuantumOperator {
        self.scale_real(rhs)
    }
}

impl Mul<C64> for &QuantumOperator {
    type Output = QuantumOperator;
    fn mul(self, rhs: C64) -> QuantumOperator {
        self.scale(rhs)
    }
}

impl Neg for &QuantumOperator {
    type Output = QuantumOperator;
    fn neg(self) -> QuantumOperator {
        self.scale_real(-1.0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QuantumOperator {
            type Output = QuantumOperator;
            fn $m(self, rhs: QuantumOperator) -> QuantumOperator {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::pauli;

    #[test]
    fn storage_round_trip_is_exact() {
        let x = pauli::x();
        let s = x.to_sparse();
        assert!(s.is_sparse());
        assert_eq!(s.stored_entries(), 2);
        assert_eq!(s.to_dense().unwrap(), x);
    }

    #[test]
    fn sparse_identity_power_entries() {
        let shape = RegisterShape::qubits(6).unwrap();
        let id = QuantumOperator::identity(shape, Storage::Sparse);
        assert_eq!(id.stored_entries(), 64);
    }

    #[test]
    fn dense_cap_enforced() {
        let shape = RegisterShape::qubits(5).unwrap();
        let id = QuantumOperator::identity(shape, Storage::Sparse);
        let policy = NumericPolicy { dense_side_cap: 16, ..NumericPolicy::DEFAULT };
        assert!(matches!(id.to_dense_with(&policy), Err(Error::SizeCap { side: 32, cap: 16 })));
    }

    #[test]
    fn mixed_storage_arithmetic_goes_sparse() {
        let x = pauli::x();
        let z = pauli::z().to_sparse();
        let p = &x * &z;
        assert!(p.is_sparse());
        assert_eq!(p.to_dense().unwrap(), &x * &pauli::z());
    }
}
