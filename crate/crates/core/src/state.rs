//! Register shapes and the pure/mixed state types.

use crate::error::{Error, Result};
use crate::linalg;
use crate::policy::NumericPolicy;
use crate::{CMatrix, CVector, C64};

/// Number of qudits and their common local dimension.
///
/// Qudits are numbered `1..=n`; qudit 1 is the least significant Kronecker
/// factor, qudit `n` the most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegisterShape {
    n_qudits: usize,
    dim: usize,
}

impl RegisterShape {
    pub fn new(n_qudits: usize, dim: usize) -> Result<Self> {
        if n_qudits < 1 {
            return Err(Error::InvalidShape("number of qudits must be at least 1".into()));
        }
        Self::with_zero(n_qudits, dim)
    }

    /// Qubit register of `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(n, 2)
    }

    /// Shape allowing zero qudits (a 1x1 scalar register).
    pub(crate) fn with_zero(n_qudits: usize, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidShape(format!("local dimension must be at least 2, got {dim}")));
        }
        let exp = u32::try_from(n_qudits).map_err(|_| Error::InvalidShape("too many qudits".into()))?;
        let total = dim
            .checked_pow(exp)
            .ok_or_else(|| Error::InvalidShape(format!("{dim}^{n_qudits} overflows")))?;
        // a vector of that many complex amplitudes must be addressable in bytes
        if total.checked_mul(std::mem::size_of::<C64>()).is_none() {
            return Err(Error::InvalidShape(format!("{dim}^{n_qudits} amplitudes not addressable")));
        }
        Ok(RegisterShape { n_qudits, dim })
    }

    /// Infers the qudit count from a vector length or matrix side.
    pub fn from_total(total: usize, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidShape(format!("local dimension must be at least 2, got {dim}")));
        }
        if total == 0 {
            return Err(Error::NotPowerOf { len: total, dim });
        }
        let mut n = 0;
        let mut t = total;
        while t.is_multiple_of(dim) {
            t /= dim;
            n += 1;
        }
        if t != 1 {
            return Err(Error::NotPowerOf { len: total, dim });
        }
        Self::with_zero(n, dim)
    }

    pub fn n_qudits(&self) -> usize {
        self.n_qudits
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `d^N`.
    pub fn total_dim(&self) -> usize {
        self.dim.pow(self.n_qudits as u32)
    }
}

/// A pure state: `d^N` amplitudes in column (ket) semantics.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: CVector,
    shape: RegisterShape,
}

impl StateVector {
    /// Wraps amplitudes without normalizing them.
    pub fn from_amplitudes(amps: CVector, shape: RegisterShape) -> Result<Self> {
        if amps.len() != shape.total_dim() {
            return Err(Error::DimensionMismatch { expected: shape.total_dim(), found: amps.len() });
        }
        Ok(StateVector { amps, shape })
    }

    /// Normalizes `raw` and infers the register size from its length.
    pub fn normalized(raw: &[C64], dim: usize) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidArgument("empty amplitude list".into()));
        }
        let shape = RegisterShape::from_total(raw.len(), dim)?;
        let v = StateVector { amps: CVector::from_column_slice(raw), shape };
        v.normalize()
    }

    pub(crate) fn new_unchecked(amps: CVector, shape: RegisterShape) -> Self {
        debug_assert_eq!(amps.len(), shape.total_dim());
        StateVector { amps, shape }
    }

    pub fn basis(index: usize, shape: RegisterShape) -> Result<Self> {
        let n = shape.total_dim();
        if index >= n {
            return Err(Error::InvalidArgument(format!("basis index {index} out of range for dimension {n}")));
        }
        let mut amps = CVector::zeros(n);
        amps[index] = C64::new(1.0, 0.0);
        Ok(StateVector { amps, shape })
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    pub fn into_amplitudes(self) -> CVector {
        self.amps
    }

    pub fn shape(&self) -> RegisterShape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn normalize(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm("state vector"));
        }
        if (norm - 1.0).abs() <= NumericPolicy::DEFAULT.norm_tol {
            return Ok(self.clone());
        }
        Ok(StateVector { amps: self.amps.unscale(norm), shape: self.shape })
    }

    /// Rank-one projector `|v><v|` of the normalized vector.
    pub fn projector(&self) -> Result<DensityMatrix> {
        let v = self.normalize()?;
        let m = &v.amps * v.amps.adjoint();
        Ok(DensityMatrix::new_unchecked(m, self.shape))
    }

    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        Ok(self.amps.dotc(&other.amps))
    }

    /// Kronecker product with `self` as the more significant factor.
    pub fn kron(&self, other: &StateVector) -> StateVector {
        let amps = self.amps.kronecker(&other.amps);
        let shape = kron_shape(self.shape, other.shape);
        StateVector { amps, shape }
    }
}

/// A mixed state: Hermitian, positive semidefinite, unit trace.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: CMatrix,
    shape: RegisterShape,
}

impl DensityMatrix {
    /// Validates Hermiticity and positivity and normalizes the trace.
    pub fn new(mat: CMatrix, shape: RegisterShape) -> Result<Self> {
        Self::with_policy(mat, shape, &NumericPolicy::DEFAULT)
    }

    pub fn with_policy(mat: CMatrix, shape: RegisterShape, policy: &NumericPolicy) -> Result<Self> {
        check_square(&mat, shape)?;
        let dev = linalg::hermitian_deviation(&mat);
        if dev > policy.hermitian_tol {
            return Err(Error::NotHermitian(dev));
        }
        let tr = mat.trace().re;
        if tr.abs() <= f64::EPSILON * mat.nrows() as f64 || !tr.is_finite() {
            return Err(Error::ZeroNorm("density matrix trace"));
        }
        let mat = if (tr - 1.0).abs() <= policy.norm_tol { mat } else { mat.unscale(tr) };
        let min = linalg::hermitian_eigenvalues(&mat).first().copied().unwrap_or(0.0);
        if min < -policy.hermitian_tol {
            return Err(Error::NotPositive(min));
        }
        Ok(DensityMatrix { mat, shape })
    }

    /// Infers the shape from the matrix side.
    pub fn from_matrix(mat: CMatrix, dim: usize) -> Result<Self> {
        let shape = RegisterShape::from_total(mat.nrows(), dim)?;
        Self::new(mat, shape)
    }

    pub(crate) fn new_unchecked(mat: CMatrix, shape: RegisterShape) -> Self {
        debug_assert_eq!(mat.nrows(), shape.total_dim());
        DensityMatrix { mat, shape }
    }

    pub fn maximally_mixed(shape: RegisterShape) -> Self {
        let n = shape.total_dim();
        let mat = CMatrix::identity(n, n).unscale(n as f64);
        DensityMatrix { mat, shape }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> CMatrix {
        self.mat
    }

    pub fn shape(&self) -> RegisterShape {
        self.shape
    }

    pub fn side(&self) -> usize {
        self.mat.nrows()
    }

    pub fn purity(&self) -> f64 {
        linalg::trace_of_product(&self.mat, &self.mat).re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.mat)
    }
}

/// Either kind of state. A vector coerces to its normalized projector
/// wherever a density matrix is needed.
#[derive(Debug, Clone, PartialEq)]
pub enum StateLike {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl StateLike {
    pub fn shape(&self) -> RegisterShape {
        match self {
            StateLike::Pure(v) => v.shape(),
            StateLike::Mixed(m) => m.shape(),
        }
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        StateRef::from(self).to_density()
    }

    pub fn as_vector(&self) -> Option<&StateVector> {
        match self {
            StateLike::Pure(v) => Some(v),
            StateLike::Mixed(_) => None,
        }
    }

    pub fn as_density(&self) -> Option<&DensityMatrix> {
        match self {
            StateLike::Pure(_) => None,
            StateLike::Mixed(m) => Some(m),
        }
    }

    pub fn into_vector(self) -> Option<StateVector> {
        match self {
            StateLike::Pure(v) => Some(v),
            StateLike::Mixed(_) => None,
        }
    }

    pub fn into_density(self) -> Result<DensityMatrix> {
        match self {
            StateLike::Pure(v) => v.projector(),
            StateLike::Mixed(m) => Ok(m),
        }
    }
}

impl From<StateVector> for StateLike {
    fn from(v: StateVector) -> Self {
        StateLike::Pure(v)
    }
}

impl From<DensityMatrix> for StateLike {
    fn from(m: DensityMatrix) -> Self {
        StateLike::Mixed(m)
    }
}

/// Borrowed view of a state, accepted by every function taking "a vector or
/// a density matrix".
#[derive(Debug, Clone, Copy)]
pub enum StateRef<'a> {
    Pure(&'a StateVector),
    Mixed(&'a DensityMatrix),
}

impl<'a> StateRef<'a> {
    pub fn shape(&self) -> RegisterShape {
        match self {
            StateRef::Pure(v) => v.shape(),
            StateRef::Mixed(m) => m.shape(),
        }
    }

    pub fn side(&self) -> usize {
        self.shape().total_dim()
    }

    pub fn to_density(&self) -> Result<DensityMatrix> {
        match self {
            StateRef::Pure(v) => v.projector(),
            StateRef::Mixed(m) => Ok((*m).clone()),
        }
    }

    pub fn to_owned(&self) -> StateLike {
        match self {
            StateRef::Pure(v) => StateLike::Pure((*v).clone()),
            StateRef::Mixed(m) => StateLike::Mixed((*m).clone()),
        }
    }
}

impl<'a> From<&'a StateVector> for StateRef<'a> {
    fn from(v: &'a StateVector) -> Self {
        StateRef::Pure(v)
    }
}

impl<'a> From<&'a DensityMatrix> for StateRef<'a> {
    fn from(m: &'a DensityMatrix) -> Self {
        StateRef::Mixed(m)
    }
}

impl<'a> From<&'a StateLike> for StateRef<'a> {
    fn from(s: &'a StateLike) -> Self {
        match s {
            StateLike::Pure(v) => StateRef::Pure(v),
            StateLike::Mixed(m) => StateRef::Mixed(m),
        }
    }
}

pub(crate) fn kron_shape(a: RegisterShape, b: RegisterShape) -> RegisterShape {
    if a.dim == b.dim {
        RegisterShape { n_qudits: a.n_qudits + b.n_qudits, dim: a.dim }
    } else {
        // mixed local dimensions collapse into one composite qudit
        let total = a.total_dim() * b.total_dim();
        RegisterShape { n_qudits: 1, dim: total }
    }
}

pub(crate) fn check_square(mat: &CMatrix, shape: RegisterShape) -> Result<()> {
    if !mat.is_square() {
        return Err(Error::NotSquare { rows: mat.nrows(), cols: mat.ncols() });
    }
    if mat.nrows() != shape.total_dim() {
        return Err(Error::DimensionMismatch { expected: shape.total_dim(), found: mat.nrows() });
    }
    Ok(())
}
