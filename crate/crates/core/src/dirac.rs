//! Dirac-notation constructors, expectation values and register helpers.

use crate::error::{Error, Result};
use crate::operator::{QuantumOperator, Storage};
use crate::state::{DensityMatrix, RegisterShape, StateLike, StateRef, StateVector};
use crate::{CVector, C64};

/// Normalized column vector over qubits.
pub fn ket(raw: &[C64]) -> Result<StateVector> {
    ket_with_dim(raw, 2)
}

pub fn ket_with_dim(raw: &[C64], dim: usize) -> Result<StateVector> {
    StateVector::normalized(raw, dim)
}

/// Row vector: the element-wise conjugate of the normalized ket.
#[derive(Debug, Clone, PartialEq)]
pub struct Bra {
    amps: CVector,
}

impl Bra {
    pub fn amplitudes(&self) -> &CVector {
        &self.amps
    }

    /// `<self|v>`.
    pub fn apply(&self, v: &StateVector) -> Result<C64> {
        if v.len() != self.amps.len() {
            return Err(Error::DimensionMismatch { expected: self.amps.len(), found: v.len() });
        }
        Ok(self.amps.dot(v.amplitudes()))
    }
}

pub fn bra(raw: &[C64]) -> Result<Bra> {
    bra_with_dim(raw, 2)
}

pub fn bra_with_dim(raw: &[C64], dim: usize) -> Result<Bra> {
    let k = ket_with_dim(raw, dim)?;
    Ok(Bra { amps: k.amplitudes().map(|a| a.conj()) })
}

/// Projector onto a vector, or the trace-normalized copy of a matrix.
pub fn ketbra<'a>(s: impl Into<StateRef<'a>>) -> Result<DensityMatrix> {
    match s.into() {
        StateRef::Pure(v) => v.projector(),
        StateRef::Mixed(m) => DensityMatrix::new(m.matrix().clone(), m.shape()),
    }
}

/// `<v1|v2>`, or `<v1|op|v2>` when an operator is given.
pub fn braket(v1: &StateVector, op: Option<&QuantumOperator>, v2: &StateVector) -> Result<C64> {
    match op {
        None => v1.inner(v2),
        Some(op) => {
            if op.side() != v2.len() {
                return Err(Error::DimensionMismatch { expected: op.side(), found: v2.len() });
            }
            let mut w = vec![C64::new(0.0, 0.0); v2.len()];
            op.apply(v2.amplitudes().as_slice(), &mut w);
            v1.inner(&StateVector::new_unchecked(CVector::from_vec(w), v2.shape()))
        }
    }
}

/// Expectation value of `op` in the normalized state.
pub fn ex<'a>(op: &QuantumOperator, s: impl Into<StateRef<'a>>) -> Result<C64> {
    let s = s.into();
    if op.side() != s.side() {
        return Err(Error::DimensionMismatch { expected: op.side(), found: s.side() });
    }
    match s {
        StateRef::Pure(v) => {
            let v = v.normalize()?;
            braket(&v, Some(op), &v)
        }
        StateRef::Mixed(m) => {
            let rho = m.matrix();
            let tr = rho.trace();
            let sparse = op.sparse();
            let mut acc = C64::new(0.0, 0.0);
            for (r, c, v) in sparse.iter() {
                acc += v * rho[(c, r)];
            }
            Ok(acc / tr)
        }
    }
}

/// Variance `<op^2> - <op>^2` of a Hermitian operator.
pub fn va<'a>(op: &QuantumOperator, s: impl Into<StateRef<'a>>) -> Result<f64> {
    let dev = op.hermitian_deviation();
    if dev > crate::NumericPolicy::DEFAULT.hermitian_tol {
        return Err(Error::NotHermitian(dev));
    }
    let s = s.into();
    let m1 = ex(op, s)?;
    let op2 = op.checked_mul(op)?;
    let m2 = ex(&op2, s)?;
    Ok(m2.re - m1.re * m1.re)
}

/// Unit norm for vectors, unit trace for matrices.
pub fn nm<'a>(s: impl Into<StateRef<'a>>) -> Result<StateLike> {
    Ok(match s.into() {
        StateRef::Pure(v) => StateLike::Pure(v.normalize()?),
        StateRef::Mixed(m) => StateLike::Mixed(DensityMatrix::new(m.matrix().clone(), m.shape())?),
    })
}

/// Values that admit a Kronecker product.
pub trait Kron: Sized + Clone {
    fn kron(&self, other: &Self) -> Self;
}

impl Kron for QuantumOperator {
    fn kron(&self, other: &Self) -> Self {
        QuantumOperator::kron(self, other)
    }
}

impl Kron for StateVector {
    fn kron(&self, other: &Self) -> Self {
        StateVector::kron(self, other)
    }
}

/// Left-associated Kronecker product; the first factor is the most
/// significant (highest-numbered) qudit.
pub fn mkron<'a, T: Kron + 'a>(factors: impl IntoIterator<Item = &'a T>) -> Result<T> {
    let mut it = factors.into_iter();
    let first = it.next().ok_or_else(|| Error::InvalidArgument("mkron needs at least one factor".into()))?;
    Ok(it.fold(first.clone(), |acc, f| acc.kron(f)))
}

/// `n`-fold Kronecker power.
pub fn pkron<T: Kron>(m: &T, n: usize) -> Result<T> {
    if n < 1 {
        return Err(Error::InvalidArgument("Kronecker power must be at least 1".into()));
    }
    Ok((1..n).fold(m.clone(), |acc, _| acc.kron(m)))
}

/// All-zero (unnormalized) vector for the register.
pub fn qvec(shape: RegisterShape) -> StateVector {
    StateVector::new_unchecked(CVector::zeros(shape.total_dim()), shape)
}

pub fn qeye(shape: RegisterShape) -> QuantumOperator {
    QuantumOperator::identity(shape, Storage::Dense)
}

/// Number of qudits of dimension `dim` spanned by a vector length or
/// matrix side.
pub fn qsize(len: usize, dim: usize) -> Result<usize> {
    Ok(RegisterShape::from_total(len, dim)?.n_qudits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::pauli;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn ket_examples() {
        let k = ket(&[c(1., 0.), c(0., 0.)]).unwrap();
        assert_eq!(k.amplitudes().as_slice(), &[c(1., 0.), c(0., 0.)]);
        let k = ket(&[c(1., 0.), c(1., 0.)]).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!(close(k.amplitudes()[0], c(h, 0.)) && close(k.amplitudes()[1], c(h, 0.)));
        let k = ket(&[c(2., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert_eq!(k.amplitudes()[0], c(1., 0.));
        assert_eq!(k.shape().n_qudits(), 2);
    }

    #[test]
    fn ket_errors() {
        assert_eq!(ket(&[c(0., 0.), c(0., 0.)]), Err(Error::ZeroNorm("state vector")));
        assert!(matches!(ket(&[c(1., 0.), c(0., 0.), c(0., 0.)]), Err(Error::NotPowerOf { .. })));
        assert!(ket(&[]).is_err());
    }

    #[test]
    fn bra_conjugates() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let b = bra(&[c(1., 0.), c(0., 1.)]).unwrap();
        assert!(close(b.amplitudes()[0], c(h, 0.)) && close(b.amplitudes()[1], c(0., -h)));
        let b = bra(&[c(1., 0.), c(0., 0.)]).unwrap();
        assert_eq!(b.amplitudes().as_slice(), &[c(1., 0.), c(0., 0.)]);
        let b = bra(&[c(0., 0.), c(0., 1.)]).unwrap();
        assert_eq!(b.amplitudes().as_slice(), &[c(0., 0.), c(0., -1.)]);
    }

    #[test]
    fn ketbra_examples() {
        let v = ket(&[c(1., 0.), c(1., 0.)]).unwrap();
        let rho = ketbra(&v).unwrap();
        for x in rho.matrix().iter() {
            assert!(close(*x, c(0.5, 0.)));
        }
        let rho = ketbra(&ket(&[c(1., 0.), c(0., 0.)]).unwrap()).unwrap();
        assert_eq!(rho.matrix()[(0, 0)], c(1., 0.));
        assert_eq!(rho.matrix()[(1, 1)], c(0., 0.));
        let two = crate::CMatrix::identity(2, 2) * c(2., 0.);
        let m = DensityMatrix::from_matrix(two.clone(), 2).unwrap();
        let rho = ketbra(&m).unwrap();
        assert_eq!(rho.matrix()[(0, 0)], c(0.5, 0.));
    }

    #[test]
    fn braket_and_expectations() {
        let e0 = ket(&[c(1., 0.), c(0., 0.)]).unwrap();
        let e1 = ket(&[c(0., 0.), c(1., 0.)]).unwrap();
        assert_eq!(braket(&e0, None, &e0).unwrap(), c(1., 0.));
        assert_eq!(braket(&e0, None, &e1).unwrap(), c(0., 0.));
        assert_eq!(braket(&e0, Some(&pauli::x()), &e1).unwrap(), c(1., 0.));
        let mixed = DensityMatrix::maximally_mixed(RegisterShape::qubits(1).unwrap());
        assert_eq!(ex(&pauli::z(), &e0).unwrap(), c(1., 0.));
        assert_eq!(ex(&pauli::x(), &e0).unwrap(), c(0., 0.));
        assert_eq!(ex(&pauli::z(), &mixed).unwrap(), c(0., 0.));
        assert_eq!(va(&pauli::z(), &e0).unwrap(), 0.0);
        assert_eq!(va(&pauli::x(), &e0).unwrap(), 1.0);
        assert_eq!(va(&pauli::z(), &mixed).unwrap(), 1.0);
        let e00 = ket(&[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert!(matches!(ex(&pauli::x(), &e00), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn nm_examples() {
        let v = StateVector::from_amplitudes(CVector::from_vec(vec![c(2., 0.), c(0., 0.)]), RegisterShape::qubits(1).unwrap()).unwrap();
        assert_eq!(nm(&v).unwrap().as_vector().unwrap().amplitudes()[0], c(1., 0.));
        let rho = DensityMatrix::from_matrix(crate::CMatrix::identity(2, 2), 2).unwrap();
        assert_eq!(nm(&rho).unwrap().as_density().unwrap().matrix()[(1, 1)], c(0.5, 0.));
        let v = StateVector::from_amplitudes(CVector::from_vec(vec![c(1., 0.), c(0., 1.)]), RegisterShape::qubits(1).unwrap()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let n = nm(&v).unwrap().into_vector().unwrap();
        assert!(close(n.amplitudes()[1], c(0., h)));
    }

    #[test]
    fn kron_helpers() {
        let x = pauli::x();
        assert_eq!(mkron([&x]).unwrap(), x);
        let e0 = ket(&[c(1., 0.), c(0., 0.)]).unwrap();
        let e1 = ket(&[c(0., 0.), c(1., 0.)]).unwrap();
        let v = mkron([&e1, &e0]).unwrap();
        assert_eq!(v.amplitudes()[2], c(1., 0.));
        let zz = pkron(&pauli::z(), 2).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| zz.get(i, i).re).collect();
        assert_eq!(diag, vec![1., -1., -1., 1.]);
        assert_eq!(pkron(&pauli::z(), 1).unwrap(), pauli::z());
        assert_eq!(pkron(&pauli::e(), 3).unwrap(), qeye(RegisterShape::qubits(3).unwrap()));
        assert!(pkron(&pauli::z(), 0).is_err());
        assert!(mkron::<QuantumOperator>([]).is_err());
    }

    #[test]
    fn middle_qubit_operator_by_hand() {
        // I (x) sz (x) I: diag over |q3 q2 q1> is +1 when q2 = 0
        let op = mkron([&pauli::e(), &pauli::z(), &pauli::e()]).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let expected = if i != j { 0.0 } else if (i >> 1) & 1 == 0 { 1.0 } else { -1.0 };
                assert_eq!(op.get(i, j), c(expected, 0.));
            }
        }
    }

    #[test]
    fn register_helpers() {
        let s1 = RegisterShape::new(1, 2).unwrap();
        assert_eq!(qvec(s1).len(), 2);
        assert_eq!(qvec(RegisterShape::new(2, 2).unwrap()).len(), 4);
        assert_eq!(qvec(RegisterShape::new(1, 3).unwrap()).len(), 3);
        assert!(qvec(s1).amplitudes().iter().all(|a| *a == c(0., 0.)));
        assert_eq!(qeye(RegisterShape::new(1, 3).unwrap()).side(), 3);
        assert_eq!(qsize(8, 2).unwrap(), 3);
        assert_eq!(qsize(9, 3).unwrap(), 2);
        assert!(qsize(6, 2).is_err());
    }
}
