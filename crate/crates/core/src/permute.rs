//! Reordering qudits and reduced states.
//!
//! A [`Permutation`] lists, slot by slot from the most significant qudit
//! (qudit `N`) down to qudit 1, which original qudit lands in that slot. The
//! identity on three qudits is therefore `[3, 2, 1]`, and `[1, 3, 2]` moves
//! qudit 1 to the top, qudit 3 to the middle and qudit 2 to the bottom.

use crate::error::{Error, Result};
use crate::operator::{QuantumOperator, Storage};
use crate::sparse::CsrMatrix;
use crate::state::{DensityMatrix, RegisterShape, StateLike, StateRef, StateVector};
use crate::{CMatrix, CVector, C64};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    slots: Vec<usize>,
}

impl Permutation {
    /// Validates a bijection on `1..=N` given in slot order.
    pub fn new(slots: Vec<usize>) -> Result<Self> {
        let n = slots.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty permutation".into()));
        }
        let mut seen = vec![false; n];
        for &q in &slots {
            if q < 1 || q > n {
                return Err(Error::InvalidPermutation(format!("entry {q} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[q - 1], true) {
                return Err(Error::InvalidPermutation(format!("entry {q} repeated")));
            }
        }
        Ok(Permutation { slots })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { slots: (1..=n).rev().collect() }
    }

    /// Cyclic shift of the printed ket string: qudit 1 moves to the top slot
    /// and every other qudit moves down by one.
    pub fn shift_left(n: usize) -> Self {
        let mut slots = vec![1];
        slots.extend((2..=n).rev());
        Permutation { slots }
    }

    pub fn shift_right(n: usize) -> Self {
        Self::shift_left(n).inverse()
    }

    /// Exchanges qudits `k` and `l`.
    pub fn transposition(n: usize, k: usize, l: usize) -> Result<Self> {
        if k == l || k < 1 || l < 1 || k > n || l > n {
            return Err(Error::InvalidPermutation(format!("cannot swap qudits {k} and {l} of {n}")));
        }
        let mut p = Self::identity(n);
        p.slots[n - k] = l;
        p.slots[n - l] = k;
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    /// Original qudit that ends up as qudit `q` of the output.
    pub fn source_of(&self, q: usize) -> usize {
        self.slots[self.len() - q]
    }

    pub fn inverse(&self) -> Self {
        let n = self.len();
        let mut slots = vec![0; n];
        for q_out in 1..=n {
            let q_in = self.source_of(q_out);
            slots[n - q_in] = q_out;
        }
        Permutation { slots }
    }

    /// The permutation equivalent to applying `self` first and then `next`.
    pub fn then(&self, next: &Permutation) -> Result<Self> {
        if self.len() != next.len() {
            return Err(Error::InvalidPermutation("length mismatch in composition".into()));
        }
        let slots = next.slots.iter().map(|&mid| self.source_of(mid)).collect();
        Ok(Permutation { slots })
    }

    /// Basis index map: `reorder` sends basis vector `i` to basis vector
    /// `map[i]`.
    pub fn index_map(&self, dim: usize) -> Vec<usize> {
        let n = self.len();
        let total = dim.pow(n as u32);
        let weights: Vec<usize> = (0..n).map(|p| dim.pow(p as u32)).collect();
        (0..total)
            .map(|i| {
                let mut out = 0;
                for q_out in 1..=n {
                    let q_in = self.source_of(q_out);
                    let digit = (i / weights[q_in - 1]) % dim;
                    out += digit * weights[q_out - 1];
                }
                out
            })
            .collect()
    }
}

/// Distinct qudit indices within `1..=N`, kept in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuditList {
    qudits: Vec<usize>,
}

impl QuditList {
    pub fn new(qudits: &[usize], n: usize) -> Result<Self> {
        let mut q = qudits.to_vec();
        q.sort_unstable();
        for w in q.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidQuditList(format!("qudit {} repeated", w[0])));
            }
        }
        if let Some(&bad) = q.iter().find(|&&k| k < 1 || k > n) {
            return Err(Error::InvalidQuditList(format!("qudit {bad} outside 1..={n}")));
        }
        Ok(QuditList { qudits: q })
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.qudits
    }

    pub fn len(&self) -> usize {
        self.qudits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.qudits.is_empty()
    }

    pub fn contains(&self, q: usize) -> bool {
        self.qudits.binary_search(&q).is_ok()
    }

    pub fn complement(&self, n: usize) -> QuditList {
        QuditList { qudits: (1..=n).filter(|q| !self.contains(*q)).collect() }
    }
}

fn check_perm(perm: &Permutation, shape: RegisterShape) -> Result<()> {
    if perm.len() != shape.n_qudits() {
        return Err(Error::InvalidPermutation(format!(
            "permutation has {} entries for a {}-qudit register",
            perm.len(),
            shape.n_qudits()
        )));
    }
    Ok(())
}

/// Basis index map of a permutation (see [`Permutation::index_map`]).
pub fn reordervec(perm: &Permutation, dim: usize) -> Vec<usize> {
    perm.index_map(dim)
}

pub fn reorder<'a>(s: impl Into<StateRef<'a>>, perm: &Permutation) -> Result<StateLike> {
    let s = s.into();
    let shape = s.shape();
    check_perm(perm, shape)?;
    let map = perm.index_map(shape.dim());
    Ok(match s {
        StateRef::Pure(v) => StateLike::Pure(permute_vector(v, &map)),
        StateRef::Mixed(m) => StateLike::Mixed(DensityMatrix::new_unchecked(permute_matrix(m.matrix(), &map), shape)),
    })
}

pub fn reorder_vector(v: &StateVector, perm: &Permutation) -> Result<StateVector> {
    check_perm(perm, v.shape())?;
    Ok(permute_vector(v, &perm.index_map(v.shape().dim())))
}

/// Conjugates an operator by the permutation: `P op P^T`.
pub fn reorder_operator(op: &QuantumOperator, perm: &Permutation) -> Result<QuantumOperator> {
    check_perm(perm, op.shape())?;
    let map = perm.index_map(op.shape().dim());
    match op.storage() {
        Storage::Dense => QuantumOperator::from_dense(permute_matrix(&*op.dense()?, &map), op.shape()),
        Storage::Sparse => {
            let s = op.sparse();
            let triplets = s.iter().map(|(r, c, v)| (map[r], map[c], v)).collect();
            QuantumOperator::from_sparse(CsrMatrix::from_triplets(s.nrows(), s.ncols(), triplets), op.shape())
        }
    }
}

fn permute_vector(v: &StateVector, map: &[usize]) -> StateVector {
    let mut out = CVector::zeros(v.len());
    for (i, a) in v.amplitudes().iter().enumerate() {
        out[map[i]] = *a;
    }
    StateVector::new_unchecked(out, v.shape())
}

fn permute_matrix(m: &CMatrix, map: &[usize]) -> CMatrix {
    let n = m.nrows();
    let mut out = CMatrix::zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            out[(map[i], map[j])] = m[(i, j)];
        }
    }
    out
}

/// Permutation matrix `P` with `P v = reorder(v, perm)`.
pub fn reordermat(perm: &Permutation, dim: usize, storage: Storage) -> Result<QuantumOperator> {
    let shape = RegisterShape::new(perm.len(), dim)?;
    let map = perm.index_map(dim);
    let one = C64::new(1.0, 0.0);
    let n = map.len();
    match storage {
        Storage::Dense => {
            let mut m = CMatrix::zeros(n, n);
            for (i, &j) in map.iter().enumerate() {
                m[(j, i)] = one;
            }
            QuantumOperator::from_dense(m, shape)
        }
        Storage::Sparse => {
            let triplets = map.iter().enumerate().map(|(i, &j)| (j, i, one)).collect();
            QuantumOperator::from_sparse(CsrMatrix::from_triplets(n, n, triplets), shape)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftDirection {
    Left,
    Right,
}

pub fn shift_qudits<'a>(s: impl Into<StateRef<'a>>, direction: ShiftDirection) -> Result<StateLike> {
    let s = s.into();
    let n = s.shape().n_qudits();
    let perm = match direction {
        ShiftDirection::Left => Permutation::shift_left(n),
        ShiftDirection::Right => Permutation::shift_right(n),
    };
    reorder(s, &perm)
}

pub fn swapqudits<'a>(s: impl Into<StateRef<'a>>, k: usize, l: usize) -> Result<StateLike> {
    let s = s.into();
    let perm = Permutation::transposition(s.shape().n_qudits(), k, l)?;
    reorder(s, &perm)
}

/// Offsets of every digit assignment of the listed qudits, enumerated with
/// the highest-numbered listed qudit as the most significant digit.
pub(crate) fn digit_offsets(qudits: &[usize], dim: usize) -> Vec<usize> {
    let mut offsets = vec![0usize];
    for &q in qudits.iter().rev() {
        let w = dim.pow((q - 1) as u32);
        offsets = offsets.iter().flat_map(|&o| (0..dim).map(move |a| o + a * w)).collect();
    }
    offsets
}

/// Reduced state on the listed qudits, trace normalized. The kept qudits
/// retain their relative order. An empty list gives the 1x1 matrix `[1]`.
pub fn keep<'a>(s: impl Into<StateRef<'a>>, list: &[usize]) -> Result<DensityMatrix> {
    let s = s.into();
    let shape = s.shape();
    let list = QuditList::new(list, shape.n_qudits())?;
    let out_shape = RegisterShape::with_zero(list.len(), shape.dim())?;
    let mut reduced = match s {
        StateRef::Pure(v) => {
            let v = v.normalize()?;
            partial_trace_vector(v.amplitudes(), shape, &list)
        }
        StateRef::Mixed(m) => partial_trace_matrix(m.matrix(), shape, &list),
    };
    let tr = reduced.trace().re;
    if (tr - 1.0).abs() > crate::NumericPolicy::DEFAULT.norm_tol {
        reduced.unscale_mut(tr);
    }
    Ok(DensityMatrix::new_unchecked(reduced, out_shape))
}

/// Partial trace of an arbitrary operator, without normalization.
pub fn keep_nonorm(m: &QuantumOperator, list: &[usize]) -> Result<QuantumOperator> {
    let shape = m.shape();
    let list = QuditList::new(list, shape.n_qudits())?;
    let out_shape = RegisterShape::with_zero(list.len(), shape.dim())?;
    let reduced = partial_trace_matrix(&*m.dense()?, shape, &list);
    QuantumOperator::from_dense(reduced, out_shape)
}

/// Reduced state after tracing out the listed qudits.
pub fn remove<'a>(s: impl Into<StateRef<'a>>, list: &[usize]) -> Result<DensityMatrix> {
    let s = s.into();
    let n = s.shape().n_qudits();
    let kept = QuditList::new(list, n)?.complement(n);
    keep(s, kept.as_slice())
}

fn partial_trace_matrix(m: &CMatrix, shape: RegisterShape, kept: &QuditList) -> CMatrix {
    let traced = kept.complement(shape.n_qudits());
    let ko = digit_offsets(kept.as_slice(), shape.dim());
    let to = digit_offsets(traced.as_slice(), shape.dim());
    let k = ko.len();
    CMatrix::from_fn(k, k, |r, c| to.iter().map(|t| m[(ko[r] + t, ko[c] + t)]).sum())
}

fn partial_trace_vector(v: &CVector, shape: RegisterShape, kept: &QuditList) -> CMatrix {
    let traced = kept.complement(shape.n_qudits());
    let ko = digit_offsets(kept.as_slice(), shape.dim());
    let to = digit_offsets(traced.as_slice(), shape.dim());
    // psi reshaped as (kept, traced); reduced = psi psi^dagger
    let psi = CMatrix::from_fn(ko.len(), to.len(), |r, t| v[ko[r] + to[t]]);
    &psi * psi.adjoint()
}
