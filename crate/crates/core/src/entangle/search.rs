//! Stochastic maxima of `<psi|op|psi>` over product states.

use crate::error::{Error, Result};
use crate::operator::QuantumOperator;
use crate::permute::{digit_offsets, QuditList};
use crate::policy::NumericPolicy;
use crate::random::RandomSource;
use crate::state::{RegisterShape, StateVector};
use crate::{CVector, C64};

/// Trial counts of the two search phases and the perturbation scale of the
/// second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchParams {
    pub n_phase1: usize,
    pub n_phase2: usize,
    pub step_const: f64,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { n_phase1: 10000, n_phase2: 20000, step_const: 0.005 }
    }
}

impl SearchParams {
    pub fn new(n_phase1: usize, n_phase2: usize, step_const: f64) -> Result<Self> {
        if n_phase1 == 0 || n_phase2 == 0 {
            return Err(Error::InvalidArgument("trial counts must be positive".into()));
        }
        if !(step_const.is_finite() && step_const > 0.0) {
            return Err(Error::InvalidArgument(format!("step constant must be positive, got {step_const}")));
        }
        Ok(SearchParams { n_phase1, n_phase2, step_const })
    }
}

/// One side of a bipartition: a nonempty proper subset of `1..=N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartitionMask {
    qudits: QuditList,
    n: usize,
}

impl BipartitionMask {
    pub fn new(qudits: &[usize], n: usize) -> Result<Self> {
        let list = QuditList::new(qudits, n)?;
        if list.is_empty() || list.len() == n {
            return Err(Error::InvalidQuditList(format!("a bipartition side must be a nonempty proper subset of 1..={n}")));
        }
        Ok(BipartitionMask { qudits: list, n })
    }

    pub fn qudits(&self) -> &QuditList {
        &self.qudits
    }

    pub fn n_qudits(&self) -> usize {
        self.n
    }

    pub fn complement(&self) -> BipartitionMask {
        BipartitionMask { qudits: self.qudits.complement(self.n), n: self.n }
    }

    /// Every bipartition once: the sides not containing qudit `n`.
    pub fn all(n: usize) -> Result<Vec<BipartitionMask>> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("bipartitions need at least 2 qudits, got {n}")));
        }
        (1..(1usize << (n - 1)))
            .map(|bits| {
                let q: Vec<usize> = (1..n).filter(|k| (bits >> (k - 1)) & 1 == 1).collect();
                BipartitionMask::new(&q, n)
            })
            .collect()
    }
}

/// Best value found and the product state attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub value: f64,
    /// Normalized factors, one per block of the search.
    pub factors: Vec<StateVector>,
    pub state: StateVector,
}

/// A product structure: each block holds the offsets of its local basis
/// states in the full register.
struct Blocks {
    shape: RegisterShape,
    offsets: Vec<Vec<usize>>,
    /// For the symmetric search every block reuses factor 0.
    shared: bool,
}

impl Blocks {
    fn n_factors(&self) -> usize {
        if self.shared {
            1
        } else {
            self.offsets.len()
        }
    }

    fn factor_dim(&self, f: usize) -> usize {
        self.offsets[f].len()
    }

    fn assemble(&self, factors: &[CVector]) -> CVector {
        let mut out = CVector::zeros(self.shape.total_dim());
        let mut partial: Vec<(usize, C64)> = vec![(0, C64::new(1.0, 0.0))];
        for (b, offs) in self.offsets.iter().enumerate() {
            let phi = if self.shared { &factors[0] } else { &factors[b] };
            partial = partial
                .iter()
                .flat_map(|&(o, a)| offs.iter().zip(phi.iter()).map(move |(&w, &p)| (o + w, a * p)))
                .collect();
        }
        for (i, a) in partial {
            out[i] = a;
        }
        out
    }
}

fn expectation(op: &QuantumOperator, v: &CVector, work: &mut [C64]) -> f64 {
    op.apply(v.as_slice(), work);
    v.iter().zip(work.iter()).map(|(a, b)| a.conj() * b).sum::<C64>().re
}

fn random_factor(dim: usize, rng: &mut RandomSource) -> CVector {
    let v = CVector::from_fn(dim, |_, _| rng.complex_normal());
    let n = v.norm();
    v.unscale(n)
}

fn check_op(op: &QuantumOperator) -> Result<()> {
    let dev = op.hermitian_deviation();
    if dev > NumericPolicy::DEFAULT.hermitian_tol {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// Phase 1 keeps the best of `n_phase1` random product states. Phase 2 adds
/// `step_const` times a complex Gaussian vector to every factor of the
/// incumbent, renormalizes, and keeps the proposal when it improves.
fn two_phase(op: &QuantumOperator, blocks: &Blocks, par: &SearchParams, rng: &mut RandomSource) -> Result<SearchResult> {
    check_op(op)?;
    let nf = blocks.n_factors();
    let mut work = vec![C64::new(0.0, 0.0); op.side()];
    let mut best_val = f64::NEG_INFINITY;
    let mut best: Vec<CVector> = Vec::new();
    for _ in 0..par.n_phase1 {
        let factors: Vec<CVector> = (0..nf).map(|f| random_factor(blocks.factor_dim(f), rng)).collect();
        let v = expectation(op, &blocks.assemble(&factors), &mut work);
        if v > best_val {
            best_val = v;
            best = factors;
        }
    }
    for _ in 0..par.n_phase2 {
        let factors: Vec<CVector> = best
            .iter()
            .map(|phi| {
                let moved = CVector::from_fn(phi.len(), |i, _| phi[i] + rng.complex_normal() * par.step_const);
                let n = moved.norm();
                moved.unscale(n)
            })
            .collect();
        let v = expectation(op, &blocks.assemble(&factors), &mut work);
        if v > best_val {
            best_val = v;
            best = factors;
        }
    }
    let state = StateVector::new_unchecked(blocks.assemble(&best), blocks.shape);
    let factors = best
        .into_iter()
        .enumerate()
        .map(|(f, phi)| {
            let len = phi.len();
            let shape = RegisterShape::from_total(len, blocks.shape.dim()).map_err(|_| {
                Error::InvalidShape(format!("factor {f} has length {len}"))
            })?;
            Ok(StateVector::new_unchecked(phi, shape))
        })
        .collect::<Result<_>>()?;
    Ok(SearchResult { value: best_val, factors, state })
}

/// Best `<phi_1 (x) ... (x) phi_N| op |phi_1 (x) ... (x) phi_N>` found.
/// Factors are listed from qudit 1 upwards.
pub fn maxsep(op: &QuantumOperator, par: &SearchParams, rng: &mut RandomSource) -> Result<SearchResult> {
    let shape = op.shape();
    let offsets = (1..=shape.n_qudits()).map(|q| digit_offsets(&[q], shape.dim())).collect();
    two_phase(op, &Blocks { shape, offsets, shared: false }, par, rng)
}

/// Best `<phi|^{(x)N} op |phi>^{(x)N}` over a single-qudit state `phi`,
/// returned as the only factor.
pub fn maxsymsep(op: &QuantumOperator, par: &SearchParams, rng: &mut RandomSource) -> Result<SearchResult> {
    let shape = op.shape();
    let offsets = (1..=shape.n_qudits()).map(|q| digit_offsets(&[q], shape.dim())).collect();
    two_phase(op, &Blocks { shape, offsets, shared: true }, par, rng)
}

/// Best value over pure states that are products across the bipartition.
/// Mixed biseparable states cannot do better, the expectation being linear.
/// The factors are the mask side first, then its complement.
pub fn maxbisep(
    op: &QuantumOperator,
    mask: &BipartitionMask,
    par: &SearchParams,
    rng: &mut RandomSource,
) -> Result<SearchResult> {
    let shape = op.shape();
    if mask.n_qudits() != shape.n_qudits() {
        return Err(Error::InvalidQuditList(format!(
            "mask is for {} qudits, operator acts on {}",
            mask.n_qudits(),
            shape.n_qudits()
        )));
    }
    let offsets = vec![
        digit_offsets(mask.qudits().as_slice(), shape.dim()),
        digit_offsets(mask.complement().qudits().as_slice(), shape.dim()),
    ];
    two_phase(op, &Blocks { shape, offsets, shared: false }, par, rng)
}

/// Largest `maxbisep` over every bipartition, with the maximizing mask.
pub fn maxb(op: &QuantumOperator, par: &SearchParams, rng: &mut RandomSource) -> Result<(SearchResult, BipartitionMask)> {
    check_op(op)?;
    let mut best: Option<(SearchResult, BipartitionMask)> = None;
    for mask in BipartitionMask::all(op.shape().n_qudits())? {
        let r = maxbisep(op, &mask, par, rng)?;
        if best.as_ref().is_none_or(|(b, _)| r.value > b.value) {
            best = Some((r, mask));
        }
    }
    best.ok_or_else(|| Error::InvalidArgument("no bipartitions".into()))
}
