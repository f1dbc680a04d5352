use proptest::prelude::*;

use qukit::chains::{ising, nnchain, xy_classical_ground, xy_hamiltonian, Boundary, XYParams};
use qukit::dirac::{ex, ketbra, mkron};
use qukit::entangle::{ccnr, concurrence, maxb, maxsep, maxsymsep, negativity, pt};
use qukit::linalg::hermitian_eigenvalues;
use qukit::pauli_io::{decompose, identity_letters_to_e, parse_pauli, paulistr, PauliPolynomial, DECOMPOSE_THRESHOLD};
use qukit::permute::{keep, reorder, reorder_vector, reordermat, reordervec, shift_qudits, swapqudits, ShiftDirection};
use qukit::random::{rdmat, rproduct, rvec};
use qukit::states::{dstate, pauli};
use qukit::util::maxeig;
use qukit::{CMatrix, DensityMatrix, Permutation, RandomSource, RegisterShape, SearchParams, StateLike, Storage, C64};

fn perm_strategy(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

fn perms() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (2usize..=4).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n)))
}

fn min_pt_eigenvalue(rho: &DensityMatrix, list: &[usize]) -> f64 {
    hermitian_eigenvalues(&pt(rho, list).unwrap().dense().unwrap())[0]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reorder_composes((p1, p2) in perms(), seed in any::<u64>(), d in 2usize..=3) {
        let n = p1.len();
        let v = rvec(n, d, &mut RandomSource::seed_from_u64(seed)).unwrap();
        let a = Permutation::new(p1).unwrap();
        let b = Permutation::new(p2).unwrap();
        let twice = reorder_vector(&reorder_vector(&v, &a).unwrap(), &b).unwrap();
        let once = reorder_vector(&v, &a.then(&b).unwrap()).unwrap();
        prop_assert_eq!(&twice, &once);
        prop_assert!((twice.norm() - 1.0).abs() < 1e-12);
        prop_assert_eq!(reorder_vector(&once, &a.then(&b).unwrap().inverse()).unwrap(), v);
    }

    #[test]
    fn reordermat_is_the_index_map((p, _) in perms(), d in 2usize..=3) {
        let perm = Permutation::new(p).unwrap();
        let m = reordermat(&perm, d, Storage::Sparse).unwrap();
        let map = reordervec(&perm, d);
        let side = m.side();
        for (i, &j) in map.iter().enumerate() {
            prop_assert_eq!(m.get(j, i), C64::new(1.0, 0.0));
        }
        prop_assert_eq!(m.stored_entries(), side);
        let dense = m.into_dense_matrix().unwrap();
        prop_assert_eq!(dense.adjoint() * &dense, CMatrix::identity(side, side));
    }

    #[test]
    fn reorder_keeps_spectrum((p, _) in perms(), seed in any::<u64>()) {
        let n = p.len();
        let rho = rdmat(n, 2, &mut RandomSource::seed_from_u64(seed)).unwrap();
        let out = reorder(&rho, &Permutation::new(p).unwrap()).unwrap().into_density().unwrap();
        let (a, b) = (rho.eigenvalues(), out.eigenvalues());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn shifts_and_swaps_undo(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=4, l in 1usize..=4) {
        let v = rvec(n, 2, &mut RandomSource::seed_from_u64(seed)).unwrap();
        let s = StateLike::Pure(v.clone());
        let left = shift_qudits(&s, ShiftDirection::Left).unwrap();
        prop_assert_eq!(shift_qudits(&left, ShiftDirection::Right).unwrap(), s.clone());
        let (k, l) = ((k - 1) % n + 1, (l - 1) % n + 1);
        if k != l {
            let once = swapqudits(&s, k, l).unwrap();
            prop_assert_eq!(swapqudits(&once, k, l).unwrap(), s);
        }
    }

    #[test]
    fn keep_commutes_with_reorder((p, _) in perms(), seed in any::<u64>(), mask in 1usize..15) {
        let n = p.len();
        let list: Vec<usize> = (1..=n).filter(|q| (mask >> (q - 1)) & 1 == 1).collect();
        prop_assume!(!list.is_empty());
        let v = rvec(n, 2, &mut RandomSource::seed_from_u64(seed)).unwrap();
        let perm = Permutation::new(p).unwrap();
        let moved = reorder_vector(&v, &perm).unwrap();
        // output qudit q holds original qudit source_of(q)
        let preimage: Vec<usize> = list.iter().map(|&q| perm.source_of(q)).collect();
        let direct = keep(&moved, &list).unwrap();
        let via = keep(&v, &preimage).unwrap();
        // relabel the kept qudits of `via` into the order they have after reordering
        let mut sorted_pre = preimage.clone();
        sorted_pre.sort_unstable();
        let k = list.len();
        let slots: Vec<usize> = (1..=k).rev().map(|pos| {
            let original = preimage[pos - 1];
            sorted_pre.iter().position(|&x| x == original).unwrap() + 1
        }).collect();
        let via = reorder(&via, &Permutation::new(slots).unwrap()).unwrap().into_density().unwrap();
        prop_assert!((direct.matrix() - via.matrix()).norm() < 1e-12);
    }

    #[test]
    fn partial_transpose_properties(seed in any::<u64>(), n in 2usize..=4, mask in 1usize..15) {
        let list: Vec<usize> = (1..=n).filter(|q| (mask >> (q - 1)) & 1 == 1).collect();
        prop_assume!(!list.is_empty() && list.len() < n);
        let rho = rdmat(n, 2, &mut RandomSource::seed_from_u64(seed)).unwrap();
        let p = pt(&rho, &list).unwrap();
        prop_assert!((p.trace() - C64::new(1.0, 0.0)).norm() < 1e-12);
        prop_assert!(p.hermitian_deviation() < 1e-15);
        let rest: Vec<usize> = (1..=n).filter(|q| !list.contains(q)).collect();
        let a = negativity(&rho, &list).unwrap();
        let b = negativity(&rho, &rest).unwrap();
        prop_assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn product_mixtures_are_not_detected(seed in any::<u64>()) {
        let mut rng = RandomSource::seed_from_u64(seed);
        let mut m = CMatrix::zeros(4, 4);
        let mut total = 0.0;
        for _ in 0..4 {
            let w = rng.uniform() + 1e-3;
            m += ketbra(&rproduct(2, 2, &mut rng).unwrap()).unwrap().matrix() * C64::new(w, 0.0);
            total += w;
        }
        let rho = DensityMatrix::new(m.unscale(total), RegisterShape::qubits(2).unwrap()).unwrap();
        prop_assert!(ccnr(&rho, None).unwrap() <= 1.0 + 1e-10);
        prop_assert!(negativity(&rho, &[1]).unwrap() < 1e-10);
        prop_assert!(concurrence(&rho).unwrap() < 1e-6);
    }

    #[test]
    fn concurrence_agrees_with_ppt(seed in any::<u64>(), p in 0.0f64..1.0) {
        let mut rng = RandomSource::seed_from_u64(seed);
        let pure = ketbra(&rvec(2, 2, &mut rng).unwrap()).unwrap();
        let mixed = qukit::util::addnoise(&pure, p).unwrap();
        let c = concurrence(&mixed).unwrap();
        let ppt = min_pt_eigenvalue(&mixed, &[1]);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&c));
        // both sides of the two-qubit equivalence, away from the boundary
        if ppt < -1e-6 {
            prop_assert!(c > 1e-9);
        }
        if ppt > 1e-6 {
            prop_assert!(c < 1e-6);
        }
    }

    #[test]
    fn pauli_text_round_trip(seed in any::<u64>(), n in 1usize..=4) {
        let mut rng = RandomSource::seed_from_u64(seed);
        let side = 1usize << n;
        let g = CMatrix::from_fn(side, side, |_, _| rng.complex_normal());
        let h = qukit::QuantumOperator::from_dense(&g + g.adjoint(), RegisterShape::qubits(n).unwrap()).unwrap();
        let poly = PauliPolynomial::from_operator(&h, DECOMPOSE_THRESHOLD).unwrap();
        let text = decompose(&h, false, DECOMPOSE_THRESHOLD).unwrap();
        prop_assert_eq!(parse_pauli(&identity_letters_to_e(&text)).unwrap(), poly.clone());
        let back = paulistr(&identity_letters_to_e(&text)).unwrap();
        prop_assert!(back.max_abs_diff(&h).unwrap() < 1e-10);
        let dense = poly.to_operator(Storage::Dense).unwrap();
        prop_assert!(dense.entries_equal(&poly.to_operator(Storage::Sparse).unwrap()));
    }

    #[test]
    fn random_density_matrices_are_states(seed in any::<u64>(), n in 1usize..=3, d in 2usize..=3) {
        let rho = rdmat(n, d, &mut RandomSource::seed_from_u64(seed)).unwrap();
        let ev = rho.eigenvalues();
        prop_assert!(ev[0] >= -1e-12);
        prop_assert!((ev.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ising_dense_sparse_identical(b in -3.0f64..3.0, n in 2usize..=6, periodic in any::<bool>()) {
        let bc = Boundary::from_periodic(periodic);
        let d = ising(b, n, bc, Storage::Dense).unwrap();
        let s = ising(b, n, bc, Storage::Sparse).unwrap();
        prop_assert!(d.entries_equal(&s));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn searches_are_bounded_and_ordered(seed in any::<u64>()) {
        let mut rng = RandomSource::seed_from_u64(seed);
        let n = 3;
        let side = 1usize << n;
        let g = CMatrix::from_fn(side, side, |_, _| rng.complex_normal());
        let h = qukit::QuantumOperator::from_dense(&g + g.adjoint(), RegisterShape::qubits(n).unwrap()).unwrap();
        let par = SearchParams::new(300, 1500, 0.01).unwrap();
        let sep = maxsep(&h, &par, &mut rng).unwrap().value;
        let (bisep, _) = maxb(&h, &par, &mut rng).unwrap();
        let top = maxeig(&h).unwrap();
        prop_assert!(sep <= top + 1e-9);
        prop_assert!(bisep.value <= top + 1e-9);
        prop_assert!(bisep.value >= sep - 1e-3);
        let again = maxsep(&h, &par, &mut RandomSource::seed_from_u64(seed ^ 1)).unwrap();
        let repeat = maxsep(&h, &par, &mut RandomSource::seed_from_u64(seed ^ 1)).unwrap();
        prop_assert_eq!(again, repeat);
    }
}

#[test]
fn nnchain_term_counts() {
    for n in 3..=6 {
        let open = nnchain(&pauli::z(), &pauli::z(), n, Boundary::Aperiodic, Storage::Sparse).unwrap();
        let ring = nnchain(&pauli::z(), &pauli::z(), n, Boundary::Periodic, Storage::Sparse).unwrap();
        let count = |op| PauliPolynomial::from_operator(op, DECOMPOSE_THRESHOLD).unwrap().terms().len();
        assert_eq!(count(&open), n - 1);
        assert_eq!(count(&ring), n);
    }
}

#[test]
fn dicke_state_is_symmetric() {
    for n in 2..=5 {
        for m in 0..=n {
            let v = StateLike::Pure(dstate(m, n).unwrap());
            for k in 1..=n {
                for l in (k + 1)..=n {
                    assert_eq!(swapqudits(&v, k, l).unwrap(), v);
                }
            }
        }
    }
}

/// The classical XY energy is the product-state minimum of the quantum
/// chain per site.
#[test]
fn classical_xy_matches_product_state_search() {
    let p = XYParams::new(1.0, 0.5, 0.4).unwrap();
    let h = xy_hamiltonian(&p, 6, Boundary::Periodic, Storage::Sparse).unwrap();
    let r = maxsep(&h.scale_real(-1.0), &SearchParams::default(), &mut RandomSource::seed_from_u64(12)).unwrap();
    let searched = -r.value / 6.0;
    let classical = xy_classical_ground(&p);
    assert!((searched - classical).abs() < 1e-3, "{searched} vs {classical}");
}

#[test]
fn symmetric_search_returns_symmetric_products() {
    let mut rng = RandomSource::seed_from_u64(13);
    let par = SearchParams::new(500, 2000, 0.01).unwrap();
    let jz = qukit::chains::coll(&pauli::z(), 3, Storage::Dense).unwrap();
    let jx = qukit::chains::coll(&pauli::x(), 3, Storage::Dense).unwrap();
    let anti = jz.checked_mul(&jx).unwrap().checked_add(&jx.checked_mul(&jz).unwrap()).unwrap();
    for _ in 0..4 {
        let (a, b, c) = (rng.normal(), rng.normal(), rng.normal());
        let h = jz
            .scale_real(a)
            .checked_add(&jx.checked_mul(&jx).unwrap().scale_real(b))
            .unwrap()
            .checked_add(&anti.scale_real(c))
            .unwrap();
        let r = maxsymsep(&h, &par, &mut rng).unwrap();
        assert_eq!(r.factors.len(), 1);
        let f = &r.factors[0];
        let product = mkron([f, f, f]).unwrap();
        assert!((product.amplitudes() - r.state.amplitudes()).norm() < 1e-12);
        let value = ex(&h, &product).unwrap();
        assert!((value.re - r.value).abs() < 1e-10);
        assert!(r.value <= maxeig(&h).unwrap() + 1e-9);
    }
}
