use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use qukit::chains::{heisenberg, ising, ising2d, Boundary};
use qukit::entangle::{maxsep, negativity, pt};
use qukit::pauli_io::{decompose, paulistr, DECOMPOSE_THRESHOLD};
use qukit::permute::reorder;
use qukit::random::rdmat;
use qukit::util::mineig;
use qukit::{Permutation, RandomSource, SearchParams, Storage};

fn builders(c: &mut Criterion) {
    let mut g = c.benchmark_group("heisenberg");
    for n in [6, 8, 10] {
        g.bench_with_input(BenchmarkId::new("dense", n), &n, |b, &n| {
            b.iter(|| heisenberg(black_box(n), Boundary::Periodic, Storage::Dense).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("sparse", n), &n, |b, &n| {
            b.iter(|| heisenberg(black_box(n), Boundary::Periodic, Storage::Sparse).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("ising2d_sparse");
    g.sample_size(10);
    for (nx, ny) in [(3, 3), (4, 3), (4, 4)] {
        g.bench_function(format!("{nx}x{ny}"), |b| {
            b.iter(|| ising2d(1.0, nx, ny, Boundary::Periodic, Storage::Sparse).unwrap())
        });
    }
    g.finish();
}

fn partial_transpose(c: &mut Criterion) {
    let mut rng = RandomSource::seed_from_u64(1);
    let mut g = c.benchmark_group("partial_transpose");
    for n in [4, 6] {
        let rho = rdmat(n, 2, &mut rng).unwrap();
        let half: Vec<usize> = (1..=n / 2).collect();
        g.bench_with_input(BenchmarkId::new("pt", n), &rho, |b, rho| b.iter(|| pt(rho, &half).unwrap()));
        g.bench_with_input(BenchmarkId::new("negativity", n), &rho, |b, rho| {
            b.iter(|| negativity(rho, &half).unwrap())
        });
    }
    g.finish();
}

fn reordering(c: &mut Criterion) {
    let rho = rdmat(6, 2, &mut RandomSource::seed_from_u64(2)).unwrap();
    let perm = Permutation::new(vec![2, 4, 6, 1, 3, 5]).unwrap();
    c.bench_function("reorder_dm_6", |b| b.iter(|| reorder(&rho, &perm).unwrap()));
}

fn pauli(c: &mut Criterion) {
    let h = heisenberg(6, Boundary::Periodic, Storage::Dense).unwrap();
    let text = decompose(&h, false, DECOMPOSE_THRESHOLD).unwrap();
    c.bench_function("paulistr_6", |b| b.iter(|| paulistr(black_box(&text)).unwrap()));
    c.bench_function("decompose_6", |b| b.iter(|| decompose(&h, false, DECOMPOSE_THRESHOLD).unwrap()));
}

fn ground_energy(c: &mut Criterion) {
    let mut g = c.benchmark_group("mineig_ising_sparse");
    g.sample_size(10);
    for n in [10, 12, 14] {
        let h = ising(1.0, n, Boundary::Periodic, Storage::Sparse).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &h, |b, h| b.iter(|| mineig(h).unwrap()));
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let h = heisenberg(4, Boundary::Periodic, Storage::Dense).unwrap();
    let par = SearchParams::new(200, 1000, 0.01).unwrap();
    let mut g = c.benchmark_group("maxsep");
    g.sample_size(10);
    g.bench_function("heisenberg_4", |b| {
        b.iter(|| maxsep(&h, &par, &mut RandomSource::seed_from_u64(3)).unwrap())
    });
    g.finish();
}

criterion_group!(benches, builders, partial_transpose, reordering, pauli, ground_energy, search);
criterion_main!(benches);
