use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use gradedmf_core::bases::BasisProvider;
use gradedmf_core::exactlinalg::{hnf, membership_over_ring, snf, ExactMatrix};
use gradedmf_core::genring::{algorithm1, default_tform};
use gradedmf_core::qseries::CoeffRing;

use num_bigint::BigInt;
use num_rational::BigRational;

fn eta_expansion(c: &mut Criterion) {
    let t = default_tform(11);
    c.bench_function("eta_qexp_level11_prec200", |b| {
        b.iter(|| black_box(t.qexp(black_box(200))))
    });
}

/// Deterministic pseudo-random integer matrix with modest entries.
fn test_matrix(rows: usize, cols: usize, seed: u64) -> ExactMatrix {
    let mut state = seed;
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    BigInt::from((state >> 33) as i64 % 50 - 25)
                })
                .collect()
        })
        .collect();
    ExactMatrix::new(data)
}

fn normal_forms(c: &mut Criterion) {
    let m = test_matrix(12, 20, 20260826);
    c.bench_function("hnf_12x20", |b| b.iter(|| black_box(hnf(black_box(&m)))));
    c.bench_function("snf_12x20", |b| b.iter(|| black_box(snf(black_box(&m)))));
}

fn membership(c: &mut Criterion) {
    let rng = |state: &mut u64| {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        BigRational::from(BigInt::from((*state >> 33) as i64 % 20 - 10))
    };
    let mut state = 7u64;
    let gens: Vec<Vec<BigRational>> = (0..6)
        .map(|_| (0..24).map(|_| rng(&mut state)).collect())
        .collect();
    // a vector in the span, with small integer coordinates
    let v: Vec<BigRational> = (0..24)
        .map(|j| gens.iter().enumerate().map(|(i, g)| &g[j] * BigInt::from(i as i64 - 2)).sum())
        .collect();
    let ring = CoeffRing::ZInv(30);
    c.bench_function("membership_z_inv30_6x24", |b| {
        b.iter(|| black_box(membership_over_ring(black_box(&v), black_box(&gens), &ring)))
    });
}

fn generator_walk(c: &mut Criterion) {
    let provider = BasisProvider::with_bundled_pack();
    let ring = CoeffRing::ZInv(30);
    let t = default_tform(5);
    c.bench_function("algorithm1_level5_z_inv30", |b| {
        b.iter(|| {
            black_box(algorithm1(5, &ring, &provider, Some(&t), None).unwrap());
        })
    });
}

criterion_group!(benches, eta_expansion, normal_forms, membership, generator_walk);
criterion_main!(benches);
