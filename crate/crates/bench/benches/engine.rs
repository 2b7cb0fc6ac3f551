use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modsheaf_bench::{blowup_bundle, membership_inputs, monomial_pair, projective_bundle};
use modsheaf_core::cech::cech_cohomology;
use modsheaf_core::mo::{mo_contains_with, MembershipOptions};
use modsheaf_core::theorems::cube_slices;

fn cech(c: &mut Criterion) {
    let mut g = c.benchmark_group("cech_cohomology");
    for n in 1..=3 {
        let (bundle, window) = projective_bundle(n, -(n as i32) - 2);
        g.bench_with_input(BenchmarkId::new("projective", n), &n, |b, _| {
            b.iter(|| cech_cohomology(black_box(&bundle), &window).unwrap())
        });
    }
    for i in [-2, 0, 2] {
        let (bundle, window) = blowup_bundle(2, i, 4);
        g.bench_with_input(BenchmarkId::new("blowup_a3", i), &i, |b, _| {
            b.iter(|| cech_cohomology(black_box(&bundle), &window).unwrap())
        });
    }
    g.finish();
}

fn membership(c: &mut Criterion) {
    let pair = monomial_pair(3, 2);
    let inputs = membership_inputs(&pair, 2);
    let opts = MembershipOptions::default();
    c.bench_function("membership_box_x3y2", |b| {
        b.iter(|| {
            inputs
                .iter()
                .filter(|a| mo_contains_with(&pair, a, opts).unwrap().member)
                .count()
        })
    });
}

fn cube(c: &mut Criterion) {
    let pair = monomial_pair(2, 1);
    let opts = MembershipOptions::default();
    c.bench_function("cube_slices_x2y", |b| {
        b.iter(|| cube_slices(black_box(&pair), 2, opts).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = cech, membership, cube
}
criterion_main!(benches);
