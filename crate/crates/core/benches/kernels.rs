//! Compares the rayon-parallel search kernels against their sequential
//! fallbacks. Build with the default features to get both series; with
//! `--no-default-features` only the sequential series runs.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ratdec::bench_support::{self, ExecMode};
use ratdec::constructions::affine_invariant;
use ratdec::decomp::SearchLimits;
use ratdec::gf::FieldCtx;
use ratdec::moebius::{enumerate_gamma, GammaKind, LatticeOptions};
use ratdec::ratfunc::RatFunc;
use std::hint::black_box;

fn modes() -> Vec<(&'static str, ExecMode)> {
    let mut m = vec![("seq", ExecMode::Sequential)];
    if ExecMode::default() != ExecMode::Sequential {
        m.push(("par", ExecMode::default()));
    }
    m
}

fn bench_fixing_group(c: &mut Criterion) {
    let ctx = FieldCtx::new(5, 1).unwrap();
    let target = RatFunc::from_poly(affine_invariant(&ctx)); // degree 20, 120 units
    let mut group = c.benchmark_group("fixing_group_p5");
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| bench_support::fixing_group(black_box(&target), mode).unwrap())
        });
    }
    group.finish();
}

fn bench_sweep(c: &mut Criterion) {
    // Exhaustive polynomial sweep: degree-5 components of a degree-10
    // polynomial over F_5 (5^4 candidates, each a nullspace solve).
    let ctx = FieldCtx::new(5, 1).unwrap();
    let p5 = RatFunc::from_poly(affine_invariant(&ctx));
    let limits = SearchLimits::default();
    let h = ratdec::decomp::right_components(&p5, 2, &limits).unwrap()[0].clone();
    let target = p5.left_divide(&h).unwrap();
    assert_eq!(target.degree(), 10);
    let mut group = c.benchmark_group("component_sweep_deg10_f5");
    group.sample_size(20);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                bench_support::sweep_components(black_box(&target), 5, &limits, mode).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_lattice(c: &mut Criterion) {
    let ctx = FieldCtx::new(3, 2).unwrap();
    let gamma0 = enumerate_gamma(&ctx, GammaKind::Affine); // order 72
    let opts = LatticeOptions::default();
    let mut group = c.benchmark_group("subgroup_lattice_gamma0_f9");
    group.sample_size(20);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| bench_support::subgroup_lattice(black_box(&gamma0), &opts, mode).unwrap())
        });
    }
    group.finish();
}

fn bench_fq_invariance(c: &mut Criterion) {
    let ctx = FieldCtx::new(2, 2).unwrap(); // 60 units, degree-60 invariant
    let mut group = c.benchmark_group("full_invariant_scan_f4");
    group.sample_size(20);
    for (name, mode) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| assert!(bench_support::fq_invariance(black_box(&ctx), mode).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_fixing_group,
    bench_sweep,
    bench_lattice,
    bench_fq_invariance
);
criterion_main!(benches);
