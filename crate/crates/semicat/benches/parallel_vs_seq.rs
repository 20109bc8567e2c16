//! Data-parallel core against the sequential fallback on the hot loops:
//! pentagon verification over all quadruples, coend relation assembly for
//! the convolution, and the module-transformation solver.

use criterion::{criterion_group, criterion_main, Criterion};
use semicat::fincat::Fo;
use semicat::generate::*;
use semicat::par;
use semicat::presheaf::{day_convolve, yoneda};
use semicat::semicat::{nat_module_space, validate_semigroup, EndoFunctor, Flavor};
use semicat::FieldSpec;

fn bench_pentagon(c: &mut Criterion) {
    let s = bimodule_proj(&algebra_k_times_k(FieldSpec::Q)).unwrap();
    let mut g = c.benchmark_group("validate_semigroup_kxk");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        par::set_parallel(true);
        b.iter(|| assert!(validate_semigroup(&s).pass));
    });
    g.bench_function("sequential", |b| {
        par::set_parallel(false);
        b.iter(|| assert!(validate_semigroup(&s).pass));
    });
    g.finish();
    par::set_parallel(true);
}

fn bench_day(c: &mut Criterion) {
    let s = bimodule_proj(&algebra_dual_numbers(FieldSpec::Q)).unwrap();
    let y = yoneda(&s.base, &Fo::one(0));
    let mut g = c.benchmark_group("day_convolve_dual_numbers");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        par::set_parallel(true);
        b.iter(|| day_convolve(&s, &y, &y).presheaf.total_dim());
    });
    g.bench_function("sequential", |b| {
        par::set_parallel(false);
        b.iter(|| day_convolve(&s, &y, &y).presheaf.total_dim());
    });
    g.finish();
    par::set_parallel(true);
}

fn bench_nat_space(c: &mut Criterion) {
    let s = group_proj(&group_cyclic(3), FieldSpec::Fp(3)).unwrap();
    let mut g = c.benchmark_group("nat_module_space_z3");
    g.sample_size(10);
    g.bench_function("parallel", |b| {
        par::set_parallel(true);
        b.iter(|| {
            nat_module_space(
                &s,
                Flavor::RightModule,
                &EndoFunctor::TensorLeft(Fo::one(0)),
                &EndoFunctor::TensorLeft(Fo::one(0)),
            )
            .len()
        });
    });
    g.bench_function("sequential", |b| {
        par::set_parallel(false);
        b.iter(|| {
            nat_module_space(
                &s,
                Flavor::RightModule,
                &EndoFunctor::TensorLeft(Fo::one(0)),
                &EndoFunctor::TensorLeft(Fo::one(0)),
            )
            .len()
        });
    });
    g.finish();
    par::set_parallel(true);
}

criterion_group!(benches, bench_pentagon, bench_day, bench_nat_space);
criterion_main!(benches);
