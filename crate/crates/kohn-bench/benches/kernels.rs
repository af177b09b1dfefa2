use criterion::{criterion_group, criterion_main, Criterion};
use kohn_bench::{cusp, jacobian_ideal, squares};
use kohn_core::localalg::{local_multiplicity, macaulay_multiplicity, radical_membership_power, StandardBasis};
use kohn_core::meta::run_to_unit;
use kohn_core::polyring::{jacobian_det, poly};
use kohn_core::{Caps, MonomialOrder, RandomSource};
use std::hint::black_box;

fn standard_bases(c: &mut Criterion) {
    let ideal = jacobian_ideal();
    c.bench_function("mora basis (z1z2z3, z2²−z1², z3²−z1²)", |b| {
        b.iter(|| StandardBasis::complete(black_box(&ideal), MonomialOrder::Local, &Caps::default()).unwrap())
    });
    c.bench_function("local multiplicity of the cusp", |b| b.iter(|| local_multiplicity(black_box(&cusp())).unwrap()));
    c.bench_function("macaulay multiplicity of the Jacobian ideal", |b| {
        b.iter(|| macaulay_multiplicity(black_box(&ideal), 16).unwrap())
    });
}

fn procedures(c: &mut Criterion) {
    let sq = squares();
    c.bench_function("jacobian of the squares", |b| b.iter(|| jacobian_det(black_box(&sq), &[0, 1, 2]).unwrap()));
    let target = poly("z1 + z2 + z3", 3);
    c.bench_function("radical membership of z1+z2+z3", |b| {
        b.iter(|| radical_membership_power(black_box(&target), &sq, 8).unwrap())
    });
    let pair = kohn_bench::polys(&["z1^2", "z2^2"], 2);
    c.bench_function("run to the unit on (z1², z2²)", |b| {
        b.iter(|| run_to_unit(black_box(&pair), &mut RandomSource::new(3), &Caps::default()).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = standard_bases, procedures
}
criterion_main!(benches);
