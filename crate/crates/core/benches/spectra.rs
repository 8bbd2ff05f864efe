//! Benchmarks for the exact transforms and the family pipelines. Run with
//! the default features for the rayon path and with
//! `--no-default-features` for the sequential fallback to compare:
//!
//!   cargo bench -p fdp
//!   cargo bench -p fdp --no-default-features

use criterion::{criterion_group, criterion_main, Criterion};
use fdp::{
    difference_spectrum, dircon1, dircon2, sq_spectrum_ints, theta, verify_formally_dual,
    Direction, FiniteAbelianGroup, GroupRingElement, SpectrumMethod,
};
use std::hint::black_box;

fn random_element(group: &FiniteAbelianGroup, seed: u64) -> GroupRingElement {
    let mut s = seed;
    let coeffs: Vec<i64> = (0..group.order())
        .map(|_| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s % 11) as i64 - 5
        })
        .collect();
    GroupRingElement::from_coeffs(group.clone(), coeffs).unwrap()
}

fn bench_sq_spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("sq_spectrum");
    let g256 = FiniteAbelianGroup::new(&[4, 4, 4, 4]).unwrap();
    let a256 = random_element(&g256, 0x1234);
    group.bench_function("fast/order-256", |b| {
        b.iter(|| sq_spectrum_ints(black_box(&a256), SpectrumMethod::Fast).unwrap())
    });
    group.bench_function("naive/order-256", |b| {
        b.iter(|| sq_spectrum_ints(black_box(&a256), SpectrumMethod::Naive).unwrap())
    });
    let g4k = FiniteAbelianGroup::new(&[4u32; 6]).unwrap();
    let a4k = random_element(&g4k, 0x5678);
    group.bench_function("fast/order-4096", |b| {
        b.iter(|| sq_spectrum_ints(black_box(&a4k), SpectrumMethod::Fast).unwrap())
    });
    let g256k = FiniteAbelianGroup::new(&[4u32; 9]).unwrap();
    let a256k = random_element(&g256k, 0x9abc);
    group.sample_size(20);
    group.bench_function("fast/order-262144", |b| {
        b.iter(|| sq_spectrum_ints(black_box(&a256k), SpectrumMethod::Fast).unwrap())
    });
    group.finish();
}

fn bench_difference_spectrum(c: &mut Criterion) {
    let mut group = c.benchmark_group("difference_spectrum");
    for m in [3u32, 4] {
        let pair = dircon1(m).unwrap();
        group.bench_function(format!("dircon1-T/m{m}"), |b| {
            b.iter(|| difference_spectrum(black_box(pair.t())))
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    for m in [2u32, 3] {
        let pair = dircon1(m).unwrap();
        group.bench_function(format!("dircon1/m{m}"), |b| {
            b.iter(|| {
                verify_formally_dual(black_box(pair.s()), black_box(pair.t()), Direction::Both)
                    .unwrap()
            })
        });
    }
    group.finish();
}

fn bench_theta(c: &mut Criterion) {
    let mut group = c.benchmark_group("theta");
    group.sample_size(20);
    for m in [3u32, 4] {
        let pair = dircon2(m).unwrap();
        group.bench_function(format!("dircon2-T/m{m}"), |b| {
            b.iter(|| theta(black_box(pair.t())))
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_sq_spectrum,
    bench_difference_spectrum,
    bench_verify,
    bench_theta
);
criterion_main!(benches);
