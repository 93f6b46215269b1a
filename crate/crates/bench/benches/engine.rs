use std::hint::black_box;

use cgp_portrait::{evaluate, generation_step, render, FocusState, Population, RunConfig, UncleArchive};
use cgp_portrait_bench::{genotypes, sitter};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn bench_render(c: &mut Criterion) {
    let g = genotypes(1, 30, 1).remove(0);
    let mut group = c.benchmark_group("render");
    for size in [32, 128, 512] {
        group.bench_with_input(BenchmarkId::from_parameter(size), &size, |b, &s| {
            b.iter(|| render(black_box(&g), s, s))
        });
    }
    group.finish();
}

fn bench_evaluate(c: &mut Criterion) {
    let g = genotypes(1, 30, 2).remove(0);
    let mut group = c.benchmark_group("evaluate");
    for size in [32, 128] {
        let s = sitter(size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &s, |b, s| {
            b.iter(|| evaluate(black_box(&g), s, FocusState::default().weights()).unwrap())
        });
    }
    group.finish();
}

fn bench_generation(c: &mut Criterion) {
    let s = sitter(32);
    let cfg = RunConfig {
        population: 20,
        ..RunConfig::default()
    };
    let focus = FocusState::default();
    let mut pop = Population::new(genotypes(20, 30, 3));
    pop.evaluate(&s, focus.weights()).unwrap();
    c.bench_function("generation_step/32px_mu20_n30", |b| {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        b.iter(|| {
            let mut archive = UncleArchive::default();
            generation_step(&pop, &s, &focus, &mut archive, &cfg, &mut rng).unwrap()
        })
    });
}

criterion_group!(benches, bench_render, bench_evaluate, bench_generation);
criterion_main!(benches);
