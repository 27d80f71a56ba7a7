use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use bim::construct::{find_all_nonzero_invertible, generate, generate_batch, GeneratorConfig};
use bim::par::Exec;
use bim::rng::SplitMix64;
use bim::verify::verify_blocks_with;
use bim::{FieldSpec, Matrix};

const STRATEGIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn verify(c: &mut Criterion) {
    let f = FieldSpec::binary(8).unwrap();
    let m = generate(&GeneratorConfig::new(64, 4, f, 1)).unwrap();
    let mut group = c.benchmark_group("verify_blocks_64x64_p4");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| verify_blocks_with(black_box(&m), 4, exec).unwrap())
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let f = FieldSpec::prime(257).unwrap();
    let configs: Vec<_> = (0..32).map(|s| GeneratorConfig::new(24, 3, f, s)).collect();
    let mut group = c.benchmark_group("generate_batch_32x24");
    group.sample_size(20);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| generate_batch(black_box(&configs), exec))
        });
    }
    group.finish();
}

fn product(c: &mut Criterion) {
    let f = FieldSpec::prime(65521).unwrap();
    let mut rng = SplitMix64::new(3);
    let a = Matrix::random(128, 128, f, &mut rng);
    let b = Matrix::random(128, 128, f, &mut rng);
    let mut group = c.benchmark_group("mul_128");
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |bch| {
            bch.iter(|| a.mul_with(black_box(&b), exec).unwrap())
        });
    }
    group.finish();
}

fn exhaustive_search(c: &mut Criterion) {
    let f = FieldSpec::prime(2).unwrap();
    let mut group = c.benchmark_group("exhaustive_gf2_p4");
    group.sample_size(10);
    for (name, exec) in STRATEGIES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| find_all_nonzero_invertible(4, f, &mut SplitMix64::new(0), 0, exec))
        });
    }
    group.finish();
}

criterion_group!(benches, verify, batch, product, exhaustive_search);
criterion_main!(benches);
