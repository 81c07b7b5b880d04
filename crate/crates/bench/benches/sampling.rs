use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use redwords::*;

fn samplers(c: &mut Criterion) {
    let w: Permutation = "4,3,8,1,7,6,2,5,10,9".parse().unwrap();
    let cfg = SamplerConfig::new(200, 4, 7);
    let mut group = c.benchmark_group("estimate");
    group.sample_size(20);
    for (name, alg, len) in [
        ("y", Algorithm::Y, None),
        ("z", Algorithm::Z, Some(w.length() + 3)),
        ("h", Algorithm::H, Some(w.length() + 3)),
    ] {
        group.bench_function(name, |b| b.iter(|| estimate(alg, black_box(&w), len, &cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, samplers);
criterion_main!(benches);
