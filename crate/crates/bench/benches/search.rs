use criterion::{black_box, criterion_group, criterion_main, Criterion};
use homlab_core::hierarchy::verify_hierarchy_with;
use homlab_core::lie_suite::{example_k3, expansion_residuals};
use homlab_core::search::{enumerate_models_with, find_model_with, verify_implication_with};
use homlab_core::TypeName::*;
use homlab_core::{type_profile, Prime, SearchSpec};

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.bench_function("countermodel I2 =/=> I3", |b| {
        let spec = SearchSpec::new(3, &[I2], &[I3]);
        b.iter(|| find_model_with(black_box(&spec), 1).unwrap())
    });
    g.bench_function("exhaust I1 => I3 at n=3", |b| {
        b.iter(|| verify_implication_with(black_box(&[I1]), I3, 3, 1).unwrap())
    });
    g.bench_function("enumerate all n<=2", |b| {
        let spec = SearchSpec::new(2, &[], &[]);
        b.iter(|| enumerate_models_with(black_box(&spec), usize::MAX, 1).unwrap())
    });
    g.sample_size(10);
    g.bench_function("hierarchy at n=3", |b| b.iter(|| verify_hierarchy_with(black_box(3), 1).unwrap()));
    g.finish();
}

fn algebra(c: &mut Criterion) {
    let k3 = example_k3(Prime::new(7).unwrap()).unwrap();
    c.bench_function("type profile of K3", |b| b.iter(|| type_profile(black_box(&k3))));
    c.bench_function("expansion residuals of K3", |b| b.iter(|| expansion_residuals(black_box(&k3)).unwrap()));
}

criterion_group!(benches, search, algebra);
criterion_main!(benches);
