use criterion::{black_box, criterion_group, criterion_main, Criterion};
use empowerment_bench::{column_world, lava_world};
use empowerment_core::controller::choose_action_sparse;
use empowerment_core::empowerment::{exact_empowerment, sparse_empowerment};
use empowerment_core::{Embodiment, StreamKey};

fn sparse(c: &mut Criterion) {
    let lava = lava_world();
    c.bench_function("sparse n15 m1000 lava world", |b| {
        b.iter(|| {
            sparse_empowerment(
                black_box(&lava),
                Embodiment::Climbing,
                15,
                1000,
                StreamKey::root(1),
            )
        })
    });
    let column = column_world(Embodiment::Flying);
    c.bench_function("sparse n15 m1000 flying column", |b| {
        b.iter(|| {
            sparse_empowerment(
                black_box(&column),
                Embodiment::Flying,
                15,
                1000,
                StreamKey::root(1),
            )
        })
    });
}

fn exact(c: &mut Criterion) {
    let w = column_world(Embodiment::Climbing);
    c.bench_function("exact n4 climbing column", |b| {
        b.iter(|| exact_empowerment(black_box(&w), Embodiment::Climbing, 4).unwrap())
    });
}

fn decision(c: &mut Criterion) {
    let lava = lava_world();
    let mut group = c.benchmark_group("decision");
    group.sample_size(10);
    group.bench_function("one turn, lava world", |b| {
        b.iter(|| {
            choose_action_sparse(
                black_box(&lava),
                Embodiment::Climbing,
                15,
                1000,
                StreamKey::root(2),
            )
        })
    });
    group.finish();
}

criterion_group!(benches, sparse, exact, decision);
criterion_main!(benches);
