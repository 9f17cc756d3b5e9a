use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use matchpoly::{covered_closure, enumerate_perfect_matchings, CoveredSet, GroundGraph, Lattice};

fn covered(ground: GroundGraph) -> CoveredSet {
    covered_closure(&enumerate_perfect_matchings(&ground.full_graph())).unwrap()
}

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("covered_closure");
    group.sample_size(10);
    for (label, ground) in [
        ("K3,3", GroundGraph::bipartite(3).unwrap()),
        ("K4,4", GroundGraph::bipartite(4).unwrap()),
        ("K6", GroundGraph::complete(6).unwrap()),
    ] {
        let family = enumerate_perfect_matchings(&ground.full_graph());
        group.bench_function(label, |b| b.iter(|| covered_closure(black_box(&family)).unwrap()));
    }
    group.finish();
}

fn lattice(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice");
    group.sample_size(10);
    let k6 = covered(GroundGraph::complete(6).unwrap());
    group.bench_function("build/K6", |b| b.iter(|| Lattice::build(black_box(&k6)).unwrap()));
    let l = Lattice::build(&k6).unwrap();
    group.bench_function("rank_labels/K6", |b| b.iter(|| black_box(&l).rank_labels()));
    group.bench_function("find_pentagon/K6", |b| b.iter(|| black_box(&l).find_pentagon()));
    let b4 = Lattice::build(&covered(GroundGraph::bipartite(4).unwrap())).unwrap();
    group.bench_function("eulerian/K4,4", |b| b.iter(|| black_box(&b4).is_eulerian()));
    group.finish();
}

criterion_group!(benches, closure, lattice);
criterion_main!(benches);
