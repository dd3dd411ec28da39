use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use wordgraph::aut::{automorphism_group, Digraph};
use wordgraph::graph::WordGraph;
use wordgraph::paths::enumerate_closed_paths;
use wordgraph::{gomez, Config, Strategy};

const STRATEGIES: [(&str, Strategy); 2] = [
    ("sequential", Strategy::Sequential),
    ("parallel", Strategy::Parallel),
];

fn closed_paths(c: &mut Criterion) {
    let mut group = c.benchmark_group("closed_paths");
    group.sample_size(10);
    for (n, len) in [(8, 9), (9, 10)] {
        let rs = gomez(n).unwrap();
        for (name, s) in STRATEGIES {
            let cfg = Config::default().with_strategy(s);
            group.bench_with_input(BenchmarkId::new(name, n), &len, |b, &len| {
                b.iter(|| enumerate_closed_paths(&rs, len, &cfg).unwrap().len())
            });
        }
    }
    group.finish();
}

fn diameters(c: &mut Criterion) {
    let mut group = c.benchmark_group("diameter");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        let cfg = Config::default().with_strategy(s);
        let big = WordGraph::build(&gomez(4).unwrap(), 16, &cfg).unwrap();
        group.bench_function(BenchmarkId::new(name, "bfs(4,16)"), |b| {
            b.iter(|| big.diameter().unwrap())
        });
        let small = WordGraph::build(&gomez(3).unwrap(), 8, &cfg).unwrap();
        group.bench_function(BenchmarkId::new(name, "all_pairs(3,8)"), |b| {
            b.iter(|| small.diameter_all_pairs().unwrap())
        });
    }
    group.finish();
}

fn automorphisms(c: &mut Criterion) {
    let mut group = c.benchmark_group("automorphisms");
    group.sample_size(10);
    for (name, s) in STRATEGIES {
        let cfg = Config::default().with_strategy(s);
        let g = WordGraph::build(&gomez(3).unwrap(), 7, &cfg).unwrap();
        let d = Digraph::from_word_graph(&g);
        group.bench_function(BenchmarkId::new(name, "(3,7)"), |b| {
            b.iter(|| automorphism_group(&d, &cfg).unwrap().order)
        });
    }
    group.finish();
}

criterion_group!(benches, closed_paths, diameters, automorphisms);
criterion_main!(benches);
