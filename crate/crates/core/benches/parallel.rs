use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use leavitt::analysis::{diagonal_analyze, proof_trace, HomSpec};
use leavitt::sample::{self, PathTable};
use leavitt::{AlgebraElement, Exec, Graph, StarRing};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const STRATEGIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn e2() -> Arc<Graph> {
    Arc::new(Graph::build(&["v"], &[("e1", "v", "v"), ("e2", "v", "v")], &[]).unwrap())
}

fn products(c: &mut Criterion) {
    let g = e2();
    let table = PathTable::new(&g, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("product");
    for terms in [16, 64, 256] {
        let a = sample::element(&mut rng, &g, StarRing::Integers, &table, terms, 5);
        let b = sample::element(&mut rng, &g, StarRing::Integers, &table, terms, 5);
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, terms), &(), |bench, _| {
                bench.iter(|| a.mul_with(&b, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn preservation(c: &mut Criterion) {
    let g = e2();
    let swap = HomSpec::new(
        g.clone(),
        g.clone(),
        StarRing::Integers,
        [(
            g.vertex("v").unwrap(),
            AlgebraElement::vertex(g.clone(), StarRing::Integers, g.vertex("v").unwrap()),
        )]
        .into(),
        g.edge_ids()
            .map(|e| {
                let other = g.edge_ids().find(|f| *f != e).unwrap();
                (
                    e,
                    AlgebraElement::path(
                        g.clone(),
                        StarRing::Integers,
                        &leavitt::Path::edge(&g, other),
                    ),
                )
            })
            .collect(),
    )
    .unwrap()
    .validate();
    let mut group = c.benchmark_group("diagonal_preservation");
    for depth in [4, 6, 8] {
        for (name, exec) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(name, depth), &depth, |bench, &d| {
                bench.iter(|| swap.check_diagonal_preservation(d, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn projection_batch(c: &mut Criterion) {
    let g = e2();
    let table = PathTable::new(&g, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let batch: Vec<AlgebraElement> = (0..64)
        .flat_map(|_| sample::projection_chain(&mut rng, &g, StarRing::Integers, &table, 3))
        .collect();
    let mut group = c.benchmark_group("projection_batch");
    for (name, exec) in STRATEGIES {
        group.bench_function(name, |bench| {
            bench.iter(|| {
                exec.map(&batch, |p| {
                    let k = p.terms().map(|(m, _)| m.nu.len()).max().unwrap_or(0);
                    diagonal_analyze(p).unwrap().member && proof_trace(p, k).unwrap().verified()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, products, preservation, projection_batch);
criterion_main!(benches);
