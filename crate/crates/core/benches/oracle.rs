use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hedonic_triples::envy::Concept;
use hedonic_triples::game::Ashg;
use hedonic_triples::generate::wj_no;
use hedonic_triples::oracle::{brute_force_with, OracleOptions};
use hedonic_triples::reductions::{pit_no_instance, reduce_pit_to_jef_symmetric, UndirectedGraph};
use hedonic_triples::search::Parallelism;

fn instances() -> Vec<(&'static str, Ashg, Concept)> {
    let path = UndirectedGraph::new(3, vec![(0, 1), (1, 2)]).unwrap();
    vec![
        ("wj-no-9", wj_no(2).unwrap(), Concept::Wjef),
        ("pit-core-12", pit_no_instance().unwrap(), Concept::Jef),
        ("zero-15", Ashg::zero(15).unwrap(), Concept::Stable),
        (
            "pit-path-18",
            reduce_pit_to_jef_symmetric(&path).unwrap().game,
            Concept::Jef,
        ),
    ]
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle");
    group.sample_size(20);
    for (name, game, concept) in instances() {
        for (label, parallelism) in [
            ("sequential", Parallelism::Sequential),
            ("parallel", Parallelism::Parallel),
        ] {
            let options = OracleOptions {
                parallelism,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(label, name), &game, |b, g| {
                b.iter(|| brute_force_with(black_box(g), concept, &options).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, oracle);
criterion_main!(benches);
