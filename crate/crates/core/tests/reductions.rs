mod common;

use common::naive_satisfies;
use hedonic_triples::envy::{sigma, Concept};
use hedonic_triples::reductions::{
    ef_partition_from_exact_model, exact_model_from_ef_partition, exact_model_from_wjef_partition,
    jef_partition_from_triangle_cover, reduce_dtc_to_jef_ternary, reduce_pit_to_jef_symmetric,
    reduce_x3sat_to_ef, reduce_x3sat_to_wjef, triangle_cover_from_jef_partition,
    wjef_partition_from_exact_model, Digraph, UndirectedGraph, X3SatFormula,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_formula(m: usize, rng: &mut ChaCha8Rng) -> X3SatFormula {
    loop {
        let mut slots: Vec<usize> = (0..m).flat_map(|v| [v, v, v]).collect();
        slots.shuffle(rng);
        let clauses: Vec<[usize; 3]> = slots.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        if let Ok(f) = X3SatFormula::new(m, clauses) {
            return f;
        }
    }
}

#[test]
fn exact_models_survive_the_ef_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for _ in 0..60 {
        let m = 3 * rng.gen_range(1..=4);
        let f = random_formula(m, &mut rng);
        let red = reduce_x3sat_to_ef(&f).unwrap();
        assert_eq!(red.game.num_agents(), 11 * m);
        assert!(red.game.is_binary() && red.game.is_symmetric());
        for model in f.exact_models().unwrap() {
            let pi = ef_partition_from_exact_model(&f, &model, &red.game).unwrap();
            assert!(naive_satisfies(&red.game, pi.triples(), Concept::Ef));
            for (v, &open) in model.iter().enumerate() {
                let gadget = [3 * v, 3 * v + 1, 3 * v + 2];
                assert_eq!(sigma(&pi, &gadget).unwrap(), if open { 3 } else { 1 });
            }
            assert_eq!(
                exact_model_from_ef_partition(&f, &red.game, &pi).unwrap(),
                model
            );
            checked += 1;
        }
    }
    assert!(checked > 20, "only {checked} models exercised");
}

#[test]
fn exact_models_survive_the_wjef_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    for _ in 0..30 {
        let m = 3 * rng.gen_range(1..=4);
        let f = random_formula(m, &mut rng);
        let copies = if m % 4 == 0 { 1 } else { 4 };
        let red = reduce_x3sat_to_wjef(&f, false).unwrap();
        assert_eq!(red.game.num_agents(), 10 * m * copies);
        assert_eq!(reduce_x3sat_to_wjef(&f, true).is_ok(), copies == 1);
        for model in f.exact_models().unwrap().into_iter().take(4) {
            let pi = wjef_partition_from_exact_model(&f, &model, &red.game).unwrap();
            assert!(naive_satisfies(&red.game, pi.triples(), Concept::Wjef));
            let back = exact_model_from_wjef_partition(&f, &red.game, &pi).unwrap();
            assert_eq!(back, model.repeat(copies));
            checked += 1;
        }
    }
    assert!(checked > 10, "only {checked} models exercised");
}

fn planted_cover(t: usize, rng: &mut ChaCha8Rng) -> Vec<[usize; 3]> {
    let mut order: Vec<usize> = (0..3 * t).collect();
    order.shuffle(rng);
    order.chunks(3).map(|c| [c[0], c[1], c[2]]).collect()
}

fn is_cover(n: usize, cover: &[[usize; 3]], triangle: impl Fn(&[usize; 3]) -> bool) -> bool {
    let mut seen = vec![false; n];
    for t in cover {
        for &v in t {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
    }
    seen.into_iter().all(|s| s) && cover.iter().all(triangle)
}

#[test]
fn planted_directed_covers_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..40 {
        let t = rng.gen_range(1..=4);
        let n = 3 * t;
        let cover = planted_cover(t, &mut rng);
        let mut arcs: Vec<(usize, usize)> = cover
            .iter()
            .flat_map(|&[a, b, c]| [(a, b), (b, c), (c, a)])
            .collect();
        for _ in 0..n {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && !arcs.contains(&(a, b)) && !arcs.contains(&(b, a)) {
                arcs.push((a, b));
            }
        }
        let g = Digraph::new(n, arcs).unwrap();
        let red = reduce_dtc_to_jef_ternary(&g).unwrap();
        assert_eq!(red.game.num_agents(), 9 + n);
        let pi = jef_partition_from_triangle_cover(&g, &cover, &red.game).unwrap();
        assert!(naive_satisfies(&red.game, pi.triples(), Concept::Jef));
        let back = triangle_cover_from_jef_partition(&g, &red.game, &pi).unwrap();
        let directed = |&[a, b, c]: &[usize; 3]| {
            (g.has_arc(a, b) && g.has_arc(b, c) && g.has_arc(c, a))
                || (g.has_arc(a, c) && g.has_arc(c, b) && g.has_arc(b, a))
        };
        assert!(is_cover(n, &back, directed));
    }
}

#[test]
fn planted_undirected_covers_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..40 {
        let t = rng.gen_range(1..=3);
        let n = 3 * t;
        let cover = planted_cover(t, &mut rng);
        let mut edges: Vec<(usize, usize)> = cover
            .iter()
            .flat_map(|&[a, b, c]| [(a, b), (b, c), (a, c)])
            .collect();
        for _ in 0..n {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && !edges.contains(&(a, b)) && !edges.contains(&(b, a)) {
                edges.push((a, b));
            }
        }
        let g = UndirectedGraph::new(n, edges).unwrap();
        let red = reduce_pit_to_jef_symmetric(&g).unwrap();
        assert_eq!(red.game.num_agents(), 15 + n);
        assert!(red.game.is_symmetric() && red.game.max_value() <= 6);
        let pi = jef_partition_from_triangle_cover(&g, &cover, &red.game).unwrap();
        assert!(naive_satisfies(&red.game, pi.triples(), Concept::Jef));
        let back = triangle_cover_from_jef_partition(&g, &red.game, &pi).unwrap();
        let triangle =
            |&[a, b, c]: &[usize; 3]| g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
        assert!(is_cover(n, &back, triangle));
    }
}
