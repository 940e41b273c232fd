mod common;

use common::*;
use hedonic_triples::envy::{satisfies, Concept};
use hedonic_triples::game::Ashg;
use hedonic_triples::generate::{paths_cycles, random_binary, wj_no};
use hedonic_triples::oracle::{brute_force, count_partitions};
use hedonic_triples::outcome::{Certificate, SolveOutcome};
use hedonic_triples::solver_ef::solve_ef_maxdeg2;
use hedonic_triples::solver_jef::{count_bidirected_pairs, solve_jef_binary, solve_jef_general};
use hedonic_triples::solver_wjef::solve_wjef_maxdeg2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn partition_counts_match_plain_enumeration() {
    for t in 1..=4 {
        assert_eq!(
            all_partitions(3 * t).len() as u64,
            count_partitions(t).unwrap()
        );
    }
}

#[test]
fn oracle_agrees_with_plain_enumeration_on_small_games() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..150 {
        let n = if rng.gen_bool(0.5) { 6 } else { 9 };
        let g = Ashg::from_fn(n, |_, _| rng.gen_range(-1..=2)).unwrap();
        for concept in [Concept::Ef, Concept::Wjef, Concept::Jef, Concept::Stable] {
            let out = brute_force(&g, concept).unwrap();
            assert_eq!(out.verdict(), Some(naive_exists(&g, concept)));
            if let Some(pi) = out.partition() {
                assert!(naive_satisfies(&g, pi.triples(), concept));
            }
        }
    }
}

#[test]
fn ef_solver_matches_the_oracle_on_every_small_mix() {
    let mixes = component_mixes(12);
    assert!(mixes.len() > 100);
    for (idx, mix) in mixes.iter().enumerate() {
        let n: usize = mix.iter().map(|p| p.len()).sum();
        let perm = scramble(n, idx as u64);
        let g = mix_game(mix, Some(&perm));
        let fast = solve_ef_maxdeg2(&g).unwrap();
        let slow = brute_force(&g, Concept::Ef).unwrap();
        assert_eq!(fast.verdict(), slow.verdict(), "{mix:?}");
        match fast {
            SolveOutcome::Partition(pi) => assert!(naive_satisfies(&g, pi.triples(), Concept::Ef)),
            other => assert_eq!(other.certificate(), Some(Certificate::IsolatedShortfall)),
        }
    }
}

#[test]
fn wjef_solver_matches_the_oracle_on_every_small_mix() {
    for (idx, mix) in component_mixes(12).iter().enumerate() {
        let n: usize = mix.iter().map(|p| p.len()).sum();
        let perm = scramble(n, 1000 + idx as u64);
        let g = mix_game(mix, Some(&perm));
        let fast = solve_wjef_maxdeg2(&g).unwrap();
        let slow = brute_force(&g, Concept::Wjef).unwrap();
        assert_eq!(fast.verdict(), slow.verdict(), "{mix:?}");
        match fast {
            SolveOutcome::Partition(pi) => {
                assert!(naive_satisfies(&g, pi.triples(), Concept::Wjef))
            }
            other => {
                assert_eq!(other.certificate(), Some(Certificate::FourCycleFamily));
                assert_eq!(
                    mix.iter().filter(|p| **p == Piece::Cycle(4)).count() * 4 + 1,
                    n
                );
            }
        }
    }
}

#[test]
fn wjef_family_members_are_recognised_at_every_size() {
    for k in [2, 5, 8, 11] {
        let out = solve_wjef_maxdeg2(&wj_no(k).unwrap()).unwrap();
        assert_eq!(out.certificate(), Some(Certificate::FourCycleFamily));
    }
}

#[test]
fn polynomial_solvers_return_clean_partitions_on_large_instances() {
    for seed in 0..300 {
        let n = 3 * (1 + seed as usize % 40);
        let g = paths_cycles(n, seed).unwrap();
        if let Some(pi) = solve_ef_maxdeg2(&g).unwrap().partition() {
            assert!(satisfies(&g, pi, Concept::Ef));
        }
        match solve_wjef_maxdeg2(&g).unwrap() {
            SolveOutcome::Partition(pi) => assert!(satisfies(&g, &pi, Concept::Wjef)),
            other => assert_eq!(other.certificate(), Some(Certificate::FourCycleFamily)),
        }
    }
}

#[test]
fn swap_dynamics_raise_the_potential_until_jef() {
    for seed in 0..200 {
        let n = 3 * (1 + seed as usize % 12);
        let g = random_binary(n, 0.3, seed).unwrap();
        let (pi, trace) = solve_jef_binary(&g, None).unwrap();
        assert!(naive_satisfies(&g, pi.triples(), Concept::Jef));
        assert!(trace.0.windows(2).all(|w| w[0].potential < w[1].potential));
        assert!(trace.0.len() <= n * n);
        assert!(
            count_bidirected_pairs(&g, &pi).unwrap() >= trace.0.last().map_or(0, |s| s.potential)
        );
    }
}

#[test]
fn general_jef_search_agrees_with_plain_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..80 {
        let n = 3 * rng.gen_range(1..=3);
        let g = Ashg::from_fn(n, |_, _| rng.gen_range(0..=3)).unwrap();
        let out = solve_jef_general(&g, 1_000_000);
        assert_eq!(out.verdict(), Some(naive_exists(&g, Concept::Jef)));
        if let Some(pi) = out.partition() {
            assert!(naive_satisfies(&g, pi.triples(), Concept::Jef));
        }
    }
}
