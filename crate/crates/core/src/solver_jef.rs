//! Justified-envy-free partitions.
//!
//! For binary games a partition always exists: swapping a justly envious agent
//! with the agent it envies strictly raises the number of bidirected pairs
//! (mutual friends sharing a triple), which never exceeds the number of agents.
//! Other games go to budgeted search.

use std::fmt;

use crate::envy::{envy_kind, satisfies, Concept, EnvyKind};
use crate::error::{Error, Result};
use crate::game::{Agent, Ashg, PartitionIntoTriples};
use crate::outcome::{Certificate, SolveOutcome};
use crate::search::{search, SearchConfig, SearchResult};

/// Default node budget for [`solve_jef_general`].
pub const DEFAULT_BUDGET: u64 = 100_000_000;

fn require_binary(game: &Ashg) -> Result<()> {
    if game.is_binary() {
        return Ok(());
    }
    let (i, j, v) = game
        .nonzero_entries()
        .find(|&(_, _, v)| v != 1)
        .expect("a non-binary game has a value outside {0, 1}");
    Err(Error::Precondition(format!(
        "game is not binary: v({}, {}) = {v}",
        i + 1,
        j + 1
    )))
}

/// Unordered pairs sharing a triple that value each other at 1.
pub fn count_bidirected_pairs(game: &Ashg, pi: &PartitionIntoTriples) -> Result<usize> {
    require_binary(game)?;
    pi.check_game(game)?;
    Ok(bidirected(game, pi))
}

fn bidirected(game: &Ashg, pi: &PartitionIntoTriples) -> usize {
    pi.triples()
        .iter()
        .map(|&[a, b, c]| {
            [(a, b), (a, c), (b, c)]
                .iter()
                .filter(|&&(x, y)| game.value(x, y) == 1 && game.value(y, x) == 1)
                .count()
        })
        .sum()
}

/// The lexicographically smallest `(envier, envied)` pair with justified envy.
pub fn find_jenvy_swap(game: &Ashg, pi: &PartitionIntoTriples) -> Result<Option<(Agent, Agent)>> {
    require_binary(game)?;
    pi.check_game(game)?;
    Ok(first_justified(game, pi))
}

fn first_justified(game: &Ashg, pi: &PartitionIntoTriples) -> Option<(Agent, Agent)> {
    let n = game.num_agents();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && envy_kind(game, pi, i, j) == EnvyKind::Justified)
}

/// One swap of the dynamics, with the potential after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapStep {
    pub envier: Agent,
    pub envied: Agent,
    pub potential: usize,
}

/// A swap trace, printed one line per step with 1-indexed agents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SwapTrace(pub Vec<SwapStep>);

impl fmt::Display for SwapTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.0.iter().enumerate() {
            writeln!(
                f,
                "step {}: swap {} {}, potential {}",
                k + 1,
                s.envier + 1,
                s.envied + 1,
                s.potential
            )?;
        }
        Ok(())
    }
}

/// Runs the swap dynamics from `initial` (ascending grouping by default) until no agent has j-envy.
pub fn solve_jef_binary(
    game: &Ashg,
    initial: Option<&PartitionIntoTriples>,
) -> Result<(PartitionIntoTriples, SwapTrace)> {
    require_binary(game)?;
    let mut pi = match initial {
        Some(p) => {
            p.check_game(game)?;
            p.clone()
        }
        None => PartitionIntoTriples::ascending(game.num_agents())?,
    };
    let mut trace = Vec::new();
    let mut potential = bidirected(game, &pi);
    while let Some((i, j)) = first_justified(game, &pi) {
        pi = pi.swapped(i, j);
        let next = bidirected(game, &pi);
        assert!(
            next > potential,
            "bidirected pairs must increase on every swap"
        );
        assert!(next <= game.num_agents());
        potential = next;
        trace.push(SwapStep {
            envier: i,
            envied: j,
            potential,
        });
    }
    debug_assert!(satisfies(game, &pi, Concept::Jef));
    Ok((pi, SwapTrace(trace)))
}

/// jEF for any game: swap dynamics when binary, otherwise pruned search within `budget` nodes.
pub fn solve_jef_general(game: &Ashg, budget: u64) -> SolveOutcome {
    solve_jef_with(
        game,
        &SearchConfig {
            budget: Some(budget),
            ..Default::default()
        },
    )
}

pub fn solve_jef_with(game: &Ashg, config: &SearchConfig<'_>) -> SolveOutcome {
    if game.is_binary() {
        let (pi, _) = solve_jef_binary(game, None).expect("binary game");
        return SolveOutcome::Partition(pi);
    }
    match search(game, Concept::Jef, config).result {
        SearchResult::Found(pi) => SolveOutcome::Partition(pi),
        SearchResult::Exhausted => SolveOutcome::NoneExists {
            certificate: Certificate::Exhaustive,
        },
        SearchResult::BudgetExceeded => SolveOutcome::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envy::find_violations;

    /// α1 is indifferent to its own triple and mutually liked by α5 and α6, who do not value α4.
    fn one_swap_game() -> Ashg {
        Ashg::from_entries(6, [(0, 4, 1), (0, 5, 1), (4, 0, 1), (5, 0, 1)]).unwrap()
    }

    #[test]
    fn bidirected_counts() {
        let pi = PartitionIntoTriples::ascending(6).unwrap();
        assert_eq!(
            count_bidirected_pairs(&Ashg::zero(6).unwrap(), &pi).unwrap(),
            0
        );
        let g = Ashg::from_edges(6, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(count_bidirected_pairs(&g, &pi).unwrap(), 3);
        let g = Ashg::from_entries(6, [(0, 1, 1)]).unwrap();
        assert_eq!(count_bidirected_pairs(&g, &pi).unwrap(), 0);
        let g = Ashg::from_entries(6, [(0, 1, 2)]).unwrap();
        assert!(matches!(
            count_bidirected_pairs(&g, &pi),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn finds_the_expected_swap() {
        let g = one_swap_game();
        let pi = PartitionIntoTriples::ascending(6).unwrap();
        assert_eq!(find_jenvy_swap(&g, &pi).unwrap(), Some((0, 3)));
        let before = count_bidirected_pairs(&g, &pi).unwrap();
        let after = count_bidirected_pairs(&g, &pi.swapped(0, 3)).unwrap();
        assert!(after > before);
    }

    #[test]
    fn one_swap_suffices() {
        let g = one_swap_game();
        let (pi, trace) = solve_jef_binary(&g, None).unwrap();
        assert_eq!(
            trace.0,
            vec![SwapStep {
                envier: 0,
                envied: 3,
                potential: 2
            }]
        );
        assert_eq!(trace.to_string(), "step 1: swap 1 4, potential 2\n");
        assert!(find_violations(&g, &pi, Concept::Jef).unwrap().is_empty());
    }

    #[test]
    fn zero_game_needs_no_swaps() {
        let g = Ashg::zero(9).unwrap();
        let (pi, trace) = solve_jef_binary(&g, None).unwrap();
        assert_eq!(pi, PartitionIntoTriples::ascending(9).unwrap());
        assert!(trace.0.is_empty());
    }

    #[test]
    fn general_dispatches_binary_games() {
        let g = one_swap_game();
        let (pi, _) = solve_jef_binary(&g, None).unwrap();
        assert_eq!(solve_jef_general(&g, 1), SolveOutcome::Partition(pi));
    }

    #[test]
    fn general_reports_unknown_on_a_tiny_budget() {
        let g = Ashg::from_fn(12, |i, j| ((i * 7 + j * 3) % 3) as i64).unwrap();
        assert_eq!(solve_jef_general(&g, 2), SolveOutcome::Unknown);
    }
}
