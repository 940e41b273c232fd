//! Exhaustive ground truth for small games.

use crate::envy::Concept;
use crate::error::{Error, Result};
use crate::game::{Agent, Ashg, PartitionIntoTriples, Triple};
use crate::outcome::{Certificate, SolveOutcome};
use crate::search::{search, Parallelism, Progress, SearchConfig, SearchResult};

/// Largest game the oracle accepts by default.
pub const DEFAULT_CAP: usize = 18;

/// Number of partitions of `3 · n_triples` agents into triples: `(3n)! / (6ⁿ n!)`.
pub fn count_partitions(n_triples: usize) -> Result<u64> {
    if n_triples == 0 {
        return Err(Error::InvalidInput("need at least one triple".into()));
    }
    (1..=n_triples as u64).try_fold(1u64, |acc, k| {
        // the smallest free agent picks two partners from the other 3k - 1
        let choices = (3 * k - 1) * (3 * k - 2) / 2;
        acc.checked_mul(choices).ok_or_else(|| {
            Error::InvalidInput(format!(
                "the number of partitions of {} agents does not fit in 64 bits",
                3 * n_triples
            ))
        })
    })
}

/// Partition count as text, falling back to a lower bound when it overflows.
pub fn describe_count(num_agents: usize) -> String {
    match count_partitions(num_agents / 3) {
        Ok(c) => c.to_string(),
        Err(_) => format!("more than {}", u64::MAX),
    }
}

/// Every partition of `num_agents` agents, in canonical order.
pub fn enumerate_partitions(num_agents: usize) -> Result<Partitions> {
    enumerate_partitions_capped(num_agents, DEFAULT_CAP)
}

pub fn enumerate_partitions_capped(num_agents: usize, cap: usize) -> Result<Partitions> {
    if num_agents == 0 || !num_agents.is_multiple_of(3) {
        return Err(Error::AgentCount(num_agents));
    }
    check_cap(num_agents, cap)?;
    Ok(Partitions {
        n: num_agents,
        assigned: vec![false; num_agents],
        stack: Vec::with_capacity(num_agents / 3),
        started: false,
    })
}

fn check_cap(num_agents: usize, cap: usize) -> Result<()> {
    if num_agents > cap {
        return Err(Error::CapExceeded {
            agents: num_agents,
            cap,
            partitions: describe_count(num_agents),
        });
    }
    Ok(())
}

/// Streaming enumeration; see [`enumerate_partitions`].
#[derive(Debug, Clone)]
pub struct Partitions {
    n: usize,
    assigned: Vec<bool>,
    stack: Vec<Triple>,
    started: bool,
}

impl Partitions {
    fn next_free(&self, after: Option<Agent>) -> Option<Agent> {
        let from = after.map_or(0, |a| a + 1);
        (from..self.n).find(|&x| !self.assigned[x])
    }

    fn set(&mut self, t: Triple, on: bool) {
        for x in t {
            self.assigned[x] = on;
        }
    }

    fn fill(&mut self) {
        while let Some(a) = self.next_free(None) {
            self.assigned[a] = true;
            let b = self
                .next_free(Some(a))
                .expect("agent count is a multiple of 3");
            self.assigned[b] = true;
            let c = self
                .next_free(Some(b))
                .expect("agent count is a multiple of 3");
            self.assigned[c] = true;
            self.stack.push([a, b, c]);
        }
    }

    /// Moves the deepest triple that can still change to its next choice.
    fn advance(&mut self) -> bool {
        while let Some([a, b, c]) = self.stack.pop() {
            self.set([a, b, c], false);
            self.assigned[a] = true;
            self.assigned[b] = true;
            if let Some(c2) = self.next_free(Some(c)) {
                self.assigned[c2] = true;
                self.stack.push([a, b, c2]);
                return true;
            }
            self.assigned[b] = false;
            let mut b2 = self.next_free(Some(b));
            while let Some(nb) = b2 {
                self.assigned[nb] = true;
                if let Some(c2) = self.next_free(Some(nb)) {
                    self.assigned[c2] = true;
                    self.stack.push([a, nb, c2]);
                    return true;
                }
                self.assigned[nb] = false;
                b2 = self.next_free(Some(nb));
            }
            self.assigned[a] = false;
        }
        false
    }
}

impl Iterator for Partitions {
    type Item = PartitionIntoTriples;

    fn next(&mut self) -> Option<PartitionIntoTriples> {
        if !self.started {
            self.started = true;
            self.fill();
        } else if self.advance() {
            self.fill();
        } else {
            return None;
        }
        Some(
            PartitionIntoTriples::new(self.n, self.stack.clone())
                .expect("enumeration builds exact covers"),
        )
    }
}

/// Settings for [`brute_force_with`].
#[derive(Clone, Copy)]
pub struct OracleOptions<'a> {
    pub cap: usize,
    pub parallelism: Parallelism,
    pub progress: Option<&'a (dyn Fn(Progress) + Sync)>,
}

impl Default for OracleOptions<'_> {
    fn default() -> Self {
        OracleOptions {
            cap: DEFAULT_CAP,
            parallelism: Parallelism::default(),
            progress: None,
        }
    }
}

/// The canonically first partition satisfying `concept`, or a proof by exhaustion that none exists.
pub fn brute_force(game: &Ashg, concept: Concept) -> Result<SolveOutcome> {
    brute_force_with(game, concept, &OracleOptions::default())
}

pub fn brute_force_with(
    game: &Ashg,
    concept: Concept,
    options: &OracleOptions<'_>,
) -> Result<SolveOutcome> {
    check_cap(game.num_agents(), options.cap)?;
    let report = search(
        game,
        concept,
        &SearchConfig {
            budget: None,
            parallelism: options.parallelism,
            progress: options.progress,
        },
    );
    Ok(match report.result {
        SearchResult::Found(pi) => SolveOutcome::Partition(pi),
        SearchResult::Exhausted => SolveOutcome::NoneExists {
            certificate: Certificate::Exhaustive,
        },
        SearchResult::BudgetExceeded => unreachable!("the oracle runs without a budget"),
    })
}
