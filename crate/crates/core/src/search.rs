//! Depth-first search over partitions into triples in canonical order, with
//! early pruning, sharded by the composition of the first triple.
//!
//! Canonical order places the smallest unassigned agent first in each new
//! triple, so every partition is reached exactly once and the first partition
//! found is the lexicographically smallest valid one. A violation is detected
//! as soon as all the agents it involves sit in completed triples.
//!
//! Shards run independently, in parallel when the `parallel` feature is on,
//! and are then folded in order as if they had run one after another, so
//! the verdict and the budget charge match the sequential run.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use crate::envy::{envy_against, satisfies, Concept, EnvyKind};
use crate::game::{Agent, Ashg, PartitionIntoTriples, Triple};

/// How shards are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parallelism {
    Sequential,
    /// Rayon's global pool. Falls back to sequential without the `parallel` feature.
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

/// Progress after a shard finishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub shards_done: usize,
    pub shards_total: usize,
    pub nodes: u64,
}

/// Search settings. A node is one tentative triple placement.
#[derive(Clone, Copy, Default)]
pub struct SearchConfig<'a> {
    pub budget: Option<u64>,
    pub parallelism: Parallelism,
    pub progress: Option<&'a (dyn Fn(Progress) + Sync)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchResult {
    Found(PartitionIntoTriples),
    Exhausted,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub result: SearchResult,
    /// Nodes charged in canonical order up to the verdict.
    pub nodes: u64,
}

/// Finds the canonically first partition satisfying `concept`.
pub fn search(game: &Ashg, concept: Concept, config: &SearchConfig<'_>) -> SearchReport {
    let n = game.num_agents();
    let shards: Vec<(Agent, Agent)> = (1..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    let budget = config.budget.unwrap_or(u64::MAX);
    let done = AtomicUsize::new(0);
    let nodes_seen = AtomicU64::new(0);
    let report = |nodes: u64| {
        if let Some(progress) = config.progress {
            progress(Progress {
                shards_done: done.fetch_add(1, Ordering::Relaxed) + 1,
                shards_total: shards.len(),
                nodes: nodes_seen.fetch_add(nodes, Ordering::Relaxed) + nodes,
            });
        }
    };

    let outcomes = match config.parallelism {
        Parallelism::Parallel if cfg!(feature = "parallel") => {
            run_parallel(game, concept, &shards, budget, &report)
        }
        _ => run_sequential(game, concept, &shards, budget, &report),
    };

    let mut charged = 0u64;
    for outcome in outcomes {
        let Some(outcome) = outcome else { break };
        charged = charged.saturating_add(outcome.nodes);
        match outcome.step {
            Step::Stopped => {
                return SearchReport {
                    result: SearchResult::BudgetExceeded,
                    nodes: budget,
                }
            }
            _ if charged > budget => {
                return SearchReport {
                    result: SearchResult::BudgetExceeded,
                    nodes: budget,
                }
            }
            Step::Found(pi) => {
                return SearchReport {
                    result: SearchResult::Found(pi),
                    nodes: charged,
                }
            }
            Step::Exhausted => {}
        }
    }
    SearchReport {
        result: SearchResult::Exhausted,
        nodes: charged,
    }
}

struct ShardOutcome {
    step: Step,
    nodes: u64,
}

fn run_sequential(
    game: &Ashg,
    concept: Concept,
    shards: &[(Agent, Agent)],
    budget: u64,
    report: &(dyn Fn(u64) + Sync),
) -> Vec<Option<ShardOutcome>> {
    let mut out = Vec::with_capacity(shards.len());
    let mut remaining = budget;
    for &shard in shards {
        let outcome = run_shard(game, concept, shard, remaining, &|| false);
        report(outcome.nodes);
        remaining = remaining.saturating_sub(outcome.nodes);
        let stop = !matches!(outcome.step, Step::Exhausted);
        out.push(Some(outcome));
        if stop {
            break;
        }
    }
    out
}

#[cfg(feature = "parallel")]
fn run_parallel(
    game: &Ashg,
    concept: Concept,
    shards: &[(Agent, Agent)],
    budget: u64,
    report: &(dyn Fn(u64) + Sync),
) -> Vec<Option<ShardOutcome>> {
    use rayon::prelude::*;

    // Smallest shard index that found a partition or exhausted its own budget.
    let cutoff = AtomicUsize::new(usize::MAX);
    shards
        .par_iter()
        .enumerate()
        .map(|(idx, &shard)| {
            if cutoff.load(Ordering::Relaxed) < idx {
                return None;
            }
            let abort = || cutoff.load(Ordering::Relaxed) < idx;
            let outcome = run_shard(game, concept, shard, budget, &abort);
            if matches!(outcome.step, Step::Stopped) && abort() {
                return None;
            }
            report(outcome.nodes);
            if !matches!(outcome.step, Step::Exhausted) {
                cutoff.fetch_min(idx, Ordering::Relaxed);
            }
            Some(outcome)
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_parallel(
    game: &Ashg,
    concept: Concept,
    shards: &[(Agent, Agent)],
    budget: u64,
    report: &(dyn Fn(u64) + Sync),
) -> Vec<Option<ShardOutcome>> {
    run_sequential(game, concept, shards, budget, report)
}

fn run_shard(
    game: &Ashg,
    concept: Concept,
    (a, b): (Agent, Agent),
    cap: u64,
    abort: &dyn Fn() -> bool,
) -> ShardOutcome {
    let mut dfs = Dfs::new(game, concept, cap, abort);
    dfs.nodes = 1;
    dfs.place([0, a, b]);
    let step = if cap == 0 { Step::Stopped } else { dfs.run() };
    ShardOutcome {
        step,
        nodes: dfs.nodes,
    }
}

enum Step {
    Found(PartitionIntoTriples),
    Exhausted,
    /// Node cap reached or told to abort.
    Stopped,
}

struct Dfs<'a> {
    game: &'a Ashg,
    concept: Concept,
    threshold: Option<EnvyKind>,
    assigned: Vec<bool>,
    placed: Vec<Agent>,
    triples: Vec<Triple>,
    util: Vec<i64>,
    mates: Vec<[Agent; 2]>,
    nodes: u64,
    cap: u64,
    abort: &'a dyn Fn() -> bool,
}

impl<'a> Dfs<'a> {
    fn new(game: &'a Ashg, concept: Concept, cap: u64, abort: &'a dyn Fn() -> bool) -> Self {
        let n = game.num_agents();
        Dfs {
            game,
            concept,
            threshold: concept.envy_threshold(),
            assigned: vec![false; n],
            placed: Vec::with_capacity(n),
            triples: Vec::with_capacity(n / 3),
            util: vec![0; n],
            mates: vec![[0, 0]; n],
            nodes: 0,
            cap,
            abort,
        }
    }

    fn run(&mut self) -> Step {
        let n = self.assigned.len();
        if self.placed.len() == n {
            let pi = PartitionIntoTriples::new(n, self.triples.clone())
                .expect("search builds exact covers");
            debug_assert!(satisfies(self.game, &pi, self.concept));
            return if satisfies(self.game, &pi, self.concept) {
                Step::Found(pi)
            } else {
                Step::Exhausted
            };
        }
        let a = (0..n)
            .find(|&x| !self.assigned[x])
            .expect("an agent is unassigned");
        for b in a + 1..n {
            if self.assigned[b] {
                continue;
            }
            for c in b + 1..n {
                if self.assigned[c] {
                    continue;
                }
                self.nodes += 1;
                if self.nodes > self.cap || (self.nodes & 0xfff == 0 && (self.abort)()) {
                    return Step::Stopped;
                }
                if self.place([a, b, c]) {
                    match self.run() {
                        Step::Exhausted => {}
                        other => return other,
                    }
                }
                self.unplace();
            }
        }
        Step::Exhausted
    }

    /// Places a triple and reports whether the partial partition is still consistent.
    fn place(&mut self, t: Triple) -> bool {
        let g = self.game;
        for (k, &x) in t.iter().enumerate() {
            let m = [t[(k + 1) % 3], t[(k + 2) % 3]];
            self.assigned[x] = true;
            self.mates[x] = m;
            self.util[x] = g.value(x, m[0]) + g.value(x, m[1]);
        }
        let before = self.placed.len();
        self.placed.extend_from_slice(&t);
        self.triples.push(t);
        match self.threshold {
            Some(th) => self.pairwise_ok(&t, &self.placed[..before], th),
            None => self.no_blocking_with(&t),
        }
    }

    fn unplace(&mut self) {
        let t = self.triples.pop().expect("a triple to remove");
        self.placed.truncate(self.placed.len() - 3);
        for x in t {
            self.assigned[x] = false;
        }
    }

    fn pairwise_ok(&self, t: &Triple, earlier: &[Agent], th: EnvyKind) -> bool {
        let g = self.game;
        for &i in t {
            for &j in earlier {
                if envy_against(g, self.util[i], i, j, self.mates[j]) >= th
                    || envy_against(g, self.util[j], j, i, self.mates[i]) >= th
                {
                    return false;
                }
            }
        }
        true
    }

    fn no_blocking_with(&self, t: &Triple) -> bool {
        let g = self.game;
        let u = &self.util;
        for &a in t {
            for (k, &b) in self.placed.iter().enumerate() {
                if b == a {
                    continue;
                }
                for &c in &self.placed[k + 1..] {
                    if c == a {
                        continue;
                    }
                    if g.value(a, b) + g.value(a, c) > u[a]
                        && g.value(b, a) + g.value(b, c) > u[b]
                        && g.value(c, a) + g.value(c, b) > u[c]
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}
