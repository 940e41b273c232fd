//! Weakly-justified-envy-free partitions for binary symmetric games of maximum degree 2.
//!
//! Components other than 4-cycles are cut into path triples, leaving up to two
//! surplus agents each. The 4-cycles are handled three at a time by
//! interleaving; one or two leftover 4-cycles borrow low-degree surplus agents
//! (or one path triple). The only instances without a wjEF partition are
//! k ≥ 2 disjoint 4-cycles plus a single isolated agent.

use crate::envy::{satisfies, Concept};
use crate::error::{Error, Result};
use crate::game::{Agent, Ashg, PartitionIntoTriples, Triple};
use crate::outcome::{Certificate, SolveOutcome};
use crate::structure::{
    decompose, underlying_graph, Component, ComponentDecomposition, ComponentKind, UnderlyingGraph,
};

/// Surplus agents whose induced subgraph has maximum degree at most 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurplusPool {
    agents: Vec<Agent>,
    partner: Vec<Option<Agent>>,
}

impl SurplusPool {
    /// Builds a pool from `agents` (kept in ascending order), computing induced degrees in `graph`.
    pub fn new(graph: &UnderlyingGraph, mut agents: Vec<Agent>) -> Result<Self> {
        agents.sort_unstable();
        agents.dedup();
        let mut member = vec![false; graph.num_agents()];
        for &a in &agents {
            if a >= graph.num_agents() {
                return Err(Error::UnknownAgent {
                    agent: a + 1,
                    num_agents: graph.num_agents(),
                });
            }
            member[a] = true;
        }
        let mut partner = Vec::with_capacity(agents.len());
        for &a in &agents {
            let inside: Vec<Agent> = graph
                .neighbours(a)
                .iter()
                .copied()
                .filter(|&b| member[b])
                .collect();
            if inside.len() > 1 {
                return Err(Error::Precondition(format!(
                    "surplus agent {} has {} neighbours inside the pool; at most 1 is allowed",
                    a + 1,
                    inside.len()
                )));
            }
            partner.push(inside.first().copied());
        }
        Ok(SurplusPool { agents, partner })
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    /// Degree of the `idx`-th pool agent inside the pool.
    pub fn induced_degree(&self, idx: usize) -> usize {
        usize::from(self.partner[idx].is_some())
    }

    /// Adjacent pairs inside the pool, each `(smaller, larger)`, ascending.
    pub fn adjacent_pairs(&self) -> Vec<(Agent, Agent)> {
        self.agents
            .iter()
            .zip(&self.partner)
            .filter_map(|(&a, p)| p.filter(|&b| b > a).map(|b| (a, b)))
            .collect()
    }
}

/// Cuts each component into consecutive triples; the trailing `k mod 3` agents become surplus.
pub fn non_c4_components(
    graph: &UnderlyingGraph,
    components: &[&Component],
) -> Result<(Vec<Triple>, SurplusPool)> {
    let mut triples = Vec::new();
    let mut surplus = Vec::new();
    for c in components {
        if c.is_four_cycle() {
            return Err(Error::Precondition(format!(
                "component containing agent {} is a 4-cycle",
                c.min_agent() + 1
            )));
        }
        let whole = c.len() - c.len() % 3;
        for t in c.agents[..whole].chunks_exact(3) {
            triples.push([t[0], t[1], t[2]]);
        }
        surplus.extend_from_slice(&c.agents[whole..]);
    }
    Ok((triples, SurplusPool::new(graph, surplus)?))
}

/// `{w1, r1, r2}` and `{w2, r3, r4}` for the 4-cycle `(r1, r2, r3, r4)`.
pub fn one_c4_two_singles(cycle: &Component, w1: Agent, w2: Agent) -> Result<[Triple; 2]> {
    if !cycle.is_four_cycle() {
        return Err(Error::InvalidInput("expected a 4-cycle".into()));
    }
    let r = &cycle.agents;
    if w1 == w2 || r.contains(&w1) || r.contains(&w2) {
        return Err(Error::InvalidInput(format!(
            "agents {} and {} must be distinct and outside the 4-cycle",
            w1 + 1,
            w2 + 1
        )));
    }
    Ok([[w1, r[0], r[1]], [w2, r[2], r[3]]])
}

/// Interleaves 4-cycles three at a time into four triples per block.
pub fn multiple_of_three_c4s(cycles: &[&Component]) -> Result<Vec<Triple>> {
    if !cycles.len().is_multiple_of(3) {
        return Err(Error::InvalidInput(format!(
            "{} 4-cycles is not a multiple of three",
            cycles.len()
        )));
    }
    if let Some(c) = cycles.iter().find(|c| !c.is_four_cycle()) {
        return Err(Error::InvalidInput(format!(
            "component containing agent {} is not a 4-cycle",
            c.min_agent() + 1
        )));
    }
    let mut out = Vec::with_capacity(cycles.len() / 3 * 4);
    for block in cycles.chunks_exact(3) {
        let (a, b, c) = (&block[0].agents, &block[1].agents, &block[2].agents);
        out.push([a[0], a[1], b[0]]);
        out.push([a[2], a[3], b[3]]);
        out.push([b[1], c[0], c[1]]);
        out.push([b[2], c[2], c[3]]);
    }
    Ok(out)
}

/// Groups the pool into triples, each built around an adjacent pair when possible.
pub fn configure_surplus(pool: &SurplusPool) -> Result<Vec<Triple>> {
    if !pool.len().is_multiple_of(3) {
        return Err(Error::InvalidInput(format!(
            "surplus pool of {} agents is not divisible by three",
            pool.len()
        )));
    }
    let need = pool.len() / 3;
    let adjacent = pool.adjacent_pairs();
    let mut seeds: Vec<(Agent, Agent)> = if adjacent.len() >= need {
        adjacent[..need].to_vec()
    } else {
        let lonely: Vec<Agent> = (0..pool.len())
            .filter(|&i| pool.induced_degree(i) == 0)
            .map(|i| pool.agents[i])
            .collect();
        let extra = need - adjacent.len();
        let mut seeds = adjacent;
        seeds.extend(lonely[..2 * extra].chunks_exact(2).map(|p| (p[0], p[1])));
        seeds
    };
    let mut used = vec![false; pool.len()];
    for &(a, b) in &seeds {
        for x in [a, b] {
            used[pool
                .agents
                .binary_search(&x)
                .expect("seed agents come from the pool")] = true;
        }
    }
    let rest = pool
        .agents
        .iter()
        .zip(&used)
        .filter(|(_, &u)| !u)
        .map(|(&a, _)| a);
    Ok(seeds
        .drain(..)
        .zip(rest)
        .map(|((a, b), y)| [a, b, y])
        .collect())
}

/// `k` pool agents of least total induced degree, returned ascending.
///
/// Isolated pool agents come first in ascending order, then adjacent pairs
/// whole, ordered by their smaller member. At most one pair is split, so at
/// most one agent is left in the pool without its partner.
pub fn pick_low_degree(pool: &SurplusPool, k: usize) -> Result<Vec<Agent>> {
    if k > pool.len() {
        return Err(Error::InvalidInput(format!(
            "cannot pick {k} agents from a pool of {}",
            pool.len()
        )));
    }
    let lonely = (0..pool.len())
        .filter(|&i| pool.induced_degree(i) == 0)
        .map(|i| pool.agents[i]);
    let paired = pool.adjacent_pairs().into_iter().flat_map(|(a, b)| [a, b]);
    let mut picked: Vec<Agent> = lonely.chain(paired).take(k).collect();
    picked.sort_unstable();
    Ok(picked)
}

/// Exactly k ≥ 2 disjoint 4-cycles plus exactly one isolated agent.
pub fn detect_wj_no_family(decomp: &ComponentDecomposition) -> bool {
    let comps = decomp.components();
    let cycles = comps.iter().filter(|c| c.is_four_cycle()).count();
    let isolated = comps
        .iter()
        .filter(|c| c.kind == ComponentKind::Isolated)
        .count();
    cycles >= 2 && isolated == 1 && cycles + isolated == comps.len()
}

/// Solves wjEF for a binary symmetric game whose underlying graph has maximum degree 2.
pub fn solve_wjef_maxdeg2(game: &Ashg) -> Result<SolveOutcome> {
    let graph = underlying_graph(game)?;
    let decomp = decompose(&graph)?;
    let outcome = solve_wjef_components(&graph, &decomp)?;
    if let SolveOutcome::Partition(pi) = &outcome {
        debug_assert!(satisfies(game, pi, Concept::Wjef));
    }
    Ok(outcome)
}

/// The main algorithm on a precomputed graph and decomposition.
pub fn solve_wjef_components(
    graph: &UnderlyingGraph,
    decomp: &ComponentDecomposition,
) -> Result<SolveOutcome> {
    let n = graph.num_agents();
    if n == 0 || !n.is_multiple_of(3) {
        return Err(Error::AgentCount(n));
    }
    let (cycles, others): (Vec<&Component>, Vec<&Component>) =
        decomp.components().iter().partition(|c| c.is_four_cycle());
    let (mut t, s) = non_c4_components(graph, &others)?;

    let mut pi: Vec<Triple> = Vec::with_capacity(n / 3);
    let (used, s_hat): (usize, Vec<Agent>) = match cycles.len() % 3 {
        2 => {
            let w = if s.len() >= 4 {
                pick_low_degree(&s, 4)?
            } else if !t.is_empty() {
                debug_assert_eq!(s.len(), 1);
                let pick = (0..t.len())
                    .min_by_key(|&i| t[i].iter().min().copied())
                    .expect("t is nonempty");
                let hat = t.remove(pick);
                vec![s.agents()[0], hat[0], hat[1], hat[2]]
            } else {
                return Ok(SolveOutcome::NoneExists {
                    certificate: Certificate::FourCycleFamily,
                });
            };
            pi.extend(one_c4_two_singles(cycles[0], w[0], w[1])?);
            pi.extend(one_c4_two_singles(cycles[1], w[2], w[3])?);
            (2, remove_all(s.agents(), &w))
        }
        1 => {
            let w = pick_low_degree(&s, 2)?;
            pi.extend(one_c4_two_singles(cycles[0], w[0], w[1])?);
            (1, remove_all(s.agents(), &w))
        }
        _ => (0, s.agents().to_vec()),
    };
    pi.extend(multiple_of_three_c4s(&cycles[used..])?);
    pi.extend(t);
    pi.extend(configure_surplus(&SurplusPool::new(graph, s_hat)?)?);
    Ok(SolveOutcome::Partition(PartitionIntoTriples::new(n, pi)?))
}

fn remove_all(from: &[Agent], drop: &[Agent]) -> Vec<Agent> {
    from.iter().copied().filter(|a| !drop.contains(a)).collect()
}
