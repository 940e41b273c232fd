//! Envy-free partitions for binary symmetric games of maximum degree 2.
//!
//! An agent with utility 1 or more cannot envy anyone when every agent has at
//! most two friends, so the construction only has to give every non-isolated
//! agent one friend in its triple. Components of size `3k` are cut into
//! consecutive triples. A component of size `3k+2` leaves one adjacent pair,
//! which takes one isolated agent. A component of size `3k+1` (k ≥ 1) leaves
//! two adjacent pairs, which take two isolated agents. Such an envy-free
//! partition exists exactly when `2Q + R ≤ P`.

use crate::envy::{satisfies, Concept};
use crate::error::{Error, Result};
use crate::game::{Agent, Ashg, PartitionIntoTriples, Triple};
use crate::outcome::{Certificate, SolveOutcome};
use crate::structure::{decompose, underlying_graph, ComponentDecomposition, ComponentKind};

/// `2Q + R ≤ P` on the component census.
pub fn ef_exists(decomp: &ComponentDecomposition) -> bool {
    let c = decomp.census();
    2 * c.q + c.r <= c.p
}

/// Solves EF for a binary symmetric game whose underlying graph has maximum degree 2.
pub fn solve_ef_maxdeg2(game: &Ashg) -> Result<SolveOutcome> {
    let decomp = decompose(&underlying_graph(game)?)?;
    let (outcome, _) = solve_ef_components(&decomp)?;
    if let SolveOutcome::Partition(pi) = &outcome {
        debug_assert!(satisfies(game, pi, Concept::Ef));
    }
    Ok(outcome)
}

/// Runs the construction on a decomposition and reports the number of elementary
/// steps taken: one per component visited and one per agent placed.
pub fn solve_ef_components(decomp: &ComponentDecomposition) -> Result<(SolveOutcome, u64)> {
    let n = decomp.num_agents();
    if n == 0 || !n.is_multiple_of(3) {
        return Err(Error::AgentCount(n));
    }
    let mut steps = 0u64;
    if !ef_exists(decomp) {
        return Ok((
            SolveOutcome::NoneExists {
                certificate: Certificate::IsolatedShortfall,
            },
            steps,
        ));
    }

    let mut isolated = Vec::new();
    let mut q_parts = Vec::new();
    let mut r_parts = Vec::new();
    let mut triples: Vec<Triple> = Vec::with_capacity(n / 3);
    for c in decomp.components() {
        steps += 1;
        let a = &c.agents;
        match (c.kind, a.len() % 3) {
            (ComponentKind::Isolated, _) => isolated.push(a[0]),
            (_, 0) => chop(a, &mut triples, &mut steps),
            (_, 2) => r_parts.push(a),
            _ => q_parts.push(a),
        }
    }

    let mut pool = isolated.into_iter();
    let mut next_isolated = || pool.next().expect("isolated agents checked by the census");
    // Q components take isolated agents first, two each; R components follow.
    for q in q_parts {
        let k = q.len();
        chop(&q[..k - 4], &mut triples, &mut steps);
        triples.push([q[k - 4], q[k - 3], next_isolated()]);
        triples.push([q[k - 2], q[k - 1], next_isolated()]);
        steps += 6;
    }
    for r in r_parts {
        let k = r.len();
        chop(&r[..k - 2], &mut triples, &mut steps);
        triples.push([r[k - 2], r[k - 1], next_isolated()]);
        steps += 3;
    }
    let rest: Vec<Agent> = std::iter::from_fn(|| pool.next()).collect();
    chop(&rest, &mut triples, &mut steps);

    let pi = PartitionIntoTriples::new(n, triples)?;
    Ok((SolveOutcome::Partition(pi), steps))
}

fn chop(agents: &[Agent], out: &mut Vec<Triple>, steps: &mut u64) {
    for t in agents.chunks_exact(3) {
        out.push([t[0], t[1], t[2]]);
        *steps += 3;
    }
}
