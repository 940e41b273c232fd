//! Seeded instance families. Output depends only on the parameters and the seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::game::{Agent, Ashg};

/// `k` disjoint 4-cycles plus one isolated agent, which has no wj-envy-free partition.
///
/// Cycle `i` is agents `4i..4i+4` in cyclic order; the isolated agent is last.
/// `4k + 1` must be a multiple of 3, so `k ≡ 2 (mod 3)`.
pub fn wj_no(k: usize) -> Result<Ashg> {
    if k < 2 || !(4 * k + 1).is_multiple_of(3) {
        return Err(Error::InvalidInput(format!(
            "the family needs k >= 2 with 4k + 1 divisible by 3, got k = {k}"
        )));
    }
    let edges: Vec<(Agent, Agent)> = (0..k)
        .flat_map(|c| (0..4).map(move |s| (4 * c + s, 4 * c + (s + 1) % 4)))
        .collect();
    Ashg::from_edges(4 * k + 1, &edges)
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(3) {
        return Err(Error::AgentCount(n));
    }
    Ok(())
}

fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidInput(format!(
            "density {density} is outside [0, 1]"
        )));
    }
    Ok(())
}

/// Component lengths and kinds of a random maximum-degree-2 graph on `n` agents.
fn component_plan(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, bool)> {
    let mut left = n;
    let mut plan = Vec::new();
    while left > 0 {
        let len = rng.gen_range(1..=left.min(8) as u64) as usize;
        let cycle = len >= 3 && rng.gen_bool(0.5);
        plan.push((len, cycle));
        left -= len;
    }
    plan
}

/// A random binary symmetric game whose underlying graph is a disjoint union of
/// paths, cycles and isolated agents, with agents shuffled.
pub fn paths_cycles(n: usize, seed: u64) -> Result<Ashg> {
    check_size(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label: Vec<Agent> = (0..n).collect();
    label.shuffle(&mut rng);
    let mut edges = Vec::new();
    let mut next = 0;
    for (len, cycle) in component_plan(n, &mut rng) {
        let members = &label[next..next + len];
        edges.extend(members.windows(2).map(|w| (w[0], w[1])));
        if cycle {
            edges.push((members[len - 1], members[0]));
        }
        next += len;
    }
    Ashg::from_edges(n, &edges)
}

/// Each ordered pair independently valued 1 with probability `density`.
pub fn random_binary(n: usize, density: f64, seed: u64) -> Result<Ashg> {
    check_size(n)?;
    check_density(density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ashg::from_fn(n, |_, _| i64::from(rng.gen_bool(density)))
}

/// Each unordered pair independently joined with probability `density`.
pub fn random_binary_symmetric(n: usize, density: f64, seed: u64) -> Result<Ashg> {
    check_size(n)?;
    check_density(density)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    Ashg::from_edges(n, &edges)
}
