//! Utilities and the solution-concept checkers.
//!
//! Everything here is a pure function of a game and a partition. The solvers
//! never trust their own output: each one is re-checked through this module.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::{Agent, Ashg, PartitionIntoTriples, Triple};

/// A solution concept for partitions into triples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum Concept {
    /// Envy-freeness.
    Ef,
    /// Weakly-justified-envy-freeness.
    Wjef,
    /// Justified-envy-freeness.
    Jef,
    /// No blocking triple.
    Stable,
}

impl Concept {
    /// The weakest envy kind that violates this concept, or `None` for stability.
    pub fn envy_threshold(self) -> Option<EnvyKind> {
        match self {
            Concept::Ef => Some(EnvyKind::Plain),
            Concept::Wjef => Some(EnvyKind::WeaklyJustified),
            Concept::Jef => Some(EnvyKind::Justified),
            Concept::Stable => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Concept::Ef => "ef",
            Concept::Wjef => "wjef",
            Concept::Jef => "jef",
            Concept::Stable => "stable",
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Concept {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ef" => Ok(Concept::Ef),
            "wjef" => Ok(Concept::Wjef),
            "jef" => Ok(Concept::Jef),
            "stable" => Ok(Concept::Stable),
            other => Err(Error::InvalidInput(format!("unknown concept `{other}`"))),
        }
    }
}

/// How strongly one agent envies another. Variants are ordered by strength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EnvyKind {
    None,
    Plain,
    WeaklyJustified,
    Justified,
}

impl EnvyKind {
    pub fn name(self) -> &'static str {
        match self {
            EnvyKind::None => "none",
            EnvyKind::Plain => "plain",
            EnvyKind::WeaklyJustified => "weakly_justified",
            EnvyKind::Justified => "justified",
        }
    }
}

impl fmt::Display for EnvyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One envious ordered pair found by [`find_violations`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnvyWitness {
    pub envier: Agent,
    pub envied: Agent,
    pub kind: EnvyKind,
}

/// Swap-stability variants, from the strongest requirement on a deviation to the weakest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SwapVariant {
    /// A swap blocks when both agents strictly gain.
    StrictSwap,
    /// A swap blocks when one agent strictly gains and the other does not lose.
    Swap,
    /// A swap blocks when the total utility of the two agents strictly rises.
    SwapTu,
}

/// `Σ_{j ∈ coalition} v(agent, j)`; the agent itself contributes 0.
pub fn utility(game: &Ashg, agent: Agent, coalition: &[Agent]) -> Result<i64> {
    game.check_agent(agent)?;
    for &j in coalition {
        game.check_agent(j)?;
    }
    Ok(coalition.iter().map(|&j| game.value(agent, j)).sum())
}

/// The utility of `agent` for its own triple in `pi`.
#[inline]
pub fn partition_utility(game: &Ashg, pi: &PartitionIntoTriples, agent: Agent) -> i64 {
    let [a, b] = pi.mates(agent);
    game.value(agent, a) + game.value(agent, b)
}

/// Number of triples of `pi` meeting `agents`.
pub fn sigma(pi: &PartitionIntoTriples, agents: &[Agent]) -> Result<usize> {
    if agents.is_empty() {
        return Err(Error::InvalidInput("sigma of an empty agent set".into()));
    }
    let mut hit: Vec<usize> = Vec::with_capacity(agents.len());
    for &a in agents {
        if a >= pi.num_agents() {
            return Err(Error::UnknownAgent {
                agent: a + 1,
                num_agents: pi.num_agents(),
            });
        }
        hit.push(pi.triple_index(a));
    }
    hit.sort_unstable();
    hit.dedup();
    Ok(hit.len())
}

/// The strongest kind of envy `envier` has for `envied` under `pi`.
pub fn classify_envy(
    game: &Ashg,
    pi: &PartitionIntoTriples,
    envier: Agent,
    envied: Agent,
) -> Result<EnvyKind> {
    pi.check_game(game)?;
    game.check_agent(envier)?;
    game.check_agent(envied)?;
    if envier == envied {
        return Err(Error::InvalidInput(format!(
            "agent {} cannot envy itself",
            envier + 1
        )));
    }
    Ok(envy_kind(game, pi, envier, envied))
}

/// Unchecked core of [`classify_envy`].
#[inline]
pub(crate) fn envy_kind(game: &Ashg, pi: &PartitionIntoTriples, i: Agent, j: Agent) -> EnvyKind {
    if pi.same_triple(i, j) {
        return EnvyKind::None;
    }
    envy_against(game, partition_utility(game, pi, i), i, j, pi.mates(j))
}

/// Envy of `i` (currently at utility `current`) for `j`, whose triple-mates are `mates`.
#[inline]
pub(crate) fn envy_against(
    game: &Ashg,
    current: i64,
    i: Agent,
    j: Agent,
    mates: [Agent; 2],
) -> EnvyKind {
    let [k, l] = mates;
    if game.value(i, k) + game.value(i, l) <= current {
        return EnvyKind::None;
    }
    let dk = game.value(k, i) - game.value(k, j);
    let dl = game.value(l, i) - game.value(l, j);
    if dk > 0 && dl > 0 {
        EnvyKind::Justified
    } else if dk >= 0 && dl >= 0 {
        EnvyKind::WeaklyJustified
    } else {
        EnvyKind::Plain
    }
}

/// Every ordered pair whose envy meets the threshold of `concept`, ascending by `(envier, envied)`.
///
/// Stability is not an envy concept; use [`blocking_triples`] for it.
pub fn find_violations(
    game: &Ashg,
    pi: &PartitionIntoTriples,
    concept: Concept,
) -> Result<Vec<EnvyWitness>> {
    pi.check_game(game)?;
    let threshold = concept.envy_threshold().ok_or_else(|| {
        Error::InvalidInput("stability violations are blocking triples, not envy witnesses".into())
    })?;
    let n = game.num_agents();
    let mut out = Vec::new();
    for i in 0..n {
        let current = partition_utility(game, pi, i);
        for j in 0..n {
            if i == j || pi.same_triple(i, j) {
                continue;
            }
            let kind = envy_against(game, current, i, j, pi.mates(j));
            if kind >= threshold {
                out.push(EnvyWitness {
                    envier: i,
                    envied: j,
                    kind,
                });
            }
        }
    }
    Ok(out)
}

/// Whether `pi` satisfies `concept`, stopping at the first violation.
pub fn satisfies(game: &Ashg, pi: &PartitionIntoTriples, concept: Concept) -> bool {
    match concept.envy_threshold() {
        Some(threshold) => !has_envy(game, pi, threshold),
        None => first_blocking_triple(game, pi).is_none(),
    }
}

fn has_envy(game: &Ashg, pi: &PartitionIntoTriples, threshold: EnvyKind) -> bool {
    let n = game.num_agents();
    (0..n).any(|i| {
        let current = partition_utility(game, pi, i);
        (0..n).any(|j| {
            !pi.same_triple(i, j) && envy_against(game, current, i, j, pi.mates(j)) >= threshold
        })
    })
}

/// Whether every member of `triple` strictly prefers it to its triple in `pi`.
pub fn blocks(game: &Ashg, pi: &PartitionIntoTriples, triple: &Triple) -> Result<bool> {
    pi.check_game(game)?;
    for &a in triple {
        game.check_agent(a)?;
    }
    let [a, b, c] = *triple;
    if a == b || b == c || a == c {
        return Err(Error::InvalidInput(format!(
            "triple {{{}, {}, {}}} has repeated members",
            a + 1,
            b + 1,
            c + 1
        )));
    }
    let current: Vec<i64> = triple
        .iter()
        .map(|&x| partition_utility(game, pi, x))
        .collect();
    Ok(blocks_with(game, &current, a, b, c))
}

#[inline]
fn blocks_with(game: &Ashg, current: &[i64], a: Agent, b: Agent, c: Agent) -> bool {
    game.value(a, b) + game.value(a, c) > current[0]
        && game.value(b, a) + game.value(b, c) > current[1]
        && game.value(c, a) + game.value(c, b) > current[2]
}

/// True iff no triple of agents blocks `pi`.
pub fn is_stable(game: &Ashg, pi: &PartitionIntoTriples) -> Result<bool> {
    pi.check_game(game)?;
    Ok(first_blocking_triple(game, pi).is_none())
}

/// All blocking triples, each ascending, in lexicographic order.
pub fn blocking_triples(game: &Ashg, pi: &PartitionIntoTriples) -> Result<Vec<Triple>> {
    pi.check_game(game)?;
    let mut out = Vec::new();
    scan_blocking(game, pi, |t| {
        out.push(t);
        false
    });
    Ok(out)
}

fn first_blocking_triple(game: &Ashg, pi: &PartitionIntoTriples) -> Option<Triple> {
    let mut found = None;
    scan_blocking(game, pi, |t| {
        found = Some(t);
        true
    });
    found
}

/// Calls `visit` on each blocking triple until it returns true.
fn scan_blocking(game: &Ashg, pi: &PartitionIntoTriples, mut visit: impl FnMut(Triple) -> bool) {
    let n = game.num_agents();
    let current: Vec<i64> = (0..n).map(|x| partition_utility(game, pi, x)).collect();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if game.value(a, b) + game.value(a, c) > current[a]
                    && game.value(b, a) + game.value(b, c) > current[b]
                    && game.value(c, a) + game.value(c, b) > current[c]
                    && visit([a, b, c])
                {
                    return;
                }
            }
        }
    }
}

/// True iff no cross-triple pair of agents has a blocking swap under `variant`.
pub fn swap_stability_check(
    game: &Ashg,
    pi: &PartitionIntoTriples,
    variant: SwapVariant,
) -> Result<bool> {
    pi.check_game(game)?;
    let n = game.num_agents();
    let current: Vec<i64> = (0..n).map(|x| partition_utility(game, pi, x)).collect();
    let gain = |x: Agent, y: Agent| {
        let [k, l] = pi.mates(y);
        game.value(x, k) + game.value(x, l) - current[x]
    };
    for i in 0..n {
        for j in i + 1..n {
            if pi.same_triple(i, j) {
                continue;
            }
            let (di, dj) = (gain(i, j), gain(j, i));
            let blocking = match variant {
                SwapVariant::StrictSwap => di > 0 && dj > 0,
                SwapVariant::Swap => (di > 0 && dj >= 0) || (di >= 0 && dj > 0),
                SwapVariant::SwapTu => di + dj > 0,
            };
            if blocking {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The eight-valuation running example; agents α1..α6 are 0..5.
    fn figure_one() -> (Ashg, PartitionIntoTriples) {
        let game = Ashg::from_entries(
            6,
            [
                (0, 1, 4),
                (0, 2, 1),
                (0, 4, 3),
                (0, 5, 3),
                (4, 0, 2),
                (4, 3, 2),
                (5, 0, 3),
                (5, 3, 2),
            ],
        )
        .unwrap();
        let pi = PartitionIntoTriples::new(6, vec![[0, 1, 2], [3, 4, 5]]).unwrap();
        (game, pi)
    }

    #[test]
    fn utilities_match_the_running_example() {
        let (g, _) = figure_one();
        assert_eq!(utility(&g, 0, &[1, 2]).unwrap(), 5);
        assert_eq!(utility(&g, 0, &[4, 5]).unwrap(), 6);
        assert_eq!(utility(&g, 3, &[3]).unwrap(), 0);
        assert!(matches!(
            utility(&g, 9, &[1]),
            Err(Error::UnknownAgent { agent: 10, .. })
        ));
    }

    #[test]
    fn envy_of_a1_for_a4_is_weak_only() {
        let (g, pi) = figure_one();
        assert_eq!(
            classify_envy(&g, &pi, 0, 3).unwrap(),
            EnvyKind::WeaklyJustified
        );
        assert_eq!(classify_envy(&g, &pi, 0, 1).unwrap(), EnvyKind::None);
        assert!(find_violations(&g, &pi, Concept::Jef).unwrap().is_empty());
        let wj = find_violations(&g, &pi, Concept::Wjef).unwrap();
        assert!(wj.contains(&EnvyWitness {
            envier: 0,
            envied: 3,
            kind: EnvyKind::WeaklyJustified
        }));
    }

    #[test]
    fn alpha5_is_indifferent_in_the_running_example() {
        let (g, pi) = figure_one();
        assert_eq!(partition_utility(&g, &pi, 4), 2);
        assert_eq!(utility(&g, 4, &[0, 5]).unwrap(), 2);
        assert!(!blocks(&g, &pi, &[0, 4, 5]).unwrap());
        assert!(!blocks(&g, &pi, &[0, 1, 2]).unwrap());
        assert!(blocks(&g, &pi, &[0, 0, 5]).is_err());
    }

    #[test]
    fn a_mutual_triangle_blocks() {
        let g = Ashg::from_edges(9, &[(0, 3), (3, 6), (0, 6)]).unwrap();
        let pi = PartitionIntoTriples::ascending(9).unwrap();
        assert!(blocks(&g, &pi, &[6, 0, 3]).unwrap());
        assert!(!is_stable(&g, &pi).unwrap());
        assert_eq!(blocking_triples(&g, &pi).unwrap(), vec![[0, 3, 6]]);
        assert!(!satisfies(&g, &pi, Concept::Stable));
    }

    #[test]
    fn zero_game_satisfies_everything() {
        let g = Ashg::zero(6).unwrap();
        let pi = PartitionIntoTriples::ascending(6).unwrap();
        for c in [Concept::Ef, Concept::Wjef, Concept::Jef, Concept::Stable] {
            assert!(satisfies(&g, &pi, c));
        }
        for v in [
            SwapVariant::StrictSwap,
            SwapVariant::Swap,
            SwapVariant::SwapTu,
        ] {
            assert!(swap_stability_check(&g, &pi, v).unwrap());
        }
        assert!(blocking_triples(&g, &pi).unwrap().is_empty());
    }

    #[test]
    fn sigma_counts_triples() {
        let pi = PartitionIntoTriples::ascending(9).unwrap();
        assert_eq!(sigma(&pi, &[3, 4, 5]).unwrap(), 1);
        assert_eq!(sigma(&pi, &[0, 3, 6]).unwrap(), 3);
        assert_eq!(sigma(&pi, &[0, 1, 6]).unwrap(), 2);
        assert!(sigma(&pi, &[]).is_err());
    }

    #[test]
    fn swap_variants_on_a_mutual_gain() {
        // 0 and 3 each prefer the other's partners.
        let g = Ashg::from_entries(6, [(0, 4, 1), (3, 1, 1)]).unwrap();
        let pi = PartitionIntoTriples::ascending(6).unwrap();
        assert!(!swap_stability_check(&g, &pi, SwapVariant::StrictSwap).unwrap());
        assert!(!swap_stability_check(&g, &pi, SwapVariant::Swap).unwrap());
        assert!(!swap_stability_check(&g, &pi, SwapVariant::SwapTu).unwrap());

        let g = Ashg::from_entries(6, [(0, 4, 1)]).unwrap();
        assert!(swap_stability_check(&g, &pi, SwapVariant::StrictSwap).unwrap());
        assert!(!swap_stability_check(&g, &pi, SwapVariant::Swap).unwrap());
    }
}
