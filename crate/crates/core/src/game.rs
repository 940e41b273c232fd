//! The game model: agents, valuations and partitions into triples.
//!
//! Agents are 0-indexed everywhere inside the library. The text formats in
//! [`crate::io`] are 1-indexed and convert at the parser boundary.

use std::fmt;

use crate::error::{Error, Result};

/// Internal agent index.
pub type Agent = usize;

/// Three distinct agents.
pub type Triple = [Agent; 3];

/// An additively separable hedonic game whose coalitions must all have size three.
///
/// Valuations are stored densely. The property flags are derived once at
/// construction and never set independently.
#[derive(Clone, PartialEq, Eq)]
pub struct Ashg {
    num_agents: usize,
    values: Vec<i64>,
    props: Properties,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Properties {
    binary: bool,
    ternary: bool,
    symmetric: bool,
    min_value: i64,
    max_value: i64,
}

impl Ashg {
    /// Builds a game from a row-major `num_agents × num_agents` valuation table.
    pub fn new(num_agents: usize, values: Vec<i64>) -> Result<Self> {
        if num_agents == 0 || !num_agents.is_multiple_of(3) {
            return Err(Error::AgentCount(num_agents));
        }
        if values.len() != num_agents * num_agents {
            return Err(Error::InvalidInput(format!(
                "valuation table has {} entries, expected {}",
                values.len(),
                num_agents * num_agents
            )));
        }
        for i in 0..num_agents {
            if values[i * num_agents + i] != 0 {
                return Err(Error::SelfValuation(i + 1));
            }
        }
        let props = Properties::derive(num_agents, &values);
        // A utility sums at most two valuations; comparisons add at most two more.
        let max_abs = props
            .min_value
            .unsigned_abs()
            .max(props.max_value.unsigned_abs());
        if max_abs
            .checked_mul(num_agents as u64)
            .is_none_or(|bound| bound > i64::MAX as u64 / 4)
        {
            return Err(Error::ValuationOverflow);
        }
        Ok(Ashg {
            num_agents,
            values,
            props,
        })
    }

    /// The game in which every valuation is zero.
    pub fn zero(num_agents: usize) -> Result<Self> {
        Self::new(num_agents, vec![0; num_agents * num_agents])
    }

    /// Builds a game from sparse `(from, to, value)` entries; omitted pairs are 0.
    /// Later entries overwrite earlier ones.
    pub fn from_entries<I>(num_agents: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Agent, Agent, i64)>,
    {
        let mut values = vec![0; num_agents * num_agents];
        for (i, j, v) in entries {
            for a in [i, j] {
                if a >= num_agents {
                    return Err(Error::UnknownAgent {
                        agent: a + 1,
                        num_agents,
                    });
                }
            }
            values[i * num_agents + j] = v;
        }
        Self::new(num_agents, values)
    }

    /// Builds a game from a valuation function.
    pub fn from_fn(num_agents: usize, mut f: impl FnMut(Agent, Agent) -> i64) -> Result<Self> {
        let mut values = vec![0; num_agents * num_agents];
        for i in 0..num_agents {
            for j in 0..num_agents {
                if i != j {
                    values[i * num_agents + j] = f(i, j);
                }
            }
        }
        Self::new(num_agents, values)
    }

    /// Builds a binary symmetric game from an undirected edge list.
    pub fn from_edges(num_agents: usize, edges: &[(Agent, Agent)]) -> Result<Self> {
        Self::from_entries(
            num_agents,
            edges.iter().flat_map(|&(a, b)| [(a, b, 1), (b, a, 1)]),
        )
    }

    pub fn num_agents(&self) -> usize {
        self.num_agents
    }

    /// Number of triples in any partition of this game.
    pub fn num_triples(&self) -> usize {
        self.num_agents / 3
    }

    /// The valuation `agent` has for `other`.
    #[inline]
    pub fn value(&self, agent: Agent, other: Agent) -> i64 {
        self.values[agent * self.num_agents + other]
    }

    pub fn is_binary(&self) -> bool {
        self.props.binary
    }

    pub fn is_ternary(&self) -> bool {
        self.props.ternary
    }

    pub fn is_symmetric(&self) -> bool {
        self.props.symmetric
    }

    pub fn min_value(&self) -> i64 {
        self.props.min_value
    }

    pub fn max_value(&self) -> i64 {
        self.props.max_value
    }

    /// Maximum degree of the underlying graph, for binary symmetric games only.
    pub fn max_degree(&self) -> Option<usize> {
        if !(self.props.binary && self.props.symmetric) {
            return None;
        }
        (0..self.num_agents)
            .map(|i| self.row(i).iter().filter(|&&v| v == 1).count())
            .max()
    }

    /// The valuations of one agent, indexed by the other agent.
    pub fn row(&self, agent: Agent) -> &[i64] {
        &self.values[agent * self.num_agents..(agent + 1) * self.num_agents]
    }

    /// All nonzero valuations in ascending `(from, to)` order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (Agent, Agent, i64)> + '_ {
        (0..self.num_agents).flat_map(move |i| {
            self.row(i)
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(move |(j, &v)| (i, j, v))
        })
    }

    pub fn check_agent(&self, agent: Agent) -> Result<()> {
        if agent < self.num_agents {
            Ok(())
        } else {
            Err(Error::UnknownAgent {
                agent: agent + 1,
                num_agents: self.num_agents,
            })
        }
    }

    /// Relabels agents: agent `i` of `self` becomes agent `perm[i]` of the result.
    pub fn permuted(&self, perm: &[Agent]) -> Result<Self> {
        check_permutation(perm, self.num_agents)?;
        let n = self.num_agents;
        let mut values = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                values[perm[i] * n + perm[j]] = self.value(i, j);
            }
        }
        Self::new(n, values)
    }

    /// The subgame induced by `agents`; agent `agents[k]` becomes agent `k`.
    pub fn restrict(&self, agents: &[Agent]) -> Result<Self> {
        for &a in agents {
            self.check_agent(a)?;
        }
        Self::from_fn(agents.len(), |i, j| self.value(agents[i], agents[j]))
    }
}

impl fmt::Debug for Ashg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ashg")
            .field("num_agents", &self.num_agents)
            .field("binary", &self.props.binary)
            .field("symmetric", &self.props.symmetric)
            .field("nonzero", &self.nonzero_entries().collect::<Vec<_>>())
            .finish()
    }
}

impl Properties {
    fn derive(n: usize, values: &[i64]) -> Self {
        let mut props = Properties {
            binary: true,
            ternary: true,
            symmetric: true,
            min_value: 0,
            max_value: 0,
        };
        for i in 0..n {
            for j in 0..n {
                let v = values[i * n + j];
                props.binary &= v == 0 || v == 1;
                props.ternary &= (0..=2).contains(&v);
                props.symmetric &= v == values[j * n + i];
                props.min_value = props.min_value.min(v);
                props.max_value = props.max_value.max(v);
            }
        }
        props
    }
}

fn check_permutation(perm: &[Agent], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidInput(format!(
            "permutation has length {}, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidInput("not a permutation".into()));
        }
    }
    Ok(())
}

/// A partition of all agents into disjoint triples.
///
/// Stored canonically: members ascending within each triple, triples ordered by
/// their smallest member. Two partitions are equal iff they group agents alike.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionIntoTriples {
    triples: Vec<Triple>,
    owner: Vec<usize>,
}

impl PartitionIntoTriples {
    pub fn new(num_agents: usize, triples: Vec<Triple>) -> Result<Self> {
        if num_agents == 0 || !num_agents.is_multiple_of(3) {
            return Err(Error::AgentCount(num_agents));
        }
        if triples.len() * 3 != num_agents {
            return Err(Error::InvalidPartition(format!(
                "{} triples cannot cover {num_agents} agents",
                triples.len()
            )));
        }
        let mut seen = vec![false; num_agents];
        for t in &triples {
            for &a in t {
                if a >= num_agents {
                    return Err(Error::UnknownAgent {
                        agent: a + 1,
                        num_agents,
                    });
                }
                if std::mem::replace(&mut seen[a], true) {
                    return Err(Error::InvalidPartition(format!(
                        "agent {} appears more than once",
                        a + 1
                    )));
                }
            }
        }
        Ok(Self::from_valid(num_agents, triples))
    }

    fn from_valid(num_agents: usize, mut triples: Vec<Triple>) -> Self {
        for t in &mut triples {
            t.sort_unstable();
        }
        triples.sort_unstable();
        let mut owner = vec![0; num_agents];
        for (k, t) in triples.iter().enumerate() {
            for &a in t {
                owner[a] = k;
            }
        }
        PartitionIntoTriples { triples, owner }
    }

    /// `{0,1,2}, {3,4,5}, …`
    pub fn ascending(num_agents: usize) -> Result<Self> {
        Self::new(
            num_agents,
            (0..num_agents / 3)
                .map(|k| [3 * k, 3 * k + 1, 3 * k + 2])
                .collect(),
        )
    }

    pub fn num_agents(&self) -> usize {
        self.owner.len()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    /// Index into [`Self::triples`] of the triple holding `agent`.
    #[inline]
    pub fn triple_index(&self, agent: Agent) -> usize {
        self.owner[agent]
    }

    /// The triple `π(agent)`.
    #[inline]
    pub fn coalition(&self, agent: Agent) -> &Triple {
        &self.triples[self.owner[agent]]
    }

    /// The two other members of `agent`'s triple.
    #[inline]
    pub fn mates(&self, agent: Agent) -> [Agent; 2] {
        mates_in(self.coalition(agent), agent)
    }

    pub fn same_triple(&self, a: Agent, b: Agent) -> bool {
        self.owner[a] == self.owner[b]
    }

    pub fn contains_triple(&self, triple: &Triple) -> bool {
        let mut t = *triple;
        t.sort_unstable();
        t.iter().all(|&a| a < self.owner.len()) && self.triples[self.owner[t[0]]] == t
    }

    /// The partition with `a` and `b` exchanging places.
    pub fn swapped(&self, a: Agent, b: Agent) -> Self {
        let (ta, tb) = (self.owner[a], self.owner[b]);
        if ta == tb {
            return self.clone();
        }
        let mut triples = self.triples.clone();
        for x in triples[ta].iter_mut() {
            if *x == a {
                *x = b;
            }
        }
        for x in triples[tb].iter_mut() {
            if *x == b {
                *x = a;
            }
        }
        Self::from_valid(self.owner.len(), triples)
    }

    /// Relabels agents through `perm` (agent `i` becomes `perm[i]`).
    pub fn permuted(&self, perm: &[Agent]) -> Result<Self> {
        check_permutation(perm, self.owner.len())?;
        Ok(Self::from_valid(
            self.owner.len(),
            self.triples
                .iter()
                .map(|t| [perm[t[0]], perm[t[1]], perm[t[2]]])
                .collect(),
        ))
    }

    pub fn check_game(&self, game: &Ashg) -> Result<()> {
        if self.owner.len() != game.num_agents() {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} agents but the game has {}",
                self.owner.len(),
                game.num_agents()
            )));
        }
        Ok(())
    }
}

/// The two members of `triple` other than `agent`.
#[inline]
pub fn mates_in(triple: &Triple, agent: Agent) -> [Agent; 2] {
    match triple.iter().position(|&x| x == agent) {
        Some(0) => [triple[1], triple[2]],
        Some(1) => [triple[0], triple[2]],
        _ => [triple[0], triple[1]],
    }
}
