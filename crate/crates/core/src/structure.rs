//! The underlying graph of a binary symmetric game and its decomposition into
//! isolated agents, paths and cycles.

use crate::error::{Error, Result};
use crate::game::{Agent, Ashg};

/// Undirected graph with an edge wherever two agents value each other at 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnderlyingGraph {
    adjacency: Vec<Vec<Agent>>,
}

impl UnderlyingGraph {
    /// Builds a graph directly from an edge list. Duplicate edges are merged.
    pub fn from_edges(num_agents: usize, edges: &[(Agent, Agent)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); num_agents];
        for &(a, b) in edges {
            if a >= num_agents || b >= num_agents {
                return Err(Error::UnknownAgent {
                    agent: a.max(b) + 1,
                    num_agents,
                });
            }
            if a == b {
                return Err(Error::InvalidInput(format!("self-loop at agent {}", a + 1)));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(UnderlyingGraph { adjacency })
    }

    pub fn num_agents(&self) -> usize {
        self.adjacency.len()
    }

    /// Neighbours of `agent` in ascending order.
    pub fn neighbours(&self, agent: Agent) -> &[Agent] {
        &self.adjacency[agent]
    }

    pub fn degree(&self, agent: Agent) -> usize {
        self.adjacency[agent].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, a: Agent, b: Agent) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (Agent, Agent)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(a, list)| list.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
    }
}

/// The underlying graph of a binary symmetric game.
pub fn underlying_graph(game: &Ashg) -> Result<UnderlyingGraph> {
    let n = game.num_agents();
    if !game.is_binary() || !game.is_symmetric() {
        for i in 0..n {
            for j in 0..n {
                let v = game.value(i, j);
                if v != 0 && v != 1 {
                    return Err(Error::Precondition(format!(
                        "game is not binary: v({}, {}) = {v}",
                        i + 1,
                        j + 1
                    )));
                }
                if v != game.value(j, i) {
                    return Err(Error::Precondition(format!(
                        "game is not symmetric: v({}, {}) = {v} but v({}, {}) = {}",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1,
                        game.value(j, i)
                    )));
                }
            }
        }
    }
    let adjacency = (0..n)
        .map(|i| (0..n).filter(|&j| game.value(i, j) == 1).collect())
        .collect();
    Ok(UnderlyingGraph { adjacency })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    Isolated,
    Path,
    Cycle,
}

/// A connected component listed in walk order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentKind,
    pub agents: Vec<Agent>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }

    pub fn is_four_cycle(&self) -> bool {
        self.kind == ComponentKind::Cycle && self.agents.len() == 4
    }

    pub fn min_agent(&self) -> Agent {
        self.agents.iter().copied().min().unwrap_or(usize::MAX)
    }
}

/// Components of a graph of maximum degree at most 2, ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentDecomposition {
    components: Vec<Component>,
    component_of: Vec<usize>,
}

impl ComponentDecomposition {
    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, agent: Agent) -> usize {
        self.component_of[agent]
    }

    pub fn num_agents(&self) -> usize {
        self.component_of.len()
    }

    pub fn census(&self) -> Census {
        component_census(self)
    }
}

/// Splits a graph of maximum degree at most 2 into isolated agents, paths and cycles.
///
/// Paths start at their smaller endpoint. Cycles start at their smallest
/// member and continue toward its smaller neighbour.
pub fn decompose(graph: &UnderlyingGraph) -> Result<ComponentDecomposition> {
    let n = graph.num_agents();
    if let Some(v) = (0..n).find(|&v| graph.degree(v) > 2) {
        return Err(Error::Precondition(format!(
            "agent {} has degree {} in the underlying graph; at most 2 is supported",
            v + 1,
            graph.degree(v)
        )));
    }
    let mut component_of = vec![usize::MAX; n];
    let mut visited = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let members = collect_component(graph, start, &mut visited);
        let component = if members.len() == 1 {
            Component {
                kind: ComponentKind::Isolated,
                agents: members,
            }
        } else if let Some(&end) = members.iter().find(|&&v| graph.degree(v) == 1) {
            Component {
                kind: ComponentKind::Path,
                agents: walk(graph, end, None, members.len()),
            }
        } else {
            let first = graph.neighbours(start)[0];
            Component {
                kind: ComponentKind::Cycle,
                agents: walk(graph, start, Some(first), members.len()),
            }
        };
        for &a in &component.agents {
            component_of[a] = components.len();
        }
        components.push(component);
    }
    Ok(ComponentDecomposition {
        components,
        component_of,
    })
}

/// Members of the component containing `start`, ascending.
fn collect_component(graph: &UnderlyingGraph, start: Agent, visited: &mut [bool]) -> Vec<Agent> {
    visited[start] = true;
    let mut seen = vec![start];
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in graph.neighbours(v) {
            if !visited[w] {
                visited[w] = true;
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.sort_unstable();
    seen
}

/// Walks `len` vertices from `start`, optionally forcing the first step.
fn walk(graph: &UnderlyingGraph, start: Agent, first: Option<Agent>, len: usize) -> Vec<Agent> {
    let mut order = Vec::with_capacity(len);
    order.push(start);
    let mut prev = start;
    let mut cur = match first {
        Some(f) => f,
        None => graph.neighbours(start)[0],
    };
    while order.len() < len {
        order.push(cur);
        let next = graph.neighbours(cur).iter().copied().find(|&w| w != prev);
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
            }
            None => break,
        }
    }
    order
}

/// Component counts by size class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Census {
    /// Isolated agents.
    pub p: usize,
    /// Non-isolated components whose size is 1 mod 3.
    pub q: usize,
    /// Components whose size is 2 mod 3.
    pub r: usize,
    /// Components whose size is 0 mod 3.
    pub s: usize,
}

pub fn component_census(decomp: &ComponentDecomposition) -> Census {
    let mut census = Census::default();
    for c in decomp.components() {
        match (c.kind, c.len() % 3) {
            (ComponentKind::Isolated, _) => census.p += 1,
            (_, 1) => census.q += 1,
            (_, 2) => census.r += 1,
            _ => census.s += 1,
        }
    }
    census
}
