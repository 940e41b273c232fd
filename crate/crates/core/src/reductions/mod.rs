//! Gadget constructions that turn combinatorial instances into games.
//!
//! Each builder returns the game together with a [`NameMap`] giving every agent
//! a gadget name, so that certificates can be traced back to the source
//! instance. Layouts are fixed: variable gadgets by variable, then clause
//! gadgets by clause, then any remaining blocks.

mod triangles;
mod x3sat;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::game::{Agent, Ashg};

pub use triangles::{
    dtc_no_instance, jef_partition_from_triangle_cover, pit_no_instance, reduce_dtc_to_jef_ternary,
    reduce_pit_to_jef_symmetric, triangle_cover_from_jef_partition, Flavor, TriangleCover,
    TriangleSource,
};
pub use x3sat::{
    ef_partition_from_exact_model, exact_model_from_ef_partition, exact_model_from_wjef_partition,
    reduce_x3sat_to_ef, reduce_x3sat_to_wjef, wjef_formula, wjef_partition_from_exact_model,
};

/// A positive exact-3-SAT formula in which every variable occurs in exactly three clauses.
///
/// Variables are 0-indexed. Each clause lists three distinct variables in file order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct X3SatFormula {
    num_variables: usize,
    clauses: Vec<[usize; 3]>,
}

impl X3SatFormula {
    pub fn new(num_variables: usize, clauses: Vec<[usize; 3]>) -> Result<Self> {
        if num_variables == 0 {
            return Err(Error::InvalidInput("formula has no variables".into()));
        }
        let mut seen = vec![0usize; num_variables];
        for (r, clause) in clauses.iter().enumerate() {
            for (p, &x) in clause.iter().enumerate() {
                if x >= num_variables {
                    return Err(Error::InvalidInput(format!(
                        "clause {}: variable {} out of range 1..={num_variables}",
                        r + 1,
                        x + 1
                    )));
                }
                if clause[..p].contains(&x) {
                    return Err(Error::InvalidInput(format!(
                        "clause {}: variable {} repeated",
                        r + 1,
                        x + 1
                    )));
                }
                seen[x] += 1;
                if seen[x] > 3 {
                    return Err(Error::InvalidInput(format!(
                        "clause {}: variable {} occurs in more than three clauses",
                        r + 1,
                        x + 1
                    )));
                }
            }
        }
        if let Some(x) = seen.iter().position(|&c| c != 3) {
            return Err(Error::InvalidInput(format!(
                "variable {} occurs in {} clauses, expected 3",
                x + 1,
                seen[x]
            )));
        }
        debug_assert_eq!(clauses.len(), num_variables);
        Ok(X3SatFormula {
            num_variables,
            clauses,
        })
    }

    pub fn num_variables(&self) -> usize {
        self.num_variables
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// `copies` disjoint copies; copy `c` renames variable `x` to `x + c·m`.
    pub fn replicated(&self, copies: usize) -> Self {
        let m = self.num_variables;
        let clauses = (0..copies)
            .flat_map(|c| self.clauses.iter().map(move |cl| cl.map(|x| x + c * m)))
            .collect();
        X3SatFormula {
            num_variables: m * copies,
            clauses,
        }
    }

    pub fn occurrences(&self) -> OccurrenceIndex {
        OccurrenceIndex::new(self)
    }

    /// Ok when `model` makes exactly one variable of every clause true.
    pub fn check_exact_model(&self, model: &[bool]) -> Result<()> {
        if model.len() != self.num_variables {
            return Err(Error::InvalidInput(format!(
                "model assigns {} variables, formula has {}",
                model.len(),
                self.num_variables
            )));
        }
        for (r, clause) in self.clauses.iter().enumerate() {
            let trues = clause.iter().filter(|&&x| model[x]).count();
            if trues != 1 {
                return Err(Error::InvalidInput(format!(
                    "clause {} has {trues} true literals under the model",
                    r + 1
                )));
            }
        }
        Ok(())
    }

    /// All exact models, by brute force over assignments (at most 20 variables).
    pub fn exact_models(&self) -> Result<Vec<Vec<bool>>> {
        let m = self.num_variables;
        if m > 20 {
            return Err(Error::InvalidInput(format!(
                "{m} variables is too many to enumerate"
            )));
        }
        Ok((0u32..1 << m)
            .map(|bits| (0..m).map(|x| bits >> x & 1 == 1).collect::<Vec<_>>())
            .filter(|model| self.check_exact_model(model).is_ok())
            .collect())
    }
}

/// Which occurrence (0, 1 or 2) of its variable each clause position is.
///
/// Occurrences are numbered in ascending clause order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccurrenceIndex {
    ordinals: Vec<[usize; 3]>,
    sites: Vec<[(usize, usize); 3]>,
}

impl OccurrenceIndex {
    fn new(formula: &X3SatFormula) -> Self {
        let mut count = vec![0usize; formula.num_variables];
        let mut sites = vec![[(0, 0); 3]; formula.num_variables];
        let ordinals = formula
            .clauses
            .iter()
            .enumerate()
            .map(|(r, clause)| {
                let mut ords = [0; 3];
                for (p, &x) in clause.iter().enumerate() {
                    ords[p] = count[x];
                    sites[x][count[x]] = (r, p);
                    count[x] += 1;
                }
                ords
            })
            .collect();
        OccurrenceIndex { ordinals, sites }
    }

    /// Ordinal of the variable sitting at `position` of clause `clause`.
    pub fn ordinal(&self, clause: usize, position: usize) -> usize {
        self.ordinals[clause][position]
    }

    /// `(clause, position)` of each occurrence of `variable`, by ordinal.
    pub fn sites(&self, variable: usize) -> [(usize, usize); 3] {
        self.sites[variable]
    }
}

/// A simple digraph on `3q` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    num_vertices: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    pub fn new(num_vertices: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        check_vertex_count(num_vertices)?;
        let mut seen = HashSet::new();
        for &(a, b) in &arcs {
            check_pair(num_vertices, a, b, "arc")?;
            if !seen.insert((a, b)) {
                return Err(Error::InvalidInput(format!(
                    "arc {} -> {} listed twice",
                    a + 1,
                    b + 1
                )));
            }
        }
        Ok(Digraph { num_vertices, arcs })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.arcs.contains(&(a, b))
    }
}

/// A simple undirected graph on `3q` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    num_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new(num_vertices: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        check_vertex_count(num_vertices)?;
        let mut seen = HashSet::new();
        for &(a, b) in &edges {
            check_pair(num_vertices, a, b, "edge")?;
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidInput(format!(
                    "edge {} -- {} listed twice",
                    a + 1,
                    b + 1
                )));
            }
        }
        Ok(UndirectedGraph {
            num_vertices,
            edges,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges
            .iter()
            .any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }
}

fn check_vertex_count(n: usize) -> Result<()> {
    if n == 0 || !n.is_multiple_of(3) {
        return Err(Error::InvalidInput(format!(
            "vertex count {n} is not a positive multiple of 3"
        )));
    }
    Ok(())
}

fn check_pair(n: usize, a: usize, b: usize, what: &str) -> Result<()> {
    for v in [a, b] {
        if v >= n {
            return Err(Error::InvalidInput(format!(
                "{what} mentions vertex {} but the graph has {n} vertices",
                v + 1
            )));
        }
    }
    if a == b {
        return Err(Error::InvalidInput(format!(
            "{what} is a loop at vertex {}",
            a + 1
        )));
    }
    Ok(())
}

/// Gadget name of every agent, indexed by agent.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NameMap(pub Vec<String>);

impl NameMap {
    pub fn name(&self, agent: Agent) -> &str {
        &self.0[agent]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The agent carrying `name`, if any.
    pub fn agent(&self, name: &str) -> Option<Agent> {
        self.0.iter().position(|n| n == name)
    }
}

/// One `<agent-id> <gadget-name>` line per agent, 1-indexed.
impl fmt::Display for NameMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, name) in self.0.iter().enumerate() {
            writeln!(f, "{} {name}", a + 1)?;
        }
        Ok(())
    }
}

/// A reduced game and its agent names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub game: Ashg,
    pub names: NameMap,
}
