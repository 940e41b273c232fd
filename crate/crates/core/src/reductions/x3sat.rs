use super::{NameMap, Reduction, X3SatFormula};
use crate::envy::{satisfies, sigma, Concept};
use crate::error::{Error, Result};
use crate::game::{Agent, Ashg, PartitionIntoTriples, Triple};

/// Internal edges of the eight-agent clause gadget, 0-indexed.
const EF_CLAUSE_EDGES: [(usize, usize); 9] = [
    (0, 3),
    (1, 4),
    (2, 7),
    (3, 5),
    (3, 6),
    (4, 5),
    (4, 6),
    (7, 5),
    (7, 6),
];

fn w(variable: usize, ordinal: usize) -> Agent {
    3 * variable + ordinal
}

fn variable_triangle(variable: usize) -> Triple {
    [w(variable, 0), w(variable, 1), w(variable, 2)]
}

fn triangle_edges(m: usize) -> impl Iterator<Item = (Agent, Agent)> {
    (0..m).flat_map(|i| [(w(i, 0), w(i, 1)), (w(i, 1), w(i, 2)), (w(i, 2), w(i, 0))])
}

fn variable_names(m: usize) -> impl Iterator<Item = String> {
    (0..m).flat_map(|i| (1..=3).map(move |u| format!("w{}^{u}", i + 1)))
}

fn clause_names(m: usize, size: usize) -> impl Iterator<Item = String> {
    (0..m).flat_map(move |r| (1..=size).map(move |p| format!("d{}^{p}", r + 1)))
}

fn true_position(formula: &X3SatFormula, model: &[bool], r: usize) -> usize {
    formula.clauses()[r]
        .iter()
        .position(|&x| model[x])
        .expect("exact models make one literal per clause true")
}

fn require_multiple_of_three(formula: &X3SatFormula) -> Result<()> {
    let m = formula.num_variables();
    if !m.is_multiple_of(3) {
        return Err(Error::InvalidInput(format!(
            "{m} clauses: every exact model has m = 3 * (true variables), so only m divisible by 3 can be encoded"
        )));
    }
    Ok(())
}

fn require_game(game: &Ashg, expected: &Ashg) -> Result<()> {
    if game != expected {
        return Err(Error::InvalidInput(
            "game is not the reduction of the given formula".into(),
        ));
    }
    Ok(())
}

/// Binary symmetric game of maximum degree 3 on `11m` agents.
///
/// Agents `3i..3i+3` form the triangle of variable `i`; agents `3m + 8r ..` form
/// clause `r`'s gadget. Clause position `p` links `d^p` to the gadget agent of
/// its variable matching the occurrence ordinal.
pub fn reduce_x3sat_to_ef(formula: &X3SatFormula) -> Result<Reduction> {
    require_multiple_of_three(formula)?;
    let m = formula.num_variables();
    let d = |r: usize, p: usize| 3 * m + 8 * r + p;
    let occ = formula.occurrences();
    let mut edges: Vec<(Agent, Agent)> = triangle_edges(m).collect();
    for (r, clause) in formula.clauses().iter().enumerate() {
        edges.extend(EF_CLAUSE_EDGES.iter().map(|&(a, b)| (d(r, a), d(r, b))));
        for (p, &x) in clause.iter().enumerate() {
            edges.push((d(r, p), w(x, occ.ordinal(r, p))));
        }
    }
    let game = Ashg::from_edges(11 * m, &edges)?;
    let names = NameMap(variable_names(m).chain(clause_names(m, 8)).collect());
    debug_assert!(game.is_binary() && game.is_symmetric() && game.max_degree() == Some(3));
    Ok(Reduction { game, names })
}

/// The envy-free partition induced by an exact model. False variables keep their triangle.
pub fn ef_partition_from_exact_model(
    formula: &X3SatFormula,
    model: &[bool],
    game: &Ashg,
) -> Result<PartitionIntoTriples> {
    formula.check_exact_model(model)?;
    require_game(game, &reduce_x3sat_to_ef(formula)?.game)?;
    let m = formula.num_variables();
    let d = |r: usize, p: usize| 3 * m + 8 * r + p;
    let occ = formula.occurrences();

    let mut triples: Vec<Triple> = (0..m)
        .filter(|&i| !model[i])
        .map(variable_triangle)
        .collect();
    for (r, clause) in formula.clauses().iter().enumerate() {
        let a = true_position(formula, model, r);
        let wu = w(clause[a], occ.ordinal(r, a));
        let [t1, t2, t3] = match a {
            0 => [[wu, 0, 3], [1, 4, 6], [2, 5, 7]],
            1 => [[wu, 1, 4], [0, 3, 5], [2, 6, 7]],
            _ => [[wu, 2, 7], [0, 3, 5], [1, 4, 6]],
        };
        triples.push([t1[0], d(r, t1[1]), d(r, t1[2])]);
        triples.extend([t2, t3].map(|t| t.map(|p| d(r, p))));
    }
    let pi = PartitionIntoTriples::new(game.num_agents(), triples)?;
    assert!(
        satisfies(game, &pi, Concept::Ef),
        "model-induced partition must be envy-free"
    );
    Ok(pi)
}

/// Reads a model off an envy-free partition: a variable is true iff its triangle is split three ways.
pub fn exact_model_from_ef_partition(
    formula: &X3SatFormula,
    game: &Ashg,
    pi: &PartitionIntoTriples,
) -> Result<Vec<bool>> {
    require_game(game, &reduce_x3sat_to_ef(formula)?.game)?;
    pi.check_game(game)?;
    if !satisfies(game, pi, Concept::Ef) {
        return Err(Error::InvalidInput("partition is not envy-free".into()));
    }
    let model = (0..formula.num_variables())
        .map(|i| gadget_spread(pi, i).map(|s| s == 3))
        .collect::<Result<Vec<_>>>()?;
    formula.check_exact_model(&model)?;
    Ok(model)
}

fn gadget_spread(pi: &PartitionIntoTriples, i: usize) -> Result<usize> {
    let s = sigma(pi, &variable_triangle(i))?;
    if s == 2 {
        return Err(Error::InvalidInput(format!(
            "variable gadget {} is split across two triples",
            i + 1
        )));
    }
    Ok(s)
}

/// The formula the wjEF reduction actually encodes, and how many copies it holds.
///
/// Formulas whose size is not a multiple of 4 are replaced by four disjoint copies.
pub fn wjef_formula(formula: &X3SatFormula) -> (X3SatFormula, usize) {
    if formula.num_variables().is_multiple_of(4) {
        (formula.clone(), 1)
    } else {
        (formula.replicated(4), 4)
    }
}

/// Binary symmetric game of maximum degree 3 on `40l` agents, `l = m'/4`.
///
/// Layout: variable triangles, then four-agent clause stars (hub `d^4`), then
/// `12l` garbage agents in stars of four with hub `g_{4i}`. With `strict`, a
/// formula whose size is not a multiple of 4 is rejected instead of replicated.
pub fn reduce_x3sat_to_wjef(formula: &X3SatFormula, strict: bool) -> Result<Reduction> {
    require_multiple_of_three(formula)?;
    if strict && !formula.num_variables().is_multiple_of(4) {
        return Err(Error::InvalidInput(format!(
            "strict mode needs a multiple of 4 variables, formula has {}",
            formula.num_variables()
        )));
    }
    let (f, _) = wjef_formula(formula);
    let m = f.num_variables();
    let l = m / 4;
    let d = |r: usize, p: usize| 3 * m + 4 * r + p;
    let g = |k: usize| 7 * m + k - 1;
    let occ = f.occurrences();
    let mut edges: Vec<(Agent, Agent)> = triangle_edges(m).collect();
    for (r, clause) in f.clauses().iter().enumerate() {
        for (p, &x) in clause.iter().enumerate() {
            edges.push((d(r, p), d(r, 3)));
            edges.push((d(r, p), w(x, occ.ordinal(r, p))));
        }
    }
    for i in 1..=3 * l {
        edges.extend((1..=3).map(|k| (g(4 * i), g(4 * i - k))));
    }
    let game = Ashg::from_edges(40 * l, &edges)?;
    let names = NameMap(
        variable_names(m)
            .chain(clause_names(m, 4))
            .chain((1..=12 * l).map(|k| format!("g{k}")))
            .collect(),
    );
    debug_assert!(game.is_binary() && game.is_symmetric() && game.max_degree() == Some(3));
    Ok(Reduction { game, names })
}

/// The wj-envy-free partition induced by an exact model. True variables keep their triangle.
///
/// `model` may cover the given formula or the replicated one; a short model is
/// copied into every replica.
pub fn wjef_partition_from_exact_model(
    formula: &X3SatFormula,
    model: &[bool],
    game: &Ashg,
) -> Result<PartitionIntoTriples> {
    let (f, copies) = wjef_formula(formula);
    let model = if model.len() == formula.num_variables() {
        model.repeat(copies)
    } else {
        model.to_vec()
    };
    f.check_exact_model(&model)?;
    require_game(game, &reduce_x3sat_to_wjef(formula, false)?.game)?;
    let m = f.num_variables();
    let d = |r: usize, p: usize| 3 * m + 4 * r + p;
    let g = |k: usize| 7 * m + k - 1;
    let occ = f.occurrences();

    let mut triples: Vec<Triple> = (0..m)
        .filter(|&i| model[i])
        .map(variable_triangle)
        .collect();
    for (r, clause) in f.clauses().iter().enumerate() {
        let a = true_position(&f, &model, r);
        let k = 3 * (r + 1);
        triples.push([d(r, a), d(r, 3), g(k)]);
        let falses = (0..3).filter(|&p| p != a);
        for (p, garbage) in falses.zip([g(k - 1), g(k - 2)]) {
            triples.push([d(r, p), w(clause[p], occ.ordinal(r, p)), garbage]);
        }
    }
    let pi = PartitionIntoTriples::new(game.num_agents(), triples)?;
    assert!(
        satisfies(game, &pi, Concept::Wjef),
        "model-induced partition must be wj-envy-free"
    );
    Ok(pi)
}

/// Reads a model of the encoded (possibly replicated) formula off a wj-envy-free
/// partition: a variable is true iff its triangle is a triple.
pub fn exact_model_from_wjef_partition(
    formula: &X3SatFormula,
    game: &Ashg,
    pi: &PartitionIntoTriples,
) -> Result<Vec<bool>> {
    let (f, _) = wjef_formula(formula);
    require_game(game, &reduce_x3sat_to_wjef(formula, false)?.game)?;
    pi.check_game(game)?;
    if !satisfies(game, pi, Concept::Wjef) {
        return Err(Error::InvalidInput("partition is not wj-envy-free".into()));
    }
    let model = (0..f.num_variables())
        .map(|i| gadget_spread(pi, i).map(|s| s == 1))
        .collect::<Result<Vec<_>>>()?;
    f.check_exact_model(&model)?;
    Ok(model)
}
