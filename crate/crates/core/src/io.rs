//! Plain-text file formats. Agent, variable and vertex ids are 1-indexed in
//! files and 0-indexed in memory. `#` starts a comment; blank lines are ignored.
//!
//! ```text
//! ashg 3
//! v 1 2 4
//! v 2 1 -1
//! ```

use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::game::{Agent, Ashg, PartitionIntoTriples};
use crate::reductions::{Digraph, UndirectedGraph, X3SatFormula};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines().enumerate(),
        }
    }
}

/// Non-empty lines with comments stripped, tagged with 1-based line numbers.
impl<'a> Iterator for Lines<'a> {
    type Item = (usize, Vec<&'a str>);

    fn next(&mut self) -> Option<Self::Item> {
        for (k, raw) in self.inner.by_ref() {
            let body = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = body.split_whitespace().collect();
            if !words.is_empty() {
                return Some((k + 1, words));
            }
        }
        None
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number<T: std::str::FromStr>(line: usize, word: &str, what: &str) -> Result<T> {
    word.parse()
        .map_err(|_| parse_err(line, format!("{what} `{word}` is not a valid number")))
}

/// A 1-indexed id in `1..=bound`, returned 0-indexed.
fn id(line: usize, word: &str, bound: usize, what: &str) -> Result<usize> {
    let v: usize = number(line, word, what)?;
    if v == 0 || v > bound {
        return Err(parse_err(
            line,
            format!("{what} {v} out of range 1..={bound}"),
        ));
    }
    Ok(v - 1)
}

fn expect_words(line: usize, words: &[&str], tag: &str, count: usize) -> Result<()> {
    if words[0] != tag {
        return Err(parse_err(
            line,
            format!("expected a `{tag}` line, found `{}`", words[0]),
        ));
    }
    if words.len() != count {
        return Err(parse_err(
            line,
            format!(
                "`{tag}` line needs {} fields, found {}",
                count - 1,
                words.len() - 1
            ),
        ));
    }
    Ok(())
}

fn header<'a>(lines: &mut Lines<'a>, tag: &str, fields: usize) -> Result<(usize, Vec<&'a str>)> {
    let (line, words) = lines
        .next()
        .ok_or_else(|| parse_err(1, format!("empty file, expected a `{tag}` header")))?;
    expect_words(line, &words, tag, fields + 1)?;
    Ok((line, words))
}

pub fn parse_instance(text: &str) -> Result<Ashg> {
    let mut lines = Lines::new(text);
    let (hl, words) = header(&mut lines, "ashg", 1)?;
    let n: usize = number(hl, words[1], "agent count")?;
    if n == 0 || !n.is_multiple_of(3) {
        return Err(parse_err(
            hl,
            format!("agent count {n} is not a positive multiple of 3"),
        ));
    }
    let mut seen = HashSet::new();
    let mut entries = Vec::new();
    for (line, words) in lines {
        expect_words(line, &words, "v", 4)?;
        let i = id(line, words[1], n, "agent")?;
        let j = id(line, words[2], n, "agent")?;
        let value: i64 = number(line, words[3], "value")?;
        if i == j {
            return Err(parse_err(line, format!("agent {} values itself", i + 1)));
        }
        if !seen.insert((i, j)) {
            return Err(parse_err(
                line,
                format!("duplicate valuation of {} by {}", j + 1, i + 1),
            ));
        }
        entries.push((i, j, value));
    }
    Ashg::from_entries(n, entries)
}

/// Canonical form: header, then nonzero valuations by row and column.
pub fn write_instance(game: &Ashg) -> String {
    let mut out = format!("ashg {}\n", game.num_agents());
    for (i, j, v) in game.nonzero_entries() {
        writeln!(out, "v {} {} {v}", i + 1, j + 1).unwrap();
    }
    out
}

/// Parses one triple per line. With `num_agents`, the cover must be of exactly that many agents.
pub fn parse_partition(text: &str, num_agents: Option<usize>) -> Result<PartitionIntoTriples> {
    let mut triples = Vec::new();
    let mut lines_seen = Vec::new();
    for (line, words) in Lines::new(text) {
        if words.len() != 3 {
            return Err(parse_err(
                line,
                format!("a triple needs 3 agents, found {}", words.len()),
            ));
        }
        let mut t = [0; 3];
        for (slot, w) in t.iter_mut().zip(&words) {
            let v: usize = number(line, w, "agent")?;
            if v == 0 {
                return Err(parse_err(line, "agent ids start at 1"));
            }
            *slot = v - 1;
        }
        triples.push(t);
        lines_seen.push(line);
    }
    if triples.is_empty() {
        return Err(parse_err(1, "partition file has no triples"));
    }
    let n = num_agents.unwrap_or(3 * triples.len());
    if 3 * triples.len() != n {
        return Err(parse_err(
            lines_seen.last().copied().unwrap_or(1),
            format!("{} triples cannot cover {n} agents", triples.len()),
        ));
    }
    let mut where_seen = vec![None; n];
    for (t, &line) in triples.iter().zip(&lines_seen) {
        for &a in t {
            if a >= n {
                return Err(parse_err(
                    line,
                    format!("agent {} out of range 1..={n}", a + 1),
                ));
            }
            if let Some(first) = where_seen[a].replace(line) {
                return Err(parse_err(
                    line,
                    format!("agent {} already placed on line {first}", a + 1),
                ));
            }
        }
    }
    PartitionIntoTriples::new(n, triples)
}

pub fn write_partition(pi: &PartitionIntoTriples) -> String {
    let mut out = String::new();
    for [a, b, c] in pi.triples() {
        writeln!(out, "{} {} {}", a + 1, b + 1, c + 1).unwrap();
    }
    out
}

pub fn parse_formula(text: &str) -> Result<X3SatFormula> {
    let mut lines = Lines::new(text);
    let (hl, words) = header(&mut lines, "x3sat", 1)?;
    let m: usize = number(hl, words[1], "variable count")?;
    if m == 0 {
        return Err(parse_err(hl, "formula has no variables"));
    }
    let mut clauses = Vec::new();
    for (line, words) in lines {
        expect_words(line, &words, "c", 4)?;
        let mut clause = [0; 3];
        for (slot, w) in clause.iter_mut().zip(&words[1..]) {
            *slot = id(line, w, m, "variable")?;
        }
        clauses.push(clause);
    }
    if clauses.len() != m {
        return Err(parse_err(
            hl,
            format!("{m} variables need {m} clauses, found {}", clauses.len()),
        ));
    }
    X3SatFormula::new(m, clauses)
}

pub fn write_formula(formula: &X3SatFormula) -> String {
    let mut out = format!("x3sat {}\n", formula.num_variables());
    for [a, b, c] in formula.clauses() {
        writeln!(out, "c {} {} {}", a + 1, b + 1, c + 1).unwrap();
    }
    out
}

/// Either kind of graph file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphFile {
    Directed(Digraph),
    Undirected(UndirectedGraph),
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut lines = Lines::new(text);
    let (hl, words) = header(&mut lines, "graph", 2)?;
    let n: usize = number(hl, words[1], "vertex count")?;
    let directed = match words[2] {
        "directed" => true,
        "undirected" => false,
        other => {
            return Err(parse_err(
                hl,
                format!("expected `directed` or `undirected`, found `{other}`"),
            ))
        }
    };
    let mut pairs = Vec::new();
    for (line, words) in lines {
        expect_words(line, &words, "e", 3)?;
        let a = id(line, words[1], n, "vertex")?;
        let b = id(line, words[2], n, "vertex")?;
        pairs.push((a, b));
    }
    Ok(if directed {
        GraphFile::Directed(Digraph::new(n, pairs)?)
    } else {
        GraphFile::Undirected(UndirectedGraph::new(n, pairs)?)
    })
}

pub fn write_graph(graph: &GraphFile) -> String {
    let (n, kind, pairs) = match graph {
        GraphFile::Directed(g) => (g.num_vertices(), "directed", g.arcs()),
        GraphFile::Undirected(g) => (g.num_vertices(), "undirected", g.edges()),
    };
    let mut out = format!("graph {n} {kind}\n");
    for (a, b) in pairs {
        writeln!(out, "e {} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Parses `<agent-id> <name>` lines back into per-agent names.
pub fn parse_names(text: &str) -> Result<Vec<String>> {
    let mut names: Vec<String> = Vec::new();
    for (line, words) in Lines::new(text) {
        if words.len() != 2 {
            return Err(parse_err(line, "expected `<agent-id> <name>`"));
        }
        let a: Agent = number(line, words[0], "agent")?;
        if a != names.len() + 1 {
            return Err(parse_err(
                line,
                format!("expected agent {}, found {a}", names.len() + 1),
            ));
        }
        names.push(words[1].to_string());
    }
    Ok(names)
}
