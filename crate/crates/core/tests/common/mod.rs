//! Test-side reference implementations, written from the definitions and
//! sharing no code with the library's checkers or search.
#![allow(dead_code)]

use hedonic_triples::envy::Concept;
use hedonic_triples::game::{Ashg, PartitionIntoTriples, Triple};

pub fn value_of(g: &Ashg, i: usize, others: &[usize]) -> i64 {
    others
        .iter()
        .filter(|&&x| x != i)
        .map(|&x| g.value(i, x))
        .sum()
}

/// 0 = none, 1 = plain, 2 = weakly justified, 3 = justified.
pub fn envy_level(g: &Ashg, triples: &[Triple], i: usize, j: usize) -> u8 {
    let own = triples.iter().find(|t| t.contains(&i)).unwrap();
    let theirs = triples.iter().find(|t| t.contains(&j)).unwrap();
    if own == theirs {
        return 0;
    }
    let mates: Vec<usize> = theirs.iter().copied().filter(|&x| x != j).collect();
    if value_of(g, i, &mates) <= value_of(g, i, own) {
        return 0;
    }
    if mates.iter().all(|&k| g.value(k, i) > g.value(k, j)) {
        3
    } else if mates.iter().all(|&k| g.value(k, i) >= g.value(k, j)) {
        2
    } else {
        1
    }
}

pub fn naive_satisfies(g: &Ashg, triples: &[Triple], concept: Concept) -> bool {
    let n = g.num_agents();
    let threshold = match concept {
        Concept::Ef => 1,
        Concept::Wjef => 2,
        Concept::Jef => 3,
        Concept::Stable => {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        let t = [a, b, c];
                        let blocks = t.iter().all(|&x| {
                            let now = triples.iter().find(|s| s.contains(&x)).unwrap();
                            value_of(g, x, &t) > value_of(g, x, now)
                        });
                        if blocks {
                            return false;
                        }
                    }
                }
            }
            return true;
        }
    };
    (0..n).all(|i| (0..n).all(|j| i == j || envy_level(g, triples, i, j) < threshold))
}

/// Every partition of `0..n` into triples, in no particular order.
pub fn all_partitions(n: usize) -> Vec<Vec<Triple>> {
    fn rec(left: &[usize], acc: &mut Vec<Triple>, out: &mut Vec<Vec<Triple>>) {
        let Some((&a, rest)) = left.split_first() else {
            out.push(acc.clone());
            return;
        };
        for x in 0..rest.len() {
            for y in x + 1..rest.len() {
                let remaining: Vec<usize> = rest
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| k != x && k != y)
                    .map(|(_, &v)| v)
                    .collect();
                acc.push([a, rest[x], rest[y]]);
                rec(&remaining, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

/// The number of partitions satisfying `concept`, by plain enumeration.
pub fn naive_count(g: &Ashg, concept: Concept) -> usize {
    all_partitions(g.num_agents())
        .iter()
        .filter(|p| naive_satisfies(g, p, concept))
        .count()
}

pub fn naive_exists(g: &Ashg, concept: Concept) -> bool {
    all_partitions(g.num_agents())
        .iter()
        .any(|p| naive_satisfies(g, p, concept))
}

pub fn to_partition(n: usize, triples: &[Triple]) -> PartitionIntoTriples {
    PartitionIntoTriples::new(n, triples.to_vec()).unwrap()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    Isolated,
    Path(usize),
    Cycle(usize),
}

impl Piece {
    pub fn len(self) -> usize {
        match self {
            Piece::Isolated => 1,
            Piece::Path(l) | Piece::Cycle(l) => l,
        }
    }
}

/// Every multiset of isolated agents, paths and cycles with a total size
/// that is a positive multiple of three and at most `max_agents`.
pub fn component_mixes(max_agents: usize) -> Vec<Vec<Piece>> {
    let mut kinds = vec![Piece::Isolated];
    kinds.extend((2..=max_agents).map(Piece::Path));
    kinds.extend((3..=max_agents).map(Piece::Cycle));
    fn rec(
        kinds: &[Piece],
        from: usize,
        left: usize,
        acc: &mut Vec<Piece>,
        out: &mut Vec<Vec<Piece>>,
    ) {
        let used: usize = acc.iter().map(|p| p.len()).sum();
        if used > 0 && used.is_multiple_of(3) {
            out.push(acc.clone());
        }
        for k in from..kinds.len() {
            if kinds[k].len() <= left {
                acc.push(kinds[k]);
                rec(kinds, k, left - kinds[k].len(), acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&kinds, 0, max_agents, &mut Vec::new(), &mut out);
    out
}

/// Lays the pieces out on consecutive agents, relabelled by `shuffle` (agent `a` becomes `shuffle[a]`).
pub fn mix_game(pieces: &[Piece], shuffle: Option<&[usize]>) -> Ashg {
    let n: usize = pieces.iter().map(|p| p.len()).sum();
    let label = |a: usize| shuffle.map_or(a, |s| s[a]);
    let mut edges = Vec::new();
    let mut start = 0;
    for &p in pieces {
        let len = p.len();
        for k in 1..len {
            edges.push((label(start + k - 1), label(start + k)));
        }
        if let Piece::Cycle(_) = p {
            edges.push((label(start + len - 1), label(start)));
        }
        start += len;
    }
    Ashg::from_edges(n, &edges).unwrap()
}

/// A fixed pseudo-random permutation of `0..n`.
pub fn scramble(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed ^ 0x9e37_79b9_7f4a_7c15;
    for k in (1..n).rev() {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        perm.swap(k, (s >> 33) as usize % (k + 1));
    }
    perm
}
