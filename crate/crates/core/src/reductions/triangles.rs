use super::{Digraph, NameMap, Reduction, UndirectedGraph};
use crate::envy::{satisfies, Concept};
use crate::error::{Error, Result};
use crate::game::{Agent, Ashg, PartitionIntoTriples, Triple};

/// Which triangle problem a game encodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Directed triangle cover; ternary asymmetric games.
    Dtc,
    /// Partition into triangles; symmetric games with values up to 6.
    Pit,
}

impl Flavor {
    fn core_size(self) -> usize {
        match self {
            Flavor::Dtc => 9,
            Flavor::Pit => 15,
        }
    }
}

/// Vertex triples, 0-indexed, covering every vertex once.
pub type TriangleCover = Vec<[usize; 3]>;

/// Source graph for [`jef_partition_from_triangle_cover`] and [`triangle_cover_from_jef_partition`].
#[derive(Debug, Clone, Copy)]
pub enum TriangleSource<'a> {
    Directed(&'a Digraph),
    Undirected(&'a UndirectedGraph),
}

impl TriangleSource<'_> {
    fn flavor(self) -> Flavor {
        match self {
            TriangleSource::Directed(_) => Flavor::Dtc,
            TriangleSource::Undirected(_) => Flavor::Pit,
        }
    }

    fn num_vertices(self) -> usize {
        match self {
            TriangleSource::Directed(g) => g.num_vertices(),
            TriangleSource::Undirected(g) => g.num_vertices(),
        }
    }

    fn is_triangle(self, [a, b, c]: [usize; 3]) -> bool {
        match self {
            TriangleSource::Directed(g) => {
                (g.has_arc(a, b) && g.has_arc(b, c) && g.has_arc(c, a))
                    || (g.has_arc(a, c) && g.has_arc(c, b) && g.has_arc(b, a))
            }
            TriangleSource::Undirected(g) => {
                g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)
            }
        }
    }

    fn reduce(self) -> Result<Reduction> {
        match self {
            TriangleSource::Directed(g) => reduce_dtc_to_jef_ternary(g),
            TriangleSource::Undirected(g) => reduce_pit_to_jef_symmetric(g),
        }
    }
}

impl<'a> From<&'a Digraph> for TriangleSource<'a> {
    fn from(g: &'a Digraph) -> Self {
        TriangleSource::Directed(g)
    }
}

impl<'a> From<&'a UndirectedGraph> for TriangleSource<'a> {
    fn from(g: &'a UndirectedGraph) -> Self {
        TriangleSource::Undirected(g)
    }
}

fn names(prefix_h: usize, vertices: usize) -> NameMap {
    NameMap(
        (1..=prefix_h)
            .map(|i| format!("h{i}"))
            .chain((1..=4).map(|i| format!("l{i}")))
            .chain((1..=vertices).map(|i| format!("c{i}")))
            .collect(),
    )
}

fn dtc_entries() -> Vec<(Agent, Agent, i64)> {
    let h = |i: usize| i % 5;
    let mut entries = Vec::new();
    for i in 0..5 {
        entries.push((h(i), h(i + 1), 1));
        entries.push((h(i + 1), h(i), 1));
        entries.push((h(i), h(i + 3), 1));
        entries.push((h(i), h(i + 2), 2));
    }
    let [l1, l2, l3, l4] = [5, 6, 7, 8];
    for (a, b) in [(l1, l2), (l3, l4)] {
        entries.push((a, b, 2));
        entries.push((b, a, 2));
    }
    for a in [l1, l2] {
        for b in [l3, l4] {
            entries.push((a, b, 1));
            entries.push((b, a, 1));
        }
    }
    entries
}

/// Ternary game on `9 + 3q` agents: a five-agent core `h1..h5`, four agents
/// `l1..l4`, and one agent `c_i` per vertex. `c_i` values `c_j` at 2 when the
/// arc `i -> j` exists and at 1 otherwise.
pub fn reduce_dtc_to_jef_ternary(g: &Digraph) -> Result<Reduction> {
    for &(a, b) in g.arcs() {
        if g.has_arc(b, a) {
            return Err(Error::InvalidInput(format!(
                "arcs {} -> {} and {} -> {} point both ways",
                a + 1,
                b + 1,
                b + 1,
                a + 1
            )));
        }
    }
    let n = g.num_vertices();
    let c = |i: usize| 9 + i;
    let [l3, l4] = [7, 8];
    let mut entries = dtc_entries();
    for i in 0..n {
        entries.extend([(c(i), l3, 1), (l3, c(i), 1), (l4, c(i), 1), (c(i), l4, 2)]);
        for j in (0..n).filter(|&j| j != i) {
            entries.push((c(i), c(j), 1));
        }
    }
    entries.extend(g.arcs().iter().map(|&(a, b)| (c(a), c(b), 2)));
    let game = Ashg::from_entries(9 + n, entries)?;
    debug_assert!(game.is_ternary());
    Ok(Reduction {
        game,
        names: names(5, n),
    })
}

/// The six-agent game on `h1..h5` and `l1` that has no jEF partition.
pub fn dtc_no_instance() -> Result<Ashg> {
    Ashg::from_entries(9, dtc_entries())?.restrict(&[0, 1, 2, 3, 4, 5])
}

fn pit_entries() -> Vec<(Agent, Agent, i64)> {
    // h1 is agent 0; h2..h11 are agents 1..10 and the cyclic offsets act on them
    let step = |k: usize, y: usize| (k - 1 + y) % 10 + 1;
    let mut entries = Vec::new();
    let mut both = |a: Agent, b: Agent, v: i64| {
        entries.push((a, b, v));
        entries.push((b, a, v));
    };
    for k in 1..=10 {
        both(0, k, 2);
        let even = (k + 1) % 2 == 0;
        both(k, step(k, 1), if even { 4 } else { 5 });
        both(k, step(k, 2), if even { 6 } else { 3 });
        both(k, step(k, 3), 1);
        both(k, step(k, 4), 1);
        both(k, step(k, 5), 3);
    }
    let [l1, l2, l3, l4] = [11, 12, 13, 14];
    both(l1, l2, 2);
    both(l3, l4, 2);
    for a in [l1, l2] {
        for b in [l3, l4] {
            both(a, b, 1);
        }
    }
    entries
}

/// Symmetric game on `15 + 3q` agents with values in `0..=6`: an eleven-agent
/// core `h1..h11`, four agents `l1..l4`, and one agent per vertex valued 3 by
/// its graph neighbours and 2 by the other vertices.
pub fn reduce_pit_to_jef_symmetric(g: &UndirectedGraph) -> Result<Reduction> {
    let n = g.num_vertices();
    let c = |i: usize| 15 + i;
    let mut entries = pit_entries();
    for i in 0..n {
        for l in 11..15 {
            entries.extend([(c(i), l, 3), (l, c(i), 3)]);
        }
        for j in (0..n).filter(|&j| j != i) {
            entries.push((c(i), c(j), 2));
        }
    }
    for &(a, b) in g.edges() {
        entries.extend([(c(a), c(b), 3), (c(b), c(a), 3)]);
    }
    let game = Ashg::from_entries(15 + n, entries)?;
    debug_assert!(game.is_symmetric() && game.min_value() >= 0 && game.max_value() <= 6);
    Ok(Reduction {
        game,
        names: names(11, n),
    })
}

/// The twelve-agent game on `h1..h11` and `l1` that has no jEF partition.
pub fn pit_no_instance() -> Result<Ashg> {
    let agents: Vec<Agent> = (0..12).collect();
    Ashg::from_entries(15, pit_entries())?.restrict(&agents)
}

fn check_cover(source: TriangleSource<'_>, cover: &[[usize; 3]]) -> Result<()> {
    let n = source.num_vertices();
    let mut covered = vec![false; n];
    for (k, &t) in cover.iter().enumerate() {
        for v in t {
            if v >= n {
                return Err(Error::InvalidInput(format!(
                    "cover triple {} mentions vertex {} of {n}",
                    k + 1,
                    v + 1
                )));
            }
            if std::mem::replace(&mut covered[v], true) {
                return Err(Error::InvalidInput(format!(
                    "vertex {} is covered twice",
                    v + 1
                )));
            }
        }
        if !source.is_triangle(t) {
            let what = match source.flavor() {
                Flavor::Dtc => "a directed 3-cycle",
                Flavor::Pit => "a triangle",
            };
            return Err(Error::InvalidInput(format!(
                "cover triple {{{}, {}, {}}} is not {what}",
                t[0] + 1,
                t[1] + 1,
                t[2] + 1
            )));
        }
    }
    if let Some(v) = covered.iter().position(|&c| !c) {
        return Err(Error::InvalidInput(format!(
            "vertex {} is not covered",
            v + 1
        )));
    }
    Ok(())
}

/// The jEF partition built from a triangle cover: fixed triples on the core
/// agents and one triple of vertex agents per triangle.
pub fn jef_partition_from_triangle_cover<'a>(
    source: impl Into<TriangleSource<'a>>,
    cover: &[[usize; 3]],
    game: &Ashg,
) -> Result<PartitionIntoTriples> {
    let source = source.into();
    check_cover(source, cover)?;
    if *game != source.reduce()?.game {
        return Err(Error::InvalidInput(
            "game is not the reduction of the given graph".into(),
        ));
    }
    let flavor = source.flavor();
    let mut triples: Vec<Triple> = match flavor {
        Flavor::Dtc => vec![[0, 1, 2], [3, 5, 6], [4, 7, 8]],
        Flavor::Pit => vec![[1, 9, 10], [4, 5, 7], [0, 8, 3], [2, 11, 12], [6, 13, 14]],
    };
    let base = flavor.core_size();
    triples.extend(cover.iter().map(|t| t.map(|v| base + v)));
    let pi = PartitionIntoTriples::new(game.num_agents(), triples)?;
    assert!(
        satisfies(game, &pi, Concept::Jef),
        "cover-induced partition must be jEF"
    );
    Ok(pi)
}

/// Reads a cover off a jEF partition of a reduced game: the triples made only of vertex agents.
pub fn triangle_cover_from_jef_partition<'a>(
    source: impl Into<TriangleSource<'a>>,
    game: &Ashg,
    pi: &PartitionIntoTriples,
) -> Result<TriangleCover> {
    let source = source.into();
    if *game != source.reduce()?.game {
        return Err(Error::InvalidInput(
            "game is not the reduction of the given graph".into(),
        ));
    }
    pi.check_game(game)?;
    if !satisfies(game, pi, Concept::Jef) {
        return Err(Error::InvalidInput("partition is not jEF".into()));
    }
    let base = source.flavor().core_size();
    let cover: TriangleCover = pi
        .triples()
        .iter()
        .filter(|t| t.iter().all(|&a| a >= base))
        .map(|t| t.map(|a| a - base))
        .collect();
    check_cover(source, &cover)?;
    Ok(cover)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envy::{partition_utility, utility};
    use crate::oracle::brute_force;

    fn three_cycle() -> Digraph {
        Digraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn directed_path() -> Digraph {
        Digraph::new(3, vec![(0, 1), (1, 2)]).unwrap()
    }

    fn triangle() -> UndirectedGraph {
        UndirectedGraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn dtc_table() {
        let red = reduce_dtc_to_jef_ternary(&three_cycle()).unwrap();
        let g = &red.game;
        assert_eq!(g.num_agents(), 12);
        assert!(g.is_ternary() && !g.is_symmetric());
        // h1 -> h2, h3, h4, h5 = 1, 2, 1, 1
        assert_eq!(g.row(0)[..5], [0, 1, 2, 1, 1]);
        assert_eq!(g.row(4)[..5], [1, 2, 1, 1, 0]);
        assert_eq!(g.value(9, 10), 2);
        assert_eq!(g.value(10, 9), 1);
        assert_eq!(
            [g.value(9, 7), g.value(9, 8), g.value(7, 9), g.value(8, 9)],
            [1, 2, 1, 1]
        );
        assert_eq!([g.value(9, 5), g.value(5, 9)], [0, 0]);
        assert_eq!(red.names.name(9), "c1");
        assert_eq!(red.names.name(5), "l1");
    }

    #[test]
    fn dtc_rejects_two_way_arcs() {
        let g = Digraph::new(3, vec![(0, 1), (1, 0)]).unwrap();
        assert!(reduce_dtc_to_jef_ternary(&g).is_err());
        assert!(Digraph::new(3, vec![(0, 0)]).is_err());
        assert!(Digraph::new(3, vec![(0, 1), (0, 1)]).is_err());
        assert!(Digraph::new(4, vec![]).is_err());
    }

    #[test]
    fn dtc_cover_round_trip() {
        let g = three_cycle();
        let game = reduce_dtc_to_jef_ternary(&g).unwrap().game;
        let pi = jef_partition_from_triangle_cover(&g, &[[0, 1, 2]], &game).unwrap();
        assert!(pi.contains_triple(&[9, 10, 11]));
        assert_eq!(
            triangle_cover_from_jef_partition(&g, &game, &pi).unwrap(),
            vec![[0, 1, 2]]
        );
        for c in 9..12 {
            let twos = (9..12).filter(|&d| game.value(c, d) == 2).count();
            assert_eq!(twos, 1);
        }
    }

    #[test]
    fn dtc_path_game_as_tabulated_admits_a_jef_partition() {
        // c1 and c2 value l1 and l2 at 0, which lets h5 host them
        let g = directed_path();
        let red = reduce_dtc_to_jef_ternary(&g).unwrap();
        assert!(jef_partition_from_triangle_cover(&g, &[[0, 1, 2]], &red.game).is_err());
        let pi = PartitionIntoTriples::new(12, vec![[0, 1, 2], [3, 5, 6], [4, 9, 10], [7, 8, 11]])
            .unwrap();
        assert!(satisfies(&red.game, &pi, Concept::Jef));
        assert_eq!(
            brute_force(&red.game, Concept::Jef).unwrap().partition(),
            Some(&pi)
        );
        assert!(triangle_cover_from_jef_partition(&g, &red.game, &pi).is_err());
    }

    #[test]
    fn dtc_core_has_no_jef_partition() {
        let game = dtc_no_instance().unwrap();
        assert_eq!(game.num_agents(), 6);
        assert!(brute_force(&game, Concept::Jef).unwrap().is_none_exists());
    }

    #[test]
    fn pit_table() {
        let red = reduce_pit_to_jef_symmetric(&triangle()).unwrap();
        let g = &red.game;
        assert_eq!(g.num_agents(), 18);
        assert!(g.is_symmetric());
        assert_eq!((g.min_value(), g.max_value()), (0, 6));
        // h2 -> h3..h7 = 4, 6, 1, 1, 3 and h3 -> h4..h8 = 5, 3, 1, 1, 3
        assert_eq!(g.row(1)[2..7], [4, 6, 1, 1, 3]);
        assert_eq!(g.row(2)[3..8], [5, 3, 1, 1, 3]);
        // h11 wraps to h2
        assert_eq!(g.value(10, 1), 5);
        assert_eq!(g.value(10, 2), 3);
        assert!(g.row(0)[1..11].iter().all(|&v| v == 2));
        assert_eq!(red.names.name(17), "c3");
    }

    #[test]
    fn pit_cover_round_trip() {
        let g = triangle();
        let game = reduce_pit_to_jef_symmetric(&g).unwrap().game;
        let pi = jef_partition_from_triangle_cover(&g, &[[0, 1, 2]], &game).unwrap();
        for c in 15..18 {
            assert_eq!(partition_utility(&game, &pi, c), 6);
        }
        assert_eq!(
            triangle_cover_from_jef_partition(&g, &game, &pi).unwrap(),
            vec![[0, 1, 2]]
        );
    }

    #[test]
    fn pit_core_has_no_jef_partition() {
        let game = pit_no_instance().unwrap();
        assert_eq!(game.num_agents(), 12);
        assert!(game.is_symmetric() && game.max_value() <= 6);
        assert_eq!(utility(&game, 11, &[0, 1]).unwrap(), 0);
        assert!(brute_force(&game, Concept::Jef).unwrap().is_none_exists());
    }

    #[test]
    fn bad_covers_are_rejected() {
        let g = UndirectedGraph::new(6, vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)]).unwrap();
        let game = reduce_pit_to_jef_symmetric(&g).unwrap().game;
        let err =
            jef_partition_from_triangle_cover(&g, &[[0, 1, 2], [3, 4, 5]], &game).unwrap_err();
        assert!(err.to_string().contains("not a triangle"), "{err}");
        assert!(jef_partition_from_triangle_cover(&g, &[[0, 1, 2]], &game).is_err());
        assert!(jef_partition_from_triangle_cover(&g, &[[0, 1, 2], [0, 4, 5]], &game).is_err());
    }
}
