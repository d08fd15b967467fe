//! Sparse graphs of twin-width at most 3 and unbounded tree-width: `N`
//! disjoint paths on `N` vertices each, plus `N` apexes where apex `i` sees
//! the `i`-th vertex of every path.

use crate::graph::{Graph, Vertex};
use crate::sequence::{ContractionSequence, Replay};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tww3Family {
    pub graph: Graph,
    /// `paths[p][i]`, the `i`-th vertex of path `p`, has id `p * N + i`.
    pub paths: Vec<Vec<Vertex>>,
    /// Apex `i` has id `N² + i`.
    pub apexes: Vec<Vertex>,
}

pub fn gen_tww3_family(n: usize) -> Tww3Family {
    assert!(n >= 1, "N must be positive");
    let paths: Vec<Vec<Vertex>> = (0..n).map(|p| (0..n).map(|i| p * n + i).collect()).collect();
    let apexes: Vec<Vertex> = (0..n).map(|i| n * n + i).collect();
    let mut g = Graph::new(n * n + n);
    for path in &paths {
        for w in path.windows(2) {
            g.add_edge(w[0], w[1]).unwrap();
        }
        for (i, &v) in path.iter().enumerate() {
            g.add_edge(v, apexes[i]).unwrap();
        }
    }
    Tww3Family { graph: g, paths, apexes }
}

/// Merges paths `2..=N` into the first one position by position, folds each
/// apex into its now unique neighbour, then collapses the remaining path
/// starting from its first vertex.
pub fn tww3_family_sequence(n: usize) -> ContractionSequence {
    let fam = gen_tww3_family(n);
    let mut replay = Replay::new(&fam.graph);
    let mut pairs = Vec::with_capacity(fam.graph.n() - 1);
    let mut step = |replay: &mut Replay, u: usize, v: usize| {
        pairs.push((u, v));
        replay.contract(u, v).unwrap()
    };
    let mut acc = fam.paths[0].clone();
    for path in &fam.paths[1..] {
        for i in 0..n {
            acc[i] = step(&mut replay, acc[i], path[i]);
        }
    }
    for i in 0..n {
        acc[i] = step(&mut replay, acc[i], fam.apexes[i]);
    }
    let mut cur = acc[0];
    for &x in &acc[1..] {
        cur = step(&mut replay, cur, x);
    }
    ContractionSequence::from_pairs(fam.graph.n(), &pairs).unwrap()
}
