//! Black-neighbourhood weights, the big-parts-have-no-black-edge check, and
//! validation of four-part red-path witnesses.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::partition::{quotient, PartId, PartitionError, PartitionedTrigraph, VertexPartition};
use crate::structure::flow::disjoint_paths_within;
use crate::trigraph::Color;

/// Four parts `X1..X4` forming a red path, with the disjoint-path count and
/// black-neighbourhood weights that make up the witness inequality
/// `s + w2 + w3 >= 4t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessState {
    pub parts: [PartId; 4],
    pub paths: Vec<Vec<Vertex>>,
    pub s: usize,
    pub t: usize,
    pub w2: usize,
    pub w3: usize,
}

impl WitnessState {
    pub fn slack(&self) -> i64 {
        (self.s + self.w2 + self.w3) as i64 - 4 * self.t as i64
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("witness parts must be four distinct parts")]
    RepeatedPart,
    #[error("X{0}-X{1} is not a red edge")]
    NotRed(usize, usize),
    #[error("X1-X4 adjacent")]
    EndsAdjacent,
    #[error("X{index} has {size} vertices, fewer than t = {t}")]
    TooSmall { index: usize, size: usize, t: usize },
    #[error("s + w2 + w3 = {s} + {w2} + {w3} < 4t = {bound}")]
    Inequality { s: usize, w2: usize, w3: usize, bound: usize },
    #[error("X{0}-X{1} adjacent")]
    Chord(usize, usize),
}

/// Total size of the parts joined to `x` by a black quotient edge.
pub fn black_neighborhood_weight(pt: &PartitionedTrigraph, x: PartId) -> Result<usize, PartitionError> {
    pt.partition().part(x)?;
    Ok(pt.quotient().black_neighbors(x).iter().map(|&y| pt.part_size(y)).sum())
}

/// Black quotient edges whose parts both have at least `t` vertices. Each
/// one exhibits a `K_{t,t}` subgraph.
pub fn check_obs_red_edge(pt: &PartitionedTrigraph, t: usize) -> Vec<(PartId, PartId)> {
    pt.quotient()
        .black_edges()
        .filter(|&(a, b)| pt.part_size(a) >= t && pt.part_size(b) >= t)
        .collect()
}

pub fn check_witness(g: &Graph, p: &VertexPartition, parts: [PartId; 4], t: usize) -> Result<WitnessState, WitnessError> {
    let pt = quotient(g, p)?;
    check_witness_in(g, &pt, parts, t)
}

/// [`check_witness`] against an already computed quotient.
pub fn check_witness_in(
    g: &Graph,
    pt: &PartitionedTrigraph,
    parts: [PartId; 4],
    t: usize,
) -> Result<WitnessState, WitnessError> {
    for &x in &parts {
        pt.partition().part(x)?;
    }
    for i in 0..4 {
        if parts[i + 1..].contains(&parts[i]) {
            return Err(WitnessError::RepeatedPart);
        }
    }
    let q = pt.quotient();
    for i in 0..3 {
        if q.edge(parts[i], parts[i + 1]) != Some(Color::Red) {
            return Err(WitnessError::NotRed(i + 1, i + 2));
        }
    }
    if q.edge(parts[0], parts[3]).is_some() {
        return Err(WitnessError::EndsAdjacent);
    }
    for (i, &x) in parts.iter().enumerate() {
        let size = pt.part_size(x);
        if size < t {
            return Err(WitnessError::TooSmall { index: i + 1, size, t });
        }
    }
    let paths = witness_paths(g, pt.partition(), parts);
    let w2 = black_neighborhood_weight(pt, parts[1])?;
    let w3 = black_neighborhood_weight(pt, parts[2])?;
    let s = paths.len();
    if s + w2 + w3 < 4 * t {
        return Err(WitnessError::Inequality { s, w2, w3, bound: 4 * t });
    }
    Ok(WitnessState { parts, paths, s, t, w2, w3 })
}

/// Maximum family of disjoint `X1`–`X4` paths inside `G[X1 ∪ X2 ∪ X3 ∪ X4]`.
pub fn witness_paths(g: &Graph, p: &VertexPartition, parts: [PartId; 4]) -> Vec<Vec<Vertex>> {
    let mut allowed = vec![false; g.n()];
    for &x in &parts {
        for &v in p.parts()[x].iter() {
            allowed[v] = true;
        }
    }
    disjoint_paths_within(g, &allowed, &p.parts()[parts[0]], &p.parts()[parts[3]]).paths
}

/// Whether every path of a maximum disjoint `X1`–`X4` family runs
/// `X1, X2, ..., X3, X4` at its ends. An edge of `G` between `X1` and `X3`
/// or between `X2` and `X4` is a structural violation.
pub fn check_path_layout(g: &Graph, p: &VertexPartition, parts: [PartId; 4]) -> Result<bool, WitnessError> {
    for &x in &parts {
        p.part(x)?;
    }
    for (i, j) in [(0, 2), (1, 3), (0, 3)] {
        let a = &p.parts()[parts[i]];
        if a.iter().any(|&u| g.neighbors(u).iter().any(|&w| p.part_of(w) == parts[j])) {
            return Err(WitnessError::Chord(i + 1, j + 1));
        }
    }
    let inside = |v: Vertex, i: usize| p.part_of(v) == parts[i];
    Ok(witness_paths(g, p, parts).iter().all(|path| {
        let k = path.len();
        k >= 4 && inside(path[0], 0) && inside(path[1], 1) && inside(path[k - 2], 2) && inside(path[k - 1], 3)
    }))
}
