//! Walls, their subdivisions, and cubic meshes inside them.
//!
//! Wall coordinates are 0-based `(i, j)`: path `i`, position `j`. A rung
//! joins `(i, j)` and `(i + 1, j)` exactly when `i` and `j` have the same
//! parity.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Coord = (usize, usize);

/// Where a wall sits inside a host graph: the image of each wall vertex and,
/// for every wall edge, the interior of the path that subdivides it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallLabeling {
    pub size: usize,
    /// `grid[i][j]` is the host vertex of wall vertex `(i, j)`.
    pub grid: Vec<Vec<Vertex>>,
    /// Interior vertices of the subdivision path of each wall edge, listed
    /// from the smaller coordinate to the larger one. Empty for an
    /// unsubdivided edge.
    pub subdivisions: BTreeMap<(Coord, Coord), Vec<Vertex>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WallError {
    #[error("wall labeling has size {size} but grid is {rows} rows")]
    Shape { size: usize, rows: usize },
    #[error("wall vertex {0:?} maps outside the graph")]
    OutOfRange(Coord),
    #[error("host vertex {0} is used twice by the wall labeling")]
    Reused(Vertex),
    #[error("wall edge {0:?}-{1:?} has no subdivision path")]
    MissingEdge(Coord, Coord),
    #[error("{0:?}-{1:?} is not an edge of the wall")]
    ExtraEdge(Coord, Coord),
    #[error("subdivision path of {0:?}-{1:?} is broken at host vertices {2}-{3}")]
    BrokenPath(Coord, Coord, Vertex, Vertex),
    #[error("a {wall}x{wall} wall cannot hold a {mesh}x{mesh} mesh; need size at least {need}")]
    TooSmall { wall: usize, mesh: usize, need: usize },
}

/// Edges of the `size x size` wall, each as `(smaller, larger)` coordinate.
pub fn wall_edges(size: usize) -> Vec<(Coord, Coord)> {
    let mut edges = Vec::new();
    for i in 0..size {
        for j in 0..size {
            if j + 1 < size {
                edges.push(((i, j), (i, j + 1)));
            }
            if i + 1 < size && i % 2 == j % 2 {
                edges.push(((i, j), (i + 1, j)));
            }
        }
    }
    edges
}

/// The `size x size` wall; vertex `(i, j)` gets id `i * size + j`.
pub fn gen_wall(size: usize) -> (Graph, WallLabeling) {
    gen_subdivided_wall(size, 0)
}

/// The wall with every edge replaced by a path through `k` new vertices.
/// Wall vertices keep ids `0..size²`; subdivision vertices follow.
pub fn gen_subdivided_wall(size: usize, k: usize) -> (Graph, WallLabeling) {
    assert!(size >= 1, "wall size must be positive");
    let edges = wall_edges(size);
    let mut g = Graph::new(size * size + k * edges.len());
    let grid: Vec<Vec<Vertex>> = (0..size).map(|i| (0..size).map(|j| i * size + j).collect()).collect();
    let mut subdivisions = BTreeMap::new();
    let mut next = size * size;
    for &(a, b) in &edges {
        let inner: Vec<Vertex> = (next..next + k).collect();
        next += k;
        let mut prev = grid[a.0][a.1];
        for &x in inner.iter().chain(std::iter::once(&grid[b.0][b.1])) {
            g.add_edge(prev, x).unwrap();
            prev = x;
        }
        subdivisions.insert((a, b), inner);
    }
    (g, WallLabeling { size, grid, subdivisions })
}

impl WallLabeling {
    /// Checks that the labeling describes a subdivided wall inside `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), WallError> {
        if self.grid.len() != self.size || self.grid.iter().any(|r| r.len() != self.size) {
            return Err(WallError::Shape {
                size: self.size,
                rows: self.grid.len(),
            });
        }
        let mut used = BTreeSet::new();
        for (i, row) in self.grid.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= g.n() {
                    return Err(WallError::OutOfRange((i, j)));
                }
                if !used.insert(v) {
                    return Err(WallError::Reused(v));
                }
            }
        }
        let expected: BTreeSet<(Coord, Coord)> = wall_edges(self.size).into_iter().collect();
        for &(a, b) in self.subdivisions.keys() {
            if !expected.contains(&(a, b)) {
                return Err(WallError::ExtraEdge(a, b));
            }
        }
        for &(a, b) in &expected {
            let inner = self.subdivisions.get(&(a, b)).ok_or(WallError::MissingEdge(a, b))?;
            let walk = self.edge_path(a, b, inner);
            for w in walk.windows(2) {
                if w[1] >= g.n() || !g.has_edge(w[0], w[1]) {
                    return Err(WallError::BrokenPath(a, b, w[0], w[1]));
                }
            }
            for &x in inner {
                if !used.insert(x) {
                    return Err(WallError::Reused(x));
                }
            }
        }
        Ok(())
    }

    fn edge_path(&self, a: Coord, b: Coord, inner: &[Vertex]) -> Vec<Vertex> {
        let mut walk = vec![self.grid[a.0][a.1]];
        walk.extend_from_slice(inner);
        walk.push(self.grid[b.0][b.1]);
        walk
    }

    /// Host path through the given wall coordinates, which must be
    /// consecutive along wall edges.
    fn host_path(&self, coords: &[Coord]) -> Vec<Vertex> {
        let mut out = vec![self.grid[coords[0].0][coords[0].1]];
        for w in coords.windows(2) {
            let (a, b) = (w[0].min(w[1]), w[0].max(w[1]));
            let inner = &self.subdivisions[&(a, b)];
            if w[0] < w[1] {
                out.extend_from_slice(inner);
            } else {
                out.extend(inner.iter().rev());
            }
            out.push(self.grid[w[1].0][w[1].1]);
        }
        out
    }
}

/// An `N x N` cubic mesh: `N` row paths and `N` column paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeshEmbedding {
    #[serde(rename = "N")]
    pub n: usize,
    pub cols: Vec<Vec<Vertex>>,
    pub rows: Vec<Vec<Vertex>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeshError {
    #[error("expected {expected} rows and columns, found {rows} rows and {cols} columns")]
    Count { expected: usize, rows: usize, cols: usize },
    #[error("{0} is not a path in the graph")]
    NotAPath(String),
    #[error("{0} and {1} share vertex {2}")]
    NotDisjoint(String, String, Vertex),
    #[error("mesh vertex {0} has degree {1} > 3")]
    Degree(Vertex, usize),
    #[error("end {2} of {0} lies on {1}")]
    EndOnCrossing(String, String, Vertex),
    #[error("{0} and {1} do not meet in exactly one common subpath of positive length")]
    BadIntersection(String, String),
    #[error("mesh has {found} branching vertices, expected {expected}")]
    Branching { found: usize, expected: usize },
    #[error("invalid mesh json: {0}")]
    Json(String),
}

impl MeshEmbedding {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("mesh serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, MeshError> {
        serde_json::from_str(text).map_err(|e| MeshError::Json(e.to_string()))
    }

    /// Edges of the mesh subgraph: the union of all row and column edges.
    pub fn edges(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.rows
            .iter()
            .chain(&self.cols)
            .flat_map(|p| p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))))
            .collect()
    }

    /// Vertices of degree 3 in the mesh subgraph.
    pub fn branching(&self) -> BTreeSet<Vertex> {
        let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
        for (u, v) in self.edges() {
            *deg.entry(u).or_default() += 1;
            *deg.entry(v).or_default() += 1;
        }
        deg.into_iter().filter(|&(_, d)| d == 3).map(|(v, _)| v).collect()
    }
}

/// Checks every cubic-mesh condition and returns the branching vertices.
pub fn verify_mesh(g: &Graph, me: &MeshEmbedding) -> Result<BTreeSet<Vertex>, MeshError> {
    let n = me.n;
    if me.rows.len() != n || me.cols.len() != n {
        return Err(MeshError::Count {
            expected: n,
            rows: me.rows.len(),
            cols: me.cols.len(),
        });
    }
    let name = |kind: &str, i: usize| format!("{kind} {i}");
    let named: Vec<(String, &Vec<Vertex>)> = (0..n)
        .map(|i| (name("row", i), &me.rows[i]))
        .chain((0..n).map(|i| (name("column", i), &me.cols[i])))
        .collect();
    for (label, p) in &named {
        let distinct: BTreeSet<_> = p.iter().collect();
        let ok = !p.is_empty()
            && distinct.len() == p.len()
            && p.iter().all(|&v| v < g.n())
            && p.windows(2).all(|w| g.has_edge(w[0], w[1]));
        if !ok {
            return Err(MeshError::NotAPath(label.clone()));
        }
    }
    for group in [&named[..n], &named[n..]] {
        for (i, (la, pa)) in group.iter().enumerate() {
            let sa: BTreeSet<_> = pa.iter().collect();
            for (lb, pb) in &group[i + 1..] {
                if let Some(&&v) = pb.iter().find(|v| sa.contains(v)).as_ref() {
                    return Err(MeshError::NotDisjoint(la.clone(), lb.clone(), v));
                }
            }
        }
    }
    let mut deg: BTreeMap<Vertex, usize> = BTreeMap::new();
    for (u, v) in me.edges() {
        *deg.entry(u).or_default() += 1;
        *deg.entry(v).or_default() += 1;
    }
    if let Some((&v, &d)) = deg.iter().find(|&(_, &d)| d > 3) {
        return Err(MeshError::Degree(v, d));
    }
    for (lr, row) in &named[..n] {
        for (lc, col) in &named[n..] {
            for (la, pa, lb, pb) in [(lr, row, lc, col), (lc, col, lr, row)] {
                for end in [pa[0], pa[pa.len() - 1]] {
                    if pb.contains(&end) {
                        return Err(MeshError::EndOnCrossing(la.clone(), lb.clone(), end));
                    }
                }
            }
            if !single_common_subpath(row, col) {
                return Err(MeshError::BadIntersection(lr.clone(), lc.clone()));
            }
        }
    }
    let branching = me.branching();
    if branching.len() != 2 * n * n {
        return Err(MeshError::Branching {
            found: branching.len(),
            expected: 2 * n * n,
        });
    }
    Ok(branching)
}

fn single_common_subpath(row: &[Vertex], col: &[Vertex]) -> bool {
    let in_col: BTreeSet<_> = col.iter().collect();
    let idx: Vec<usize> = (0..row.len()).filter(|&i| in_col.contains(&row[i])).collect();
    if idx.len() < 2 || idx[idx.len() - 1] - idx[0] + 1 != idx.len() {
        return false;
    }
    let seg = &row[idx[0]..=idx[idx.len() - 1]];
    let start = col.iter().position(|&v| v == seg[0]).unwrap();
    let forward = col.get(start..start + seg.len()).is_some_and(|s| s == seg);
    let backward = start + 1 >= seg.len() && col[start + 1 - seg.len()..=start].iter().rev().eq(seg.iter());
    forward || backward
}

/// An `N x N` cubic mesh inside a (subdivided) wall of size at least
/// `2N + 2`. Mesh row `r` runs along the whole of wall path `2r + 1`; mesh
/// column `c` descends through wall paths `0..=2N`, zigzagging between
/// positions `2c + 1` and `2c + 2` along the rungs.
pub fn wall_to_mesh(g: &Graph, wl: &WallLabeling, n: usize) -> Result<MeshEmbedding, WallError> {
    wl.validate(g)?;
    let need = 2 * n + 2;
    if n == 0 || wl.size < need {
        return Err(WallError::TooSmall {
            wall: wl.size,
            mesh: n,
            need,
        });
    }
    let rows = (0..n)
        .map(|r| {
            let i = 2 * r + 1;
            let coords: Vec<Coord> = (0..wl.size).map(|j| (i, j)).collect();
            wl.host_path(&coords)
        })
        .collect();
    let cols = (0..n)
        .map(|c| {
            let (p, q) = (2 * c + 1, 2 * c + 2);
            let mut coords = vec![(0, q)];
            for i in 1..=2 * n {
                if i % 2 == 1 {
                    coords.extend([(i, q), (i, p)]);
                } else {
                    coords.push((i, p));
                    if i < 2 * n {
                        coords.push((i, q));
                    }
                }
            }
            wl.host_path(&coords)
        })
        .collect();
    Ok(MeshEmbedding { n, cols, rows })
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wall_counts() {
        let (g, wl) = gen_wall(1);
        assert_eq!((g.n(), g.m()), (1, 0));
        wl.validate(&g).unwrap();
        let (g, wl) = gen_wall(8);
        assert_eq!((g.n(), g.m()), (64, 84));
        assert_eq!(g.max_degree(), 3);
        wl.validate(&g).unwrap();
    }

    #[test]
    fn mesh_in_wall() {
        for n in 1..=4 {
            let (g, wl) = gen_wall(2 * n + 2);
            let me = wall_to_mesh(&g, &wl, n).unwrap();
            assert_eq!(verify_mesh(&g, &me).unwrap().len(), 2 * n * n);
        }
    }

    #[test]
    fn mesh_in_subdivided_wall() {
        let (g, wl) = gen_subdivided_wall(8, 1);
        let me = wall_to_mesh(&g, &wl, 3).unwrap();
        assert_eq!(verify_mesh(&g, &me).unwrap().len(), 18);
        assert!(me.branching().iter().all(|&v| v < 64));
    }

    #[test]
    fn wall_too_small() {
        let (g, wl) = gen_wall(4);
        assert_eq!(
            wall_to_mesh(&g, &wl, 3),
            Err(WallError::TooSmall { wall: 4, mesh: 3, need: 8 })
        );
    }

    #[test]
    fn broken_labeling() {
        let (g, mut wl) = gen_wall(4);
        wl.grid[0].swap(0, 3);
        assert!(matches!(wl.validate(&g), Err(WallError::BrokenPath(..))));
    }

    #[test]
    fn mesh_violations() {
        let (g, wl) = gen_wall(8);
        let me = wall_to_mesh(&g, &wl, 3).unwrap();
        let mut bad = me.clone();
        bad.rows[0].truncate(3);
        assert!(verify_mesh(&g, &bad).is_err());
        let mut bad = me.clone();
        bad.cols.pop();
        assert!(matches!(verify_mesh(&g, &bad), Err(MeshError::Count { .. })));
        let json = me.to_json();
        assert!(json.starts_with("{\"N\":3,\"cols\""));
        assert_eq!(MeshEmbedding::from_json(&json).unwrap(), me);
    }
}
