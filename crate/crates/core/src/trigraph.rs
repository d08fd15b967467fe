//! Trigraphs: graphs whose edges are black or red, and the contraction
//! operation that drives twin-width.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TrigraphError {
    #[error("vertex {0} is not a live vertex of the trigraph")]
    DeadVertex(Vertex),
    #[error("cannot contract vertex {0} with itself")]
    SelfContraction(Vertex),
    #[error("edge {0}-{1} would be both black and red")]
    ColorClash(Vertex, Vertex),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    Black,
    Red,
}

/// A trigraph over vertex slots `0..slots()`. Contraction kills one slot, so
/// the live vertices are a subset of the slots.
///
/// Black and red adjacency are kept in separate sets; an edge is never in both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trigraph {
    live: Vec<bool>,
    black: Vec<BTreeSet<Vertex>>,
    red: Vec<BTreeSet<Vertex>>,
}

impl Trigraph {
    /// `n` live vertices, no edges.
    pub fn new(n: usize) -> Self {
        Trigraph {
            live: vec![true; n],
            black: vec![BTreeSet::new(); n],
            red: vec![BTreeSet::new(); n],
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut t = Trigraph::new(g.n());
        for v in g.vertices() {
            t.black[v] = g.neighbors(v).iter().copied().collect();
        }
        t
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, color: Color) -> Result<(), TrigraphError> {
        self.check_live(u)?;
        self.check_live(v)?;
        if u == v {
            return Err(TrigraphError::SelfContraction(u));
        }
        let (same, other) = match color {
            Color::Black => (&mut self.black, &self.red),
            Color::Red => (&mut self.red, &self.black),
        };
        if other[u].contains(&v) {
            return Err(TrigraphError::ColorClash(u.min(v), u.max(v)));
        }
        same[u].insert(v);
        same[v].insert(u);
        Ok(())
    }

    pub fn check_live(&self, v: Vertex) -> Result<(), TrigraphError> {
        if self.is_live(v) {
            Ok(())
        } else {
            Err(TrigraphError::DeadVertex(v))
        }
    }

    pub fn is_live(&self, v: Vertex) -> bool {
        self.live.get(v).copied().unwrap_or(false)
    }

    pub fn slots(&self) -> usize {
        self.live.len()
    }

    pub fn live_count(&self) -> usize {
        self.live.iter().filter(|&&l| l).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.live.iter().enumerate().filter(|(_, &l)| l).map(|(v, _)| v)
    }

    pub fn black_neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.black[v]
    }

    pub fn red_neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.red[v]
    }

    /// All neighbours of `v`, black and red.
    pub fn neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.black[v].union(&self.red[v]).copied().collect()
    }

    pub fn edge(&self, u: Vertex, v: Vertex) -> Option<Color> {
        if !self.is_live(u) {
            None
        } else if self.black[u].contains(&v) {
            Some(Color::Black)
        } else if self.red[u].contains(&v) {
            Some(Color::Red)
        } else {
            None
        }
    }

    pub fn black_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        pairs(&self.black)
    }

    pub fn red_edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        pairs(&self.red)
    }

    pub fn red_degree(&self, v: Vertex) -> Result<usize, TrigraphError> {
        self.check_live(v)?;
        Ok(self.red[v].len())
    }

    pub fn max_red_degree(&self) -> usize {
        self.vertices().map(|v| self.red[v].len()).max().unwrap_or(0)
    }

    /// Contracts `x1` and `x2` into a new vertex stored in the smaller of the
    /// two slots. Returns that slot.
    ///
    /// The new vertex is adjacent to `(N(x1) ∪ N(x2)) \ {x1, x2}`; an edge is
    /// red if it was red at either end or the neighbour is in the symmetric
    /// difference `N(x1) Δ N(x2)`.
    pub fn contract_in_place(&mut self, x1: Vertex, x2: Vertex) -> Result<Vertex, TrigraphError> {
        self.check_live(x1)?;
        self.check_live(x2)?;
        if x1 == x2 {
            return Err(TrigraphError::SelfContraction(x1));
        }
        let (keep, gone) = (x1.min(x2), x1.max(x2));
        let n1 = self.neighbors(x1);
        let n2 = self.neighbors(x2);
        let mut red: BTreeSet<Vertex> = self.red[x1].union(&self.red[x2]).copied().collect();
        red.extend(n1.symmetric_difference(&n2).copied());
        red.remove(&x1);
        red.remove(&x2);
        let mut all: BTreeSet<Vertex> = n1.union(&n2).copied().collect();
        all.remove(&x1);
        all.remove(&x2);

        for &w in n1.iter().chain(n2.iter()) {
            self.black[w].remove(&x1);
            self.black[w].remove(&x2);
            self.red[w].remove(&x1);
            self.red[w].remove(&x2);
        }
        self.black[gone].clear();
        self.red[gone].clear();
        self.live[gone] = false;

        self.black[keep].clear();
        self.red[keep].clear();
        for &w in &all {
            if red.contains(&w) {
                self.red[keep].insert(w);
                self.red[w].insert(keep);
            } else {
                self.black[keep].insert(w);
                self.black[w].insert(keep);
            }
        }
        Ok(keep)
    }

    pub fn contract(&self, x1: Vertex, x2: Vertex) -> Result<Trigraph, TrigraphError> {
        let mut t = self.clone();
        t.contract_in_place(x1, x2)?;
        Ok(t)
    }

    /// Appends a fresh isolated live vertex and returns its slot.
    pub(crate) fn push_vertex(&mut self) -> Vertex {
        self.live.push(true);
        self.black.push(BTreeSet::new());
        self.red.push(BTreeSet::new());
        self.live.len() - 1
    }

    /// Drops every edge at `v`.
    pub(crate) fn isolate(&mut self, v: Vertex) {
        for w in std::mem::take(&mut self.black[v]) {
            self.black[w].remove(&v);
        }
        for w in std::mem::take(&mut self.red[v]) {
            self.red[w].remove(&v);
        }
    }

    /// Renames slot `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Trigraph {
        assert_eq!(perm.len(), self.slots(), "permutation length");
        let mut t = Trigraph {
            live: vec![false; self.slots()],
            black: vec![BTreeSet::new(); self.slots()],
            red: vec![BTreeSet::new(); self.slots()],
        };
        for v in 0..self.slots() {
            let p = perm[v];
            t.live[p] = self.live[v];
            t.black[p] = self.black[v].iter().map(|&w| perm[w]).collect();
            t.red[p] = self.red[v].iter().map(|&w| perm[w]).collect();
        }
        t
    }

    /// Whether `map` (a bijection from the live vertices of `self` onto the
    /// live vertices of `other`) preserves edges and their colours.
    pub fn matches_under(&self, other: &Trigraph, map: impl Fn(Vertex) -> Vertex) -> bool {
        if self.live_count() != other.live_count() {
            return false;
        }
        let mut image = BTreeSet::new();
        for v in self.vertices() {
            let w = map(v);
            if !other.is_live(w) || !image.insert(w) {
                return false;
            }
        }
        let translate = |set: &BTreeSet<Vertex>| set.iter().map(|&x| map(x)).collect::<BTreeSet<_>>();
        self.vertices().all(|v| {
            let w = map(v);
            translate(&self.black[v]) == other.black[w] && translate(&self.red[v]) == other.red[w]
        })
    }

    /// Graphviz rendering; red edges carry `color=red`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph trigraph {\n");
        for v in self.vertices() {
            writeln!(out, "  {v};").unwrap();
        }
        for (u, v) in self.black_edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        for (u, v) in self.red_edges() {
            writeln!(out, "  {u} -- {v} [color=red];").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn pairs(adj: &[BTreeSet<Vertex>]) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
    adj.iter()
        .enumerate()
        .flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
}
