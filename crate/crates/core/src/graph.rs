//! Finite simple undirected graphs and the DIMACS-like text format.
//!
//! Vertices are the ids `0..n`. The text format is 1-indexed:
//!
//! ```text
//! c optional comment lines
//! p edge <n> <m>
//! e <u> <v>
//! ```

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("loop at vertex {0}")]
    Loop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// A simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::Loop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Graph {
        assert_eq!(perm.len(), self.n(), "permutation length");
        let mut g = Graph::new(self.n());
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]).expect("relabeling by a permutation");
        }
        g
    }

    /// Subgraph induced by `keep`, with vertices renumbered in increasing order.
    /// Returns the subgraph and the map from new ids to old ids.
    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> (Graph, Vec<Vertex>) {
        let old: Vec<Vertex> = keep.iter().copied().collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in old.iter().enumerate() {
            new_id[v] = i;
        }
        let mut g = Graph::new(old.len());
        for (u, v) in self.edges() {
            if new_id[u] != usize::MAX && new_id[v] != usize::MAX {
                g.add_edge(new_id[u], new_id[v]).expect("induced subgraph");
            }
        }
        (g, old)
    }

    /// Replaces every edge by a path through `k` new vertices.
    pub fn subdivide(&self, k: usize) -> Graph {
        let mut g = Graph::new(self.n() + k * self.m());
        let mut next = self.n();
        for (u, v) in self.edges() {
            let mut prev = u;
            for _ in 0..k {
                g.add_edge(prev, next).unwrap();
                prev = next;
                next += 1;
            }
            g.add_edge(prev, v).unwrap();
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn parse_dimacs(text: &str) -> Result<Graph, ParseError> {
        let mut graph: Option<Graph> = None;
        let mut declared_m = 0;
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields[0] {
                "p" => {
                    if graph.is_some() {
                        return Err(ParseError::new(line_no, "second problem line"));
                    }
                    if fields.len() != 4 || fields[1] != "edge" {
                        return Err(ParseError::new(line_no, "expected `p edge <n> <m>`"));
                    }
                    let n = parse_count(fields[2], line_no)?;
                    declared_m = parse_count(fields[3], line_no)?;
                    graph = Some(Graph::new(n));
                }
                "e" => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| ParseError::new(line_no, "edge before problem line"))?;
                    if fields.len() != 3 {
                        return Err(ParseError::new(line_no, "expected `e <u> <v>`"));
                    }
                    let u = parse_vertex(fields[1], g.n(), line_no)?;
                    let v = parse_vertex(fields[2], g.n(), line_no)?;
                    g.add_edge(u, v)
                        .map_err(|e| ParseError::new(line_no, e.to_string()))?;
                }
                other => {
                    return Err(ParseError::new(line_no, format!("unknown line type `{other}`")));
                }
            }
        }
        let g = graph.ok_or_else(|| ParseError::new(last_line.max(1), "missing problem line"))?;
        if g.m() != declared_m {
            return Err(ParseError::new(
                last_line,
                format!("header declares {declared_m} edges, found {}", g.m()),
            ));
        }
        Ok(g)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p edge {} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
        }
        out
    }
}

fn parse_count(field: &str, line: usize) -> Result<usize, ParseError> {
    field
        .parse()
        .map_err(|_| ParseError::new(line, format!("`{field}` is not a non-negative integer")))
}

fn parse_vertex(field: &str, n: usize, line: usize) -> Result<Vertex, ParseError> {
    let v = parse_count(field, line)?;
    if v == 0 || v > n {
        return Err(ParseError::new(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Whether `x` and `y` have the same neighbours outside `{x, y}`.
pub fn are_twins(g: &Graph, x: Vertex, y: Vertex) -> Result<bool, GraphError> {
    g.check_vertex(x)?;
    g.check_vertex(y)?;
    if x == y {
        return Err(GraphError::Loop(x));
    }
    let strip = |a: Vertex, b: Vertex| g.neighbors(a).iter().copied().filter(move |&w| w != b);
    Ok(strip(x, y).eq(strip(y, x)))
}
