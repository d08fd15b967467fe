//! Vertex-disjoint `A`–`B` paths and minimum vertex separators by unit
//! vertex-capacity max-flow.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisjointPaths {
    /// Each path starts in `A`, ends in `B`, and meets `A` and `B` only at
    /// its ends. Paths are induced in the host graph.
    pub paths: Vec<Vec<Vertex>>,
    /// Minimum `A`–`B` separator read off the final residual network.
    pub cut: Vec<Vertex>,
}

impl DisjointPaths {
    pub fn count(&self) -> usize {
        self.paths.len()
    }
}

struct Network {
    head: Vec<usize>,
    cap: Vec<i64>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(nodes: usize) -> Self {
        Network {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, from: usize, to: usize, cap: i64) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Edmonds–Karp. Arcs are scanned in insertion order.
    fn max_flow(&mut self, s: usize, t: usize) -> usize {
        let mut flow = 0;
        loop {
            let mut via = vec![usize::MAX; self.out.len()];
            let mut seen = vec![false; self.out.len()];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                if x == t {
                    break;
                }
                for &e in &self.out[x] {
                    let y = self.head[e];
                    if self.cap[e] > 0 && !seen[y] {
                        seen[y] = true;
                        via[y] = e;
                        queue.push_back(y);
                    }
                }
            }
            if !seen[t] {
                return flow;
            }
            let mut y = t;
            while y != s {
                let e = via[y];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                y = self.head[e ^ 1];
            }
            flow += 1;
        }
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &e in &self.out[x] {
                let y = self.head[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// Maximum family of vertex-disjoint `A`–`B` paths and a minimum separator.
/// A vertex of `A ∩ B` is a path of length zero.
pub fn max_disjoint_paths(g: &Graph, a: &[Vertex], b: &[Vertex]) -> DisjointPaths {
    disjoint_paths_within(g, &vec![true; g.n()], a, b)
}

pub fn min_vertex_cut(g: &Graph, a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    max_disjoint_paths(g, a, b).cut
}

/// Same as [`max_disjoint_paths`] inside the subgraph induced by the
/// vertices with `allowed[v]`. Terminals outside it are ignored.
pub fn disjoint_paths_within(g: &Graph, allowed: &[bool], a: &[Vertex], b: &[Vertex]) -> DisjointPaths {
    let n = g.n();
    let (s, t) = (2 * n, 2 * n + 1);
    let inf = n as i64 + 1;
    let mut net = Network::new(2 * n + 2);
    let mut in_a = vec![false; n];
    let mut in_b = vec![false; n];
    for &v in a {
        if allowed[v] {
            in_a[v] = true;
        }
    }
    for &v in b {
        if allowed[v] {
            in_b[v] = true;
        }
    }
    for v in g.vertices().filter(|&v| allowed[v]) {
        net.arc(2 * v, 2 * v + 1, 1);
    }
    for v in g.vertices().filter(|&v| in_a[v]) {
        net.arc(s, 2 * v, inf);
    }
    for v in g.vertices().filter(|&v| in_b[v]) {
        net.arc(2 * v + 1, t, inf);
    }
    for (u, v) in g.edges() {
        if allowed[u] && allowed[v] {
            net.arc(2 * u + 1, 2 * v, inf);
            net.arc(2 * v + 1, 2 * u, inf);
        }
    }
    let flow = net.max_flow(s, t);

    let reach = net.reachable(s);
    let cut: Vec<Vertex> = g
        .vertices()
        .filter(|&v| allowed[v] && reach[2 * v] && !reach[2 * v + 1])
        .collect();
    debug_assert_eq!(cut.len(), flow);

    let mut paths = Vec::with_capacity(flow);
    let mut used = vec![0i64; net.head.len()];
    for &e0 in &net.out[s] {
        if e0 % 2 == 1 || net.cap[e0 ^ 1] == 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut x = net.head[e0];
        used[e0] += 1;
        while x != t {
            if x % 2 == 0 {
                path.push(x / 2);
            }
            let e = *net.out[x]
                .iter()
                .find(|&&e| e % 2 == 0 && net.cap[e ^ 1] - used[e] > 0)
                .expect("flow is conserved");
            used[e] += 1;
            x = net.head[e];
        }
        paths.push(trim(g, path, &in_a, &in_b));
    }
    debug_assert_eq!(paths.len(), flow);
    DisjointPaths { paths, cut }
}

/// Shortens a walk so it meets `A` and `B` only at its ends and has no
/// chords.
fn trim(g: &Graph, path: Vec<Vertex>, in_a: &[bool], in_b: &[bool]) -> Vec<Vertex> {
    let start = path.iter().rposition(|&v| in_a[v]).expect("path starts in A");
    let len = path[start..].iter().position(|&v| in_b[v]).expect("path ends in B");
    let path = &path[start..=start + len];
    let mut out = vec![path[0]];
    let mut i = 0;
    while i + 1 < path.len() {
        let j = (i + 1..path.len()).rev().find(|&j| g.has_edge(path[i], path[j])).unwrap();
        out.push(path[j]);
        i = j;
    }
    out
}
