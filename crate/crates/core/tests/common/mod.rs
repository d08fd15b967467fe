//! Independent oracles shared by the integration suites. Nothing here calls
//! into the solvers under test.
#![allow(dead_code)]

use std::collections::BTreeSet;

use tww_core::{Color, Graph, Trigraph, Vertex};

/// Adjacency-matrix trigraph: 0 = none, 1 = black, 2 = red.
#[derive(Clone)]
struct Mat {
    alive: Vec<bool>,
    m: Vec<Vec<u8>>,
}

impl Mat {
    fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut m = vec![vec![0u8; n]; n];
        for (u, v) in g.edges() {
            m[u][v] = 1;
            m[v][u] = 1;
        }
        Mat { alive: vec![true; n], m }
    }

    /// Merges `b` into `a`.
    fn contract(&self, a: usize, b: usize) -> Mat {
        let mut next = self.clone();
        for x in 0..self.m.len() {
            if !self.alive[x] || x == a || x == b {
                continue;
            }
            let (ea, eb) = (self.m[a][x], self.m[b][x]);
            let e = if ea == 1 && eb == 1 {
                1
            } else if ea == 0 && eb == 0 {
                0
            } else {
                2
            };
            next.m[a][x] = e;
            next.m[x][a] = e;
            next.m[b][x] = 0;
            next.m[x][b] = 0;
        }
        next.m[a][b] = 0;
        next.m[b][a] = 0;
        next.alive[b] = false;
        next
    }

    fn max_red(&self) -> usize {
        (0..self.m.len())
            .filter(|&x| self.alive[x])
            .map(|x| self.m[x].iter().filter(|&&e| e == 2).count())
            .max()
            .unwrap_or(0)
    }

    fn live(&self) -> Vec<usize> {
        (0..self.m.len()).filter(|&x| self.alive[x]).collect()
    }
}

/// Twin-width by exhaustive search over every contraction order, without
/// memoization. Meant for `n <= 7`.
pub fn brute_twinwidth(g: &Graph) -> usize {
    fn go(t: &Mat, best: &mut usize, cur: usize) {
        let live = t.live();
        if live.len() <= 1 {
            *best = (*best).min(cur);
            return;
        }
        for (i, &a) in live.iter().enumerate() {
            for &b in &live[i + 1..] {
                let next = t.contract(a, b);
                let w = cur.max(next.max_red());
                if w < *best {
                    go(&next, best, w);
                }
            }
        }
    }
    let mut best = g.n();
    go(&Mat::from_graph(g), &mut best, 0);
    best
}

/// Tree-width by the subset recurrence
/// `TW(S) = min_{v in S} max(TW(S - v), |Q(S - v, v)|)` where `Q(S, v)` is
/// the set of vertices outside `S + v` reachable from `v` through `S`.
pub fn subset_treewidth(g: &Graph) -> usize {
    let n = g.n();
    if n == 0 {
        return 0;
    }
    assert!(n <= 20);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let q = |s: u32, v: usize| -> u32 {
        let mut seen = 1u32 << v;
        let mut stack = vec![v];
        let mut out = 0u32;
        while let Some(x) = stack.pop() {
            let mut nb = adj[x] & !seen;
            while nb != 0 {
                let y = nb.trailing_zeros() as usize;
                nb &= nb - 1;
                seen |= 1 << y;
                if s >> y & 1 == 1 {
                    stack.push(y);
                } else {
                    out |= 1 << y;
                }
            }
        }
        out.count_ones()
    };
    let full = (1u32 << n) - 1;
    let mut tw = vec![u32::MAX; 1 << n];
    tw[0] = 0;
    for s in 1..=full {
        let mut bits = s;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << v);
            let val = tw[rest as usize].max(q(rest, v));
            if val < tw[s as usize] {
                tw[s as usize] = val;
            }
        }
    }
    tw[full as usize] as usize
}

/// `P4`-free test: a graph is a cograph iff no induced path on four vertices.
pub fn is_cograph(g: &Graph) -> bool {
    let n = g.n();
    let e = |a: usize, b: usize| g.has_edge(a, b);
    for a in 0..n {
        for b in 0..n {
            if b == a || !e(a, b) {
                continue;
            }
            for c in 0..n {
                if c == a || c == b || !e(b, c) || e(a, c) {
                    continue;
                }
                for d in 0..n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    if e(c, d) && !e(a, d) && !e(b, d) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// `K_{2,2}` subgraph test: two vertices with two common neighbours.
pub fn has_c4(g: &Graph) -> bool {
    let n = g.n();
    (0..n).any(|u| {
        (u + 1..n).any(|v| g.neighbors(u).iter().filter(|w| g.has_edge(**w, v)).count() >= 2)
    })
}

/// Whether removing `cut` leaves no path from `a` to `b`.
pub fn separates(g: &Graph, cut: &BTreeSet<Vertex>, a: &[Vertex], b: &[Vertex]) -> bool {
    let bset: BTreeSet<Vertex> = b.iter().copied().collect();
    let mut seen = vec![false; g.n()];
    let mut stack: Vec<Vertex> = a.iter().copied().filter(|v| !cut.contains(v)).collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(x) = stack.pop() {
        if bset.contains(&x) {
            return false;
        }
        for &y in g.neighbors(x) {
            if !seen[y] && !cut.contains(&y) {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    true
}

/// Colour-exact equality of a quotient against a trigraph, matching vertices
/// through `map`.
pub fn same_trigraph(a: &Trigraph, b: &Trigraph, map: impl Fn(Vertex) -> Vertex) -> bool {
    let av: Vec<Vertex> = a.vertices().collect();
    if av.len() != b.live_count() {
        return false;
    }
    for (i, &x) in av.iter().enumerate() {
        for &y in &av[i + 1..] {
            let ea: Option<Color> = a.edge(x, y);
            if ea != b.edge(map(x), map(y)) {
                return false;
            }
        }
    }
    true
}
