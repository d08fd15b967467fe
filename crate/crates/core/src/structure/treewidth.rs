//! Exact tree-width at desk scale, tree decompositions and their verifier.
//!
//! Graphs with at most [`DP_MAX_VERTICES`] vertices are solved by dynamic
//! programming over vertex subsets. Larger graphs go through a depth-first
//! search over elimination orders that prunes with minor-min-width, applies
//! the almost-simplicial reduction, and memoizes eliminated sets.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, ParseError, Vertex};

pub const DP_MAX_VERTICES: usize = 18;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TreeDecomposition {
    pub bags: Vec<Vec<Vertex>>,
    /// Tree edges between bag indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TdViolation {
    #[error("decomposition has no bags")]
    NoBags,
    #[error("bag {bag} holds vertex {vertex} outside the graph")]
    VertexOutOfRange { bag: usize, vertex: Vertex },
    #[error("tree edge {a}-{b} is not between two distinct bags")]
    BadTreeEdge { a: usize, b: usize },
    #[error("bags and tree edges do not form a tree")]
    NotATree,
    #[error("vertex {0} is in no bag")]
    VertexUncovered(Vertex),
    #[error("edge {0}-{1} is in no bag")]
    EdgeUncovered(Vertex, Vertex),
    #[error("bags containing vertex {0} do not form a subtree")]
    SubtreeDisconnected(Vertex),
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// PACE `.td` text with 1-indexed bags and vertices.
    pub fn to_pace(&self, n: usize) -> String {
        let mut out = format!("s td {} {} {}\n", self.bags.len(), self.width() + 1, n);
        for (i, bag) in self.bags.iter().enumerate() {
            out.push_str(&format!("b {}", i + 1));
            for v in bag {
                out.push_str(&format!(" {}", v + 1));
            }
            out.push('\n');
        }
        for &(a, b) in &self.edges {
            out.push_str(&format!("{} {}\n", a + 1, b + 1));
        }
        out
    }

    /// Parses PACE `.td` text; returns the decomposition and the declared
    /// vertex count.
    pub fn parse_pace(text: &str) -> Result<(TreeDecomposition, usize), ParseError> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut bags: Vec<Option<Vec<Vertex>>> = Vec::new();
        let mut edges = Vec::new();
        let num = |tok: &str, line: usize| {
            tok.parse::<usize>()
                .map_err(|_| ParseError::new(line, format!("expected a non-negative integer, found `{tok}`")))
        };
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let toks: Vec<&str> = raw.split_whitespace().collect();
            match toks.first().copied() {
                None | Some("c") => continue,
                Some("s") => {
                    if header.is_some() {
                        return Err(ParseError::new(line, "duplicate header"));
                    }
                    if toks.len() != 5 || toks[1] != "td" {
                        return Err(ParseError::new(line, "header must be `s td <bags> <width+1> <n>`"));
                    }
                    let h = (num(toks[2], line)?, num(toks[3], line)?, num(toks[4], line)?);
                    bags = vec![None; h.0];
                    header = Some(h);
                }
                Some(tok) => {
                    let (nb, _, n) = header.ok_or_else(|| ParseError::new(line, "missing `s td` header"))?;
                    if tok == "b" {
                        if toks.len() < 2 {
                            return Err(ParseError::new(line, "bag line needs an id"));
                        }
                        let id = num(toks[1], line)?;
                        if id == 0 || id > nb {
                            return Err(ParseError::new(line, format!("bag id {id} outside 1..={nb}")));
                        }
                        if bags[id - 1].is_some() {
                            return Err(ParseError::new(line, format!("bag {id} listed twice")));
                        }
                        let mut bag = Vec::with_capacity(toks.len() - 2);
                        for t in &toks[2..] {
                            let v = num(t, line)?;
                            if v == 0 || v > n {
                                return Err(ParseError::new(line, format!("vertex {v} outside 1..={n}")));
                            }
                            bag.push(v - 1);
                        }
                        bags[id - 1] = Some(bag);
                    } else {
                        if toks.len() != 2 {
                            return Err(ParseError::new(line, "tree edge line must be `<bag> <bag>`"));
                        }
                        let (a, b) = (num(toks[0], line)?, num(toks[1], line)?);
                        if a == 0 || a > nb || b == 0 || b > nb {
                            return Err(ParseError::new(line, format!("tree edge {a} {b} names a missing bag")));
                        }
                        edges.push((a - 1, b - 1));
                    }
                }
            }
        }
        let (_, w, n) = header.ok_or_else(|| ParseError::new(text.lines().count().max(1), "missing `s td` header"))?;
        let mut out = Vec::with_capacity(bags.len());
        for (i, bag) in bags.into_iter().enumerate() {
            out.push(bag.ok_or_else(|| ParseError::new(text.lines().count(), format!("bag {} never listed", i + 1)))?);
        }
        let td = TreeDecomposition { bags: out, edges };
        let actual = td.bags.iter().map(|b| b.len()).max().unwrap_or(0);
        if actual != w {
            return Err(ParseError::new(1, format!("header declares bag size {w} but largest bag has {actual}")));
        }
        Ok((td, n))
    }
}

/// Checks the three tree-decomposition conditions literally and returns the
/// width.
pub fn verify_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<usize, TdViolation> {
    let nb = td.bags.len();
    if nb == 0 {
        return Err(TdViolation::NoBags);
    }
    for (i, bag) in td.bags.iter().enumerate() {
        if let Some(&v) = bag.iter().find(|&&v| v >= g.n()) {
            return Err(TdViolation::VertexOutOfRange { bag: i, vertex: v });
        }
    }
    let mut adj = vec![Vec::new(); nb];
    for &(a, b) in &td.edges {
        if a >= nb || b >= nb || a == b {
            return Err(TdViolation::BadTreeEdge { a, b });
        }
        adj[a].push(b);
        adj[b].push(a);
    }
    if td.edges.len() != nb - 1 || reach(&adj, 0, |_| true).iter().filter(|&&r| r).count() != nb {
        return Err(TdViolation::NotATree);
    }
    let mut holds = vec![Vec::new(); g.n()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            holds[v].push(i);
        }
    }
    for v in g.vertices() {
        if holds[v].is_empty() {
            return Err(TdViolation::VertexUncovered(v));
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Err(TdViolation::EdgeUncovered(u, v));
        }
    }
    for v in g.vertices() {
        let inside: Vec<bool> = td.bags.iter().map(|b| b.contains(&v)).collect();
        let r = reach(&adj, holds[v][0], |i| inside[i]);
        if holds[v].iter().any(|&i| !r[i]) {
            return Err(TdViolation::SubtreeDisconnected(v));
        }
    }
    Ok(td.width())
}

fn reach(adj: &[Vec<usize>], start: usize, allowed: impl Fn(usize) -> bool) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Fixed-size bit set over the vertices of one graph.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64).max(1)])
    }
    fn full(n: usize) -> Self {
        let mut b = Bits::empty(n);
        for v in 0..n {
            b.insert(v);
        }
        b
    }
    fn insert(&mut self, v: usize) {
        self.0[v / 64] |= 1 << (v % 64);
    }
    fn remove(&mut self, v: usize) {
        self.0[v / 64] &= !(1 << (v % 64));
    }
    fn contains(&self, v: usize) -> bool {
        self.0[v / 64] >> (v % 64) & 1 == 1
    }
    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
    fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }
}

/// A graph shrinking under vertex elimination.
#[derive(Clone)]
struct Elim {
    alive: Bits,
    adj: Vec<Bits>,
}

impl Elim {
    fn new(g: &Graph) -> Self {
        let mut adj = vec![Bits::empty(g.n()); g.n()];
        for (u, v) in g.edges() {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Elim {
            alive: Bits::full(g.n()),
            adj,
        }
    }

    fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Turns the neighbourhood of `v` into a clique and removes `v`.
    fn eliminate(&mut self, v: usize) {
        let nb: Vec<usize> = self.adj[v].iter().collect();
        for &a in &nb {
            let mut row = self.adj[v].clone();
            row.remove(a);
            self.adj[a].union_with(&row);
            self.adj[a].remove(v);
        }
        self.adj[v] = Bits::empty(self.adj.len());
        self.alive.remove(v);
    }

    /// Whether all neighbours but at most one form a clique.
    fn almost_simplicial(&self, v: usize) -> bool {
        let nb: Vec<usize> = self.adj[v].iter().collect();
        let missing = |skip: Option<usize>| {
            nb.iter().all(|&a| {
                Some(a) == skip || {
                    let mut need = self.adj[v].clone();
                    need.remove(a);
                    if let Some(s) = skip {
                        need.remove(s);
                    }
                    need.is_subset(&self.adj[a])
                }
            })
        };
        if missing(None) {
            return true;
        }
        nb.iter().any(|&s| missing(Some(s)))
    }

    fn fill_in(&self, v: usize) -> usize {
        let nb: Vec<usize> = self.adj[v].iter().collect();
        let mut fill = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !self.adj[a].contains(b) {
                    fill += 1;
                }
            }
        }
        fill
    }
}

/// Width of the elimination order: the largest number of later neighbours
/// any vertex has when it is eliminated.
pub fn elimination_width(g: &Graph, order: &[Vertex]) -> usize {
    let mut e = Elim::new(g);
    let mut width = 0;
    for &v in order {
        width = width.max(e.degree(v));
        e.eliminate(v);
    }
    width
}

/// Tree decomposition with one bag per vertex: `{v}` plus its neighbours at
/// elimination time. Bags are stored in elimination order, so the last bag
/// is the root.
pub fn from_elimination_order(g: &Graph, order: &[Vertex]) -> TreeDecomposition {
    let n = g.n();
    assert_eq!(order.len(), n, "order must list every vertex once");
    if n == 0 {
        return TreeDecomposition {
            bags: vec![Vec::new()],
            edges: Vec::new(),
        };
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut e = Elim::new(g);
    let mut bags = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut roots = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<Vertex> = e.adj[v].iter().collect();
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        match later.iter().min_by_key(|&&w| pos[w]) {
            Some(&w) => edges.push((i, pos[w])),
            None => roots.push(i),
        }
        e.eliminate(v);
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition { bags, edges }
}

/// Exact tree-width by dynamic programming over vertex subsets:
/// `TW(S) = min over v in S of max(TW(S - v), |Q(S - v, v)|)` where
/// `Q(S, v)` are the vertices outside `S + v` reachable from `v` through `S`.
/// Returns the width and an optimal elimination order.
pub fn treewidth_dp(g: &Graph) -> (usize, Vec<Vertex>) {
    let n = g.n();
    assert!(n <= DP_MAX_VERTICES, "subset dynamic programming supports at most {DP_MAX_VERTICES} vertices");
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let size = 1usize << n;
    let mut tw = vec![u8::MAX; size];
    let mut best = vec![0u8; size];
    tw[0] = 0;
    for s in 1..size as u32 {
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            // component of v inside G[without + v]
            let inside = without | 1 << v;
            let mut comp = 1u32 << v;
            let mut frontier = comp;
            while frontier != 0 {
                let mut grow = 0;
                let mut f = frontier;
                while f != 0 {
                    let x = f.trailing_zeros() as usize;
                    f &= f - 1;
                    grow |= adj[x];
                }
                grow &= inside & !comp;
                comp |= grow;
                frontier = grow;
            }
            let mut boundary = 0;
            let mut c = comp;
            while c != 0 {
                let x = c.trailing_zeros() as usize;
                c &= c - 1;
                boundary |= adj[x];
            }
            boundary &= !inside;
            let value = tw[without as usize].max(boundary.count_ones() as u8);
            if value < tw[s as usize] {
                tw[s as usize] = value;
                best[s as usize] = v as u8;
            }
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut s = (size - 1) as u32;
    while s != 0 {
        let v = best[s as usize] as usize;
        order.push(v);
        s &= !(1 << v);
    }
    order.reverse();
    (tw[size - 1] as usize, order)
}

/// Minor-min-width lower bound: repeatedly contract a minimum-degree vertex
/// into its minimum-degree neighbour; the largest minimum degree seen bounds
/// the tree-width from below.
pub fn minor_min_width(g: &Graph) -> usize {
    let n = g.n();
    let mut adj: Vec<HashSet<Vertex>> = g.vertices().map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut alive: Vec<bool> = vec![true; n];
    let mut lower = 0;
    for _ in 0..n {
        let v = match (0..n).filter(|&v| alive[v]).min_by_key(|&v| (adj[v].len(), v)) {
            Some(v) => v,
            None => break,
        };
        lower = lower.max(adj[v].len());
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        if let Some(u) = nb.iter().copied().min_by_key(|&w| (adj[w].len(), w)) {
            for &w in &nb {
                adj[w].remove(&v);
                if w != u {
                    adj[w].insert(u);
                    adj[u].insert(w);
                }
            }
        }
        adj[v].clear();
        alive[v] = false;
    }
    lower
}

/// Greedy min-fill elimination order, ties to the smaller degree then id.
pub fn min_fill_order(g: &Graph) -> Vec<Vertex> {
    let mut e = Elim::new(g);
    let mut order = Vec::with_capacity(g.n());
    while e.alive.len() > 0 {
        let v = e
            .alive
            .iter()
            .min_by_key(|&v| (e.fill_in(v), e.degree(v), v))
            .unwrap();
        order.push(v);
        e.eliminate(v);
    }
    order
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwDecision {
    Yes(TreeDecomposition),
    No,
    Unknown { expanded: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Treewidth {
    Exact { width: usize, decomposition: TreeDecomposition },
    /// Budget ran out; `decomposition` has width `upper`.
    Unknown { lower: usize, upper: usize, decomposition: TreeDecomposition },
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    budget: u64,
    expanded: u64,
    failed: HashSet<Bits>,
    order: Vec<Vertex>,
}

enum Found {
    Yes,
    No,
    OutOfBudget,
}

impl Search<'_> {
    fn run(&mut self, mut e: Elim) -> Found {
        let depth = self.order.len();
        let key = e.alive.clone();
        if self.failed.contains(&key) {
            return Found::No;
        }
        // safe reductions
        loop {
            if e.alive.len() <= self.k + 1 {
                self.order.extend(e.alive.iter());
                return Found::Yes;
            }
            let pick = e.alive.iter().find(|&v| e.degree(v) <= self.k && e.almost_simplicial(v));
            match pick {
                Some(v) => {
                    self.order.push(v);
                    e.eliminate(v);
                }
                None => break,
            }
        }
        if self.failed.contains(&e.alive) {
            self.order.truncate(depth);
            self.failed.insert(key);
            return Found::No;
        }
        if self.expanded >= self.budget {
            self.order.truncate(depth);
            return Found::OutOfBudget;
        }
        self.expanded += 1;
        if minor_min_width(&self.current_graph(&e)) > self.k {
            self.mark_failed(key, e.alive, depth);
            return Found::No;
        }
        let mut candidates: Vec<(usize, usize)> =
            e.alive.iter().filter(|&v| e.degree(v) <= self.k).map(|v| (e.degree(v), v)).collect();
        candidates.sort_unstable();
        let mid = self.order.len();
        for (_, v) in candidates {
            let mut child = e.clone();
            child.eliminate(v);
            self.order.push(v);
            match self.run(child) {
                Found::Yes => return Found::Yes,
                Found::OutOfBudget => return Found::OutOfBudget,
                Found::No => self.order.truncate(mid),
            }
        }
        self.mark_failed(key, e.alive, depth);
        Found::No
    }

    fn mark_failed(&mut self, key: Bits, reduced: Bits, depth: usize) {
        self.order.truncate(depth);
        self.failed.insert(key);
        self.failed.insert(reduced);
    }

    fn current_graph(&self, e: &Elim) -> Graph {
        let mut h = Graph::new(self.g.n());
        for u in e.alive.iter() {
            for v in e.adj[u].iter().filter(|&v| v > u) {
                h.add_edge(u, v).unwrap();
            }
        }
        h
    }
}

/// Decides whether the tree-width is at most `k`. The budget counts states
/// expanded by the elimination search and is unused by the subset
/// dynamic programming.
pub fn treewidth_decide(g: &Graph, k: usize, budget: u64) -> TwDecision {
    if g.n() <= DP_MAX_VERTICES {
        let (w, order) = treewidth_dp(g);
        return if w <= k {
            TwDecision::Yes(from_elimination_order(g, &order))
        } else {
            TwDecision::No
        };
    }
    let heuristic = min_fill_order(g);
    if elimination_width(g, &heuristic) <= k {
        return TwDecision::Yes(from_elimination_order(g, &heuristic));
    }
    if minor_min_width(g) > k {
        return TwDecision::No;
    }
    let mut search = Search {
        g,
        k,
        budget,
        expanded: 0,
        failed: HashSet::new(),
        order: Vec::with_capacity(g.n()),
    };
    match search.run(Elim::new(g)) {
        Found::Yes => {
            debug_assert!(elimination_width(g, &search.order) <= k);
            TwDecision::Yes(from_elimination_order(g, &search.order))
        }
        Found::No => TwDecision::No,
        Found::OutOfBudget => TwDecision::Unknown {
            expanded: search.expanded,
        },
    }
}

/// Exact tree-width with an optimal decomposition, or bounds when the
/// budget runs out.
pub fn treewidth_exact(g: &Graph, budget: u64) -> Treewidth {
    if g.n() <= DP_MAX_VERTICES {
        let (width, order) = treewidth_dp(g);
        return Treewidth::Exact {
            width,
            decomposition: from_elimination_order(g, &order),
        };
    }
    let order = min_fill_order(g);
    let upper = elimination_width(g, &order);
    let upper_td = from_elimination_order(g, &order);
    for k in minor_min_width(g)..upper {
        match treewidth_decide(g, k, budget) {
            TwDecision::Yes(decomposition) => return Treewidth::Exact { width: k, decomposition },
            TwDecision::No => continue,
            TwDecision::Unknown { .. } => {
                return Treewidth::Unknown {
                    lower: k,
                    upper,
                    decomposition: upper_td,
                }
            }
        }
    }
    Treewidth::Exact {
        width: upper,
        decomposition: upper_td,
    }
}
