//! Exact twin-width at desk scale, the cograph fast path, and a greedy
//! baseline.
//!
//! The exact search walks contraction states depth-first. A state is the
//! partition of the original vertices into contracted groups; its quotient is
//! the current trigraph. Children whose maximum red degree exceeds `d` are
//! pruned, and partitions already explored are skipped. The budget counts
//! expanded states, so outcomes do not depend on hardware.

use std::collections::HashSet;

use thiserror::Error;

use crate::graph::Graph;
use crate::sequence::{verify_width, ContractionSequence, Replay};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest graph the bitmask search accepts.
pub const MAX_EXACT_VERTICES: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    #[error("exact search supports at most {MAX_EXACT_VERTICES} vertices, graph has {0}")]
    TooLarge(usize),
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(ContractionSequence),
    No,
    Unknown { expanded: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactTwinWidth {
    Value { width: usize, sequence: ContractionSequence },
    /// Every `d <= cap` was refuted.
    AboveCap { cap: usize },
    Unknown { lower: usize, expanded: u64 },
}

/// Trigraph on at most 64 slots, adjacency as bitmasks. Slot `s` holds the
/// group whose smallest original vertex is `s`.
#[derive(Clone)]
struct BitState {
    live: u64,
    members: Vec<u64>,
    adj: Vec<u64>,
    red: Vec<u64>,
    ext: Vec<usize>,
}

impl BitState {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut adj = vec![0u64; n];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        BitState {
            live: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            members: (0..n).map(|v| 1u64 << v).collect(),
            adj,
            red: vec![0; n],
            ext: (0..n).collect(),
        }
    }

    fn live_count(&self) -> u32 {
        self.live.count_ones()
    }

    fn slots(&self) -> impl Iterator<Item = usize> {
        bits(self.live)
    }

    /// Contracts slots `a < b`, the result lives in `a`.
    fn contract(&mut self, a: usize, b: usize, product: usize) {
        let pair = (1u64 << a) | (1u64 << b);
        let adj = (self.adj[a] | self.adj[b]) & !pair;
        let red = (self.red[a] | self.red[b] | (self.adj[a] ^ self.adj[b])) & !pair;
        let touched = self.adj[a] | self.adj[b];
        for w in bits(touched & !pair) {
            self.adj[w] &= !pair;
            self.red[w] &= !pair;
        }
        for w in bits(adj) {
            self.adj[w] |= 1 << a;
            if red >> w & 1 == 1 {
                self.red[w] |= 1 << a;
            }
        }
        self.adj[a] = adj;
        self.red[a] = red;
        self.adj[b] = 0;
        self.red[b] = 0;
        self.members[a] |= self.members[b];
        self.members[b] = 0;
        self.live &= !(1u64 << b);
        self.ext[a] = product;
    }

    /// Max red degree after contracting `a < b`, without mutating.
    fn red_degree_after(&self, a: usize, b: usize) -> u32 {
        let pair = (1u64 << a) | (1u64 << b);
        let red = (self.red[a] | self.red[b] | (self.adj[a] ^ self.adj[b])) & !pair;
        let mut best = red.count_ones();
        for w in self.slots() {
            if w == a || w == b {
                continue;
            }
            let mut r = self.red[w] & !pair;
            if red >> w & 1 == 1 {
                r |= 1 << a;
            }
            best = best.max(r.count_ones());
        }
        best
    }

    /// Sorted member masks: equal for equal partitions, whatever the path.
    fn key(&self) -> Vec<u64> {
        let mut key: Vec<u64> = self.slots().map(|s| self.members[s]).collect();
        key.sort_unstable();
        key
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

struct Search {
    n: usize,
    d: u32,
    budget: u64,
    expanded: u64,
    failed: HashSet<Vec<u64>>,
    pairs: Vec<(usize, usize)>,
}

enum Outcome {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search {
    fn run(&mut self, state: &BitState) -> Outcome {
        let live = state.live_count() as usize;
        if live <= 1 {
            return Outcome::Found;
        }
        if live <= self.d as usize + 1 {
            // any order keeps red degree below the vertex count
            let mut st = state.clone();
            while st.live_count() > 1 {
                let a = st.live.trailing_zeros() as usize;
                let b = (st.live & (st.live - 1)).trailing_zeros() as usize;
                self.push_pair(&mut st, a, b);
            }
            return Outcome::Found;
        }
        let key = state.key();
        if self.failed.contains(&key) {
            return Outcome::Exhausted;
        }
        if self.expanded >= self.budget {
            return Outcome::OutOfBudget;
        }
        self.expanded += 1;

        let slots: Vec<usize> = state.slots().collect();
        let mut candidates = Vec::new();
        for (i, &a) in slots.iter().enumerate() {
            for &b in &slots[i + 1..] {
                let deg = state.red_degree_after(a, b);
                if deg <= self.d {
                    candidates.push((deg, a, b));
                }
            }
        }
        candidates.sort_unstable();
        for (_, a, b) in candidates {
            let mut child = state.clone();
            self.push_pair(&mut child, a, b);
            match self.run(&child) {
                Outcome::Found => return Outcome::Found,
                Outcome::OutOfBudget => return Outcome::OutOfBudget,
                Outcome::Exhausted => {
                    self.pairs.pop();
                }
            }
        }
        self.failed.insert(key);
        Outcome::Exhausted
    }

    fn push_pair(&mut self, st: &mut BitState, a: usize, b: usize) {
        let product = self.n + self.pairs.len() + 1;
        self.pairs.push((st.ext[a], st.ext[b]));
        st.contract(a, b, product);
    }
}

fn check_size(g: &Graph) -> Result<(), SolverError> {
    if g.n() == 0 {
        return Err(SolverError::Empty);
    }
    if g.n() > MAX_EXACT_VERTICES {
        return Err(SolverError::TooLarge(g.n()));
    }
    Ok(())
}

fn certified(g: &Graph, pairs: &[(usize, usize)], d: usize) -> ContractionSequence {
    let seq = ContractionSequence::from_pairs(g.n(), pairs).expect("solver emits well-formed sequences");
    let report = verify_width(g, &seq).expect("solver sequence replays");
    assert!(report.width <= d, "solver certificate has width {} > {d}", report.width);
    seq
}

/// Decides whether `g` admits a contraction sequence of width at most `d`.
/// A `Yes` certificate is always re-verified by replay before it is returned.
pub fn decide_twinwidth_at_most(g: &Graph, d: usize, budget: u64) -> Result<Decision, SolverError> {
    check_size(g)?;
    if d == 0 {
        return Ok(match twinwidth_zero(g) {
            Some(seq) => Decision::Yes(seq),
            None => Decision::No,
        });
    }
    let mut search = Search {
        n: g.n(),
        d: d.min(u32::MAX as usize) as u32,
        budget,
        expanded: 0,
        failed: HashSet::new(),
        pairs: Vec::new(),
    };
    let root = BitState::new(g);
    Ok(match search.run(&root) {
        Outcome::Found => Decision::Yes(certified(g, &search.pairs, d)),
        Outcome::Exhausted => Decision::No,
        Outcome::OutOfBudget => Decision::Unknown {
            expanded: search.expanded,
        },
    })
}

/// Smallest `d <= cap` with a `d`-contraction sequence. Each level gets the
/// full `budget`.
pub fn twinwidth_exact(g: &Graph, cap: usize, budget: u64) -> Result<ExactTwinWidth, SolverError> {
    check_size(g)?;
    for d in 0..=cap {
        match decide_twinwidth_at_most(g, d, budget)? {
            Decision::Yes(sequence) => return Ok(ExactTwinWidth::Value { width: d, sequence }),
            Decision::No => continue,
            Decision::Unknown { expanded } => return Ok(ExactTwinWidth::Unknown { lower: d, expanded }),
        }
    }
    Ok(ExactTwinWidth::AboveCap { cap })
}

/// Contracts twins until one vertex remains. Succeeds exactly on cographs;
/// the returned sequence only ever merges twins, so its width is 0.
pub fn twinwidth_zero(g: &Graph) -> Option<ContractionSequence> {
    if g.n() == 0 {
        return None;
    }
    let mut replay = Replay::new(g);
    let mut pairs = Vec::with_capacity(g.n() - 1);
    while replay.trigraph().live_count() > 1 {
        let (u, v) = first_twin_pair(&replay)?;
        replay.contract(u, v).expect("live ids");
        pairs.push((u, v));
    }
    Some(ContractionSequence::from_pairs(g.n(), &pairs).expect("twin contractions form a sequence"))
}

fn first_twin_pair(replay: &Replay) -> Option<(usize, usize)> {
    let t = replay.trigraph();
    let ids = replay.live_ids();
    for (i, &u) in ids.iter().enumerate() {
        let su = replay.slot(u).unwrap();
        for &v in &ids[i + 1..] {
            let sv = replay.slot(v).unwrap();
            let mut nu = t.neighbors(su);
            let mut nv = t.neighbors(sv);
            nu.remove(&sv);
            nv.remove(&su);
            if nu == nv && t.red_neighbors(su).is_empty() && t.red_neighbors(sv).is_empty() {
                return Some((u, v));
            }
        }
    }
    None
}

/// Greedy baseline: always contract the pair whose result has the smallest
/// maximum red degree, ties to the lexicographically smallest `(u, v)`.
pub fn greedy_sequence(g: &Graph) -> Result<(ContractionSequence, usize), SolverError> {
    if g.n() == 0 {
        return Err(SolverError::Empty);
    }
    let mut replay = Replay::new(g);
    let mut pairs = Vec::with_capacity(g.n() - 1);
    while replay.trigraph().live_count() > 1 {
        let ids = replay.live_ids();
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, &u) in ids.iter().enumerate() {
            for &v in &ids[i + 1..] {
                let (su, sv) = (replay.slot(u).unwrap(), replay.slot(v).unwrap());
                let deg = replay.trigraph().contract(su, sv).unwrap().max_red_degree();
                if best.is_none_or(|(d, _, _)| deg < d) {
                    best = Some((deg, u, v));
                }
            }
        }
        let (_, u, v) = best.unwrap();
        replay.contract(u, v).unwrap();
        pairs.push((u, v));
    }
    let seq = ContractionSequence::from_pairs(g.n(), &pairs).expect("greedy emits a sequence");
    let width = verify_width(g, &seq).expect("greedy sequence replays").width;
    Ok((seq, width))
}
