//! Contraction sequences, their replay and width verification, and the
//! equivalent uncontraction (partition refinement) view.
//!
//! Identifier convention: the original vertices are `0..n`; the vertex produced
//! by the `i`-th contraction (1-based) is `n + i`. Certificates only store the
//! `(u, v)` pairs, products are always recomputed.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::partition::{PartId, VertexPartition};
use crate::trigraph::Trigraph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SequenceError {
    #[error("sequence is for {sequence} vertices, graph has {graph}")]
    VertexCountMismatch { sequence: usize, graph: usize },
    #[error("a contraction sequence needs at least one vertex")]
    Empty,
    #[error("expected {expected} steps, found {found}")]
    StepCount { expected: usize, found: usize },
    #[error("step {step}: vertex {vertex} is not alive")]
    DeadVertex { step: usize, vertex: usize },
    #[error("step {step}: contracts vertex {vertex} with itself")]
    SameVertex { step: usize, vertex: usize },
    #[error("step {step}: product id {found} should be {expected}")]
    WrongProduct { step: usize, expected: usize, found: usize },
    #[error("prefix length {i} exceeds {steps} steps")]
    PrefixTooLong { i: usize, steps: usize },
    #[error("partition index {i} outside 1..={n}")]
    IndexOutOfRange { i: usize, n: usize },
    #[error("invalid certificate: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ContractionStep {
    pub u: usize,
    pub v: usize,
    pub product: usize,
}

/// A full sequence of `n - 1` contractions over external ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ContractionSequence {
    n: usize,
    steps: Vec<ContractionStep>,
}

impl ContractionSequence {
    /// Builds and validates a sequence from its `(u, v)` pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, SequenceError> {
        if n == 0 {
            return Err(SequenceError::Empty);
        }
        if pairs.len() != n - 1 {
            return Err(SequenceError::StepCount {
                expected: n - 1,
                found: pairs.len(),
            });
        }
        let mut alive = vec![true; 2 * n];
        // id n is never used: products start at n + 1
        alive[n] = false;
        let mut steps = Vec::with_capacity(pairs.len());
        for (i, &(u, v)) in pairs.iter().enumerate() {
            let step = i + 1;
            let product = n + step;
            for x in [u, v] {
                if x >= product || !alive[x] {
                    return Err(SequenceError::DeadVertex { step, vertex: x });
                }
            }
            if u == v {
                return Err(SequenceError::SameVertex { step, vertex: u });
            }
            alive[u] = false;
            alive[v] = false;
            steps.push(ContractionStep { u, v, product });
        }
        Ok(ContractionSequence { n, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[ContractionStep] {
        &self.steps
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.steps.iter().map(|s| (s.u, s.v)).collect()
    }

    /// Renames original vertex `x` to `perm[x]`; product ids are unchanged.
    pub fn relabel(&self, perm: &[Vertex]) -> ContractionSequence {
        let map = |x: usize| if x < self.n { perm[x] } else { x };
        let pairs: Vec<_> = self.steps.iter().map(|s| (map(s.u), map(s.v))).collect();
        ContractionSequence::from_pairs(self.n, &pairs).expect("relabeling keeps validity")
    }

    pub fn to_json(&self) -> String {
        let cert = Certificate {
            n: self.n,
            steps: self
                .steps
                .iter()
                .map(|s| CertStep {
                    product: None,
                    u: s.u,
                    v: s.v,
                })
                .collect(),
        };
        serde_json::to_string(&cert).expect("certificate serializes")
    }

    /// Parses `{"n": .., "steps": [{"u": .., "v": ..}, ..]}`. A `product`
    /// field, if present, must equal the recomputed id.
    pub fn from_json(text: &str) -> Result<Self, SequenceError> {
        let cert: Certificate = serde_json::from_str(text).map_err(|e| SequenceError::Json(e.to_string()))?;
        let pairs: Vec<_> = cert.steps.iter().map(|s| (s.u, s.v)).collect();
        let seq = ContractionSequence::from_pairs(cert.n, &pairs)?;
        for (i, s) in cert.steps.iter().enumerate() {
            if let Some(p) = s.product {
                let expected = cert.n + i + 1;
                if p != expected {
                    return Err(SequenceError::WrongProduct {
                        step: i + 1,
                        expected,
                        found: p,
                    });
                }
            }
        }
        Ok(seq)
    }
}

#[derive(Serialize, Deserialize)]
struct Certificate {
    n: usize,
    steps: Vec<CertStep>,
}

#[derive(Serialize, Deserialize)]
struct CertStep {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    product: Option<usize>,
    u: usize,
    v: usize,
}

/// Outcome of replaying a sequence: its width and the maximum red degree
/// after each step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthReport {
    pub trace: Vec<usize>,
    pub width: usize,
}

/// Incremental replay of contractions on a graph, tracking external ids and
/// which original vertices each live vertex stands for.
#[derive(Debug, Clone)]
pub struct Replay {
    n: usize,
    trigraph: Trigraph,
    slot_of: HashMap<usize, Vertex>,
    ext_of: Vec<usize>,
    members: Vec<Vec<Vertex>>,
    done: usize,
}

impl Replay {
    pub fn new(g: &Graph) -> Self {
        Replay {
            n: g.n(),
            trigraph: Trigraph::from_graph(g),
            slot_of: (0..g.n()).map(|v| (v, v)).collect(),
            ext_of: (0..g.n()).collect(),
            members: (0..g.n()).map(|v| vec![v]).collect(),
            done: 0,
        }
    }

    pub fn trigraph(&self) -> &Trigraph {
        &self.trigraph
    }

    pub fn steps_done(&self) -> usize {
        self.done
    }

    pub fn next_product(&self) -> usize {
        self.n + self.done + 1
    }

    /// Slot currently holding external id `x`, if alive.
    pub fn slot(&self, x: usize) -> Option<Vertex> {
        self.slot_of.get(&x).copied()
    }

    pub fn external_id(&self, slot: Vertex) -> usize {
        self.ext_of[slot]
    }

    /// Original vertices contracted into `slot`, sorted.
    pub fn members(&self, slot: Vertex) -> &[Vertex] {
        &self.members[slot]
    }

    /// External ids of the live vertices, sorted.
    pub fn live_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.trigraph.vertices().map(|s| self.ext_of[s]).collect();
        ids.sort_unstable();
        ids
    }

    /// Contracts external ids `u` and `v`; returns the product id.
    pub fn contract(&mut self, u: usize, v: usize) -> Result<usize, SequenceError> {
        let step = self.done + 1;
        let su = self.slot(u).ok_or(SequenceError::DeadVertex { step, vertex: u })?;
        let sv = self.slot(v).ok_or(SequenceError::DeadVertex { step, vertex: v })?;
        if su == sv {
            return Err(SequenceError::SameVertex { step, vertex: u });
        }
        let keep = self.trigraph.contract_in_place(su, sv).expect("live slots");
        let gone = if keep == su { sv } else { su };
        let product = self.next_product();
        self.slot_of.remove(&u);
        self.slot_of.remove(&v);
        self.slot_of.insert(product, keep);
        self.ext_of[keep] = product;
        let moved = std::mem::take(&mut self.members[gone]);
        self.members[keep].extend(moved);
        self.members[keep].sort_unstable();
        self.done += 1;
        Ok(product)
    }

    /// The current state as a partition of the original vertices, one part
    /// per live vertex in slot order.
    pub fn partition(&self) -> VertexPartition {
        let parts = self.trigraph.vertices().map(|s| self.members[s].clone()).collect();
        VertexPartition::new(self.n, parts).expect("replay members partition the vertices")
    }
}

fn check_graph(g: &Graph, s: &ContractionSequence) -> Result<(), SequenceError> {
    if g.n() != s.n() {
        return Err(SequenceError::VertexCountMismatch {
            sequence: s.n(),
            graph: g.n(),
        });
    }
    Ok(())
}

/// Replays `s` on `g` and returns the exact width with the per-step trace.
pub fn verify_width(g: &Graph, s: &ContractionSequence) -> Result<WidthReport, SequenceError> {
    check_graph(g, s)?;
    let mut replay = Replay::new(g);
    let mut trace = Vec::with_capacity(s.steps().len());
    for step in s.steps() {
        replay.contract(step.u, step.v)?;
        trace.push(replay.trigraph().max_red_degree());
    }
    let width = trace.iter().copied().max().unwrap_or(0);
    Ok(WidthReport { trace, width })
}

/// Replay state after the first `i` contractions.
pub fn replay_prefix(g: &Graph, s: &ContractionSequence, i: usize) -> Result<Replay, SequenceError> {
    check_graph(g, s)?;
    if i > s.steps().len() {
        return Err(SequenceError::PrefixTooLong {
            i,
            steps: s.steps().len(),
        });
    }
    let mut replay = Replay::new(g);
    for step in &s.steps()[..i] {
        replay.contract(step.u, step.v)?;
    }
    Ok(replay)
}

/// Trigraph after the first `i` contractions.
pub fn apply_prefix(g: &Graph, s: &ContractionSequence, i: usize) -> Result<Trigraph, SequenceError> {
    Ok(replay_prefix(g, s, i)?.trigraph)
}

/// One refinement step: `part` keeps `kept`, `moved` becomes a new part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split {
    pub part: PartId,
    pub kept: Vec<Vertex>,
    pub moved: Vec<Vertex>,
}

/// Partitions `P^1 = {V}, ..., P^n = singletons`, each obtained from the
/// previous one by splitting one part in two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UncontractionSequence {
    n: usize,
    splits: Vec<Split>,
}

impl UncontractionSequence {
    pub fn new(n: usize, splits: Vec<Split>) -> Result<Self, SequenceError> {
        if n == 0 {
            return Err(SequenceError::Empty);
        }
        if splits.len() != n - 1 {
            return Err(SequenceError::StepCount {
                expected: n - 1,
                found: splits.len(),
            });
        }
        let u = UncontractionSequence { n, splits };
        // validity is checked by walking all partitions
        let mut p = VertexPartition::whole(n);
        for (i, s) in u.splits.iter().enumerate() {
            let part = p.part(s.part).map_err(|_| SequenceError::DeadVertex {
                step: i + 1,
                vertex: s.part,
            })?;
            let mut joined: Vec<Vertex> = s.kept.iter().chain(&s.moved).copied().collect();
            joined.sort_unstable();
            if joined != part || s.kept.is_empty() {
                return Err(SequenceError::DeadVertex {
                    step: i + 1,
                    vertex: s.part,
                });
            }
            p = p.split(s.part, &s.moved).expect("checked split").0;
        }
        Ok(u)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    /// `P^i` for `1 <= i <= n`.
    pub fn partitions_at(&self, i: usize) -> Result<VertexPartition, SequenceError> {
        if i == 0 || i > self.n {
            return Err(SequenceError::IndexOutOfRange { i, n: self.n });
        }
        let mut p = VertexPartition::whole(self.n);
        for s in &self.splits[..i - 1] {
            p = p.split(s.part, &s.moved).expect("validated split").0;
        }
        Ok(p)
    }

    /// All partitions `P^1..=P^n` in order.
    pub fn partitions(&self) -> Vec<VertexPartition> {
        let mut out = Vec::with_capacity(self.n);
        let mut p = VertexPartition::whole(self.n);
        for s in &self.splits {
            let next = p.split(s.part, &s.moved).expect("validated split").0;
            out.push(std::mem::replace(&mut p, next));
        }
        out.push(p);
        out
    }
}

/// The uncontraction view of `s`: `P^k` groups original vertices by the live
/// vertex they were contracted into after `n - k` steps.
pub fn invert(g: &Graph, s: &ContractionSequence) -> Result<UncontractionSequence, SequenceError> {
    check_graph(g, s)?;
    let n = s.n();
    // members of every external id
    let mut members: HashMap<usize, Vec<Vertex>> = (0..n).map(|v| (v, vec![v])).collect();
    for step in s.steps() {
        let mut m = members[&step.u].clone();
        m.extend(&members[&step.v]);
        m.sort_unstable();
        members.insert(step.product, m);
    }
    let root = s.steps().last().map_or(0, |st| st.product);
    let mut part_of_id: HashMap<usize, PartId> = HashMap::from([(root, 0)]);
    let mut splits = Vec::with_capacity(n - 1);
    for (k, step) in s.steps().iter().rev().enumerate() {
        let part = part_of_id[&step.product];
        splits.push(Split {
            part,
            kept: members[&step.u].clone(),
            moved: members[&step.v].clone(),
        });
        part_of_id.insert(step.u, part);
        part_of_id.insert(step.v, k + 1);
    }
    UncontractionSequence::new(n, splits)
}
