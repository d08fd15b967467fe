//! Certify-or-refute: either a `K_{t,t}` subgraph, a tree-width gate
//! failure, or a contraction sequence built from a tree decomposition.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::sequence::{verify_width, ContractionSequence, Replay};
use crate::structure::biclique::has_ktt;
use crate::structure::treewidth::{treewidth_decide, TreeDecomposition, TwDecision};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineOutcome {
    Sequence {
        certificate: ContractionSequence,
        width: usize,
    },
    /// Tree-width exceeds the gate. With the gate below the theorem's
    /// threshold this is a demonstration, so `conditional` is set.
    TwwExceeds2 { conditional: bool },
    NotApplicable { a: Vec<Vertex>, b: Vec<Vertex> },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error("graph has no vertices")]
    Empty,
    #[error("tree-width gate undecided after expanding {expanded} states")]
    Undecided { expanded: u64 },
    #[error("achieved width {width} exceeds the bound {bound}")]
    WidthBoundMissed { width: usize, bound: usize },
}

/// `2^{k+2} - 1`, saturating.
pub fn width_bound(k: usize) -> usize {
    u32::try_from(k + 2)
        .ok()
        .and_then(|e| 1usize.checked_shl(e))
        .map_or(usize::MAX, |p| p - 1)
}

pub fn pipeline_certify(g: &Graph, t: usize, k: usize, budget: u64) -> Result<PipelineOutcome, PipelineError> {
    if g.n() == 0 {
        return Err(PipelineError::Empty);
    }
    if let Some((a, b)) = has_ktt(g, t) {
        return Ok(PipelineOutcome::NotApplicable { a, b });
    }
    let td = match treewidth_decide(g, k, budget) {
        TwDecision::Yes(td) => td,
        TwDecision::No => return Ok(PipelineOutcome::TwwExceeds2 { conditional: true }),
        TwDecision::Unknown { expanded } => return Err(PipelineError::Undecided { expanded }),
    };
    let certificate = sequence_from_decomposition(g, &td);
    let width = verify_width(g, &certificate)
        .expect("accumulator construction yields a valid sequence")
        .width;
    let bound = width_bound(k);
    if width > bound {
        return Err(PipelineError::WidthBoundMissed { width, bound });
    }
    Ok(PipelineOutcome::Sequence { certificate, width })
}

/// Contraction sequence from a tree decomposition rooted at its last bag.
/// Nodes are handled in post-order, larger subtrees first; a finished
/// child's accumulator is merged into its parent's, then each vertex whose
/// highest bag is the current node is contracted into it, in bag order.
pub fn sequence_from_decomposition(g: &Graph, td: &TreeDecomposition) -> ContractionSequence {
    let nb = td.bags.len();
    assert!(nb > 0, "decomposition has bags");
    let mut adj = vec![Vec::new(); nb];
    for &(a, b) in &td.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let root = nb - 1;
    let mut parent = vec![usize::MAX; nb];
    let mut order = Vec::with_capacity(nb);
    let mut seen = vec![false; nb];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(x) = queue.pop_front() {
        order.push(x);
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut size = vec![1usize; nb];
    for &x in order.iter().rev() {
        if x != root {
            size[parent[x]] += size[x];
        }
    }
    let mut children = vec![Vec::new(); nb];
    for &x in &order {
        if x != root {
            children[parent[x]].push(x);
        }
    }
    for c in &mut children {
        c.sort_by_key(|&y| (std::cmp::Reverse(size[y]), y));
    }
    let forget = |x: usize| -> Vec<Vertex> {
        let mut f: Vec<Vertex> = if x == root {
            td.bags[x].clone()
        } else {
            td.bags[x].iter().copied().filter(|v| !td.bags[parent[x]].contains(v)).collect()
        };
        f.sort_unstable();
        f
    };

    let mut replay = Replay::new(g);
    let mut pairs = Vec::with_capacity(g.n().saturating_sub(1));
    let mut merge = |acc: Option<usize>, x: usize, replay: &mut Replay| -> Option<usize> {
        match acc {
            None => Some(x),
            Some(a) => {
                pairs.push((a, x));
                Some(replay.contract(a, x).expect("live ids"))
            }
        }
    };
    let mut acc: Vec<Option<usize>> = vec![None; nb];
    let mut stack = vec![(root, 0usize)];
    while let Some(&mut (x, ref mut next)) = stack.last_mut() {
        if let Some(&c) = children[x].get(*next) {
            *next += 1;
            stack.push((c, 0));
            continue;
        }
        stack.pop();
        let mut a = acc[x];
        for v in forget(x) {
            a = merge(a, v, &mut replay);
        }
        acc[x] = None;
        if x != root {
            let p = parent[x];
            acc[p] = match a {
                Some(id) => merge(acc[p], id, &mut replay),
                None => acc[p],
            };
        }
    }
    ContractionSequence::from_pairs(g.n(), &pairs).expect("every vertex is forgotten exactly once")
}
