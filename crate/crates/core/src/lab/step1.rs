//! Locating a first four-part witness in an uncontraction sequence of a
//! graph that contains a cubic mesh.
//!
//! At the first partition where no part holds `4k²` branching vertices, the
//! part `Z` created by the last split holds at least `2k²` of them. Rows (or
//! columns) of the mesh through `Z` leave the red neighbourhood chain
//! `L2, L1, Z, R1, R2`, and their exits pile up in the red neighbour `L3` of
//! `L2` (or `R3` of `R2`), giving the witness `L3, L2, L1, Z`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::lab::witness::{check_witness_in, WitnessState};
use crate::partition::{quotient, PartId, PartitionedTrigraph, VertexPartition};
use crate::sequence::UncontractionSequence;
use crate::structure::flow::max_disjoint_paths;
use crate::structure::wall::{verify_mesh, MeshEmbedding, MeshError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Step1Error {
    #[error("invalid mesh: {0}")]
    Mesh(#[from] MeshError),
    #[error("sequence is over {found} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("k must be positive")]
    ZeroK,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Lines {
    Rows,
    Columns,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Step1Case {
    /// Every part of the chain has at least `t` vertices.
    AllBig,
    /// One side of the chain has a part with fewer than `t` vertices.
    OneSideSmall,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step1Witness {
    pub case: Step1Case,
    pub lines: Lines,
    /// Index of the partition `P^m`, 1-based.
    pub m: usize,
    pub witness: WitnessState,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Step1Outcome {
    Found(Step1Witness),
    NotFound { stage: String },
}

fn not_found(stage: impl Into<String>) -> Result<Step1Outcome, Step1Error> {
    Ok(Step1Outcome::NotFound { stage: stage.into() })
}

/// Searches `u` for the witness described in the module docs, with heavy
/// threshold `k` and sparsity parameter `t`.
pub fn find_step1_witness(
    g: &Graph,
    u: &UncontractionSequence,
    me: &MeshEmbedding,
    k: usize,
    t: usize,
) -> Result<Step1Outcome, Step1Error> {
    if k == 0 {
        return Err(Step1Error::ZeroK);
    }
    if u.n() != g.n() {
        return Err(Step1Error::SizeMismatch {
            expected: g.n(),
            found: u.n(),
        });
    }
    let branching = verify_mesh(g, me)?;
    let heavy = 4 * k * k;

    let partitions = u.partitions();
    let count = |p: &VertexPartition, id: PartId| p.parts()[id].iter().filter(|v| branching.contains(v)).count();
    let m = partitions
        .iter()
        .position(|p| p.part_ids().all(|id| count(p, id) < heavy))
        .expect("singletons hold at most one branching vertex each")
        + 1;
    if m == 1 {
        return not_found("no heavy part");
    }
    let p = &partitions[m - 1];
    let split = &u.splits()[m - 2];
    let z = [split.part, p.len() - 1]
        .into_iter()
        .find(|&id| count(p, id) >= 2 * k * k)
        .expect("one half of a split heavy part keeps half its branching vertices");

    let pt = quotient(g, p).expect("partition matches graph");
    let q = pt.quotient();
    let red_of = |x: PartId| -> Vec<PartId> { q.red_neighbors(x).iter().copied().collect() };
    if red_of(z).len() > 2 {
        return not_found(format!("heavy part {z} has red degree {}", red_of(z).len()));
    }
    let mut zr = red_of(z).into_iter();
    let (l1, r1) = (zr.next(), zr.next());
    let next_on = |prev: PartId, cur: Option<PartId>| -> Result<Option<PartId>, String> {
        let Some(c) = cur else { return Ok(None) };
        let rest: Vec<PartId> = red_of(c).into_iter().filter(|&x| x != prev).collect();
        match rest[..] {
            [] => Ok(None),
            [x] => Ok(Some(x)),
            _ => Err(format!("part {c} has red degree {}", rest.len() + 1)),
        }
    };
    let chain = (|| -> Result<_, String> {
        let l2 = next_on(z, l1)?;
        let r2 = next_on(z, r1)?;
        let l3 = match (l1, l2) {
            (Some(a), Some(b)) => next_on(a, Some(b))?,
            _ => None,
        };
        let r3 = match (r1, r2) {
            (Some(a), Some(b)) => next_on(a, Some(b))?,
            _ => None,
        };
        Ok((l2, r2, l3, r3))
    })();
    let (l2, r2, l3, r3) = match chain {
        Ok(c) => c,
        Err(e) => return not_found(e),
    };
    let zset: BTreeSet<PartId> = [l2, l1, Some(z), r1, r2].into_iter().flatten().collect();
    if zset.len() != [l2, l1, Some(z), r1, r2].into_iter().flatten().count()
        || l3.is_some_and(|x| zset.contains(&x))
        || r3.is_some_and(|x| zset.contains(&x))
    {
        return not_found("red neighbourhood of the heavy part is not a path");
    }

    let lines_hit = |lines: &[Vec<Vertex>]| {
        lines
            .iter()
            .filter(|line| line.iter().any(|&v| branching.contains(&v) && p.part_of(v) == z))
            .count()
    };
    let mut q_family = None;
    for (kind, lines) in [(Lines::Rows, &me.rows), (Lines::Columns, &me.cols)] {
        if lines_hit(lines) < k {
            continue;
        }
        let exits: Vec<Vec<Vertex>> = lines
            .iter()
            .filter(|line| line.iter().any(|&v| branching.contains(&v) && p.part_of(v) == z))
            .filter_map(|line| exit_path(line, p, z, &zset))
            .take(k)
            .collect();
        if exits.len() == k {
            q_family = Some((kind, exits));
            break;
        }
    }
    let Some((lines, family)) = q_family else {
        return not_found(format!(
            "heavy part {z} does not send {k} row or column paths out of its red neighbourhood"
        ));
    };

    let small = |x: Option<PartId>| x.is_some_and(|x| pt.part_size(x) < t);
    let left_small = small(l1) || small(l2);
    let right_small = small(r1) || small(r2);
    let ends_in = |x: Option<PartId>| {
        x.map_or(0, |x| family.iter().filter(|path| p.part_of(*path.last().unwrap()) == x).count())
    };
    let (case, side) = match (left_small, right_small) {
        (false, false) => (Step1Case::AllBig, ends_in(r3) > ends_in(l3)),
        (false, true) => (Step1Case::OneSideSmall, false),
        (true, false) => (Step1Case::OneSideSmall, true),
        (true, true) => return both_small(g, &pt, &family, [l2, l1, Some(z), r1, r2], t),
    };
    let (a1, a2, a3) = if side { (r1, r2, r3) } else { (l1, l2, l3) };
    let (Some(x3), Some(x2), Some(x1)) = (a1, a2, a3) else {
        return not_found("no part beyond the red neighbourhood of the heavy part");
    };
    match check_witness_in(g, &pt, [x1, x2, x3, z], t) {
        Ok(witness) if witness.s >= 4 * t => Ok(Step1Outcome::Found(Step1Witness {
            case,
            lines,
            m,
            witness,
        })),
        Ok(witness) => not_found(format!("only {} disjoint paths, fewer than 4t = {}", witness.s, 4 * t)),
        Err(e) => not_found(format!("candidate witness rejected: {e}")),
    }
}

/// Shortest subpath of `line` from a vertex of `z` to a vertex outside the
/// chain parts, all interior vertices inside the chain but outside `z`.
fn exit_path(line: &[Vertex], p: &VertexPartition, z: PartId, chain: &BTreeSet<PartId>) -> Option<Vec<Vertex>> {
    let in_chain = |v: Vertex| chain.contains(&p.part_of(v));
    for dir in [false, true] {
        let seq: Vec<Vertex> = if dir { line.iter().rev().copied().collect() } else { line.to_vec() };
        let mut start = None;
        for (i, &v) in seq.iter().enumerate() {
            if p.part_of(v) == z {
                start = Some(i);
            } else if !in_chain(v) {
                if let Some(s) = start {
                    return Some(seq[s..=i].to_vec());
                }
            }
        }
    }
    None
}

/// Both sides of the chain contain a part smaller than `t`. The small parts
/// and the black neighbourhoods of the parts between them separate the two
/// ends of the row paths, which Menger's theorem rules out when the
/// separator is smaller than the number of paths.
fn both_small(
    g: &Graph,
    pt: &PartitionedTrigraph,
    family: &[Vec<Vertex>],
    chain: [Option<PartId>; 5],
    t: usize,
) -> Result<Step1Outcome, Step1Error> {
    let small = |x: Option<PartId>| x.is_some_and(|x| pt.part_size(x) < t);
    // innermost small part on each side: L1 before L2, R1 before R2
    let wl = if small(chain[1]) { 1 } else { 0 };
    let wr = if small(chain[3]) { 3 } else { 4 };
    let p = pt.partition();
    let mut sep: BTreeSet<Vertex> = BTreeSet::new();
    for i in [wl, wr] {
        sep.extend(p.parts()[chain[i].unwrap()].iter().copied());
    }
    for x in chain[wl + 1..wr].iter().flatten() {
        for &y in pt.quotient().black_neighbors(*x) {
            sep.extend(p.parts()[y].iter().copied());
        }
    }
    let a: Vec<Vertex> = family.iter().map(|q| q[0]).collect();
    let b: Vec<Vertex> = family.iter().map(|q| *q.last().unwrap()).collect();
    let flow = max_disjoint_paths(g, &a, &b).count();
    not_found(format!(
        "both sides of the chain hold a part smaller than t: separator of {} vertices against {} disjoint paths",
        sep.len(),
        flow
    ))
}
