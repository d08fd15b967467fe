//! Carrying a four-part witness through an uncontraction sequence, one split
//! at a time, following the case analysis that shows the witness can never
//! disappear while red degrees stay at most 2.

use serde::Serialize;

use crate::graph::{Graph, Vertex};
use crate::lab::witness::{check_witness_in, WitnessState};
use crate::partition::{quotient, PartId, PartitionError, PartitionedTrigraph, VertexPartition};
use crate::sequence::{invert, ContractionSequence, SequenceError, Split};
use crate::trigraph::Color;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Maintained,
    ViolatedRedDegree,
    ViolatedStructure,
}

/// Which branch of the case analysis handled the split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Case {
    /// The split part is none of `X1..X4`.
    Outside,
    /// `X1` or `X4` was split; the half holding at least `t` path starts
    /// replaces it.
    End,
    /// `X2` or `X3` was split and the half red-adjacent to the far side is
    /// also red-adjacent to the near end: the path becomes `X1, y, X3, X4`.
    MiddleKeepsEnd,
    /// As above but that half is not red-adjacent to the near end: the path
    /// becomes `z, y, X3, X4`.
    MiddleShifts,
    /// The incoming state was not a valid witness.
    InvalidInput,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub verdict: Verdict,
    pub case: Case,
    pub successor: Option<WitnessState>,
    pub reason: Option<String>,
}

impl InvariantReport {
    fn maintained(case: Case, w: WitnessState) -> Self {
        InvariantReport {
            verdict: Verdict::Maintained,
            case,
            successor: Some(w),
            reason: None,
        }
    }

    fn violated(verdict: Verdict, case: Case, reason: String) -> Self {
        InvariantReport {
            verdict,
            case,
            successor: None,
            reason: Some(reason),
        }
    }
}

/// Applies `split` to `p_j` and carries `w` across it.
pub fn advance_witness(
    g: &Graph,
    p_j: &VertexPartition,
    w: &WitnessState,
    split: &Split,
) -> Result<InvariantReport, PartitionError> {
    let pt = quotient(g, p_j)?;
    Ok(advance_in(g, &pt, w, split.part, &split.moved)?.0)
}

/// [`advance_witness`] on an already computed quotient; also returns the
/// refined partitioned trigraph.
pub fn advance_in(
    g: &Graph,
    pt: &PartitionedTrigraph,
    w: &WitnessState,
    part: PartId,
    moved: &[Vertex],
) -> Result<(InvariantReport, PartitionedTrigraph), PartitionError> {
    let (next, new_id) = pt.split(g, part, moved)?;
    let t = w.t;
    let current = match check_witness_in(g, pt, w.parts, t) {
        Ok(c) => c,
        Err(e) => {
            let r = InvariantReport::violated(Verdict::ViolatedStructure, Case::InvalidInput, format!("input: {e}"));
            return Ok((r, next));
        }
    };
    let Some(pos) = current.parts.iter().position(|&x| x == part) else {
        let r = finish(g, &next, Case::Outside, current.parts, t);
        return Ok((r, next));
    };
    // orient so the split part is X1 or X2
    let (xs, paths) = if pos <= 1 {
        (current.parts, current.paths.clone())
    } else {
        let mut xs = current.parts;
        xs.reverse();
        let paths = current.paths.iter().map(|p| p.iter().rev().copied().collect()).collect();
        (xs, paths)
    };
    let flip = pos > 1;
    let q = next.quotient();
    let halves = [part, new_id];
    let red = |a: PartId, b: PartId| q.edge(a, b) == Some(Color::Red);
    let report = if xs[0] == part {
        let starts = |h: PartId| {
            paths
                .iter()
                .filter(|p: &&Vec<Vertex>| next.partition().part_of(p[0]) == h)
                .count()
        };
        let counts = [starts(part), starts(new_id)];
        let pick = match (counts[0] >= t, counts[1] >= t) {
            (true, true) => usize::from(counts[1] > counts[0]),
            (true, false) => 0,
            (false, true) => 1,
            (false, false) => {
                return Ok((
                    InvariantReport::violated(
                        Verdict::ViolatedStructure,
                        Case::End,
                        format!("neither half of the split end part holds {t} path starts"),
                    ),
                    next,
                ))
            }
        };
        let (y, z) = (halves[pick], halves[1 - pick]);
        if red(z, xs[1]) && q.red_neighbors(xs[1]).len() >= 3 {
            InvariantReport::violated(
                Verdict::ViolatedRedDegree,
                Case::End,
                format!("part {} gains a third red neighbour", xs[1]),
            )
        } else {
            finish(g, &next, Case::End, orient([y, xs[1], xs[2], xs[3]], flip), t)
        }
    } else {
        let to_far: Vec<PartId> = halves.iter().copied().filter(|&h| red(h, xs[2])).collect();
        match to_far[..] {
            [_, _] => InvariantReport::violated(
                Verdict::ViolatedRedDegree,
                Case::MiddleKeepsEnd,
                format!("part {} is red-adjacent to both halves and to part {}", xs[2], xs[3]),
            ),
            [] => InvariantReport::violated(
                Verdict::ViolatedStructure,
                Case::MiddleKeepsEnd,
                format!("no half of the split middle part is red-adjacent to part {}", xs[2]),
            ),
            [y] => {
                let z = if y == part { new_id } else { part };
                if red(y, xs[0]) {
                    if red(z, y) {
                        InvariantReport::violated(
                            Verdict::ViolatedRedDegree,
                            Case::MiddleKeepsEnd,
                            format!("part {y} is red-adjacent to parts {}, {} and {z}", xs[0], xs[2]),
                        )
                    } else {
                        finish(g, &next, Case::MiddleKeepsEnd, orient([xs[0], y, xs[2], xs[3]], flip), t)
                    }
                } else {
                    finish(g, &next, Case::MiddleShifts, orient([z, y, xs[2], xs[3]], flip), t)
                }
            }
            _ => unreachable!(),
        }
    };
    Ok((report, next))
}

fn orient(mut xs: [PartId; 4], flip: bool) -> [PartId; 4] {
    if flip {
        xs.reverse();
    }
    xs
}

fn finish(g: &Graph, next: &PartitionedTrigraph, case: Case, xs: [PartId; 4], t: usize) -> InvariantReport {
    match check_witness_in(g, next, xs, t) {
        Ok(w) => InvariantReport::maintained(case, w),
        Err(e) => InvariantReport::violated(Verdict::ViolatedStructure, case, format!("successor: {e}")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AuditVerdict {
    /// The case analysis forced a red degree of 3, or a witness reached the
    /// singleton partition.
    ContradictionFound { reason: String, step: usize },
    /// Some quotient along the way already has red degree at least 3.
    SequenceEscaped { reason: String, step: usize },
    /// The starting state is not a valid witness.
    NoWitness { reason: String },
    /// A successor failed validation, which the case analysis rules out for
    /// `K_{t,t}`-free graphs.
    WitnessLost { reason: String, step: usize },
}

/// Runs the witness at `P^m` (parts `parts`) through every later split of
/// the uncontraction view of `s`.
pub fn audit_sequence(
    g: &Graph,
    s: &ContractionSequence,
    m: usize,
    parts: [PartId; 4],
    t: usize,
) -> Result<AuditVerdict, SequenceError> {
    let u = invert(g, s)?;
    let n = u.n();
    let mut pt = quotient(g, &u.partitions_at(m)?).expect("partition matches graph");
    if let Some(reason) = escape(&pt) {
        return Ok(AuditVerdict::SequenceEscaped { reason, step: m });
    }
    let mut w = match check_witness_in(g, &pt, parts, t) {
        Ok(w) => w,
        Err(e) => return Ok(AuditVerdict::NoWitness { reason: e.to_string() }),
    };
    for j in m..n {
        let split = &u.splits()[j - 1];
        let (report, next) = advance_in(g, &pt, &w, split.part, &split.moved).expect("validated split");
        let step = j + 1;
        let reason = report.reason.clone().unwrap_or_default();
        match report.verdict {
            Verdict::ViolatedRedDegree => return Ok(AuditVerdict::ContradictionFound { reason, step }),
            _ if escape(&next).is_some() => {
                return Ok(AuditVerdict::SequenceEscaped {
                    reason: escape(&next).unwrap(),
                    step,
                })
            }
            Verdict::ViolatedStructure => return Ok(AuditVerdict::WitnessLost { reason, step }),
            Verdict::Maintained => w = report.successor.expect("maintained reports carry a successor"),
        }
        pt = next;
    }
    Ok(AuditVerdict::ContradictionFound {
        reason: "a witness survives at the singleton partition".into(),
        step: n,
    })
}

fn escape(pt: &PartitionedTrigraph) -> Option<String> {
    let q = pt.quotient();
    q.vertices()
        .find(|&v| q.red_neighbors(v).len() >= 3)
        .map(|v| format!("part {v} has red degree {}", q.red_neighbors(v).len()))
}
