//! Vertex partitions and their quotient trigraphs.
//!
//! The quotient of `(G, P)` has one vertex per part. Two parts are adjacent
//! iff some edge of `G` crosses them, and the edge is red iff the crossing
//! bipartite graph is not complete. Parts with no crossing edge are simply
//! non-adjacent.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, ParseError, Vertex};
use crate::trigraph::{Color, Trigraph};

/// Stable identifier of a part. Splitting a part keeps its id on one side and
/// hands the other side the next unused id.
pub type PartId = usize;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {0} is outside the vertex set")]
    VertexOutOfRange(Vertex),
    #[error("vertex {0} appears in two parts")]
    Overlap(Vertex),
    #[error("vertex {0} is not covered by any part")]
    Uncovered(Vertex),
    #[error("part {0} is empty")]
    EmptyPart(PartId),
    #[error("unknown part id {0}")]
    UnknownPart(PartId),
    #[error("partition covers {found} vertices, graph has {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("split of part {0} must move a nonempty proper subset of it")]
    BadSplit(PartId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    parts: Vec<Vec<Vertex>>,
    part_of: Vec<PartId>,
}

impl VertexPartition {
    /// Validates and builds a partition of `0..n`. Part ids follow the order
    /// of `parts`; each part is sorted.
    pub fn new(n: usize, parts: Vec<Vec<Vertex>>) -> Result<Self, PartitionError> {
        let mut part_of = vec![usize::MAX; n];
        let mut sorted = Vec::with_capacity(parts.len());
        for (id, mut part) in parts.into_iter().enumerate() {
            if part.is_empty() {
                return Err(PartitionError::EmptyPart(id));
            }
            part.sort_unstable();
            for &v in &part {
                if v >= n {
                    return Err(PartitionError::VertexOutOfRange(v));
                }
                if part_of[v] != usize::MAX {
                    return Err(PartitionError::Overlap(v));
                }
                part_of[v] = id;
            }
            sorted.push(part);
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(PartitionError::Uncovered(v));
        }
        Ok(VertexPartition {
            parts: sorted,
            part_of,
        })
    }

    pub fn singletons(n: usize) -> Self {
        VertexPartition {
            parts: (0..n).map(|v| vec![v]).collect(),
            part_of: (0..n).collect(),
        }
    }

    /// The one-part partition `{V}`.
    pub fn whole(n: usize) -> Self {
        VertexPartition {
            parts: if n == 0 { vec![] } else { vec![(0..n).collect()] },
            part_of: vec![0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn part(&self, id: PartId) -> Result<&[Vertex], PartitionError> {
        self.parts
            .get(id)
            .map(Vec::as_slice)
            .ok_or(PartitionError::UnknownPart(id))
    }

    pub fn part_of(&self, v: Vertex) -> PartId {
        self.part_of[v]
    }

    pub fn part_ids(&self) -> std::ops::Range<PartId> {
        0..self.parts.len()
    }

    /// Splits `side` off part `id`. The remainder keeps `id`; `side` becomes
    /// the returned new part id.
    pub fn split(&self, id: PartId, side: &[Vertex]) -> Result<(VertexPartition, PartId), PartitionError> {
        let part = self.part(id)?;
        if side.is_empty() || side.len() >= part.len() {
            return Err(PartitionError::BadSplit(id));
        }
        let mut moved = side.to_vec();
        moved.sort_unstable();
        moved.dedup();
        if moved.len() != side.len() || moved.iter().any(|&v| v >= self.n() || self.part_of[v] != id) {
            return Err(PartitionError::BadSplit(id));
        }
        let new_id = self.parts.len();
        let mut next = self.clone();
        next.parts[id].retain(|v| moved.binary_search(v).is_err());
        for &v in &moved {
            next.part_of[v] = new_id;
        }
        next.parts.push(moved);
        Ok((next, new_id))
    }

    /// Order-independent encoding: the parts as sorted lists, themselves sorted.
    pub fn canonical_key(&self) -> Vec<Vec<Vertex>> {
        let mut key = self.parts.clone();
        key.sort();
        key
    }

    /// Reads one part per line, 1-indexed vertex ids separated by spaces.
    /// Blank lines and lines starting with `c` are skipped.
    pub fn parse(text: &str, n: usize) -> Result<Self, ParseError> {
        let mut parts = Vec::new();
        let mut lines_of_part = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            let mut part = Vec::new();
            for field in line.split_whitespace() {
                let v: usize = field
                    .parse()
                    .map_err(|_| ParseError::new(idx + 1, format!("`{field}` is not a vertex id")))?;
                if v == 0 || v > n {
                    return Err(ParseError::new(idx + 1, format!("vertex {v} outside 1..={n}")));
                }
                part.push(v - 1);
            }
            parts.push(part);
            lines_of_part.push(idx + 1);
        }
        VertexPartition::new(n, parts).map_err(|e| {
            let line = match e {
                PartitionError::Overlap(v) => {
                    // report the second occurrence
                    let mut seen = 0;
                    let mut at = 0;
                    for (i, line) in text.lines().enumerate() {
                        if line.split_whitespace().any(|f| f.parse::<usize>() == Ok(v + 1)) {
                            seen += 1;
                            at = i + 1;
                            if seen == 2 {
                                break;
                            }
                        }
                    }
                    at
                }
                _ => lines_of_part.last().copied().unwrap_or(1),
            };
            ParseError::new(line, e.to_string())
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for part in &self.parts {
            let ids: Vec<String> = part.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(out, "{}", ids.join(" ")).unwrap();
        }
        out
    }
}

/// A partition together with its quotient trigraph; quotient slot `i` is part `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedTrigraph {
    partition: VertexPartition,
    quotient: Trigraph,
}

impl PartitionedTrigraph {
    pub fn partition(&self) -> &VertexPartition {
        &self.partition
    }

    pub fn quotient(&self) -> &Trigraph {
        &self.quotient
    }

    pub fn part_size(&self, id: PartId) -> usize {
        self.partition.parts[id].len()
    }

    /// Splits `side` off part `id`, updating only the quotient edges at the
    /// two affected parts.
    pub fn split(&self, g: &Graph, id: PartId, side: &[Vertex]) -> Result<(PartitionedTrigraph, PartId), PartitionError> {
        let (partition, new_id) = self.partition.split(id, side)?;
        let mut quotient = self.quotient.clone();
        quotient.isolate(id);
        let slot = quotient.push_vertex();
        debug_assert_eq!(slot, new_id);
        for a in [id, new_id] {
            let counts = crossing_counts(g, &partition, &partition.parts[a]);
            for (b, count) in counts {
                // the pair (id, new_id) is visited from both sides
                if b == id && a == new_id {
                    continue;
                }
                let full = partition.parts[a].len() * partition.parts[b].len();
                let color = if count == full { Color::Black } else { Color::Red };
                quotient.add_edge(a, b, color).expect("fresh quotient edge");
            }
        }
        Ok((PartitionedTrigraph { partition, quotient }, new_id))
    }
}

fn crossing_counts(g: &Graph, p: &VertexPartition, from: &[Vertex]) -> HashMap<PartId, usize> {
    let here = p.part_of(from[0]);
    let mut counts = HashMap::new();
    for &u in from {
        for &w in g.neighbors(u) {
            let b = p.part_of(w);
            if b != here {
                *counts.entry(b).or_insert(0) += 1;
            }
        }
    }
    counts
}

/// The partitioned trigraph of `(g, p)`, computed from scratch.
pub fn quotient(g: &Graph, p: &VertexPartition) -> Result<PartitionedTrigraph, PartitionError> {
    if p.n() != g.n() {
        return Err(PartitionError::SizeMismatch {
            expected: g.n(),
            found: p.n(),
        });
    }
    let mut counts: HashMap<(PartId, PartId), usize> = HashMap::new();
    for (u, v) in g.edges() {
        let (a, b) = (p.part_of(u), p.part_of(v));
        if a != b {
            *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    let mut quotient = Trigraph::new(p.len());
    let mut pairs: Vec<_> = counts.into_iter().collect();
    pairs.sort_unstable();
    for ((a, b), count) in pairs {
        let full = p.parts[a].len() * p.parts[b].len();
        let color = if count == full { Color::Black } else { Color::Red };
        quotient.add_edge(a, b, color).expect("fresh quotient edge");
    }
    Ok(PartitionedTrigraph {
        partition: p.clone(),
        quotient,
    })
}
