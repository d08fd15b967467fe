//! Detection of `K_{t,t}` subgraphs.

use crate::graph::{Graph, Vertex};

/// Finds disjoint `A`, `B` with `|A| = |B| = t` and every `A × B` pair an
/// edge, or `None` if the graph has no `K_{t,t}` subgraph. Grows `A` one
/// vertex at a time while intersecting neighbourhoods, so the running time
/// is exponential in `t` only.
pub fn has_ktt(g: &Graph, t: usize) -> Option<(Vec<Vertex>, Vec<Vertex>)> {
    assert!(t >= 1, "t must be positive");
    let mut chosen = Vec::with_capacity(t);
    for a in g.vertices().filter(|&a| g.degree(a) >= t) {
        chosen.push(a);
        if let Some(b) = extend(g, t, &mut chosen, g.neighbors(a).to_vec()) {
            return Some((chosen, b));
        }
        chosen.pop();
    }
    None
}

fn extend(g: &Graph, t: usize, chosen: &mut Vec<Vertex>, common: Vec<Vertex>) -> Option<Vec<Vertex>> {
    if common.len() < t {
        return None;
    }
    if chosen.len() == t {
        return Some(common[..t].to_vec());
    }
    let last = *chosen.last().unwrap();
    // next vertex of A must see some vertex of the common neighbourhood
    let mut candidates: Vec<Vertex> = common
        .iter()
        .flat_map(|&c| g.neighbors(c).iter().copied())
        .filter(|&w| w > last && g.degree(w) >= t)
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    for w in candidates {
        let next: Vec<Vertex> = common.iter().copied().filter(|&c| g.has_edge(c, w)).collect();
        chosen.push(w);
        if let Some(b) = extend(g, t, chosen, next) {
            return Some(b);
        }
        chosen.pop();
    }
    None
}
