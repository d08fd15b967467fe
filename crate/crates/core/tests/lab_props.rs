mod common;

use proptest::prelude::*;

use tww_core::lab::{
    advance_witness, audit_sequence, black_neighborhood_weight, check_obs_red_edge, check_witness, AuditVerdict, Case,
    Verdict,
};
use tww_core::sequence::Split;
use tww_core::{greedy_sequence, quotient, Graph, Vertex, VertexPartition};

use common::*;

fn sparse_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(0.0f64..1.0, n * (n - 1) / 2), 0.1f64..0.5))
        .prop_map(|(n, coins, p)| {
            // add edges greedily, skipping any that would close a 4-cycle
            let mut g = Graph::new(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if coins[k] < p {
                        let mut h = g.clone();
                        h.add_edge(u, v).unwrap();
                        if !has_c4(&h) {
                            g = h;
                        }
                    }
                    k += 1;
                }
            }
            g
        })
}

fn with_partition(g: Graph) -> impl Strategy<Value = (Graph, VertexPartition)> {
    let n = g.n();
    proptest::collection::vec(0..n, n).prop_map(move |labels| {
        let mut parts: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for (v, &l) in labels.iter().enumerate() {
            parts[l].push(v);
        }
        parts.retain(|p| !p.is_empty());
        (g.clone(), VertexPartition::new(n, parts).unwrap())
    })
}

/// Four blobs of `size` vertices joined by `size` disjoint paths. Each blob
/// may carry spare vertices that are joined to every vertex of a
/// neighbouring blob or only to their own blob, and a fifth part of extra
/// vertices hangs off the blobs.
#[derive(Debug, Clone)]
struct BlobCase {
    g: Graph,
    p: VertexPartition,
    spares: Vec<Vec<Vertex>>,
    split_part: usize,
    split_mask: u64,
    split_spares: bool,
}

fn blob_case() -> impl Strategy<Value = BlobCase> {
    (
        2usize..6,
        proptest::collection::vec((0usize..4, 0u8..3), 0..6),
        proptest::collection::vec((0usize..4, any::<u64>(), any::<bool>()), 0..3),
        proptest::collection::vec((0usize..4, 0usize..64, 0usize..64), 0..6),
        (any::<usize>(), any::<u64>(), any::<bool>()),
    )
        .prop_map(|(size, spare_modes, extras, chords, (split_part, split_mask, split_spares))| {
            let base = 4 * size;
            let n = base + spare_modes.len() + extras.len();
            let mut g = Graph::new(n);
            for i in 0..size {
                for b in 0..3 {
                    g.add_edge(b * size + i, (b + 1) * size + i).unwrap();
                }
            }
            for (b, x, y) in chords {
                let (u, v) = (b * size + x % size, b * size + y % size);
                if u != v && !g.has_edge(u, v) {
                    g.add_edge(u, v).unwrap();
                }
            }
            let mut parts: Vec<Vec<Vertex>> = (0..4).map(|b| (b * size..(b + 1) * size).collect()).collect();
            let mut spares = vec![Vec::new(); 4];
            for (i, &(b, mode)) in spare_modes.iter().enumerate() {
                let v = base + i;
                parts[b].push(v);
                spares[b].push(v);
                let target = match (mode, b) {
                    (0, _) => b,
                    (1, 3) | (2, 0) => b,
                    (1, _) => b + 1,
                    (_, _) => b - 1,
                };
                if target == b {
                    g.add_edge(v, b * size).unwrap();
                } else {
                    for j in 0..size {
                        g.add_edge(v, target * size + j).unwrap();
                    }
                }
            }
            let first_extra = base + spare_modes.len();
            for (i, &(b, mask, full)) in extras.iter().enumerate() {
                let e = first_extra + i;
                for j in 0..size {
                    if full || mask >> j & 1 == 1 {
                        g.add_edge(e, b * size + j).unwrap();
                    }
                }
            }
            if !extras.is_empty() {
                parts.push((first_extra..n).collect());
            }
            let p = VertexPartition::new(n, parts).unwrap();
            BlobCase { g, p, spares, split_part, split_mask, split_spares }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn big_parts_have_no_black_edge((g, p) in sparse_graph(10).prop_flat_map(with_partition)) {
        prop_assert!(!has_c4(&g));
        let pt = quotient(&g, &p).unwrap();
        prop_assert!(check_obs_red_edge(&pt, 2).is_empty());
        for x in p.part_ids() {
            if p.parts()[x].len() >= 2 {
                prop_assert!(black_neighborhood_weight(&pt, x).unwrap() <= 1);
            }
        }
    }

    #[test]
    fn maintained_successors_are_witnesses(case in blob_case(), t in 1usize..3) {
        let BlobCase { g, p, spares, split_part, split_mask, split_spares } = case;
        let Ok(w) = check_witness(&g, &p, [0, 1, 2, 3], t) else {
            return Ok(());
        };
        let id = split_part % p.len();
        let part = &p.parts()[id];
        prop_assume!(part.len() >= 2);
        let pool: &[Vertex] = if split_spares && id < 4 && !spares[id].is_empty() { &spares[id] } else { part };
        let mut moved: Vec<Vertex> =
            pool.iter().enumerate().filter(|(i, _)| split_mask >> i & 1 == 1).map(|(_, &v)| v).collect();
        if moved.is_empty() || moved.len() == part.len() {
            moved = vec![*part.last().unwrap()];
        }
        let kept: Vec<Vertex> = part.iter().copied().filter(|v| !moved.contains(v)).collect();
        let report = advance_witness(&g, &p, &w, &Split { part: id, kept, moved: moved.clone() }).unwrap();
        prop_assert_ne!(report.case, Case::InvalidInput);
        if report.verdict == Verdict::Maintained {
            let next = report.successor.unwrap();
            let (p2, _) = p.split(id, &moved).unwrap();
            prop_assert_eq!(check_witness(&g, &p2, next.parts, t), Ok(next.clone()));
            if matches!(report.case, Case::Outside | Case::End) {
                let delta = (next.s + next.w2 + next.w3) as i64 - (w.s + w.w2 + w.w3) as i64;
                prop_assert!(delta >= 0, "delta {} in {:?}", delta, report.case);
            }
            if report.case == Case::Outside {
                prop_assert_eq!((next.parts, next.s), (w.parts, w.s));
            }
        } else {
            prop_assert!(report.successor.is_none());
        }
    }

    #[test]
    fn audits_escape_only_wide_sequences(case in blob_case(), t in 1usize..3) {
        let BlobCase { g, p, .. } = case;
        if check_witness(&g, &p, [0, 1, 2, 3], t).is_err() {
            return Ok(());
        }
        let (seq, width) = greedy_sequence(&g).unwrap();
        let u = tww_core::invert(&g, &seq).unwrap();
        // audit from every index where four parts happen to carry a witness
        for (idx, pm) in u.partitions().iter().enumerate() {
            for x in pm.part_ids().collect::<Vec<_>>().windows(4) {
                let parts = [x[0], x[1], x[2], x[3]];
                if check_witness(&g, pm, parts, t).is_err() {
                    continue;
                }
                let verdict = audit_sequence(&g, &seq, idx + 1, parts, t).unwrap();
                match verdict {
                    AuditVerdict::SequenceEscaped { step, .. } => prop_assert!(width > 2 && step > idx),
                    AuditVerdict::NoWitness { reason } => prop_assert!(false, "{}", reason),
                    AuditVerdict::ContradictionFound { .. } | AuditVerdict::WitnessLost { .. } => {}
                }
            }
        }
    }
}
