//! Standard graph families, seeded random graphs, and isomorphism-free
//! enumeration of all small graphs.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, Vertex};

/// Deterministic RNG used by every randomized corpus in the crate.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

/// `rows x cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let mut g = Graph::new(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                g.add_edge(v, v + 1).unwrap();
            }
            if r + 1 < rows {
                g.add_edge(v, v + cols).unwrap();
            }
        }
    }
    g
}

pub fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let mut g = Graph::new(a.n() + b.n());
    for (u, v) in a.edges() {
        g.add_edge(u, v).unwrap();
    }
    for (u, v) in b.edges() {
        g.add_edge(a.n() + u, a.n() + v).unwrap();
    }
    g
}

/// Disjoint union plus every edge between the two sides.
pub fn join(a: &Graph, b: &Graph) -> Graph {
    let mut g = disjoint_union(a, b);
    for u in 0..a.n() {
        for v in 0..b.n() {
            g.add_edge(u, a.n() + v).unwrap();
        }
    }
    g
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// Uniform random recursive tree with shuffled labels.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Graph {
    let mut labels: Vec<Vertex> = (0..n).collect();
    labels.shuffle(rng);
    let mut g = Graph::new(n);
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        g.add_edge(labels[i], labels[parent]).unwrap();
    }
    g
}

/// Random cograph built by disjoint unions and joins.
pub fn random_cograph<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 1);
    if n == 1 {
        return Graph::new(1);
    }
    let left = rng.gen_range(1..n);
    let a = random_cograph(left, rng);
    let b = random_cograph(n - left, rng);
    if rng.gen_bool(0.5) {
        disjoint_union(&a, &b)
    } else {
        join(&a, &b)
    }
}

/// Random connected graph of tree-width at most 2, grown from an edge by
/// subdividing edges, adding a vertex adjacent to both ends of an edge, or
/// hanging a pendant vertex.
pub fn random_series_parallel<R: Rng>(n: usize, rng: &mut R) -> Graph {
    assert!(n >= 2);
    let mut edges: Vec<(Vertex, Vertex)> = vec![(0, 1)];
    for w in 2..n {
        let i = rng.gen_range(0..edges.len());
        let (u, v) = edges[i];
        match rng.gen_range(0..3) {
            0 => {
                edges.swap_remove(i);
                edges.push((u, w));
                edges.push((w, v));
            }
            1 => {
                edges.push((u, w));
                edges.push((w, v));
            }
            _ => edges.push((if rng.gen_bool(0.5) { u } else { v }, w)),
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// A uniformly random permutation of `0..n`.
pub fn random_permutation<R: Rng>(n: usize, rng: &mut R) -> Vec<Vertex> {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn adjacency_bits(g: &Graph, order: &[Vertex]) -> u64 {
    // order[i] = vertex placed at position i
    let n = order.len();
    let mut bits = 0u64;
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(order[i], order[j]) {
                bits |= 1 << k;
            }
            k += 1;
        }
    }
    bits
}

/// Canonical form of a graph with at most 11 vertices: the smallest
/// upper-triangle adjacency word over all vertex orders that respect a
/// colour refinement by degrees.
pub fn canonical_form(g: &Graph) -> u64 {
    let n = g.n();
    assert!(n <= 11, "canonical form supports at most 11 vertices");
    // refine colours: start with degree, iterate with sorted neighbour colours
    let mut color: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    loop {
        let mut sig: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut ns: Vec<usize> = g.neighbors(v).iter().map(|&w| color[w]).collect();
                ns.sort_unstable();
                (color[v], ns)
            })
            .collect();
        let mut distinct = sig.clone();
        distinct.sort();
        distinct.dedup();
        let next: Vec<usize> = sig
            .iter_mut()
            .map(|s| distinct.binary_search(s).unwrap())
            .collect();
        let before = color.iter().collect::<HashSet<_>>().len();
        let after = distinct.len();
        color = next;
        if after == before {
            break;
        }
    }
    let mut cells: Vec<Vec<Vertex>> = Vec::new();
    let max_color = color.iter().copied().max().unwrap_or(0);
    for c in 0..=max_color {
        let cell: Vec<Vertex> = g.vertices().filter(|&v| color[v] == c).collect();
        if !cell.is_empty() {
            cells.push(cell);
        }
    }
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    permute_cells(g, &mut cells, 0, &mut order, &mut best);
    best
}

fn permute_cells(g: &Graph, cells: &mut [Vec<Vertex>], idx: usize, order: &mut Vec<Vertex>, best: &mut u64) {
    if idx == cells.len() {
        *best = (*best).min(adjacency_bits(g, order));
        return;
    }
    let cell = cells[idx].clone();
    let mut perm = cell.clone();
    heap_permutations(&mut perm, cell.len(), &mut |p| {
        let len = order.len();
        order.extend_from_slice(p);
        permute_cells(g, cells, idx + 1, order, best);
        order.truncate(len);
    });
}

fn heap_permutations(items: &mut [Vertex], k: usize, visit: &mut dyn FnMut(&[Vertex])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(items, k - 1, visit);
        if k % 2 == 0 {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
    heap_permutations(items, k - 1, visit);
}

/// One representative of every isomorphism class of graphs on exactly `n`
/// vertices (`n <= 9`). Grows each class on `n - 1` vertices by a vertex
/// with every possible neighbourhood and keeps the canonically distinct ones.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 9, "enumeration supports at most 9 vertices");
    let mut level = vec![Graph::new(0)];
    for k in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for base in &level {
            for mask in 0u32..(1 << (k - 1)) {
                let mut g = Graph::new(k);
                for (u, v) in base.edges() {
                    g.add_edge(u, v).unwrap();
                }
                for u in 0..k - 1 {
                    if mask >> u & 1 == 1 {
                        g.add_edge(u, k - 1).unwrap();
                    }
                }
                if seen.insert(canonical_form(&g)) {
                    next.push(g);
                }
            }
        }
        level = next;
    }
    level
}

/// All graphs with `1..=max_n` vertices up to isomorphism.
pub fn all_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(all_graphs).collect()
}
