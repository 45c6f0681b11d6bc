//! Test-only oracles. Nothing here calls the pruned searches.

#![allow(dead_code)]

use std::collections::BTreeSet;

use boxicity::graph::{Edge, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Running-intersection subgraph for a full ordering, written out directly.
pub fn gsigma_naive(g: &Graph, order: &[usize]) -> BTreeSet<Edge> {
    let n = g.vertex_count();
    let mut active: Vec<bool> = vec![true; n];
    let mut out = BTreeSet::new();
    for &v in order {
        for w in 0..n {
            active[w] = active[w] && g.has_edge(v, w);
        }
        for w in 0..n {
            if active[w] {
                out.insert(Edge::new(v, w));
            }
        }
    }
    out
}

/// Maximal interval-order subgraphs by trying every ordering.
pub fn maximal_io_bruteforce(g: &Graph) -> BTreeSet<BTreeSet<Edge>> {
    let all: BTreeSet<BTreeSet<Edge>> = permutations(g.vertex_count())
        .iter()
        .map(|p| gsigma_naive(g, p))
        .collect();
    all.iter()
        .filter(|s| !all.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
        .cloned()
        .collect()
}

/// Chain property checked pairwise over the full ordering.
pub fn chain_ok(edges: &BTreeSet<Edge>, order: &[usize]) -> bool {
    let pos = |v: usize| order.iter().position(|&x| x == v);
    if edges.iter().any(|e| pos(e.u).is_none() || pos(e.v).is_none()) {
        return false;
    }
    let out = |i: usize| -> BTreeSet<usize> {
        let v = order[i];
        (i + 1..order.len())
            .map(|j| order[j])
            .filter(|&w| edges.contains(&Edge::new(v, w)))
            .collect()
    };
    (0..order.len()).all(|i| (i + 1..order.len()).all(|j| out(j).is_subset(&out(i))))
}

/// Interval-order test by trying every ordering.
pub fn is_interval_order_bruteforce(g: &Graph) -> bool {
    let all: BTreeSet<Edge> = g.edges().into_iter().collect();
    permutations(g.vertex_count())
        .iter()
        .any(|p| chain_ok(&all, p))
}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// found by minimizing the edge mask over all relabelings.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    let perms = permutations(n);
    let mut bit_of = vec![vec![0usize; n]; n];
    let mut b = 0;
    for u in 0..n {
        for v in u + 1..n {
            bit_of[u][v] = b;
            bit_of[v][u] = b;
            b += 1;
        }
    }
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u64;
                let mut bit = 0;
                for u in 0..n {
                    for v in u + 1..n {
                        if mask >> bit & 1 == 1 {
                            m |= 1 << bit_of[p[u]][p[v]];
                        }
                        bit += 1;
                    }
                }
                m
            })
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.into_iter().map(|m| graph_from_mask(n, m)).collect()
}
