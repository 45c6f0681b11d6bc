//! Interval-order covers of the complement of a line graph from
//! permutations of the base vertices.
//!
//! A permutation `pi` of V(G) covers the pair of disjoint edges `{ab, cd}`
//! when one edge's ranks all precede the other's. The covered pairs form an
//! interval-order subgraph of the complement of L(G).

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cover::{Cover, CoverMember, MemberTag};
use crate::edges::EdgeSubset;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::interval_order::ChainCertificate;

/// A bijection from base vertices to ranks `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasePermutation {
    ranks: Vec<usize>,
}

impl BasePermutation {
    pub fn from_ranks(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n + 1];
        for &r in &ranks {
            if r == 0 || r > n || std::mem::replace(&mut seen[r], true) {
                return Err(Error::input(format!("ranks {ranks:?} are not a permutation of 1..={n}")));
            }
        }
        Ok(BasePermutation { ranks })
    }

    /// `order[i]` is the vertex of rank `i + 1`.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut ranks = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || ranks[v] != 0 {
                return Err(Error::input(format!("{order:?} is not an ordering of 0..{n}")));
            }
            ranks[v] = i + 1;
        }
        Ok(BasePermutation { ranks })
    }

    pub fn identity(n: usize) -> Self {
        BasePermutation { ranks: (1..=n).collect() }
    }

    pub fn reversal(n: usize) -> Self {
        BasePermutation { ranks: (1..=n).rev().collect() }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.ranks[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Vertices in increasing rank.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.len()];
        for (v, &r) in self.ranks.iter().enumerate() {
            order[r - 1] = v;
        }
        order
    }

    /// True iff all ranks of one edge precede all ranks of the other.
    pub fn separates(&self, e: &Edge, f: &Edge) -> bool {
        let (lo_e, hi_e) = self.span(e);
        let (lo_f, hi_f) = self.span(f);
        hi_e < lo_f || hi_f < lo_e
    }

    fn span(&self, e: &Edge) -> (usize, usize) {
        let (x, y) = (self.ranks[e.u], self.ranks[e.v]);
        (x.min(y), x.max(y))
    }

    /// One permutation per non-empty line of space-separated ranks.
    pub fn parse_list(text: &str) -> Result<Vec<BasePermutation>> {
        text.lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .map(|(line, l)| {
                let ranks = l
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|_| Error::parse(line, format!("not a rank: {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                BasePermutation::from_ranks(ranks).map_err(|e| Error::parse(line, e.to_string()))
            })
            .collect()
    }
}

impl fmt::Display for BasePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.ranks.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

fn check_ground(g: &Graph, pi: &BasePermutation) -> Result<()> {
    if pi.len() != g.vertex_count() {
        return Err(Error::input(format!(
            "permutation has {} entries, graph has {} vertices",
            pi.len(),
            g.vertex_count()
        )));
    }
    Ok(())
}

/// Pairs of disjoint edges of `g` separated by `pi`, as edges of the
/// complement of L(g), with a certificate ordering the edges of `g` by
/// (larger rank, smaller rank).
pub fn covered_edges(g: &Graph, pi: &BasePermutation) -> Result<(EdgeSubset, ChainCertificate)> {
    check_ground(g, pi)?;
    let base = g.edges();
    let mut covered = Vec::new();
    for (i, e) in base.iter().enumerate() {
        for (j, f) in base.iter().enumerate().skip(i + 1) {
            if e.is_disjoint(f) && pi.separates(e, f) {
                covered.push(Edge::new(i, j));
            }
        }
    }
    let covered = EdgeSubset::from_vec(covered);
    let certificate = ChainCertificate::from_edges(&covered, &edge_order(&base, pi))?;
    Ok((covered, certificate))
}

/// Indices of `base` sorted by (larger rank, smaller rank, index).
pub fn edge_order(base: &[Edge], pi: &BasePermutation) -> Vec<usize> {
    let mut order: Vec<usize> = (0..base.len()).collect();
    order.sort_by_key(|&i| {
        let (lo, hi) = pi.span(&base[i]);
        (hi, lo, i)
    });
    order
}

/// Probability, times 24, that a pair of disjoint edges `{ab, cd}` ends up
/// separated when the unranked endpoints are ordered uniformly at random
/// after the ranked ones. `slots` holds the endpoint ranks `[a, b, c, d]`.
fn separation_weight(slots: [Option<usize>; 4]) -> u64 {
    let free: Vec<usize> = (0..4).filter(|&i| slots[i].is_none()).collect();
    let base = slots.iter().flatten().max().map_or(0, |&r| r + 1);
    let mut perm: Vec<usize> = (0..free.len()).collect();
    let mut hits = 0u64;
    let mut total = 0u64;
    loop {
        let mut pos = [0usize; 4];
        for i in 0..4 {
            pos[i] = slots[i].unwrap_or(0);
        }
        for (k, &i) in free.iter().enumerate() {
            pos[i] = base + perm[k];
        }
        let split = pos[0].max(pos[1]) < pos[2].min(pos[3]) || pos[2].max(pos[3]) < pos[0].min(pos[1]);
        hits += split as u64;
        total += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    hits * 24 / total
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// A permutation covering at least a third (rounded up) of `remaining`,
/// built rank by rank so that the expected number of covered edges under a
/// uniformly random completion never drops. Ties go to the smallest vertex.
pub fn best_permutation(g: &Graph, remaining: &EdgeSubset) -> Result<BasePermutation> {
    let n = g.vertex_count();
    let base = g.edges();
    let mut quads: Vec<[usize; 4]> = Vec::with_capacity(remaining.len());
    for e in remaining {
        let (x, y) = match (base.get(e.u), base.get(e.v)) {
            (Some(x), Some(y)) if x.is_disjoint(y) => (x, y),
            _ => {
                return Err(Error::input(format!(
                    "{e} is not an edge of the complement of the line graph"
                )))
            }
        };
        quads.push([x.u, x.v, y.u, y.v]);
    }
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (q, quad) in quads.iter().enumerate() {
        for &v in quad {
            touching[v].push(q);
        }
    }

    let mut rank: Vec<Option<usize>> = vec![None; n];
    let mut order = Vec::with_capacity(n);
    let weight = |rank: &[Option<usize>], q: &[usize; 4]| {
        separation_weight([rank[q[0]], rank[q[1]], rank[q[2]], rank[q[3]]])
    };
    for step in 0..n {
        let candidates: Vec<usize> = (0..n).filter(|&v| rank[v].is_none()).collect();
        let gains: Vec<i64> = candidates
            .par_iter()
            .map(|&v| {
                let mut trial = rank.clone();
                trial[v] = Some(step);
                touching[v]
                    .iter()
                    .map(|&q| weight(&trial, &quads[q]) as i64 - weight(&rank, &quads[q]) as i64)
                    .sum()
            })
            .collect();
        let (best, _) = candidates
            .iter()
            .zip(&gains)
            .fold(None, |acc: Option<(usize, i64)>, (&v, &g)| match acc {
                Some((_, bg)) if bg >= g => acc,
                _ => Some((v, g)),
            })
            .expect("an unranked vertex remains");
        rank[best] = Some(step);
        order.push(best);
    }
    BasePermutation::from_order(&order)
}

/// Best of `samples` seeded random permutations by coverage of `remaining`;
/// falls back to [`best_permutation`] when none covers anything.
pub fn sampled_permutation(
    g: &Graph,
    remaining: &EdgeSubset,
    samples: usize,
    seed: u64,
) -> Result<BasePermutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(usize, BasePermutation)> = None;
    for _ in 0..samples {
        let mut order: Vec<usize> = (0..g.vertex_count()).collect();
        order.shuffle(&mut rng);
        let pi = BasePermutation::from_order(&order)?;
        let hits = covered_edges(g, &pi)?.0.intersection(remaining).len();
        if best.as_ref().is_none_or(|(b, _)| hits > *b) {
            best = Some((hits, pi));
        }
    }
    match best {
        Some((hits, pi)) if hits > 0 || remaining.is_empty() => Ok(pi),
        _ => best_permutation(g, remaining),
    }
}

/// How each round of [`line_upper_cover_with`] picks its permutation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoundStrategy {
    Derandomized,
    Sampled { samples: usize, seed: u64 },
}

/// A complete cover of the complement of L(g) by permutation-induced
/// interval orders, each round covering a third of what is left.
pub fn line_upper_cover(g: &Graph) -> Result<Cover> {
    line_upper_cover_with(g, RoundStrategy::Derandomized)
}

pub fn line_upper_cover_with(g: &Graph, strategy: RoundStrategy) -> Result<Cover> {
    let target = EdgeSubset::all_of(&g.line_graph().complement());
    let mut remaining = target.clone();
    let mut members = Vec::new();
    let mut round = 0u64;
    while !remaining.is_empty() {
        let pi = match strategy {
            RoundStrategy::Derandomized => best_permutation(g, &remaining)?,
            RoundStrategy::Sampled { samples, seed } => {
                sampled_permutation(g, &remaining, samples, seed.wrapping_add(round))?
            }
        };
        let (edges, certificate) = covered_edges(g, &pi)?;
        remaining = remaining.difference(&edges);
        members.push(CoverMember {
            edges,
            certificate,
            tag: MemberTag::Perm(pi.ranks().to_vec()),
        });
        round += 1;
    }
    Ok(Cover::new(target, members))
}

/// `ceil(5 * log2(m))`, and 0 for `m <= 1`.
pub fn line_upper_bound(m: usize) -> usize {
    if m <= 1 {
        return 0;
    }
    match (m as u128).checked_pow(5) {
        // smallest t with 2^t >= m^5
        Some(p) => (128 - (p - 1).leading_zeros()) as usize,
        None => (5.0 * (m as f64).log2()).ceil() as usize,
    }
}

/// First triple (by id) with one element ranked between the other two in
/// every permutation. Returned as `(x, middle, z)` with `x < z`.
pub fn common_monotone_triple(perms: &[BasePermutation]) -> Result<Option<(usize, usize, usize)>> {
    let n = perms.first().map_or(0, BasePermutation::len);
    if perms.iter().any(|p| p.len() != n) {
        return Err(Error::input("permutations are over different ground sets"));
    }
    let between = |p: &BasePermutation, x: usize, mid: usize, z: usize| {
        let (x, m, z) = (p.rank(x), p.rank(mid), p.rank(z));
        x.min(z) < m && m < x.max(z)
    };
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for (x, mid, z) in [(a, b, c), (b, a, c), (a, c, b)] {
                    if perms.iter().all(|p| between(p, x, mid, z)) {
                        return Ok(Some((x, mid, z)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Most permutations for which an uncovered edge is guaranteed:
/// `floor(log2 log2 (n-1)) + 2`.
pub fn refutable_permutation_count(n: usize) -> usize {
    if n < 3 {
        return 0;
    }
    ((n - 1).ilog2().ilog2() + 2) as usize
}

/// An edge of the complement of L(K_n) covered by none of `perms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncoveredWitness {
    pub triple: (usize, usize, usize),
    /// Base edges `ac` and `bd`.
    pub edges: (Edge, Edge),
}

pub fn refute_permutation_cover(n: usize, perms: &[BasePermutation]) -> Result<UncoveredWitness> {
    if n < 5 {
        return Err(Error::input(format!("refutation needs n >= 5, got {n}")));
    }
    if perms.iter().any(|p| p.len() != n) {
        return Err(Error::input(format!("every permutation must be over {n} vertices")));
    }
    let limit = refutable_permutation_count(n);
    if perms.len() > limit {
        return Err(Error::input(format!(
            "{} permutations exceed the guaranteed limit {limit} for n = {n}",
            perms.len()
        )));
    }
    let (a, b, c) = common_monotone_triple(perms)?
        .ok_or_else(|| Error::input("no common monotone triple"))?;
    let d = (0..n).find(|x| ![a, b, c].contains(x)).expect("n >= 5");
    let (ac, bd) = (Edge::new(a, c), Edge::new(b, d));
    if perms.iter().any(|p| p.separates(&ac, &bd)) {
        return Err(Error::input("witness unexpectedly covered"));
    }
    Ok(UncoveredWitness {
        triple: (a, b, c),
        edges: (ac, bd),
    })
}
