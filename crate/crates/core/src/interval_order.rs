//! Interval-order graphs through vertex orderings with nested
//! out-neighbourhoods.
//!
//! For an ordering `v_1, ..., v_n` of a graph, let `N+(v_i)` be the
//! neighbours of `v_i` that come after it. The graph is an interval-order
//! graph (the complement of an interval graph) iff some ordering makes these
//! sets a chain: `N+(v_i) ⊇ N+(v_j)` whenever `i < j`.
//!
//! Given an arbitrary host graph and an ordering, [`build_gsigma`] keeps a
//! running intersection of neighbourhoods and joins each vertex to it; the
//! result is always an interval-order subgraph, and every edge-maximal
//! interval-order subgraph arises this way from some ordering.
//! [`enumerate_maximal_io`] searches those orderings with two reductions:
//! vertices adjacent to the whole running set are appended as one block
//! (they keep the set unchanged and their order is irrelevant), and a step
//! that shrinks the running set is only taken towards an inclusion-maximal
//! successor set.

use std::collections::{HashMap, HashSet};
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::edges::{maximal_mask, EdgeIndex, EdgeSubset};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

/// Witness that an edge set is an interval-order graph: an ordering together
/// with the out-neighbourhood of every vertex in it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainCertificate {
    ordering: Vec<usize>,
    out_neighborhoods: Vec<Vec<usize>>,
}

impl ChainCertificate {
    /// Computes the out-neighbourhoods of `ordering` inside `edges`. The
    /// ordering must mention every endpoint of `edges`.
    pub fn from_edges(edges: &EdgeSubset, ordering: &[usize]) -> Result<Self> {
        let position = positions(ordering)?;
        let mut out = vec![Vec::new(); ordering.len()];
        for e in edges {
            let (pu, pv) = match (position.get(&e.u), position.get(&e.v)) {
                (Some(&pu), Some(&pv)) => (pu, pv),
                _ => {
                    return Err(Error::input(format!(
                        "ordering does not contain both endpoints of edge {e}"
                    )))
                }
            };
            if pu < pv {
                out[pu].push(e.v);
            } else {
                out[pv].push(e.u);
            }
        }
        for set in &mut out {
            set.sort_unstable();
        }
        Ok(ChainCertificate {
            ordering: ordering.to_vec(),
            out_neighborhoods: out,
        })
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn out_neighborhoods(&self) -> &[Vec<usize>] {
        &self.out_neighborhoods
    }

    /// Number of non-empty out-neighbourhoods.
    pub fn active_len(&self) -> usize {
        self.out_neighborhoods
            .iter()
            .take_while(|s| !s.is_empty())
            .count()
    }

    /// Restricts the certificate to the vertices kept by `map` (old id to new
    /// id), recomputing out-neighbourhoods inside `edges`.
    pub fn restrict(&self, edges: &EdgeSubset, map: impl Fn(usize) -> Option<usize>) -> Result<Self> {
        let ordering: Vec<usize> = self.ordering.iter().filter_map(|&v| map(v)).collect();
        ChainCertificate::from_edges(edges, &ordering)
    }

    /// True iff the stored out-neighbourhoods are exactly those of `edges`
    /// under the stored ordering and they form a chain.
    pub fn certifies(&self, edges: &EdgeSubset) -> bool {
        match ChainCertificate::from_edges(edges, &self.ordering) {
            Ok(recomputed) => {
                recomputed.out_neighborhoods == self.out_neighborhoods && is_chain(&self.out_neighborhoods)
            }
            Err(_) => false,
        }
    }

    /// Appends `ordering ...` and one `out ...` line per ordering entry.
    pub fn write_lines(&self, out: &mut String) {
        out.push_str("ordering");
        for v in &self.ordering {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
        for set in &self.out_neighborhoods {
            out.push_str("out");
            for v in set {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
    }

    /// Parses the format of [`ChainCertificate::write_lines`] from numbered
    /// lines, consuming exactly the certificate's lines.
    pub fn parse_lines<'a, I>(lines: &mut std::iter::Peekable<I>) -> Result<Self>
    where
        I: Iterator<Item = (usize, &'a str)>,
    {
        let (line, body) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "expected an \"ordering\" line"))?;
        let ordering = keyword_ids(line, body, "ordering")?;
        positions(&ordering).map_err(|e| Error::parse(line, e.to_string()))?;
        let mut out_neighborhoods = Vec::with_capacity(ordering.len());
        for _ in 0..ordering.len() {
            let (line, body) = lines
                .next()
                .ok_or_else(|| Error::parse(line, "certificate truncated"))?;
            out_neighborhoods.push(keyword_ids(line, body, "out")?);
        }
        Ok(ChainCertificate {
            ordering,
            out_neighborhoods,
        })
    }
}

impl fmt::Display for ChainCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_lines(&mut s);
        f.write_str(&s)
    }
}

pub(crate) fn keyword_ids(line: usize, body: &str, keyword: &str) -> Result<Vec<usize>> {
    let mut tokens = body.split_whitespace();
    if tokens.next() != Some(keyword) {
        return Err(Error::parse(line, format!("expected \"{keyword}\" line")));
    }
    tokens
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Error::parse(line, format!("not a vertex id: {t:?}")))
        })
        .collect()
}

fn positions(ordering: &[usize]) -> Result<HashMap<usize, usize>> {
    let mut pos = HashMap::with_capacity(ordering.len());
    for (i, &v) in ordering.iter().enumerate() {
        if pos.insert(v, i).is_some() {
            return Err(Error::input(format!("vertex {v} repeated in ordering")));
        }
    }
    Ok(pos)
}

fn is_chain(sets: &[Vec<usize>]) -> bool {
    sets.windows(2).all(|w| {
        let (earlier, later) = (&w[0], &w[1]);
        later.iter().all(|v| earlier.binary_search(v).is_ok())
    })
}

fn validate_ordering(n: usize, ordering: &[usize]) -> Result<()> {
    if let Some(&v) = ordering.iter().find(|&&v| v >= n) {
        return Err(Error::input(format!(
            "vertex {v} in ordering is out of range for {n} vertices"
        )));
    }
    positions(ordering).map(|_| ())
}

/// Checks the chain property for `edges ⊆ E(g)` under `ordering`, with
/// out-neighbourhoods taken inside `edges`.
pub fn verify_chain(g: &Graph, edges: &EdgeSubset, ordering: &[usize]) -> Result<bool> {
    validate_ordering(g.vertex_count(), ordering)?;
    if let Some(e) = edges.iter().find(|e| !g.has_edge(e.u, e.v)) {
        return Err(Error::input(format!("edge {e} is not an edge of the host")));
    }
    let cert = ChainCertificate::from_edges(edges, ordering)?;
    Ok(is_chain(&cert.out_neighborhoods))
}

/// The ordering extended by the missing vertices in increasing id order.
fn completed(n: usize, prefix: &[usize]) -> Vec<usize> {
    let mut seen = FixedBitSet::with_capacity(n);
    let mut out = prefix.to_vec();
    for &v in prefix {
        seen.insert(v);
    }
    out.extend((0..n).filter(|&v| !seen.contains(v)));
    out
}

/// `G^σ` for an ordering (or a prefix of one): each vertex is joined to the
/// intersection of the neighbourhoods of itself and all earlier vertices.
/// The certificate orders the vertices missing from a prefix last.
pub fn build_gsigma(g: &Graph, ordering: &[usize]) -> Result<(EdgeSubset, ChainCertificate)> {
    let n = g.vertex_count();
    validate_ordering(n, ordering)?;
    let mut active = FixedBitSet::with_capacity(n);
    active.insert_range(..);
    let mut edges = Vec::new();
    for &v in ordering {
        active.intersect_with(g.neighbors(v));
        if active.is_clear() {
            break;
        }
        edges.extend(active.ones().map(|w| Edge::new(v, w)));
    }
    let edges = EdgeSubset::from_vec(edges);
    let cert = ChainCertificate::from_edges(&edges, &completed(n, ordering))?;
    Ok((edges, cert))
}

fn running_set(g: &Graph, prefix: &[usize]) -> FixedBitSet {
    let mut active = FixedBitSet::with_capacity(g.vertex_count());
    active.insert_range(..);
    for &v in prefix {
        active.intersect_with(g.neighbors(v));
    }
    active
}

/// Vertices outside `prefix` adjacent to every vertex of the current
/// out-neighbourhood; appending any of them keeps that set unchanged.
pub fn candidate_next(g: &Graph, prefix: &[usize]) -> Result<Vec<usize>> {
    if prefix.is_empty() {
        return Err(Error::input("candidate_next needs a non-empty prefix"));
    }
    validate_ordering(g.vertex_count(), prefix)?;
    let active = running_set(g, prefix);
    Ok((0..g.vertex_count())
        .filter(|v| !prefix.contains(v))
        .filter(|&v| active.is_subset(g.neighbors(v)))
        .collect())
}

/// Exact recognition. Returns an ordering certificate with `E^σ = E(g)`
/// when `g` is an interval-order graph.
pub fn is_interval_order(g: &Graph) -> Option<ChainCertificate> {
    let n = g.vertex_count();
    let mut placed = FixedBitSet::with_capacity(n);
    let mut active = FixedBitSet::with_capacity(n);
    active.insert_range(..);
    let mut order = Vec::with_capacity(n);
    let mut failed = HashSet::new();
    if !recognise(g, &mut placed, &active, &mut order, &mut failed) {
        return None;
    }
    let cert = ChainCertificate::from_edges(&EdgeSubset::all_of(g), &order)
        .expect("recognition ordering covers every vertex");
    debug_assert!(is_chain(&cert.out_neighborhoods));
    Some(cert)
}

// Placing `w` next captures all its edges iff its unplaced neighbours all lie
// in the running set. Vertices without unplaced neighbours can always go last.
fn recognise(
    g: &Graph,
    placed: &mut FixedBitSet,
    active: &FixedBitSet,
    order: &mut Vec<usize>,
    failed: &mut HashSet<FixedBitSet>,
) -> bool {
    let n = g.vertex_count();
    if failed.contains(placed) {
        return false;
    }
    let mut candidates = Vec::new();
    let mut pending = false;
    for w in (0..n).filter(|&w| !placed.contains(w)) {
        let mut rest = g.neighbors(w).clone();
        rest.difference_with(placed);
        if rest.is_clear() {
            continue;
        }
        pending = true;
        if rest.is_subset(active) {
            candidates.push((active.intersection_count(g.neighbors(w)), w));
        }
    }
    if !pending {
        order.extend((0..n).filter(|&w| !placed.contains(w)));
        return true;
    }
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, w) in candidates {
        let mut next = active.clone();
        next.intersect_with(g.neighbors(w));
        placed.insert(w);
        order.push(w);
        if recognise(g, placed, &next, order, failed) {
            return true;
        }
        order.pop();
        placed.remove(w);
    }
    failed.insert(placed.clone());
    false
}

/// An edge-maximal interval-order subgraph with its certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalIo {
    pub edges: EdgeSubset,
    pub certificate: ChainCertificate,
}

/// All edge-maximal interval-order subgraphs of `g`, sorted by edge list.
pub fn enumerate_maximal_io(g: &Graph, budget: &Budget) -> Result<Vec<MaximalIo>> {
    let search = Enumerator {
        g,
        index: EdgeIndex::new(g),
        budget,
    };
    let n = g.vertex_count();
    let placed = FixedBitSet::with_capacity(n);
    let mut all = FixedBitSet::with_capacity(n);
    all.insert_range(..);
    let edges = search.index.empty_bits();

    let first = search.successors(&placed, &all);
    let found: Found = if first.is_empty() {
        let mut found = Found::new();
        found.insert(edges, Vec::new());
        found
    } else {
        budget.tick()?;
        let parts = first
            .par_iter()
            .map(|next| {
                let mut found = Found::new();
                let (placed, edges, mut order) = search.advance(&placed, next, &edges, &[]);
                search.expand(&placed, next, &edges, &mut order, &mut found)?;
                Ok(found)
            })
            .collect::<Result<Vec<Found>>>()?;
        let mut found = Found::new();
        for part in parts {
            for (bits, order) in part {
                found.entry(bits).or_insert(order);
            }
        }
        found
    };

    let (sets, orders): (Vec<FixedBitSet>, Vec<Vec<usize>>) = found.into_iter().unzip();
    let keep = maximal_mask(&sets);
    let mut out = Vec::new();
    for ((bits, order), keep) in sets.iter().zip(orders).zip(keep) {
        if !keep {
            continue;
        }
        let (edges, certificate) = build_gsigma(g, &order)?;
        debug_assert_eq!(edges, search.index.to_subset(bits));
        out.push(MaximalIo { edges, certificate });
    }
    out.sort_by(|a, b| a.edges.cmp(&b.edges));
    Ok(out)
}

type Found = HashMap<FixedBitSet, Vec<usize>>;

struct Enumerator<'a> {
    g: &'a Graph,
    index: EdgeIndex,
    budget: &'a Budget,
}

impl Enumerator<'_> {
    /// Distinct inclusion-maximal sets `active ∩ N(w)` over unplaced `w`;
    /// empty when every such set is empty.
    fn successors(&self, placed: &FixedBitSet, active: &FixedBitSet) -> Vec<FixedBitSet> {
        let mut sets: Vec<FixedBitSet> = Vec::new();
        for w in (0..self.g.vertex_count()).filter(|&w| !placed.contains(w)) {
            let mut s = active.clone();
            s.intersect_with(self.g.neighbors(w));
            if !s.is_clear() && !sets.contains(&s) {
                sets.push(s);
            }
        }
        let keep: Vec<bool> = sets
            .iter()
            .map(|s| !sets.iter().any(|t| t != s && s.is_subset(t)))
            .collect();
        sets.into_iter()
            .zip(keep)
            .filter_map(|(s, k)| k.then_some(s))
            .collect()
    }

    /// Places every unplaced vertex adjacent to all of `next`, each joined
    /// to `next`.
    fn advance(
        &self,
        placed: &FixedBitSet,
        next: &FixedBitSet,
        edges: &FixedBitSet,
        order: &[usize],
    ) -> (FixedBitSet, FixedBitSet, Vec<usize>) {
        let mut placed = placed.clone();
        let mut edges = edges.clone();
        let mut order = order.to_vec();
        for u in 0..self.g.vertex_count() {
            if placed.contains(u) || !next.is_subset(self.g.neighbors(u)) {
                continue;
            }
            placed.insert(u);
            order.push(u);
            for x in next.ones() {
                let i = self.index.index(u, x).expect("block vertex adjacent to next");
                edges.insert(i);
            }
        }
        (placed, edges, order)
    }

    fn expand(
        &self,
        placed: &FixedBitSet,
        active: &FixedBitSet,
        edges: &FixedBitSet,
        order: &mut Vec<usize>,
        found: &mut Found,
    ) -> Result<()> {
        self.budget.tick()?;
        let successors = self.successors(placed, active);
        if successors.is_empty() {
            found.entry(edges.clone()).or_insert_with(|| order.clone());
            return Ok(());
        }
        for next in &successors {
            let (placed, edges, mut order) = self.advance(placed, next, edges, order);
            self.expand(&placed, next, &edges, &mut order, found)?;
        }
        Ok(())
    }
}
