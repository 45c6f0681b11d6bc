//! Edge subsets of a host graph and their bitset encoding.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::graph::{Edge, Graph};

/// A set of host-graph edges, kept sorted and duplicate-free so that equal
/// sets have identical representations.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSubset {
    edges: Vec<Edge>,
}

impl EdgeSubset {
    pub fn new() -> Self {
        EdgeSubset::default()
    }

    pub fn from_vec(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        EdgeSubset { edges }
    }

    pub fn all_of(g: &Graph) -> Self {
        EdgeSubset { edges: g.edges() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edge> {
        self.edges.iter()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn is_subset(&self, other: &EdgeSubset) -> bool {
        self.len() <= other.len() && self.edges.iter().all(|e| other.contains(e))
    }

    pub fn union(&self, other: &EdgeSubset) -> EdgeSubset {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        EdgeSubset::from_vec(edges)
    }

    pub fn difference(&self, other: &EdgeSubset) -> EdgeSubset {
        EdgeSubset {
            edges: self
                .edges
                .iter()
                .filter(|e| !other.contains(e))
                .copied()
                .collect(),
        }
    }

    pub fn intersection(&self, other: &EdgeSubset) -> EdgeSubset {
        EdgeSubset {
            edges: self
                .edges
                .iter()
                .filter(|e| other.contains(e))
                .copied()
                .collect(),
        }
    }

    /// Largest endpoint plus one, or 0 for the empty set.
    pub fn vertex_bound(&self) -> usize {
        self.edges.iter().map(|e| e.v + 1).max().unwrap_or(0)
    }
}

impl FromIterator<Edge> for EdgeSubset {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        EdgeSubset::from_vec(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a EdgeSubset {
    type Item = &'a Edge;
    type IntoIter = std::slice::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

impl fmt::Debug for EdgeSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.edges.iter().map(|e| (e.u, e.v)))
            .finish()
    }
}

/// Dense numbering of the edges of a host graph, for bitset arithmetic on
/// edge subsets.
#[derive(Clone, Debug)]
pub struct EdgeIndex {
    n: usize,
    slot: Vec<u32>,
    edges: Vec<Edge>,
}

const NO_EDGE: u32 = u32::MAX;

impl EdgeIndex {
    pub fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        let edges = g.edges();
        let mut slot = vec![NO_EDGE; n * n];
        for (i, e) in edges.iter().enumerate() {
            slot[e.u * n + e.v] = i as u32;
            slot[e.v * n + e.u] = i as u32;
        }
        EdgeIndex { n, slot, edges }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    #[inline]
    pub fn index(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n {
            return None;
        }
        match self.slot[u * self.n + v] {
            NO_EDGE => None,
            i => Some(i as usize),
        }
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn empty_bits(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    /// `None` if some edge is not an edge of the host.
    pub fn to_bits(&self, set: &EdgeSubset) -> Option<FixedBitSet> {
        let mut bits = self.empty_bits();
        for e in set {
            bits.insert(self.index(e.u, e.v)?);
        }
        Some(bits)
    }

    pub fn to_subset(&self, bits: &FixedBitSet) -> EdgeSubset {
        // bit order is lexicographic edge order, so the result is sorted
        EdgeSubset {
            edges: bits.ones().map(|i| self.edges[i]).collect(),
        }
    }
}

/// Marks which of `sets` are inclusion-maximal. Sets must be pairwise
/// distinct and share one universe size.
pub(crate) fn maximal_mask(sets: &[FixedBitSet]) -> Vec<bool> {
    let universe = sets.first().map_or(0, |s| s.len());
    let sizes: Vec<usize> = sets.iter().map(|s| s.count_ones(..)).collect();
    let mut order: Vec<usize> = (0..sets.len()).collect();
    order.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));

    // kept supersets, indexed by each of their elements
    let mut holders: Vec<Vec<usize>> = vec![Vec::new(); universe];
    let mut keep = vec![false; sets.len()];
    for &i in &order {
        let s = &sets[i];
        let dominated = match s.ones().min_by_key(|&e| holders[e].len()) {
            None => keep.iter().any(|&k| k),
            Some(e) => holders[e]
                .iter()
                .any(|&j| sizes[j] > sizes[i] && s.is_subset(&sets[j])),
        };
        if !dominated {
            keep[i] = true;
            for e in s.ones() {
                holders[e].push(i);
            }
        }
    }
    keep
}
