//! Complements of line graphs: interval-order subgraphs of L(G), interval
//! completions of the complement, and exact boxicity decisions.
//!
//! Vertex `i` of L(G) is the `i`-th edge of G in lexicographic order. For
//! G on n >= 5 vertices the maximal interval-order subgraphs of L(G) are
//! found among restrictions of the L(K_n) catalog.

use std::collections::{HashMap, HashSet};
use std::sync::atomic::{AtomicU64, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::catalog::{catalog_edge_set, enumerate_catalog, CatalogDescriptor};
use crate::cover::{Cover, CoverMember, MemberTag};
use crate::edges::{maximal_mask, EdgeIndex, EdgeSubset};
use crate::error::{Error, Result};
use crate::graph::{choose2, pair_rank, Edge, Graph};
use crate::interval_order::{enumerate_maximal_io, ChainCertificate};

/// A maximal interval-order subgraph of L(G).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub edges: EdgeSubset,
    pub certificate: ChainCertificate,
    /// Catalog shape this member was restricted from, if any.
    pub descriptor: Option<CatalogDescriptor>,
}

/// All maximal interval-order subgraphs of L(g), ordered by descriptor
/// (or by edge list when `g` has fewer than five vertices).
pub fn family_b(g: &Graph, budget: &Budget) -> Result<Vec<FamilyMember>> {
    let n = g.vertex_count();
    let line = g.line_graph();
    if n < 5 {
        return Ok(enumerate_maximal_io(&line, budget)?
            .into_iter()
            .map(|m| FamilyMember {
                edges: m.edges,
                certificate: m.certificate,
                descriptor: None,
            })
            .collect());
    }

    // catalog vertex (pair rank) -> L(g) vertex
    let mut to_line = vec![None; choose2(n)];
    for (i, e) in g.edges().iter().enumerate() {
        to_line[pair_rank(n, e.u, e.v)] = Some(i);
    }
    let index = EdgeIndex::new(&line);
    let catalog = enumerate_catalog(n)?;

    let restricted: Vec<FixedBitSet> = catalog
        .par_iter()
        .map(|m| {
            let mut bits = index.empty_bits();
            for e in &m.edges {
                if let (Some(x), Some(y)) = (to_line[e.u], to_line[e.v]) {
                    bits.insert(index.index(x, y).expect("both ends are edges of g"));
                }
            }
            bits
        })
        .collect();
    budget.tick()?;

    let mut seen: HashSet<&FixedBitSet> = HashSet::new();
    let firsts: Vec<usize> = (0..catalog.len())
        .filter(|&i| seen.insert(&restricted[i]))
        .collect();
    let sets: Vec<FixedBitSet> = firsts.iter().map(|&i| restricted[i].clone()).collect();
    let keep = maximal_mask(&sets);

    let mut out = Vec::new();
    for (&i, keep) in firsts.iter().zip(keep) {
        if !keep {
            continue;
        }
        let edges = index.to_subset(&restricted[i]);
        let certificate = catalog[i]
            .certificate
            .restrict(&edges, |v| to_line[v])?;
        out.push(FamilyMember {
            edges,
            certificate,
            descriptor: Some(catalog[i].descriptor),
        });
    }
    Ok(out)
}

/// An interval supergraph of the complement of L(G), on the vertex set E(G).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionResult {
    /// Edges of L(G), added to its complement.
    pub added_edges: EdgeSubset,
    pub total_edges: usize,
    /// Edges of L(G) left out, i.e. the complement of the completion.
    pub complement_edges: EdgeSubset,
    /// Chain certificate of `complement_edges`.
    pub witness: ChainCertificate,
}

/// The inclusion-minimal interval completions of the complement of L(g),
/// one per maximal interval-order subgraph of L(g).
pub fn minimal_interval_completions(g: &Graph, budget: &Budget) -> Result<Vec<CompletionResult>> {
    let all = EdgeSubset::all_of(&g.line_graph());
    let pairs = choose2(g.edge_count());
    Ok(family_b(g, budget)?
        .into_iter()
        .map(|m| CompletionResult {
            added_edges: all.difference(&m.edges),
            total_edges: pairs - m.edges.len(),
            complement_edges: m.edges,
            witness: m.certificate,
        })
        .collect())
}

/// A minimum-edge interval completion of the complement of L(g); ties go to
/// the lexicographically first added-edge list.
pub fn igc_minimum_completion(g: &Graph, budget: &Budget) -> Result<CompletionResult> {
    minimal_interval_completions(g, budget)?
        .into_iter()
        .min_by(|a, b| {
            a.total_edges
                .cmp(&b.total_edges)
                .then_with(|| a.added_edges.cmp(&b.added_edges))
        })
        .ok_or_else(|| Error::input("graph has no interval completion candidates"))
}

/// Counters from one decision search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub family_size: usize,
    pub target_edges: usize,
    pub nodes: u64,
    /// Pairs of edge-disjoint catalog members whose core triples were
    /// checked to be disjoint.
    pub core_checks: u64,
    /// The answer came from the closed-form cover without searching.
    pub closed_form: bool,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub cover: Option<Cover>,
    pub stats: SearchStats,
}

/// A cover of E(L(g)) by at most `k` interval-order subgraphs, if one exists.
pub fn decide_boxicity_coline(g: &Graph, k: usize, budget: &Budget) -> Result<Option<Cover>> {
    decide_with_stats(g, k, budget).map(|d| d.cover)
}

pub fn decide_with_stats(g: &Graph, k: usize, budget: &Budget) -> Result<Decision> {
    let n = g.vertex_count();
    let line = g.line_graph();
    let target = EdgeSubset::all_of(&line);
    let mut stats = SearchStats {
        target_edges: target.len(),
        ..SearchStats::default()
    };
    if target.is_empty() {
        return Ok(Decision {
            cover: Some(Cover::new(target, Vec::new())),
            stats,
        });
    }
    if n >= 5 && k >= n - 2 && g.is_complete() {
        stats.closed_form = true;
        return Ok(Decision {
            cover: Some(kneser_cover(n)?),
            stats,
        });
    }

    let family = family_b(g, budget)?;
    stats.family_size = family.len();
    let index = EdgeIndex::new(&line);
    let sets: Vec<FixedBitSet> = family
        .iter()
        .map(|m| index.to_bits(&m.edges).expect("members lie in L(g)"))
        .collect();
    let cores = (n >= 5 && g.is_complete())
        .then(|| family.iter().map(|m| m.descriptor.map(|d| d.core())).collect());
    let search = SetCover::new(sets, cores, budget);

    let chosen = search.solve(k)?;
    stats.nodes = search.nodes.load(Ordering::Relaxed);
    stats.core_checks = search.core_checks.load(Ordering::Relaxed);
    let cover = chosen.map(|chosen| {
        let members = chosen
            .into_iter()
            .map(|i| {
                let m = &family[i];
                CoverMember {
                    edges: m.edges.clone(),
                    certificate: m.certificate.clone(),
                    tag: m.descriptor.map_or(MemberTag::Explicit, MemberTag::Catalog),
                }
            })
            .collect();
        Cover::new(target, members)
    });
    Ok(Decision { cover, stats })
}

/// Exact set cover by at most `k` of `sets`, branching on the uncovered
/// element with the fewest holders. Sets are packed into 64-bit words.
struct SetCover<'a> {
    count: usize,
    words: usize,
    data: Vec<u64>,
    holders: Vec<Vec<usize>>,
    cores: Option<Vec<Option<[usize; 3]>>>,
    universe: usize,
    budget: &'a Budget,
    nodes: AtomicU64,
    core_checks: AtomicU64,
}

type Memo = HashSet<(Vec<u64>, usize)>;

impl<'a> SetCover<'a> {
    fn new(sets: Vec<FixedBitSet>, cores: Option<Vec<Option<[usize; 3]>>>, budget: &'a Budget) -> Self {
        let universe = sets.first().map_or(0, |s| s.len());
        let words = universe.div_ceil(64);
        let mut data = vec![0u64; words * sets.len()];
        let mut holders = vec![Vec::new(); universe];
        for (i, s) in sets.iter().enumerate() {
            for e in s.ones() {
                holders[e].push(i);
                data[i * words + e / 64] |= 1 << (e % 64);
            }
        }
        SetCover {
            count: sets.len(),
            words,
            data,
            holders,
            cores,
            universe,
            budget,
            nodes: AtomicU64::new(0),
            core_checks: AtomicU64::new(0),
        }
    }

    fn set(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    fn gain(&self, i: usize, uncovered: &[u64]) -> usize {
        self.set(i)
            .iter()
            .zip(uncovered)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn without(&self, uncovered: &[u64], i: usize) -> Vec<u64> {
        uncovered.iter().zip(self.set(i)).map(|(u, s)| u & !s).collect()
    }

    fn solve(&self, k: usize) -> Result<Option<Vec<usize>>> {
        if self.universe == 0 {
            return Ok(Some(Vec::new()));
        }
        if k == 0 {
            return Ok(None);
        }
        let mut uncovered = vec![u64::MAX; self.words];
        if !self.universe.is_multiple_of(64) {
            uncovered[self.words - 1] = (1u64 << (self.universe % 64)) - 1;
        }
        self.budget.tick()?;
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let Some(choices) = self.choices(&uncovered, k) else {
            return Ok(None);
        };
        let found = choices
            .par_iter()
            .map(|&i| {
                let mut chosen = vec![i];
                let mut memo = Memo::new();
                let rest = self.without(&uncovered, i);
                self.extend(&rest, k - 1, &mut chosen, &mut memo)
                    .map(|ok| ok.then_some(chosen))
            })
            .find_map_first(|r| match r {
                Ok(None) => None,
                other => Some(other),
            });
        found.unwrap_or(Ok(None))
    }

    fn pivot(&self, uncovered: &[u64]) -> usize {
        let ones = uncovered.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b)
        });
        ones.min_by_key(|&e| self.holders[e].len())
            .expect("uncovered is nonempty")
    }

    /// Members worth trying next, best coverage first; `None` when the
    /// bound rules out finishing within `depth_left`.
    fn choices(&self, uncovered: &[u64], depth_left: usize) -> Option<Vec<usize>> {
        let remaining: usize = uncovered.iter().map(|w| w.count_ones() as usize).sum();
        let pivot = self.pivot(uncovered);
        if depth_left == 1 {
            return self.holders[pivot]
                .iter()
                .find(|&&i| self.gain(i, uncovered) == remaining)
                .map(|&i| vec![i]);
        }
        let best = (0..self.count).map(|i| self.gain(i, uncovered)).max().unwrap_or(0);
        if remaining > depth_left * best {
            return None;
        }
        let mut options: Vec<(usize, usize)> = self.holders[pivot]
            .iter()
            .map(|&i| (self.gain(i, uncovered), i))
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        Some(options.into_iter().map(|(_, i)| i).collect())
    }

    fn extend(
        &self,
        uncovered: &[u64],
        depth_left: usize,
        chosen: &mut Vec<usize>,
        memo: &mut Memo,
    ) -> Result<bool> {
        self.budget.tick()?;
        self.nodes.fetch_add(1, Ordering::Relaxed);
        self.check_cores(chosen);
        if uncovered.iter().all(|&w| w == 0) {
            return Ok(true);
        }
        if depth_left == 0 {
            return Ok(false);
        }
        let key = (uncovered.to_vec(), depth_left);
        if depth_left >= 2 && memo.contains(&key) {
            return Ok(false);
        }
        if let Some(choices) = self.choices(uncovered, depth_left) {
            for i in choices {
                chosen.push(i);
                let rest = self.without(uncovered, i);
                if self.extend(&rest, depth_left - 1, chosen, memo)? {
                    return Ok(true);
                }
                chosen.pop();
            }
        }
        if depth_left >= 2 {
            memo.insert(key);
        }
        Ok(false)
    }

    // Edge-disjoint catalog members must have disjoint core triples; the
    // newest member is compared against the earlier ones.
    fn check_cores(&self, chosen: &[usize]) {
        let Some(cores) = &self.cores else { return };
        let Some((&last, earlier)) = chosen.split_last() else { return };
        let Some(c_last) = cores[last] else { return };
        for &j in earlier {
            let Some(c_j) = cores[j] else { continue };
            if self.gain(last, self.set(j)) == 0 {
                self.core_checks.fetch_add(1, Ordering::Relaxed);
                assert!(
                    c_last.iter().all(|v| !c_j.contains(v)),
                    "edge-disjoint members {last} and {j} share a core vertex"
                );
            }
        }
    }
}

/// The n-2 closed-form members covering L(K_n): member i is led by base
/// vertex i with its two stars through n-2 and n-1.
pub fn kneser_cover_descriptors(n: usize) -> Result<Vec<CatalogDescriptor>> {
    if n < 5 {
        return Err(Error::input(format!("the closed-form cover needs n >= 5, got {n}")));
    }
    let (b, d) = (n - 2, n - 1);
    Ok((0..n - 2)
        .map(|a| {
            let mut free = (0..n).filter(|&x| x != a && x != b && x != d);
            let c = free.next().expect("n >= 5");
            let e = free.next().expect("n >= 5");
            CatalogDescriptor::TypeA([a, b, c, d, e]).canonical()
        })
        .collect())
}

pub fn kneser_cover(n: usize) -> Result<Cover> {
    let target = EdgeSubset::all_of(&Graph::complete(n).line_graph());
    let members = kneser_cover_descriptors(n)?
        .into_iter()
        .map(|d| {
            let edges = catalog_edge_set(n, &d)?;
            let certificate = ChainCertificate::from_edges(&edges, &d.ordering(n))?;
            Ok(CoverMember {
                edges,
                certificate,
                tag: MemberTag::Catalog(d),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Cover::new(target, members))
}

/// Result of a search showing that `k` members cannot cover L(K_n).
#[derive(Clone, Debug)]
pub struct Refutation {
    pub k: usize,
    pub stats: SearchStats,
}

#[derive(Clone, Debug)]
pub struct KneserBoxicity {
    pub value: usize,
    pub cover: Cover,
    /// Present when the lower bound was recomputed by exhaustive search.
    pub refutation: Option<Refutation>,
}

/// Boxicity n-2 of KG(n,2), with the closed-form cover as upper certificate.
/// The matching lower bound is recomputed by search for n = 5 and 6, and for
/// n = 7 when `search_seven` is set and the budget allows.
pub fn kneser_boxicity(n: usize, search_seven: bool, budget: &Budget) -> Result<KneserBoxicity> {
    let cover = kneser_cover(n)?;
    let refutation = if n <= 6 || (n == 7 && search_seven) {
        match decide_with_stats(&Graph::complete(n), n - 3, budget) {
            Ok(Decision { cover: None, stats }) => Some(Refutation { k: n - 3, stats }),
            Ok(Decision { cover: Some(_), .. }) => {
                return Err(Error::input(format!("found a {}-cover of L(K_{n})", n - 3)))
            }
            Err(Error::BudgetExceeded { .. }) if n == 7 => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(KneserBoxicity {
        value: n - 2,
        cover,
        refutation,
    })
}

/// Human-readable account of a refutation.
pub fn refutation_summary(n: usize, r: &Refutation) -> String {
    format!(
        "no {k} interval-order subgraphs of L(K_{n}) cover its {m} edges\n\
         family size {f}, search nodes {nodes}, disjoint-core checks {c}\n",
        k = r.k,
        m = r.stats.target_edges,
        f = r.stats.family_size,
        nodes = r.stats.nodes,
        c = r.stats.core_checks,
    )
}

/// L(g) vertex id of each base edge, for reading members back as pairs.
pub fn line_vertex_map(g: &Graph) -> HashMap<Edge, usize> {
    g.edges().into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}
