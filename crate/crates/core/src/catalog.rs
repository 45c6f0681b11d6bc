//! Closed-form maximal interval-order subgraphs of the line graph of K_n.
//!
//! Vertices of L(K_n) are numbered by [`pair_rank`]. Every maximal
//! interval-order subgraph of L(K_n), n >= 5, is one of four shapes built
//! from a handful of primitive edge sets; [`enumerate_catalog`] lists them all.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::edges::{maximal_mask, EdgeIndex, EdgeSubset};
use crate::error::{Error, Result};
use crate::graph::{pair_rank, Edge, Graph};
use crate::interval_order::ChainCertificate;

/// Building blocks over L(K_n), named after the base vertices involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimitiveKind {
    /// All pairs of base edges meeting at `v`.
    Q(usize),
    /// The star of `uv` in L(K_n).
    Delta(usize, usize),
    /// The part of the star of `uv` through `u` only.
    DeltaMinus(usize, usize),
    /// The line graph of K_n restricted to `U`.
    CliqueSet(Vec<usize>),
    /// `{(uv, uw), (uv, vw)}`.
    KTripleMinus(usize, usize, usize),
}

impl PrimitiveKind {
    fn vertices(&self) -> Vec<usize> {
        match self {
            PrimitiveKind::Q(v) => vec![*v],
            PrimitiveKind::Delta(u, v) | PrimitiveKind::DeltaMinus(u, v) => vec![*u, *v],
            PrimitiveKind::CliqueSet(us) => us.clone(),
            PrimitiveKind::KTripleMinus(u, v, w) => vec![*u, *v, *w],
        }
    }
}

fn check_vertices(n: usize, vs: &[usize]) -> Result<()> {
    for (i, &v) in vs.iter().enumerate() {
        if v >= n {
            return Err(Error::input(format!("vertex {v} out of range for n = {n}")));
        }
        if vs[..i].contains(&v) {
            return Err(Error::input(format!("vertex {v} repeated")));
        }
    }
    Ok(())
}

fn line_edge(n: usize, (a, b): (usize, usize), (c, d): (usize, usize)) -> Edge {
    Edge::new(pair_rank(n, a, b), pair_rank(n, c, d))
}

fn push_primitive(n: usize, p: &PrimitiveKind, out: &mut Vec<Edge>) {
    match *p {
        PrimitiveKind::Q(v) => {
            let others: Vec<usize> = (0..n).filter(|&x| x != v).collect();
            for (i, &x) in others.iter().enumerate() {
                for &y in &others[i + 1..] {
                    out.push(line_edge(n, (v, x), (v, y)));
                }
            }
        }
        PrimitiveKind::Delta(u, v) => {
            for f in (0..n).filter(|&f| f != u && f != v) {
                out.push(line_edge(n, (u, v), (u, f)));
                out.push(line_edge(n, (u, v), (v, f)));
            }
        }
        PrimitiveKind::DeltaMinus(u, v) => {
            for f in (0..n).filter(|&f| f != u && f != v) {
                out.push(line_edge(n, (u, v), (u, f)));
            }
        }
        PrimitiveKind::CliqueSet(ref us) => {
            let mut pairs = Vec::new();
            for (i, &x) in us.iter().enumerate() {
                for &y in &us[i + 1..] {
                    pairs.push(Edge::new(x, y));
                }
            }
            for (i, e) in pairs.iter().enumerate() {
                for f in &pairs[i + 1..] {
                    if e.meets(f) {
                        out.push(line_edge(n, (e.u, e.v), (f.u, f.v)));
                    }
                }
            }
        }
        PrimitiveKind::KTripleMinus(u, v, w) => {
            out.push(line_edge(n, (u, v), (u, w)));
            out.push(line_edge(n, (u, v), (v, w)));
        }
    }
}

/// Edge set of one primitive over L(K_n).
pub fn primitive_edge_set(n: usize, p: &PrimitiveKind) -> Result<EdgeSubset> {
    if n < 3 {
        return Err(Error::input(format!("primitives need n >= 3, got {n}")));
    }
    check_vertices(n, &p.vertices())?;
    let mut out = Vec::new();
    push_primitive(n, p, &mut out);
    Ok(EdgeSubset::from_vec(out))
}

/// One of the four shapes of a maximal interval-order subgraph of L(K_n).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogDescriptor {
    TypeA([usize; 5]),
    TypeB([usize; 4]),
    TypeCF([usize; 4]),
    TypeCFPrime([usize; 4]),
}

impl CatalogDescriptor {
    pub fn vertices(&self) -> &[usize] {
        match self {
            CatalogDescriptor::TypeA(v) => v,
            CatalogDescriptor::TypeB(v)
            | CatalogDescriptor::TypeCF(v)
            | CatalogDescriptor::TypeCFPrime(v) => v,
        }
    }

    pub fn tag(&self) -> &'static str {
        match self {
            CatalogDescriptor::TypeA(_) => "A",
            CatalogDescriptor::TypeB(_) => "B",
            CatalogDescriptor::TypeCF(_) => "CF",
            CatalogDescriptor::TypeCFPrime(_) => "CF'",
        }
    }

    /// The representative of this descriptor's symmetry class: type A
    /// may swap `(b,c)` with `(d,e)`, type B may swap `b` with `d`.
    pub fn canonical(&self) -> CatalogDescriptor {
        match *self {
            CatalogDescriptor::TypeA([a, b, c, d, e]) if (d, e) < (b, c) => {
                CatalogDescriptor::TypeA([a, d, e, b, c])
            }
            CatalogDescriptor::TypeB([a, b, c, d]) if d < b => CatalogDescriptor::TypeB([a, d, c, b]),
            other => other,
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// Base vertices of the two stars every member contains.
    pub fn core(&self) -> [usize; 3] {
        match *self {
            CatalogDescriptor::TypeA([a, b, _, d, _])
            | CatalogDescriptor::TypeB([a, b, _, d])
            | CatalogDescriptor::TypeCF([a, b, _, d]) => [a, b, d],
            CatalogDescriptor::TypeCFPrime([a, b, c, _]) => [a, b, c],
        }
    }

    /// The two base edges whose stars lie in the member.
    pub fn core_stars(&self) -> [(usize, usize); 2] {
        match *self {
            CatalogDescriptor::TypeA([a, b, _, d, _])
            | CatalogDescriptor::TypeB([a, b, _, d])
            | CatalogDescriptor::TypeCF([a, b, _, d]) => [(a, b), (a, d)],
            CatalogDescriptor::TypeCFPrime([a, b, c, _]) => [(a, b), (b, c)],
        }
    }

    pub fn primitives(&self) -> Vec<PrimitiveKind> {
        use PrimitiveKind::*;
        match *self {
            CatalogDescriptor::TypeA([a, b, c, d, e]) => vec![
                Q(a),
                Delta(a, b),
                Delta(a, d),
                CliqueSet(vec![a, b, c]),
                CliqueSet(vec![a, d, e]),
            ],
            CatalogDescriptor::TypeB([a, b, c, d]) => {
                vec![Delta(a, b), Delta(a, d), CliqueSet(vec![a, b, c, d])]
            }
            CatalogDescriptor::TypeCF([a, b, c, d]) | CatalogDescriptor::TypeCFPrime([a, b, c, d]) => {
                let second = if matches!(self, CatalogDescriptor::TypeCF(_)) {
                    Delta(a, d)
                } else {
                    Delta(b, c)
                };
                vec![
                    Delta(a, b),
                    second,
                    DeltaMinus(a, c),
                    CliqueSet(vec![a, b, c]),
                    CliqueSet(vec![a, b, d]),
                    KTripleMinus(a, d, c),
                    KTripleMinus(b, c, d),
                ]
            }
        }
    }

    /// A full ordering of the base edges whose running-intersection
    /// subgraph is exactly this member, as base-vertex pairs.
    pub fn ordering_pairs(&self, n: usize) -> Vec<(usize, usize)> {
        let mut seq = Vec::with_capacity(n * (n - 1) / 2);
        match *self {
            CatalogDescriptor::TypeA([a, b, c, d, e]) => {
                seq.push((a, b));
                seq.push((a, c));
                seq.extend((0..n).filter(|f| ![a, b, c, d, e].contains(f)).map(|f| (a, f)));
                seq.push((d, e));
                seq.extend((0..n).filter(|f| ![a, d, e].contains(f)).map(|f| (d, f)));
                seq.push((a, e));
                seq.push((a, d));
            }
            CatalogDescriptor::TypeB([a, b, c, d]) => {
                seq.extend([(a, b), (c, d), (a, c), (b, d)]);
                for f in (0..n).filter(|f| ![a, b, c, d].contains(f)) {
                    seq.push((a, f));
                    seq.push((d, f));
                }
                seq.extend([(a, d), (b, c)]);
            }
            CatalogDescriptor::TypeCF([a, b, c, d]) => {
                seq.extend([(a, b), (a, c), (b, d), (c, d)]);
                for f in (0..n).filter(|f| ![a, b, c, d].contains(f)) {
                    seq.push((a, f));
                    seq.push((d, f));
                }
                seq.extend([(a, d), (b, c)]);
            }
            CatalogDescriptor::TypeCFPrime([a, b, c, d]) => {
                seq.extend([(a, b), (a, c), (b, d), (c, d)]);
                for f in (0..n).filter(|f| ![a, b, c, d].contains(f)) {
                    seq.push((b, f));
                    seq.push((c, f));
                }
                seq.extend([(b, c), (a, d)]);
            }
        }
        let mut seen = vec![false; n * (n - 1) / 2];
        for &(u, v) in &seq {
            seen[pair_rank(n, u, v)] = true;
        }
        for (r, s) in seen.iter().enumerate() {
            if !s {
                let e = crate::graph::pair_unrank(n, r);
                seq.push((e.u, e.v));
            }
        }
        seq
    }

    /// [`Self::ordering_pairs`] as L(K_n) vertex ids.
    pub fn ordering(&self, n: usize) -> Vec<usize> {
        self.ordering_pairs(n)
            .into_iter()
            .map(|(u, v)| pair_rank(n, u, v))
            .collect()
    }
}

impl fmt::Display for CatalogDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())?;
        for v in self.vertices() {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

impl FromStr for CatalogDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut tokens = s.split_whitespace();
        let tag = tokens.next().ok_or_else(|| Error::input("empty descriptor"))?;
        let vs = tokens
            .map(|t| t.parse::<usize>().map_err(|_| Error::input(format!("not a vertex id: {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let arity = if tag == "A" { 5 } else { 4 };
        if vs.len() != arity {
            return Err(Error::input(format!("descriptor {tag} takes {arity} vertices, got {}", vs.len())));
        }
        check_vertices(usize::MAX, &vs)?;
        let four = || [vs[0], vs[1], vs[2], vs[3]];
        match tag {
            "A" => Ok(CatalogDescriptor::TypeA([vs[0], vs[1], vs[2], vs[3], vs[4]])),
            "B" => Ok(CatalogDescriptor::TypeB(four())),
            "CF" => Ok(CatalogDescriptor::TypeCF(four())),
            "CF'" => Ok(CatalogDescriptor::TypeCFPrime(four())),
            _ => Err(Error::input(format!("unknown descriptor type {tag:?}"))),
        }
    }
}

/// Edge set of a catalog shape over L(K_n).
pub fn catalog_edge_set(n: usize, d: &CatalogDescriptor) -> Result<EdgeSubset> {
    if n < 5 {
        return Err(Error::input(format!("the catalog needs n >= 5, got {n}")));
    }
    check_vertices(n, d.vertices())?;
    let mut out = Vec::new();
    for p in d.primitives() {
        push_primitive(n, &p, &mut out);
    }
    Ok(EdgeSubset::from_vec(out))
}

#[derive(Clone, Debug)]
pub struct CatalogMember {
    pub descriptor: CatalogDescriptor,
    pub edges: EdgeSubset,
    pub certificate: ChainCertificate,
}

/// Canonical descriptors led by base vertex `a`, in A, B, CF, CF' order,
/// each block lexicographic.
pub fn descriptors_with_lead(n: usize, a: usize) -> Vec<CatalogDescriptor> {
    let rest: Vec<usize> = (0..n).filter(|&x| x != a).collect();
    let mut out = Vec::new();
    let distinct = |vs: &[usize]| vs.iter().enumerate().all(|(i, v)| !vs[..i].contains(v));
    for &b in &rest {
        for &c in &rest {
            for &d in &rest {
                for &e in &rest {
                    let d5 = CatalogDescriptor::TypeA([a, b, c, d, e]);
                    if distinct(&[b, c, d, e]) && d5.is_canonical() {
                        out.push(d5);
                    }
                }
            }
        }
    }
    let mut quads: Vec<[usize; 4]> = Vec::new();
    for &b in &rest {
        for &c in &rest {
            for &d in &rest {
                if distinct(&[b, c, d]) {
                    quads.push([a, b, c, d]);
                }
            }
        }
    }
    out.extend(quads.iter().map(|&q| CatalogDescriptor::TypeB(q)).filter(|d| d.is_canonical()));
    out.extend(quads.iter().map(|&q| CatalogDescriptor::TypeCF(q)));
    out.extend(quads.iter().map(|&q| CatalogDescriptor::TypeCFPrime(q)));
    out
}

/// All maximal interval-order subgraphs of L(K_n), one canonical
/// descriptor each, sorted by descriptor.
pub fn enumerate_catalog(n: usize) -> Result<Vec<CatalogMember>> {
    if n < 5 {
        return Err(Error::input(format!("the catalog needs n >= 5, got {n}")));
    }
    let host = Graph::complete(n).line_graph();
    let index = EdgeIndex::new(&host);
    let generated: Vec<(CatalogDescriptor, fixedbitset::FixedBitSet)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let index = &index;
            descriptors_with_lead(n, a).into_iter().map(move |d| {
                let set = catalog_edge_set(n, &d).expect("valid descriptor");
                (d, index.to_bits(&set).expect("catalog edges lie in L(K_n)"))
            })
        })
        .collect();

    // first descriptor wins among equal edge sets
    let mut by_set: HashMap<&fixedbitset::FixedBitSet, usize> = HashMap::new();
    let mut distinct: Vec<usize> = Vec::new();
    for (i, (_, bits)) in generated.iter().enumerate() {
        by_set.entry(bits).or_insert_with(|| {
            distinct.push(i);
            i
        });
    }
    let sets: Vec<fixedbitset::FixedBitSet> =
        distinct.iter().map(|&i| generated[i].1.clone()).collect();
    let keep = maximal_mask(&sets);

    let mut members: Vec<CatalogMember> = distinct
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(&i, _)| {
            let (descriptor, bits) = &generated[i];
            let edges = index.to_subset(bits);
            let certificate = ChainCertificate::from_edges(&edges, &descriptor.ordering(n))
                .expect("ordering covers every vertex");
            CatalogMember {
                descriptor: *descriptor,
                edges,
                certificate,
            }
        })
        .collect();
    members.sort_by_key(|m| m.descriptor);
    Ok(members)
}

/// Closed-form edge counts per shape.
pub fn expected_size(n: usize, d: &CatalogDescriptor) -> usize {
    match d {
        CatalogDescriptor::TypeA(_) => (n + 2) * (n - 1) / 2,
        CatalogDescriptor::TypeB(_) => 4 * (n - 1),
        CatalogDescriptor::TypeCF(_) | CatalogDescriptor::TypeCFPrime(_) => 5 * (n - 2),
    }
}
