//! Interval-order covers of a target edge set and their certificate files.
//!
//! File layout, one item per line:
//!
//! ```text
//! target-edges <count>
//! member <tag>            tag: A/B/CF/CF' descriptor, `explicit`, or `perm <ranks>`
//! edges <k>               optional for descriptors, then k lines `u v`
//! ordering <ids>
//! out <ids>               one per ordering entry
//! ...
//! complete true|false
//! ```
//!
//! A descriptor member without an edge block stands for the full catalog
//! shape over L(K_n), with n read off the target's vertex count.

use std::collections::HashSet;
use std::fmt;

use crate::catalog::{catalog_edge_set, CatalogDescriptor};
use crate::edges::EdgeSubset;
use crate::error::{Error, Result};
use crate::graph::{choose2, Edge};
use crate::interval_order::{keyword_ids, ChainCertificate};

/// Where a cover member came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MemberTag {
    Catalog(CatalogDescriptor),
    /// Base-vertex permutation as ranks, `ranks[v]` in `1..=n`.
    Perm(Vec<usize>),
    Explicit,
}

impl fmt::Display for MemberTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MemberTag::Catalog(d) => write!(f, "{d}"),
            MemberTag::Perm(ranks) => {
                f.write_str("perm")?;
                for r in ranks {
                    write!(f, " {r}")?;
                }
                Ok(())
            }
            MemberTag::Explicit => f.write_str("explicit"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoverMember {
    pub edges: EdgeSubset,
    pub certificate: ChainCertificate,
    pub tag: MemberTag,
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub target: EdgeSubset,
    pub members: Vec<CoverMember>,
}

impl Cover {
    pub fn new(target: EdgeSubset, members: Vec<CoverMember>) -> Self {
        Cover { target, members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn union(&self) -> EdgeSubset {
        self.members
            .iter()
            .flat_map(|m| m.edges.iter().copied())
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.union() == self.target
    }

    /// Certificate text. `host_vertices` is the vertex count of the graph
    /// owning the target; descriptor members that equal their full catalog
    /// shape over it are written without an edge block.
    pub fn to_certificate(&self, host_vertices: usize) -> String {
        let base_n = base_order(host_vertices);
        let mut s = format!("target-edges {}\n", self.target.len());
        for m in &self.members {
            s.push_str(&format!("member {}\n", m.tag));
            let implied = match (&m.tag, base_n) {
                (MemberTag::Catalog(d), Some(n)) => {
                    catalog_edge_set(n, d).map(|e| e == m.edges).unwrap_or(false)
                }
                _ => false,
            };
            if !implied {
                s.push_str(&format!("edges {}\n", m.edges.len()));
                for e in &m.edges {
                    s.push_str(&format!("{} {}\n", e.u, e.v));
                }
            }
            m.certificate.write_lines(&mut s);
        }
        s.push_str(&format!("complete {}\n", self.is_complete()));
        s
    }
}

/// `n` with `C(n,2) == m` and `n >= 5`, if any.
fn base_order(m: usize) -> Option<usize> {
    (5..).take_while(|&n| choose2(n) <= m).find(|&n| choose2(n) == m)
}

/// A parsed certificate file: the cover plus the completeness it claims.
#[derive(Clone, Debug)]
pub struct CoverFile {
    pub cover: Cover,
    pub target_edges: usize,
    pub claims_complete: bool,
}

/// Parses a certificate file against `target`, the edge set of a graph on
/// `host_vertices` vertices.
pub fn parse_cover(text: &str, target: &EdgeSubset, host_vertices: usize) -> Result<CoverFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .peekable();

    let (line, body) = lines.next().ok_or_else(|| Error::parse(0, "empty cover file"))?;
    let target_edges = match keyword_ids(line, body, "target-edges")?.as_slice() {
        [k] => *k,
        _ => return Err(Error::parse(line, "expected \"target-edges <count>\"")),
    };

    let mut members = Vec::new();
    let claims_complete = loop {
        let (line, body) = lines
            .next()
            .ok_or_else(|| Error::parse(0, "missing \"complete\" line"))?;
        let mut tokens = body.split_whitespace();
        match tokens.next() {
            Some("complete") => match tokens.collect::<Vec<_>>().as_slice() {
                ["true"] => break true,
                ["false"] => break false,
                _ => return Err(Error::parse(line, "expected \"complete true|false\"")),
            },
            Some("member") => {
                let rest = body["member".len()..].trim();
                let tag = parse_tag(line, rest)?;
                let explicit_edges = match lines.peek() {
                    Some((_, b)) if b.starts_with("edges") => Some(parse_edge_block(&mut lines)?),
                    _ => None,
                };
                let edges = match (explicit_edges, &tag) {
                    (Some(e), _) => e,
                    (None, MemberTag::Catalog(d)) => {
                        let n = base_order(host_vertices).ok_or_else(|| {
                            Error::parse(
                                line,
                                "descriptor without edges needs a target on C(n,2) vertices, n >= 5",
                            )
                        })?;
                        catalog_edge_set(n, d).map_err(|e| Error::parse(line, e.to_string()))?
                    }
                    (None, _) => return Err(Error::parse(line, "member needs an \"edges\" block")),
                };
                let certificate = ChainCertificate::parse_lines(&mut lines)?;
                members.push(CoverMember {
                    edges,
                    certificate,
                    tag,
                });
            }
            _ => return Err(Error::parse(line, "expected \"member\" or \"complete\"")),
        }
    };
    if let Some((line, _)) = lines.next() {
        return Err(Error::parse(line, "trailing content after \"complete\""));
    }
    Ok(CoverFile {
        cover: Cover::new(target.clone(), members),
        target_edges,
        claims_complete,
    })
}

fn parse_tag(line: usize, rest: &str) -> Result<MemberTag> {
    let mut tokens = rest.split_whitespace();
    match tokens.next() {
        Some("explicit") if tokens.next().is_none() => Ok(MemberTag::Explicit),
        Some("perm") => tokens
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::parse(line, format!("not a rank: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(MemberTag::Perm),
        _ => rest
            .parse::<CatalogDescriptor>()
            .map(MemberTag::Catalog)
            .map_err(|e| Error::parse(line, e.to_string())),
    }
}

fn parse_edge_block<'a, I>(lines: &mut std::iter::Peekable<I>) -> Result<EdgeSubset>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let (line, body) = lines.next().expect("peeked");
    let k = match keyword_ids(line, body, "edges")?.as_slice() {
        [k] => *k,
        _ => return Err(Error::parse(line, "expected \"edges <count>\"")),
    };
    let mut edges = Vec::with_capacity(k);
    for _ in 0..k {
        let (line, body) = lines
            .next()
            .ok_or_else(|| Error::parse(line, "edge block truncated"))?;
        let ids: Vec<usize> = body
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(line, "expected \"u v\""))?;
        match ids.as_slice() {
            [u, v] => edges.push(Edge::try_new(*u, *v).map_err(|e| Error::parse(line, e.to_string()))?),
            _ => return Err(Error::parse(line, "expected \"u v\"")),
        }
    }
    if edges.len() != EdgeSubset::from_vec(edges.clone()).len() {
        return Err(Error::parse(line, "duplicate edge in block"));
    }
    Ok(EdgeSubset::from_vec(edges))
}

/// Outcome of checking a cover, member by member.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CoverReport {
    /// Members with an edge outside the target.
    pub stray_members: Vec<usize>,
    /// Members whose certificate does not witness their edge set.
    pub bad_certificates: Vec<usize>,
    /// Target edges covered by no member.
    pub uncovered: usize,
}

impl CoverReport {
    pub fn is_valid(&self) -> bool {
        self.stray_members.is_empty() && self.bad_certificates.is_empty() && self.uncovered == 0
    }
}

/// Checks every member against `target` from first principles.
pub fn check_cover(target: &EdgeSubset, cover: &Cover) -> CoverReport {
    let target_set: HashSet<Edge> = target.iter().copied().collect();
    let mut covered: HashSet<Edge> = HashSet::new();
    let mut report = CoverReport::default();
    for (i, m) in cover.members.iter().enumerate() {
        if m.edges.iter().any(|e| !target_set.contains(e)) {
            report.stray_members.push(i);
        }
        if !witnesses(&m.certificate, &m.edges) {
            report.bad_certificates.push(i);
        }
        covered.extend(m.edges.iter().filter(|e| target_set.contains(e)));
    }
    report.uncovered = target_set.len() - covered.len();
    report
}

/// True iff every member is a certified interval-order subgraph of the
/// target and together they cover it.
pub fn verify_cover(target: &EdgeSubset, cover: &Cover) -> bool {
    check_cover(target, cover).is_valid()
}

// Later vertices' out-sets must nest inside earlier ones, each out-set may
// only name later vertices, and the out-sets must spell exactly `edges`.
fn witnesses(cert: &ChainCertificate, edges: &EdgeSubset) -> bool {
    let ordering = cert.ordering();
    let outs = cert.out_neighborhoods();
    if outs.len() != ordering.len() {
        return false;
    }
    let mut position = std::collections::HashMap::new();
    for (i, &v) in ordering.iter().enumerate() {
        if position.insert(v, i).is_some() {
            return false;
        }
    }
    let mut spelled = HashSet::new();
    for (i, out) in outs.iter().enumerate() {
        for &w in out {
            match position.get(&w) {
                Some(&j) if j > i => {
                    if !spelled.insert(Edge::new(ordering[i], w)) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    if spelled.len() != edges.len() || edges.iter().any(|e| !spelled.contains(e)) {
        return false;
    }
    let sets: Vec<HashSet<usize>> = outs.iter().map(|o| o.iter().copied().collect()).collect();
    sets.windows(2).all(|w| w[1].is_subset(&w[0]))
}
