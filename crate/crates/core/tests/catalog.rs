mod common;

use std::collections::BTreeSet;

use boxicity::catalog::{
    catalog_edge_set, descriptors_with_lead, enumerate_catalog, expected_size, CatalogDescriptor,
};
use boxicity::edges::EdgeSubset;
use boxicity::graph::Graph;
use boxicity::interval_order::{enumerate_maximal_io, is_interval_order, verify_chain};
use boxicity::Budget;
use common::permutations;

// Per-type catalog counts for n = 5 and n = 6, frozen after the family
// was checked against the generic enumeration.
const FROZEN_COUNTS_5: [(&str, usize); 4] = [("A", 60), ("B", 60), ("CF", 120), ("CF'", 120)];
const FROZEN_COUNTS_6: [(&str, usize); 4] = [("A", 360), ("B", 180), ("CF", 360), ("CF'", 360)];
// (member size, multiplicity) of the generic enumeration on L(K_n)
const FROZEN_SIZES_5: [(usize, usize); 3] = [(14, 60), (15, 240), (16, 60)];
const FROZEN_SIZES_6: [(usize, usize); 1] = [(20, 1260)];

fn counts(n: usize) -> Vec<(&'static str, usize)> {
    let family = enumerate_catalog(n).unwrap();
    ["A", "B", "CF", "CF'"]
        .into_iter()
        .map(|t| (t, family.iter().filter(|m| m.descriptor.tag() == t).count()))
        .collect()
}

fn all_descriptors(n: usize) -> Vec<CatalogDescriptor> {
    (0..n).flat_map(|a| descriptors_with_lead(n, a)).collect()
}

#[test]
fn shape_sizes_match_closed_forms() {
    for n in 5..=12 {
        for d in all_descriptors(n).into_iter().step_by(7) {
            assert_eq!(catalog_edge_set(n, &d).unwrap().len(), expected_size(n, &d), "{d} n={n}");
        }
    }
    let sizes = |n: usize| {
        ["A 0 1 2 3 4", "B 0 1 2 3", "CF 0 1 2 3", "CF' 0 1 2 3"]
            .map(|s| catalog_edge_set(n, &s.parse().unwrap()).unwrap().len())
    };
    assert_eq!(sizes(5), [14, 16, 15, 15]);
    assert_eq!(sizes(6), [20, 20, 20, 20]);
}

#[test]
fn catalog_equals_generic_enumeration() {
    for n in [5, 6] {
        let host = Graph::complete(n).line_graph();
        let generic: BTreeSet<EdgeSubset> = enumerate_maximal_io(&host, &Budget::default())
            .unwrap()
            .into_iter()
            .map(|m| m.edges)
            .collect();
        let catalog: BTreeSet<EdgeSubset> =
            enumerate_catalog(n).unwrap().into_iter().map(|m| m.edges).collect();
        let mut sizes = std::collections::BTreeMap::new();
        for m in &generic {
            *sizes.entry(m.len()).or_insert(0usize) += 1;
        }
        let frozen: Vec<(usize, usize)> =
            if n == 5 { FROZEN_SIZES_5.to_vec() } else { FROZEN_SIZES_6.to_vec() };
        assert_eq!(sizes.into_iter().collect::<Vec<_>>(), frozen, "n={n}");
        assert_eq!(catalog.len(), generic.len(), "n={n}");
        assert_eq!(catalog, generic, "n={n}");
    }
}

#[test]
fn frozen_per_type_counts() {
    assert_eq!(counts(5), FROZEN_COUNTS_5.to_vec());
    assert_eq!(counts(6), FROZEN_COUNTS_6.to_vec());
}

#[test]
fn members_carry_valid_certificates() {
    for n in 5..=8 {
        let host = Graph::complete(n).line_graph();
        let family = enumerate_catalog(n).unwrap();
        let distinct: BTreeSet<&EdgeSubset> = family.iter().map(|m| &m.edges).collect();
        assert_eq!(distinct.len(), family.len());
        assert!(family.len() <= n.pow(5));
        for m in &family {
            assert!(m.descriptor.is_canonical());
            assert!(m.certificate.certifies(&m.edges));
            assert!(verify_chain(&host, &m.edges, m.certificate.ordering()).unwrap());
        }
    }
}

#[test]
fn members_are_maximal_for_six() {
    let n = 6;
    let host = Graph::complete(n).line_graph();
    let m_vertices = host.vertex_count();
    for m in enumerate_catalog(n).unwrap() {
        for e in host.edges() {
            if m.edges.contains(&e) {
                continue;
            }
            let bigger = m.edges.union(&EdgeSubset::from_vec(vec![e]));
            let h = Graph::from_edges(m_vertices, bigger.iter().map(|e| (e.u, e.v))).unwrap();
            assert!(is_interval_order(&h).is_none(), "{} + {e}", m.descriptor);
        }
    }
}

#[test]
fn family_size_for_nine_within_bound() {
    let family = enumerate_catalog(9).unwrap();
    assert!(family.len() <= 59049, "{}", family.len());
}

// The only vertex relabelings of a descriptor that keep its edge set are
// the (b,c) <-> (d,e) swap for type A and b <-> d for type B.
#[test]
fn argument_symmetries() {
    for n in [5, 6] {
        for d in all_descriptors(n) {
            let base = catalog_edge_set(n, &d).unwrap();
            let vs = d.vertices().to_vec();
            let mut preserving = Vec::new();
            for p in permutations(vs.len()) {
                let w: Vec<usize> = p.iter().map(|&i| vs[i]).collect();
                let e = match d {
                    CatalogDescriptor::TypeA(_) => CatalogDescriptor::TypeA([w[0], w[1], w[2], w[3], w[4]]),
                    CatalogDescriptor::TypeB(_) => CatalogDescriptor::TypeB([w[0], w[1], w[2], w[3]]),
                    CatalogDescriptor::TypeCF(_) => CatalogDescriptor::TypeCF([w[0], w[1], w[2], w[3]]),
                    CatalogDescriptor::TypeCFPrime(_) => {
                        CatalogDescriptor::TypeCFPrime([w[0], w[1], w[2], w[3]])
                    }
                };
                if catalog_edge_set(n, &e).unwrap() == base {
                    preserving.push(p);
                }
            }
            let expected: Vec<Vec<usize>> = match d {
                CatalogDescriptor::TypeA(_) => vec![vec![0, 1, 2, 3, 4], vec![0, 3, 4, 1, 2]],
                CatalogDescriptor::TypeB(_) => vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]],
                _ => vec![vec![0, 1, 2, 3]],
            };
            assert_eq!(preserving, expected, "{d} n={n}");
        }
    }
}
