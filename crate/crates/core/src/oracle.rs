//! Brute-force boxicity for small graphs, used to cross-check everything else.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;

use crate::budget::Budget;
use crate::cover::{Cover, CoverMember, MemberTag};
use crate::edges::{EdgeIndex, EdgeSubset};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::interval_order::enumerate_maximal_io;

/// `floor(n / 2)`, an upper bound on the boxicity of any n-vertex graph.
pub fn roberts_bound(n: usize) -> usize {
    n / 2
}

/// Exact boxicity of `g` with an optimal cover of its complement's edges.
/// Searches k up to `min(cap, floor(n/2))`; exceeding `cap` is an error.
pub fn brute_boxicity(g: &Graph, cap: Option<usize>, budget: &Budget) -> Result<(usize, Cover)> {
    let co = g.complement();
    let target = EdgeSubset::all_of(&co);
    if g.is_complete() {
        return Ok((0, Cover::new(target, Vec::new())));
    }
    let family = enumerate_maximal_io(&co, budget)?;
    let index = EdgeIndex::new(&co);
    let sets: Vec<FixedBitSet> = family
        .iter()
        .map(|m| index.to_bits(&m.edges).expect("subgraph of the complement"))
        .collect();
    let roberts = roberts_bound(g.vertex_count());
    let limit = cap.map_or(roberts, |c| c.min(roberts));
    let search = Dfs::new(&sets, index.len(), budget);
    for k in 1..=limit {
        if let Some(chosen) = search.run(k)? {
            let members = chosen
                .into_iter()
                .map(|i| CoverMember {
                    edges: family[i].edges.clone(),
                    certificate: family[i].certificate.clone(),
                    tag: MemberTag::Explicit,
                })
                .collect();
            return Ok((k, Cover::new(target, members)));
        }
    }
    Err(Error::CapExceeded { cap: limit })
}

struct Dfs<'a> {
    sets: &'a [FixedBitSet],
    holders: Vec<Vec<usize>>,
    largest: usize,
    universe: usize,
    budget: &'a Budget,
}

impl<'a> Dfs<'a> {
    fn new(sets: &'a [FixedBitSet], universe: usize, budget: &'a Budget) -> Self {
        let mut holders = vec![Vec::new(); universe];
        for (i, s) in sets.iter().enumerate() {
            for e in s.ones() {
                holders[e].push(i);
            }
        }
        let largest = sets.iter().map(|s| s.count_ones(..)).max().unwrap_or(0);
        Dfs { sets, holders, largest, universe, budget }
    }

    fn run(&self, k: usize) -> Result<Option<Vec<usize>>> {
        let mut uncovered = FixedBitSet::with_capacity(self.universe);
        uncovered.insert_range(..);
        let mut chosen = Vec::new();
        let mut failed = HashSet::new();
        Ok(self.go(&uncovered, k, &mut chosen, &mut failed)?.then_some(chosen))
    }

    fn go(
        &self,
        uncovered: &FixedBitSet,
        left: usize,
        chosen: &mut Vec<usize>,
        failed: &mut HashSet<(u64, usize)>,
    ) -> Result<bool> {
        self.budget.tick()?;
        let remaining = uncovered.count_ones(..);
        if remaining == 0 {
            return Ok(true);
        }
        if remaining > left * self.largest {
            return Ok(false);
        }
        // memo keys fit one word only for small universes
        let key = (self.universe <= 64)
            .then(|| (uncovered.ones().fold(0u64, |m, e| m | 1 << e), left));
        if key.is_some_and(|k| failed.contains(&k)) {
            return Ok(false);
        }
        let pivot = uncovered
            .ones()
            .min_by_key(|&e| self.holders[e].len())
            .expect("nonempty");
        for &i in &self.holders[pivot] {
            let mut rest = uncovered.clone();
            rest.difference_with(&self.sets[i]);
            chosen.push(i);
            if self.go(&rest, left - 1, chosen, failed)? {
                return Ok(true);
            }
            chosen.pop();
        }
        if let Some(k) = key {
            failed.insert(k);
        }
        Ok(false)
    }
}
