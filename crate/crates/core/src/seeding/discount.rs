//! Adaptive degree-discount heuristics (HDD and HSD).
//!
//! Both start from the degree vector and repeatedly take the non-seed node
//! with the largest adaptive degree. After seed `s` is added, every neighbor
//! `q` of `s` loses `|N_S(q)|` (HDD), the number of its neighbors currently
//! in the seed set counted in full at every update, or exactly 1 (HSD).

use std::cmp::Reverse;
use std::collections::BTreeSet;

use super::{check_budget, SeedSet};
use crate::error::Result;
use crate::hypergraph::{Hypergraph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Penalty {
    SeedNeighbors,
    Unit,
}

/// Per-run bookkeeping exposed for inspection in tests and diagnostics.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiscountTrace {
    /// Adaptive degree vector after each selection.
    pub adaptive: Vec<Vec<i64>>,
    /// Largest `|N_S(q)|` applied at each selection.
    pub max_penalty: Vec<usize>,
}

pub fn seed_hdd(h: &Hypergraph, k: usize) -> Result<SeedSet> {
    let (nodes, _) = discount(h, k, Penalty::SeedNeighbors, false)?;
    Ok(SeedSet::new("hdd", nodes))
}

pub fn seed_hsd(h: &Hypergraph, k: usize) -> Result<SeedSet> {
    let (nodes, _) = discount(h, k, Penalty::Unit, false)?;
    Ok(SeedSet::new("hsd", nodes))
}

impl DiscountTrace {
    pub fn hdd(h: &Hypergraph, k: usize) -> Result<(Vec<NodeId>, Self)> {
        discount(h, k, Penalty::SeedNeighbors, true)
    }

    pub fn hsd(h: &Hypergraph, k: usize) -> Result<(Vec<NodeId>, Self)> {
        discount(h, k, Penalty::Unit, true)
    }
}

fn discount(
    h: &Hypergraph,
    k: usize,
    penalty: Penalty,
    trace: bool,
) -> Result<(Vec<NodeId>, DiscountTrace)> {
    check_budget(h, k)?;
    let mut adaptive: Vec<i64> = h.degrees().into_iter().map(|d| d as i64).collect();
    let mut seed_neighbors = vec![0usize; h.node_count()];
    let mut in_seed = vec![false; h.node_count()];
    // Candidates ordered by largest adaptive degree, then smallest id.
    let mut queue: BTreeSet<(Reverse<i64>, NodeId)> =
        h.nodes().map(|v| (Reverse(adaptive[v]), v)).collect();
    let mut seeds = Vec::with_capacity(k);
    let mut record = DiscountTrace::default();

    while seeds.len() < k {
        let (_, chosen) = queue
            .pop_first()
            .expect("budget checked against node count");
        seeds.push(chosen);
        in_seed[chosen] = true;
        let neighbors = h.neighbor_slice(chosen);
        for &q in neighbors {
            seed_neighbors[q] += 1;
        }
        let mut max_penalty = 0;
        for &q in neighbors {
            let cut = match penalty {
                Penalty::SeedNeighbors => seed_neighbors[q],
                Penalty::Unit => 1,
            };
            max_penalty = max_penalty.max(seed_neighbors[q]);
            if !in_seed[q] {
                queue.remove(&(Reverse(adaptive[q]), q));
                queue.insert((Reverse(adaptive[q] - cut as i64), q));
            }
            adaptive[q] -= cut as i64;
        }
        if trace {
            record.adaptive.push(adaptive.clone());
            record.max_penalty.push(max_penalty);
        }
    }
    Ok((seeds, record))
}
