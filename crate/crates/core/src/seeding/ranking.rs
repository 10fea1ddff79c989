//! Static rankings: degree, hyperdegree and hyper collective influence.

use super::{check_budget, top_k_by, SeedSet};
use crate::error::{HyperError, Result};
use crate::hypergraph::{Bfs, Hypergraph};

pub fn seed_degree(h: &Hypergraph, k: usize) -> Result<SeedSet> {
    check_budget(h, k)?;
    let degrees = h.degrees();
    Ok(SeedSet::new(
        "degree",
        top_k_by(h.node_count(), k, |v| degrees[v]),
    ))
}

pub fn seed_hyperdegree(h: &Hypergraph, k: usize) -> Result<SeedSet> {
    check_budget(h, k)?;
    let hyperdegrees = h.hyperdegrees();
    Ok(SeedSet::new(
        "hyperdegree",
        top_k_by(h.node_count(), k, |v| hyperdegrees[v]),
    ))
}

/// `HCI_l(i) = (d(i) - 1) * Σ_{j on the radius-l frontier of i} (d(j) - 1)`
/// with `d` the hyperdegree.
pub fn hci_scores(h: &Hypergraph, radius: usize) -> Result<Vec<i64>> {
    if radius == 0 {
        return Err(HyperError::param("HCI radius must be at least 1"));
    }
    let hd: Vec<i64> = h.hyperdegrees().into_iter().map(|d| d as i64 - 1).collect();
    let mut bfs = Bfs::new(h.node_count());
    Ok(h.nodes()
        .map(|v| {
            if hd[v] == 0 {
                return 0;
            }
            bfs.run(h, v, radius);
            let frontier: i64 = bfs
                .order
                .iter()
                .filter(|&&(_, d)| d == radius)
                .map(|&(u, _)| hd[u])
                .sum();
            hd[v] * frontier
        })
        .collect())
}

pub fn seed_hci(h: &Hypergraph, k: usize, radius: usize) -> Result<SeedSet> {
    check_budget(h, k)?;
    let scores = hci_scores(h, radius)?;
    let nodes = top_k_by(h.node_count(), k, |v| scores[v]);
    Ok(SeedSet::new(&format!("hci{radius}"), nodes).with_param("l", radius))
}
