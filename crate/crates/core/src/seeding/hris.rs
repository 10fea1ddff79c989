//! Hyper reverse influence sampling.
//!
//! An HRR sample keeps every hyperedge independently with probability
//! `beta` and collects the connected component of a uniformly random root
//! in what survives. Seeds are chosen by greedy maximum coverage over the
//! samples.

use rand::Rng;

use super::{check_budget, SeedSet};
use crate::error::{HyperError, Result};
use crate::hypergraph::{EdgeId, Hypergraph, NodeId};
use crate::par::Execution;
use crate::rng::{derive_seed, stream_rng, tag};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HrrSample {
    pub root: NodeId,
    /// Component of the root in the pruned hypergraph, ascending.
    pub members: Vec<NodeId>,
}

/// How hyperedges are pruned across the samples of one selection.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Pruning {
    /// Every sample prunes the hypergraph afresh.
    #[default]
    PerSample,
    /// One pruned hypergraph is shared by all samples.
    Shared,
}

/// Epoch-stamped scratch space so samples do not reallocate per call.
struct Sampler {
    epoch: u32,
    edge_epoch: Vec<u32>,
    edge_kept: Vec<bool>,
    node_epoch: Vec<u32>,
    stack: Vec<NodeId>,
}

impl Sampler {
    fn new(h: &Hypergraph) -> Self {
        Self {
            epoch: 0,
            edge_epoch: vec![0; h.edge_count()],
            edge_kept: vec![false; h.edge_count()],
            node_epoch: vec![0; h.node_count()],
            stack: Vec::new(),
        }
    }

    /// Component of `root` where each edge survives via `keep`, which is
    /// consulted at most once per edge per sample.
    fn component(
        &mut self,
        h: &Hypergraph,
        root: NodeId,
        mut keep: impl FnMut(EdgeId) -> bool,
    ) -> Vec<NodeId> {
        self.epoch += 1;
        let epoch = self.epoch;
        let mut members = vec![root];
        self.node_epoch[root] = epoch;
        self.stack.clear();
        self.stack.push(root);
        while let Some(v) = self.stack.pop() {
            for &e in h.incident_edges(v) {
                if self.edge_epoch[e] == epoch {
                    continue;
                }
                self.edge_epoch[e] = epoch;
                self.edge_kept[e] = keep(e);
                if !self.edge_kept[e] {
                    continue;
                }
                for &u in h.edge(e) {
                    if self.node_epoch[u] != epoch {
                        self.node_epoch[u] = epoch;
                        members.push(u);
                        self.stack.push(u);
                    }
                }
            }
        }
        members.sort_unstable();
        members
    }
}

fn check_beta(beta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&beta) {
        Ok(())
    } else {
        Err(HyperError::param(format!(
            "beta must lie in [0, 1], got {beta}"
        )))
    }
}

/// Draws one random HRR set.
pub fn sample_hrr<R: Rng + ?Sized>(h: &Hypergraph, beta: f64, rng: &mut R) -> Result<HrrSample> {
    check_beta(beta)?;
    let mut sampler = Sampler::new(h);
    let root = rng.random_range(0..h.node_count());
    let members = sampler.component(h, root, |_| rng.random::<f64>() < beta);
    Ok(HrrSample { root, members })
}

fn draw_samples(
    exec: Execution,
    h: &Hypergraph,
    beta: f64,
    eta: usize,
    pruning: Pruning,
    seed: u64,
) -> Vec<HrrSample> {
    let master = derive_seed(seed, tag::HRIS);
    match pruning {
        Pruning::PerSample => {
            const CHUNK: usize = 32;
            exec.map_range(eta.div_ceil(CHUNK), |c| {
                let mut sampler = Sampler::new(h);
                (c * CHUNK..eta.min((c + 1) * CHUNK))
                    .map(|i| {
                        let mut rng = stream_rng(master, i as u64);
                        let root = rng.random_range(0..h.node_count());
                        let members = sampler.component(h, root, |_| rng.random::<f64>() < beta);
                        HrrSample { root, members }
                    })
                    .collect::<Vec<_>>()
            })
            .into_iter()
            .flatten()
            .collect()
        }
        Pruning::Shared => {
            let mut rng = stream_rng(master, u64::MAX);
            let kept: Vec<bool> = (0..h.edge_count())
                .map(|_| rng.random::<f64>() < beta)
                .collect();
            let mut sampler = Sampler::new(h);
            (0..eta)
                .map(|_| {
                    let root = rng.random_range(0..h.node_count());
                    HrrSample {
                        root,
                        members: sampler.component(h, root, |e| kept[e]),
                    }
                })
                .collect()
        }
    }
}

pub fn seed_hris(
    h: &Hypergraph,
    k: usize,
    beta: f64,
    eta: usize,
    pruning: Pruning,
    seed: u64,
) -> Result<SeedSet> {
    seed_hris_in(Execution::default(), h, k, beta, eta, pruning, seed)
}

pub fn seed_hris_in(
    exec: Execution,
    h: &Hypergraph,
    k: usize,
    beta: f64,
    eta: usize,
    pruning: Pruning,
    seed: u64,
) -> Result<SeedSet> {
    check_budget(h, k)?;
    check_beta(beta)?;
    if eta == 0 {
        return Err(HyperError::param("eta must be at least 1"));
    }
    let samples = draw_samples(exec, h, beta, eta, pruning, seed);
    let nodes = max_coverage(h, k, &samples);
    let name = match pruning {
        Pruning::PerSample => "hris",
        Pruning::Shared => "hris-shared",
    };
    Ok(SeedSet::new(name, nodes)
        .with_param("eta", eta)
        .with_param("beta", beta))
}

/// Repeatedly takes the node covering the most remaining samples and drops
/// the samples it covers. Once every sample is covered the rest of the
/// budget is filled in degree order.
fn max_coverage(h: &Hypergraph, k: usize, samples: &[HrrSample]) -> Vec<NodeId> {
    let n = h.node_count();
    let mut counts = vec![0usize; n];
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, s) in samples.iter().enumerate() {
        for &v in &s.members {
            counts[v] += 1;
            containing[v].push(i);
        }
    }
    let mut removed = vec![false; samples.len()];
    let mut chosen = vec![false; n];
    let mut seeds = Vec::with_capacity(k);
    while seeds.len() < k {
        let best = (0..n)
            .filter(|&v| !chosen[v])
            .max_by(|&a, &b| counts[a].cmp(&counts[b]).then(b.cmp(&a)));
        let Some(v) = best.filter(|&v| counts[v] > 0) else {
            break;
        };
        seeds.push(v);
        chosen[v] = true;
        for &i in &containing[v] {
            if !removed[i] {
                removed[i] = true;
                for &u in &samples[i].members {
                    counts[u] -= 1;
                }
            }
        }
    }
    if seeds.len() < k {
        let degrees = h.degrees();
        let mut rest: Vec<NodeId> = (0..n).filter(|&v| !chosen[v]).collect();
        rest.sort_by(|&a, &b| degrees[b].cmp(&degrees[a]).then(a.cmp(&b)));
        seeds.extend(rest.into_iter().take(k - seeds.len()));
    }
    seeds
}
