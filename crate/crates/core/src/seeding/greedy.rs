use super::{check_budget, SeedSet};
use crate::diffusion::{estimate_spread_in, SpreadParams};
use crate::error::{HyperError, Result};
use crate::hypergraph::{Hypergraph, NodeId};
use crate::par::Execution;
use crate::rng::{derive_seed, tag};

/// Greedy hill climbing on the Monte-Carlo spread estimate.
///
/// Within one round every candidate is evaluated on the same child streams
/// (common random numbers), so candidate comparisons are not blurred by
/// independent sampling noise.
pub fn seed_greedy(
    h: &Hypergraph,
    k: usize,
    params: &SpreadParams,
    runs_per_eval: usize,
) -> Result<SeedSet> {
    seed_greedy_in(Execution::default(), h, k, params, runs_per_eval)
}

pub fn seed_greedy_in(
    exec: Execution,
    h: &Hypergraph,
    k: usize,
    params: &SpreadParams,
    runs_per_eval: usize,
) -> Result<SeedSet> {
    check_budget(h, k)?;
    params.validate()?;
    if runs_per_eval == 0 {
        return Err(HyperError::param(
            "greedy runs per evaluation must be at least 1",
        ));
    }
    let master = derive_seed(params.seed, tag::GREEDY);
    let mut seeds: Vec<NodeId> = Vec::with_capacity(k);
    let mut in_seed = vec![false; h.node_count()];
    for round in 0..k {
        let round_params = params.with_seed(derive_seed(master, round as u64));
        let candidates: Vec<NodeId> = h.nodes().filter(|&v| !in_seed[v]).collect();
        let spreads = exec.map_slice(&candidates, |&v| {
            let mut trial = seeds.clone();
            trial.push(v);
            estimate_spread_in(
                Execution::Sequential,
                h,
                &trial,
                &round_params,
                runs_per_eval,
            )
            .map(|e| e.mean)
        });
        let mut best: Option<(NodeId, f64)> = None;
        for (&v, spread) in candidates.iter().zip(spreads) {
            let spread = spread?;
            if best.is_none_or(|(_, s)| spread > s) {
                best = Some((v, spread));
            }
        }
        let (v, _) = best.expect("budget leaves at least one candidate");
        seeds.push(v);
        in_seed[v] = true;
    }
    Ok(SeedSet::new("greedy", seeds)
        .with_param("beta", params.beta)
        .with_param("horizon", params.horizon)
        .with_param("runs_per_eval", runs_per_eval))
}
