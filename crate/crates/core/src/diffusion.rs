//! SI spreading with contact-process dynamics.
//!
//! Rounds are synchronous: a node infected during step `t` first acts at
//! step `t + 1`. At every step each infected node picks one incident
//! hyperedge uniformly at random and infects each susceptible member of it
//! with probability `beta`.
//!
//! Randomness is counter based. The edge choice and the coin flips of node
//! `v` at step `t` come from a small generator keyed by `(stream, t, v)`,
//! with one coin drawn per co-member in edge order whatever its state. Two
//! runs on the same stream with seed sets `S ⊆ S'` are therefore coupled:
//! the infected set of `S` stays inside that of `S'` at every step.

use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{HyperError, Result};
use crate::hypergraph::{Hypergraph, NodeId};
use crate::par::Execution;
use crate::rng::{derive_seed, mix64, stream_rng, tag};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpreadParams {
    /// Per-contact infection probability.
    pub beta: f64,
    /// Number of steps simulated.
    pub horizon: usize,
    /// Master seed; run `i` of an estimate uses child stream `i`.
    pub seed: u64,
}

impl SpreadParams {
    pub fn new(beta: f64, horizon: usize, seed: u64) -> Result<Self> {
        let params = Self {
            beta,
            horizon,
            seed,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.beta) {
            return Err(HyperError::param(format!(
                "beta must lie in [0, 1], got {}",
                self.beta
            )));
        }
        Ok(())
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }
}

/// Random stream driving one realization of the process.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpreadStream(u64);

impl SpreadStream {
    pub fn new(key: u64) -> Self {
        Self(key)
    }

    /// Stream used by run `index` of an estimate seeded with `master`.
    pub fn child(master: u64, index: u64) -> Self {
        Self(derive_seed(master, index))
    }

    #[inline]
    fn actor_rng(self, step: usize, node: NodeId) -> SmallRng {
        let key = mix64(self.0 ^ mix64((step as u64) << 32 ^ node as u64));
        SmallRng::seed_from_u64(key)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadResult {
    /// Infected nodes at termination, ascending.
    pub infected: Vec<NodeId>,
    /// Infected count after each step `0..=horizon`.
    pub per_step: Vec<usize>,
}

impl SpreadResult {
    pub fn outbreak_size(&self) -> usize {
        self.infected.len()
    }
}

/// Runs the process once from `seeds`.
pub fn simulate(
    h: &Hypergraph,
    seeds: &[NodeId],
    params: &SpreadParams,
    stream: SpreadStream,
) -> Result<SpreadResult> {
    params.validate()?;
    let mut state = Contagion::new(h.node_count());
    state.seed(h, seeds)?;
    let mut per_step = Vec::with_capacity(params.horizon + 1);
    per_step.push(state.active.len());
    for step in 1..=params.horizon {
        state.step(h, params.beta, stream, step);
        per_step.push(state.active.len());
    }
    let mut infected = state.active;
    infected.sort_unstable();
    Ok(SpreadResult { infected, per_step })
}

/// Reusable infection state; avoids reallocating across Monte-Carlo runs.
pub(crate) struct Contagion {
    infected: Vec<bool>,
    active: Vec<NodeId>,
}

impl Contagion {
    pub(crate) fn new(node_count: usize) -> Self {
        Self {
            infected: vec![false; node_count],
            active: Vec::new(),
        }
    }

    pub(crate) fn seed(&mut self, h: &Hypergraph, seeds: &[NodeId]) -> Result<()> {
        if seeds.is_empty() {
            return Err(HyperError::EmptySeedSet);
        }
        for &v in seeds {
            h.check_node(v)?;
        }
        for &v in &self.active {
            self.infected[v] = false;
        }
        self.active.clear();
        for &v in seeds {
            if !self.infected[v] {
                self.infected[v] = true;
                self.active.push(v);
            }
        }
        Ok(())
    }

    fn step(&mut self, h: &Hypergraph, beta: f64, stream: SpreadStream, step: usize) {
        let acting = self.active.len();
        if acting == self.infected.len() || beta <= 0.0 {
            return;
        }
        for i in 0..acting {
            let v = self.active[i];
            let incident = h.incident_edges(v);
            if incident.is_empty() {
                continue;
            }
            let mut rng = stream.actor_rng(step, v);
            let e = incident[rng.random_range(0..incident.len())];
            for &u in h.edge(e) {
                if u == v {
                    continue;
                }
                let hit = rng.random::<f64>() < beta;
                if hit && !self.infected[u] {
                    self.infected[u] = true;
                    self.active.push(u);
                }
            }
        }
    }

    /// Runs to the horizon and returns the outbreak size.
    pub(crate) fn run(
        &mut self,
        h: &Hypergraph,
        seeds: &[NodeId],
        params: &SpreadParams,
        stream: SpreadStream,
    ) -> Result<usize> {
        self.seed(h, seeds)?;
        for step in 1..=params.horizon {
            self.step(h, params.beta, stream, step);
        }
        Ok(self.active.len())
    }

    pub(crate) fn is_infected(&self, v: NodeId) -> bool {
        self.infected[v]
    }

    pub(crate) fn active(&self) -> &[NodeId] {
        &self.active
    }
}

/// Monte-Carlo estimate of the expected outbreak size.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpreadEstimate {
    pub mean: f64,
    /// Sample standard deviation of the outbreak size across runs.
    pub std: f64,
    pub runs: usize,
}

impl SpreadEstimate {
    pub fn from_samples(samples: &[f64]) -> Self {
        let runs = samples.len();
        let mean = samples.iter().sum::<f64>() / runs as f64;
        let std = if runs > 1 {
            let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
            (ss / (runs as f64 - 1.0)).sqrt()
        } else {
            0.0
        };
        Self { mean, std, runs }
    }

    pub fn standard_error(&self) -> f64 {
        self.std / (self.runs as f64).sqrt()
    }

    /// Half-width of the normal-approximation 95% interval of the mean.
    pub fn ci95(&self) -> f64 {
        1.96 * self.standard_error()
    }
}

pub fn estimate_spread(
    h: &Hypergraph,
    seeds: &[NodeId],
    params: &SpreadParams,
    runs: usize,
) -> Result<SpreadEstimate> {
    estimate_spread_in(Execution::default(), h, seeds, params, runs)
}

/// [`estimate_spread`] with an explicit execution mode.
pub fn estimate_spread_in(
    exec: Execution,
    h: &Hypergraph,
    seeds: &[NodeId],
    params: &SpreadParams,
    runs: usize,
) -> Result<SpreadEstimate> {
    let samples = spread_samples(exec, h, seeds, params, runs)?;
    let samples: Vec<f64> = samples.into_iter().map(|x| x as f64).collect();
    Ok(SpreadEstimate::from_samples(&samples))
}

/// Outbreak size of every run, in run order.
pub fn spread_samples(
    exec: Execution,
    h: &Hypergraph,
    seeds: &[NodeId],
    params: &SpreadParams,
    runs: usize,
) -> Result<Vec<usize>> {
    params.validate()?;
    if runs == 0 {
        return Err(HyperError::param("runs must be at least 1"));
    }
    // Validate once so the parallel closure is infallible.
    Contagion::new(h.node_count()).seed(h, seeds)?;
    const CHUNK: usize = 64;
    let chunks = runs.div_ceil(CHUNK);
    let sizes = exec.map_range(chunks, |c| {
        let mut state = Contagion::new(h.node_count());
        let lo = c * CHUNK;
        let hi = runs.min(lo + CHUNK);
        (lo..hi)
            .map(|i| {
                state
                    .run(h, seeds, params, SpreadStream::child(params.seed, i as u64))
                    .unwrap_or(0)
            })
            .collect::<Vec<_>>()
    });
    Ok(sizes.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OverlapReport {
    pub neighbor_pairs: Vec<(NodeId, NodeId)>,
    pub neighbor_overlaps: Vec<f64>,
    pub random_pairs: Vec<(NodeId, NodeId)>,
    pub random_overlaps: Vec<f64>,
}

/// Mean influence overlap `|I_T(u) ∩ I_T(v)| / n` of one pair over `runs`
/// pairs of independent single-seed realizations.
pub fn pair_overlap(
    h: &Hypergraph,
    u: NodeId,
    v: NodeId,
    params: &SpreadParams,
    runs: usize,
) -> Result<f64> {
    if runs == 0 {
        return Err(HyperError::param("runs must be at least 1"));
    }
    params.validate()?;
    h.check_node(u)?;
    h.check_node(v)?;
    let n = h.node_count() as f64;
    let mut a = Contagion::new(h.node_count());
    let mut b = Contagion::new(h.node_count());
    let mut total = 0usize;
    for r in 0..runs as u64 {
        a.run(h, &[u], params, SpreadStream::child(params.seed, 2 * r))?;
        b.run(h, &[v], params, SpreadStream::child(params.seed, 2 * r + 1))?;
        total += b.active().iter().filter(|&&x| a.is_infected(x)).count();
    }
    Ok(total as f64 / (runs as f64 * n))
}

/// Samples `pair_count` adjacent pairs and `pair_count` uniformly random
/// distinct pairs and measures the mean influence overlap of each.
pub fn overlap_experiment(
    h: &Hypergraph,
    pair_count: usize,
    params: &SpreadParams,
    runs: usize,
) -> Result<OverlapReport> {
    overlap_experiment_in(Execution::default(), h, pair_count, params, runs)
}

pub fn overlap_experiment_in(
    exec: Execution,
    h: &Hypergraph,
    pair_count: usize,
    params: &SpreadParams,
    runs: usize,
) -> Result<OverlapReport> {
    params.validate()?;
    if pair_count == 0 {
        return Err(HyperError::param("pair count must be at least 1"));
    }
    if runs == 0 {
        return Err(HyperError::param("runs must be at least 1"));
    }
    let adjacent: Vec<(NodeId, NodeId)> = h
        .nodes()
        .flat_map(|u| {
            h.neighbor_slice(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
        .collect();
    if adjacent.is_empty() {
        return Err(HyperError::NoAdjacentPair);
    }
    let n = h.node_count();
    let mut rng = stream_rng(params.seed, tag::OVERLAP);
    let neighbor_pairs: Vec<_> = (0..pair_count)
        .map(|_| adjacent[rng.random_range(0..adjacent.len())])
        .collect();
    let random_pairs: Vec<_> = (0..pair_count)
        .map(|_| {
            let u = rng.random_range(0..n);
            let mut v = rng.random_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            (u, v)
        })
        .collect();

    let measure = |pairs: &[(NodeId, NodeId)], class: u64| {
        exec.map_range(pairs.len(), |i| {
            let (u, v) = pairs[i];
            let seed = derive_seed(derive_seed(params.seed, class), i as u64);
            pair_overlap(h, u, v, &params.with_seed(seed), runs).unwrap_or(0.0)
        })
    };
    let neighbor_overlaps = measure(&neighbor_pairs, 0);
    let random_overlaps = measure(&random_pairs, 1);
    Ok(OverlapReport {
        neighbor_pairs,
        neighbor_overlaps,
        random_pairs,
        random_overlaps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::f1;

    fn params(beta: f64, horizon: usize) -> SpreadParams {
        SpreadParams::new(beta, horizon, 11).unwrap()
    }

    /// Nine nodes; node 7 lies in e3, e4 and e5.
    fn contact_fixture() -> Hypergraph {
        let e1 = vec![0, 2];
        let e2 = vec![1, 3, 4];
        let e3 = vec![2, 3, 7];
        let e4 = vec![5, 7];
        let e5 = vec![6, 7, 8];
        Hypergraph::build(9, [e1, e2, e3, e4, e5], false).unwrap()
    }

    #[test]
    fn one_step_infects_exactly_the_chosen_edge() {
        let h = contact_fixture();
        let p = params(1.0, 1);
        let mut picked_e3 = false;
        for key in 0..64 {
            let r = simulate(&h, &[7], &p, SpreadStream::new(key)).unwrap();
            let gained: Vec<_> = r.infected.iter().copied().filter(|&v| v != 7).collect();
            assert!(
                gained == vec![2, 3] || gained == vec![5] || gained == vec![6, 8],
                "{gained:?}"
            );
            picked_e3 |= gained == vec![2, 3];
        }
        assert!(picked_e3);
    }

    #[test]
    fn newly_infected_wait_one_step() {
        // Chain 0-1-2-3 of pair edges: with beta = 1 the front advances at most one hop per step.
        let h = Hypergraph::build(4, [vec![0, 1], vec![1, 2], vec![2, 3]], false).unwrap();
        for key in 0..32 {
            let r = simulate(&h, &[0], &params(1.0, 2), SpreadStream::new(key)).unwrap();
            assert!(!r.infected.contains(&3));
            assert_eq!(r.per_step[1], 2);
        }
    }

    #[test]
    fn zero_beta_keeps_seeds() {
        let h = f1();
        let r = simulate(&h, &[0, 3], &params(0.0, 50), SpreadStream::new(1)).unwrap();
        assert_eq!(r.infected, vec![0, 3]);
        assert_eq!(r.per_step, vec![2; 51]);
    }

    #[test]
    fn full_edge_with_certain_infection() {
        let h = Hypergraph::build(5, [vec![0, 1, 2, 3, 4]], false).unwrap();
        let r = simulate(&h, &[0], &params(1.0, 1), SpreadStream::new(3)).unwrap();
        assert_eq!(r.infected, vec![0, 1, 2, 3, 4]);
        assert_eq!(r.per_step, vec![1, 5]);
        let e = estimate_spread(&h, &[0], &params(1.0, 4), 50).unwrap();
        assert_eq!((e.mean, e.std), (5.0, 0.0));
    }

    #[test]
    fn saturated_runs_keep_flat_tail() {
        let h = Hypergraph::build(3, [vec![0, 1, 2]], false).unwrap();
        let r = simulate(&h, &[1], &params(1.0, 6), SpreadStream::new(0)).unwrap();
        assert_eq!(r.per_step, vec![1, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn isolated_infected_nodes_do_nothing() {
        let h = Hypergraph::build(3, [vec![0, 1]], false).unwrap();
        let r = simulate(&h, &[2], &params(1.0, 5), SpreadStream::new(0)).unwrap();
        assert_eq!(r.infected, vec![2]);
    }

    #[test]
    fn seed_validation() {
        let h = f1();
        assert!(matches!(
            simulate(&h, &[], &params(0.5, 2), SpreadStream::new(0)),
            Err(HyperError::EmptySeedSet)
        ));
        assert!(matches!(
            simulate(&h, &[9], &params(0.5, 2), SpreadStream::new(0)),
            Err(HyperError::NodeOutOfRange { .. })
        ));
        assert!(SpreadParams::new(1.5, 2, 0).is_err());
        assert!(estimate_spread(&h, &[0], &params(0.5, 2), 0).is_err());
    }

    #[test]
    fn zero_beta_estimate() {
        let e = estimate_spread(&f1(), &[1, 4], &params(0.0, 10), 20).unwrap();
        assert_eq!((e.mean, e.std, e.runs), (2.0, 0.0, 20));
    }

    #[test]
    fn estimates_match_across_execution_modes() {
        let h = f1();
        let p = params(0.3, 5);
        let a = estimate_spread_in(Execution::Sequential, &h, &[2], &p, 500).unwrap();
        let b = estimate_spread_in(Execution::Parallel, &h, &[2], &p, 500).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn overlap_edge_cases() {
        let h = f1();
        let r = overlap_experiment(&h, 10, &params(0.0, 5), 4).unwrap();
        assert!(r
            .neighbor_overlaps
            .iter()
            .chain(&r.random_overlaps)
            .all(|&o| o == 0.0));
        assert_eq!(r.neighbor_overlaps.len(), 10);
        assert_eq!(r.random_overlaps.len(), 10);
        for &(u, v) in &r.neighbor_pairs {
            assert!(h.adjacency_count(u, v).unwrap() > 0);
        }
        assert!(r.random_pairs.iter().all(|&(u, v)| u != v));

        let full = Hypergraph::build(5, [vec![0, 1, 2, 3, 4]], false).unwrap();
        let r = overlap_experiment(&full, 5, &params(1.0, 1), 3).unwrap();
        assert!(r
            .neighbor_overlaps
            .iter()
            .chain(&r.random_overlaps)
            .all(|&o| o == 1.0));

        let edgeless = Hypergraph::build(3, [vec![0], vec![1]], false).unwrap();
        assert!(matches!(
            overlap_experiment(&edgeless, 5, &params(0.5, 2), 3),
            Err(HyperError::NoAdjacentPair)
        ));
    }
}
