//! HyperCL random hypergraphs from power-law hyperdegree weights and
//! uniform hyperedge sizes.

use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{HyperError, Result};
use crate::hypergraph::{Hypergraph, NodeId};
use crate::rng::{stream_rng, tag};

/// Rejection draws allowed per node slot when filling a hyperedge.
const RETRY_FACTOR: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub m: usize,
    /// Power-law exponent of the hyperdegree weights, `p(d) ∝ d^-theta`.
    pub theta: f64,
    /// Smallest hyperedge size; zero is accepted and clamped to one.
    pub size_min: usize,
    pub size_max: usize,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn new(
        n: usize,
        m: usize,
        theta: f64,
        size_min: usize,
        size_max: usize,
        seed: u64,
    ) -> Result<Self> {
        let config = Self {
            n,
            m,
            theta,
            size_min,
            size_max,
            seed,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(HyperError::NoNodes);
        }
        if self.m == 0 {
            return Err(HyperError::param("m must be at least 1"));
        }
        if self.theta.is_nan() || self.theta <= 1.0 {
            return Err(HyperError::param(format!(
                "theta must exceed 1, got {}",
                self.theta
            )));
        }
        if self.size_max < 1 || self.size_max > self.n {
            return Err(HyperError::param(format!(
                "size_max must lie in 1..={}, got {}",
                self.n, self.size_max
            )));
        }
        if self.effective_size_min() > self.size_max {
            return Err(HyperError::param("size_min exceeds size_max"));
        }
        Ok(())
    }

    pub fn effective_size_min(&self) -> usize {
        self.size_min.max(1)
    }

    /// Edge-list header line recording the configuration.
    pub fn header(&self) -> String {
        format!("# hypercl {self}")
    }

    /// Draws the hyperdegree weights, the size sequence and the hypergraph,
    /// each from its own stream of `seed`.
    pub fn generate(&self) -> Result<Hypergraph> {
        self.validate()?;
        let weights = sample_hyperdegree_sequence(
            self.n,
            self.theta,
            1,
            self.m,
            &mut stream_rng(self.seed, tag::HYPERDEGREES),
        )?;
        let sizes = sample_size_sequence(
            self.m,
            self.n,
            self.size_min,
            self.size_max,
            &mut stream_rng(self.seed, tag::SIZES),
        )?;
        hypercl(&weights, &sizes, &mut stream_rng(self.seed, tag::EDGES))
    }
}

/// `theta=2 n=1000 m=1000 smin=1 smax=10 seed=1`
impl fmt::Display for GeneratorConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "theta={} n={} m={} smin={} smax={} seed={}",
            self.theta, self.n, self.m, self.size_min, self.size_max, self.seed
        )
    }
}

/// Parses `key=value` pairs separated by commas or whitespace. Keys `theta`,
/// `n`, `m` and `smax` are required; `smin` defaults to 1 and `seed` to 0.
/// A leading `# hypercl` marker is skipped, so headers parse back.
impl FromStr for GeneratorConfig {
    type Err = HyperError;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .trim_start_matches('#')
            .trim()
            .trim_start_matches("hypercl");
        let (mut theta, mut n, mut m, mut smax) = (None, None, None, None);
        let (mut smin, mut seed) = (1usize, 0u64);
        for pair in body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
        {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| HyperError::param(format!("expected key=value, got {pair:?}")))?;
            let bad = |_| HyperError::param(format!("invalid value for {key}: {value:?}"));
            match key.trim() {
                "theta" => theta = Some(value.parse::<f64>().map_err(|_| bad(()))?),
                "n" => n = Some(value.parse::<usize>().map_err(|_| bad(()))?),
                "m" => m = Some(value.parse::<usize>().map_err(|_| bad(()))?),
                "smin" => smin = value.parse().map_err(|_| bad(()))?,
                "smax" => smax = Some(value.parse::<usize>().map_err(|_| bad(()))?),
                "seed" => seed = value.parse().map_err(|_| bad(()))?,
                other => {
                    return Err(HyperError::param(format!(
                        "unknown generator key {other:?}"
                    )))
                }
            }
        }
        let missing = |k: &str| HyperError::param(format!("generator spec is missing {k}"));
        Self::new(
            n.ok_or_else(|| missing("n"))?,
            m.ok_or_else(|| missing("m"))?,
            theta.ok_or_else(|| missing("theta"))?,
            smin,
            smax.ok_or_else(|| missing("smax"))?,
            seed,
        )
    }
}

/// `n` i.i.d. draws from `p(d) ∝ d^-theta` on `d_min..=d_max`.
pub fn sample_hyperdegree_sequence<R: Rng + ?Sized>(
    n: usize,
    theta: f64,
    d_min: usize,
    d_max: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    if d_min < 1 || d_min > d_max {
        return Err(HyperError::param(format!(
            "invalid hyperdegree support [{d_min}, {d_max}]"
        )));
    }
    if !theta.is_finite() || theta <= 0.0 {
        return Err(HyperError::param(format!("invalid exponent {theta}")));
    }
    let mass: Vec<f64> = (d_min..=d_max).map(|d| (d as f64).powf(-theta)).collect();
    let dist = WeightedIndex::new(&mass)
        .map_err(|e| HyperError::param(format!("degenerate power law: {e}")))?;
    Ok((0..n).map(|_| d_min + dist.sample(rng)).collect())
}

/// `m` uniform sizes on `max(size_min, 1)..=size_max`; sizes cannot exceed
/// the node count `n`.
pub fn sample_size_sequence<R: Rng + ?Sized>(
    m: usize,
    n: usize,
    size_min: usize,
    size_max: usize,
    rng: &mut R,
) -> Result<Vec<usize>> {
    let lo = size_min.max(1);
    if size_max < 1 {
        return Err(HyperError::param("size_max must be at least 1"));
    }
    if size_max > n {
        return Err(HyperError::param(format!(
            "size_max {size_max} exceeds node count {n}"
        )));
    }
    if lo > size_max {
        return Err(HyperError::param("size_min exceeds size_max"));
    }
    Ok((0..m).map(|_| rng.random_range(lo..=size_max)).collect())
}

/// Fills each hyperedge by drawing nodes with probability proportional to
/// their weight, ignoring repeats, until it reaches its prescribed size.
pub fn hypercl<R: Rng + ?Sized>(
    hyperdegrees: &[usize],
    sizes: &[usize],
    rng: &mut R,
) -> Result<Hypergraph> {
    let n = hyperdegrees.len();
    if n == 0 {
        return Err(HyperError::NoNodes);
    }
    if let Some(&size) = sizes.iter().find(|&&s| s > n || s == 0) {
        return Err(HyperError::param(format!(
            "hyperedge size {size} outside 1..={n}"
        )));
    }
    let dist = WeightedIndex::new(hyperdegrees)
        .map_err(|_| HyperError::param("all hyperdegree weights are zero"))?;
    let positive = hyperdegrees.iter().filter(|&&d| d > 0).count();
    let mut mark = vec![false; n];
    let mut edges: Vec<Vec<NodeId>> = Vec::with_capacity(sizes.len());
    for (index, &size) in sizes.iter().enumerate() {
        if size > positive {
            return Err(HyperError::GenerationStalled {
                edge: index,
                size,
                attempts: 0,
            });
        }
        let budget = RETRY_FACTOR * size;
        let mut members = Vec::with_capacity(size);
        let mut attempts = 0;
        while members.len() < size {
            if attempts == budget {
                return Err(HyperError::GenerationStalled {
                    edge: index,
                    size,
                    attempts,
                });
            }
            attempts += 1;
            let v = dist.sample(rng);
            if !mark[v] {
                mark[v] = true;
                members.push(v);
            }
        }
        for &v in &members {
            mark[v] = false;
        }
        edges.push(members);
    }
    Hypergraph::build(n, edges, false)
}

/// Population standard deviation over the mean.
pub fn coefficient_of_variation(values: &[f64]) -> Result<f64> {
    if values.is_empty() {
        return Err(HyperError::param(
            "coefficient of variation of an empty list",
        ));
    }
    let len = values.len() as f64;
    let mean = values.iter().sum::<f64>() / len;
    if mean == 0.0 {
        return Err(HyperError::param("coefficient of variation with zero mean"));
    }
    let var = values.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / len;
    Ok(var.sqrt() / mean)
}
