//! Seed selection. Every selector returns an ordered [`SeedSet`] of exactly
//! `k` distinct nodes, in selection order, so any prefix of a budget-`k`
//! answer is that selector's answer for the smaller budget.
//!
//! Ties are always broken toward the smallest node id.

mod discount;
mod greedy;
mod hris;
mod ranking;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diffusion::SpreadParams;
use crate::error::{HyperError, Result};
use crate::hypergraph::{Hypergraph, NodeId};

pub use discount::{seed_hdd, seed_hsd, DiscountTrace};
pub use greedy::{seed_greedy, seed_greedy_in};
pub use hris::{sample_hrr, seed_hris, seed_hris_in, HrrSample, Pruning};
pub use ranking::{hci_scores, seed_degree, seed_hci, seed_hyperdegree};

/// Default number of HRR samples.
pub const DEFAULT_ETA: usize = 200;
/// Default Monte-Carlo runs per candidate evaluation in greedy selection.
pub const DEFAULT_GREEDY_RUNS: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSet {
    pub nodes: Vec<NodeId>,
    pub algorithm: String,
    pub params: BTreeMap<String, String>,
}

impl SeedSet {
    fn new(algorithm: &str, nodes: Vec<NodeId>) -> Self {
        Self {
            nodes,
            algorithm: algorithm.to_owned(),
            params: BTreeMap::new(),
        }
    }

    fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn prefix(&self, k: usize) -> &[NodeId] {
        &self.nodes[..k.min(self.nodes.len())]
    }
}

pub(crate) fn check_budget(h: &Hypergraph, k: usize) -> Result<()> {
    if k == 0 || k > h.node_count() {
        Err(HyperError::InvalidBudget {
            k,
            node_count: h.node_count(),
        })
    } else {
        Ok(())
    }
}

/// A configured seed-selection algorithm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Algorithm {
    Degree,
    HyperDegree,
    Hdd,
    Hsd,
    Hris { eta: usize, pruning: Pruning },
    Hci { radius: usize },
    Greedy { runs_per_eval: usize },
}

/// Parameters shared by [`Algorithm::select`] calls.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SelectionContext {
    pub beta: f64,
    pub horizon: usize,
    pub seed: u64,
}

impl Algorithm {
    pub const ALL_NAMES: [&'static str; 8] = [
        "hdd",
        "hsd",
        "hris",
        "hci1",
        "hci2",
        "hyperdegree",
        "degree",
        "greedy",
    ];

    /// Short stable name used in reports.
    pub fn name(&self) -> String {
        match self {
            Algorithm::Degree => "degree".into(),
            Algorithm::HyperDegree => "hyperdegree".into(),
            Algorithm::Hdd => "hdd".into(),
            Algorithm::Hsd => "hsd".into(),
            Algorithm::Hris {
                pruning: Pruning::PerSample,
                ..
            } => "hris".into(),
            Algorithm::Hris {
                pruning: Pruning::Shared,
                ..
            } => "hris-shared".into(),
            Algorithm::Hci { radius } => format!("hci{radius}"),
            Algorithm::Greedy { .. } => "greedy".into(),
        }
    }

    /// Whether selection consumes randomness.
    pub fn is_randomized(&self) -> bool {
        matches!(self, Algorithm::Hris { .. } | Algorithm::Greedy { .. })
    }

    pub fn select(&self, h: &Hypergraph, k: usize, ctx: &SelectionContext) -> Result<SeedSet> {
        match *self {
            Algorithm::Degree => seed_degree(h, k),
            Algorithm::HyperDegree => seed_hyperdegree(h, k),
            Algorithm::Hdd => seed_hdd(h, k),
            Algorithm::Hsd => seed_hsd(h, k),
            Algorithm::Hris { eta, pruning } => seed_hris(h, k, ctx.beta, eta, pruning, ctx.seed),
            Algorithm::Hci { radius } => seed_hci(h, k, radius),
            Algorithm::Greedy { runs_per_eval } => {
                let params = SpreadParams::new(ctx.beta, ctx.horizon, ctx.seed)?;
                seed_greedy(h, k, &params, runs_per_eval)
            }
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Parses names such as `hdd`, `h-degree`, `hci2` or `hris` with default
/// parameters. `hci` alone means radius 1.
impl FromStr for Algorithm {
    type Err = HyperError;

    fn from_str(s: &str) -> Result<Self> {
        let key = s
            .trim()
            .to_ascii_lowercase()
            .replace(['-', '_', '(', ')', '='], "");
        let alg = match key.as_str() {
            "degree" => Algorithm::Degree,
            "hyperdegree" | "hdegree" => Algorithm::HyperDegree,
            "hdd" => Algorithm::Hdd,
            "hsd" => Algorithm::Hsd,
            "hris" => Algorithm::Hris {
                eta: DEFAULT_ETA,
                pruning: Pruning::PerSample,
            },
            "hrisshared" => Algorithm::Hris {
                eta: DEFAULT_ETA,
                pruning: Pruning::Shared,
            },
            "greedy" => Algorithm::Greedy {
                runs_per_eval: DEFAULT_GREEDY_RUNS,
            },
            "hci" | "hcil1" | "hci1" => Algorithm::Hci { radius: 1 },
            "hcil2" | "hci2" => Algorithm::Hci { radius: 2 },
            other => match other
                .strip_prefix("hcil")
                .or_else(|| other.strip_prefix("hci"))
            {
                Some(r) if r.parse::<usize>().is_ok_and(|r| r >= 1) => Algorithm::Hci {
                    radius: r.parse().unwrap(),
                },
                _ => return Err(HyperError::UnknownAlgorithm(s.to_owned())),
            },
        };
        Ok(alg)
    }
}

/// Selects the `k` best nodes under `key`, larger first, ties by id.
pub(crate) fn top_k_by<K: Ord + Copy>(
    n: usize,
    k: usize,
    key: impl Fn(NodeId) -> K,
) -> Vec<NodeId> {
    let mut order: Vec<NodeId> = (0..n).collect();
    order.sort_by(|&a, &b| key(b).cmp(&key(a)).then(a.cmp(&b)));
    order.truncate(k);
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_names() {
        assert_eq!("HDD".parse::<Algorithm>().unwrap(), Algorithm::Hdd);
        assert_eq!(
            "H-Degree".parse::<Algorithm>().unwrap(),
            Algorithm::HyperDegree
        );
        assert_eq!(
            "h-ci(l=2)".parse::<Algorithm>().unwrap(),
            Algorithm::Hci { radius: 2 }
        );
        assert_eq!(
            "hci3".parse::<Algorithm>().unwrap(),
            Algorithm::Hci { radius: 3 }
        );
        assert!(matches!(
            "H-RIS".parse::<Algorithm>().unwrap(),
            Algorithm::Hris { eta: 200, .. }
        ));
        assert!(matches!(
            "pagerank".parse::<Algorithm>(),
            Err(HyperError::UnknownAlgorithm(_))
        ));
        assert!("hci0".parse::<Algorithm>().is_err());
        for name in Algorithm::ALL_NAMES {
            let alg: Algorithm = name.parse().unwrap();
            assert_eq!(alg.name(), name);
        }
    }

    #[test]
    fn top_k_tie_break() {
        assert_eq!(top_k_by(5, 3, |v| [1, 3, 3, 0, 1][v]), vec![1, 2, 0]);
    }
}
