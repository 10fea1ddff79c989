//! Randomized invariant checks shared by the `properties` and `acceptance`
//! targets.

use std::collections::BTreeSet;

use proptest::prelude::*;

use hyperim::diffusion::{simulate, SpreadParams, SpreadStream};
use hyperim::experiment::{auc, parse_report_csv, report_csv, run_curve, CurveOptions};
use hyperim::io::{parse_edge_list, write_edge_list};
use hyperim::rng::stream_rng;
use hyperim::seeding::{Algorithm, DiscountTrace, Pruning, SelectionContext};
use hyperim::synth::{hypercl, GeneratorConfig};
use hyperim::Hypergraph;

const CASES: u32 = 200;

fn config() -> ProptestConfig {
    ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(CASES)
    }
}

/// Random hypergraph with every node covered by at least one edge.
fn hypergraph() -> impl Strategy<Value = Hypergraph> {
    (2usize..14).prop_flat_map(|n| {
        prop::collection::vec(prop::collection::btree_set(0..n, 1..=n.min(5)), 1..12).prop_map(
            move |mut edges| {
                let covered: BTreeSet<usize> = edges.iter().flatten().copied().collect();
                edges.extend(
                    (0..n)
                        .filter(|v| !covered.contains(v))
                        .map(|v| BTreeSet::from([v])),
                );
                let edges: Vec<Vec<usize>> =
                    edges.into_iter().map(|e| e.into_iter().collect()).collect();
                Hypergraph::build(n, edges, false).unwrap()
            },
        )
    })
}

fn with_seeds() -> impl Strategy<Value = (Hypergraph, Vec<usize>, Vec<usize>)> {
    hypergraph().prop_flat_map(|h| {
        let n = h.node_count();
        (
            Just(h),
            prop::collection::btree_set(0..n, 1..=n),
            any::<u64>(),
        )
            .prop_map(|(h, sup, pick)| {
                let sup: Vec<usize> = sup.into_iter().collect();
                let sub: Vec<usize> = sup
                    .iter()
                    .copied()
                    .enumerate()
                    .filter(|(i, _)| *i == 0 || pick >> (i % 64) & 1 == 1)
                    .map(|(_, v)| v)
                    .collect();
                (h, sub, sup)
            })
    })
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let b: BTreeSet<_> = b.iter().collect();
    a.iter().all(|v| b.contains(v))
}

pub fn transpose_round_trips() {
    proptest!(config(), |(h in hypergraph())| {
            for (e, edge) in h.edges().enumerate() {
                for &v in edge {
                    prop_assert!(h.incident_edges(v).contains(&e));
                }
            }
            for v in h.nodes() {
                prop_assert!(h.incident_edges(v).windows(2).all(|w| w[0] < w[1]));
                for &e in h.incident_edges(v) {
                    prop_assert!(h.edge(e).contains(&v));
                }
            }
    });
}

pub fn handle_count_and_degree_identities() {
    proptest!(config(), |(h in hypergraph())| {
            let handles: usize = h.edges().map(<[usize]>::len).sum();
            prop_assert_eq!(h.hyperdegrees().iter().sum::<usize>(), handles);
            for v in h.nodes() {
                prop_assert_eq!(h.degree(v).unwrap(), h.neighbors(v).unwrap().len());
            }
    });
}

pub fn adjacency_is_symmetric() {
    proptest!(config(), |(h in hypergraph())| {
            for u in h.nodes() {
                prop_assert_eq!(h.adjacency_count(u, u).unwrap(), 0);
                for v in h.nodes() {
                    let a = h.adjacency_count(u, v).unwrap();
                    prop_assert_eq!(a, h.adjacency_count(v, u).unwrap());
                    prop_assert_eq!(a > 0, u != v && h.neighbors(u).unwrap().contains(&v));
                }
            }
    });
}

pub fn ball_frontiers_partition_the_component() {
    proptest!(config(), |(h in hypergraph(), v in 0usize..14)| {
            let v = v % h.node_count();
            let labels = h.component_labels();
            let mut seen = BTreeSet::new();
            for r in 0..=h.node_count() {
                for u in h.ball_frontier(v, r).unwrap() {
                    prop_assert!(seen.insert(u), "node {} in two frontiers", u);
                }
            }
            let component: BTreeSet<usize> = h.nodes().filter(|&u| labels[u] == labels[v]).collect();
            prop_assert_eq!(seen, component);
    });
}

pub fn link_density_identity() {
    proptest!(config(), |(h in hypergraph())| {
            let s = h.stats();
            let n = s.nodes as f64;
            prop_assert!((s.link_density - s.mean_degree / (n - 1.0)).abs() < 1e-9);
    });
}

pub fn trajectory_is_monotone() {
    proptest!(config(), |((h, _, seeds) in with_seeds(), beta in 0.0f64..=1.0, horizon in 0usize..6, key: u64)| {
            let r = simulate(&h, &seeds, &SpreadParams::new(beta, horizon, 0).unwrap(), SpreadStream::new(key)).unwrap();
            prop_assert_eq!(r.per_step.len(), horizon + 1);
            prop_assert_eq!(r.per_step[0], seeds.len());
            prop_assert!(r.per_step.windows(2).all(|w| w[0] <= w[1]));
            prop_assert_eq!(*r.per_step.last().unwrap(), r.infected.len());
            prop_assert!(is_subset(&seeds, &r.infected));
            prop_assert!(r.infected.windows(2).all(|w| w[0] < w[1]));
    });
}

pub fn larger_seed_sets_infect_supersets() {
    proptest!(config(), |((h, sub, sup) in with_seeds(), beta in 0.0f64..=1.0, horizon in 0usize..6, key: u64)| {
            let p = SpreadParams::new(beta, horizon, 0).unwrap();
            let small = simulate(&h, &sub, &p, SpreadStream::new(key)).unwrap();
            let large = simulate(&h, &sup, &p, SpreadStream::new(key)).unwrap();
            prop_assert!(is_subset(&small.infected, &large.infected));
    });
}

pub fn higher_beta_and_longer_horizon_infect_supersets() {
    proptest!(config(), |((h, seeds, _) in with_seeds(), b1 in 0.0f64..=1.0, b2 in 0.0f64..=1.0, horizon in 0usize..6, key: u64)| {
            let (lo, hi) = if b1 <= b2 { (b1, b2) } else { (b2, b1) };
            let stream = SpreadStream::new(key);
            let a = simulate(&h, &seeds, &SpreadParams::new(lo, horizon, 0).unwrap(), stream).unwrap();
            let b = simulate(&h, &seeds, &SpreadParams::new(hi, horizon, 0).unwrap(), stream).unwrap();
            prop_assert!(is_subset(&a.infected, &b.infected));
            let c = simulate(&h, &seeds, &SpreadParams::new(lo, horizon + 2, 0).unwrap(), stream).unwrap();
            prop_assert!(is_subset(&a.infected, &c.infected));
            prop_assert_eq!(&c.per_step[..=horizon], &a.per_step[..]);
    });
}

pub fn outbreaks_stay_inside_seed_components() {
    proptest!(config(), |((h, seeds, _) in with_seeds(), horizon in 0usize..8, key: u64)| {
            let labels = h.component_labels();
            let reachable: BTreeSet<usize> = seeds.iter().map(|&s| labels[s]).collect();
            let r = simulate(&h, &seeds, &SpreadParams::new(1.0, horizon, 0).unwrap(), SpreadStream::new(key)).unwrap();
            prop_assert!(r.infected.iter().all(|&v| reachable.contains(&labels[v])));
            let none = simulate(&h, &seeds, &SpreadParams::new(0.0, horizon, 0).unwrap(), SpreadStream::new(key)).unwrap();
            prop_assert_eq!(none.infected, seeds);
    });
}

pub fn simulation_is_deterministic() {
    proptest!(config(), |((h, seeds, _) in with_seeds(), beta in 0.0f64..=1.0, key: u64)| {
            let p = SpreadParams::new(beta, 4, 0).unwrap();
            prop_assert_eq!(simulate(&h, &seeds, &p, SpreadStream::new(key)).unwrap(), simulate(&h, &seeds, &p, SpreadStream::new(key)).unwrap());
    });
}

pub fn generator_meets_exact_sizes() {
    proptest!(config(), |(n in 10usize..60, m in 1usize..60, smax in 1usize..10, theta in 1.5f64..3.0, seed: u64)| {
            let smax = smax.min(n);
            let cfg = GeneratorConfig::new(n, m, theta, 1, smax, seed).unwrap();
            let h = cfg.generate().unwrap();
            prop_assert_eq!((h.node_count(), h.edge_count()), (n, m));
            prop_assert!(h.edges().all(|e| (1..=smax).contains(&e.len())));
            prop_assert_eq!(cfg.generate().unwrap(), h);

            let sizes: Vec<usize> = (0..m).map(|i| 1 + i % smax).collect();
            let weights: Vec<usize> = (0..n).map(|i| 1 + i % 7).collect();
            let g = hypercl(&weights, &sizes, &mut stream_rng(seed, 0)).unwrap();
            prop_assert_eq!(g.edges().map(<[usize]>::len).collect::<Vec<_>>(), sizes);
    });
}

pub fn seed_sets_are_prefix_consistent() {
    proptest!(config(), |(h in hypergraph(), k in 1usize..14, seed: u64)| {
            let k = k.min(h.node_count());
            let ctx = SelectionContext { beta: 0.3, horizon: 3, seed };
            let algorithms = [
                Algorithm::Degree,
                Algorithm::HyperDegree,
                Algorithm::Hdd,
                Algorithm::Hsd,
                Algorithm::Hci { radius: 1 },
                Algorithm::Hci { radius: 2 },
                Algorithm::Hris { eta: 20, pruning: Pruning::PerSample },
                Algorithm::Greedy { runs_per_eval: 3 },
            ];
            for algo in algorithms {
                let full = algo.select(&h, k, &ctx).unwrap();
                prop_assert_eq!(full.len(), k);
                prop_assert_eq!(full.nodes.iter().collect::<BTreeSet<_>>().len(), k);
                prop_assert!(full.nodes.iter().all(|&v| v < h.node_count()));
                for j in 1..k {
                    let part = algo.select(&h, j, &ctx).unwrap();
                    prop_assert_eq!(&part.nodes[..], full.prefix(j), "{}", algo.name());
                }
            }
    });
}

pub fn discount_heuristics_start_at_max_degree() {
    proptest!(config(), |(h in hypergraph(), k in 1usize..14)| {
            let k = k.min(h.node_count());
            let top = Algorithm::Degree.select(&h, 1, &SelectionContext { beta: 0.0, horizon: 0, seed: 0 }).unwrap().nodes[0];
            for (seeds, trace) in [DiscountTrace::hdd(&h, k).unwrap(), DiscountTrace::hsd(&h, k).unwrap()] {
                prop_assert_eq!(seeds[0], top);
                let initial: Vec<i64> = h.degrees().into_iter().map(|d| d as i64).collect();
                let mut prev = &initial;
                for next in &trace.adaptive {
                    prop_assert!(next.iter().zip(prev).all(|(a, b)| a <= b));
                    prev = next;
                }
            }
    });
}

pub fn auc_matches_written_curve() {
    proptest!(config(), |(h in hypergraph(), k_max in 1usize..6, seed: u64)| {
            let k_max = k_max.min(h.node_count());
            let opts = CurveOptions { beta: 0.4, horizon: 3, runs: 8, k_max, master_seed: seed };
            let report = run_curve(&h, "prop", &[Algorithm::Hdd, Algorithm::Degree], &opts).unwrap();
            let parsed = parse_report_csv(&report_csv(&report).unwrap()).unwrap();
            prop_assert_eq!(parsed.len(), 2);
            for (name, points) in parsed {
                let curve = report.curve(&name).unwrap();
                prop_assert_eq!(points.len(), k_max);
                prop_assert!((auc(&points) - curve.auc).abs() < 1e-12);
                prop_assert!(points.iter().zip(1..).all(|(p, k)| p.k == k && (0.0..=1.0).contains(&p.mean_spread)));
            }
    });
}

pub fn edge_lists_round_trip() {
    proptest!(config(), |(h in hypergraph())| {
            let mut buf = Vec::new();
            write_edge_list(&mut buf, &h, None, &["prop".into()]).unwrap();
            let d = parse_edge_list(&buf[..], "prop.el", false).unwrap();
            let labels: Vec<usize> = d.manifest.labels.iter().map(|l| l.parse().unwrap()).collect();
            let remapped: Vec<Vec<usize>> = d.hypergraph.edges().map(|e| {
                let mut e: Vec<usize> = e.iter().map(|&v| labels[v]).collect();
                e.sort_unstable();
                e
            }).collect();
            prop_assert_eq!(remapped, h.edges().map(<[usize]>::to_vec).collect::<Vec<_>>());
    });
}

/// Every property, by name.
pub const ALL: &[(&str, fn())] = &[
    ("transpose_round_trips", transpose_round_trips),
    (
        "handle_count_and_degree_identities",
        handle_count_and_degree_identities,
    ),
    ("adjacency_is_symmetric", adjacency_is_symmetric),
    (
        "ball_frontiers_partition_the_component",
        ball_frontiers_partition_the_component,
    ),
    ("link_density_identity", link_density_identity),
    ("trajectory_is_monotone", trajectory_is_monotone),
    (
        "larger_seed_sets_infect_supersets",
        larger_seed_sets_infect_supersets,
    ),
    (
        "higher_beta_and_longer_horizon_infect_supersets",
        higher_beta_and_longer_horizon_infect_supersets,
    ),
    (
        "outbreaks_stay_inside_seed_components",
        outbreaks_stay_inside_seed_components,
    ),
    ("simulation_is_deterministic", simulation_is_deterministic),
    ("generator_meets_exact_sizes", generator_meets_exact_sizes),
    (
        "seed_sets_are_prefix_consistent",
        seed_sets_are_prefix_consistent,
    ),
    (
        "discount_heuristics_start_at_max_degree",
        discount_heuristics_start_at_max_degree,
    ),
    ("auc_matches_written_curve", auc_matches_written_curve),
    ("edge_lists_round_trip", edge_lists_round_trip),
];
