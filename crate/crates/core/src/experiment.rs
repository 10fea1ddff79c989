//! Experiment pipelines: spread curves with AUC, overlap histograms and
//! degree correlation, plus their CSV / JSON report formats.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::diffusion::{estimate_spread, overlap_experiment, OverlapReport, SpreadParams};
use crate::error::{HyperError, Result};
use crate::hypergraph::{Hypergraph, NodeId};
use crate::rng::derive_seed;
use crate::seeding::{Algorithm, SelectionContext};

/// The four (beta, horizon) settings of the real-data evaluation.
pub const PRESETS: [(f64, usize); 4] = [(0.01, 25), (0.005, 35), (0.015, 15), (0.02, 10)];

/// Bins in an overlap histogram.
pub const HISTOGRAM_BINS: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveConfig {
    pub dataset: String,
    pub nodes: usize,
    pub beta: f64,
    pub horizon: usize,
    pub runs: usize,
    pub k_max: usize,
    pub master_seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub k: usize,
    /// Expected outbreak size over `n`.
    pub mean_spread: f64,
    pub std: f64,
    pub ci95: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgorithmCurve {
    pub algorithm: String,
    pub seeds: Vec<NodeId>,
    pub points: Vec<CurvePoint>,
    pub auc: f64,
    /// Seed selection wall-clock time; evaluation is excluded.
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: CurveConfig,
    pub curves: Vec<AlgorithmCurve>,
}

impl ExperimentReport {
    pub fn curve(&self, algorithm: &str) -> Option<&AlgorithmCurve> {
        self.curves.iter().find(|c| c.algorithm == algorithm)
    }

    pub fn auc(&self, algorithm: &str) -> Option<f64> {
        self.curve(algorithm).map(|c| c.auc)
    }
}

/// Mean of the normalized spread over `K = 1..=k_max`.
pub fn auc(points: &[CurvePoint]) -> f64 {
    if points.is_empty() {
        return 0.0;
    }
    points.iter().map(|p| p.mean_spread).sum::<f64>() / points.len() as f64
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveOptions {
    pub beta: f64,
    pub horizon: usize,
    pub runs: usize,
    pub k_max: usize,
    pub master_seed: u64,
}

/// Selects `k_max` seeds with each algorithm and evaluates every prefix.
///
/// Spread at budget `K` uses the same child streams for every algorithm,
/// so curves are compared under common random numbers.
pub fn run_curve(
    h: &Hypergraph,
    dataset: &str,
    algorithms: &[Algorithm],
    opts: &CurveOptions,
) -> Result<ExperimentReport> {
    if algorithms.is_empty() {
        return Err(HyperError::param("no algorithms requested"));
    }
    if opts.k_max == 0 || opts.k_max > h.node_count() {
        return Err(HyperError::InvalidBudget {
            k: opts.k_max,
            node_count: h.node_count(),
        });
    }
    if opts.runs == 0 {
        return Err(HyperError::param("runs must be at least 1"));
    }
    SpreadParams::new(opts.beta, opts.horizon, opts.master_seed)?;
    let n = h.node_count() as f64;
    let mut curves = Vec::with_capacity(algorithms.len());
    for (index, algorithm) in algorithms.iter().enumerate() {
        let ctx = SelectionContext {
            beta: opts.beta,
            horizon: opts.horizon,
            seed: derive_seed(opts.master_seed, 1_000 + index as u64),
        };
        let started = Instant::now();
        let seeds = algorithm.select(h, opts.k_max, &ctx)?;
        let seconds = started.elapsed().as_secs_f64();
        let points = (1..=opts.k_max)
            .map(|k| {
                let params = SpreadParams {
                    beta: opts.beta,
                    horizon: opts.horizon,
                    seed: derive_seed(opts.master_seed, k as u64),
                };
                let est = estimate_spread(h, seeds.prefix(k), &params, opts.runs)?;
                Ok(CurvePoint {
                    k,
                    mean_spread: est.mean / n,
                    std: est.std / n,
                    ci95: est.ci95() / n,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        curves.push(AlgorithmCurve {
            algorithm: algorithm.name(),
            seeds: seeds.nodes,
            auc: auc(&points),
            points,
            seconds,
        });
    }
    Ok(ExperimentReport {
        config: CurveConfig {
            dataset: dataset.to_owned(),
            nodes: h.node_count(),
            beta: opts.beta,
            horizon: opts.horizon,
            runs: opts.runs,
            k_max: opts.k_max,
            master_seed: opts.master_seed,
        },
        curves,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

pub const CSV_HEADER: &str = "algorithm,K,mean_spread,std,ci95,runs";

pub fn report_csv(report: &ExperimentReport) -> Result<String> {
    if report.curves.iter().all(|c| c.points.is_empty()) {
        return Err(HyperError::EmptyReport);
    }
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for curve in &report.curves {
        for p in &curve.points {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                curve.algorithm, p.k, p.mean_spread, p.std, p.ci95, report.config.runs
            )
            .unwrap();
        }
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct JsonHeader {
    dataset: String,
    nodes: usize,
    beta: f64,
    horizon: usize,
    runs: usize,
    k_max: usize,
    master_seed: u64,
    wall_clock_seconds: Vec<(String, f64)>,
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    algorithm: String,
    #[serde(rename = "K")]
    k: usize,
    mean_spread: f64,
    std: f64,
    ci95: f64,
    runs: usize,
}

#[derive(Serialize, Deserialize)]
struct JsonAlgorithm {
    algorithm: String,
    auc: f64,
    seconds: f64,
    seeds: Vec<NodeId>,
}

#[derive(Serialize, Deserialize)]
struct JsonReport {
    header: JsonHeader,
    rows: Vec<JsonRow>,
    algorithms: Vec<JsonAlgorithm>,
}

pub fn report_json(report: &ExperimentReport) -> Result<String> {
    if report.curves.iter().all(|c| c.points.is_empty()) {
        return Err(HyperError::EmptyReport);
    }
    let c = &report.config;
    let doc = JsonReport {
        header: JsonHeader {
            dataset: c.dataset.clone(),
            nodes: c.nodes,
            beta: c.beta,
            horizon: c.horizon,
            runs: c.runs,
            k_max: c.k_max,
            master_seed: c.master_seed,
            wall_clock_seconds: report
                .curves
                .iter()
                .map(|a| (a.algorithm.clone(), a.seconds))
                .collect(),
        },
        rows: report
            .curves
            .iter()
            .flat_map(|a| {
                a.points.iter().map(|p| JsonRow {
                    algorithm: a.algorithm.clone(),
                    k: p.k,
                    mean_spread: p.mean_spread,
                    std: p.std,
                    ci95: p.ci95,
                    runs: c.runs,
                })
            })
            .collect(),
        algorithms: report
            .curves
            .iter()
            .map(|a| JsonAlgorithm {
                algorithm: a.algorithm.clone(),
                auc: a.auc,
                seconds: a.seconds,
                seeds: a.seeds.clone(),
            })
            .collect(),
    };
    Ok(serde_json::to_string_pretty(&doc)?)
}

/// Rebuilds a report from [`report_json`] output.
pub fn parse_report_json(text: &str) -> Result<ExperimentReport> {
    let doc: JsonReport = serde_json::from_str(text)?;
    let h = doc.header;
    let curves = doc
        .algorithms
        .into_iter()
        .map(|a| {
            let points = doc
                .rows
                .iter()
                .filter(|r| r.algorithm == a.algorithm)
                .map(|r| CurvePoint {
                    k: r.k,
                    mean_spread: r.mean_spread,
                    std: r.std,
                    ci95: r.ci95,
                })
                .collect();
            AlgorithmCurve {
                algorithm: a.algorithm,
                seeds: a.seeds,
                points,
                auc: a.auc,
                seconds: a.seconds,
            }
        })
        .collect();
    Ok(ExperimentReport {
        config: CurveConfig {
            dataset: h.dataset,
            nodes: h.nodes,
            beta: h.beta,
            horizon: h.horizon,
            runs: h.runs,
            k_max: h.k_max,
            master_seed: h.master_seed,
        },
        curves,
    })
}

pub fn write_report(
    report: &ExperimentReport,
    path: impl AsRef<Path>,
    format: ReportFormat,
) -> Result<()> {
    let text = match format {
        ReportFormat::Csv => report_csv(report)?,
        ReportFormat::Json => report_json(report)?,
    };
    let path = path.as_ref();
    fs::write(path, text).map_err(|e| HyperError::io(path, e))
}

/// Parses the `algorithm,K,mean_spread,...` CSV into per-algorithm curves,
/// in order of first appearance.
pub fn parse_report_csv(text: &str) -> Result<Vec<(String, Vec<CurvePoint>)>> {
    let mut lines = text.lines();
    let bad = |message: String| HyperError::Format {
        path: "<csv>".into(),
        message,
    };
    if lines.next() != Some(CSV_HEADER) {
        return Err(bad("missing report header".into()));
    }
    let mut curves: Vec<(String, Vec<CurvePoint>)> = Vec::new();
    for line in lines.filter(|l| !l.is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(bad(format!("expected 6 fields: {line:?}")));
        }
        let num = |s: &str| {
            s.parse::<f64>()
                .map_err(|_| bad(format!("bad number {s:?}")))
        };
        let point = CurvePoint {
            k: fields[1]
                .parse()
                .map_err(|_| bad(format!("bad K {:?}", fields[1])))?,
            mean_spread: num(fields[2])?,
            std: num(fields[3])?,
            ci95: num(fields[4])?,
        };
        match curves.iter_mut().find(|(name, _)| name == fields[0]) {
            Some((_, points)) => points.push(point),
            None => curves.push((fields[0].to_owned(), vec![point])),
        }
    }
    Ok(curves)
}

/// Pearson correlation coefficient.
pub fn pcc(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(HyperError::param(format!(
            "length mismatch: {} vs {}",
            xs.len(),
            ys.len()
        )));
    }
    if xs.len() < 2 {
        return Err(HyperError::param("correlation needs at least two points"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(HyperError::param("correlation of a constant sequence"));
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

/// PCC between node degree and hyperdegree.
pub fn degree_correlation(h: &Hypergraph) -> Result<f64> {
    let deg: Vec<f64> = h.degrees().into_iter().map(|d| d as f64).collect();
    let hdeg: Vec<f64> = h.hyperdegrees().into_iter().map(|d| d as f64).collect();
    pcc(&deg, &hdeg)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HistogramRow {
    /// Bin center.
    pub bin: f64,
    pub neighbor_density: f64,
    pub random_density: f64,
}

/// Density histograms of both overlap samples on `[0, max observed]`.
/// The maximum itself falls in the last bin; an all-zero sample uses `[0, 1]`.
pub fn overlap_histogram(report: &OverlapReport, bins: usize) -> Vec<HistogramRow> {
    let max = report
        .neighbor_overlaps
        .iter()
        .chain(&report.random_overlaps)
        .copied()
        .fold(0.0f64, f64::max);
    let upper = if max > 0.0 { max } else { 1.0 };
    let width = upper / bins as f64;
    let density = |values: &[f64]| {
        let mut counts = vec![0usize; bins];
        for &v in values {
            let b = ((v / width) as usize).min(bins - 1);
            counts[b] += 1;
        }
        let total = values.len().max(1) as f64;
        counts
            .into_iter()
            .map(|c| c as f64 / (total * width))
            .collect::<Vec<_>>()
    };
    let nd = density(&report.neighbor_overlaps);
    let rd = density(&report.random_overlaps);
    (0..bins)
        .map(|b| HistogramRow {
            bin: (b as f64 + 0.5) * width,
            neighbor_density: nd[b],
            random_density: rd[b],
        })
        .collect()
}

pub fn histogram_csv(rows: &[HistogramRow]) -> String {
    let mut out = String::from("bin,neighbor_density,random_density\n");
    for r in rows {
        writeln!(out, "{},{},{}", r.bin, r.neighbor_density, r.random_density).unwrap();
    }
    out
}

/// Runs the overlap experiment and bins it.
pub fn run_overlap(
    h: &Hypergraph,
    pair_count: usize,
    params: &SpreadParams,
    runs: usize,
) -> Result<(OverlapReport, Vec<HistogramRow>)> {
    let report = overlap_experiment(h, pair_count, params, runs)?;
    let rows = overlap_histogram(&report, HISTOGRAM_BINS);
    Ok((report, rows))
}

pub fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}
