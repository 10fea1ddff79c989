//! `hyperim`: spread curves, seed sets, overlap histograms and statistics for
//! hypergraph influence maximization.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hyperim::experiment::{
    degree_correlation, histogram_csv, report_csv, report_json, run_curve, run_overlap,
    CurveOptions, HistogramRow, PRESETS,
};
use hyperim::io::{load_edge_list, load_triple_prefix, write_edge_list, Dataset};
use hyperim::rng::derive_seed;
use hyperim::synth::coefficient_of_variation;
use hyperim::{
    Algorithm, GeneratorConfig, HyperError, Hypergraph, HypergraphStats, SelectionContext,
    SpreadParams,
};

const DEFAULT_ALGOS: &str = "hdd,hsd,hris,hci1,hci2,hyperdegree,degree,greedy";

#[derive(Parser)]
#[command(
    name = "hyperim",
    version,
    about = "Influence maximization on hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dataset statistics: n, m, mean degrees, clustering, paths, link density.
    Stats(Opts),
    /// Generate a HyperCL hypergraph and write it as an edge list.
    Synth(Opts),
    /// Select seed sets of size --kmax.
    Seed(Opts),
    /// Spread curves and AUC for K = 1..kmax.
    Curve(Opts),
    /// Influence overlap histograms of neighboring and random node pairs.
    Overlap(Opts),
    /// Correlation between degree and hyperdegree.
    Corr(Opts),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Edgelist,
    Triple,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct Opts {
    /// Dataset path; for `--format triple`, the prefix of `-nverts.txt`/`-simplices.txt`.
    #[arg(long, value_name = "PATH", conflicts_with = "generate")]
    input: Option<PathBuf>,
    /// Generate a HyperCL hypergraph, e.g. `theta=2,n=1000,m=1000,smin=1,smax=10`.
    /// A `seed=` entry fixes the generator seed; otherwise --seed is used.
    #[arg(long, value_name = "SPEC", value_parser = parse_generator)]
    generate: Option<GeneratorSpec>,
    #[arg(long, value_enum, default_value = "edgelist")]
    format: InputFormat,
    /// Drop duplicate hyperedges on load.
    #[arg(long)]
    dedupe: bool,
    /// Comma-separated algorithm names.
    #[arg(long, value_name = "LIST", default_value = DEFAULT_ALGOS)]
    algos: String,
    /// (beta, horizon) preset: 1 = (0.01, 25), 2 = (0.005, 35), 3 = (0.015, 15), 4 = (0.02, 10).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    preset: Option<u8>,
    #[arg(long, value_name = "F", value_parser = parse_probability)]
    beta: Option<f64>,
    #[arg(long, value_name = "T")]
    horizon: Option<usize>,
    /// Monte Carlo runs per estimate [default: 500, or 100 for overlap].
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    runs: Option<u64>,
    #[arg(long, value_name = "K", default_value_t = 25)]
    kmax: usize,
    /// HRR samples for hris.
    #[arg(long, value_name = "N", default_value_t = hyperim::seeding::DEFAULT_ETA)]
    eta: usize,
    /// Ball radius used by a bare `hci` entry in --algos.
    #[arg(long, value_name = "L", default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    ci_l: u8,
    /// Simulations per marginal-gain evaluation in greedy.
    #[arg(long, value_name = "N", default_value_t = hyperim::seeding::DEFAULT_GREEDY_RUNS)]
    greedy_runs: usize,
    /// Node pairs per class in the overlap experiment.
    #[arg(long, value_name = "N", default_value_t = 1000)]
    pairs: usize,
    /// Master seed.
    #[arg(long, value_name = "U64", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    out_format: OutFormat,
}

#[derive(Clone, Copy)]
struct GeneratorSpec {
    config: GeneratorConfig,
    has_seed: bool,
}

fn parse_generator(s: &str) -> Result<GeneratorSpec, String> {
    let config = s.parse().map_err(|e: HyperError| e.to_string())?;
    let has_seed = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .any(|p| p.trim_start().starts_with("seed="));
    Ok(GeneratorSpec { config, has_seed })
}

fn parse_probability(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(b) if (0.0..=1.0).contains(&b) => Ok(b),
        _ => Err(format!("{s:?} is not a probability in [0, 1]")),
    }
}

enum Failure {
    Usage(String),
    Data(HyperError),
}

impl From<HyperError> for Failure {
    fn from(e: HyperError) -> Self {
        match e {
            HyperError::InvalidParameter(_) | HyperError::UnknownAlgorithm(_) => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Data(e),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

struct Loaded {
    name: String,
    hypergraph: Hypergraph,
    labels: Option<Vec<String>>,
}

impl Opts {
    fn load(&self) -> CliResult<Loaded> {
        match (&self.input, &self.generate) {
            (Some(path), None) => {
                let Dataset {
                    hypergraph,
                    manifest,
                } = match self.format {
                    InputFormat::Edgelist => load_edge_list(path, self.dedupe)?,
                    InputFormat::Triple => load_triple_prefix(path, self.dedupe)?,
                };
                Ok(Loaded {
                    name: manifest.name,
                    hypergraph,
                    labels: Some(manifest.labels),
                })
            }
            (None, Some(_)) => {
                let cfg = self.generator().expect("checked above");
                Ok(Loaded {
                    name: format!("hypercl {cfg}"),
                    hypergraph: cfg.generate()?,
                    labels: None,
                })
            }
            _ => Err(Failure::Usage(
                "one of --input or --generate is required".into(),
            )),
        }
    }

    fn generator(&self) -> Option<GeneratorConfig> {
        self.generate.map(|spec| GeneratorConfig {
            seed: if spec.has_seed {
                spec.config.seed
            } else {
                self.seed
            },
            ..spec.config
        })
    }

    fn beta_horizon(&self) -> (f64, usize) {
        let (beta, horizon) = PRESETS[usize::from(self.preset.unwrap_or(1)) - 1];
        (self.beta.unwrap_or(beta), self.horizon.unwrap_or(horizon))
    }

    fn runs(&self, default: usize) -> usize {
        self.runs.map_or(default, |r| r as usize)
    }

    fn algorithms(&self) -> CliResult<Vec<Algorithm>> {
        let mut out = Vec::new();
        for raw in self
            .algos
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
        {
            let bare = raw.to_ascii_lowercase().replace(['-', '_'], "");
            let algo = match raw.parse::<Algorithm>()? {
                Algorithm::Hci { .. } if bare == "hci" => Algorithm::Hci {
                    radius: usize::from(self.ci_l),
                },
                Algorithm::Hris { pruning, .. } => Algorithm::Hris {
                    eta: self.eta,
                    pruning,
                },
                Algorithm::Greedy { .. } => Algorithm::Greedy {
                    runs_per_eval: self.greedy_runs,
                },
                other => other,
            };
            out.push(algo);
        }
        if out.is_empty() {
            return Err(Failure::Usage("--algos is empty".into()));
        }
        Ok(out)
    }

    fn emit(&self, text: &str) -> CliResult<()> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| {
                Failure::Data(HyperError::Io {
                    path: path.clone(),
                    source: e,
                })
            }),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(text.as_bytes())
                    .and_then(|_| stdout.flush())
                    .map_err(|e| {
                        Failure::Data(HyperError::Io {
                            path: "<stdout>".into(),
                            source: e,
                        })
                    })
            }
        }
    }
}

const STATS_HEADER: &str =
    "dataset,n,m,mean_degree,mean_hyperdegree,mean_edge_size,clustering,mean_shortest_path,diameter,link_density";

#[derive(Serialize)]
struct NamedStats<'a> {
    dataset: &'a str,
    #[serde(flatten)]
    stats: &'a HypergraphStats,
}

fn stats(opts: &Opts) -> CliResult<()> {
    let data = opts.load()?;
    let s = data.hypergraph.stats();
    let text = match opts.out_format {
        OutFormat::Csv => format!(
            "{STATS_HEADER}\n{},{},{},{},{},{},{},{},{},{}\n",
            data.name,
            s.nodes,
            s.edges,
            s.mean_degree,
            s.mean_hyperdegree,
            s.mean_edge_size,
            s.clustering,
            s.mean_shortest_path,
            s.diameter,
            s.link_density
        ),
        OutFormat::Json => to_json(&NamedStats {
            dataset: &data.name,
            stats: &s,
        })?,
    };
    opts.emit(&text)
}

fn synth(opts: &Opts) -> CliResult<()> {
    let Some(cfg) = opts.generator() else {
        return Err(Failure::Usage("synth requires --generate".into()));
    };
    let h = cfg.generate()?;
    let mut buf = Vec::new();
    write_edge_list(&mut buf, &h, None, &[cfg.header()]).expect("writing to memory");
    opts.emit(&String::from_utf8(buf).expect("edge list is UTF-8"))
}

#[derive(Serialize)]
struct SelectedSeeds {
    algorithm: String,
    seconds: f64,
    seeds: Vec<String>,
}

fn seed(opts: &Opts) -> CliResult<()> {
    let data = opts.load()?;
    let (beta, horizon) = opts.beta_horizon();
    let mut selected = Vec::new();
    for (index, algo) in opts.algorithms()?.into_iter().enumerate() {
        let ctx = SelectionContext {
            beta,
            horizon,
            seed: derive_seed(opts.seed, 1_000 + index as u64),
        };
        let started = Instant::now();
        let set = algo.select(&data.hypergraph, opts.kmax, &ctx)?;
        selected.push(SelectedSeeds {
            algorithm: algo.name(),
            seconds: started.elapsed().as_secs_f64(),
            seeds: set.nodes.iter().map(|&v| label(&data.labels, v)).collect(),
        });
    }
    let text = match opts.out_format {
        OutFormat::Csv => {
            let mut out = String::from("algorithm,rank,node\n");
            for s in &selected {
                for (rank, node) in s.seeds.iter().enumerate() {
                    writeln!(out, "{},{},{}", s.algorithm, rank + 1, node).unwrap();
                }
            }
            out
        }
        OutFormat::Json => to_json(&selected)?,
    };
    opts.emit(&text)
}

fn label(labels: &Option<Vec<String>>, v: usize) -> String {
    labels
        .as_ref()
        .map_or_else(|| v.to_string(), |l| l[v].clone())
}

fn curve(opts: &Opts) -> CliResult<()> {
    let data = opts.load()?;
    let (beta, horizon) = opts.beta_horizon();
    let curve_opts = CurveOptions {
        beta,
        horizon,
        runs: opts.runs(500),
        k_max: opts.kmax,
        master_seed: opts.seed,
    };
    let report = run_curve(
        &data.hypergraph,
        &data.name,
        &opts.algorithms()?,
        &curve_opts,
    )?;
    for c in &report.curves {
        eprintln!(
            "{:<12} auc={:.4} selection={:.3}s",
            c.algorithm, c.auc, c.seconds
        );
    }
    let text = match opts.out_format {
        OutFormat::Csv => report_csv(&report)?,
        OutFormat::Json => report_json(&report)?,
    };
    opts.emit(&text)
}

#[derive(Serialize)]
struct OverlapOutput<'a> {
    dataset: &'a str,
    params: SpreadParams,
    runs: usize,
    neighbor_mean: f64,
    random_mean: f64,
    histogram: &'a [HistogramRow],
}

fn overlap(opts: &Opts) -> CliResult<()> {
    let data = opts.load()?;
    let (beta, horizon) = opts.beta_horizon();
    let params = SpreadParams::new(beta, horizon, opts.seed)?;
    let runs = opts.runs(100);
    let (report, rows) = run_overlap(&data.hypergraph, opts.pairs, &params, runs)?;
    let neighbor_mean = hyperim::experiment::mean(&report.neighbor_overlaps);
    let random_mean = hyperim::experiment::mean(&report.random_overlaps);
    eprintln!("neighbor pairs mean overlap {neighbor_mean:.6}, random pairs {random_mean:.6}");
    let text = match opts.out_format {
        OutFormat::Csv => histogram_csv(&rows),
        OutFormat::Json => to_json(&OverlapOutput {
            dataset: &data.name,
            params,
            runs,
            neighbor_mean,
            random_mean,
            histogram: &rows,
        })?,
    };
    opts.emit(&text)
}

#[derive(Serialize)]
struct Correlation<'a> {
    dataset: &'a str,
    n: usize,
    pcc: f64,
    cv_degree: f64,
    cv_hyperdegree: f64,
}

fn corr(opts: &Opts) -> CliResult<()> {
    let data = opts.load()?;
    let h = &data.hypergraph;
    let as_f64 = |v: Vec<usize>| v.into_iter().map(|d| d as f64).collect::<Vec<_>>();
    let row = Correlation {
        dataset: &data.name,
        n: h.node_count(),
        pcc: degree_correlation(h)?,
        cv_degree: coefficient_of_variation(&as_f64(h.degrees()))?,
        cv_hyperdegree: coefficient_of_variation(&as_f64(h.hyperdegrees()))?,
    };
    let text = match opts.out_format {
        OutFormat::Csv => format!(
            "dataset,n,pcc,cv_degree,cv_hyperdegree\n{},{},{},{},{}\n",
            row.dataset, row.n, row.pcc, row.cv_degree, row.cv_hyperdegree
        ),
        OutFormat::Json => to_json(&row)?,
    };
    opts.emit(&text)
}

fn to_json(value: &impl Serialize) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value).map_err(HyperError::from)?;
    text.push('\n');
    Ok(text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Stats(o) => stats(o),
        Command::Synth(o) => synth(o),
        Command::Seed(o) => seed(o),
        Command::Curve(o) => curve(o),
        Command::Overlap(o) => overlap(o),
        Command::Corr(o) => corr(o),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
