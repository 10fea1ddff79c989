//! Influence maximization on hypergraphs.
//!
//! * [`hypergraph`]: immutable hypergraph, degree queries, clique-expansion
//!   statistics;
//! * [`diffusion`]: SI spreading with contact-process dynamics and
//!   Monte-Carlo spread estimation;
//! * [`seeding`]: HDD, HSD, H-RIS, H-CI, greedy, degree and hyperdegree
//!   seed selection;
//! * [`synth`]: HyperCL generation from power-law hyperdegree weights;
//! * [`io`]: edge-list and vertex-count-triple loaders;
//! * [`experiment`]: spread curves, AUC, overlap histograms, reports.
//!
//! Monte-Carlo loops run on rayon when the `parallel` feature is enabled
//! (the default). Every random draw is keyed by a master seed and a stream
//! index, so results are identical in parallel and sequential builds.

pub mod diffusion;
pub mod error;
pub mod experiment;
pub mod hypergraph;
pub mod io;
pub mod par;
pub mod rng;
pub mod seeding;
pub mod synth;

pub use diffusion::{
    estimate_spread, simulate, SpreadEstimate, SpreadParams, SpreadResult, SpreadStream,
};
pub use error::{HyperError, Result};
pub use hypergraph::{Hypergraph, HypergraphStats, NodeId};
pub use par::Execution;
pub use seeding::{Algorithm, SeedSet, SelectionContext};
pub use synth::GeneratorConfig;
