//! Dataset loading and hypergraph serialization.
//!
//! Two input formats are supported:
//!
//! * edge list: one hyperedge per line, labels separated by whitespace or
//!   commas, `#` starts a comment line;
//! * vertex-count triple: an `nverts` file of edge sizes plus a `simplices`
//!   file holding the concatenated member labels.
//!
//! Labels are opaque strings relabeled to dense ids in order of first
//! appearance. Only labels that occur in some hyperedge receive an id.

use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{HyperError, Result};
use crate::hypergraph::{Hypergraph, NodeId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DatasetFormat {
    EdgeList,
    VertexCountTriple,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetManifest {
    pub name: String,
    pub path: PathBuf,
    pub format: DatasetFormat,
    pub dedupe: bool,
    /// Label of each dense id.
    pub labels: Vec<String>,
    label_ids: HashMap<String, NodeId>,
}

impl DatasetManifest {
    pub fn id_of(&self, label: &str) -> Option<NodeId> {
        self.label_ids.get(label).copied()
    }

    pub fn label_of(&self, id: NodeId) -> Option<&str> {
        self.labels.get(id).map(String::as_str)
    }
}

#[derive(Clone, Debug)]
pub struct Dataset {
    pub hypergraph: Hypergraph,
    pub manifest: DatasetManifest,
}

#[derive(Default)]
struct Relabeler {
    labels: Vec<String>,
    ids: HashMap<String, NodeId>,
}

impl Relabeler {
    fn id(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = self.labels.len();
        self.labels.push(label.to_owned());
        self.ids.insert(label.to_owned(), id);
        id
    }
}

fn dataset_name(path: &Path) -> String {
    path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

fn finish(
    name: String,
    path: PathBuf,
    format: DatasetFormat,
    dedupe: bool,
    relabel: Relabeler,
    edges: Vec<Vec<NodeId>>,
) -> Result<Dataset> {
    if edges.is_empty() {
        return Err(HyperError::Format {
            path: path.display().to_string(),
            message: "no hyperedges".into(),
        });
    }
    let hypergraph = Hypergraph::build(relabel.labels.len(), edges, dedupe)?;
    let manifest = DatasetManifest {
        name,
        path,
        format,
        dedupe,
        labels: relabel.labels,
        label_ids: relabel.ids,
    };
    Ok(Dataset {
        hypergraph,
        manifest,
    })
}

pub fn load_edge_list(path: impl AsRef<Path>, dedupe: bool) -> Result<Dataset> {
    let path = path.as_ref();
    let file = fs::File::open(path).map_err(|e| HyperError::io(path, e))?;
    parse_edge_list(BufReader::new(file), path, dedupe)
}

/// Parses edge-list text read from `reader`; `origin` names it in errors.
pub fn parse_edge_list(
    reader: impl BufRead,
    origin: impl AsRef<Path>,
    dedupe: bool,
) -> Result<Dataset> {
    let origin = origin.as_ref();
    let shown = origin.display().to_string();
    let mut relabel = Relabeler::default();
    let mut edges = Vec::new();
    for (index, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| HyperError::io(origin, e))?;
        let line = line.trim();
        if line.starts_with('#') {
            continue;
        }
        let members: Vec<NodeId> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| relabel.id(t))
            .collect();
        if members.is_empty() {
            return Err(HyperError::Parse {
                path: shown,
                line: index + 1,
                message: "empty line".into(),
            });
        }
        edges.push(members);
    }
    finish(
        dataset_name(origin),
        origin.to_path_buf(),
        DatasetFormat::EdgeList,
        dedupe,
        relabel,
        edges,
    )
}

pub fn load_vertex_count_triple(
    nverts_path: impl AsRef<Path>,
    simplices_path: impl AsRef<Path>,
    dedupe: bool,
) -> Result<Dataset> {
    let nverts_path = nverts_path.as_ref();
    let simplices_path = simplices_path.as_ref();
    let read = |p: &Path| {
        let mut text = String::new();
        fs::File::open(p)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|e| HyperError::io(p, e))?;
        Ok::<_, HyperError>(text)
    };
    let nverts = read(nverts_path)?;
    let simplices = read(simplices_path)?;
    let name = dataset_name(nverts_path)
        .trim_end_matches("-nverts")
        .to_owned();
    parse_vertex_count_triple(&nverts, &simplices, &name, nverts_path, dedupe)
}

/// Loads `<prefix>-nverts.txt` and `<prefix>-simplices.txt`.
pub fn load_triple_prefix(prefix: impl AsRef<Path>, dedupe: bool) -> Result<Dataset> {
    let prefix = prefix.as_ref().display().to_string();
    load_vertex_count_triple(
        format!("{prefix}-nverts.txt"),
        format!("{prefix}-simplices.txt"),
        dedupe,
    )
}

pub fn parse_vertex_count_triple(
    nverts: &str,
    simplices: &str,
    name: &str,
    origin: &Path,
    dedupe: bool,
) -> Result<Dataset> {
    let shown = origin.display().to_string();
    let counts: Vec<usize> = nverts
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>().map_err(|_| HyperError::Format {
                path: shown.clone(),
                message: format!("non-integer vertex count {t:?}"),
            })
        })
        .collect::<Result<_>>()?;
    let labels: Vec<&str> = simplices.split_whitespace().collect();
    if let Some(bad) = labels.iter().find(|t| t.parse::<i64>().is_err()) {
        return Err(HyperError::Format {
            path: shown,
            message: format!("non-integer simplex label {bad:?}"),
        });
    }
    let expected: usize = counts.iter().sum();
    if expected != labels.len() {
        return Err(HyperError::Format {
            path: shown,
            message: format!(
                "vertex counts sum to {expected} but {} simplex labels were read",
                labels.len()
            ),
        });
    }
    let mut relabel = Relabeler::default();
    let mut edges = Vec::with_capacity(counts.len());
    let mut cursor = labels.iter();
    for &count in &counts {
        edges.push(cursor.by_ref().take(count).map(|l| relabel.id(l)).collect());
    }
    finish(
        name.to_owned(),
        origin.to_path_buf(),
        DatasetFormat::VertexCountTriple,
        dedupe,
        relabel,
        edges,
    )
}

/// Writes `h` as an edge list. With `labels`, node ids are written as their
/// labels; `header` lines are emitted first, each prefixed with `# ` unless
/// it already starts with `#`.
pub fn write_edge_list(
    mut out: impl Write,
    h: &Hypergraph,
    labels: Option<&[String]>,
    header: &[String],
) -> std::io::Result<()> {
    for line in header {
        if line.starts_with('#') {
            writeln!(out, "{line}")?;
        } else {
            writeln!(out, "# {line}")?;
        }
    }
    for edge in h.edges() {
        let mut first = true;
        for &v in edge {
            if !first {
                out.write_all(b" ")?;
            }
            first = false;
            match labels {
                Some(l) => out.write_all(l[v].as_bytes())?,
                None => write!(out, "{v}")?,
            }
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn save_edge_list(
    path: impl AsRef<Path>,
    h: &Hypergraph,
    labels: Option<&[String]>,
    header: &[String],
) -> Result<()> {
    let path = path.as_ref();
    let file = fs::File::create(path).map_err(|e| HyperError::io(path, e))?;
    let mut out = std::io::BufWriter::new(file);
    write_edge_list(&mut out, h, labels, header)
        .and_then(|_| out.flush())
        .map_err(|e| HyperError::io(path, e))
}
