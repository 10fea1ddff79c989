//! Immutable hypergraph with a bidirectional sparse incidence index.
//!
//! Node ids are dense integers in `0..node_count`. Besides the incidence
//! lists the structure caches the neighbor lists of the clique expansion,
//! since every seeding heuristic and the statistics walk them repeatedly.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{HyperError, Result};

pub type NodeId = usize;
pub type EdgeId = usize;

/// Largest hypergraph for which dense C / A matrices may be exported.
pub const DENSE_EXPORT_LIMIT: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    node_count: usize,
    edges: Vec<Vec<NodeId>>,
    node_edges: Vec<Vec<EdgeId>>,
    neighbors: Vec<Vec<NodeId>>,
}

impl Hypergraph {
    /// Builds a hypergraph over `node_count` nodes.
    ///
    /// Repeated ids inside one hyperedge are collapsed. With `dedupe_edges`
    /// hyperedges equal as sets are kept once, at their first position.
    pub fn build<I, E>(node_count: usize, hyperedges: I, dedupe_edges: bool) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = NodeId>,
    {
        if node_count == 0 {
            return Err(HyperError::NoNodes);
        }
        let mut edges: Vec<Vec<NodeId>> = Vec::new();
        let mut seen: HashSet<Vec<NodeId>> = HashSet::new();
        for (index, edge) in hyperedges.into_iter().enumerate() {
            let mut members: Vec<NodeId> = edge.into_iter().collect();
            if let Some(&node) = members.iter().find(|&&v| v >= node_count) {
                return Err(HyperError::NodeOutOfRange { node, node_count });
            }
            members.sort_unstable();
            members.dedup();
            if members.is_empty() {
                return Err(HyperError::EmptyHyperedge { index });
            }
            if dedupe_edges && !seen.insert(members.clone()) {
                continue;
            }
            edges.push(members);
        }

        let mut node_edges = vec![Vec::new(); node_count];
        for (e, members) in edges.iter().enumerate() {
            for &v in members {
                node_edges[v].push(e);
            }
        }

        let mut neighbors = Vec::with_capacity(node_count);
        for (v, incident) in node_edges.iter().enumerate() {
            let mut adj: Vec<NodeId> = incident
                .iter()
                .flat_map(|&e| edges[e].iter().copied())
                .filter(|&u| u != v)
                .collect();
            adj.sort_unstable();
            adj.dedup();
            neighbors.push(adj);
        }

        Ok(Self {
            node_count,
            edges,
            node_edges,
            neighbors,
        })
    }

    #[inline]
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Sorted members of hyperedge `e`.
    #[inline]
    pub fn edge(&self, e: EdgeId) -> &[NodeId] {
        &self.edges[e]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[NodeId]> + '_ {
        self.edges.iter().map(Vec::as_slice)
    }

    /// Ids of the hyperedges containing `v`, ascending.
    #[inline]
    pub fn incident_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.node_edges[v]
    }

    /// Clique-expansion neighbors of `v`, ascending, `v` excluded.
    #[inline]
    pub fn neighbor_slice(&self, v: NodeId) -> &[NodeId] {
        &self.neighbors[v]
    }

    pub fn nodes(&self) -> std::ops::Range<NodeId> {
        0..self.node_count
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.node_count {
            Ok(())
        } else {
            Err(HyperError::NodeOutOfRange {
                node: v,
                node_count: self.node_count,
            })
        }
    }

    /// Number of distinct nodes sharing at least one hyperedge with `v`.
    pub fn degree(&self, v: NodeId) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.neighbors[v].len())
    }

    /// Number of hyperedges containing `v`.
    pub fn hyperdegree(&self, v: NodeId) -> Result<usize> {
        self.check_node(v)?;
        Ok(self.node_edges[v].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub fn hyperdegrees(&self) -> Vec<usize> {
        self.node_edges.iter().map(Vec::len).collect()
    }

    /// Number of hyperedges shared by `u` and `v`; zero on the diagonal.
    pub fn adjacency_count(&self, u: NodeId, v: NodeId) -> Result<usize> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Ok(0);
        }
        Ok(count_common(&self.node_edges[u], &self.node_edges[v]))
    }

    pub fn neighbors(&self, v: NodeId) -> Result<Vec<NodeId>> {
        self.check_node(v)?;
        Ok(self.neighbors[v].clone())
    }

    /// Nodes at shortest-path distance exactly `radius` from `v` in the
    /// clique expansion, ascending.
    pub fn ball_frontier(&self, v: NodeId, radius: usize) -> Result<Vec<NodeId>> {
        self.check_node(v)?;
        let mut bfs = Bfs::new(self.node_count);
        Ok(bfs.frontier(self, v, radius))
    }

    /// Connected components of the clique expansion, each sorted, ordered by
    /// their smallest member.
    pub fn connected_components(&self) -> Vec<Vec<NodeId>> {
        let labels = self.component_labels();
        let count = labels.iter().copied().max().map_or(0, |c| c + 1);
        let mut components = vec![Vec::new(); count];
        for (v, &c) in labels.iter().enumerate() {
            components[c].push(v);
        }
        components
    }

    /// Component index per node; components are numbered by smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut labels = vec![usize::MAX; self.node_count];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..self.node_count {
            if labels[start] != usize::MAX {
                continue;
            }
            labels[start] = next;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &u in &self.neighbors[v] {
                    if labels[u] == usize::MAX {
                        labels[u] = next;
                        stack.push(u);
                    }
                }
            }
            next += 1;
        }
        labels
    }

    /// Table-1 style summary statistics.
    pub fn stats(&self) -> HypergraphStats {
        let n = self.node_count;
        let handle_count: usize = self.edges.iter().map(Vec::len).sum();
        let degree_sum: usize = self.neighbors.iter().map(Vec::len).sum();
        let mean_degree = degree_sum as f64 / n as f64;
        let link_density = if n > 1 {
            degree_sum as f64 / (n as f64 * (n as f64 - 1.0))
        } else {
            0.0
        };
        let mean_edge_size = if self.edges.is_empty() {
            0.0
        } else {
            handle_count as f64 / self.edges.len() as f64
        };

        let (mean_shortest_path, diameter) = self.largest_component_distances();
        HypergraphStats {
            nodes: n,
            edges: self.edges.len(),
            mean_degree,
            mean_hyperdegree: handle_count as f64 / n as f64,
            mean_edge_size,
            clustering: self.average_clustering(),
            mean_shortest_path,
            diameter,
            link_density,
        }
    }

    /// Unweighted mean local clustering of the clique expansion; nodes with
    /// fewer than two neighbors contribute zero.
    pub fn average_clustering(&self) -> f64 {
        let n = self.node_count;
        let mut mark = vec![false; n];
        let mut total = 0.0;
        for v in 0..n {
            let adj = &self.neighbors[v];
            let k = adj.len();
            if k < 2 {
                continue;
            }
            for &u in adj {
                mark[u] = true;
            }
            let mut links = 0usize;
            for &u in adj {
                links += self.neighbors[u]
                    .iter()
                    .filter(|&&w| w > u && mark[w])
                    .count();
            }
            for &u in adj {
                mark[u] = false;
            }
            total += 2.0 * links as f64 / (k as f64 * (k as f64 - 1.0));
        }
        total / n as f64
    }

    /// Mean shortest path over ordered pairs and diameter of the largest
    /// connected component. Ties between equal-size components go to the
    /// one with the smallest member.
    fn largest_component_distances(&self) -> (f64, usize) {
        let components = self.connected_components();
        let Some(largest) = components
            .iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        else {
            return (0.0, 0);
        };
        if largest.len() < 2 {
            return (0.0, 0);
        }
        let mut bfs = Bfs::new(self.node_count);
        let mut total: u64 = 0;
        let mut diameter = 0usize;
        for &source in largest {
            bfs.run(self, source, usize::MAX);
            for &(_, d) in &bfs.order {
                total += d as u64;
                diameter = diameter.max(d);
            }
        }
        let pairs = largest.len() as f64 * (largest.len() as f64 - 1.0);
        (total as f64 / pairs, diameter)
    }

    /// Dense n×m incidence matrix as CSV. Header row holds edge ids, each
    /// row starts with its node id.
    pub fn incidence_csv(&self) -> Result<String> {
        self.check_dense_limit()?;
        let mut out = String::from("node");
        for e in 0..self.edges.len() {
            write!(out, ",{e}").unwrap();
        }
        out.push('\n');
        for v in 0..self.node_count {
            write!(out, "{v}").unwrap();
            let mut incident = self.node_edges[v].iter().peekable();
            for e in 0..self.edges.len() {
                let hit = incident.next_if_eq(&&e).is_some();
                write!(out, ",{}", u8::from(hit)).unwrap();
            }
            out.push('\n');
        }
        Ok(out)
    }

    /// Dense n×n adjacency matrix `C Cᵀ − D` as CSV.
    pub fn adjacency_csv(&self) -> Result<String> {
        self.check_dense_limit()?;
        let n = self.node_count;
        let mut out = String::from("node");
        for v in 0..n {
            write!(out, ",{v}").unwrap();
        }
        out.push('\n');
        let mut row = vec![0usize; n];
        for v in 0..n {
            row.iter_mut().for_each(|x| *x = 0);
            for &e in &self.node_edges[v] {
                for &u in &self.edges[e] {
                    if u != v {
                        row[u] += 1;
                    }
                }
            }
            write!(out, "{v}").unwrap();
            for x in &row {
                write!(out, ",{x}").unwrap();
            }
            out.push('\n');
        }
        Ok(out)
    }

    fn check_dense_limit(&self) -> Result<()> {
        if self.node_count > DENSE_EXPORT_LIMIT {
            Err(HyperError::TooLargeForDenseExport {
                node_count: self.node_count,
                limit: DENSE_EXPORT_LIMIT,
            })
        } else {
            Ok(())
        }
    }
}

fn count_common(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Reusable breadth-first search over the clique expansion.
pub(crate) struct Bfs {
    dist: Vec<usize>,
    queue: VecDeque<NodeId>,
    /// Visited nodes with their distance, in visiting order.
    pub(crate) order: Vec<(NodeId, usize)>,
}

impl Bfs {
    pub(crate) fn new(node_count: usize) -> Self {
        Self {
            dist: vec![usize::MAX; node_count],
            queue: VecDeque::new(),
            order: Vec::new(),
        }
    }

    /// Visits every node within `max_depth` hops of `source`.
    pub(crate) fn run(&mut self, h: &Hypergraph, source: NodeId, max_depth: usize) {
        for &(v, _) in &self.order {
            self.dist[v] = usize::MAX;
        }
        self.order.clear();
        self.queue.clear();
        self.dist[source] = 0;
        self.queue.push_back(source);
        while let Some(v) = self.queue.pop_front() {
            let d = self.dist[v];
            self.order.push((v, d));
            if d == max_depth {
                continue;
            }
            for &u in &h.neighbors[v] {
                if self.dist[u] == usize::MAX {
                    self.dist[u] = d + 1;
                    self.queue.push_back(u);
                }
            }
        }
    }

    pub(crate) fn frontier(
        &mut self,
        h: &Hypergraph,
        source: NodeId,
        radius: usize,
    ) -> Vec<NodeId> {
        self.run(h, source, radius);
        let mut out: Vec<NodeId> = self
            .order
            .iter()
            .filter(|&&(_, d)| d == radius)
            .map(|&(v, _)| v)
            .collect();
        out.sort_unstable();
        out
    }
}

/// Summary statistics of a hypergraph and its clique expansion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypergraphStats {
    pub nodes: usize,
    pub edges: usize,
    pub mean_degree: f64,
    pub mean_hyperdegree: f64,
    pub mean_edge_size: f64,
    pub clustering: f64,
    pub mean_shortest_path: f64,
    pub diameter: usize,
    pub link_density: f64,
}
