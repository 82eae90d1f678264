//! Simple undirected graphs on dense vertex labels `0..v`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {line}: malformed header, expected \"v e\"")]
    BadHeader { line: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: malformed edge, expected \"u w\"")]
    BadEdge { line: usize },
    #[error("line {line}: endpoint {vertex} out of range for {v} vertices")]
    OutOfRange {
        line: usize,
        vertex: usize,
        v: usize,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge ({u}, {w})")]
    Duplicate { line: usize, u: usize, w: usize },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("edge ({0}, {1}) is not in the graph")]
    EdgeAbsent(usize, usize),
    #[error("invalid edge ({0}, {1})")]
    InvalidEdge(usize, usize),
    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("invalid parameters for {family}: {reason}")]
    BadParams {
        family: &'static str,
        reason: String,
    },
}

/// An undirected simple graph. Edges are stored as `(u, w)` with `u < w` and
/// kept in lexicographic order, which fixes the row order of every matrix
/// built from the graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    v: usize,
    edges: Vec<Edge>,
}

fn canonical(u: usize, w: usize) -> Edge {
    if u < w {
        (u, w)
    } else {
        (w, u)
    }
}

impl Graph {
    pub fn empty(v: usize) -> Self {
        Graph {
            v,
            edges: Vec::new(),
        }
    }

    /// Validates and canonicalizes an edge list.
    pub fn new(v: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut set = BTreeSet::new();
        for (u, w) in edges {
            if u == w || u >= v || w >= v {
                return Err(GraphError::InvalidEdge(u, w));
            }
            if !set.insert(canonical(u, w)) {
                return Err(GraphError::InvalidEdge(u, w));
            }
        }
        Ok(Graph {
            v,
            edges: set.into_iter().collect(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.v
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Index of an edge in canonical order.
    pub fn edge_index(&self, u: usize, w: usize) -> Option<usize> {
        self.edges.binary_search(&canonical(u, w)).ok()
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        u != w && self.edge_index(u, w).is_some()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.v * self.v.saturating_sub(1) / 2
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.v];
        for &(u, w) in &self.edges {
            adj[u].push(w);
            adj[w].push(u);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.v == 0 {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.v];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn delete_edge(&self, u: usize, w: usize) -> Result<Graph, GraphError> {
        let idx = self
            .edge_index(u, w)
            .filter(|_| u != w)
            .ok_or(GraphError::EdgeAbsent(u, w))?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Ok(Graph { v: self.v, edges })
    }

    pub fn add_edge(&self, u: usize, w: usize) -> Result<Graph, GraphError> {
        Graph::new(self.v, self.edges.iter().copied().chain([(u, w)]))
    }

    /// Removes vertex `x`, relabeling the vertices above it down by one.
    pub fn delete_vertex(&self, x: usize) -> Graph {
        let relabel = |y: usize| if y > x { y - 1 } else { y };
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, w)| u != x && w != x)
            .map(|&(u, w)| (relabel(u), relabel(w)))
            .collect();
        Graph {
            v: self.v - 1,
            edges,
        }
    }

    /// Parses the edge-list format: `#` comments, a `v e` header, then
    /// exactly `e` lines `u w`.
    pub fn parse(text: &str) -> Result<Graph, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hline, header) = lines.next().ok_or(GraphError::MissingHeader)?;
        let (v, e) = parse_pair(header).ok_or(GraphError::BadHeader { line: hline })?;

        let mut set = BTreeSet::new();
        let mut found = 0;
        for (line, text) in lines {
            found += 1;
            if found > e {
                continue;
            }
            let (u, w) = parse_pair(text).ok_or(GraphError::BadEdge { line })?;
            for x in [u, w] {
                if x >= v {
                    return Err(GraphError::OutOfRange { line, vertex: x, v });
                }
            }
            if u == w {
                return Err(GraphError::SelfLoop { line, vertex: u });
            }
            let c = canonical(u, w);
            if !set.insert(c) {
                return Err(GraphError::Duplicate {
                    line,
                    u: c.0,
                    w: c.1,
                });
            }
        }
        if found != e {
            return Err(GraphError::EdgeCount { declared: e, found });
        }
        Ok(Graph {
            v,
            edges: set.into_iter().collect(),
        })
    }

    /// Canonical edge-list text.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.v, self.edges.len());
        for (u, w) in &self.edges {
            out.push_str(&format!("{u} {w}\n"));
        }
        out
    }

    /// SHA-256 of the canonical edge-list text, hex encoded.
    pub fn canonical_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_edge_list().as_bytes()))
    }
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some((a, b))
}

impl FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Graph::parse(s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Complete,
    Cycle,
    Path,
    CompleteBipartite,
    Wheel,
    Prism,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Path => "path",
            Family::CompleteBipartite => "complete_bipartite",
            Family::Wheel => "wheel",
            Family::Prism => "prism",
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "complete" => Family::Complete,
            "cycle" => Family::Cycle,
            "path" => Family::Path,
            "complete_bipartite" | "bipartite" => Family::CompleteBipartite,
            "wheel" => Family::Wheel,
            "prism" => Family::Prism,
            other => return Err(GraphError::UnknownFamily(other.to_string())),
        })
    }
}

/// Deterministic generator for the named families.
pub fn generate(family: Family, params: &[usize]) -> Result<Graph, GraphError> {
    let bad = |reason: &str| GraphError::BadParams {
        family: family.name(),
        reason: reason.to_string(),
    };
    let one = |min: usize| -> Result<usize, GraphError> {
        match params {
            [n] if *n >= min => Ok(*n),
            [_] => Err(bad(&format!("need n >= {min}"))),
            _ => Err(bad("expected one parameter")),
        }
    };
    let graph = match family {
        Family::Complete => {
            let n = one(1)?;
            complete(n)
        }
        Family::Path => {
            let n = one(1)?;
            Graph {
                v: n,
                edges: (1..n).map(|i| (i - 1, i)).collect(),
            }
        }
        Family::Cycle => {
            let n = one(3)?;
            cycle_edges(n, 0, n)
        }
        Family::CompleteBipartite => {
            let (n, m) = match params {
                [n, m] if *n >= 1 && *m >= 1 => (*n, *m),
                [_, _] => return Err(bad("need n, m >= 1")),
                _ => return Err(bad("expected two parameters")),
            };
            let edges = (0..n).flat_map(|a| (n..n + m).map(move |b| (a, b)));
            Graph::new(n + m, edges).expect("valid by construction")
        }
        Family::Wheel => {
            let n = one(3)?;
            let rim = cycle_edges(n, 0, n + 1);
            let spokes = (0..n).map(|i| (i, n));
            Graph::new(n + 1, rim.edges.into_iter().chain(spokes)).expect("valid by construction")
        }
        Family::Prism => {
            if !params.is_empty() {
                return Err(bad("takes no parameters"));
            }
            let edges = [
                (0, 1),
                (1, 2),
                (0, 2),
                (3, 4),
                (4, 5),
                (3, 5),
                (0, 3),
                (1, 4),
                (2, 5),
            ];
            Graph::new(6, edges).expect("valid by construction")
        }
    };
    Ok(graph)
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |w| (u, w)))
        .collect();
    Graph { v: n, edges }
}

fn cycle_edges(n: usize, offset: usize, v: usize) -> Graph {
    let edges = (0..n).map(|i| (offset + i, offset + (i + 1) % n));
    Graph::new(v, edges).expect("valid by construction")
}
