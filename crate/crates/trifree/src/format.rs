//! JSON adjacency files and format detection for graph inputs.
//!
//! The JSON schema is `{"n": <vertices>, "edges": [[u, v], ...]}` with
//! `u < v`, edges in lexicographic order on output.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use trifree_core::graph::DEFAULT_CAP;
use trifree_core::Graph;

use crate::{graph6, IoError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson { n: g.n(), edges: g.edges().collect() }
    }

    pub fn to_graph(&self) -> Result<Graph, IoError> {
        Ok(Graph::from_edges_with_cap(self.n, &self.edges, self.n.max(DEFAULT_CAP))?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum GraphFormat {
    Graph6,
    Json,
}

impl GraphFormat {
    /// Guess from the file extension, falling back to the first byte.
    pub fn detect(path: &Path, text: &str) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => GraphFormat::Json,
            Some("g6" | "graph6") => GraphFormat::Graph6,
            _ if text.trim_start().starts_with('{') => GraphFormat::Json,
            _ => GraphFormat::Graph6,
        }
    }
}

pub fn graph_to_string(g: &Graph, fmt: GraphFormat) -> String {
    match fmt {
        GraphFormat::Graph6 => graph6::encode(g) + "\n",
        GraphFormat::Json => serde_json::to_string(&GraphJson::from_graph(g)).expect("plain data serializes") + "\n",
    }
}

pub fn parse_graph(text: &str, fmt: GraphFormat) -> Result<Graph, IoError> {
    match fmt {
        GraphFormat::Graph6 => graph6::decode(text.lines().find(|l| !l.trim().is_empty()).unwrap_or("")),
        GraphFormat::Json => serde_json::from_str::<GraphJson>(text)?.to_graph(),
    }
}

/// Read one graph; `fmt` overrides detection.
pub fn read_graph(path: &Path, fmt: Option<GraphFormat>) -> Result<Graph, IoError> {
    let text = fs::read_to_string(path).map_err(|e| IoError::Io(path.display().to_string(), e))?;
    parse_graph(&text, fmt.unwrap_or_else(|| GraphFormat::detect(path, &text)))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|e| IoError::Io(path.display().to_string(), e))
}
