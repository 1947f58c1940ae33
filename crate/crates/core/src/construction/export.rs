//! Graph files for `H3(F)` and the lifted component through `(v0, 0)`.
//!
//! Both formats carry the same header (kind, field, counts). JSON also lists
//! every vertex with its label; the edge list has one `a b` line per edge
//! with `a < b`, sorted. Cover vertices are labelled by their base vertex and
//! the `M`-coordinates of `tag + t_b` (`t_b` the tree voltage of the base),
//! and numbered in lexicographic order of those labels.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::extension::m_coordinates;
use super::theorem::{check_component_size, projective_graph};
use super::{base_vertex, QuotientVoltage};
use crate::field::Field;
use crate::graphs::{IndexedGraph, SimpleGraph};
use crate::multilinear::NElement;
use crate::report::CheckConfig;
use crate::voltage::{component_of, tree_voltages};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Edgelist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    BaseGraph,
    Cover,
}

impl GraphKind {
    fn name(self) -> &'static str {
        match self {
            GraphKind::BaseGraph => "base-graph",
            GraphKind::Cover => "cover",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    /// Index of the base vertex in `H3(F)`.
    pub base: usize,
    /// `M`-coordinates of the fiber element (cover only).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    pub v: [u8; 4],
    pub h: [u8; 4],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub kind: GraphKind,
    pub field: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    /// Empty when read back from an edge list.
    #[serde(default)]
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<(usize, usize)>,
}

impl GraphExport {
    pub fn to_graph(&self) -> SimpleGraph {
        SimpleGraph::from_edges(self.vertex_count, self.edges.iter().copied())
    }

    /// Same header and edges; vertex labels are ignored.
    pub fn same_adjacency(&self, other: &GraphExport) -> bool {
        self.kind == other.kind
            && self.field == other.field
            && self.vertex_count == other.vertex_count
            && self.edges == other.edges
    }
}

fn sorted_edges(edges: impl Iterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    let mut out: Vec<_> = edges.map(|(a, b)| (a.min(b), a.max(b))).collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `H3(F)` with its lexicographic vertex ids.
pub fn base_graph_export<F: Field>(cfg: &CheckConfig) -> Result<GraphExport> {
    let graph = projective_graph::<F>(cfg.cap)?;
    let vertices: Vec<VertexRecord> = (0..graph.order())
        .map(|id| {
            let a = graph.vertex(id);
            VertexRecord {
                id,
                base: id,
                m: None,
                v: a.v.bits(),
                h: a.h.bits(),
            }
        })
        .collect();
    let mut edges = Vec::new();
    for a in 0..graph.order() {
        graph.for_each_neighbor(a, |b| {
            if a < b {
                edges.push((a, b));
            }
        });
    }
    let edges = sorted_edges(edges.into_iter());
    Ok(GraphExport {
        kind: GraphKind::BaseGraph,
        field: F::SPEC.to_string(),
        vertex_count: vertices.len(),
        edge_count: edges.len(),
        vertices,
        edges,
    })
}

/// The component of `(v0, 0)` in the lift of `H3(F)` along `ℓ^U`; limited
/// by `cfg.cap`, so in practice GF(2).
pub fn cover_export<F: Field>(cfg: &CheckConfig) -> Result<GraphExport> {
    let graph = projective_graph::<F>(cfg.cap)?;
    check_component_size(&graph, cfg.cap)?;
    let ell = QuotientVoltage::<F>::new();
    let root = graph.id_of(&base_vertex()).expect("v0 is a vertex");
    let comp = component_of(&ell, &graph, root, NElement::zero(), cfg.cap)?;
    let tree = tree_voltages(&ell, &graph, root);

    let mut labelled = Vec::with_capacity(comp.order());
    for (i, (&b, t)) in comp.base.iter().zip(&comp.tag).enumerate() {
        let offset = *t + tree.voltage[b];
        let m = offset
            .lift()
            .iter()
            .find_map(m_coordinates)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "fiber element above base vertex {b} is not in t_b + M"
                ))
            })?;
        labelled.push(((b, m), i));
    }
    labelled.sort_unstable();
    let mut new_id = vec![0; comp.order()];
    for (id, &(_, i)) in labelled.iter().enumerate() {
        new_id[i] = id;
    }
    let vertices = labelled
        .iter()
        .enumerate()
        .map(|(id, &((b, m), _))| {
            let a = graph.vertex(b);
            VertexRecord {
                id,
                base: b,
                m: Some(m),
                v: a.v.bits(),
                h: a.h.bits(),
            }
        })
        .collect::<Vec<_>>();
    let edges = sorted_edges(comp.graph.edges().map(|(a, b)| (new_id[a], new_id[b])));
    Ok(GraphExport {
        kind: GraphKind::Cover,
        field: F::SPEC.to_string(),
        vertex_count: vertices.len(),
        edge_count: edges.len(),
        vertices,
        edges,
    })
}

/// Serializes `g`; the output depends only on `g`.
pub fn render(g: &GraphExport, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string(g)? + "\n"),
        Format::Edgelist => {
            let mut out = String::with_capacity(12 * g.edges.len() + 128);
            writeln!(out, "# h3cover {}", g.kind.name()).expect("string write");
            writeln!(out, "# field {}", g.field).expect("string write");
            writeln!(out, "# vertices {}", g.vertex_count).expect("string write");
            writeln!(out, "# edges {}", g.edge_count).expect("string write");
            for (a, b) in &g.edges {
                writeln!(out, "{a} {b}").expect("string write");
            }
            Ok(out)
        }
    }
}

fn header_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    line.strip_prefix('#')?
        .trim()
        .strip_prefix(key)
        .map(str::trim)
}

/// Reads either format back; JSON is recognized by its leading `{`.
pub fn parse(text: &str) -> Result<GraphExport> {
    if text.trim_start().starts_with('{') {
        return Ok(serde_json::from_str(text)?);
    }
    let parse_err = |msg: String| Error::Parse(msg);
    let (mut kind, mut field, mut vertices, mut declared) = (None, None, None, None);
    let mut edges = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(k) = header_value(line, "h3cover") {
                kind = Some(match k {
                    "base-graph" => GraphKind::BaseGraph,
                    "cover" => GraphKind::Cover,
                    other => return Err(parse_err(format!("unknown graph kind {other:?}"))),
                });
            } else if let Some(f) = header_value(line, "field") {
                field = Some(f.to_string());
            } else if let Some(v) = header_value(line, "vertices") {
                vertices = Some(
                    v.parse()
                        .map_err(|e| parse_err(format!("line {}: {e}", n + 1)))?,
                );
            } else if let Some(e) = header_value(line, "edges") {
                declared = Some(
                    e.parse::<usize>()
                        .map_err(|e| parse_err(format!("line {}: {e}", n + 1)))?,
                );
            }
            continue;
        }
        let mut parts = line.split_whitespace().map(str::parse::<usize>);
        match (parts.next(), parts.next(), parts.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => edges.push((a, b)),
            _ => {
                return Err(parse_err(format!(
                    "line {}: expected two vertex ids",
                    n + 1
                )))
            }
        }
    }
    let kind = kind.ok_or_else(|| parse_err("missing '# h3cover' header".into()))?;
    let field = field.ok_or_else(|| parse_err("missing '# field' header".into()))?;
    let vertex_count: usize =
        vertices.ok_or_else(|| parse_err("missing '# vertices' header".into()))?;
    if let Some(&(a, b)) = edges
        .iter()
        .find(|&&(a, b)| a.max(b) >= vertex_count || a == b)
    {
        return Err(parse_err(format!(
            "edge {a} {b} is not between two distinct vertices"
        )));
    }
    if declared.is_some_and(|d| d != edges.len()) {
        return Err(parse_err(format!(
            "header declares {} edges, found {}",
            declared.unwrap_or(0),
            edges.len()
        )));
    }
    Ok(GraphExport {
        kind,
        field,
        vertex_count,
        edge_count: edges.len(),
        vertices: Vec::new(),
        edges: sorted_edges(edges.into_iter()),
    })
}
