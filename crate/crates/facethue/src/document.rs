//! Graph documents.
//!
//! A document is a JSON object with the fields `vertices`, `edges`,
//! `rotations` and optionally `lists`, all 1-based. The canonical form puts
//! one field per line, in that order, with compact arrays:
//!
//! ```text
//! {
//!   "vertices": 3,
//!   "edges": [[1,2],[2,3]],
//!   "rotations": [[1],[1,2],[2]]
//! }
//! ```

use facethue_core::plane_graph::{EdgeId, GraphError, RotationSystem, VertexId};
use facethue_core::{ListAssignment, PlaneGraph};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error at {location}: {source}")]
    Semantic {
        location: String,
        #[source]
        source: GraphError,
    },
    #[error("semantic error at {location}: {message}")]
    Invalid { location: String, message: String },
}

impl DocumentError {
    /// The graph invariant that failed, if this is a semantic error.
    pub fn graph_error(&self) -> Option<&GraphError> {
        match self {
            DocumentError::Semantic { source, .. } => Some(source),
            _ => None,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    vertices: u32,
    edges: Vec<[u32; 2]>,
    rotations: Vec<Vec<u32>>,
    #[serde(default)]
    lists: Option<Vec<Vec<u32>>>,
}

/// A parsed document: the rotation system and the lists, when present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDocument {
    pub rotation: RotationSystem,
    pub lists: Option<Vec<Vec<u32>>>,
}

fn location_of(err: &GraphError) -> String {
    match err {
        GraphError::NoEdges => "edges".into(),
        GraphError::VertexOutOfRange { edge, .. } | GraphError::HasLoop(edge) => {
            format!("edges[{}]", edge.label())
        }
        GraphError::HasParallelEdge { second, .. } => format!("edges[{}]", second.label()),
        GraphError::RotationCount { .. } => "rotations".into(),
        GraphError::ForeignEdgeInRotation { vertex, .. }
        | GraphError::RotationMultiplicity { vertex, .. } => {
            format!("rotations[{}]", vertex.label())
        }
        GraphError::NotConnected(v) => format!("vertex {}", v.label()),
        GraphError::EulerViolation { .. } => "rotations".into(),
    }
}

pub fn parse(text: &str) -> Result<GraphDocument, DocumentError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| DocumentError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;

    let mut edges = Vec::with_capacity(raw.edges.len());
    for (i, [u, v]) in raw.edges.iter().copied().enumerate() {
        if u == 0 || v == 0 {
            return Err(DocumentError::Invalid {
                location: format!("edges[{}]", i + 1),
                message: "vertices are numbered from 1".into(),
            });
        }
        edges.push((VertexId(u - 1), VertexId(v - 1)));
    }
    let mut rotations = Vec::with_capacity(raw.rotations.len());
    for (i, rot) in raw.rotations.iter().enumerate() {
        let mut r = Vec::with_capacity(rot.len());
        for &label in rot {
            r.push(
                EdgeId::from_label(label).ok_or_else(|| DocumentError::Invalid {
                    location: format!("rotations[{}]", i + 1),
                    message: "edges are numbered from 1".into(),
                })?,
            );
        }
        rotations.push(r);
    }
    let rotation = RotationSystem::new(raw.vertices, edges, rotations).map_err(|source| {
        DocumentError::Semantic {
            location: location_of(&source),
            source,
        }
    })?;
    if let Some(lists) = &raw.lists {
        if lists.len() != rotation.edge_count() {
            return Err(DocumentError::Invalid {
                location: "lists".into(),
                message: format!("{} lists for {} edges", lists.len(), rotation.edge_count()),
            });
        }
        ListAssignment::new(lists.clone()).map_err(|e| DocumentError::Invalid {
            location: "lists".into(),
            message: e.to_string(),
        })?;
    }
    Ok(GraphDocument {
        rotation,
        lists: raw.lists,
    })
}

/// Lists as stored in a document, one per edge.
pub type StoredLists = Option<Vec<Vec<u32>>>;

/// Parses and builds the plane graph, reporting Euler violations as
/// semantic errors.
pub fn parse_graph(text: &str) -> Result<(PlaneGraph, StoredLists), DocumentError> {
    let doc = parse(text)?;
    let g = PlaneGraph::build(doc.rotation).map_err(|source| DocumentError::Semantic {
        location: location_of(&source),
        source,
    })?;
    Ok((g, doc.lists))
}

fn array<T, F: Fn(&T) -> String>(items: &[T], f: F) -> String {
    let inner: Vec<String> = items.iter().map(f).collect();
    format!("[{}]", inner.join(","))
}

fn int_array(xs: &[u32]) -> String {
    array(xs, |x| x.to_string())
}

pub fn serialize(rotation: &RotationSystem, lists: Option<&ListAssignment>) -> String {
    let edges = array(rotation.edges(), |(u, v)| {
        format!("[{},{}]", u.label(), v.label())
    });
    let rotations = array(rotation.rotations(), |rot| {
        int_array(&rot.iter().map(|e| e.label()).collect::<Vec<_>>())
    });
    let mut out = format!(
        "{{\n  \"vertices\": {},\n  \"edges\": {},\n  \"rotations\": {}",
        rotation.vertex_count(),
        edges,
        rotations
    );
    if let Some(l) = lists {
        out.push_str(&format!(
            ",\n  \"lists\": {}",
            array(l.lists(), |x| int_array(x))
        ));
    }
    out.push_str("\n}\n");
    out
}
