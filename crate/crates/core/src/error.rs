use thiserror::Error;

use crate::discharging::AuditReport;
use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(VertexId, VertexId),

    #[error("vertex {0} does not exist")]
    NotAVertex(VertexId),

    /// The rotation system is not well formed (darts missing, duplicated, or out of order).
    #[error("malformed rotation system: {0}")]
    MalformedRotation(String),

    /// The embedding is well formed but violates a 1-plane invariant.
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("input is not connected")]
    NotConnected,

    #[error("embedding has no edges")]
    EmptyEmbedding,

    #[error("coloring leaves vertex {0} uncolored")]
    PartialColoring(VertexId),

    #[error("color {color} at vertex {vertex} is outside the palette 1..={k}")]
    ColorOutOfRange { vertex: VertexId, color: usize, k: usize },

    #[error("search for an odd {k}-coloring hit the node limit after {nodes} nodes")]
    Inconclusive { k: usize, nodes: u64 },

    #[error("no odd coloring with at most {max_k} colors")]
    AboveMaxK { max_k: usize },

    /// A contraction produced a graph whose minimum degree exceeds the promised degeneracy.
    #[error("graph on {} vertices has minimum degree {min_degree} > {d}", vertices.len())]
    NotDegenerate {
        d: usize,
        min_degree: usize,
        /// Original ids of the vertices merged into the offending graph's vertex set.
        vertices: Vec<VertexId>,
    },

    #[error("graph contains a K4 minor")]
    HasK4Minor,

    #[error("pattern not found: {0}")]
    PatternNotFound(&'static str),

    #[error("no reducible configuration found ({} negative elements in the discharging audit)", .0.entries.len())]
    NoConfigFound(Box<AuditReport>),

    #[error(
        "cannot extend the coloring to vertex {vertex}: forbidden colors {forbidden:?} exhaust the palette of {k}"
    )]
    ExtensionFailed {
        vertex: VertexId,
        k: usize,
        forbidden: Vec<usize>,
    },

    /// A proof-step assertion failed; indicates a bug, never a legal outcome.
    #[error("proof-step assertion failed: {0}")]
    ProofStep(String),

    #[error("palette of {k} colors is below the supported minimum of {min}")]
    PaletteTooSmall { k: usize, min: usize },

    #[error("bad thresholds: {0}")]
    BadThresholds(String),

    #[error("parse error{}: {field}: {msg}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse {
        line: Option<usize>,
        field: String,
        msg: String,
    },

    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),

    #[error("bad generator parameter: {0}")]
    BadParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: Option<usize>, field: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            field: field.into(),
            msg: msg.into(),
        }
    }
}
