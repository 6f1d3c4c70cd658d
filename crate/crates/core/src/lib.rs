//! Odd colorings: verification, exact search, and constructive colorings of
//! minor-closed families and 1-plane graphs.

pub mod coloring;
pub mod corpus;
pub mod discharging;
pub mod embedding;
pub mod error;
pub mod exact;
pub mod graph;
pub mod minor_closed;
pub mod reduction;

pub use coloring::{is_odd_coloring, Color, Coloring};
pub use embedding::{Dart, OnePlaneGraph, VertexKind, Violation};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use reduction::{odd_color_1planar, Thresholds};
