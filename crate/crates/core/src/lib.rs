//! Combinatorial plane drawings, parity-preserving redrawing, and audits
//! against edge-density and odd-crossing bounds.

pub mod bounds;
pub mod drawing;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod parity;
pub mod redraw;
pub mod stats;

pub use drawing::{Dart, DartId, Drawing, Ending, Locus, Node, NodeId, NodeKind, Point, Side, Violation, ViolationKind};
pub use error::{BoundsError, DrawingError, GraphError, IoError, OracleError, RedrawError};
pub use graph::{Edge, EdgeId, Multigraph, VertexId};
pub use parity::{ParityMatrix, ParitySketch};
pub use stats::{CrossingStats, PairCount, PlanarityMode, Rule, Variant};
