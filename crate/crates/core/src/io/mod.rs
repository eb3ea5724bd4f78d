//! Versioned JSON documents for drawings and reports, and SVG rendering.

mod document;
mod report;
mod svg;

pub use document::{
    parse_drawing, serialize_drawing, to_canonical_json, DrawingDocument, EdgeEntry, GraphSection, MapSection, Meta,
    NodeEntry, NodeTag, PathEntry, FORMAT, VERSION,
};
pub use report::{ComponentDocument, TraceDocument};
pub use svg::{layout, render_svg, Layout, LayoutMethod, Pos, RenderOptions};
