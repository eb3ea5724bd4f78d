//! Parity-preserving redrawing: one-vertex loop redrawing, even-edge
//! contraction and vertex splitting, and the forest pipeline built on them.

mod contract;
mod lemma1;
mod pipeline;
mod sketch;

pub use contract::{contract_even_edge, split_sketch, split_vertex, SplitRecord};
pub use lemma1::lemma1_redraw;
pub use pipeline::{
    hanani_tutte_embed, max_even_forest, remove_self_crossings, theorem2_transform, ComponentTrace,
    PipelineTrace,
};
pub use sketch::OneVertexSketch;
