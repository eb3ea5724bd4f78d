use serde::Serialize;

use super::document::DrawingDocument;
use crate::graph::{EdgeId, VertexId};
use crate::redraw::{ComponentTrace, OneVertexSketch, PipelineTrace, SplitRecord};

/// Serializable view of a [`PipelineTrace`] with every drawing embedded as
/// a [`DrawingDocument`].
#[derive(Clone, Debug, Serialize)]
pub struct TraceDocument {
    pub k: usize,
    pub input: DrawingDocument,
    pub forest: Vec<EdgeId>,
    pub removed: Vec<EdgeId>,
    pub g1: DrawingDocument,
    pub components: Vec<ComponentDocument>,
    pub output: DrawingDocument,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentDocument {
    pub vertices: Vec<VertexId>,
    pub edge_count: usize,
    pub tree: Vec<EdgeId>,
    pub splits: Vec<SplitRecord>,
    pub sketch: OneVertexSketch,
    pub redrawn: DrawingDocument,
}

impl From<&ComponentTrace> for ComponentDocument {
    fn from(c: &ComponentTrace) -> Self {
        ComponentDocument {
            vertices: c.vertices.clone(),
            edge_count: c.edge_count,
            tree: c.tree.clone(),
            splits: c.splits.clone(),
            sketch: c.sketch.clone(),
            redrawn: DrawingDocument::from_drawing(&c.redrawn, None),
        }
    }
}

impl From<&PipelineTrace> for TraceDocument {
    fn from(t: &PipelineTrace) -> Self {
        TraceDocument {
            k: t.k,
            input: DrawingDocument::from_drawing(&t.input, None),
            forest: t.forest.clone(),
            removed: t.removed.clone(),
            g1: DrawingDocument::from_drawing(&t.g1, None),
            components: t.components.iter().map(ComponentDocument::from).collect(),
            output: DrawingDocument::from_drawing(&t.output, None),
        }
    }
}
