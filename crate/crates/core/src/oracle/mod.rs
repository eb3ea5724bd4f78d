//! Ground truth at small scale: exhaustive drawing enumeration, exact
//! crossing-number values, seeded drawing generators and a local search for
//! dense k-odd-plane drawings.

mod enumerate;
mod exact;
mod generate;
mod search;

pub use enumerate::{enumerate_drawings, for_each_drawing, Enumeration, EnumerationBudget};
pub use exact::{exact_crossing_value, OracleValue};
pub use generate::{
    convex_drawing, k_odd_plane_drawing, perturb_even, planar_drawing, random_drawing, random_graph,
    random_planar_drawing, replay_moves, DrawingModel, FingerMove,
};
pub use search::{extremal_search, SearchBudget, SearchResult, SearchStats};
