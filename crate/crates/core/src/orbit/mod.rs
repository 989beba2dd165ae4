//! Geometric and lattice actions driven together.

mod bfs;
mod iterate;
mod word;

pub use bfs::{orbit_bfs, OrbitEdge, OrbitGraph, OrbitLimits, OrbitNode, ParentEdge, SkippedMove};
pub use iterate::{
    consistency_check, lemma3_iterate, tracked_start, IterateOptions, IterationError, IterationReport, StepRecord,
    TRACKED_PLANE,
};
pub use word::{apply_word, CremonaWord, Move};
