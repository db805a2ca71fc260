//! Structural analysis of generations: Moore clusters, covering rectangles
//! and their iterative merging, robust/eternal set verification, and the
//! closed-form probability and time bounds.

mod bounds;
mod clusters;
mod rectangles;
mod sets;

pub use bounds::{consensus_time_bound, survival_bound, threshold_values, BoundReport, SurvivalKind};
pub use clusters::{color_components, moore_clusters, ClusterReport};
pub use rectangles::{
    component_rectangles, rectangle_distance, rectangulate, smallest_covering_rectangle, Rectangle,
};
pub use sets::{is_eternal_set, is_robust_set, parse_pattern};

use thiserror::Error;

use crate::dynamics::DynamicsError;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("operation requires a lattice topology")]
    NotALattice,
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("rule `{0}` is not supported by this operation")]
    UnsupportedRule(crate::dynamics::RuleKind),
    #[error(
        "instance too large: {outside} vertices outside the set exceed the \
         exhaustive-verification cap of {cap}"
    )]
    InstanceTooLarge { outside: usize, cap: usize },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("azuma bound requires the per-vertex multiplicity list")]
    MissingMultiplicities,
    #[error("thresholds not established for the biased model with Moore neighborhood")]
    ThresholdsNotEstablished,
    #[error("invalid rectangle: {0}")]
    InvalidRectangle(String),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}
