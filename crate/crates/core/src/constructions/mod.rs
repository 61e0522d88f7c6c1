//! Graph families, gadgets and drawings built by hand.

mod hill;
mod minimal;
mod reduction;
mod stacked;

use alloc::string::String;

pub use hill::hill_drawing;
pub use minimal::{minimal_tcurve_triangulation, MinimalTriangulation};
pub use reduction::{
    compose_reduction_drawing, k33_book_drawing, reduction_instance, ReductionInstance, Role,
};
pub use stacked::{stacked_triangulation, EmbeddedTriangulation, MAX_STACKING_ROUNDS};

use crate::cert::Reject;
use crate::drawing::DrawingError;
use crate::solvers::EmbedError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("construction self-check failed: {found} crossings, expected {expected}")]
    SelfCheck { found: usize, expected: usize },
    #[error("budget exhausted; {0}")]
    Budget(String),
    #[error("drawing has {0} crossings; a crossing-free drawing is required")]
    HasCrossings(usize),
    #[error("drawing uses {0} pages; at most 2 are allowed")]
    PageCount(usize),
    #[error("built object fails a required property: {0}")]
    Property(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
    #[error("certificate rejected: {0}")]
    Reject(#[from] Reject),
}

/// ¼⌊n/2⌋⌊(n−1)/2⌋⌊(n−2)/2⌋⌊(n−3)/2⌋, with factors clamped at zero.
pub fn z_number(n: usize) -> u64 {
    let f = |k: usize| (n.saturating_sub(k) / 2) as u64;
    f(0) * f(1) * f(2) * f(3) / 4
}
