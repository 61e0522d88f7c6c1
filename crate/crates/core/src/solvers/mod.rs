//! Exact searches: p-page and cylindrical crossing numbers, t-curve
//! embeddability of plane maps, and the curve-cover refuter.

mod book;
mod cover;
mod cylindrical;
mod embed;

pub use book::{book_crossing_number, is_two_page_embeddable, two_page_embedding};
pub use cover::{curve_cover_filter, CoverError};
pub use cylindrical::{
    cylindrical_crossing_number, BranchOutcome, BranchRunner, CylindricalSearch, Sequential,
};
pub use embed::{t_curve_embeddable, EmbedError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SolveStatus {
    /// The search space under the stated caps was exhausted.
    Optimal,
    /// The budget ran out; `value` is the best incumbent found.
    Timeout,
    /// No drawing exists under the caps.
    Infeasible,
    /// Raising the winding cap by one changed the optimum.
    Unstable,
}

impl core::fmt::Display for SolveStatus {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::Timeout => "timeout",
            SolveStatus::Infeasible => "infeasible",
            SolveStatus::Unstable => "unstable",
        })
    }
}

/// Result of an optimization. `witness` always recounts to `value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult<W> {
    pub status: SolveStatus,
    pub value: Option<usize>,
    pub witness: Option<W>,
    pub explored: u64,
    /// Largest winding cap searched (cylindrical only).
    pub winding_cap_used: Option<i64>,
}
