//! Book (p-page) and cylindrical drawing models with exact crossing counts.
//!
//! Both models are purely combinatorial. A book drawing is a spine order
//! plus a page per edge. A cylindrical drawing places every vertex on one of
//! two circles and routes every edge through the inner disk, the outer disk,
//! or the annulus with an integer winding. Counting never looks at
//! coordinates.

mod book;
mod cylindrical;
mod planarize;
pub mod strip;

use alloc::vec::Vec;

pub use book::{book_crossings, BookDrawing};
pub use cylindrical::{cyl_crossings, validate_cylindrical, CylindricalDrawing, Route, Side};
pub use planarize::{book_to_certificate, cylindrical_to_certificate, BookPiece};
pub use strip::{strip_pair_crossings, StripLift, StripPoint};

use crate::graph::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DrawingError {
    #[error("vertex order is not a permutation of the graph's vertices (offending vertex {0})")]
    NotPermutation(Vertex),
    #[error("expected {expected} per-edge entries, got {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("page count must be at least 1")]
    NoPages,
    #[error("edge {u}-{v} is on page {page}, outside 1..={p}")]
    PageOutOfRange {
        u: Vertex,
        v: Vertex,
        page: usize,
        p: usize,
    },
    #[error("edge {u}-{v} cannot be routed through {route}")]
    IllegalRoute { u: Vertex, v: Vertex, route: Route },
    #[error("annulus edge {u}-{v} crosses itself")]
    SelfCrossing { u: Vertex, v: Vertex },
    #[error("adjacent annulus edges {e:?} and {f:?} are forced to cross")]
    AdjacentCrossing {
        e: (Vertex, Vertex),
        f: (Vertex, Vertex),
    },
    #[error("only drawings on at most two pages are plane drawings (got {0} pages)")]
    NotPlane(usize),
    #[error("could not find generic positions for the planarization")]
    Degenerate,
}

/// Whether chords `(a, b)` and `(c, d)` interleave on a circle, given the
/// positions of their endpoints. Chords sharing an endpoint never do.
#[inline]
pub(crate) fn chords_interleave(a: usize, b: usize, c: usize, d: usize) -> bool {
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let inside = |x: usize| a < x && x < b;
    inside(c) != inside(d)
}

/// Inverse of a vertex order; `None` if `order` is not a permutation of
/// `0..n`.
pub(crate) fn positions(order: &[Vertex], n: usize) -> Result<Vec<usize>, DrawingError> {
    let mut pos = alloc::vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || pos[v] != usize::MAX {
            return Err(DrawingError::NotPermutation(v));
        }
        pos[v] = i;
    }
    if let Some(v) = pos.iter().position(|&p| p == usize::MAX) {
        return Err(DrawingError::NotPermutation(v));
    }
    Ok(pos)
}
