//! Exact combinatorial toolkit for t-circle (cylindrical) and book crossing
//! numbers.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs: graphs, rotation systems, drawings and
//! certificates are plain values, and every exponential search takes a
//! [`Budget`] so callers decide how long they are willing to wait.
//!
//! * [`graph`] holds the graph type, named families and small exact queries.
//! * [`map`] and [`cert`] hold combinatorial maps and t-curve certificates.
//! * [`drawing`] holds the book and cylindrical drawing models.
//! * [`solvers`] holds the exact branch-and-bound and embeddability searches.
//! * [`constructions`] builds the triangulation families, Hill drawings and
//!   reduction instances.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod budget;
pub mod builder;
pub mod cert;
pub mod constructions;
pub mod drawing;
pub mod graph;
pub mod map;
pub mod solvers;

pub use budget::{Budget, NodeLimit, Outcome, Unlimited};
pub use cert::{CurveCover, Reject, TCurveCertificate};
pub use drawing::{BookDrawing, CylindricalDrawing, Route};
pub use graph::Graph;
pub use map::RotationMap;
