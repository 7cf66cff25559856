//! Exact spectral computations for matrices of the form `qD + A`.
//!
//! The crate computes characteristic polynomials of `L_q = qD + A` (and of
//! vertex-deleted principal submatrices) in exact rational arithmetic, and
//! uses them to decide when two coalescent pairs `(H, B)` stay cospectral no
//! matter which rooted graph is glued onto every vertex of `B`.

pub mod coalescing;
pub mod complement;
pub mod error;
pub mod exactmath;
pub mod graph;
pub mod search;
pub mod spectral;

pub use error::{Error, Result};
pub use exactmath::{Polynomial, Rational, RationalMatrix};
pub use graph::{CoalescentPair, Graph, RootedGraph, VertexSet};
