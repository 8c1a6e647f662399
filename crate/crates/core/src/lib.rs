//! Extremal graphs with no k+1 vertex-disjoint triangles.
//!
//! Everything here is exact integer work on small dense graphs: the four
//! extremal families and their edge counts, exact and local-search triangle
//! packing, the six-part decomposition with its inequality audit, and the
//! profile functions whose maxima bound the edge count.
//!
//! The crate is `no_std` and only needs `alloc`.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bounds;
pub mod decomposition;
mod error;
pub mod extremal;
pub mod graph;
pub mod packing;

pub use error::{Error, Result};
pub use graph::{build_graph, Graph, Matching, Triangle, VertexSet};

/// Binomial coefficient C(x, 2) over signed integers.
#[inline]
pub const fn choose2(x: i64) -> i64 {
    x * (x - 1) / 2
}

/// Binomial coefficient C(x, 3) over signed integers.
#[inline]
pub const fn choose3(x: i64) -> i64 {
    x * (x - 1) * (x - 2) / 6
}
