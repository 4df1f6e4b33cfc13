//! Binomial edge ideals `I(X_G)` of simple graphs over prime fields.
//!
//! The crate builds the ideal from a graph, computes a reduced Groebner
//! basis by elimination, and derives the Hilbert function, degree and
//! Castelnuovo–Mumford regularity from it. Independently it computes the
//! combinatorial invariants that the regularity is compared against: the
//! maximum join size `mu(G)`, the minimum number of even ears `phi(G)` and
//! the even-ear count of nested ear decompositions.

pub mod algebra;
pub mod combinatorics;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod groebner;
pub mod invariants;
pub mod verify;

pub use error::{Error, Result, ValidationError};
pub use graph::{Edge, Graph, Vertex};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/ideal.md")]
    mod ideal {}
    #[doc = include_str!("../../../book/src/regularity.md")]
    mod regularity {}
    #[doc = include_str!("../../../book/src/joins.md")]
    mod joins {}
    #[doc = include_str!("../../../book/src/ears.md")]
    mod ears {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
