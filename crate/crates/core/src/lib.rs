//! Combinatorics of polyomino ideals.
//!
//! Builds the simplicial complex of the initial ideal of a polyomino ideal,
//! computes h-polynomials by several independent routes (step histograms,
//! shelling restrictions, f-vectors and a Hilbert-function oracle), computes
//! rook and switching rook polynomials, and checks the facet/rook
//! correspondence on frame polyominoes.

pub mod cli;
pub mod complex;
pub mod correspondence;
pub mod error;
pub mod explorer;
pub mod families;
pub mod grid;
pub mod ideal;
pub mod poly;
pub mod rooks;
mod util;

pub use error::{Budget, Error, Result};
pub use grid::{Cell, GridInterval, GridPoint, Polyomino};
pub use poly::IntPolynomial;
