//! Exact algebra for circle-valued Morse theory.
//!
//! The crate works over the untwisted Novikov ring `Z((z))` and its mirror
//! `Z((z^-1))`. Everything is exact: coefficients are arbitrary-precision
//! integers and elements of the Novikov ring are only ever materialized as
//! Laurent polynomials, rational functions with denominators in
//! `S = { s in Z[z] : s(0) = 1 }`, or truncated series windows.
//!
//! Module map:
//!
//! * [`rings`]: `Z[z, z^-1]`, `S^-1 Z[z, z^-1]` and truncated `Z((z))` windows.
//! * [`linalg`]: dense matrices, Smith normal form over `Z`, ranks over `Q(z)`
//!   and diagonalization over the Novikov ring.
//! * [`complexes`]: based free chain complexes, chain maps, mapping cones and
//!   integral homology.
//! * [`novikov`]: Novikov homology, Morse–Novikov bounds and the two-sided
//!   vanishing test for finite domination.
//! * [`fundomain`]: algebraic fundamental domains and the algebraic Novikov
//!   complex.
//! * [`models`]: mapping tori, the circle fixture and knot complements.

pub mod complexes;
pub mod error;
pub mod fundomain;
pub mod linalg;
pub mod models;
pub mod novikov;
pub mod rings;

pub use error::{Error, Result};
pub use rings::{Direction, LaurentPoly, RationalFunction, TruncatedSeries};

/// Default number of series terms kept when a window is materialized.
pub const DEFAULT_PRECISION: usize = 32;
