//! Lambda-length coordinates on decorated Teichmüller spaces of closed
//! oriented surfaces of genus at least two.
//!
//! The crate is organised bottom-up:
//!
//! * [`combinatorics`]: one-vertex triangulations as half-edge maps, flips,
//!   the truncated complex and loop words.
//! * [`sl2`]: unimodular 2×2 matrices over a float or exact-rational scalar,
//!   the `u`/`v`/`w` generators, factorizations and horocycles.
//! * [`lifting`]: winding integers of loops in `PSL(2,R)` assembled from
//!   canonical lifts of `u`/`v` segments.
//! * [`teich`]: holonomy representations built from edge coordinates and
//!   triangle signs, Euler numbers, coordinate recovery and signed Ptolemy flips.
//! * [`curves`]: points on which the λ-length of a curve vanishes, and their
//!   geodesic-length coordinates.

pub mod combinatorics;
pub mod curves;
pub mod error;
pub mod lifting;
pub mod sl2;
pub mod teich;

pub use error::{Error, Result};
