//! Homotopy classes of loops in `PSL(2,R)` assembled from `u`/`v` segments.
//!
//! A loop is tracked through its action on a direction in `R^2`. The class
//! `n` counts half-turns of that direction, negated so that the clockwise
//! loop `t -> rot(-π t)` has class 1.

mod model_loops;
mod winding;
mod word;

pub use model_loops::{
    hex_regime, edge_model_word, tetrahedron_word, hexagon_expected_class, hexagon_word, solve_hex, solve_tetr,
    edge_loop_class, tetrahedron_loop_class, hexagon_loop_class, HexRegime,
};
pub use winding::{sweep, winding, winding_with, LiftClass, WindingOptions};
pub use word::{Atom, GeneratorWord};
