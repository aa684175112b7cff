//! Points where the λ-length of a curve vanishes.
//!
//! The curve is the one crossing the quadrilateral of an edge `alpha`
//! transversally; its λ-length is the value the flipped edge would get.
//! With `t` the negative triangle containing `alpha` and the sides of the
//! quadrilateral labelled as in [`crate::combinatorics::Quadrilateral`],
//! the vanishing locus is parametrized by `x` in `(0, 1)` and the values
//! off `t`. The curve holonomy then has eigenvalues `x^{±1}`, so its
//! geodesic length is `-2 ln x`.

mod length;
mod zero_locus;

pub use length::{length_from_x, x_from_length};
pub use zero_locus::{
    alpha_holonomy_check, curve_word, fiber_equivalent, free_edges, CurveCheck, FiberCheck,
    LCoordinates, SideRelation, ZeroLocusPoint,
};
