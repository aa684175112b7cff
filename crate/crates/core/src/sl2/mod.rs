//! `SL(2,R)` kernel: matrices over a generic scalar, the `u`/`v`/`w`
//! generators, the `u v u` factorization, the star-triangle map and the
//! horocycle model of decorations.

mod horocycle;
mod matrix;
mod scalar;
mod sign;
mod star;

pub use horocycle::{apply, lambda_distance, oracle, BoundaryPoint, Horocycle};
pub use matrix::{
    factor_uvu, factor_uvu_with_tol, gen_u, gen_v, gen_w, translation_length, Mat2, ProjMat,
    DET_TOL, FACTOR_TOL, HYPERBOLIC_TOL,
};
pub use scalar::{parse_rational, rational_from_f64, Rational, Scalar, DEFAULT_REL_TOL};
pub use sign::Sign;
pub use star::{apply_r, star_triangle, tetrahedron_sides};
