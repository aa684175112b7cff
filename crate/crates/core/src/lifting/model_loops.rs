//! The three model loops: the edge loop, the tetrahedron relation and the
//! hexagon relation, with their solvers.

use super::winding::{winding, LiftClass};
use super::word::{Atom, GeneratorWord};
use crate::error::{Error, Result};
use crate::sl2::{star_triangle, Mat2, ProjMat, Scalar, Sign};

/// `[V(-x) U(2/x)]` repeated twice; a loop of class 1 for every `x != 0`.
pub fn edge_model_word<S: Scalar>(x: S) -> GeneratorWord<S> {
    let v = Atom::V(-x.clone());
    let u = Atom::U(S::from_i64(2) / x);
    GeneratorWord::new(vec![v.clone(), u.clone(), v, u])
}

/// Positive `(x1', x2', x3')` with `v(x1) u(x2) v(x3) = u(x1') v(x2') u(x3')`.
pub fn solve_tetr<S: Scalar>(x: &[S; 3]) -> Result<[S; 3]> {
    let (a, b, c) = star_triangle(x[0].clone(), x[1].clone(), x[2].clone())?;
    Ok([c, b, a])
}

/// `V(x1) U(x2) V(x3) U(-x3') V(-x2') U(-x1')`.
pub fn tetrahedron_word<S: Scalar>(x: &[S; 3], primed: &[S; 3]) -> GeneratorWord<S> {
    GeneratorWord::new(vec![
        Atom::V(x[0].clone()),
        Atom::U(x[1].clone()),
        Atom::V(x[2].clone()),
        Atom::U(-primed[2].clone()),
        Atom::V(-primed[1].clone()),
        Atom::U(-primed[0].clone()),
    ])
}

/// `V(x1) U(-y3) V(x2) U(-y1) V(x3) U(-y2)`.
pub fn hexagon_word<S: Scalar>(x: &[S; 3], bar: &[S; 3]) -> GeneratorWord<S> {
    GeneratorWord::new(vec![
        Atom::V(x[0].clone()),
        Atom::U(-bar[2].clone()),
        Atom::V(x[1].clone()),
        Atom::U(-bar[0].clone()),
        Atom::V(x[2].clone()),
        Atom::U(-bar[1].clone()),
    ])
}

/// Closed-form hexagon solution `y_i = (x_j + x_k + ε x_i) / (x_j x_k)`.
fn hex_closed_form<S: Scalar>(x: &[S; 3], eps: Sign) -> [S; 3] {
    let term = |i: usize, j: usize, k: usize| {
        (x[j].clone() + x[k].clone() + eps.apply(x[i].clone())) / (x[j].clone() * x[k].clone())
    };
    [term(0, 1, 2), term(1, 0, 2), term(2, 0, 1)]
}

/// The triple `y` for which the hexagon word has endpoint `ε`. The closed
/// form is checked against the matrix product before it is returned.
pub fn solve_hex<S: Scalar>(x: &[S; 3], eps: Sign) -> Result<[S; 3]> {
    if !x.iter().all(Scalar::is_positive) {
        return Err(Error::Domain(format!(
            "hexagon solver needs positive arguments, got ({}, {}, {})",
            x[0], x[1], x[2]
        )));
    }
    let bar = hex_closed_form(x, eps);
    let product = hexagon_word(x, &bar).product();
    let target = Mat2::identity();
    let target = match eps {
        Sign::Plus => target,
        Sign::Minus => -target,
    };
    if !product.close_to(&target, 1e-9) {
        return Err(Error::InternalAssertion(format!(
            "hexagon product is {product}, expected {target}"
        )));
    }
    Ok(bar)
}

/// Class of the loop `ω` expected for the hexagon with sign `ε`.
pub fn hexagon_expected_class(eps: Sign) -> i64 {
    -(3 + eps.to_i8() as i64) / 2
}

pub fn edge_loop_class<S: Scalar>(x: S) -> Result<LiftClass> {
    winding(&edge_model_word(x))
}

pub fn tetrahedron_loop_class<S: Scalar>(x: &[S; 3]) -> Result<LiftClass> {
    let primed = solve_tetr(x)?;
    let word = tetrahedron_word(x, &primed);
    if !ProjMat::new(word.product()).close_to(&ProjMat::identity(), 1e-9) {
        return Err(Error::InternalAssertion("tetrahedron word is not a loop".into()));
    }
    winding(&word)
}

pub fn hexagon_loop_class<S: Scalar>(x: &[S; 3], eps: Sign) -> Result<LiftClass> {
    let bar = solve_hex(x, eps)?;
    winding(&hexagon_word(x, &bar))
}

/// The four regimes distinguished for hexagon loops.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HexRegime {
    /// `x_i < x_j + x_k` for all `i`, not all equal.
    Strict,
    /// Some `x_i > x_j + x_k`.
    Violated,
    /// Some `x_i = x_j + x_k`.
    Degenerate,
    Equilateral,
}

pub fn hex_regime<S: Scalar>(x: &[S; 3]) -> HexRegime {
    if x[0] == x[1] && x[1] == x[2] {
        return HexRegime::Equilateral;
    }
    let mut regime = HexRegime::Strict;
    for (i, j, k) in [(0, 1, 2), (1, 0, 2), (2, 0, 1)] {
        let rest = x[j].clone() + x[k].clone();
        if x[i] == rest {
            return HexRegime::Degenerate;
        }
        if x[i] > rest {
            regime = HexRegime::Violated;
        }
    }
    regime
}
