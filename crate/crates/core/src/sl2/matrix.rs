use std::fmt;
use std::ops::{Mul, Neg};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use super::scalar::{Scalar, DEFAULT_REL_TOL};
use crate::error::{Error, Result};

/// Relative tolerance on `|det - 1|` accepted by the float backend.
pub const DET_TOL: f64 = 1e-12;

/// Lower-left threshold under which [`factor_uvu`] refuses to factor.
pub const FACTOR_TOL: f64 = 1e-12;

/// A real 2×2 matrix of determinant one, `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat2<S = f64> {
    pub a: S,
    pub b: S,
    pub c: S,
    pub d: S,
}

impl<S: Scalar> Mat2<S> {
    /// Checked constructor: rejects matrices whose determinant is not one.
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self> {
        let m = Self::from_entries(a, b, c, d);
        let det = m.det();
        let scale = m.max_abs().to_f64().powi(2);
        if !(det.clone() - S::one()).is_negligible(scale, DET_TOL) {
            return Err(Error::Domain(format!("determinant {det} is not 1")));
        }
        Ok(m)
    }

    /// Unchecked constructor; the caller guarantees `ad - bc = 1`.
    pub fn from_entries(a: S, b: S, c: S, d: S) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::from_entries(S::one(), S::zero(), S::zero(), S::one())
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    pub fn trace(&self) -> S {
        self.a.clone() + self.d.clone()
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse(&self) -> Self {
        Self::from_entries(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn max_abs(&self) -> S {
        let mut best = self.a.abs();
        for x in [&self.b, &self.c, &self.d] {
            let x = x.abs();
            if x > best {
                best = x;
            }
        }
        best
    }

    pub fn entries(&self) -> [[S; 2]; 2] {
        [
            [self.a.clone(), self.b.clone()],
            [self.c.clone(), self.d.clone()],
        ]
    }

    pub fn to_f64(&self) -> Mat2<f64> {
        Mat2::from_entries(
            self.a.to_f64(),
            self.b.to_f64(),
            self.c.to_f64(),
            self.d.to_f64(),
        )
    }

    pub fn to_array(&self) -> [[f64; 2]; 2] {
        let m = self.to_f64();
        [[m.a, m.b], [m.c, m.d]]
    }

    /// Entrywise comparison relative to the larger matrix scale; exact on rationals.
    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        let scale = self
            .max_abs()
            .to_f64()
            .max(other.max_abs().to_f64())
            .max(1.0);
        let pairs = [
            (&self.a, &other.a),
            (&self.b, &other.b),
            (&self.c, &other.c),
            (&self.d, &other.d),
        ];
        pairs
            .iter()
            .all(|(x, y)| ((*x).clone() - (*y).clone()).is_negligible(scale, tol))
    }

    /// `true` when the matrix equals `+1` or `-1`.
    pub fn is_plus_minus_identity(&self, tol: f64) -> bool {
        ProjMat::new(self.clone()).close_to(&ProjMat::identity(), tol)
    }

    /// Product of a sequence of matrices, composed left to right.
    pub fn product<'a, I>(factors: I) -> Self
    where
        I: IntoIterator<Item = &'a Mat2<S>>,
    {
        factors
            .into_iter()
            .fold(Self::identity(), |acc, m| &acc * m)
    }
}

impl<S: Scalar> Mul for &Mat2<S> {
    type Output = Mat2<S>;

    fn mul(self, rhs: &Mat2<S>) -> Mat2<S> {
        Mat2::from_entries(
            self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.c.clone(),
            self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.d.clone(),
            self.c.clone() * rhs.a.clone() + self.d.clone() * rhs.c.clone(),
            self.c.clone() * rhs.b.clone() + self.d.clone() * rhs.d.clone(),
        )
    }
}

impl<S: Scalar> Mul for Mat2<S> {
    type Output = Mat2<S>;

    fn mul(self, rhs: Mat2<S>) -> Mat2<S> {
        &self * &rhs
    }
}

impl<S: Scalar> Neg for Mat2<S> {
    type Output = Mat2<S>;

    fn neg(self) -> Mat2<S> {
        Mat2::from_entries(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<S: Scalar> fmt::Display for Mat2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Row-major `[[a, b], [c, d]]`.
impl<S: Scalar> Serialize for Mat2<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        let rows = self.to_array();
        let mut seq = serializer.serialize_seq(Some(2))?;
        seq.serialize_element(&rows[0])?;
        seq.serialize_element(&rows[1])?;
        seq.end()
    }
}

/// An element of `PSL(2,R)`: a [`Mat2`] representative up to global sign.
#[derive(Clone, Debug)]
pub struct ProjMat<S = f64>(Mat2<S>);

impl<S: Scalar> ProjMat<S> {
    pub fn new(representative: Mat2<S>) -> Self {
        Self(representative)
    }

    pub fn identity() -> Self {
        Self(Mat2::identity())
    }

    pub fn representative(&self) -> &Mat2<S> {
        &self.0
    }

    pub fn into_representative(self) -> Mat2<S> {
        self.0
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    /// Equality up to sign of the representatives.
    pub fn close_to(&self, other: &Self, tol: f64) -> bool {
        self.0.close_to(&other.0, tol) || self.0.close_to(&-other.0.clone(), tol)
    }

    /// Representative with strictly positive lower-left entry, if `c != 0`.
    pub fn positive_c_representative(&self) -> Option<Mat2<S>> {
        let c = &self.0.c;
        if *c > S::zero() {
            Some(self.0.clone())
        } else if *c < S::zero() {
            Some(-self.0.clone())
        } else {
            None
        }
    }
}

impl<S: Scalar> PartialEq for ProjMat<S> {
    fn eq(&self, other: &Self) -> bool {
        self.close_to(other, DEFAULT_REL_TOL)
    }
}

impl<S: Scalar> Mul for &ProjMat<S> {
    type Output = ProjMat<S>;

    fn mul(self, rhs: &ProjMat<S>) -> ProjMat<S> {
        ProjMat(&self.0 * &rhs.0)
    }
}

impl<S: Scalar> Serialize for ProjMat<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.0.serialize(serializer)
    }
}

/// `u(x) = [[1, x], [0, 1]]`.
pub fn gen_u<S: Scalar>(x: S) -> Mat2<S> {
    Mat2::from_entries(S::one(), x, S::zero(), S::one())
}

/// `v(x) = [[1, 0], [x, 1]]`.
pub fn gen_v<S: Scalar>(x: S) -> Mat2<S> {
    Mat2::from_entries(S::one(), S::zero(), x, S::one())
}

/// `w(e) = [[0, -1/e], [e, 0]]`, defined for `e > 0`.
pub fn gen_w<S: Scalar>(e: S) -> Result<Mat2<S>> {
    if !e.is_positive() {
        return Err(Error::Domain(format!("w(e) needs e > 0, got {e}")));
    }
    Ok(Mat2::from_entries(S::zero(), -e.recip(), e, S::zero()))
}

/// The unique `(x, y, z)` with `g = u(x) v(y) u(z)`; requires `c(g) != 0`.
pub fn factor_uvu<S: Scalar>(g: &Mat2<S>) -> Result<(S, S, S)> {
    factor_uvu_with_tol(g, FACTOR_TOL)
}

pub fn factor_uvu_with_tol<S: Scalar>(g: &Mat2<S>, tol: f64) -> Result<(S, S, S)> {
    if g.c.abs().is_negligible(1.0, tol) || g.c == S::zero() {
        return Err(Error::NotFactorizable { c: g.c.to_f64() });
    }
    let x = (g.a.clone() - S::one()) / g.c.clone();
    let y = g.c.clone();
    let z = (g.d.clone() - S::one()) / g.c.clone();
    Ok((x, y, z))
}

/// Tolerance on `|trace| - 2` below which an element counts as non-hyperbolic.
pub const HYPERBOLIC_TOL: f64 = 1e-9;

/// Translation length `2 arccosh(|tr| / 2)` of a hyperbolic element.
pub fn translation_length(g: &ProjMat<f64>) -> Result<f64> {
    let trace = g.representative().trace().abs();
    if trace <= 2.0 + HYPERBOLIC_TOL {
        return Err(Error::NotHyperbolic { trace });
    }
    Ok(2.0 * (trace / 2.0).acosh())
}
