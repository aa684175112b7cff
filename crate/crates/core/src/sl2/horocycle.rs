//! Horocycles as nonzero vectors up to sign, and the λ-distance between them.
//!
//! The vector `(1, 0)` is the horocycle based at `∞` through `i`; the group
//! acts linearly on vectors and by Möbius maps on the upper half-plane. The
//! λ-distance of two horocycles is `|det(v1, v2)|`. The [`oracle`] submodule
//! recomputes it from upper half-plane geometry alone.

use super::matrix::ProjMat;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct Horocycle {
    v: [f64; 2],
}

impl Horocycle {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        if x == 0.0 && y == 0.0 {
            return Err(Error::Domain("horocycle vector must be nonzero".into()));
        }
        Ok(Self { v: [x, y] })
    }

    /// The horocycle based at `∞` and passing through `i`.
    pub fn base() -> Self {
        Self { v: [1.0, 0.0] }
    }

    pub fn vector(&self) -> [f64; 2] {
        self.v
    }

    /// Base point on `RP^1`: `x / y`, or `∞` when `y = 0`.
    pub fn base_point(&self) -> BoundaryPoint {
        if self.v[1] == 0.0 {
            BoundaryPoint::Infinity
        } else {
            BoundaryPoint::Real(self.v[0] / self.v[1])
        }
    }

    /// Matrix-vector product with a sign representative.
    pub fn apply(&self, g: &ProjMat<f64>) -> Horocycle {
        let m = g.representative();
        Horocycle {
            v: [
                m.a * self.v[0] + m.b * self.v[1],
                m.c * self.v[0] + m.d * self.v[1],
            ],
        }
    }

    /// Equality up to sign.
    pub fn close_to(&self, other: &Horocycle, tol: f64) -> bool {
        let scale = self.v.iter().chain(other.v.iter()).fold(1.0f64, |m, x| m.max(x.abs()));
        let same = (0..2).all(|i| (self.v[i] - other.v[i]).abs() <= tol * scale);
        let opposite = (0..2).all(|i| (self.v[i] + other.v[i]).abs() <= tol * scale);
        same || opposite
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryPoint {
    Infinity,
    Real(f64),
}

/// `|det(v(h1), v(h2))|`; zero exactly when the base points coincide.
pub fn lambda_distance(h1: &Horocycle, h2: &Horocycle) -> f64 {
    (h1.v[0] * h2.v[1] - h1.v[1] * h2.v[0]).abs()
}

pub fn apply(g: &ProjMat<f64>, h: &Horocycle) -> Horocycle {
    h.apply(g)
}

pub mod oracle {
    //! Upper half-plane geometry of horocycles, independent of the vector model.

    use super::{BoundaryPoint, Horocycle};
    use crate::error::{Error, Result};

    type C = (f64, f64);

    /// A horocycle in the upper half-plane: base point and Euclidean size
    /// (height of the line for base `∞`, diameter of the circle otherwise).
    #[derive(Clone, Copy, Debug)]
    pub struct UhpHorocycle {
        pub base: BoundaryPoint,
        pub size: f64,
    }

    fn mobius(m: [[f64; 2]; 2], z: C) -> C {
        // (a z + b) / (c z + d)
        let num = (m[0][0] * z.0 + m[0][1], m[0][0] * z.1);
        let den = (m[1][0] * z.0 + m[1][1], m[1][0] * z.1);
        let norm = den.0 * den.0 + den.1 * den.1;
        (
            (num.0 * den.0 + num.1 * den.1) / norm,
            (num.1 * den.0 - num.0 * den.1) / norm,
        )
    }

    /// Circle through three points: (center, radius).
    fn circumcircle(p: C, q: C, r: C) -> (C, f64) {
        let d = 2.0 * (p.0 * (q.1 - r.1) + q.0 * (r.1 - p.1) + r.0 * (p.1 - q.1));
        let n = |z: C| z.0 * z.0 + z.1 * z.1;
        let ux = (n(p) * (q.1 - r.1) + n(q) * (r.1 - p.1) + n(r) * (p.1 - q.1)) / d;
        let uy = (n(p) * (r.0 - q.0) + n(q) * (p.0 - r.0) + n(r) * (q.0 - p.0)) / d;
        let radius = ((p.0 - ux).powi(2) + (p.1 - uy).powi(2)).sqrt();
        ((ux, uy), radius)
    }

    fn points_on(h: &UhpHorocycle) -> [C; 3] {
        match h.base {
            BoundaryPoint::Infinity => [(-1.0, h.size), (0.0, h.size), (1.0, h.size)],
            BoundaryPoint::Real(p) => {
                let r = h.size / 2.0;
                [(p + r, r), (p, 2.0 * r), (p - r, r)]
            }
        }
    }

    /// Image of a horocycle under the Möbius map of `m`, rebuilt from three
    /// mapped points. The image must not be based at `∞`.
    fn image_circle(m: [[f64; 2]; 2], h: &UhpHorocycle) -> UhpHorocycle {
        let [p, q, r] = points_on(h).map(|z| mobius(m, z));
        let (center, radius) = circumcircle(p, q, r);
        UhpHorocycle {
            base: BoundaryPoint::Real(center.0),
            size: 2.0 * radius,
        }
    }

    impl UhpHorocycle {
        /// Geometric horocycle of a vector `v`: the image of `{Im z = 1}` under a
        /// Möbius map whose matrix has first column `v`.
        pub fn from_vector(h: &Horocycle) -> UhpHorocycle {
            let [a, c] = h.vector();
            if c == 0.0 {
                // diag(a, 1/a) maps Im z = 1 to Im z = a^2.
                let image = mobius([[a, 0.0], [0.0, 1.0 / a]], (0.0, 1.0));
                return UhpHorocycle {
                    base: BoundaryPoint::Infinity,
                    size: image.1,
                };
            }
            let m = if a != 0.0 {
                [[a, 0.0], [c, 1.0 / a]]
            } else {
                [[0.0, -1.0 / c], [c, 0.0]]
            };
            let base = UhpHorocycle {
                base: BoundaryPoint::Infinity,
                size: 1.0,
            };
            image_circle(m, &base)
        }
    }

    /// Horocyclic length between the tangency points of a horocycle tangent to
    /// both `h1` and `h2` (distinct base points).
    pub fn lambda_geometric_oracle(h1: &UhpHorocycle, h2: &UhpHorocycle) -> Result<f64> {
        match (h1.base, h2.base) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Err(Error::Domain(
                "both horocycles are based at ∞".into(),
            )),
            (BoundaryPoint::Infinity, BoundaryPoint::Real(p)) => {
                Ok(from_infinity(h1.size, p, h2.size))
            }
            (BoundaryPoint::Real(_), BoundaryPoint::Infinity) => {
                lambda_geometric_oracle(h2, h1)
            }
            (BoundaryPoint::Real(p1), BoundaryPoint::Real(p2)) => {
                if (p1 - p2).abs() <= 1e-15 * p1.abs().max(p2.abs()).max(1.0) {
                    return Err(Error::Domain("horocycles share a base point".into()));
                }
                // z -> -1 / (z - p1) is an isometry sending p1 to ∞.
                let m = [[0.0, -1.0], [1.0, -p1]];
                let height = mobius(m, (p1, h1.size)).1;
                let second = image_circle(m, h2);
                match second.base {
                    BoundaryPoint::Real(q) => Ok(from_infinity(height, q, second.size)),
                    BoundaryPoint::Infinity => unreachable!("image circle has a real base"),
                }
            }
        }
    }

    /// Line `Im z = height` against the circle at `p` of diameter `diameter`.
    fn from_infinity(height: f64, p: f64, diameter: f64) -> f64 {
        // The tangent horocycle has diameter `height` (it touches the line from
        // below) and base q with (q - p)^2 = height * diameter.
        let q = p + (height * diameter).sqrt();
        let c1 = (p, diameter / 2.0);
        let c2 = (q, height / 2.0);
        let dist = ((c2.0 - c1.0).powi(2) + (c2.1 - c1.1).powi(2)).sqrt();
        let t_circle = (
            c1.0 + diameter / 2.0 * (c2.0 - c1.0) / dist,
            c1.1 + diameter / 2.0 * (c2.1 - c1.1) / dist,
        );
        let t_line = (q, height);
        // z -> -1 / (z - q) flattens the tangent horocycle to Im w = 1 / height,
        // where horocyclic length is |Δ Re w| / Im w.
        let m = [[0.0, -1.0], [1.0, -q]];
        let w1 = mobius(m, t_line);
        let w2 = mobius(m, t_circle);
        (w1.0 - w2.0).abs() * height
    }
}
