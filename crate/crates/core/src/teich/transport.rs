use serde::Serialize;

use super::point::CoordinatePoint;
use crate::combinatorics::{
    edge_loop_word, EdgeRef, EdgeWord, HalfEdge, Step, TriangleRef, Triangulation, BASE_CORNER,
};
use crate::error::{Error, Result};
use crate::sl2::{gen_u, gen_w, Horocycle, Mat2, ProjMat, Scalar};

/// Transports along the edges of the truncated complex.
///
/// `long[h]` carries `v(h)` to `v(opp h)` and `short[h]` carries `v(h)` to
/// `v(sigma h)`. Paths compose left to right: the holonomy of `s1 s2` is
/// `T(s1) T(s2)`.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "S: Scalar")]
pub struct TransportAssignment<S: Scalar = f64> {
    pub long: Vec<ProjMat<S>>,
    pub short: Vec<ProjMat<S>>,
}

/// Short transport parameter of the corner at the tail of `h`:
/// `ε f(next h) / (f(h) f(prev h))`.
pub fn corner_parameter<S: Scalar>(tau: &Triangulation, f: &[S], eps: &[crate::sl2::Sign], h: HalfEdge) -> S {
    let val = |x: HalfEdge| f[tau.edge_of(x).0].clone();
    let t = tau.triangle_of(h);
    eps[t.0].apply(val(tau.next(h)) / (val(h) * val(tau.prev(h))))
}

/// Long edges get `w(f(e))`; the short edge of each corner gets
/// `u(ε a / (b c))` with `a` the opposite side and `b, c` the adjacent ones.
pub fn assign_transports<S: Scalar>(point: &CoordinatePoint<S>) -> TransportAssignment<S> {
    let tau = point.triangulation();
    let long = tau
        .half_edges()
        .map(|h| ProjMat::new(gen_w(point.value(tau.edge_of(h)).clone()).expect("positive edge value")))
        .collect();
    let short = tau
        .half_edges()
        .map(|h| ProjMat::new(gen_u(corner_parameter(tau, point.f(), point.eps(), h))))
        .collect();
    TransportAssignment { long, short }
}

impl<S: Scalar> TransportAssignment<S> {
    pub fn step(&self, step: Step) -> ProjMat<S> {
        match step {
            Step::Long(h) => self.long[h.0].clone(),
            Step::Short { corner, forward: true } => self.short[corner.0].clone(),
            Step::Short { corner, forward: false } => self.short[corner.0].inverse(),
        }
    }

    /// Product along the steps, without checking contiguity.
    pub fn path(&self, steps: &[Step]) -> ProjMat<S> {
        let m = steps
            .iter()
            .fold(Mat2::identity(), |acc, &s| &acc * self.step(s).representative());
        ProjMat::new(m)
    }

    /// Product around the hexagon of `t`, counterclockwise from `v(h0)`.
    pub fn hexagon_relator(&self, tau: &Triangulation, t: TriangleRef) -> Mat2<S> {
        let steps: Vec<Step> = tau
            .triangle_sides(t)
            .iter()
            .flat_map(|&x| [Step::Long(x), Step::Short { corner: tau.next(x), forward: false }])
            .collect();
        self.path(&steps).into_representative()
    }

    /// Product of the short transports once around the boundary cycle,
    /// starting at the base corner.
    pub fn boundary_holonomy(&self, tau: &Triangulation) -> Mat2<S> {
        let mut steps = Vec::with_capacity(tau.num_half_edges());
        let mut h = BASE_CORNER;
        loop {
            steps.push(Step::Short { corner: h, forward: true });
            h = tau.sigma(h);
            if h == BASE_CORNER {
                break;
            }
        }
        self.path(&steps).into_representative()
    }

    pub fn to_f64(&self) -> TransportAssignment<f64> {
        let conv = |m: &ProjMat<S>| ProjMat::new(m.representative().to_f64());
        TransportAssignment { long: self.long.iter().map(conv).collect(), short: self.short.iter().map(conv).collect() }
    }
}

/// A representation of the fundamental group of the truncated surface at
/// the base corner, decorated by the horocycle of `(1, 0)`.
#[derive(Clone, Debug)]
pub struct DecoratedRep<S: Scalar = f64> {
    tau: Triangulation,
    transports: TransportAssignment<S>,
    base: HalfEdge,
}

impl<S: Scalar> DecoratedRep<S> {
    pub fn new(tau: Triangulation, transports: TransportAssignment<S>) -> Self {
        Self { tau, transports, base: BASE_CORNER }
    }

    pub fn from_point(point: &CoordinatePoint<S>) -> Self {
        Self::new(point.triangulation().clone(), assign_transports(point))
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tau
    }

    pub fn transports(&self) -> &TransportAssignment<S> {
        &self.transports
    }

    pub fn base(&self) -> HalfEdge {
        self.base
    }

    pub fn base_horocycle() -> Horocycle {
        Horocycle::base()
    }

    pub fn holonomy(&self, word: &EdgeWord) -> Result<ProjMat<S>> {
        if word.base != self.base || !word.is_closed(&self.tau) {
            return Err(Error::Precondition(format!("word {word} is not a loop at v({})", self.base)));
        }
        Ok(self.transports.path(&word.steps))
    }

    pub fn edge_holonomy(&self, e: EdgeRef) -> ProjMat<S> {
        self.transports.path(&edge_loop_word(&self.tau, e, self.base).steps)
    }

    pub fn boundary_holonomy(&self) -> Mat2<S> {
        self.transports.boundary_holonomy(&self.tau)
    }
}

/// `λ(ρ(γ) h0, h0)` for the loop `word`. With `h0 = (1, 0)` this is the
/// absolute value of the lower-left entry of the holonomy.
pub fn lambda_forward<S: Scalar>(rep: &DecoratedRep<S>, word: &EdgeWord) -> Result<S> {
    Ok(rep.holonomy(word)?.representative().c.abs())
}
