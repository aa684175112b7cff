use serde::Serialize;

use super::point::CoordinatePoint;
use super::transport::{DecoratedRep, TransportAssignment};
use crate::combinatorics::{boundary_path, flip, EdgeRef, FlipResult, HalfEdge, Step};
use crate::error::{Error, Result};
use crate::sl2::{Scalar, Sign};

/// Solution of `α b d + β a c = γ e f'` and `α β = γ δ`.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(bound = "S: Scalar + Serialize")]
pub struct PtolemySolution<S: Scalar> {
    pub new_value: S,
    pub gamma: Sign,
    pub delta: Sign,
}

pub fn signed_ptolemy<S: Scalar>(
    [a, b, c, d, e]: [S; 5],
    alpha: Sign,
    beta: Sign,
) -> Option<PtolemySolution<S>> {
    let sum = alpha.apply(b * d) + beta.apply(a * c);
    let gamma = Sign::of(&sum)?;
    Some(PtolemySolution { new_value: sum.abs() / e, gamma, delta: alpha * beta * gamma })
}

/// The quadrilateral values in Ptolemy order `[a, b, c, d, e]` around the
/// pivot `h` of a flip: `a = [next h]`, `d = [prev h]`, `b = [prev o]`,
/// `c = [next o]`, `e = [h]`.
pub fn ptolemy_inputs<S: Scalar>(point: &CoordinatePoint<S>, h: HalfEdge) -> [S; 5] {
    let tau = point.triangulation();
    let o = tau.opp(h);
    let val = |x: HalfEdge| point.value(tau.edge_of(x)).clone();
    [val(tau.next(h)), val(tau.prev(o)), val(tau.next(o)), val(tau.prev(h)), val(h)]
}

/// Coordinates of the same decorated point in the flipped triangulation.
pub fn ptolemy_flip<S: Scalar>(point: &CoordinatePoint<S>, e: EdgeRef) -> Result<(FlipResult, CoordinatePoint<S>)> {
    let tau = point.triangulation();
    let result = flip(tau, e)?;
    let h = result.pivot;
    let (t, s) = (tau.triangle_of(h), tau.triangle_of(tau.opp(h)));
    let sol = signed_ptolemy(ptolemy_inputs(point, h), point.sign(t), point.sign(s))
        .ok_or(Error::FlipDegenerate { edge: e.0 })?;
    let mut f = vec![S::zero(); tau.num_edges()];
    for x in tau.edges() {
        f[result.edge_map[x.0].0] = point.value(x).clone();
    }
    f[result.flipped.0] = sol.new_value;
    let mut eps = vec![Sign::Plus; tau.num_triangles()];
    for x in tau.triangles() {
        eps[result.triangle_map[x.0].0] = point.sign(x);
    }
    eps[result.triangle_map[t.0].0] = sol.gamma;
    eps[result.triangle_map[s.0].0] = sol.delta;
    let flipped = CoordinatePoint::new(result.triangulation.clone(), f, eps)?;
    Ok((result, flipped))
}

/// Re-expresses the transports of `rep` on the flipped triangulation,
/// keeping the representation of the truncated surface.
///
/// Every vertex of the new truncated complex is identified with an old one:
/// `v'(x) = v(x)` except `v'(h) = v(opp h1)` and `v'(o) = v(opp o1)`, where
/// `t = [h, h1, h2]` and `s = [o, o1, o2]` are the old triangles. New short
/// edges map to boundary paths and the new long edge to a path through the
/// old quadrilateral. If the base vertex is re-anchored, holonomies change by
/// conjugation with a boundary transport.
pub fn transfer_through_flip<S: Scalar>(rep: &DecoratedRep<S>, result: &FlipResult) -> DecoratedRep<S> {
    let tau = rep.triangulation();
    let new = &result.triangulation;
    let h = result.pivot;
    let o = tau.opp(h);
    let (h1, o1, o2) = (tau.next(h), tau.next(o), tau.prev(o));
    let anchor = |x: HalfEdge| {
        if x == h {
            tau.opp(h1)
        } else if x == o {
            tau.opp(o1)
        } else {
            x
        }
    };
    let old = rep.transports();
    let across = [
        Step::Long(tau.opp(h1)),
        Step::Short { corner: h1, forward: true },
        Step::Short { corner: o, forward: true },
        Step::Long(tau.opp(o2)),
        Step::Short { corner: o2, forward: true },
    ];
    let across_m = old.path(&across);
    let long = new
        .half_edges()
        .map(|x| {
            if x == h {
                across_m.clone()
            } else if x == o {
                across_m.inverse()
            } else {
                old.long[x.0].clone()
            }
        })
        .collect();
    let short = new
        .half_edges()
        .map(|x| old.path(&boundary_path(tau, anchor(x), anchor(new.sigma(x)))))
        .collect();
    DecoratedRep::new(new.clone(), TransportAssignment { long, short })
}
