use std::collections::BTreeMap;

use serde::Serialize;

use super::length::{length_from_x, x_from_length};
use crate::combinatorics::{boundary_path, quad_at, EdgeRef, EdgeWord, HalfEdge, Quadrilateral, Step, TriangleRef, Triangulation};
use crate::error::{Error, Result};
use crate::sl2::{translation_length, Mat2, ProjMat, Sign};
use crate::teich::{triangle_terms, CoordinatePoint, DecoratedRep};

/// How the sides `a, b` of the negative triangle are tied to `c, d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SideRelation {
    /// `a = x d`, `b = x c`.
    Generic,
    /// `b` and `d` are one edge: `b = d = x c`, `a = x^2 c`.
    BEqualsD,
    /// `a` and `c` are one edge: `a = c = x d`, `b = x^2 d`.
    AEqualsC,
}

/// A coordinate point on which the λ-length of the curve crossing the
/// quadrilateral of `alpha` (the other diagonal) vanishes.
#[derive(Clone, Debug)]
pub struct ZeroLocusPoint {
    pub quad: Quadrilateral,
    pub negative: TriangleRef,
    pub x: f64,
    pub relation: SideRelation,
    pub point: CoordinatePoint,
}

/// Length of the curve and the coordinates away from the negative triangle.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LCoordinates {
    pub length: f64,
    pub rest: BTreeMap<EdgeRef, f64>,
}

/// Edges not on the boundary of `t`: the free inputs of a zero-locus point.
pub fn free_edges(tau: &Triangulation, t: TriangleRef) -> Vec<EdgeRef> {
    let sides = tau.triangle_edges(t);
    tau.edges().filter(|e| !sides.contains(e)).collect()
}

fn relation_of(quad: &Quadrilateral) -> Result<SideRelation> {
    let c = quad.coincidences;
    if c.a_eq_d || c.b_eq_c || (c.b_eq_d && c.a_eq_c) {
        return Err(Error::ConventionMismatch(format!(
            "unsupported side coincidences around {}: {c:?}",
            quad.diagonal
        )));
    }
    Ok(if c.b_eq_d {
        SideRelation::BEqualsD
    } else if c.a_eq_c {
        SideRelation::AEqualsC
    } else {
        SideRelation::Generic
    })
}

impl ZeroLocusPoint {
    /// Builds the point with negative triangle `t`, a side of which is
    /// `alpha`, from `x` and the values on the edges off `t`.
    ///
    /// The value on `alpha` is `c d Σ / (x^-2 - 1)`, where `Σ` sums
    /// `p_s / q_s` over the triangles outside the quadrilateral; this is the
    /// root of `ψ_t`.
    pub fn build(
        tau: &Triangulation,
        alpha: EdgeRef,
        t: TriangleRef,
        x: f64,
        rest: &BTreeMap<EdgeRef, f64>,
    ) -> Result<Self> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Domain(format!("x must lie in (0, 1), got {x}")));
        }
        if !tau.contains_edge(alpha) || !tau.contains_triangle(t) {
            return Err(Error::Domain(format!("{alpha} or {t} is not in the triangulation")));
        }
        if !tau.is_flippable(alpha) {
            let h = tau.edge_sides(alpha)[0];
            return Err(Error::FlipNotDefined { edge: alpha.0, triangle: tau.triangle_of(h).0 });
        }
        let h = *tau
            .edge_sides(alpha)
            .iter()
            .find(|&&h| tau.triangle_of(h) == t)
            .ok_or_else(|| Error::Domain(format!("{alpha} is not a side of {t}")))?;
        let quad = quad_at(tau, h)?;
        let relation = relation_of(&quad)?;
        let free = free_edges(tau, t);
        if rest.len() != free.len() || free.iter().any(|e| !rest.contains_key(e)) {
            return Err(Error::Domain(format!(
                "expected values on exactly the edges {:?}",
                free.iter().map(|e| e.0).collect::<Vec<_>>()
            )));
        }
        if let Some((e, v)) = rest.iter().find(|(_, v)| !v.is_finite() || **v <= 0.0) {
            return Err(Error::Domain(format!("value {v} on {e} is not positive")));
        }
        let mut f = vec![f64::NAN; tau.num_edges()];
        for (e, v) in rest {
            f[e.0] = *v;
        }
        match relation {
            SideRelation::Generic => {
                f[quad.a.0] = x * f[quad.d.0];
                f[quad.b.0] = x * f[quad.c.0];
            }
            SideRelation::BEqualsD => {
                f[quad.b.0] = x * f[quad.c.0];
                f[quad.a.0] = x * x * f[quad.c.0];
            }
            SideRelation::AEqualsC => {
                f[quad.a.0] = x * f[quad.d.0];
                f[quad.b.0] = x * x * f[quad.d.0];
            }
        }
        // The terms outside the quadrilateral do not involve alpha.
        f[alpha.0] = 1.0;
        let terms = triangle_terms(tau, &f);
        let outside: f64 = tau
            .triangles()
            .filter(|&s| s != quad.above && s != quad.below)
            .map(|s| terms[s.0])
            .sum();
        f[alpha.0] = f[quad.c.0] * f[quad.d.0] / (x.powi(-2) - 1.0) * outside;
        let point = CoordinatePoint::with_negative(tau.clone(), f, t)?;
        Ok(Self { quad, negative: t, x, relation, point })
    }

    pub fn from_l_coordinates(tau: &Triangulation, alpha: EdgeRef, t: TriangleRef, l: &LCoordinates) -> Result<Self> {
        Self::build(tau, alpha, t, x_from_length(l.length)?, &l.rest)
    }

    /// Reads a zero-locus point back from coordinates: the negative triangle
    /// must be unique and contain `alpha`, and every value must agree with
    /// the rebuilt point to relative tolerance `tol`.
    pub fn from_point(point: &CoordinatePoint, alpha: EdgeRef, tol: f64) -> Result<Self> {
        let tau = point.triangulation();
        let t = match point.negative_triangles()[..] {
            [t] => t,
            ref other => {
                return Err(Error::Domain(format!("expected one negative triangle, found {}", other.len())));
            }
        };
        let h = *tau
            .edge_sides(alpha)
            .iter()
            .find(|&&h| tau.triangle_of(h) == t)
            .ok_or_else(|| Error::Domain(format!("{alpha} is not a side of the negative triangle {t}")))?;
        let quad = quad_at(tau, h)?;
        let f = |e: EdgeRef| *point.value(e);
        let x = match relation_of(&quad)? {
            SideRelation::Generic | SideRelation::BEqualsD => f(quad.b) / f(quad.c),
            SideRelation::AEqualsC => f(quad.a) / f(quad.d),
        };
        let rest = free_edges(tau, t).into_iter().map(|e| (e, f(e))).collect();
        let rebuilt = Self::build(tau, alpha, t, x, &rest)?;
        if let Some(e) = tau.edges().find(|&e| (f(e) - rebuilt.point.value(e)).abs() > tol * f(e)) {
            return Err(Error::Domain(format!(
                "not on the zero locus of the curve across {alpha}: {e} is {} but should be {}",
                f(e),
                rebuilt.point.value(e)
            )));
        }
        Ok(rebuilt)
    }

    pub fn l_coordinates(&self) -> LCoordinates {
        let tau = self.point.triangulation();
        LCoordinates {
            length: length_from_x(self.x).expect("x in (0, 1)"),
            rest: free_edges(tau, self.negative).into_iter().map(|e| (e, *self.point.value(e))).collect(),
        }
    }

    pub fn alpha(&self) -> EdgeRef {
        self.quad.diagonal
    }

    pub fn quad_sign_product(&self) -> Sign {
        self.point.sign(self.quad.above) * self.point.sign(self.quad.below)
    }

    /// Loop at the base corner crossing the quadrilateral from the side `a`
    /// to the side `c`, transverse to the diagonal.
    pub fn curve_word(&self) -> EdgeWord {
        curve_word(self.point.triangulation(), self.quad.diagonal_side, crate::combinatorics::BASE_CORNER)
    }

    pub fn curve_holonomy(&self) -> ProjMat {
        let rep = DecoratedRep::from_point(&self.point);
        rep.holonomy(&self.curve_word()).expect("curve word is a loop")
    }
}

/// Loop crossing the quadrilateral of the diagonal side `h` between its
/// other two corners. With `t = [h, h1, h2]` and `s = [o, o1, o2]` the core
/// runs through `v(opp h1)`, along the corners at `h1` and `o`, and out
/// through `v(opp o1)`; boundary paths connect it to `v(base)`.
pub fn curve_word(tau: &Triangulation, h: HalfEdge, base: HalfEdge) -> EdgeWord {
    let o = tau.opp(h);
    let (h1, o1, o2) = (tau.next(h), tau.next(o), tau.prev(o));
    let mut steps = boundary_path(tau, base, tau.opp(h1));
    steps.extend([
        Step::Long(tau.opp(h1)),
        Step::Short { corner: h1, forward: true },
        Step::Short { corner: o, forward: true },
        Step::Long(tau.opp(o2)),
        Step::Short { corner: o2, forward: true },
    ]);
    steps.extend(boundary_path(tau, tau.opp(o1), base));
    EdgeWord { base, steps }
}

/// Holonomy data of the curve at a zero-locus point.
#[derive(Clone, Debug, Serialize)]
pub struct CurveCheck {
    pub x: f64,
    pub trace: f64,
    pub length: f64,
    pub lower_left: f64,
    pub holonomy: Mat2,
}

/// Checks that the curve holonomy is upper triangular with diagonal
/// `±(x^-1, x)` and returns the recovered `x`.
pub fn alpha_holonomy_check(p: &ZeroLocusPoint) -> Result<CurveCheck> {
    let g = p.curve_holonomy();
    let m = g.representative().clone();
    let scale = m.max_abs();
    let mismatch = |what: &str| Error::ConventionMismatch(format!("curve holonomy {m}: {what}"));
    if m.c.abs() > 1e-9 * scale {
        return Err(mismatch("lower-left entry is not zero"));
    }
    let (small, large) = if m.a.abs() < m.d.abs() { (m.a.abs(), m.d.abs()) } else { (m.d.abs(), m.a.abs()) };
    let tol = 1e-9;
    if (small * large - 1.0).abs() > tol || (small - p.x).abs() > tol * p.x.max(1.0) {
        return Err(mismatch(&format!("diagonal is not ±({}, {})", 1.0 / p.x, p.x)));
    }
    let trace = m.trace().abs();
    let length = translation_length(&g)?;
    Ok(CurveCheck { x: small, trace, length, lower_left: m.c, holonomy: m })
}

/// Result of comparing two points of one length fiber.
#[derive(Clone, Debug, Serialize)]
pub struct FiberCheck {
    pub equivalent: bool,
    pub ratio: Option<f64>,
    /// Largest relative difference of `|trace|` over the edge-loop holonomies.
    pub trace_deviation: f64,
}

pub fn fiber_equivalent(p: &ZeroLocusPoint, q: &ZeroLocusPoint, tol: f64) -> Result<FiberCheck> {
    if p.point.triangulation() != q.point.triangulation() || p.negative != q.negative || p.alpha() != q.alpha() {
        return Err(Error::Precondition("points use different triangulations, triangles or curves".into()));
    }
    let (lp, lq) = (p.l_coordinates(), q.l_coordinates());
    if (lp.length - lq.length).abs() > 1e-9 * lp.length.max(1.0) {
        return Err(Error::Precondition(format!("lengths differ: {} vs {}", lp.length, lq.length)));
    }
    let ratios: Vec<f64> = lp.rest.iter().map(|(e, v)| lq.rest[e] / v).collect();
    let first = ratios.first().copied().unwrap_or(1.0);
    let proportional = ratios.iter().all(|r| (r - first).abs() <= tol * first);
    let tau = p.point.triangulation();
    let (rp, rq) = (DecoratedRep::from_point(&p.point), DecoratedRep::from_point(&q.point));
    let trace_deviation = tau
        .edges()
        .map(|e| {
            let a = rp.edge_holonomy(e).representative().trace().abs();
            let b = rq.edge_holonomy(e).representative().trace().abs();
            (a - b).abs() / a.max(b).max(1.0)
        })
        .fold(0.0, f64::max);
    if proportional && trace_deviation > tol {
        return Err(Error::ConventionMismatch(format!(
            "proportional coordinates but edge traces differ by {trace_deviation:.3e}"
        )));
    }
    Ok(FiberCheck {
        equivalent: proportional,
        ratio: proportional.then_some(first),
        trace_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::teich::{psi, recover_coordinates};

    fn unit_rest(tau: &Triangulation, t: TriangleRef) -> BTreeMap<EdgeRef, f64> {
        free_edges(tau, t).into_iter().map(|e| (e, 1.0)).collect()
    }

    fn first_of(tau: &Triangulation, relation: SideRelation) -> (EdgeRef, TriangleRef) {
        for h in tau.half_edges() {
            let q = quad_at(tau, h).unwrap();
            if relation_of(&q).ok() == Some(relation) {
                return (tau.edge_of(h), tau.triangle_of(h));
            }
        }
        panic!("no quadrilateral of kind {relation:?}");
    }

    #[test]
    fn closed_form_with_unit_sides() {
        let tau = Triangulation::build_canonical(3).unwrap();
        let (alpha, t) = first_of(&tau, SideRelation::Generic);
        let p = ZeroLocusPoint::build(&tau, alpha, t, 0.5, &unit_rest(&tau, t)).unwrap();
        let terms = triangle_terms(&tau, p.point.f());
        let outside: f64 = tau.triangles().filter(|&s| s != p.quad.above && s != p.quad.below).map(|s| terms[s.0]).sum();
        assert!((p.point.value(alpha) - outside / 3.0).abs() < 1e-12);
        assert!(psi(&tau, t, p.point.f()).abs() < 1e-10);
        assert_eq!(p.quad_sign_product(), Sign::Minus);
    }

    #[test]
    fn curve_holonomy_in_every_case() {
        let mut seen = Vec::new();
        for g in [2, 3] {
            let tau = Triangulation::build_canonical(g).unwrap();
            for relation in [SideRelation::Generic, SideRelation::BEqualsD, SideRelation::AEqualsC] {
                let found = tau.half_edges().find(|&h| relation_of(&quad_at(&tau, h).unwrap()).ok() == Some(relation));
                let Some(h) = found else { continue };
                let (alpha, t) = (tau.edge_of(h), tau.triangle_of(h));
                seen.push(relation);
                for x in [0.1, 0.5, 0.9] {
                    let rest: BTreeMap<EdgeRef, f64> = free_edges(&tau, t).into_iter().enumerate().map(|(i, e)| (e, 0.6 + 0.1 * i as f64)).collect();
                    let p = ZeroLocusPoint::build(&tau, alpha, t, x, &rest).unwrap();
                    assert_eq!(p.relation, relation);
                    let check = alpha_holonomy_check(&p).unwrap();
                    assert!((check.x - x).abs() < 1e-9);
                    assert!((check.trace - (x + 1.0 / x)).abs() < 1e-9 * check.trace);
                    assert!((check.length - length_from_x(x).unwrap()).abs() < 1e-9);
                    let (f, _) = recover_coordinates(&DecoratedRep::from_point(&p.point)).unwrap();
                    assert!(f.iter().all(|v| *v > 0.0));
                }
            }
        }
        for relation in [SideRelation::Generic, SideRelation::BEqualsD, SideRelation::AEqualsC] {
            assert!(seen.contains(&relation), "{relation:?} never exercised: {seen:?}");
        }
    }

    #[test]
    fn half_gives_trace_two_and_a_half() {
        let tau = Triangulation::build_canonical(3).unwrap();
        let (alpha, t) = first_of(&tau, SideRelation::Generic);
        let p = ZeroLocusPoint::build(&tau, alpha, t, 0.5, &unit_rest(&tau, t)).unwrap();
        assert!((alpha_holonomy_check(&p).unwrap().trace - 2.5).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        let tau = Triangulation::build_canonical(3).unwrap();
        let (alpha, t) = first_of(&tau, SideRelation::Generic);
        let rest = unit_rest(&tau, t);
        for x in [0.0, 1.0, 1.5, -0.2] {
            assert!(matches!(ZeroLocusPoint::build(&tau, alpha, t, x, &rest), Err(Error::Domain(_))));
        }
        let mut short = rest.clone();
        short.pop_first();
        assert!(ZeroLocusPoint::build(&tau, alpha, t, 0.5, &short).is_err());
        let other = tau.triangles().find(|&s| !tau.triangle_edges(s).contains(&alpha)).unwrap();
        assert!(ZeroLocusPoint::build(&tau, alpha, other, 0.5, &unit_rest(&tau, other)).is_err());
    }

    #[test]
    fn l_coordinates_round_trip() {
        let tau = Triangulation::build_canonical(3).unwrap();
        let (alpha, t) = first_of(&tau, SideRelation::Generic);
        let rest: BTreeMap<EdgeRef, f64> = free_edges(&tau, t).into_iter().enumerate().map(|(i, e)| (e, 1.0 + 0.2 * i as f64)).collect();
        let p = ZeroLocusPoint::build(&tau, alpha, t, 0.3, &rest).unwrap();
        let l = p.l_coordinates();
        assert!(l.length > 0.0 && l.rest.values().all(|v| *v > 0.0));
        let back = ZeroLocusPoint::from_l_coordinates(&tau, alpha, t, &l).unwrap();
        for (x, y) in p.point.f().iter().zip(back.point.f()) {
            assert!((x - y).abs() <= 1e-9 * x);
        }
    }

    #[test]
    fn fibers() {
        let tau = Triangulation::build_canonical(3).unwrap();
        let (alpha, t) = first_of(&tau, SideRelation::Generic);
        let rest: BTreeMap<EdgeRef, f64> = free_edges(&tau, t).into_iter().enumerate().map(|(i, e)| (e, 0.7 + 0.05 * i as f64)).collect();
        let p = ZeroLocusPoint::build(&tau, alpha, t, 0.4, &rest).unwrap();
        let same = fiber_equivalent(&p, &p, 1e-9).unwrap();
        assert!(same.equivalent);
        assert_eq!(same.ratio, Some(1.0));

        let tripled: BTreeMap<EdgeRef, f64> = rest.iter().map(|(e, v)| (*e, 3.0 * v)).collect();
        let q = ZeroLocusPoint::build(&tau, alpha, t, 0.4, &tripled).unwrap();
        let check = fiber_equivalent(&p, &q, 1e-9).unwrap();
        assert!(check.equivalent);
        assert!((check.ratio.unwrap() - 3.0).abs() < 1e-9);
        assert!(check.trace_deviation < 1e-9);
        for (x, y) in p.point.f().iter().zip(q.point.f()) {
            assert!((3.0 * x - y).abs() <= 1e-9 * y);
        }

        let mut bumped = rest.clone();
        *bumped.values_mut().next().unwrap() *= 1.3;
        let r = ZeroLocusPoint::build(&tau, alpha, t, 0.4, &bumped).unwrap();
        let check = fiber_equivalent(&p, &r, 1e-9).unwrap();
        assert!(!check.equivalent);
        assert!(check.trace_deviation > 1e-6);

        let far = ZeroLocusPoint::build(&tau, alpha, t, 0.6, &rest).unwrap();
        assert!(matches!(fiber_equivalent(&p, &far, 1e-9), Err(Error::Precondition(_))));
    }

    #[test]
    fn reads_points_back_from_coordinates() {
        for g in [2, 3] {
            let tau = Triangulation::build_canonical(g).unwrap();
            for relation in [SideRelation::Generic, SideRelation::BEqualsD, SideRelation::AEqualsC] {
                let found = tau.half_edges().find(|&h| relation_of(&quad_at(&tau, h).unwrap()).ok() == Some(relation));
                let Some(h) = found else { continue };
                let (alpha, t) = (tau.edge_of(h), tau.triangle_of(h));
                let rest: BTreeMap<EdgeRef, f64> = free_edges(&tau, t).into_iter().enumerate().map(|(i, e)| (e, 0.8 + 0.1 * i as f64)).collect();
                let p = ZeroLocusPoint::build(&tau, alpha, t, 0.35, &rest).unwrap();
                let back = ZeroLocusPoint::from_point(&p.point, alpha, 1e-9).unwrap();
                assert!((back.x - 0.35).abs() < 1e-12);
                assert_eq!(back.relation, relation);

                let mut f = p.point.f().to_vec();
                f[alpha.0] *= 1.01;
                let off = CoordinatePoint::with_negative(tau.clone(), f, t).unwrap();
                assert!(matches!(ZeroLocusPoint::from_point(&off, alpha, 1e-9), Err(Error::Domain(_))));
            }
        }
    }
}
