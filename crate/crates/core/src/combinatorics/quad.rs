use serde::Serialize;

use super::triangulation::{EdgeRef, HalfEdge, TriangleRef, Triangulation};
use crate::error::{Error, Result};

/// Which sides of a quadrilateral are the same geometric edge.
///
/// Sides appear in the cyclic order `b, a, d, c`, so `(b, d)` and `(a, c)`
/// are the opposite pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Coincidences {
    pub b_eq_d: bool,
    pub a_eq_c: bool,
    pub a_eq_d: bool,
    pub b_eq_c: bool,
}

impl Coincidences {
    pub fn none(&self) -> bool {
        !(self.b_eq_d || self.a_eq_c || self.a_eq_d || self.b_eq_c)
    }

    pub fn only_opposite(&self) -> bool {
        !(self.a_eq_d || self.b_eq_c) && !(self.b_eq_d && self.a_eq_c)
    }
}

/// The quadrilateral formed by the two triangles adjacent to a diagonal.
///
/// The diagonal is taken from the side `h` in the triangle `above`
/// (`[h, next h, prev h]`) to `o = opp h` in `below` (`[o, next o, prev o]`).
/// Then `b = [next h]`, `a = [prev h]`, `d = [next o]`, `c = [prev o]`.
#[derive(Clone, Debug, Serialize)]
pub struct Quadrilateral {
    pub diagonal: EdgeRef,
    pub diagonal_side: HalfEdge,
    pub above: TriangleRef,
    pub below: TriangleRef,
    pub a: EdgeRef,
    pub b: EdgeRef,
    pub c: EdgeRef,
    pub d: EdgeRef,
    /// Half-edges of `a, b, c, d`, lying in `above, above, below, below`.
    pub sides: [HalfEdge; 4],
    pub coincidences: Coincidences,
}

/// Quadrilateral of `e` with the diagonal oriented from its smaller side.
pub fn quad_around(tau: &Triangulation, e: EdgeRef) -> Result<Quadrilateral> {
    quad_at(tau, tau.edge_sides(e)[0])
}

/// Quadrilateral with `h` as the diagonal side in the upper triangle.
pub fn quad_at(tau: &Triangulation, h: HalfEdge) -> Result<Quadrilateral> {
    let e = tau.edge_of(h);
    let o = tau.opp(h);
    let (above, below) = (tau.triangle_of(h), tau.triangle_of(o));
    if above == below {
        return Err(Error::FlipNotDefined { edge: e.0, triangle: above.0 });
    }
    let sides = [tau.prev(h), tau.next(h), tau.prev(o), tau.next(o)];
    let [a, b, c, d] = sides.map(|x| tau.edge_of(x));
    Ok(Quadrilateral {
        diagonal: e,
        diagonal_side: h,
        above,
        below,
        a,
        b,
        c,
        d,
        sides,
        coincidences: Coincidences { b_eq_d: b == d, a_eq_c: a == c, a_eq_d: a == d, b_eq_c: b == c },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacent_triangles() {
        let tau = Triangulation::build_canonical(2).unwrap();
        for e in tau.edges() {
            let q = quad_around(&tau, e).unwrap();
            let [h, o] = tau.edge_sides(e);
            assert_eq!((q.above, q.below), (tau.triangle_of(h), tau.triangle_of(o)));
            assert!(tau.triangle_edges(q.above).contains(&q.a));
            assert!(tau.triangle_edges(q.above).contains(&q.b));
            assert!(tau.triangle_edges(q.below).contains(&q.c));
            assert!(tau.triangle_edges(q.below).contains(&q.d));
        }
    }

    #[test]
    fn generic_and_coincident_quads() {
        let tau = Triangulation::build_canonical(3).unwrap();
        let generic = tau
            .edges()
            .map(|e| quad_around(&tau, e).unwrap())
            .find(|q| q.coincidences.none())
            .expect("a generic quadrilateral exists");
        let mut all = vec![generic.a, generic.b, generic.c, generic.d];
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 4);
        assert!(!all.contains(&generic.diagonal));
    }

    #[test]
    fn opposite_sides_can_coincide() {
        // In the canonical fan the diagonal between the first two triangles
        // closes up the commutator a1 b1 a1^-1 b1^-1: seen from one side its
        // b and d are the same polygon side pair.
        let tau = Triangulation::build_canonical(2).unwrap();
        let flagged: Vec<Quadrilateral> = tau
            .half_edges()
            .map(|h| quad_at(&tau, h).unwrap())
            .filter(|q| q.coincidences.b_eq_d || q.coincidences.a_eq_c)
            .collect();
        assert!(flagged.iter().any(|q| q.coincidences.b_eq_d));
        for q in &flagged {
            assert!(q.coincidences.only_opposite());
        }
    }
}
