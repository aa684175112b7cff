use super::transport::DecoratedRep;
use crate::combinatorics::{boundary_path, HalfEdge, Step, TriangleRef};
use crate::error::{Error, Result};
use crate::sl2::{Mat2, ProjMat, Scalar, Sign};

/// Holonomy of the loop that runs along the boundary to `v(x)`, crosses the
/// long edge of `x`, follows the short edge of `next x` backwards and
/// retraces the boundary path to `v(next x)`. The three loops of a triangle multiply to a
/// conjugate of its hexagon relator.
pub fn side_holonomy<S: Scalar>(rep: &DecoratedRep<S>, x: HalfEdge) -> ProjMat<S> {
    let tau = rep.triangulation();
    let nx = tau.next(x);
    let mut steps = boundary_path(tau, rep.base(), x);
    steps.push(Step::Long(x));
    steps.push(Step::Short { corner: nx, forward: false });
    steps.extend(boundary_path(tau, rep.base(), nx).iter().rev().map(|s| s.inverse(tau)));
    rep.transports().path(&steps)
}

fn degenerate_tol<S: Scalar>(m: &Mat2<S>) -> bool {
    m.c.is_negligible(m.max_abs().to_f64(), 1e-12)
}

/// Edge values from `|c|` of the edge-loop holonomies, and triangle signs
/// from the sign of the cyclic product of the side holonomies normalized to
/// `c > 0`.
pub fn recover_coordinates<S: Scalar>(rep: &DecoratedRep<S>) -> Result<(Vec<S>, Vec<Sign>)> {
    let tau = rep.triangulation();
    let mut f = Vec::with_capacity(tau.num_edges());
    for e in tau.edges() {
        let g = rep.edge_holonomy(e);
        let m = g.representative();
        if degenerate_tol(m) {
            return Err(Error::EdgeDegenerate { edge: e.0, c: m.c.to_f64() });
        }
        f.push(m.c.abs());
    }
    let eps = tau
        .triangles()
        .map(|t| triangle_sign(rep, t))
        .collect::<Result<Vec<_>>>()?;
    Ok((f, eps))
}

pub fn triangle_sign<S: Scalar>(rep: &DecoratedRep<S>, t: TriangleRef) -> Result<Sign> {
    let tau = rep.triangulation();
    let mut product = Mat2::identity();
    let mut scale = 1.0;
    for x in tau.triangle_sides(t) {
        let g = side_holonomy(rep, x);
        if degenerate_tol(g.representative()) {
            return Err(Error::EdgeDegenerate { edge: tau.edge_of(x).0, c: g.representative().c.to_f64() });
        }
        let m = g.positive_c_representative().expect("nonzero c");
        scale *= m.max_abs().to_f64().max(1.0);
        product = &product * &m;
    }
    let half_trace = product.trace().to_f64() / 2.0;
    if !product.is_plus_minus_identity(1e-9 * scale) {
        return Err(Error::InternalAssertion(format!(
            "side holonomies of {t} do not close up: {product} (factor scale {scale:.1e})"
        )));
    }
    Ok(if half_trace > 0.0 { Sign::Plus } else { Sign::Minus })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Triangulation;
    use crate::sl2::Rational;
    use crate::teich::CoordinatePoint;

    #[test]
    fn recovers_arbitrary_signs_exactly() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for g in [2, 3] {
            let tau = Triangulation::build_canonical(g).unwrap();
            for _ in 0..5 {
                let f: Vec<Rational> = tau
                    .edges()
                    .map(|_| Rational::from_ratio(rng.gen_range(1..20), rng.gen_range(1..20)))
                    .collect();
                let eps: Vec<Sign> = tau
                    .triangles()
                    .map(|_| if rng.gen_bool(0.3) { Sign::Minus } else { Sign::Plus })
                    .collect();
                let p = CoordinatePoint::new(tau.clone(), f.clone(), eps.clone()).unwrap();
                let (rf, reps) = recover_coordinates(&DecoratedRep::from_point(&p)).unwrap();
                assert_eq!(rf, f);
                assert_eq!(reps, eps);
            }
        }
    }

    #[test]
    fn degenerate_edges_are_reported() {
        use crate::teich::TransportAssignment;
        let tau = Triangulation::build_canonical(2).unwrap();
        let n = tau.num_half_edges();
        let tr = TransportAssignment::<f64> { long: vec![ProjMat::identity(); n], short: vec![ProjMat::identity(); n] };
        let rep = DecoratedRep::new(tau, tr);
        assert!(matches!(recover_coordinates(&rep), Err(Error::EdgeDegenerate { .. })));
    }
}
