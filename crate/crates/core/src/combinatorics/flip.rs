use super::triangulation::{EdgeRef, HalfEdge, TriangleRef, Triangulation};
use crate::error::{Error, Result};

/// Outcome of a diagonal flip.
#[derive(Clone, Debug)]
pub struct FlipResult {
    pub triangulation: Triangulation,
    /// `edge_map[e]` is the edge of the flipped triangulation corresponding to `e`.
    pub edge_map: Vec<EdgeRef>,
    /// `triangle_map[t]` is the triangle occupying `t`'s slot after the flip.
    pub triangle_map: Vec<TriangleRef>,
    /// Image of the flipped edge.
    pub flipped: EdgeRef,
    /// The half-edge of the flipped edge whose triangle is rebuilt first.
    pub pivot: HalfEdge,
}

/// Replaces the diagonal `e` of the quadrilateral formed by its two
/// triangles with the other diagonal.
///
/// With `h` the smaller side of `e`, `t = [h, h1, h2]` and `s = [o, o1, o2]`
/// become `[h, o2, h1]` and `[o, h2, o1]`. Half-edge labels and the pairing
/// are kept, so edges and triangles keep their indices.
pub fn flip(tau: &Triangulation, e: EdgeRef) -> Result<FlipResult> {
    if !tau.contains_edge(e) {
        return Err(Error::Domain(format!("edge {e} is not in the triangulation")));
    }
    let [h, o] = tau.edge_sides(e);
    let t = tau.triangle_of(h);
    let s = tau.triangle_of(o);
    if t == s {
        return Err(Error::FlipNotDefined { edge: e.0, triangle: t.0 });
    }
    let (h1, h2) = (tau.next(h), tau.prev(h));
    let (o1, o2) = (tau.next(o), tau.prev(o));
    let mut triangles = tau.raw_triangles();
    triangles[t.0] = [h.0, o2.0, h1.0];
    triangles[s.0] = [o.0, h2.0, o1.0];
    let flipped = Triangulation::from_parts(tau.genus(), triangles, tau.raw_pairing())
        .map_err(|err| Error::InternalAssertion(format!("flip broke the triangulation: {err}")))?;
    Ok(FlipResult {
        triangulation: flipped,
        edge_map: tau.edges().collect(),
        triangle_map: tau.triangles().collect(),
        flipped: e,
        pivot: h,
    })
}
