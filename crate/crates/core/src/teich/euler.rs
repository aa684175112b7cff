//! The Euler number of the representation of a coordinate point, computed
//! from the formula `1 + N_- - 2g` and independently as a sum over the faces
//! of the subdivided complex.
//!
//! The subdivided complex splits each short edge of corner `h` into three
//! pieces `V(h) -> A(h) -> B(h) -> V(sigma h)` carrying
//! `u(-1/f(h))`, `u(ybar(h))` and `u(-1/f(prev h))`, and adds a secondary
//! edge `A(h) -> B(next h)` carrying `v(f(h))` alongside each long edge.
//! Since `w(f) = u(-1/f) v(f) u(-1/f)`, the long edges become redundant and
//! the faces are one rectangle per edge and one hexagon per triangle.

use serde::Serialize;

use super::point::CoordinatePoint;
use super::transport::corner_parameter;
use crate::combinatorics::{EdgeRef, HalfEdge, TriangleRef, Triangulation};
use crate::error::{Error, Result};
use crate::lifting::{winding, Atom, GeneratorWord};
use crate::sl2::{Mat2, Scalar};

pub fn euler_formula(genus: usize, n_minus: usize) -> Result<i64> {
    if genus < 2 {
        return Err(Error::Domain(format!("genus must be at least 2, got {genus}")));
    }
    if n_minus > 4 * genus - 2 {
        return Err(Error::Domain(format!(
            "N- = {n_minus} exceeds the {} triangles of genus {genus}",
            4 * genus - 2
        )));
    }
    Ok(1 + n_minus as i64 - 2 * genus as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Vertex {
    V(HalfEdge),
    A(HalfEdge),
    B(HalfEdge),
}

#[derive(Clone, Debug)]
pub struct TildeEdge<S: Scalar> {
    pub from: Vertex,
    pub to: Vertex,
    pub atom: Atom<S>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FaceKind {
    Rectangle(EdgeRef),
    Hexagon(TriangleRef),
}

#[derive(Clone, Debug, Serialize)]
pub struct Face {
    pub kind: FaceKind,
    /// Edge indices with traversal direction, counterclockwise.
    pub boundary: Vec<(usize, bool)>,
}

#[derive(Clone, Debug)]
pub struct SubdividedComplex<S: Scalar> {
    pub edges: Vec<TildeEdge<S>>,
    pub faces: Vec<Face>,
}

// Edge slots per corner h: 0: V(h)->A(h), 1: A(h)->B(h), 2: B(h)->V(sigma h),
// 3: secondary A(h)->B(next h).
fn slot(h: HalfEdge, k: usize) -> usize {
    4 * h.0 + k
}

impl<S: Scalar> SubdividedComplex<S> {
    pub fn build(point: &CoordinatePoint<S>) -> Self {
        let tau = point.triangulation();
        let val = |x: HalfEdge| point.value(tau.edge_of(x)).clone();
        let mut edges = Vec::with_capacity(4 * tau.num_half_edges());
        for h in tau.half_edges() {
            let fh = val(h);
            let fp = val(tau.prev(h));
            let mid = corner_parameter(tau, point.f(), point.eps(), h) + fh.recip() + fp.recip();
            edges.push(TildeEdge { from: Vertex::V(h), to: Vertex::A(h), atom: Atom::U(-fh.recip()) });
            edges.push(TildeEdge { from: Vertex::A(h), to: Vertex::B(h), atom: Atom::U(mid) });
            edges.push(TildeEdge { from: Vertex::B(h), to: Vertex::V(tau.sigma(h)), atom: Atom::U(-fp.recip()) });
            edges.push(TildeEdge { from: Vertex::A(h), to: Vertex::B(tau.next(h)), atom: Atom::V(fh) });
        }
        let mut faces = Vec::with_capacity(tau.num_edges() + tau.num_triangles());
        for e in tau.edges() {
            let [h, o] = tau.edge_sides(e);
            faces.push(Face {
                kind: FaceKind::Rectangle(e),
                boundary: vec![
                    (slot(h, 0), false),
                    (slot(tau.next(o), 2), false),
                    (slot(o, 3), false),
                    (slot(o, 0), false),
                    (slot(tau.next(h), 2), false),
                    (slot(h, 3), false),
                ],
            });
        }
        for t in tau.triangles() {
            let [h0, h1, h2] = tau.triangle_sides(t);
            faces.push(Face {
                kind: FaceKind::Hexagon(t),
                boundary: vec![
                    (slot(h0, 3), true),
                    (slot(h1, 1), false),
                    (slot(h1, 3), true),
                    (slot(h2, 1), false),
                    (slot(h2, 3), true),
                    (slot(h0, 1), false),
                ],
            });
        }
        Self { edges, faces }
    }

    /// Checks that every face boundary is a closed path and that the edge
    /// pieces of each short edge multiply to its transport.
    pub fn check(&self, tau: &Triangulation) -> Result<()> {
        for face in &self.faces {
            let ends = |&(i, fwd): &(usize, bool)| {
                let e = &self.edges[i];
                if fwd { (e.from, e.to) } else { (e.to, e.from) }
            };
            let n = face.boundary.len();
            for k in 0..n {
                if ends(&face.boundary[k]).1 != ends(&face.boundary[(k + 1) % n]).0 {
                    return Err(Error::InternalAssertion(format!("face {:?} is not closed", face.kind)));
                }
            }
        }
        let mut uses = vec![0usize; self.edges.len()];
        for face in &self.faces {
            for &(i, _) in &face.boundary {
                uses[i] += 1;
            }
        }
        for h in tau.half_edges() {
            if uses[slot(h, 3)] != 2 || uses[slot(h, 1)] != 1 || uses[slot(h, 0)] != 1 || uses[slot(h, 2)] != 1 {
                return Err(Error::InternalAssertion(format!("corner {h} pieces are not covered correctly")));
            }
        }
        Ok(())
    }

    pub fn face_word(&self, face: &Face) -> GeneratorWord<S> {
        GeneratorWord::new(
            face.boundary
                .iter()
                .map(|&(i, fwd)| {
                    let atom = &self.edges[i].atom;
                    if fwd { atom.clone() } else { atom.inverse() }
                })
                .collect(),
        )
    }

    /// Checks that every face word multiplies to `±1` in `SL(2)`, relative
    /// to the largest partial product.
    pub fn check_relators(&self) -> Result<()> {
        for face in &self.faces {
            let mut m: Mat2<S> = Mat2::identity();
            let mut scale: f64 = 1.0;
            for atom in &self.face_word(face).atoms {
                m = &m * &atom.matrix();
                scale = scale.max(m.max_abs().to_f64());
            }
            if !m.is_plus_minus_identity(1e-8 * scale) {
                return Err(Error::InternalAssertion(format!("face {:?} has relator {m}", face.kind)));
            }
        }
        Ok(())
    }
}

/// Per-face winding classes and their sum.
#[derive(Clone, Debug, Serialize)]
pub struct EulerBreakdown {
    pub faces: Vec<(FaceKind, i64)>,
    pub total: i64,
    pub max_residual: f64,
}

pub fn euler_breakdown<S: Scalar>(point: &CoordinatePoint<S>) -> Result<EulerBreakdown> {
    let complex = SubdividedComplex::build(point);
    complex.check(point.triangulation())?;
    complex.check_relators()?;
    let mut faces = Vec::with_capacity(complex.faces.len());
    let mut total = 0;
    let mut max_residual: f64 = 0.0;
    for face in &complex.faces {
        let class = winding(&complex.face_word(face))?;
        faces.push((face.kind, class.n));
        total += class.n;
        max_residual = max_residual.max(class.residual);
    }
    Ok(EulerBreakdown { faces, total, max_residual })
}

pub fn euler_via_windings<S: Scalar>(point: &CoordinatePoint<S>) -> Result<i64> {
    Ok(euler_breakdown(point)?.total)
}
