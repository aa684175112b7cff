use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a half-edge (an oriented side of a triangle).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge(pub usize);

/// Index of a geometric edge. Edges are numbered by increasing smallest half-edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeRef(pub usize);

/// Index of a triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TriangleRef(pub usize);

impl fmt::Display for HalfEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h{}", self.0)
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for TriangleRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t{}", self.0)
    }
}

/// A one-vertex triangulation of a closed oriented surface, stored as a
/// half-edge map.
///
/// Each triangle lists its half-edges counterclockwise; `next` and `prev`
/// move within a triangle and `opp` crosses an edge. Rotation about the
/// vertex is `sigma(h) = opp(prev(h))`, which takes the corner at the tail of
/// `h` to the next corner counterclockwise around the vertex in the surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    genus: usize,
    triangles: Vec<[HalfEdge; 3]>,
    pairing: Vec<HalfEdge>,
    location: Vec<(TriangleRef, usize)>,
    edges: Vec<[HalfEdge; 2]>,
    edge_of: Vec<EdgeRef>,
}

impl Triangulation {
    /// Builds and validates a triangulation from triangles and a pairing.
    pub fn from_parts(
        genus: usize,
        triangles: Vec<[usize; 3]>,
        pairing: Vec<usize>,
    ) -> Result<Self> {
        check_shape(genus, &triangles, &pairing)?;
        let tau = Self::assemble(genus, triangles, pairing);
        tau.check_cells()?;
        Ok(tau)
    }

    /// Builds a half-edge map without the cell-count and single-vertex
    /// checks. Index consistency is still required.
    #[cfg(test)]
    pub(crate) fn from_parts_unchecked(
        genus: usize,
        triangles: Vec<[usize; 3]>,
        pairing: Vec<usize>,
    ) -> Result<Self> {
        check_indices(&triangles, &pairing)?;
        Ok(Self::assemble(genus, triangles, pairing))
    }

    fn assemble(genus: usize, triangles: Vec<[usize; 3]>, pairing: Vec<usize>) -> Self {
        let n = pairing.len();
        let mut location = vec![(TriangleRef(0), 0); n];
        for (t, tri) in triangles.iter().enumerate() {
            for (pos, &h) in tri.iter().enumerate() {
                location[h] = (TriangleRef(t), pos);
            }
        }
        let mut edges = Vec::new();
        let mut edge_of = vec![EdgeRef(0); n];
        for h in 0..n {
            if h < pairing[h] {
                edge_of[h] = EdgeRef(edges.len());
                edge_of[pairing[h]] = EdgeRef(edges.len());
                edges.push([HalfEdge(h), HalfEdge(pairing[h])]);
            }
        }
        Self {
            genus,
            triangles: triangles
                .into_iter()
                .map(|t| t.map(HalfEdge))
                .collect(),
            pairing: pairing.into_iter().map(HalfEdge).collect(),
            location,
            edges,
            edge_of,
        }
    }

    fn check_cells(&self) -> Result<()> {
        let g = self.genus;
        if self.triangles.len() != 4 * g - 2 {
            return Err(invalid(
                "triangle-count",
                format!("expected {} triangles, found {}", 4 * g - 2, self.triangles.len()),
            ));
        }
        if self.edges.len() != 6 * g - 3 {
            return Err(invalid(
                "edge-count",
                format!("expected {} edges, found {}", 6 * g - 3, self.edges.len()),
            ));
        }
        let orbits = self.vertex_count();
        if orbits != 1 {
            return Err(invalid(
                "single-vertex",
                format!("corner rotation has {orbits} orbits"),
            ));
        }
        Ok(())
    }

    /// Re-runs every structural check; used after mutations.
    pub fn validate(&self) -> Result<()> {
        let triangles: Vec<[usize; 3]> = self.triangles.iter().map(|t| t.map(|h| h.0)).collect();
        let pairing: Vec<usize> = self.pairing.iter().map(|h| h.0).collect();
        check_shape(self.genus, &triangles, &pairing)?;
        self.check_cells()
    }

    /// Fan triangulation of the `4g`-gon with sides identified by the word
    /// `a1 b1 a1^-1 b1^-1 ... ag bg ag^-1 bg^-1`.
    ///
    /// Polygon vertices are `0..4g` counterclockwise and side `j` runs from
    /// vertex `j` to `j + 1`. Triangle `k` is `(0, k+1, k+2)` with half-edges
    /// `3k` (0 to k+1), `3k+1` (k+1 to k+2) and `3k+2` (k+2 to 0). Sides
    /// `4i` and `4i+1` are glued to `4i+2` and `4i+3`.
    pub fn build_canonical(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::Domain(format!("genus must be at least 2, got {genus}")));
        }
        let n_tri = 4 * genus - 2;
        let n_half = 3 * n_tri;
        let triangles: Vec<[usize; 3]> = (0..n_tri).map(|k| [3 * k, 3 * k + 1, 3 * k + 2]).collect();
        let side = |j: usize| -> usize {
            if j == 0 {
                0
            } else if j == 4 * genus - 1 {
                3 * (n_tri - 1) + 2
            } else {
                3 * (j - 1) + 1
            }
        };
        let mut pairing = vec![usize::MAX; n_half];
        let mut glue = |x: usize, y: usize| {
            pairing[x] = y;
            pairing[y] = x;
        };
        for i in 0..genus {
            glue(side(4 * i), side(4 * i + 2));
            glue(side(4 * i + 1), side(4 * i + 3));
        }
        for k in 2..=(4 * genus - 2) {
            glue(3 * (k - 1), 3 * (k - 2) + 2);
        }
        Self::from_parts(genus, triangles, pairing)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn num_half_edges(&self) -> usize {
        self.pairing.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_triangles(&self) -> usize {
        self.triangles.len()
    }

    pub fn half_edges(&self) -> impl Iterator<Item = HalfEdge> + '_ {
        (0..self.pairing.len()).map(HalfEdge)
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.edges.len()).map(EdgeRef)
    }

    pub fn triangles(&self) -> impl Iterator<Item = TriangleRef> + '_ {
        (0..self.triangles.len()).map(TriangleRef)
    }

    pub fn triangle_sides(&self, t: TriangleRef) -> [HalfEdge; 3] {
        self.triangles[t.0]
    }

    pub fn opp(&self, h: HalfEdge) -> HalfEdge {
        self.pairing[h.0]
    }

    pub fn next(&self, h: HalfEdge) -> HalfEdge {
        let (t, pos) = self.location[h.0];
        self.triangles[t.0][(pos + 1) % 3]
    }

    pub fn prev(&self, h: HalfEdge) -> HalfEdge {
        let (t, pos) = self.location[h.0];
        self.triangles[t.0][(pos + 2) % 3]
    }

    /// Rotation to the next corner around the vertex.
    pub fn sigma(&self, h: HalfEdge) -> HalfEdge {
        self.opp(self.prev(h))
    }

    pub fn triangle_of(&self, h: HalfEdge) -> TriangleRef {
        self.location[h.0].0
    }

    pub fn edge_of(&self, h: HalfEdge) -> EdgeRef {
        self.edge_of[h.0]
    }

    /// The two half-edges of `e`, smallest first.
    pub fn edge_sides(&self, e: EdgeRef) -> [HalfEdge; 2] {
        self.edges[e.0]
    }

    pub fn contains_edge(&self, e: EdgeRef) -> bool {
        e.0 < self.edges.len()
    }

    pub fn contains_triangle(&self, t: TriangleRef) -> bool {
        t.0 < self.triangles.len()
    }

    /// Edges of the sides of `t`, in side order.
    pub fn triangle_edges(&self, t: TriangleRef) -> [EdgeRef; 3] {
        self.triangles[t.0].map(|h| self.edge_of(h))
    }

    /// Number of orbits of the corner rotation.
    pub fn vertex_count(&self) -> usize {
        self.rotation_orbits().len()
    }

    pub fn rotation_orbits(&self) -> Vec<Vec<HalfEdge>> {
        let mut seen = vec![false; self.num_half_edges()];
        let mut orbits = Vec::new();
        for start in self.half_edges() {
            if seen[start.0] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut h = start;
            while !seen[h.0] {
                seen[h.0] = true;
                orbit.push(h);
                h = self.sigma(h);
            }
            orbits.push(orbit);
        }
        orbits
    }

    /// An edge is flippable when its two sides lie in different triangles.
    pub fn is_flippable(&self, e: EdgeRef) -> bool {
        let [h, o] = self.edge_sides(e);
        self.triangle_of(h) != self.triangle_of(o)
    }

    pub(crate) fn raw_triangles(&self) -> Vec<[usize; 3]> {
        self.triangles.iter().map(|t| t.map(|h| h.0)).collect()
    }

    pub(crate) fn raw_pairing(&self) -> Vec<usize> {
        self.pairing.iter().map(|h| h.0).collect()
    }

    /// Searches for a half-edge bijection onto `other` that preserves
    /// triangles with their cyclic order and the pairing, and induces
    /// `edge_map` on edges.
    pub fn is_isomorphic_via(&self, other: &Triangulation, edge_map: &[EdgeRef]) -> bool {
        if self.num_half_edges() != other.num_half_edges() || edge_map.len() != self.num_edges() {
            return false;
        }
        let root = HalfEdge(0);
        other
            .half_edges()
            .filter(|&cand| other.edge_of(cand) == edge_map[self.edge_of(root).0])
            .any(|cand| self.extend_isomorphism(other, edge_map, root, cand))
    }

    fn extend_isomorphism(
        &self,
        other: &Triangulation,
        edge_map: &[EdgeRef],
        root: HalfEdge,
        image: HalfEdge,
    ) -> bool {
        let n = self.num_half_edges();
        let mut phi: Vec<Option<HalfEdge>> = vec![None; n];
        let mut stack = vec![(root, image)];
        while let Some((h, k)) = stack.pop() {
            match phi[h.0] {
                Some(existing) if existing != k => return false,
                Some(_) => continue,
                None => {}
            }
            if other.edge_of(k) != edge_map[self.edge_of(h).0] {
                return false;
            }
            phi[h.0] = Some(k);
            stack.push((self.next(h), other.next(k)));
            stack.push((self.opp(h), other.opp(k)));
        }
        let mut hit = vec![false; n];
        for k in phi.iter() {
            match k {
                Some(k) if !hit[k.0] => hit[k.0] = true,
                _ => return false,
            }
        }
        true
    }
}

fn invalid(invariant: &'static str, detail: String) -> Error {
    Error::InvalidTriangulation { invariant, detail }
}

fn check_indices(triangles: &[[usize; 3]], pairing: &[usize]) -> Result<()> {
    let n = pairing.len();
    let mut owner = vec![None; n];
    for (t, tri) in triangles.iter().enumerate() {
        for &h in tri {
            if h >= n {
                return Err(invalid(
                    "half-edge-range",
                    format!("triangle {t} names half-edge {h}, but only {n} exist"),
                ));
            }
            if let Some(prev) = owner[h] {
                return Err(invalid(
                    "half-edge-unique-triangle",
                    format!("half-edge {h} appears in triangles {prev} and {t}"),
                ));
            }
            owner[h] = Some(t);
        }
    }
    if let Some(h) = owner.iter().position(Option::is_none) {
        return Err(invalid(
            "half-edge-unique-triangle",
            format!("half-edge {h} lies in no triangle"),
        ));
    }
    for (h, &o) in pairing.iter().enumerate() {
        if o >= n {
            return Err(invalid(
                "pairing-range",
                format!("pairing[{h}] = {o} is out of range"),
            ));
        }
        if o == h {
            return Err(invalid(
                "pairing-fixed-point-free",
                format!("half-edge {h} is paired with itself"),
            ));
        }
        if pairing[o] != h {
            return Err(invalid(
                "pairing-involution",
                format!("pairing[{h}] = {o} but pairing[{o}] = {}", pairing[o]),
            ));
        }
    }
    Ok(())
}

fn check_shape(genus: usize, triangles: &[[usize; 3]], pairing: &[usize]) -> Result<()> {
    if genus < 2 {
        return Err(invalid("genus", format!("genus must be at least 2, got {genus}")));
    }
    let expected = 3 * (4 * genus - 2);
    if pairing.len() != expected {
        return Err(invalid(
            "half-edge-count",
            format!("expected {expected} half-edges, found {}", pairing.len()),
        ));
    }
    if triangles.len() != 4 * genus - 2 {
        return Err(invalid(
            "triangle-count",
            format!("expected {} triangles, found {}", 4 * genus - 2, triangles.len()),
        ));
    }
    check_indices(triangles, pairing)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_counts() {
        let t2 = Triangulation::build_canonical(2).unwrap();
        assert_eq!((t2.num_triangles(), t2.num_edges(), t2.vertex_count()), (6, 9, 1));
        assert_eq!(t2.rotation_orbits()[0].len(), 18);
        let t3 = Triangulation::build_canonical(3).unwrap();
        assert_eq!((t3.num_triangles(), t3.num_edges()), (10, 15));
        for g in 2..=8 {
            Triangulation::build_canonical(g).unwrap().validate().unwrap();
        }
    }

    #[test]
    fn rejects_small_genus() {
        assert!(matches!(Triangulation::build_canonical(1), Err(Error::Domain(_))));
        assert!(matches!(Triangulation::build_canonical(0), Err(Error::Domain(_))));
    }

    #[test]
    fn navigation_is_consistent() {
        let tau = Triangulation::build_canonical(3).unwrap();
        for h in tau.half_edges() {
            assert_eq!(tau.opp(tau.opp(h)), h);
            assert_eq!(tau.next(tau.prev(h)), h);
            assert_eq!(tau.next(tau.next(tau.next(h))), h);
            assert_eq!(tau.edge_of(h), tau.edge_of(tau.opp(h)));
            assert_ne!(tau.triangle_of(h), tau.triangle_of(tau.opp(h)));
        }
        for e in tau.edges() {
            let [h, o] = tau.edge_sides(e);
            assert!(h < o);
            assert!(tau.is_flippable(e));
        }
    }

    fn invariant_of(err: Error) -> &'static str {
        match err {
            Error::InvalidTriangulation { invariant, .. } => invariant,
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn named_invariants() {
        let tau = Triangulation::build_canonical(2).unwrap();
        let tris = tau.raw_triangles();
        let pairing = tau.raw_pairing();

        let mut p = pairing.clone();
        p[0] = 0;
        let err = Triangulation::from_parts(2, tris.clone(), p).unwrap_err();
        assert_eq!(invariant_of(err), "pairing-fixed-point-free");

        let mut p = pairing.clone();
        let (a, b) = (p[0], p[1]);
        p[0] = b;
        p[1] = a;
        let err = Triangulation::from_parts(2, tris.clone(), p).unwrap_err();
        assert_eq!(invariant_of(err), "pairing-involution");

        let mut t = tris.clone();
        t[1][0] = 0;
        let err = Triangulation::from_parts(2, t, pairing.clone()).unwrap_err();
        assert_eq!(invariant_of(err), "half-edge-unique-triangle");

        let err = Triangulation::from_parts(3, tris, pairing).unwrap_err();
        assert_eq!(invariant_of(err), "half-edge-count");
    }

    #[test]
    fn two_vertex_map_is_rejected() {
        // Swap the gluings of two pairs so that the rotation splits.
        let tau = Triangulation::build_canonical(2).unwrap();
        let tris = tau.raw_triangles();
        let mut found = false;
        for x in 0..18 {
            for y in (x + 1)..18 {
                let mut p = tau.raw_pairing();
                let (px, py) = (p[x], p[y]);
                if px == y || px == py {
                    continue;
                }
                p[x] = py;
                p[py] = x;
                p[y] = px;
                p[px] = y;
                if let Err(err) = Triangulation::from_parts(2, tris.clone(), p) {
                    assert!(matches!(invariant_of(err), "single-vertex"));
                    found = true;
                }
            }
        }
        assert!(found);
    }
}
