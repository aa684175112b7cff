use super::triangulation::{HalfEdge, TriangleRef, Triangulation};

/// A side of a hexagon of the truncated complex.
///
/// Vertex `v(h)` is the end of edge `[h]` at the tail of `h`. The long edge
/// of `h` runs from `v(h)` to `v(opp h)`. The short edge of corner `h` (the
/// corner of `h`'s triangle at the tail of `h`) runs from `v(h)` to
/// `v(sigma h)`, following the counterclockwise boundary of the removed disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HexSide {
    /// Long edge of `h`, traversed from `v(h)` to `v(opp h)`.
    Long(HalfEdge),
    /// Short edge of the corner at the tail of `h`, traversed backwards.
    ShortReversed(HalfEdge),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hexagon {
    pub triangle: TriangleRef,
    /// Sides in counterclockwise order, alternating long and short.
    pub sides: [HexSide; 6],
}

#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    source: Triangulation,
    hexagons: Vec<Hexagon>,
    boundary: Vec<HalfEdge>,
}

pub fn truncate(tau: &Triangulation) -> TruncatedComplex {
    let hexagons = tau
        .triangles()
        .map(|t| {
            let [x0, x1, x2] = tau.triangle_sides(t);
            Hexagon {
                triangle: t,
                sides: [
                    HexSide::Long(x0),
                    HexSide::ShortReversed(x1),
                    HexSide::Long(x1),
                    HexSide::ShortReversed(x2),
                    HexSide::Long(x2),
                    HexSide::ShortReversed(x0),
                ],
            }
        })
        .collect();
    let mut boundary = vec![HalfEdge(0)];
    let mut h = tau.sigma(HalfEdge(0));
    while h != HalfEdge(0) {
        boundary.push(h);
        h = tau.sigma(h);
    }
    TruncatedComplex { source: tau.clone(), hexagons, boundary }
}

impl TruncatedComplex {
    pub fn source(&self) -> &Triangulation {
        &self.source
    }

    pub fn hexagons(&self) -> &[Hexagon] {
        &self.hexagons
    }

    /// Corners in the order the short edges are met walking the boundary
    /// cycle from corner `h0`.
    pub fn boundary_cycle(&self) -> &[HalfEdge] {
        &self.boundary
    }

    /// Number of hexagon sides lying on the long edge of `e`.
    pub fn long_multiplicity(&self, e: super::EdgeRef) -> usize {
        self.hexagons
            .iter()
            .flat_map(|hex| hex.sides.iter())
            .filter(|side| matches!(side, HexSide::Long(h) if self.source.edge_of(*h) == e))
            .count()
    }
}
