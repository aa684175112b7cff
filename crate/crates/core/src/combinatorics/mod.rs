//! One-vertex triangulations as half-edge maps, diagonal flips, the
//! truncated complex and loop words in its 1-skeleton.

mod flip;
mod json;
mod quad;
mod triangulation;
mod truncated;
mod word;

pub use flip::{flip, FlipResult};
pub use json::TriangulationJson;
pub use quad::{quad_around, quad_at, Coincidences, Quadrilateral};
pub use triangulation::{EdgeRef, HalfEdge, TriangleRef, Triangulation};
pub use truncated::{truncate, HexSide, Hexagon, TruncatedComplex};
pub use word::{boundary_path, crossing_word, edge_loop_word, EdgeWord, Step, BASE_CORNER};
