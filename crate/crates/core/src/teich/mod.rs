//! Holonomy representations from edge coordinates and triangle signs.

mod euler;
mod point;
mod ptolemy;
mod recover;
mod sample;
mod transport;

pub use euler::{
    euler_breakdown, euler_formula, euler_via_windings, EulerBreakdown, Face, FaceKind,
    SubdividedComplex, TildeEdge, Vertex,
};
pub use point::{
    boundary_parameter, psi, rescale_decoration, triangle_terms, CoordinateJson, CoordinatePoint,
};
pub use ptolemy::{
    ptolemy_flip, ptolemy_inputs, signed_ptolemy, transfer_through_flip, PtolemySolution,
};
pub use recover::{recover_coordinates, side_holonomy, triangle_sign};
pub use sample::{sample_point, CHART_TOL, SAMPLER_ATTEMPTS};
pub use transport::{
    assign_transports, corner_parameter, lambda_forward, DecoratedRep, TransportAssignment,
};
