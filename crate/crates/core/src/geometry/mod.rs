//! The six metric surfaces and their chart operations: exact geodesic
//! distances, geodesic interpolation, logarithm and exponential maps,
//! bi-Lipschitz chart comparison, and covering-space structure for the
//! quotient surfaces.
//!
//! All operations are pure functions of their inputs; every type here is
//! immutable after construction and safe to share between threads.

mod comparison;
mod covering;
mod metric;
mod point;
mod spec;
mod vec;

pub use comparison::{ComparisonReport, DIM_FACTOR};
pub use covering::CoveringSpec;
pub use point::SurfacePoint;
pub use spec::{fmt_f64, GeometrySpec, TorusLattice, MIN_LATTICE_DET};
pub use vec::{Vec2, Vec3};

pub(crate) use metric::{
    acosh1p, klein_closest_lift, projective_closest_lift, torus_closest_lift,
};
