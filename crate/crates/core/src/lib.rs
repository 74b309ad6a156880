//! Steiner minimal trees, minimal spanning trees, and Steiner ratio
//! experiments on six constant-curvature surfaces: the Euclidean plane,
//! the Poincare disk, the unit sphere, flat tori, flat Klein bottles, and
//! the projective plane with its round metric.
//!
//! The crate provides:
//!
//! - exact geodesic distances, interpolation and chart (log/exp) maps for
//!   every surface in the catalog ([`geometry`]);
//! - minimal spanning trees on geodesic complete graphs plus a brute-force
//!   oracle ([`spanning`]);
//! - certified upper bounds for Steiner minimal trees by full topology
//!   enumeration and chart descent, with covering-space lifting for the
//!   quotient surfaces ([`steiner`]);
//! - Steiner ratio analytics: per-configuration ratios, the hyperbolic
//!   ratio curve with its limit and Taylor behavior, randomized ratio
//!   searches, and covering/bi-Lipschitz experiments ([`ratio`]);
//! - a text point-file format and a verification suite backing the
//!   `steiner-lab` command line tool ([`pointfile`], [`verify`]).

pub mod config;
pub mod error;
pub mod geometry;
pub mod pointfile;
pub mod ratio;
pub mod spanning;
pub mod steiner;
pub mod tree;
pub mod verify;

pub use config::Configuration;
pub use error::{Error, Result};
pub use geometry::{ComparisonReport, CoveringSpec, GeometrySpec, SurfacePoint, Vec2, Vec3};
pub use tree::{NetworkTree, TreeVertex};
