//! Chart coordinates of a point on one of the catalog surfaces.

use super::vec::{Vec2, Vec3};

/// Coordinates of a point in the chart of its surface.
///
/// Plane, disk, torus and Klein bottle points live in a two-dimensional
/// chart; sphere and projective points are stored as unit vectors in
/// three-space. Points on quotient surfaces are kept as canonical
/// representatives, so derived equality is meaningful once a point has
/// been passed through [`super::GeometrySpec::canonicalize`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SurfacePoint {
    TwoD(Vec2),
    ThreeD(Vec3),
}

impl SurfacePoint {
    pub fn xy(x: f64, y: f64) -> Self {
        SurfacePoint::TwoD(Vec2::new(x, y))
    }

    pub fn xyz(x: f64, y: f64, z: f64) -> Self {
        SurfacePoint::ThreeD(Vec3::new(x, y, z))
    }

    pub fn as_xy(&self) -> Option<Vec2> {
        match self {
            SurfacePoint::TwoD(v) => Some(*v),
            SurfacePoint::ThreeD(_) => None,
        }
    }

    pub fn as_xyz(&self) -> Option<Vec3> {
        match self {
            SurfacePoint::TwoD(_) => None,
            SurfacePoint::ThreeD(v) => Some(*v),
        }
    }

    /// Chart coordinates as a slice-friendly vector (2 or 3 entries).
    pub fn coords(&self) -> Vec<f64> {
        match self {
            SurfacePoint::TwoD(v) => vec![v.x, v.y],
            SurfacePoint::ThreeD(v) => vec![v.x, v.y, v.z],
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            SurfacePoint::TwoD(v) => v.is_finite(),
            SurfacePoint::ThreeD(v) => v.is_finite(),
        }
    }

    /// Lexicographic comparison of coordinate tuples; used for
    /// deterministic tie-breaking, not for any geometric order.
    pub(crate) fn lex_cmp(&self, other: &SurfacePoint) -> std::cmp::Ordering {
        let a = self.coords();
        let b = other.coords();
        for (x, y) in a.iter().zip(b.iter()) {
            match x.partial_cmp(y) {
                Some(std::cmp::Ordering::Equal) | None => continue,
                Some(ord) => return ord,
            }
        }
        a.len().cmp(&b.len())
    }

    pub(crate) fn expect_xy(&self) -> Vec2 {
        self.as_xy().expect("two-dimensional chart point expected")
    }

    pub(crate) fn expect_xyz(&self) -> Vec3 {
        self.as_xyz().expect("unit-vector point expected")
    }
}
