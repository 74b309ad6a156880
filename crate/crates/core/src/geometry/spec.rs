//! The surface catalog: six constant-curvature geometries with exact
//! chart descriptions.

use std::fmt;
use std::str::FromStr;

use super::point::SurfacePoint;
use super::vec::Vec2;
use crate::error::{Error, Result};

/// Determinant magnitude below which a torus basis counts as degenerate.
pub const MIN_LATTICE_DET: f64 = 1e-12;

/// Fractional part this close to 1 is snapped to 0 when reducing into a
/// fundamental domain, so that canonicalization is idempotent and lifts
/// of canonical points project back onto them.
const WRAP_SNAP: f64 = 1e-9;

/// Tolerance for the unit-norm invariant of sphere and projective points.
const UNIT_NORM_TOL: f64 = 1e-12;

/// Margin keeping disk points strictly inside the open unit disk.
const DISK_BOUNDARY_MARGIN: f64 = 1e-12;

/// Threshold treating a coordinate as zero when choosing the canonical
/// sign of a projective representative.
const PROJECTIVE_ZERO: f64 = 1e-12;

/// A plane lattice spanned by two independent basis vectors, with the
/// reduced data needed to answer closest-vector queries exactly.
#[derive(Clone, Debug)]
pub struct TorusLattice {
    a: Vec2,
    b: Vec2,
    /// Lagrange-reduced basis of the same lattice: `reduced.0` is a
    /// shortest lattice vector and the pair is near-orthogonal, which
    /// bounds the search window of every closest-vector query.
    reduced: (Vec2, Vec2),
}

impl PartialEq for TorusLattice {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl TorusLattice {
    pub fn new(a: Vec2, b: Vec2) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::InvalidGeometry(
                "torus basis vectors must be finite".into(),
            ));
        }
        let det = a.x * b.y - a.y * b.x;
        if det.abs() <= MIN_LATTICE_DET {
            return Err(Error::InvalidGeometry(format!(
                "torus basis is degenerate (determinant {det:e})"
            )));
        }
        let reduced = lagrange_reduce(a, b);
        Ok(TorusLattice { a, b, reduced })
    }

    pub fn basis(&self) -> (Vec2, Vec2) {
        (self.a, self.b)
    }

    /// Coefficients of `v` in the reduced basis.
    pub(crate) fn reduced_coefficients(&self, v: Vec2) -> (f64, f64) {
        let (ra, rb) = self.reduced;
        let det = ra.x * rb.y - ra.y * rb.x;
        (
            (v.x * rb.y - v.y * rb.x) / det,
            (ra.x * v.y - ra.y * v.x) / det,
        )
    }

    /// The lattice vector `m*a' + n*b'` in the reduced basis. All lift
    /// enumeration and distance code builds translates through this one
    /// helper so that equal translates are bitwise equal.
    pub(crate) fn deck_translate(&self, m: i64, n: i64) -> Vec2 {
        let (ra, rb) = self.reduced;
        ra * (m as f64) + rb * (n as f64)
    }

    /// Length of the shortest nonzero lattice vector.
    pub(crate) fn shortest_vector(&self) -> f64 {
        self.reduced.0.norm()
    }

    /// Diameter of the fundamental parallelogram of the reduced basis.
    pub(crate) fn reduced_diameter(&self) -> f64 {
        let (ra, rb) = self.reduced;
        (ra + rb).norm().max((ra - rb).norm())
    }

    /// Reduce `p` into the canonical fundamental domain
    /// `{s*a' + t*b' : s,t in [0,1)}` of the reduced basis. Canonical
    /// representatives of this domain are never farther apart than the
    /// domain diameter, which is what makes the documented deck window
    /// sufficient for any input basis.
    pub(crate) fn reduce(&self, p: Vec2) -> Vec2 {
        let (s, t) = self.reduced_coefficients(p);
        let sf = wrap_unit(s);
        let tf = wrap_unit(t);
        let (ra, rb) = self.reduced;
        ra * sf + rb * tf
    }
}

/// Fractional part in [0, 1) with snapping of values just below 1.
fn wrap_unit(c: f64) -> f64 {
    let f = c - c.floor();
    if 1.0 - f < WRAP_SNAP {
        0.0
    } else {
        f
    }
}

/// Lagrange (Gauss) reduction of a rank-2 lattice basis.
fn lagrange_reduce(mut a: Vec2, mut b: Vec2) -> (Vec2, Vec2) {
    for _ in 0..64 {
        if a.norm_sq() > b.norm_sq() {
            std::mem::swap(&mut a, &mut b);
        }
        let k = (b.dot(a) / a.norm_sq()).round();
        if k == 0.0 {
            break;
        }
        b = b - a * k;
    }
    if a.norm_sq() > b.norm_sq() {
        std::mem::swap(&mut a, &mut b);
    }
    (a, b)
}

/// One of the six metric surfaces.
///
/// Curvatures are fixed: the plane, torus and Klein bottle are flat, the
/// disk carries the curvature -1 hyperbolic metric, and the sphere and
/// projective plane carry the curvature +1 metric of the radius-1 sphere.
#[derive(Clone, Debug, PartialEq)]
pub enum GeometrySpec {
    EuclideanPlane,
    PoincareDisk,
    UnitSphere,
    FlatTorus(TorusLattice),
    FlatKleinBottle { width: f64, height: f64 },
    ProjectivePlane,
}

impl GeometrySpec {
    pub fn flat_torus(a: Vec2, b: Vec2) -> Result<Self> {
        Ok(GeometrySpec::FlatTorus(TorusLattice::new(a, b)?))
    }

    pub fn flat_klein(width: f64, height: f64) -> Result<Self> {
        if !(width > 0.0 && height > 0.0 && width.is_finite() && height.is_finite()) {
            return Err(Error::InvalidGeometry(format!(
                "Klein bottle needs positive finite dimensions, got {width} x {height}"
            )));
        }
        Ok(GeometrySpec::FlatKleinBottle { width, height })
    }

    /// Number of chart coordinates per point (2, or 3 for surfaces stored
    /// as unit vectors).
    pub fn chart_dim(&self) -> usize {
        match self {
            GeometrySpec::UnitSphere | GeometrySpec::ProjectivePlane => 3,
            _ => 2,
        }
    }

    /// Short tag used in error messages and the text grammar.
    pub fn tag(&self) -> &'static str {
        match self {
            GeometrySpec::EuclideanPlane => "plane",
            GeometrySpec::PoincareDisk => "disk",
            GeometrySpec::UnitSphere => "sphere",
            GeometrySpec::FlatTorus(_) => "torus",
            GeometrySpec::FlatKleinBottle { .. } => "klein",
            GeometrySpec::ProjectivePlane => "projective",
        }
    }

    pub fn is_quotient(&self) -> bool {
        matches!(
            self,
            GeometrySpec::FlatTorus(_)
                | GeometrySpec::FlatKleinBottle { .. }
                | GeometrySpec::ProjectivePlane
        )
    }

    /// Uniform injectivity radius of the surface (half the systole for
    /// the quotients, pi for the sphere, pi/2 for the projective plane).
    pub fn injectivity_radius(&self) -> f64 {
        match self {
            GeometrySpec::EuclideanPlane | GeometrySpec::PoincareDisk => f64::INFINITY,
            GeometrySpec::UnitSphere => std::f64::consts::PI,
            GeometrySpec::ProjectivePlane => std::f64::consts::FRAC_PI_2,
            GeometrySpec::FlatTorus(lat) => 0.5 * lat.shortest_vector(),
            GeometrySpec::FlatKleinBottle { width, height } => 0.5 * width.min(*height),
        }
    }

    fn invalid_point(&self, reason: impl Into<String>) -> Error {
        Error::InvalidPoint {
            geometry: self.tag().to_string(),
            reason: reason.into(),
        }
    }

    /// Check the chart invariants of `p` for this geometry.
    pub fn check_point(&self, p: &SurfacePoint) -> Result<()> {
        if !p.is_finite() {
            return Err(self.invalid_point("coordinates must be finite"));
        }
        match self {
            GeometrySpec::EuclideanPlane
            | GeometrySpec::FlatTorus(_)
            | GeometrySpec::FlatKleinBottle { .. } => match p {
                SurfacePoint::TwoD(_) => Ok(()),
                SurfacePoint::ThreeD(_) => {
                    Err(self.invalid_point("expected two chart coordinates"))
                }
            },
            GeometrySpec::PoincareDisk => match p {
                SurfacePoint::TwoD(v) => {
                    if v.norm_sq() <= 1.0 - DISK_BOUNDARY_MARGIN {
                        Ok(())
                    } else {
                        Err(self.invalid_point(format!(
                            "point ({}, {}) is not strictly inside the unit disk",
                            v.x, v.y
                        )))
                    }
                }
                SurfacePoint::ThreeD(_) => {
                    Err(self.invalid_point("expected two chart coordinates"))
                }
            },
            GeometrySpec::UnitSphere | GeometrySpec::ProjectivePlane => match p {
                SurfacePoint::ThreeD(v) => {
                    if (v.norm() - 1.0).abs() <= UNIT_NORM_TOL {
                        Ok(())
                    } else {
                        Err(self.invalid_point(format!(
                            "vector norm {} is not within {UNIT_NORM_TOL:e} of 1",
                            v.norm()
                        )))
                    }
                }
                SurfacePoint::TwoD(_) => Err(self.invalid_point("expected a unit 3-vector")),
            },
        }
    }

    /// Validate `p` and return its canonical representative: quotient
    /// points are reduced into the fundamental domain, projective
    /// representatives get their first nonzero coordinate positive, and
    /// unit vectors are renormalized.
    pub fn canonicalize(&self, p: &SurfacePoint) -> Result<SurfacePoint> {
        self.check_point(p)?;
        Ok(self.canonicalize_unchecked(p))
    }

    pub(crate) fn canonicalize_unchecked(&self, p: &SurfacePoint) -> SurfacePoint {
        match self {
            GeometrySpec::EuclideanPlane | GeometrySpec::PoincareDisk => *p,
            GeometrySpec::UnitSphere => SurfacePoint::ThreeD(renormalize(p.expect_xyz())),
            GeometrySpec::FlatTorus(lat) => SurfacePoint::TwoD(lat.reduce(p.expect_xy())),
            GeometrySpec::FlatKleinBottle { width, height } => {
                SurfacePoint::TwoD(klein_reduce(p.expect_xy(), *width, *height))
            }
            GeometrySpec::ProjectivePlane => {
                SurfacePoint::ThreeD(projective_reduce(renormalize(p.expect_xyz())))
            }
        }
    }
}

/// Rescale to unit length, but leave vectors already inside the validity
/// tolerance untouched so canonical forms are bitwise stable.
fn renormalize(v: super::vec::Vec3) -> super::vec::Vec3 {
    if (v.norm() - 1.0).abs() <= UNIT_NORM_TOL {
        v
    } else {
        v.normalized()
    }
}

/// Reduce a plane point into the Klein bottle fundamental domain
/// `[0, w) x [0, h)` under the deck group generated by the glide
/// `(x, y) -> (x + w, -y)` and the translation `(x, y) -> (x, y + h)`.
pub(crate) fn klein_reduce(p: Vec2, w: f64, h: f64) -> Vec2 {
    let cx = p.x / w;
    let mut m = cx.floor();
    let mut fx = cx - m;
    if 1.0 - fx < WRAP_SNAP {
        fx = 0.0;
        m += 1.0;
    }
    // Applying the glide an odd number of times flips y.
    let y = if (m as i64).rem_euclid(2) == 0 { p.y } else { -p.y };
    let cy = y / h;
    let mut fy = cy - cy.floor();
    if 1.0 - fy < WRAP_SNAP {
        fy = 0.0;
    }
    Vec2::new(fx * w, fy * h)
}

/// Canonical antipodal representative: first coordinate larger than the
/// zero threshold is made positive.
pub(crate) fn projective_reduce(v: super::vec::Vec3) -> super::vec::Vec3 {
    for c in [v.x, v.y, v.z] {
        if c.abs() > PROJECTIVE_ZERO {
            return if c < 0.0 { -v } else { v };
        }
    }
    v
}

impl fmt::Display for GeometrySpec {
    /// Round-trippable form of the geometry grammar: `plane`, `disk`,
    /// `sphere`, `torus:ax,ay;bx,by`, `klein:w,h`, `projective`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometrySpec::FlatTorus(lat) => {
                let (a, b) = lat.basis();
                write!(
                    f,
                    "torus:{},{};{},{}",
                    fmt_f64(a.x),
                    fmt_f64(a.y),
                    fmt_f64(b.x),
                    fmt_f64(b.y)
                )
            }
            GeometrySpec::FlatKleinBottle { width, height } => {
                write!(f, "klein:{},{}", fmt_f64(*width), fmt_f64(*height))
            }
            other => f.write_str(other.tag()),
        }
    }
}

/// 17-significant-digit decimal rendering; round-trips every f64.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

impl FromStr for GeometrySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "plane" => return Ok(GeometrySpec::EuclideanPlane),
            "disk" => return Ok(GeometrySpec::PoincareDisk),
            "sphere" => return Ok(GeometrySpec::UnitSphere),
            "projective" => return Ok(GeometrySpec::ProjectivePlane),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("torus:") {
            let (a_part, b_part) = rest.split_once(';').ok_or_else(|| {
                Error::InvalidGeometry(format!("torus spec needs ';' between basis vectors: {s}"))
            })?;
            let a = parse_pair(a_part, s)?;
            let b = parse_pair(b_part, s)?;
            return GeometrySpec::flat_torus(a, b);
        }
        if let Some(rest) = s.strip_prefix("klein:") {
            let v = parse_pair(rest, s)?;
            return GeometrySpec::flat_klein(v.x, v.y);
        }
        Err(Error::InvalidGeometry(format!("unknown geometry tag: {s}")))
    }
}

fn parse_pair(part: &str, whole: &str) -> Result<Vec2> {
    let (x, y) = part.split_once(',').ok_or_else(|| {
        Error::InvalidGeometry(format!("expected 'x,y' in geometry spec: {whole}"))
    })?;
    let px = x.trim().parse::<f64>().map_err(|_| {
        Error::InvalidGeometry(format!("malformed number '{}' in: {whole}", x.trim()))
    })?;
    let py = y.trim().parse::<f64>().map_err(|_| {
        Error::InvalidGeometry(format!("malformed number '{}' in: {whole}", y.trim()))
    })?;
    Ok(Vec2::new(px, py))
}
