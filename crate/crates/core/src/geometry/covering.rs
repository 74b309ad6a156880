//! Locally isometric coverings of the quotient surfaces.
//!
//! Three coverings are supported: plane over torus, plane over Klein
//! bottle, and sphere over projective plane. The covering projection
//! never increases intrinsic distances, and every point of the base has
//! an explicit set of lifts indexed by deck transformations.

use super::metric::klein_lift;
use super::point::SurfacePoint;
use super::spec::GeometrySpec;
use crate::error::{Error, Result};

/// A locally isometric covering `total -> base` together with the integer
/// search radius used when enumerating deck transformations.
#[derive(Clone, Debug, PartialEq)]
pub struct CoveringSpec {
    total: GeometrySpec,
    base: GeometrySpec,
    deck_window: u32,
}

impl CoveringSpec {
    /// Build a covering; the (total, base) pair must be one of
    /// plane->torus, plane->Klein bottle, sphere->projective plane.
    pub fn new(total: GeometrySpec, base: GeometrySpec, deck_window: u32) -> Result<Self> {
        let legal = matches!(
            (&total, &base),
            (GeometrySpec::EuclideanPlane, GeometrySpec::FlatTorus(_))
                | (GeometrySpec::EuclideanPlane, GeometrySpec::FlatKleinBottle { .. })
                | (GeometrySpec::UnitSphere, GeometrySpec::ProjectivePlane)
        );
        if !legal {
            return Err(Error::InvalidGeometry(format!(
                "no covering {} -> {}",
                total.tag(),
                base.tag()
            )));
        }
        if deck_window == 0 {
            return Err(Error::InvalidArgument("deck window must be at least 1".into()));
        }
        Ok(CoveringSpec { total, base, deck_window })
    }

    /// The canonical covering of a quotient geometry, with the default
    /// deck window.
    pub fn universal(base: &GeometrySpec) -> Result<Self> {
        let total = match base {
            GeometrySpec::FlatTorus(_) | GeometrySpec::FlatKleinBottle { .. } => {
                GeometrySpec::EuclideanPlane
            }
            GeometrySpec::ProjectivePlane => GeometrySpec::UnitSphere,
            other => {
                return Err(Error::InvalidGeometry(format!(
                    "{} is not a quotient surface",
                    other.tag()
                )))
            }
        };
        let window = Self::default_deck_window(base)?;
        CoveringSpec::new(total, base.clone(), window)
    }

    /// Window guaranteed to contain the distance-minimizing deck
    /// translate between canonical representatives: the fundamental
    /// domain diameter divided by the shortest deck translation length,
    /// rounded up, plus one.
    pub fn default_deck_window(base: &GeometrySpec) -> Result<u32> {
        match base {
            GeometrySpec::FlatTorus(lat) => {
                Ok((lat.reduced_diameter() / lat.shortest_vector()).ceil() as u32 + 1)
            }
            GeometrySpec::FlatKleinBottle { width, height } => {
                let diam = width.hypot(*height);
                Ok((diam / width.min(*height)).ceil() as u32 + 1)
            }
            GeometrySpec::ProjectivePlane => Ok(1),
            other => Err(Error::InvalidGeometry(format!(
                "{} is not a quotient surface",
                other.tag()
            ))),
        }
    }

    pub fn total_space(&self) -> &GeometrySpec {
        &self.total
    }

    pub fn base(&self) -> &GeometrySpec {
        &self.base
    }

    pub fn deck_window(&self) -> u32 {
        self.deck_window
    }

    /// Project a total-space point to its canonical representative in the
    /// base. Never increases distances.
    pub fn project(&self, p: &SurfacePoint) -> Result<SurfacePoint> {
        self.total.check_point(p)?;
        Ok(self.base.canonicalize_unchecked(p))
    }

    /// All lifts of a base point under deck transformations with indices
    /// within `window`.
    ///
    /// For the torus the indices run over the reduced lattice basis; for
    /// the Klein bottle over glide powers and vertical translations; the
    /// projective plane always has exactly the two antipodal lifts.
    /// Every returned point projects back onto the canonical
    /// representative of `p_base`.
    pub fn enumerate_lifts(&self, p_base: &SurfacePoint, window: u32) -> Result<Vec<SurfacePoint>> {
        if window == 0 {
            return Err(Error::InvalidArgument("lift window must be at least 1".into()));
        }
        let q = self.base.canonicalize(p_base)?;
        let w = window as i64;
        Ok(match &self.base {
            GeometrySpec::FlatTorus(lat) => {
                let qv = q.expect_xy();
                let mut lifts = Vec::with_capacity(((2 * w + 1) * (2 * w + 1)) as usize);
                for m in -w..=w {
                    for n in -w..=w {
                        lifts.push(SurfacePoint::TwoD(qv + lat.deck_translate(m, n)));
                    }
                }
                lifts
            }
            GeometrySpec::FlatKleinBottle { width, height } => {
                let qv = q.expect_xy();
                let mut lifts = Vec::with_capacity(((2 * w + 1) * (2 * w + 1)) as usize);
                for m in -w..=w {
                    for n in -w..=w {
                        lifts.push(SurfacePoint::TwoD(klein_lift(qv, m, n, *width, *height)));
                    }
                }
                lifts
            }
            GeometrySpec::ProjectivePlane => {
                let v = q.expect_xyz();
                vec![SurfacePoint::ThreeD(v), SurfacePoint::ThreeD(-v)]
            }
            _ => unreachable!("covering base is always a quotient"),
        })
    }
}
