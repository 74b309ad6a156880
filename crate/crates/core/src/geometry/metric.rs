//! Exact geodesic distances, geodesic interpolation, and the logarithm /
//! exponential chart maps for every surface in the catalog.
//!
//! Quotient surfaces are handled through their deck groups: a distance on
//! the torus or Klein bottle is the minimum plane distance to a deck image
//! of the second point, and on the projective plane the minimum sphere
//! angle over the two antipodal lifts. All deck images are built through
//! a single arithmetic path so that independently enumerated lifts produce
//! bitwise identical distances.

use std::f64::consts::{FRAC_PI_2, PI};

use super::point::SurfacePoint;
use super::spec::{GeometrySpec, TorusLattice};
use super::vec::{Vec2, Vec3};
use crate::error::{Error, Result};

/// arccosh(1 + x) for x >= 0, stable for small x and safe for huge x.
pub(crate) fn acosh1p(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x < 0.5 {
        (x + (x * (x + 2.0)).sqrt()).ln_1p()
    } else if x < 1e150 {
        (1.0 + x + (x * (x + 2.0)).sqrt()).ln()
    } else {
        // arccosh(y) = ln(2y) + O(1/y^2); the correction is below f64
        // resolution in this range.
        std::f64::consts::LN_2 + x.ln()
    }
}

fn clamp_unit(x: f64) -> f64 {
    x.clamp(-1.0, 1.0)
}

/// Angle between unit vectors through the arctangent of the cross and
/// dot products. Exact at 0 (bitwise equal inputs give exactly 0) and
/// accurate at every scale, where arccos of a rounded dot product loses
/// eight digits near the poles.
fn sphere_angle(p: Vec3, q: Vec3) -> f64 {
    p.cross(q).norm().atan2(p.dot(q))
}

/// Sphere angle folded through the antipodal identification, that is
/// `min(theta, pi - theta)`.
fn projective_angle(p: Vec3, q: Vec3) -> f64 {
    p.cross(q).norm().atan2(p.dot(q).abs())
}

/// Mobius transform sending `b` to the origin of the disk.
fn mobius_to_origin(b: Vec2, z: Vec2) -> Vec2 {
    (z - b).cdiv(Vec2::new(1.0, 0.0) - b.conj().cmul(z))
}

/// Inverse of [`mobius_to_origin`].
fn mobius_from_origin(b: Vec2, w: Vec2) -> Vec2 {
    (w + b).cdiv(Vec2::new(1.0, 0.0) + b.conj().cmul(w))
}

/// Klein bottle deck image of `q` under glide power `m` and vertical
/// translation `n`: `(x, y) -> (x + m w, (-1)^m y + n h)`.
pub(crate) fn klein_lift(q: Vec2, m: i64, n: i64, w: f64, h: f64) -> Vec2 {
    let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    Vec2::new(q.x + (m as f64) * w, sign * q.y + (n as f64) * h)
}

/// Deck indices (m, n) likely to contain the closest torus lift of a
/// difference vector `d`, in ascending lexicographic order.
///
/// The reduced basis is near-orthogonal, so the true closest vector has
/// coefficients within one unit of the rounded real solution; the +/-3
/// window adds margin (near-ties between translates must all be seen so
/// the float minimum is exact) and is cross-checked against a
/// brute-force oracle.
fn torus_candidates(lat: &TorusLattice, d: Vec2) -> impl Iterator<Item = (i64, i64)> {
    let (cm, cn) = lat.reduced_coefficients(d);
    let m0 = cm.round() as i64;
    let n0 = cn.round() as i64;
    (m0 - 3..=m0 + 3).flat_map(move |m| (n0 - 3..=n0 + 3).map(move |n| (m, n)))
}

/// Closest torus lift of `q` as seen from `p`, with the deck index of the
/// chosen translate. Ties resolve to the lexicographically smallest index.
pub(crate) fn torus_closest_lift(lat: &TorusLattice, p: Vec2, q: Vec2) -> (Vec2, f64, (i64, i64)) {
    let mut best: Option<(Vec2, f64, (i64, i64))> = None;
    for (m, n) in torus_candidates(lat, p - q) {
        let lift = q + lat.deck_translate(m, n);
        let val = (p - lift).norm();
        if best.is_none_or(|(_, b, _)| val < b) {
            best = Some((lift, val, (m, n)));
        }
    }
    best.expect("candidate window is never empty")
}

/// Closest Klein bottle lift of `q` as seen from `p`. The two glide
/// parity classes are rectangular lattices, so rounding each coordinate
/// solves both exactly; neighbors are scanned for tie determinism.
pub(crate) fn klein_closest_lift(w: f64, h: f64, p: Vec2, q: Vec2) -> (Vec2, f64, (i64, i64)) {
    let mut cands: Vec<(i64, i64)> = Vec::with_capacity(18);
    for parity in 0..2i64 {
        let sign = if parity == 0 { 1.0 } else { -1.0 };
        let k0 = ((p.x - (q.x + parity as f64 * w)) / (2.0 * w)).round() as i64;
        let n0 = ((p.y - sign * q.y) / h).round() as i64;
        for dk in -1..=1i64 {
            for dn in -1..=1i64 {
                cands.push((parity + 2 * (k0 + dk), n0 + dn));
            }
        }
    }
    cands.sort_unstable();
    let mut best: Option<(Vec2, f64, (i64, i64))> = None;
    for (m, n) in cands {
        let lift = klein_lift(q, m, n, w, h);
        let val = (p - lift).norm();
        if best.is_none_or(|(_, b, _)| val < b) {
            best = Some((lift, val, (m, n)));
        }
    }
    best.expect("candidate window is never empty")
}

/// Closer of the two antipodal sphere lifts of `q` as seen from `p`.
/// An exact tie (distance pi/2) resolves to the lexicographically
/// smaller coordinate tuple.
pub(crate) fn projective_closest_lift(p: Vec3, q: Vec3) -> (Vec3, f64) {
    let mut lifts = [q, -q];
    lifts.sort_by(|a, b| {
        SurfacePoint::ThreeD(*a)
            .lex_cmp(&SurfacePoint::ThreeD(*b))
    });
    let mut best: Option<(Vec3, f64)> = None;
    for lift in lifts {
        let val = sphere_angle(p, lift);
        if best.is_none_or(|(_, b)| val < b) {
            best = Some((lift, val));
        }
    }
    best.unwrap()
}

/// Deterministic orthonormal frame of the tangent plane at a unit vector.
/// The first axis is the coordinate direction least aligned with `n`,
/// projected onto the tangent plane; at the north pole this yields the
/// x and y axes in order.
pub(crate) fn tangent_frame(n: Vec3) -> (Vec3, Vec3) {
    let mags = [n.x.abs(), n.y.abs(), n.z.abs()];
    let mut k = 0;
    for i in 1..3 {
        if mags[i] < mags[k] {
            k = i;
        }
    }
    let axis = match k {
        0 => Vec3::new(1.0, 0.0, 0.0),
        1 => Vec3::new(0.0, 1.0, 0.0),
        _ => Vec3::new(0.0, 0.0, 1.0),
    };
    let e1 = (axis - n * axis.dot(n)).normalized();
    let e2 = n.cross(e1);
    (e1, e2)
}

impl GeometrySpec {
    /// Intrinsic geodesic distance between two valid points.
    ///
    /// Inputs are canonicalized first, so quotient points may be given in
    /// any representative.
    pub fn distance(&self, p: &SurfacePoint, q: &SurfacePoint) -> Result<f64> {
        let pc = self.canonicalize(p)?;
        let qc = self.canonicalize(q)?;
        Ok(self.distance_unchecked(&pc, &qc))
    }

    /// Distance between canonical, validated points.
    pub(crate) fn distance_unchecked(&self, p: &SurfacePoint, q: &SurfacePoint) -> f64 {
        match self {
            GeometrySpec::EuclideanPlane => (p.expect_xy() - q.expect_xy()).norm(),
            GeometrySpec::PoincareDisk => {
                let pv = p.expect_xy();
                let qv = q.expect_xy();
                let sq = (pv - qv).norm_sq();
                if sq == 0.0 {
                    return 0.0;
                }
                let den = (1.0 - pv.norm_sq()) * (1.0 - qv.norm_sq());
                acosh1p(2.0 * sq / den)
            }
            GeometrySpec::UnitSphere => sphere_angle(p.expect_xyz(), q.expect_xyz()),
            GeometrySpec::FlatTorus(lat) => {
                torus_closest_lift(lat, p.expect_xy(), q.expect_xy()).1
            }
            GeometrySpec::FlatKleinBottle { width, height } => {
                klein_closest_lift(*width, *height, p.expect_xy(), q.expect_xy()).1
            }
            GeometrySpec::ProjectivePlane => {
                projective_angle(p.expect_xyz(), q.expect_xyz())
            }
        }
    }

    /// Point at arclength fraction `t` along a minimizing geodesic from
    /// `p` to `q`.
    ///
    /// Non-unique geodesics (antipodal sphere points, tied deck
    /// translates) are resolved deterministically: the lexicographically
    /// smallest deck index or coordinate tuple wins, and an antipodal
    /// sphere pair follows the great circle leaving `p` along the first
    /// axis of its tangent frame.
    pub fn geodesic_point(&self, p: &SurfacePoint, q: &SurfacePoint, t: f64) -> Result<SurfacePoint> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidArgument(format!(
                "interpolation parameter {t} outside [0, 1]"
            )));
        }
        let pc = self.canonicalize(p)?;
        let qc = self.canonicalize(q)?;
        if t == 0.0 {
            return Ok(pc);
        }
        if t == 1.0 {
            return Ok(qc);
        }
        Ok(match self {
            GeometrySpec::EuclideanPlane => {
                let pv = pc.expect_xy();
                let qv = qc.expect_xy();
                SurfacePoint::TwoD(pv + (qv - pv) * t)
            }
            GeometrySpec::PoincareDisk => {
                let b = pc.expect_xy();
                let u = mobius_to_origin(b, qc.expect_xy());
                let un = u.norm();
                if un < 1e-17 {
                    return Ok(pc);
                }
                let d = 2.0 * un.atanh();
                let radius = (t * d * 0.5).tanh();
                SurfacePoint::TwoD(mobius_from_origin(b, u * (radius / un)))
            }
            GeometrySpec::UnitSphere => {
                SurfacePoint::ThreeD(sphere_interpolate(pc.expect_xyz(), qc.expect_xyz(), t))
            }
            GeometrySpec::FlatTorus(lat) => {
                let pv = pc.expect_xy();
                let (lift, _, _) = torus_closest_lift(lat, pv, qc.expect_xy());
                self.canonicalize_unchecked(&SurfacePoint::TwoD(pv + (lift - pv) * t))
            }
            GeometrySpec::FlatKleinBottle { width, height } => {
                let pv = pc.expect_xy();
                let (lift, _, _) = klein_closest_lift(*width, *height, pv, qc.expect_xy());
                self.canonicalize_unchecked(&SurfacePoint::TwoD(pv + (lift - pv) * t))
            }
            GeometrySpec::ProjectivePlane => {
                let pv = pc.expect_xyz();
                let (lift, _) = projective_closest_lift(pv, qc.expect_xyz());
                self.canonicalize_unchecked(&SurfacePoint::ThreeD(sphere_interpolate(pv, lift, t)))
            }
        })
    }

    /// Normal coordinates of `p` in the chart centered at `base`.
    ///
    /// The Euclidean norm of the result equals `distance(base, p)`; the
    /// point must lie strictly inside the injectivity radius of `base`.
    pub fn log_map(&self, base: &SurfacePoint, p: &SurfacePoint) -> Result<Vec2> {
        let bc = self.canonicalize(base)?;
        let pc = self.canonicalize(p)?;
        match self {
            GeometrySpec::EuclideanPlane => Ok(pc.expect_xy() - bc.expect_xy()),
            GeometrySpec::PoincareDisk => {
                let u = mobius_to_origin(bc.expect_xy(), pc.expect_xy());
                let un = u.norm();
                if un < 1e-17 {
                    return Ok(Vec2::ZERO);
                }
                // The chart map fixing `base` has positive real derivative
                // there, so the direction of u is the geodesic direction.
                Ok(u * (2.0 * un.atanh() / un))
            }
            GeometrySpec::UnitSphere => sphere_log(bc.expect_xyz(), pc.expect_xyz()),
            GeometrySpec::FlatTorus(lat) => {
                let bv = bc.expect_xy();
                let (lift, d, _) = torus_closest_lift(lat, bv, pc.expect_xy());
                if d >= self.injectivity_radius() {
                    return Err(Error::OutsideInjectivityRadius(format!(
                        "distance {d} is not below half the systole"
                    )));
                }
                Ok(lift - bv)
            }
            GeometrySpec::FlatKleinBottle { width, height } => {
                let bv = bc.expect_xy();
                let (lift, d, _) = klein_closest_lift(*width, *height, bv, pc.expect_xy());
                if d >= self.injectivity_radius() {
                    return Err(Error::OutsideInjectivityRadius(format!(
                        "distance {d} is not below half the systole"
                    )));
                }
                Ok(lift - bv)
            }
            GeometrySpec::ProjectivePlane => {
                let bv = bc.expect_xyz();
                let (lift, d) = projective_closest_lift(bv, pc.expect_xyz());
                if d >= FRAC_PI_2 {
                    return Err(Error::OutsideInjectivityRadius(format!(
                        "distance {d} is not below pi/2"
                    )));
                }
                sphere_log(bv, lift)
            }
        }
    }

    /// Inverse of [`GeometrySpec::log_map`]: the point reached by the
    /// geodesic leaving `base` with chart velocity `v`, after arclength
    /// `|v|`. Defined for every finite `v`; it inverts the logarithm only
    /// inside the injectivity radius.
    pub fn exp_map(&self, base: &SurfacePoint, v: Vec2) -> Result<SurfacePoint> {
        let bc = self.canonicalize(base)?;
        if !v.is_finite() {
            return Err(Error::InvalidArgument("non-finite chart vector".into()));
        }
        Ok(match self {
            GeometrySpec::EuclideanPlane => SurfacePoint::TwoD(bc.expect_xy() + v),
            GeometrySpec::PoincareDisk => {
                let n = v.norm();
                if n < 1e-17 {
                    return Ok(bc);
                }
                let w = v * ((0.5 * n).tanh() / n);
                SurfacePoint::TwoD(mobius_from_origin(bc.expect_xy(), w))
            }
            GeometrySpec::UnitSphere => SurfacePoint::ThreeD(sphere_exp(bc.expect_xyz(), v)),
            GeometrySpec::FlatTorus(_) | GeometrySpec::FlatKleinBottle { .. } => {
                self.canonicalize_unchecked(&SurfacePoint::TwoD(bc.expect_xy() + v))
            }
            GeometrySpec::ProjectivePlane => {
                self.canonicalize_unchecked(&SurfacePoint::ThreeD(sphere_exp(bc.expect_xyz(), v)))
            }
        })
    }
}

fn sphere_interpolate(p: Vec3, q: Vec3, t: f64) -> Vec3 {
    let theta = sphere_angle(p, q);
    if theta < 1e-15 {
        return p;
    }
    if theta >= PI - 1e-12 {
        // Antipodal pair: follow the great circle leaving p along the
        // first tangent frame axis.
        let (e1, _) = tangent_frame(p);
        let ang = t * theta;
        return (p * ang.cos() + e1 * ang.sin()).normalized();
    }
    let s = theta.sin();
    ((p * ((1.0 - t) * theta).sin() + q * (t * theta).sin()) * (1.0 / s)).normalized()
}

fn sphere_log(base: Vec3, p: Vec3) -> Result<Vec2> {
    let cosang = clamp_unit(base.dot(p));
    let theta = sphere_angle(base, p);
    if theta >= PI - 1e-12 {
        return Err(Error::OutsideInjectivityRadius(format!(
            "distance {theta} is too close to pi for a sphere chart"
        )));
    }
    if theta < 1e-15 {
        return Ok(Vec2::ZERO);
    }
    let tangential = p - base * cosang;
    let dir = tangential * (1.0 / tangential.norm());
    let (e1, e2) = tangent_frame(base);
    Ok(Vec2::new(theta * dir.dot(e1), theta * dir.dot(e2)))
}

fn sphere_exp(base: Vec3, v: Vec2) -> Vec3 {
    let theta = v.norm();
    if theta < 1e-17 {
        return base;
    }
    let (e1, e2) = tangent_frame(base);
    let dir = (e1 * (v.x / theta) + e2 * (v.y / theta)).normalized();
    (base * theta.cos() + dir * theta.sin()).normalized()
}
