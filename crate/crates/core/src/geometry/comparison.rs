//! Bi-Lipschitz comparison of a geodesic chart with its flat reference.
//!
//! Inside a normal-coordinate ball the intrinsic distance and the flat
//! chart distance differ by bounded factors: if every metric component
//! deviates from the identity by at most epsilon, then
//! `sqrt(1 - 4 eps) <= rho / rho_e <= sqrt(1 + 4 eps)` in dimension two.
//! [`GeometrySpec::comparison_bounds`] measures both sides of that bound
//! by sampling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::point::SurfacePoint;
use super::spec::GeometrySpec;
use super::vec::Vec2;
use crate::error::{Error, Result};

/// Dimension factor n^2 of the two-sided bound for surfaces (n = 2).
pub const DIM_FACTOR: f64 = 4.0;

/// Grid resolution used to measure the metric deviation epsilon.
const EPSILON_GRID: usize = 32;

/// Measured comparison between chart distance and geodesic distance on a
/// normal-coordinate ball.
#[derive(Clone, Debug)]
pub struct ComparisonReport {
    pub center: SurfacePoint,
    pub radius: f64,
    /// Largest sampled deviation `|g_ij - delta_ij|` of the metric
    /// components over the chart grid.
    pub epsilon: f64,
    /// Smallest sampled `rho / rho_e` over point pairs in the ball.
    pub measured_min_ratio: f64,
    /// Largest sampled `rho / rho_e`.
    pub measured_max_ratio: f64,
}

impl ComparisonReport {
    /// Whether the measured extremes respect the two-sided bound
    /// `sqrt(1 - 4 eps) <= ratio <= sqrt(1 + 4 eps)`, up to the rounding
    /// slack of the sampled ratios.
    pub fn bound_holds(&self) -> bool {
        const SLACK: f64 = 1e-12;
        let lo = (1.0 - DIM_FACTOR * self.epsilon).max(0.0).sqrt();
        let hi = (1.0 + DIM_FACTOR * self.epsilon).sqrt();
        lo - SLACK <= self.measured_min_ratio && self.measured_max_ratio <= hi + SLACK
    }
}

/// Ratio of squared metric scale factors in normal coordinates at chart
/// radius `r`: 1 on the plane, `sin(r)^2/r^2` on the sphere,
/// `sinh(r)^2/r^2` on the disk (radial direction always has factor 1).
fn tangential_factor(geom: &GeometrySpec, r: f64) -> f64 {
    if r < 1e-9 {
        return 1.0;
    }
    match geom {
        GeometrySpec::EuclideanPlane => 1.0,
        GeometrySpec::UnitSphere => {
            let s = r.sin() / r;
            s * s
        }
        GeometrySpec::PoincareDisk => {
            let s = r.sinh() / r;
            s * s
        }
        _ => unreachable!("comparison chart restricted to plane, disk, sphere"),
    }
}

/// Largest absolute deviation of a metric component from the identity at
/// chart point `u`.
fn metric_deviation(geom: &GeometrySpec, u: Vec2) -> f64 {
    let r = u.norm();
    if r < 1e-9 {
        return 0.0;
    }
    let f = tangential_factor(geom, r);
    let rx = u.x / r;
    let ry = u.y / r;
    // g = P_radial + f * P_tangential in normal coordinates.
    let d11 = ((f - 1.0) * (1.0 - rx * rx)).abs();
    let d22 = ((f - 1.0) * (1.0 - ry * ry)).abs();
    let d12 = ((f - 1.0) * rx * ry).abs();
    d11.max(d22).max(d12)
}

impl GeometrySpec {
    /// Sample the distance comparison on the normal-coordinate ball of
    /// radius `delta` around `base`.
    ///
    /// `epsilon` is measured on a 32x32 chart grid rather than assumed;
    /// point pairs are drawn uniformly from the ball with the seeded
    /// generator. Fails when the ball exceeds the injectivity radius or
    /// when the measured deviation leaves the valid range of the bound.
    pub fn comparison_bounds(
        &self,
        base: &SurfacePoint,
        delta: f64,
        samples: usize,
        seed: u64,
    ) -> Result<ComparisonReport> {
        match self {
            GeometrySpec::EuclideanPlane | GeometrySpec::PoincareDisk | GeometrySpec::UnitSphere => {}
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "comparison chart is defined for plane, disk and sphere, not {}",
                    self.tag()
                )))
            }
        }
        if !(delta > 0.0 && delta.is_finite()) {
            return Err(Error::InvalidArgument(format!("radius {delta} must be positive")));
        }
        if delta >= self.injectivity_radius() {
            return Err(Error::ChartRadiusTooLarge(format!(
                "radius {delta} reaches the injectivity radius"
            )));
        }
        if samples < 2 {
            return Err(Error::InvalidArgument("need at least 2 sample pairs".into()));
        }
        let center = self.canonicalize(base)?;

        let mut epsilon: f64 = 0.0;
        let step = 2.0 * delta / (EPSILON_GRID - 1) as f64;
        for i in 0..EPSILON_GRID {
            for j in 0..EPSILON_GRID {
                let u = Vec2::new(-delta + step * i as f64, -delta + step * j as f64);
                if u.norm() <= delta * (1.0 + 1e-12) {
                    epsilon = epsilon.max(metric_deviation(self, u));
                }
            }
        }
        if DIM_FACTOR * epsilon >= 1.0 {
            return Err(Error::ChartRadiusTooLarge(format!(
                "metric deviation {epsilon} leaves the valid range of the comparison"
            )));
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ball_point = |rng: &mut ChaCha8Rng| {
            let r = delta * rng.gen::<f64>().sqrt();
            let phi = rng.gen::<f64>() * std::f64::consts::TAU;
            Vec2::new(r * phi.cos(), r * phi.sin())
        };
        let mut min_ratio = f64::INFINITY;
        let mut max_ratio = f64::NEG_INFINITY;
        let mut accepted = 0usize;
        let mut attempts = 0usize;
        while accepted < samples && attempts < samples * 100 {
            attempts += 1;
            let u = ball_point(&mut rng);
            let v = ball_point(&mut rng);
            let chart_dist = (u - v).norm();
            // The ratio of two near-zero lengths is dominated by rounding;
            // pairs closer than 1% of the radius are rejected.
            if chart_dist < 1e-2 * delta {
                continue;
            }
            let x = self.exp_map(&center, u)?;
            let y = self.exp_map(&center, v)?;
            let rho = self.distance_unchecked(&x, &y);
            let ratio = rho / chart_dist;
            min_ratio = min_ratio.min(ratio);
            max_ratio = max_ratio.max(ratio);
            accepted += 1;
        }

        Ok(ComparisonReport {
            center,
            radius: delta,
            epsilon,
            measured_min_ratio: min_ratio,
            measured_max_ratio: max_ratio,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_chart_is_isometric() {
        let g = GeometrySpec::EuclideanPlane;
        let report = g
            .comparison_bounds(&SurfacePoint::xy(2.0, -1.0), 1.0, 200, 7)
            .unwrap();
        assert_eq!(report.epsilon, 0.0);
        assert!((report.measured_min_ratio - 1.0).abs() < 1e-12);
        assert!((report.measured_max_ratio - 1.0).abs() < 1e-12);
        assert!(report.bound_holds());
    }

    #[test]
    fn sphere_radial_pairs_reach_ratio_one() {
        // Pairs collinear with the center keep their chart length, so the
        // maximum sampled ratio approaches 1 from below on the sphere.
        let g = GeometrySpec::UnitSphere;
        let report = g
            .comparison_bounds(&SurfacePoint::xyz(0.0, 0.0, 1.0), 0.1, 4000, 11)
            .unwrap();
        assert!(report.measured_max_ratio <= 1.0 + 1e-12);
        assert!(report.measured_max_ratio > 0.9999);
        assert!(report.bound_holds());
    }

    #[test]
    fn radial_pairs_keep_their_chart_length() {
        // Pairs collinear with the chart center lie on one geodesic, so
        // the chart is an isometry along them.
        let g = GeometrySpec::UnitSphere;
        let pole = SurfacePoint::xyz(0.0, 0.0, 1.0);
        let dir = Vec2::new(0.6, 0.8);
        let u = dir * 0.02;
        let v = dir * 0.095;
        let x = g.exp_map(&pole, u).unwrap();
        let y = g.exp_map(&pole, v).unwrap();
        let rho = g.distance(&x, &y).unwrap();
        let chart = (u - v).norm();
        assert!((rho / chart - 1.0).abs() < 1e-12, "radial ratio {}", rho / chart);
    }

    #[test]
    fn sphere_bound_holds_with_dense_sampling() {
        let g = GeometrySpec::UnitSphere;
        let report = g
            .comparison_bounds(&SurfacePoint::xyz(0.0, 0.0, 1.0), 0.3, 100_000, 13)
            .unwrap();
        let lo = (1.0 - DIM_FACTOR * report.epsilon).sqrt();
        assert!(report.measured_min_ratio >= lo);
        assert!(report.bound_holds());
    }

    #[test]
    fn disk_stretches_chart_distances() {
        let g = GeometrySpec::PoincareDisk;
        let report = g
            .comparison_bounds(&SurfacePoint::xy(0.2, 0.1), 0.3, 5000, 3)
            .unwrap();
        assert!(report.measured_min_ratio >= 1.0 - 1e-12);
        assert!(report.measured_max_ratio > 1.0);
        assert!(report.bound_holds());
    }

    #[test]
    fn oversized_radius_is_rejected() {
        let g = GeometrySpec::UnitSphere;
        assert!(matches!(
            g.comparison_bounds(&SurfacePoint::xyz(0.0, 0.0, 1.0), 2.0, 10, 0),
            Err(Error::ChartRadiusTooLarge(_))
        ));
        assert!(matches!(
            g.comparison_bounds(&SurfacePoint::xyz(0.0, 0.0, 1.0), 4.0, 10, 0),
            Err(Error::ChartRadiusTooLarge(_))
        ));
    }

    #[test]
    fn degenerate_arguments_are_rejected() {
        let g = GeometrySpec::UnitSphere;
        let pole = SurfacePoint::xyz(0.0, 0.0, 1.0);
        assert!(g.comparison_bounds(&pole, 0.1, 1, 0).is_err());
        assert!(g.comparison_bounds(&pole, 0.0, 10, 0).is_err());
        assert!(g.comparison_bounds(&pole, -0.5, 10, 0).is_err());
    }

    #[test]
    fn quotients_are_not_charted() {
        let g = GeometrySpec::flat_klein(1.0, 1.0).unwrap();
        assert!(g
            .comparison_bounds(&SurfacePoint::xy(0.5, 0.5), 0.1, 10, 0)
            .is_err());
    }
}
