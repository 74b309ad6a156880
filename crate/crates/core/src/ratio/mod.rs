//! Steiner ratio analytics: per-configuration ratios, the hyperbolic
//! ratio curve with its limit and small-radius expansion, and randomized
//! ratio searches.
//!
//! Every reported ratio is an upper bound: the numerator is a realized
//! tree, never a claimed infimum. The infimum over configurations then
//! upper-bounds the Steiner ratio of the surface.

mod experiments;

pub use experiments::{
    bilipschitz_ratio_bounds, lift_experiment, BiLipschitzReport, ExperimentCheck,
    LiftExperimentReport,
};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geometry::{acosh1p, GeometrySpec, SurfacePoint, Vec2};
use crate::spanning::mst;
use crate::steiner::{mix_seed, smt_upper};

pub const SQRT3_OVER_2: f64 = 0.866_025_403_784_438_6;

/// Frozen envelope constant: `|taylor_residual(r)| <= C * r^4` on
/// (0, 1/2]. Calibrated once by a high-precision sweep (measured maximum
/// of |residual|/r^4 is 0.01188, attained as r -> 0).
pub const TAYLOR_ENVELOPE: f64 = 0.013;

/// Largest radius accepted by [`taylor_residual`].
pub const TAYLOR_MAX_RADIUS: f64 = 0.5;

/// Tolerances of the Moore bounds `1/2 <= ratio <= 1` as asserted on
/// computed (upper bound) ratios.
pub const MOORE_SLACK: f64 = 1e-9;

/// Spanning weight, Steiner upper bound, and their quotient for one
/// configuration.
#[derive(Clone, Debug)]
pub struct RatioEstimate {
    pub config: Configuration,
    pub mst_weight: f64,
    /// Upper bound on the Steiner minimal length.
    pub smt_weight: f64,
    /// `smt_weight / mst_weight`; an upper bound on the configuration's
    /// true ratio.
    pub ratio: f64,
}

/// Steiner ratio of one configuration, from the exact spanning tree and
/// the certified Steiner upper bound. Deterministic given the seed.
pub fn ratio(config: &Configuration, seed: u64) -> Result<RatioEstimate> {
    let n = config.terminal_count();
    if !(2..=crate::steiner::MAX_TERMINALS).contains(&n) {
        return Err(Error::TerminalCount { n, reason: "ratio needs 2..=6 terminals".into() });
    }
    let mst_weight = mst(config).weight();
    let smt_weight = smt_upper(config, seed)?.tree.weight();
    // All terminals coincident: both trees are degenerate and the ratio
    // is taken to be 1.
    let ratio = if mst_weight == 0.0 { 1.0 } else { smt_weight / mst_weight };
    debug_assert!((0.5 - MOORE_SLACK..=1.0 + MOORE_SLACK).contains(&ratio), "ratio {ratio}");
    Ok(RatioEstimate { config: config.clone(), mst_weight, smt_weight, ratio })
}

/// Closed forms for the regular triangle inscribed in a hyperbolic circle
/// of radius `r`: side `a` with `cosh a = 1 + (3/2) sinh^2 r`, spanning
/// weight `2a`, Steiner weight `3r`, and the ratio
/// `m(r) = (3/2) r / arccosh(1 + (3/2) sinh^2 r)`.
#[derive(Clone, Copy, Debug)]
pub struct HyperbolicEquilateral {
    pub circumradius: f64,
    pub side: f64,
    pub mst_weight: f64,
    pub smt_weight: f64,
    pub m_of_r: f64,
}

/// Side of the regular triangle inscribed in a radius-`r` circle of the
/// curvature -1 plane, computed in a form stable for tiny and huge `r`.
fn hyperbolic_side(r: f64) -> f64 {
    if r >= 300.0 {
        // cosh a ~ (3/8) e^{2r}; the neglected terms are below f64
        // resolution here.
        2.0 * r + 0.75f64.ln()
    } else {
        let s = r.sinh();
        acosh1p(1.5 * s * s)
    }
}

/// The ratio curve value `m(r)`.
pub fn hyperbolic_m(r: f64) -> Result<f64> {
    Ok(hyperbolic_triangle(r)?.m_of_r)
}

pub fn hyperbolic_triangle(r: f64) -> Result<HyperbolicEquilateral> {
    if !r.is_finite() || r <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "circumradius must be positive and finite, got {r}"
        )));
    }
    let side = hyperbolic_side(r);
    let m_of_r = 1.5 * r / side;
    debug_assert!(m_of_r > 0.75 && m_of_r <= SQRT3_OVER_2 + 1e-15, "m({r}) = {m_of_r}");
    Ok(HyperbolicEquilateral {
        circumradius: r,
        side,
        mst_weight: 2.0 * side,
        smt_weight: 3.0 * r,
        m_of_r,
    })
}

/// One point of the ratio curve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveSample {
    pub r: f64,
    pub m: f64,
}

/// Sample `m(r)` on the inclusive uniform grid `[r_min, r_max]` with
/// `steps` points. The values are strictly decreasing in `r` and stay
/// above 3/4, the limit at infinity.
pub fn m_curve(r_min: f64, r_max: f64, steps: usize) -> Result<Vec<CurveSample>> {
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 < r_min < r_max, got [{r_min}, {r_max}]"
        )));
    }
    if steps < 2 {
        return Err(Error::InvalidArgument("need at least 2 samples".into()));
    }
    let h = (r_max - r_min) / (steps - 1) as f64;
    (0..steps)
        .map(|k| {
            let r = if k + 1 == steps { r_max } else { r_min + h * k as f64 };
            Ok(CurveSample { r, m: hyperbolic_m(r)? })
        })
        .collect()
}

/// Difference between `m(r)` and its second-order expansion at zero,
/// `sqrt(3)/2 - r^2/(16 sqrt(3))`. Bounded by [`TAYLOR_ENVELOPE`] times
/// `r^4` on the validated range `0 < r <= 1/2`.
pub fn taylor_residual(r: f64) -> Result<f64> {
    if !(r > 0.0 && r <= TAYLOR_MAX_RADIUS) {
        return Err(Error::InvalidArgument(format!(
            "residual is validated on (0, {TAYLOR_MAX_RADIUS}], got {r}"
        )));
    }
    let quadratic = SQRT3_OVER_2 - r * r / (16.0 * 3.0f64.sqrt());
    Ok(hyperbolic_m(r)? - quadratic)
}

/// Center used for structured seed configurations.
fn seed_center(geom: &GeometrySpec) -> SurfacePoint {
    match geom {
        GeometrySpec::EuclideanPlane | GeometrySpec::PoincareDisk => SurfacePoint::xy(0.0, 0.0),
        GeometrySpec::UnitSphere | GeometrySpec::ProjectivePlane => {
            SurfacePoint::xyz(0.0, 0.0, 1.0)
        }
        GeometrySpec::FlatTorus(lat) => {
            let (a, b) = lat.basis();
            SurfacePoint::TwoD((a + b) * 0.5)
        }
        GeometrySpec::FlatKleinBottle { width, height } => {
            SurfacePoint::xy(0.5 * width, 0.5 * height)
        }
    }
}

/// Regular `n`-gon of circumradius `r` around the canonical center of the
/// geometry, realized through the exponential chart.
pub fn regular_polygon_config(geom: &GeometrySpec, n: usize, r: f64) -> Result<Configuration> {
    if n < 2 {
        return Err(Error::InvalidArgument("polygon needs at least 2 vertices".into()));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::InvalidArgument(format!("polygon radius {r} must be positive")));
    }
    let center = seed_center(geom);
    let mut points = Vec::with_capacity(n);
    for k in 0..n {
        let ang = std::f64::consts::TAU * k as f64 / n as f64;
        let v = Vec2::new(r * ang.cos(), r * ang.sin());
        points.push(geom.exp_map(&center, v)?);
    }
    Configuration::new(geom.clone(), points)
}

/// Equilateral triangle of circumradius `r` around the canonical center.
pub fn equilateral_config(geom: &GeometrySpec, r: f64) -> Result<Configuration> {
    regular_polygon_config(geom, 3, r)
}

/// Structured seed radii per geometry; for the disk they grow far enough
/// that the large-triangle regime (ratio below 0.8) is always probed.
fn seed_radii(geom: &GeometrySpec) -> Vec<f64> {
    match geom {
        GeometrySpec::EuclideanPlane => vec![0.5, 1.0, 2.0],
        GeometrySpec::PoincareDisk => vec![0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0],
        GeometrySpec::UnitSphere => vec![0.02, 0.05, 0.1, 0.2, 0.4, 0.8, 1.2],
        GeometrySpec::ProjectivePlane => vec![0.02, 0.05, 0.1, 0.3, 0.6],
        GeometrySpec::FlatTorus(lat) => {
            let s = lat.shortest_vector();
            vec![0.02 * s, 0.05 * s, 0.1 * s, 0.2 * s]
        }
        GeometrySpec::FlatKleinBottle { width, height } => {
            let s = width.min(*height);
            vec![0.02 * s, 0.05 * s, 0.1 * s, 0.2 * s]
        }
    }
}

/// One uniform random terminal in the geometry's sampling window.
fn random_point(geom: &GeometrySpec, rng: &mut ChaCha8Rng) -> SurfacePoint {
    match geom {
        GeometrySpec::EuclideanPlane => SurfacePoint::xy(rng.gen::<f64>(), rng.gen::<f64>()),
        GeometrySpec::PoincareDisk => {
            // Uniform hyperbolic radius up to 4, uniform direction.
            let rho = 4.0 * rng.gen::<f64>();
            let ang = std::f64::consts::TAU * rng.gen::<f64>();
            let chart = (rho * 0.5).tanh();
            SurfacePoint::xy(chart * ang.cos(), chart * ang.sin())
        }
        GeometrySpec::UnitSphere | GeometrySpec::ProjectivePlane => loop {
            let v = crate::geometry::Vec3::new(
                2.0 * rng.gen::<f64>() - 1.0,
                2.0 * rng.gen::<f64>() - 1.0,
                2.0 * rng.gen::<f64>() - 1.0,
            );
            let n = v.norm();
            if n > 1e-3 && n <= 1.0 {
                let p = SurfacePoint::ThreeD(v.normalized());
                break geom.canonicalize_unchecked(&p);
            }
        },
        GeometrySpec::FlatTorus(lat) => {
            let (a, b) = lat.basis();
            SurfacePoint::TwoD(a * rng.gen::<f64>() + b * rng.gen::<f64>())
        }
        GeometrySpec::FlatKleinBottle { width, height } => {
            SurfacePoint::xy(width * rng.gen::<f64>(), height * rng.gen::<f64>())
        }
    }
}

/// Random configuration of `n` terminals in the sampling window.
pub fn random_config(geom: &GeometrySpec, n: usize, seed: u64) -> Result<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n).map(|_| random_point(geom, &mut rng)).collect();
    Configuration::new(geom.clone(), points)
}

/// Gaussian-free chart perturbation of a configuration: every terminal
/// moves by a uniform-disk offset of scale `sigma`.
fn perturb_config(config: &Configuration, sigma: f64, rng: &mut ChaCha8Rng) -> Result<Configuration> {
    let geom = config.geometry();
    let mut points = Vec::with_capacity(config.terminal_count());
    for p in config.terminals() {
        let rad = sigma * rng.gen::<f64>().sqrt();
        let ang = std::f64::consts::TAU * rng.gen::<f64>();
        let candidate = geom.exp_map(p, Vec2::new(rad * ang.cos(), rad * ang.sin()))?;
        points.push(candidate);
    }
    Configuration::new(geom.clone(), points)
}

/// Randomized plus structured search for low-ratio configurations.
///
/// Trials alternate between uniform random configurations (half), the
/// structured seed catalog of regular polygons at growing radii (quarter)
/// and local perturbations of the incumbent (quarter, offset scale 5% of
/// the incumbent diameter). The minimum found is a certified upper bound
/// on the Steiner ratio of the surface. Deterministic given the seed.
pub fn ratio_search(
    geom: &GeometrySpec,
    n: usize,
    iterations: usize,
    seed: u64,
) -> Result<RatioEstimate> {
    if !(3..=crate::steiner::MAX_TERMINALS).contains(&n) {
        return Err(Error::TerminalCount { n, reason: "search needs 3..=6 terminals".into() });
    }
    if iterations == 0 {
        return Err(Error::InvalidArgument("need at least one iteration".into()));
    }
    let radii = seed_radii(geom);
    let mut best: Option<RatioEstimate> = None;
    for trial in 0..iterations {
        let trial_seed = mix_seed(seed, trial as u64);
        let config = match trial % 4 {
            0 | 1 => random_config(geom, n, trial_seed)?,
            2 => {
                let r = radii[(trial / 4) % radii.len()];
                regular_polygon_config(geom, n, r)?
            }
            _ => match &best {
                Some(incumbent) => {
                    let sigma = (0.05 * incumbent.config.diameter()).max(1e-4);
                    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
                    perturb_config(&incumbent.config, sigma, &mut rng)?
                }
                None => random_config(geom, n, trial_seed)?,
            },
        };
        let estimate = ratio(&config, trial_seed)?;
        if best.as_ref().is_none_or(|b| estimate.ratio < b.ratio) {
            best = Some(estimate);
        }
    }
    Ok(best.expect("at least one trial"))
}
