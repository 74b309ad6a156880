//! Covering-space and bi-Lipschitz experiments.
//!
//! Both experiments return structured reports with one machine-readable
//! PASS/FAIL line per check when rendered with `Display`.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geometry::{fmt_f64, CoveringSpec, GeometrySpec, SurfacePoint, Vec2};
use crate::ratio::{equilateral_config, ratio, SQRT3_OVER_2};
use crate::spanning::mst;
use crate::steiner::{lift_tree_vertices, mix_seed, smt_upper};
use crate::tree::TreeVertex;

/// One named pass/fail record of an experiment.
#[derive(Clone, Debug)]
pub struct ExperimentCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl ExperimentCheck {
    fn line(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "check {} {}",
            self.name,
            if self.passed { "PASS" } else { "FAIL" }
        )
    }
}

/// Measured quantities of one lift experiment.
///
/// A near-minimal tree in the base is lifted isometrically through the
/// covering; the report compares its weight against the lifted copy, the
/// covering-space Steiner bound of the lifted terminals, and the two
/// spanning weights.
#[derive(Clone, Debug)]
pub struct LiftExperimentReport {
    pub base_weight: f64,
    pub lifted_weight: f64,
    pub cover_upper_weight: f64,
    pub base_mst_weight: f64,
    pub lifted_mst_weight: f64,
    pub checks: Vec<ExperimentCheck>,
}

impl LiftExperimentReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for LiftExperimentReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "base_weight {}", fmt_f64(self.base_weight))?;
        writeln!(f, "lifted_weight {}", fmt_f64(self.lifted_weight))?;
        writeln!(f, "cover_upper_weight {}", fmt_f64(self.cover_upper_weight))?;
        writeln!(f, "base_mst_weight {}", fmt_f64(self.base_mst_weight))?;
        writeln!(f, "lifted_mst_weight {}", fmt_f64(self.lifted_mst_weight))?;
        for c in &self.checks {
            c.line(f)?;
        }
        Ok(())
    }
}

/// Lift a near-minimal base tree through the covering and verify:
/// (i) the lift is isometric, (ii) the covering-space Steiner bound of
/// the lifted terminals does not exceed the base weight, and (iii) the
/// base spanning weight never exceeds the lifted spanning weight.
pub fn lift_experiment(
    cover: &CoveringSpec,
    config_base: &Configuration,
    seed: u64,
) -> Result<LiftExperimentReport> {
    if config_base.geometry() != cover.base() {
        return Err(Error::InvalidArgument(
            "configuration does not live in the base of the covering".into(),
        ));
    }
    let n = config_base.terminal_count();
    if n > crate::steiner::MAX_TERMINALS {
        return Err(Error::TerminalCount { n, reason: "lift experiment needs n <= 6".into() });
    }
    let total = cover.total_space().clone();

    let base_mst_weight = mst(config_base).weight();
    let near_minimal = if n == 1 {
        crate::steiner::SmtResult {
            tree: crate::tree::NetworkTree::trivial(config_base)?,
            topology: crate::steiner::TopologyChoice::Spanning,
            converged: true,
            iterations: 0,
        }
    } else {
        smt_upper(config_base, seed)?
    };
    let base_weight = near_minimal.tree.weight();

    // Isometric lift of the whole tree, anchored at terminal 0.
    let lifted_vertices = lift_tree_vertices(cover, config_base, &near_minimal.tree)?;
    let mut lifted_weight = 0.0;
    for &(u, v) in near_minimal.tree.edges() {
        lifted_weight += total.distance_unchecked(&lifted_vertices[u], &lifted_vertices[v]);
    }

    // Lifted terminal set, in terminal order. Terminals merged away by
    // degenerate collapse share the lift of their surviving duplicate.
    let mut terminal_lift: Vec<Option<SurfacePoint>> = vec![None; n];
    for (vid, vertex) in near_minimal.tree.vertices().iter().enumerate() {
        if let TreeVertex::Terminal(i) = vertex {
            terminal_lift[*i] = Some(lifted_vertices[vid]);
        }
    }
    for i in 0..n {
        if terminal_lift[i].is_none() {
            let p = config_base.terminals()[i];
            let twin = (0..n)
                .find(|&j| terminal_lift[j].is_some() && config_base.terminals()[j] == p)
                .ok_or_else(|| Error::InvalidArgument("tree lost a terminal".into()))?;
            terminal_lift[i] = terminal_lift[twin];
        }
    }
    let lifted_terminals: Vec<SurfacePoint> =
        terminal_lift.into_iter().map(|p| p.unwrap()).collect();

    let (cover_upper_weight, lifted_mst_weight) = if n == 1 {
        (0.0, 0.0)
    } else {
        let cover_config = Configuration::new(total.clone(), lifted_terminals)?;
        let upper = smt_upper(&cover_config, seed)?.tree.weight();
        (upper, mst(&cover_config).weight())
    };

    let checks = vec![
        ExperimentCheck {
            name: "lift_isometry",
            passed: (lifted_weight - base_weight).abs() <= 1e-9,
            detail: format!("|{lifted_weight} - {base_weight}|"),
        },
        ExperimentCheck {
            name: "cover_bound",
            passed: cover_upper_weight <= base_weight + 1e-9,
            detail: format!("{cover_upper_weight} <= {base_weight}"),
        },
        ExperimentCheck {
            name: "spanning_monotone",
            passed: base_mst_weight <= lifted_mst_weight + 1e-12,
            detail: format!("{base_mst_weight} <= {lifted_mst_weight}"),
        },
    ];

    Ok(LiftExperimentReport {
        base_weight,
        lifted_weight,
        cover_upper_weight,
        base_mst_weight,
        lifted_mst_weight,
        checks,
    })
}

/// Tolerance of the ratio sandwich checks.
const SANDWICH_TOL: f64 = 2e-3;
/// Pairs sampled when measuring the chart scale factors.
const SCALE_SAMPLES: usize = 4000;
/// Random small configurations measured inside the ball.
const CONFIG_TRIALS: usize = 12;

/// Measured chart scale factors and ratio sandwich on a small ball.
#[derive(Clone, Debug)]
pub struct BiLipschitzReport {
    /// Smallest and largest sampled `rho / rho_e`.
    pub c1: f64,
    pub c2: f64,
    /// Metric deviation measured by the chart comparison.
    pub epsilon: f64,
    /// Ratio estimates of the sampled small configurations.
    pub config_ratios: Vec<f64>,
    pub best_ratio: f64,
    /// `(c1/c2) * sqrt(3)/2 - tol` and `(c2/c1) * sqrt(3)/2 + tol`.
    pub sandwich_low: f64,
    pub sandwich_high: f64,
    pub checks: Vec<ExperimentCheck>,
}

impl BiLipschitzReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for BiLipschitzReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "c1 {}", fmt_f64(self.c1))?;
        writeln!(f, "c2 {}", fmt_f64(self.c2))?;
        writeln!(f, "epsilon {}", fmt_f64(self.epsilon))?;
        writeln!(f, "best_ratio {}", fmt_f64(self.best_ratio))?;
        writeln!(f, "sandwich_low {}", fmt_f64(self.sandwich_low))?;
        writeln!(f, "sandwich_high {}", fmt_f64(self.sandwich_high))?;
        for c in &self.checks {
            c.line(f)?;
        }
        Ok(())
    }
}

/// Measure the bi-Lipschitz constants of the chart on the ball of radius
/// `delta` around `base`, then verify that ratio estimates of small
/// configurations inside the ball sit in the sandwich those constants
/// put around the plane value sqrt(3)/2.
pub fn bilipschitz_ratio_bounds(
    geom: &GeometrySpec,
    base: &SurfacePoint,
    delta: f64,
    seed: u64,
) -> Result<BiLipschitzReport> {
    let comparison = geom.comparison_bounds(base, delta, SCALE_SAMPLES, mix_seed(seed, 1))?;
    let c1 = comparison.measured_min_ratio.min(1.0);
    let c2 = comparison.measured_max_ratio.max(1.0);
    let center = geom.canonicalize(base)?;

    let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, 2));
    let mut config_ratios = Vec::with_capacity(CONFIG_TRIALS + 1);
    for trial in 0..CONFIG_TRIALS {
        let mut points = Vec::with_capacity(3);
        for _ in 0..3 {
            let rad = delta * rng.gen::<f64>().sqrt();
            let ang = std::f64::consts::TAU * rng.gen::<f64>();
            points.push(geom.exp_map(&center, Vec2::new(rad * ang.cos(), rad * ang.sin()))?);
        }
        let config = Configuration::new(geom.clone(), points)?;
        if config.diameter() < 1e-9 {
            continue;
        }
        config_ratios.push(ratio(&config, mix_seed(seed, 100 + trial as u64))?.ratio);
    }
    // A centered equilateral makes sure the low end of the sandwich is
    // actually approached.
    let equilateral = recentered_equilateral(geom, &center, delta * 0.5)?;
    config_ratios.push(ratio(&equilateral, mix_seed(seed, 99))?.ratio);

    let best_ratio = config_ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let sandwich_low = (c1 / c2) * SQRT3_OVER_2 - SANDWICH_TOL;
    let sandwich_high = (c2 / c1) * SQRT3_OVER_2 + SANDWICH_TOL;

    let factor_bound =
        ((1.0 + 4.0 * comparison.epsilon) / (1.0 - 4.0 * comparison.epsilon)).sqrt();
    let checks = vec![
        ExperimentCheck {
            name: "scale_factors_ordered",
            passed: c1 <= c2,
            detail: format!("{c1} <= {c2}"),
        },
        ExperimentCheck {
            name: "factor_within_epsilon_bound",
            passed: c2 / c1 <= factor_bound + 1e-12,
            detail: format!("{} <= {factor_bound}", c2 / c1),
        },
        ExperimentCheck {
            name: "all_ratios_above_sandwich",
            passed: config_ratios.iter().all(|&r| r >= sandwich_low),
            detail: format!("min ratio {best_ratio} vs {sandwich_low}"),
        },
        ExperimentCheck {
            name: "best_ratio_in_sandwich",
            passed: best_ratio >= sandwich_low && best_ratio <= sandwich_high,
            detail: format!("{best_ratio} in [{sandwich_low}, {sandwich_high}]"),
        },
    ];

    Ok(BiLipschitzReport {
        c1,
        c2,
        epsilon: comparison.epsilon,
        config_ratios,
        best_ratio,
        sandwich_low,
        sandwich_high,
        checks,
    })
}

/// Equilateral triangle of circumradius `r` around an arbitrary center.
fn recentered_equilateral(
    geom: &GeometrySpec,
    center: &SurfacePoint,
    r: f64,
) -> Result<Configuration> {
    if matches!(geom, GeometrySpec::EuclideanPlane | GeometrySpec::PoincareDisk)
        && center.as_xy().is_some_and(|v| v.norm() < 1e-12)
    {
        return equilateral_config(geom, r);
    }
    let mut points = Vec::with_capacity(3);
    for k in 0..3 {
        let ang = std::f64::consts::TAU * k as f64 / 3.0;
        points.push(geom.exp_map(center, Vec2::new(r * ang.cos(), r * ang.sin()))?);
    }
    Configuration::new(geom.clone(), points)
}
