//! Descent over Steiner point positions for a fixed topology.
//!
//! Each Steiner vertex is repeatedly moved toward the weighted chart
//! average of its three neighbors (the damped fixed-point step of the
//! geodesic median), with step halving so the local objective never
//! increases. Convergence is declared when the joint gradient of the
//! total length drops below [`GRADIENT_TOL`] or when the relative weight
//! improvement over [`STALL_WINDOW`] sweeps falls below
//! [`RELATIVE_IMPROVEMENT`].

use crate::geometry::{GeometrySpec, SurfacePoint, Vec2};
use crate::steiner::topology::SteinerTopology;

pub const MAX_ITERATIONS: u64 = 10_000;
pub const GRADIENT_TOL: f64 = 1e-10;
pub const RELATIVE_IMPROVEMENT: f64 = 1e-12;
pub const STALL_WINDOW: usize = 5;
const MAX_HALVINGS: u32 = 50;
/// Distances below this are treated as a collapsed (zero-length) edge.
const COINCIDENT: f64 = 1e-14;

#[derive(Clone, Debug)]
pub(crate) struct OptimizeOutcome {
    pub steiner_positions: Vec<SurfacePoint>,
    pub weight: f64,
    pub converged: bool,
    pub iterations: u64,
}

/// Chart logarithm that tolerates out-of-chart targets by reporting None
/// (the sweep simply skips the update in that case).
fn chart_log(geom: &GeometrySpec, base: &SurfacePoint, p: &SurfacePoint) -> Option<Vec2> {
    geom.log_map(base, p).ok()
}

pub(crate) fn optimize_positions(
    geom: &GeometrySpec,
    terminals: &[SurfacePoint],
    topo: &SteinerTopology,
    init: Vec<SurfacePoint>,
    max_iterations: u64,
) -> OptimizeOutcome {
    let n = topo.terminal_count();
    let neighbors = topo.steiner_neighbors();
    let mut positions = init;
    debug_assert_eq!(positions.len(), topo.steiner_count());

    let vertex_pos = |positions: &[SurfacePoint], vid: usize| -> SurfacePoint {
        if vid < n {
            terminals[vid]
        } else {
            positions[vid - n]
        }
    };
    let total_weight = |positions: &[SurfacePoint]| -> f64 {
        topo.edges()
            .iter()
            .map(|&(u, v)| {
                geom.distance_unchecked(&vertex_pos(positions, u), &vertex_pos(positions, v))
            })
            .sum()
    };

    if topo.steiner_count() == 0 {
        let weight = total_weight(&positions);
        return OptimizeOutcome { steiner_positions: positions, weight, converged: true, iterations: 0 };
    }

    let mut weight = total_weight(&positions);
    let mut history: Vec<f64> = vec![weight];
    let mut converged = false;
    let mut iterations = 0u64;

    while iterations < max_iterations {
        iterations += 1;
        for (s, nbrs) in neighbors.iter().enumerate() {
            let current = positions[s];
            let nbr_pos: Vec<SurfacePoint> =
                nbrs.iter().map(|&v| vertex_pos(&positions, v)).collect();
            let local = |p: &SurfacePoint| -> f64 {
                nbr_pos.iter().map(|q| geom.distance_unchecked(p, q)).sum()
            };
            let current_value = local(&current);

            let mut pull = Vec2::ZERO;
            let mut inv_sum = 0.0;
            let mut near: Option<usize> = None;
            let mut usable = true;
            for (i, q) in nbr_pos.iter().enumerate() {
                let Some(u) = chart_log(geom, &current, q) else {
                    usable = false;
                    break;
                };
                let d = u.norm();
                if d < COINCIDENT {
                    near = Some(i);
                    continue;
                }
                pull = pull + u * (1.0 / d);
                inv_sum += 1.0 / d;
            }
            if !usable || inv_sum == 0.0 {
                continue;
            }

            // Sitting on a neighbor: move only when the pull of the other
            // edges exceeds the unit cost of stretching the collapsed one.
            let target = if near.is_some() {
                let strength = pull.norm();
                if strength <= 1.0 {
                    continue;
                }
                let scale = nbr_pos
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| Some(*i) != near)
                    .map(|(_, q)| geom.distance_unchecked(&current, q))
                    .fold(f64::INFINITY, f64::min);
                pull * ((strength - 1.0) / strength * 0.25 * scale)
            } else {
                pull * (1.0 / inv_sum)
            };

            let mut step = 1.0;
            for _ in 0..MAX_HALVINGS {
                let Ok(candidate) = geom.exp_map(&current, target * step) else {
                    break;
                };
                if local(&candidate) <= current_value {
                    positions[s] = candidate;
                    break;
                }
                step *= 0.5;
            }
        }

        weight = total_weight(&positions);
        history.push(weight);

        // The gradient costs about as much as a sweep; sampling it every
        // few sweeps keeps the stopping rule without doubling the work.
        if iterations % 4 == 1 && gradient_norm(geom, terminals, topo, &positions) <= GRADIENT_TOL
        {
            converged = true;
            break;
        }
        if history.len() > STALL_WINDOW {
            let old = history[history.len() - 1 - STALL_WINDOW];
            if old - weight <= RELATIVE_IMPROVEMENT * weight.max(1.0) {
                converged = true;
                break;
            }
        }
    }

    OptimizeOutcome { steiner_positions: positions, weight, converged, iterations }
}

/// Euclidean norm of the stacked chart gradients of the total length with
/// respect to every Steiner position. Collapsed edges contribute nothing
/// (the length term is non-smooth there and handled by the collapse rule).
pub(crate) fn gradient_norm(
    geom: &GeometrySpec,
    terminals: &[SurfacePoint],
    topo: &SteinerTopology,
    positions: &[SurfacePoint],
) -> f64 {
    let n = topo.terminal_count();
    let mut sq = 0.0;
    for (s, nbrs) in topo.steiner_neighbors().iter().enumerate() {
        let p = positions[s];
        let mut g = Vec2::ZERO;
        let mut collapsed = false;
        for &v in nbrs {
            let q = if v < n { terminals[v] } else { positions[v - n] };
            match chart_log(geom, &p, &q) {
                Some(u) => {
                    let d = u.norm();
                    if d < COINCIDENT {
                        collapsed = true;
                    } else {
                        g = g - u * (1.0 / d);
                    }
                }
                None => return f64::INFINITY,
            }
        }
        if collapsed {
            // At a collapse the first-order condition is the unit-ball
            // containment of the remaining pull; report it as satisfied
            // only when that holds.
            if g.norm() > 1.0 + 1e-9 {
                sq += (g.norm() - 1.0) * (g.norm() - 1.0);
            }
        } else {
            sq += g.norm_sq();
        }
    }
    sq.sqrt()
}
