//! Steiner minimal tree upper bounds.
//!
//! Exact Steiner minimality is out of reach in general (the defining
//! infimum runs over all finite supersets), so everything here computes
//! certified upper bounds: realized trees whose weights are achieved by
//! explicit networks. The minimum over all full topologies with
//! multi-start descent, together with the spanning-tree fallback, gives
//! the reported bound. Quotient surfaces are solved by enumerating lift
//! assignments in the covering space.

mod lifting;
mod optimizer;
mod topology;

pub use topology::{
    enumerate_topologies, full_topology_count, SteinerTopology, MAX_TERMINALS, MIN_TERMINALS,
};

pub(crate) use optimizer::{optimize_positions, OptimizeOutcome};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::geometry::{GeometrySpec, SurfacePoint, Vec2};
use crate::spanning::mst;
use crate::tree::{NetworkTree, TreeVertex};

pub use lifting::lift_tree_vertices;

/// Edges at or below this length are treated as collapsed.
pub const COLLAPSE_EDGE: f64 = 1e-9;
/// Seeded restarts per topology used by [`smt_upper`].
pub const RESTARTS_PER_TOPOLOGY: u32 = 8;
/// Angle threshold of the vertex-collapse rule for three terminals:
/// cos(120 degrees).
const COLLAPSE_COS: f64 = -0.5;

/// How a Steiner tree bound was obtained.
#[derive(Clone, Debug)]
pub enum TopologyChoice {
    /// Descent over the Steiner positions of this full topology.
    Full(SteinerTopology),
    /// The spanning tree fallback (also covers collapsed degenerate
    /// cases that coincide with it).
    Spanning,
}

/// A realized Steiner tree upper bound.
#[derive(Clone, Debug)]
pub struct SmtResult {
    pub tree: NetworkTree,
    pub topology: TopologyChoice,
    pub converged: bool,
    pub iterations: u64,
}

/// SplitMix-style mixing for deriving independent substream seeds.
pub(crate) fn mix_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn require_chart_geometry(geom: &GeometrySpec) -> Result<()> {
    match geom {
        GeometrySpec::EuclideanPlane | GeometrySpec::PoincareDisk | GeometrySpec::UnitSphere => {
            Ok(())
        }
        other => Err(Error::InvalidArgument(format!(
            "direct descent runs on plane, disk or sphere; {} goes through the lifting path",
            other.tag()
        ))),
    }
}

/// Chart centroid of a point set; on the sphere the normalized vector sum
/// (first point when degenerate).
fn centroid(geom: &GeometrySpec, points: &[SurfacePoint]) -> SurfacePoint {
    match geom {
        GeometrySpec::UnitSphere => {
            let mut sum = crate::geometry::Vec3::default();
            for p in points {
                sum = sum + p.expect_xyz();
            }
            if sum.norm() < 1e-9 {
                points[0]
            } else {
                SurfacePoint::ThreeD(sum.normalized())
            }
        }
        _ => {
            let mut sum = Vec2::ZERO;
            for p in points {
                sum = sum + p.expect_xy();
            }
            SurfacePoint::TwoD(sum * (1.0 / points.len() as f64))
        }
    }
}

/// Initial Steiner positions: each vertex starts at the chart average of
/// its adjacent terminals (seen from the configuration centroid), plus an
/// optional seeded perturbation proportional to the spread of the
/// terminals.
fn initial_positions(
    geom: &GeometrySpec,
    terminals: &[SurfacePoint],
    topo: &SteinerTopology,
    diameter: f64,
    rng: Option<&mut ChaCha8Rng>,
) -> Vec<SurfacePoint> {
    let center = centroid(geom, terminals);
    let logs: Vec<Option<Vec2>> = terminals.iter().map(|t| geom.log_map(&center, t).ok()).collect();
    let sigma = 0.3 * diameter.max(1e-6);
    let mut rng = rng;
    topo.steiner_neighbors()
        .iter()
        .map(|nbrs| {
            let mut v = Vec2::ZERO;
            let mut count = 0.0;
            for &nb in nbrs {
                if nb < terminals.len() {
                    if let Some(u) = logs[nb] {
                        v = v + u;
                        count += 1.0;
                    }
                }
            }
            if count > 0.0 {
                v = v * (1.0 / (count + 1.0));
            }
            if let Some(r) = rng.as_deref_mut() {
                let rad = sigma * r.gen::<f64>().sqrt();
                let ang = r.gen::<f64>() * std::f64::consts::TAU;
                v = v + Vec2::new(rad * ang.cos(), rad * ang.sin());
            }
            geom.exp_map(&center, v).unwrap_or(center)
        })
        .collect()
}

fn assemble(
    config: &Configuration,
    topo: &SteinerTopology,
    outcome: &OptimizeOutcome,
) -> Result<NetworkTree> {
    let geom = config.geometry();
    let n = topo.terminal_count();
    let mut vertices: Vec<TreeVertex> = (0..n).map(TreeVertex::Terminal).collect();
    for p in &outcome.steiner_positions {
        vertices.push(TreeVertex::Steiner(geom.canonicalize_unchecked(p)));
    }
    let tree = NetworkTree::new(config, vertices, topo.edges().to_vec())?;
    tree.contract_short_edges(config, COLLAPSE_EDGE)
}

/// One seeded multi-start descent over a fixed topology. Restart 0 runs
/// from the unperturbed centroid placement, which keeps repeated solves
/// of the same instance bit-identical.
fn solve_topology(
    config: &Configuration,
    topo: &SteinerTopology,
    seed: u64,
    restarts: u32,
    max_iterations: u64,
) -> Result<SmtResult> {
    let geom = config.geometry();
    let terminals = config.terminals();
    let diameter = config.diameter();
    let mut best: Option<SmtResult> = None;
    for restart in 0..restarts.max(1) {
        let init = if restart == 0 {
            initial_positions(geom, terminals, topo, diameter, None)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, restart as u64));
            initial_positions(geom, terminals, topo, diameter, Some(&mut rng))
        };
        let outcome = optimize_positions(geom, terminals, topo, init, max_iterations);
        let tree = assemble(config, topo, &outcome)?;
        debug_assert!(
            tree.weight() <= outcome.weight + 1e-6,
            "contraction may only shorten the tree: {} vs {}",
            tree.weight(),
            outcome.weight
        );
        let candidate = SmtResult {
            tree,
            topology: TopologyChoice::Full(topo.clone()),
            converged: outcome.converged,
            iterations: outcome.iterations,
        };
        if best
            .as_ref()
            .is_none_or(|b| candidate.tree.weight() < b.tree.weight())
        {
            best = Some(candidate);
        }
    }
    Ok(best.expect("at least one restart"))
}

/// Locally minimal tree length over the Steiner positions of one
/// topology, from seeded multi-start descent.
///
/// The geometry must be the plane, the disk or the sphere; quotient
/// configurations go through [`smt_upper`]. Non-convergence is reported
/// through [`SmtResult::converged`] with the best tree found so far.
pub fn optimize_topology(
    config: &Configuration,
    topo: &SteinerTopology,
    seed: u64,
) -> Result<SmtResult> {
    require_chart_geometry(config.geometry())?;
    if topo.terminal_count() != config.terminal_count() {
        return Err(Error::InvalidArgument(format!(
            "topology is for {} terminals, configuration has {}",
            topo.terminal_count(),
            config.terminal_count()
        )));
    }
    solve_topology(config, topo, seed, 3, optimizer::MAX_ITERATIONS)
}

/// Geodesic median of three points: the point minimizing the sum of the
/// distances to `a`, `b`, `c`, as a three-edge star, or the two-edge path
/// through a vertex whose angle reaches 120 degrees (the collapse rule).
pub fn fermat_point(
    geom: &GeometrySpec,
    a: &SurfacePoint,
    b: &SurfacePoint,
    c: &SurfacePoint,
) -> Result<SmtResult> {
    require_chart_geometry(geom)?;
    let config = Configuration::new(geom.clone(), vec![*a, *b, *c])?;
    let t = config.terminals();
    let inj = geom.injectivity_radius();
    for i in 0..3 {
        for j in (i + 1)..3 {
            if geom.distance_unchecked(&t[i], &t[j]) >= inj {
                return Err(Error::OutsideInjectivityRadius(format!(
                    "terminals {i} and {j} are not within the injectivity radius"
                )));
            }
        }
    }

    // Vertex collapse: an angle of 120 degrees or more (including the
    // degenerate collinear case) puts the minimizer on that vertex.
    for v in 0..3 {
        let x = (v + 1) % 3;
        let y = (v + 2) % 3;
        let ux = geom.log_map(&t[v], &t[x])?;
        let uy = geom.log_map(&t[v], &t[y])?;
        let (nx, ny) = (ux.norm(), uy.norm());
        if nx < COLLAPSE_EDGE || ny < COLLAPSE_EDGE {
            // A duplicate vertex collapses trivially.
            let tree = NetworkTree::new(
                &config,
                vec![TreeVertex::Terminal(0), TreeVertex::Terminal(1), TreeVertex::Terminal(2)],
                vec![(v, x), (v, y)],
            )?;
            return Ok(SmtResult { tree, topology: TopologyChoice::Spanning, converged: true, iterations: 0 });
        }
        let cos = ux.dot(uy) / (nx * ny);
        if cos <= COLLAPSE_COS + 1e-12 {
            let tree = NetworkTree::new(
                &config,
                vec![TreeVertex::Terminal(0), TreeVertex::Terminal(1), TreeVertex::Terminal(2)],
                vec![(v, x), (v, y)],
            )?;
            return Ok(SmtResult { tree, topology: TopologyChoice::Spanning, converged: true, iterations: 0 });
        }
    }

    let topo = enumerate_topologies(3)?.pop().expect("unique topology");
    solve_topology(&config, &topo, mix_seed(0x1234_5678, 0), 3, optimizer::MAX_ITERATIONS)
}

/// Certified upper bound on the Steiner minimal tree length of a
/// configuration: the minimum over every full topology (multi-start per
/// topology) and the spanning-tree fallback.
///
/// On the torus, the Klein bottle and the projective plane the problem
/// is lifted through the covering: terminal lift assignments within the
/// deck window are solved in the plane or on the sphere and the best
/// tree is projected back. The result always satisfies
/// `mst/2 - eps <= weight <= mst + eps`.
pub fn smt_upper(config: &Configuration, seed: u64) -> Result<SmtResult> {
    let n = config.terminal_count();
    if n > MAX_TERMINALS {
        return Err(Error::TerminalCount {
            n,
            reason: format!("topology enumeration is exact only up to {MAX_TERMINALS} terminals"),
        });
    }
    if config.geometry().is_quotient() {
        lifting::smt_upper_lifted(config, seed)
    } else {
        smt_upper_direct(config, seed, RESTARTS_PER_TOPOLOGY, optimizer::MAX_ITERATIONS)
    }
}

/// Direct (plane, disk, sphere) topology sweep. A reduced `restarts` /
/// `max_iterations` budget yields a valid (weaker) upper bound whose
/// restart runs are a prefix of the full-budget ones.
pub(crate) fn smt_upper_direct(
    config: &Configuration,
    seed: u64,
    restarts: u32,
    max_iterations: u64,
) -> Result<SmtResult> {
    let n = config.terminal_count();
    let spanning = mst(config);
    let mut best = SmtResult {
        tree: spanning,
        topology: TopologyChoice::Spanning,
        converged: true,
        iterations: 0,
    };
    if n <= 2 {
        return Ok(best);
    }
    require_chart_geometry(config.geometry())?;
    for (ti, topo) in enumerate_topologies(n)?.iter().enumerate() {
        let candidate = solve_topology(
            config,
            topo,
            mix_seed(seed, 1 + 16 * ti as u64),
            restarts,
            max_iterations,
        )?;
        if candidate.tree.weight() < best.tree.weight() {
            best = candidate;
        }
    }
    Ok(best)
}
