//! Command line front end: distances, spanning trees, Steiner bounds,
//! ratio curves and searches, covering-space checks, and the built-in
//! verification suite.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use steiner_surfaces::config::Configuration;
use steiner_surfaces::geometry::{fmt_f64, CoveringSpec, GeometrySpec};
use steiner_surfaces::pointfile::{format_config, load_config};
use steiner_surfaces::ratio::{lift_experiment, m_curve, ratio, ratio_search};
use steiner_surfaces::spanning::mst;
use steiner_surfaces::steiner::smt_upper;
use steiner_surfaces::tree::{NetworkTree, TreeVertex};
use steiner_surfaces::verify::{run_all, Scale};
use steiner_surfaces::Error;

#[derive(Parser)]
#[command(
    name = "steiner-lab",
    version,
    about = "Steiner trees, spanning trees and Steiner ratios on constant-curvature surfaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PointsArg {
    /// Point file: a geometry line, then one point per line as
    /// comma-separated chart coordinates.
    #[arg(long)]
    points: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Geodesic distance between the two points of a point file.
    Dist(PointsArg),
    /// Minimal spanning tree weight of a configuration.
    Mst {
        #[command(flatten)]
        points: PointsArg,
        /// Also print the tree structure as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Steiner tree upper bound of a configuration.
    Smt {
        #[command(flatten)]
        points: PointsArg,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Steiner ratio (smt upper bound / mst) of a configuration.
    Ratio {
        #[command(flatten)]
        points: PointsArg,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Sample the hyperbolic ratio curve m(r) to CSV.
    Curve {
        #[arg(long, value_name = "R")]
        r_min: f64,
        #[arg(long, value_name = "R")]
        r_max: f64,
        #[arg(long)]
        steps: usize,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized search for low-ratio configurations on a surface.
    Search {
        /// Geometry spec: plane | disk | sphere | torus:ax,ay;bx,by |
        /// klein:w,h | projective.
        #[arg(long)]
        geometry: String,
        /// Number of terminals (3..=6).
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Lift a near-minimal tree through the covering of a quotient
    /// configuration and verify the covering inequalities.
    LiftCheck {
        #[command(flatten)]
        points: PointsArg,
        #[arg(long)]
        seed: u64,
    },
    /// Run the verification suite; exits 0 only if every check passes.
    Verify {
        #[arg(long)]
        seed: u64,
        /// Reduced sweep sizes for interactive runs.
        #[arg(long)]
        quick: bool,
    },
}

fn load(points: &PointsArg) -> Result<Configuration, Error> {
    let (config, notices) = load_config(&points.points)?;
    for n in notices {
        eprintln!("notice: line {}: {}", n.line, n.message);
    }
    Ok(config)
}

fn tree_json(config: &Configuration, tree: &NetworkTree) -> String {
    let mut vertices = Vec::new();
    for v in tree.vertices() {
        let item = match v {
            TreeVertex::Terminal(i) => {
                format!("{{\"kind\":\"terminal\",\"index\":{i},\"coords\":[{}]}}", coords(config, v))
            }
            TreeVertex::Steiner(_) => {
                format!("{{\"kind\":\"steiner\",\"coords\":[{}]}}", coords(config, v))
            }
        };
        vertices.push(item);
    }
    let edges: Vec<String> = tree.edges().iter().map(|&(u, v)| format!("[{u},{v}]")).collect();
    format!(
        "{{\"weight\":{},\"vertices\":[{}],\"edges\":[{}]}}",
        fmt_f64(tree.weight()),
        vertices.join(","),
        edges.join(",")
    )
}

fn coords(config: &Configuration, v: &TreeVertex) -> String {
    let p = match v {
        TreeVertex::Terminal(i) => config.terminals()[*i],
        TreeVertex::Steiner(p) => *p,
    };
    p.coords().iter().map(|c| fmt_f64(*c)).collect::<Vec<_>>().join(",")
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Dist(points) => {
            let config = load(&points)?;
            if config.terminal_count() != 2 {
                return Err(Error::InvalidArgument(format!(
                    "dist needs exactly 2 points, file has {}",
                    config.terminal_count()
                )));
            }
            let d = config
                .geometry()
                .distance(&config.terminals()[0], &config.terminals()[1])?;
            println!("{}", fmt_f64(d));
        }
        Command::Mst { points, json } => {
            let config = load(&points)?;
            let tree = mst(&config);
            println!("{}", fmt_f64(tree.weight()));
            if json {
                println!("{}", tree_json(&config, &tree));
            }
        }
        Command::Smt { points, seed, json } => {
            let config = load(&points)?;
            let result = smt_upper(&config, seed)?;
            println!("{}", fmt_f64(result.tree.weight()));
            if json {
                println!("{}", tree_json(&config, &result.tree));
            }
        }
        Command::Ratio { points, seed, json } => {
            let config = load(&points)?;
            let est = ratio(&config, seed)?;
            println!("{}", fmt_f64(est.ratio));
            if json {
                let tree = smt_upper(&config, seed)?.tree;
                println!(
                    "{{\"mst\":{},\"smt_upper\":{},\"ratio\":{},\"tree\":{}}}",
                    fmt_f64(est.mst_weight),
                    fmt_f64(est.smt_weight),
                    fmt_f64(est.ratio),
                    tree_json(&config, &tree)
                );
            }
        }
        Command::Curve { r_min, r_max, steps, out } => {
            let samples = m_curve(r_min, r_max, steps)?;
            let mut text = String::from("r,m\n");
            for s in &samples {
                text.push_str(&format!("{},{}\n", fmt_f64(s.r), fmt_f64(s.m)));
            }
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Search { geometry, n, iters, seed } => {
            let geom: GeometrySpec = geometry.parse()?;
            let best = ratio_search(&geom, n, iters, seed)?;
            println!("{}", fmt_f64(best.ratio));
            println!("mst {}", fmt_f64(best.mst_weight));
            println!("smt_upper {}", fmt_f64(best.smt_weight));
            print!("witness\n{}", format_config(&best.config));
        }
        Command::LiftCheck { points, seed } => {
            let config = load(&points)?;
            let cover = CoveringSpec::universal(config.geometry())?;
            let report = lift_experiment(&cover, &config, seed)?;
            print!("{report}");
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify { seed, quick } => {
            let scale = if quick { Scale::Quick } else { Scale::Full };
            let results = run_all(seed, scale);
            let mut all = true;
            for r in &results {
                println!("{}", r.line());
                all &= r.passed;
            }
            if !all {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
