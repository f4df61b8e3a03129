//! Argument parsing and dispatch.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use tropsev_core::dual_curve::dualize;
use tropsev_core::enumeration::Strategy;
use tropsev_core::intersection::{mixed_volume, stable_intersect, translate};
use tropsev_core::severi::{severi_weight, SeveriSpec};
use tropsev_core::subdivision::concave_hull;
use tropsev_core::torus_group::build_matrix;
use tropsev_core::{LatticePolygon, Subdivision, WeightFunction};

use crate::check::run_suites;
use crate::json::{self, CountReport, CurveJson, GroupReport, IntersectReport, SubdivideReport, WeightReport};
use crate::parallel::count_reseeding;
use crate::svg;
use crate::CliError;

/// Reseeding budget when a stretched configuration turns out degenerate.
const RESEED_ATTEMPTS: u64 = 16;

#[derive(Parser, Debug)]
#[command(name = "tropsev", version, about = "Exact computations on tropical Severi varieties")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub json_out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Regular subdivision induced by a weight vector.
    Subdivide(PolygonWeights),
    /// Dual tropical curve of a weight vector.
    Curve(PolygonWeights),
    /// Rank, multiplicity and weight of a maximal-rank point.
    Weight(WeightArgs),
    /// Boundary-binomial matrix of a nodal subdivision.
    Group(GroupArgs),
    /// Stable intersection of two curves.
    Intersect(IntersectArgs),
    /// Severi degree through stretched points.
    Count(CountArgs),
    /// Seeded invariant suites.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
pub struct PolygonWeights {
    #[arg(long)]
    pub polygon: PathBuf,
    #[arg(long)]
    pub weights: PathBuf,
    /// Directory for an SVG picture.
    #[arg(long)]
    pub emit_svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct WeightArgs {
    #[arg(long)]
    pub polygon: PathBuf,
    #[arg(long)]
    pub weights: PathBuf,
    #[arg(long)]
    pub delta: usize,
    /// Accept the regular-point hypothesis for non-primitive parallelograms.
    #[arg(long)]
    pub assume_regular_point: bool,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    #[arg(long)]
    pub polygon: PathBuf,
    /// Explicit faces; otherwise the subdivision induced by `--weights`.
    #[arg(long, required_unless_present = "weights", conflicts_with = "weights")]
    pub subdivision: Option<PathBuf>,
    #[arg(long)]
    pub weights: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct IntersectArgs {
    #[arg(long)]
    pub polygon: PathBuf,
    #[arg(long)]
    pub weights: PathBuf,
    #[arg(long)]
    pub other_polygon: PathBuf,
    #[arg(long)]
    pub other_weights: PathBuf,
    /// Translation `["p/q", "r/s"]` applied to the second curve.
    #[arg(long)]
    pub shift: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    Subdivision,
    Path,
    Both,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Subdivision => Strategy::SubdivisionSolve,
            StrategyArg::Path => Strategy::PathCount,
            StrategyArg::Both => Strategy::Both,
        }
    }
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long)]
    pub polygon: PathBuf,
    #[arg(long)]
    pub delta: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = StrategyArg::Both)]
    pub strategy: StrategyArg,
    /// Directory for one SVG per counted curve.
    #[arg(long)]
    pub emit_svg: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub instances: usize,
}

fn polygon_and_weights(polygon: &Path, weights: &Path) -> Result<(LatticePolygon, WeightFunction), CliError> {
    let d = json::read::<json::PolygonFile>(polygon)?.polygon()?;
    let w = json::read::<json::WeightsFile>(weights)?.weights()?;
    Ok((d, w))
}

fn write_svg(dir: &Path, name: &str, contents: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join(name), contents)?;
    Ok(())
}

/// Runs one command and returns its JSON report.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Subdivide(a) => {
            let (d, w) = polygon_and_weights(&a.polygon, &a.weights)?;
            let h = concave_hull(&d, &w)?;
            if let Some(dir) = &a.emit_svg {
                write_svg(dir, "subdivision.svg", &svg::render(&h.subdivision, &dualize(&d, &w)?, &[]))?;
            }
            Ok(json::to_string(&SubdivideReport::new(&h)))
        }
        Command::Curve(a) => {
            let (d, w) = polygon_and_weights(&a.polygon, &a.weights)?;
            let curve = dualize(&d, &w)?;
            if let Some(dir) = &a.emit_svg {
                let s = concave_hull(&d, &w)?.subdivision;
                write_svg(dir, "curve.svg", &svg::render(&s, &curve, &[]))?;
            }
            Ok(json::to_string(&CurveJson::new(&curve)))
        }
        Command::Weight(a) => {
            let (d, w) = polygon_and_weights(&a.polygon, &a.weights)?;
            let spec = SeveriSpec::new(d, a.delta)?;
            let report = severi_weight(&spec, &w, a.assume_regular_point)?;
            Ok(json::to_string(&WeightReport::new(&report)))
        }
        Command::Group(a) => {
            let d = json::read::<json::PolygonFile>(&a.polygon)?.polygon()?;
            let s: Subdivision = match (&a.subdivision, &a.weights) {
                (Some(path), _) => json::read::<json::SubdivisionFile>(path)?.subdivision(d)?,
                (None, Some(path)) => concave_hull(&d, &json::read::<json::WeightsFile>(path)?.weights()?)?.subdivision,
                (None, None) => return Err(CliError::Schema("--subdivision or --weights is required".into())),
            };
            let g = build_matrix(&s)?;
            Ok(json::to_string(&GroupReport::new(&s, &g)))
        }
        Command::Intersect(a) => {
            let (d1, w1) = polygon_and_weights(&a.polygon, &a.weights)?;
            let (d2, w2) = polygon_and_weights(&a.other_polygon, &a.other_weights)?;
            let mut c2 = dualize(&d2, &w2)?;
            if let Some(shift) = &a.shift {
                let p: [String; 2] =
                    serde_json::from_str(shift).map_err(|e| CliError::Schema(format!("--shift: {e}")))?;
                c2 = translate(&c2, &json::parse_plane_point(&p)?);
            }
            let points = stable_intersect(&dualize(&d1, &w1)?, &c2);
            Ok(json::to_string(&IntersectReport::new(&points, mixed_volume(&d1, &d2)?)))
        }
        Command::Count(a) => {
            let d = json::read::<json::PolygonFile>(&a.polygon)?.polygon()?;
            let spec = SeveriSpec::allowing_reducible(d.clone(), a.delta)?;
            let report = count_reseeding(&spec, a.seed, a.strategy.into(), RESEED_ATTEMPTS)?;
            if let Some(dir) = &a.emit_svg {
                for (i, sol) in report.solutions.iter().enumerate() {
                    let curve = dualize(&d, &sol.omega)?;
                    let picture = svg::render(&sol.subdivision, &curve, &report.configuration.points);
                    write_svg(dir, &format!("solution_{i:03}.svg"), &picture)?;
                }
            }
            Ok(json::to_string(&CountReport::new(&report)))
        }
        Command::Check(a) => {
            let report = run_suites(a.seed, a.instances);
            let text = json::to_string(&report);
            if report.failures() > 0 {
                print!("{text}");
                return Err(CliError::Invariant(format!("{} failing instances", report.failures())));
            }
            Ok(text)
        }
    }
}

/// Runs the command and writes its report to `--json-out` or stdout.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let text = execute(&cli.command)?;
    match &cli.json_out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
