use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "teich", version, about = "Lambda-length coordinates, holonomies and Euler numbers")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, Args, Serialize)]
pub struct Common {
    /// Genus of the canonical triangulation used when no input file is given.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u64).range(2..))]
    pub genus: u64,
    /// Seed for every random choice of the run.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random instances per check family.
    #[arg(long, global = true, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Relative tolerance for float comparisons.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive_float)]
    pub tolerance: f64,
    /// Use exact rational arithmetic where the check is rational.
    #[arg(long, global = true)]
    pub exact: bool,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

fn positive_float(text: &str) -> Result<f64, String> {
    let v: f64 = text.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} is not a positive finite number"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scope {
    Lemmas,
    Identities,
    Euler,
    Roundtrip,
    Ptolemy,
    Theorem2,
    All,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Build and validate the canonical triangulation.
    Gen {
        /// Write the triangulation JSON here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Sample a point of the chart with one negative triangle.
    Sample {
        /// Index of the negative triangle; drawn from the seed if omitted.
        #[arg(long)]
        neg_triangle: Option<usize>,
        /// Write the coordinate JSON here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        scope: Scope,
    },
    /// Flip an edge by the signed Ptolemy rule and compare with the transferred representation.
    Flip {
        #[arg(long)]
        edge: usize,
        /// Coordinate file; a sampled chart point is used if omitted.
        point: Option<PathBuf>,
        /// Write the flipped coordinates here.
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Euler number from face windings against the closed formula.
    Euler { point: Option<PathBuf> },
    /// Recover coordinates from the representation.
    Roundtrip { point: Option<PathBuf> },
    /// Boundary holonomy and the chart constraint.
    Boundary { point: Option<PathBuf> },
    /// Sample, apply a flip sequence to coordinates and representation, compare.
    Pipeline {
        /// Comma separated edge indices, applied in order.
        #[arg(long, value_delimiter = ',')]
        edges: Vec<usize>,
        point: Option<PathBuf>,
    },
    /// Build a point on which the curve across an edge's quadrilateral has zero λ-length.
    ZeroLocus {
        #[arg(long)]
        edge: usize,
        /// Parameter in (0, 1); the curve length is 2 ln(1/x).
        #[arg(long)]
        x: f64,
        /// Negative triangle, a side of which is the edge; defaults to the first.
        #[arg(long)]
        neg_triangle: Option<usize>,
        #[arg(long)]
        save: Option<PathBuf>,
    },
    /// Geodesic length of the curve across an edge at a zero-locus point.
    Length {
        #[arg(long)]
        edge: usize,
        point: PathBuf,
    },
    /// Compare two zero-locus points of the same length fiber.
    FiberCheck {
        #[arg(long)]
        edge: usize,
        first: PathBuf,
        second: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen { .. } => "gen",
            Command::Sample { .. } => "sample",
            Command::Verify { .. } => "verify",
            Command::Flip { .. } => "flip",
            Command::Euler { .. } => "euler",
            Command::Roundtrip { .. } => "roundtrip",
            Command::Boundary { .. } => "boundary",
            Command::Pipeline { .. } => "pipeline",
            Command::ZeroLocus { .. } => "zero-locus",
            Command::Length { .. } => "length",
            Command::FiberCheck { .. } => "fiber-check",
        }
    }
}
