use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Ratio;

/// Real number given as a decimal or as an exact fraction `N/D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl FromStr for Num {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.contains('/') {
            let r = Ratio::<i64>::from_str(s).map_err(|e| format!("bad fraction '{s}': {e}"))?;
            return Ok(Num(*r.numer() as f64 / *r.denom() as f64));
        }
        let v: f64 = s.parse().map_err(|_| format!("bad number '{s}'"))?;
        if !v.is_finite() {
            return Err(format!("'{s}' is not finite"));
        }
        Ok(Num(v))
    }
}

#[derive(Debug, Parser)]
#[command(name = "lame", version, about = "Band edges, partners and Floquet checks for associated Lamé potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

/// Potential `p m sn² + q m cn²/dn²`, given by strengths or by their roots.
#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<Num>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<Num>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<Num>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<Num>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Analytic,
    Numeric,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Edges,
    GapDelta2,
    Deviation,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// V(x) over one period, optionally with W and the partner potentials.
    Profile {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        m: Num,
        /// Number of grid points.
        #[arg(long, default_value_t = 400)]
        grid: usize,
        #[arg(long)]
        partner: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Closed-form and/or numerical band edges.
    Edges {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        m: Num,
        #[arg(long, value_enum, default_value = "both")]
        source: Source,
        #[arg(long)]
        e_max: Option<Num>,
        #[command(flatten)]
        out: Output,
    },
    /// Superpotential, partner potentials and the self-isospectrality verdict.
    Partner {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        m: Num,
        #[arg(long, default_value_t = 400)]
        grid: usize,
        #[command(flatten)]
        out: Output,
    },
    /// A quantity over a grid of m values.
    Scan {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long, value_enum)]
        quantity: Quantity,
        #[arg(long, value_enum, default_value = "analytic")]
        source: Source,
        /// Comma-separated m values; default 0.02..0.98 step 0.02 and 0.998.
        #[arg(long, value_delimiter = ',')]
        m_values: Option<Vec<Num>>,
        #[arg(long)]
        e_max: Option<Num>,
        #[command(flatten)]
        out: Output,
    },
    /// Discriminant and crystal momentum over an energy range.
    Dispersion {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long)]
        m: Num,
        #[arg(long, allow_hyphen_values = true)]
        e_min: Option<Num>,
        #[arg(long)]
        e_max: Num,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[command(flatten)]
        out: Output,
    },
    /// Run the acceptance checks; exit status 1 if any fails.
    Verify {
        /// Comma-separated criterion numbers (default: all).
        #[arg(long, value_delimiter = ',')]
        criteria: Option<Vec<usize>>,
        #[command(flatten)]
        out: Output,
    },
    /// Parabolas of solvability: membership of (p, q), or point lists.
    Parabolas {
        #[command(flatten)]
        pot: PotentialArgs,
        #[arg(long, default_value = "0")]
        a_min: Num,
        #[arg(long, default_value = "5")]
        a_max: Num,
        #[arg(long, default_value_t = 51)]
        grid: usize,
        #[command(flatten)]
        out: Output,
    },
}
