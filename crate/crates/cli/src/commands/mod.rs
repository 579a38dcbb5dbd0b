//! Subcommands. Each returns a [`Verdict`] (exit status 0 or 1) or a
//! [`CliError`](crate::error::CliError).

use std::io::Write;
use std::num::NonZeroUsize;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::{CliError, Result};

mod algebra;
mod deform;
mod homotopy;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Holds => 0,
            Verdict::Fails => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "deforma",
    version,
    about = "Exact deformation theory of finite-dimensional algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check associativity of a multiplication table.
    CheckAssoc { file: PathBuf },
    /// Hochschild cohomology H^n(A, A).
    Cohomology {
        file: PathBuf,
        #[arg(long)]
        degree: usize,
        /// Also write the report as JSON.
        #[arg(long)]
        json_out: Option<PathBuf>,
    },
    /// Truncated formal deformations.
    #[command(subcommand)]
    Deform(DeformCommand),
    /// L∞ and A∞ structures.
    #[command(subcommand)]
    Homotopy(HomotopyCommand),
}

#[derive(Debug, Subcommand)]
pub enum DeformCommand {
    /// Check the deformation equations through the given order.
    Validate {
        file: PathBuf,
        #[arg(long)]
        order: Option<NonZeroUsize>,
    },
    /// Extend to a higher order when the obstructions vanish.
    Extend {
        file: PathBuf,
        /// Target order (default: one more than the input).
        #[arg(long)]
        order: Option<NonZeroUsize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Search for a gauge element taking the first deformation to the second.
    Equivalent {
        first: PathBuf,
        second: PathBuf,
        /// Where to write the gauge element.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coordinates of the first-order term in H².
    Classify { file: PathBuf },
    /// Apply a gauge element to a deformation.
    GaugeApply {
        gauge: PathBuf,
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Number of nonzero entries of each Maurer-Cartan residual.
    McResidual {
        file: PathBuf,
        #[arg(long)]
        order: Option<NonZeroUsize>,
    },
    /// Check the antisymmetrized first-order term of a commutative base.
    Poisson { file: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum HomotopyCommand {
    /// Check the L∞ relations.
    LinfCheck {
        file: PathBuf,
        #[arg(long, default_value = "4")]
        max_n: NonZeroUsize,
    },
    /// Check the A∞ relations.
    AinfCheck {
        file: PathBuf,
        #[arg(long, default_value = "4")]
        max_n: NonZeroUsize,
    },
    /// Lift the operations to a coderivation and test whether it squares to zero.
    CoderLift {
        file: PathBuf,
        #[arg(long, default_value = "4")]
        truncation: NonZeroUsize,
    },
    /// Push a Maurer-Cartan series along a weak morphism.
    McPush {
        structure: PathBuf,
        series: PathBuf,
        /// Components of a morphism into `--target` (default: the identity).
        #[arg(long, requires = "target", conflicts_with = "sum_with")]
        morphism: Option<PathBuf>,
        #[arg(long, requires = "morphism")]
        target: Option<PathBuf>,
        /// Push along the inclusion into the direct sum with this structure.
        #[arg(long)]
        sum_with: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Runs a parsed command, writing human-readable output to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Verdict> {
    match &cli.command {
        Command::CheckAssoc { file } => algebra::check_assoc(file, out),
        Command::Cohomology {
            file,
            degree,
            json_out,
        } => algebra::cohomology(file, *degree, json_out.as_deref(), out),
        Command::Deform(c) => deform::run(c, out),
        Command::Homotopy(c) => homotopy::run(c, out),
    }
}

pub(crate) fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}
