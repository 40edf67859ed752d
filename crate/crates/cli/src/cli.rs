use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{CliError, CliResult};
use crate::load::Reference;

/// Exact computations with finite-dimensional Lie–Rinehart algebras.
///
/// Algebras are given as a JSON file, `builtin:<name>`, or `--builtin <name>`.
/// The variable `LIERINEHART_MAX_DEGREE` raises the (co)homology degree cap.
#[derive(Debug, Parser)]
#[command(name = "lierinehart", version)]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// Algebra file or `builtin:<name>`.
    #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
    pub file: Option<String>,

    /// Name of a builtin algebra.
    #[arg(long, value_name = "NAME")]
    pub builtin: Option<String>,
}

impl Source {
    pub fn reference(&self) -> CliResult<Reference> {
        match (&self.file, &self.builtin) {
            (_, Some(name)) => Ok(Reference::Builtin(name.clone())),
            (Some(spec), None) => Ok(Reference::parse(spec, std::path::Path::new(""))),
            (None, None) => Err(CliError::Usage("an algebra file or --builtin is required".into())),
        }
    }
}

#[derive(Debug, Args)]
pub struct Coefficients {
    /// Use `Q^K` with the algebra acting trivially (the default, with K = 1).
    #[arg(long, value_name = "K", conflicts_with = "module")]
    pub trivial_module: Option<usize>,

    /// `adjoint`, `base`, or a module entry `path#name`.
    #[arg(long, value_name = "SPEC")]
    pub module: Option<String>,

    /// Report a single degree instead of every degree up to the cap.
    #[arg(long, value_name = "N")]
    pub degree: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validate an algebra and the modules in its file.
    Check(Source),
    /// The center `Z_A(L)`.
    Center(Source),
    /// The derived algebra `[L, L]` and whether `L` is perfect.
    Commutator(Source),
    /// The universal central extension `uce_A(L)`.
    Uce {
        #[command(flatten)]
        source: Source,
        /// Also report centrality of the kernel and the image of the projection.
        #[arg(long)]
        full: bool,
    },
    /// Rinehart cohomology with coefficients in a left module.
    Cohomology {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        coefficients: Coefficients,
    },
    /// Rinehart homology with coefficients in a right module.
    Homology {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        coefficients: Coefficients,
    },
    /// Compare Rinehart cohomology of `A ⊗ g` with Chevalley–Eilenberg cohomology of `g`.
    CompareCe {
        /// Builtin Lie algebra over Q.
        #[arg(long, value_name = "NAME")]
        lie: String,
        /// Builtin commutative base algebra.
        #[arg(long, value_name = "NAME")]
        base: String,
        /// Dimension of the trivial coefficient module.
        #[arg(long, value_name = "K", default_value_t = 1)]
        trivial_module: usize,
        #[arg(long, value_name = "N")]
        degree: Option<usize>,
    },
    /// The non-abelian tensor product `L ⊗ M`, or `L ⊗̂ L` with `--hat`.
    Tensor {
        /// First algebra.
        l: String,
        /// Second algebra; defaults to the first.
        m: Option<String>,
        /// `bracket`, `trivial`, or a file with an `actions` block.
        #[arg(long, value_name = "SPEC")]
        actions: Option<String>,
        /// Build `L ⊗̂ L` and compare it with `uce_A(L)`.
        #[arg(long)]
        hat: bool,
    },
    /// Lift an automorphism along a covering (`universal` or a morphism file).
    LiftAut { covering: String, automorphism: String },
    /// Lift a derivation pair along a covering (`universal` or a morphism file).
    LiftDer { covering: String, derivation: String },
    /// Pull a central extension back along a morphism.
    Pullback { extension: String, map: String },
    /// Check `uce_A` on a split exact sequence `L →f M ⇄(g, s) N`.
    SplitUce { f: String, g: String, s: String },
    /// Write an algebra in the file format.
    Export {
        #[command(flatten)]
        source: Source,
        /// Output path; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// List the builtin algebras.
    Builtins,
}
