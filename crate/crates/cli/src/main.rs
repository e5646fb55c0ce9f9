//! pervcalc: an exact workbench for perverse-sheaf diagrams on curve germs.
//!
//! Objects and morphisms travel as JSON files (stdin/stdout by default), so
//! commands compose in a shell pipeline:
//!
//! ```text
//! pervcalc gallery --name t_resolution | pervcalc factor
//! ```
//!
//! Exit codes: 0 success or pass, 1 property violation or confirmed
//! mismatch, 2 input or usage error.

mod commands;
mod io;
mod outputs;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use perv_core::PervError;

use crate::commands::*;
use crate::io::{read_input, write_output};

#[derive(Parser)]
#[command(
    name = "pervcalc",
    version,
    about = "Exact computations with perverse-sheaf diagrams on curve germs"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the diagram axioms of an object or morphism file
    Validate {
        /// Input file (stdin when omitted)
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        /// Output file (stdout when omitted)
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Kernel, image and cokernel of a morphism, with supports, stalks and
    /// characteristic cycles
    Factor {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Stalk cohomology of an object (or induced stalk maps of a morphism)
    /// at a location
    Stalk {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        /// Location: "origin" or "branch:i" (1-based)
        #[arg(long)]
        at: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Support of an object
    Support {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Characteristic cycle of an object (field coefficients)
    Cc {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Vanishing cycles of an object, or the induced map of a morphism
    Phi {
        #[arg(long, value_name = "FILE")]
        r#in: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// A generating set of the morphism space between two object files
    Hom {
        #[arg(long, value_name = "FILE")]
        source: PathBuf,
        #[arg(long, value_name = "FILE")]
        target: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Decide isomorphism between two object files (exit 1 when the objects
    /// are distinguished by an invariant)
    Iso {
        #[arg(long, value_name = "FILE")]
        source: PathBuf,
        #[arg(long, value_name = "FILE")]
        target: PathBuf,
        /// Randomized search attempts over field coefficients
        #[arg(long)]
        trials: Option<u64>,
        /// Seed (default: PERVCALC_SEED or 42)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Run a randomized theorem-checking suite
    Check {
        /// support | corollary | endo | eigen | cc | all
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Seed (default: PERVCALC_SEED or 42)
        #[arg(long)]
        seed: Option<u64>,
        /// Coefficient ring tag: q, z or fp:P
        #[arg(long, default_value = "q")]
        ring: String,
        /// Largest module rank the generators draw
        #[arg(long, default_value_t = 6)]
        max_dim: u64,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Emit a named worked example as an object or morphism file
    Gallery {
        /// rx_shift | ic_x | m_shift | t_resolution | s_inclusion |
        /// endo_example | jshriek_branch | jstar_branch
        #[arg(long)]
        name: String,
        /// Coefficient ring tag: q, z or fp:P
        #[arg(long, default_value = "z")]
        ring: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
}

fn default_seed(explicit: Option<u64>) -> Result<u64, PervError> {
    if let Some(s) = explicit {
        return Ok(s);
    }
    match std::env::var("PERVCALC_SEED") {
        Ok(v) => v
            .parse()
            .map_err(|_| PervError::Input(format!("PERVCALC_SEED is not a valid seed: {v:?}"))),
        Err(_) => Ok(42),
    }
}

fn run(cli: Cli) -> Result<i32, PervError> {
    let (rendered, out_path) = match cli.cmd {
        Cmd::Validate { r#in, out } => (cmd_validate(&read_input(&r#in)?)?, out),
        Cmd::Factor { r#in, out } => (cmd_factor(&read_input(&r#in)?)?, out),
        Cmd::Stalk { r#in, at, out } => (cmd_stalk(&read_input(&r#in)?, &at)?, out),
        Cmd::Support { r#in, out } => (cmd_support(&read_input(&r#in)?)?, out),
        Cmd::Cc { r#in, out } => (cmd_cc(&read_input(&r#in)?)?, out),
        Cmd::Phi { r#in, out } => (cmd_phi(&read_input(&r#in)?)?, out),
        Cmd::Hom { source, target, out } => {
            let src = read_input(&Some(source))?;
            let tgt = read_input(&Some(target))?;
            (cmd_hom(&src, &tgt)?, out)
        }
        Cmd::Iso { source, target, trials, seed, out } => {
            let src = read_input(&Some(source))?;
            let tgt = read_input(&Some(target))?;
            let seed = default_seed(seed)?;
            let trials = trials.unwrap_or(perv_core::DEFAULT_ISO_TRIALS as u64);
            (cmd_iso(&src, &tgt, trials, seed)?, out)
        }
        Cmd::Check { suite, trials, seed, ring, max_dim, out } => {
            let seed = default_seed(seed)?;
            (cmd_check(&suite, &ring, trials, max_dim, seed)?, out)
        }
        Cmd::Gallery { name, ring, out } => (cmd_gallery(&name, &ring)?, out),
    };
    let text = if cli.json { rendered.json } else { rendered.human };
    write_output(&out_path, &text)?;
    Ok(rendered.exit)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(if e.is_input_error() { 2 } else { 1 });
        }
    }
}
