use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod config;

use config::Format;

#[derive(Parser, Debug)]
#[command(name = "quasitile", version, about = "Exact icosahedral tilings from the D6 lattice")]
struct Cli {
    /// Worker threads for patch enumeration.
    #[arg(long, global = true, env = "QUASITILE_THREADS")]
    threads: Option<usize>,

    /// TOML file with default values for the flags below.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EdgeRuleArg {
    DualFacet,
    Endpoints,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportTarget {
    Window,
    Tiles,
    Patch,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a patch of the tiling.
    Gen {
        /// Patch radius in units of the short edge Az.
        #[arg(long, allow_negative_numbers = true)]
        radius: Option<f64>,
        /// Exact shift as nine integers a1,b1,d1,a2,b2,d2,a3,b3,d3 for (a+b*tau)/d.
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        edge_rule: Option<EdgeRuleArg>,
    },
    /// Run the exact verification suite and print a JSON report.
    Verify {
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replace M[A'][A] by a wrong value (negative control).
        #[arg(long, hide = true)]
        corrupt_m: bool,
    },
    /// Layer spacings, vertex-star census and density of a patch file.
    Stats {
        /// Patch in JSON form, as written by `gen`.
        patch: PathBuf,
        /// Restrict the layer report to one 5-fold axis (1-6).
        #[arg(long)]
        axis: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the window, the prototiles or a patch file.
    Export {
        #[arg(value_enum)]
        what: ExportTarget,
        /// Input patch (JSON) when exporting a patch.
        #[arg(long)]
        patch: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Characteristic polynomial and eigenvalues of the inflation matrices.
    Spectra {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(e.exit_code())
        }
    }
}
