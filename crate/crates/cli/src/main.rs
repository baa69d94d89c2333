//! `qlinset`: membership in quantifier solution sets of interval linear
//! systems.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qlinset_cli::{run, CheckMethod, Invocation, RasterFormat, EXIT_ERROR};

#[derive(Parser)]
#[command(
    name = "qlinset",
    version,
    about = "Decide membership in quantifier solution sets of interval linear systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a point belongs to the solution set of a system file.
    ///
    /// Exit code: 0 member, 1 non-member, 2 error or disagreement.
    Check {
        /// System file (JSON).
        file: PathBuf,
        /// Point coordinates `v1,v2,...` (decimals or fractions like -1/13).
        #[arg(long, value_name = "COORDS", allow_hyphen_values = true)]
        x: String,
        /// Decision procedure to run.
        #[arg(long, value_enum, default_value_t = CheckMethod::All)]
        method: CheckMethod,
    },
    /// Print the derived forms and prefix classification of a system file.
    Info {
        /// System file (JSON).
        file: PathBuf,
    },
    /// Rasterize the solution set of a two-column system.
    Raster {
        /// System file (JSON).
        file: PathBuf,
        /// Window `x1lo,x1hi,x2lo,x2hi`.
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Resolution `WxH`.
        #[arg(long, default_value = "256x256")]
        res: String,
        /// Output format.
        #[arg(long, value_enum, default_value_t = RasterFormat::Pgm)]
        format: RasterFormat,
        /// Output path (`-` for stdout).
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the seeded differential-testing suites.
    Selftest {
        /// Seed of the system/point sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of sampled systems.
        #[arg(long, default_value_t = 500)]
        cases: u64,
    },
}

impl From<Command> for Invocation {
    fn from(cmd: Command) -> Invocation {
        match cmd {
            Command::Check { file, x, method } => Invocation::Check { file, x, method },
            Command::Info { file } => Invocation::Info { file },
            Command::Raster {
                file,
                window,
                res,
                format,
                out,
            } => Invocation::Raster {
                file,
                window,
                res,
                format,
                out,
            },
            Command::Selftest { seed, cases } => Invocation::Selftest { seed, cases },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command.into()) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
