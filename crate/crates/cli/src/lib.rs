//! Command-line front end for quantified interval linear systems.
//!
//! Wraps the decision procedures of `qlinset-core` in four subcommands:
//! `check` (membership of a point, by any or all methods), `info` (the
//! derived forms and prefix classification of a system file), `raster`
//! (deterministic PGM/CSV images of planar solution sets) and `selftest`
//! (seeded differential testing of every decider against the brute-force
//! quantifier oracle).
//!
//! Systems travel as JSON files whose scalars may be exact decimal or
//! fraction strings; data that are not binary64-representable are decided
//! rigorously with outward-rounded enclosures rather than silently rounded.

pub mod commands;
pub mod error;
pub mod file;
pub mod raster;

pub use commands::{
    cmd_check, cmd_info, cmd_raster, cmd_selftest, info_report, parse_point, parse_resolution,
    parse_window, run, CheckMethod, Invocation, EXIT_ERROR, EXIT_MEMBER, EXIT_NON_MEMBER,
};
pub use error::CliError;
pub use file::{parse_scalar_text, LoadedSystem, NumberLit, ParsedScalar, SystemFile};
pub use raster::{classify_grid, encode_csv, encode_pgm, thread_pool, RasterFormat, RasterJob};
