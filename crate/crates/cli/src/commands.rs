//! The four subcommands: `check`, `info`, `raster` and `selftest`.
//!
//! Each command returns the process exit code: 0 for a member verdict (or
//! plain success), 1 for a non-member verdict (or a failed selftest), and
//! errors bubble up to exit 2.  A `check` on data containing non-binary64
//! rationals is answered by the rigorous enclosure decider instead of the
//! requested method, and its undecided outcome `boundary-uncertain` also
//! exits 2 — the point cannot be classified without exact arithmetic.

use std::fmt;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qlinset_core::{
    eval_prefix_recursive, exact_enclosures, member_ir, member_kr, member_real, member_strict,
    oracle_member, oracle_prefix_shuffle_test, Enclosure, Error, IMatrix, IVector,
    MembershipVerdict, QuantIntervalSystem, Quantifier, RMatrix, RelationSign, StrictVerdict,
    SystemSampler,
};

use crate::error::CliError;
use crate::file::{parse_scalar_text, LoadedSystem, ParsedScalar, SystemFile};
use crate::raster::{classify_grid, encode_csv, encode_pgm, RasterFormat, RasterJob};

pub const EXIT_MEMBER: u8 = 0;
pub const EXIT_NON_MEMBER: u8 = 1;
pub const EXIT_ERROR: u8 = 2;

/// Membership points sampled per system during a selftest case.
const SELFTEST_POINTS: usize = 20;

/// Prefix reorderings tried per inequality system during a selftest case.
const SELFTEST_SHUFFLES: usize = 8;

/// Decision procedure selected by `check --method`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum CheckMethod {
    /// Real-arithmetic closed form.
    Real,
    /// Directed-interval (Kaucher) inclusion.
    Kr,
    /// Classical-interval inclusion.
    Ir,
    /// Brute-force quantifier evaluation (small systems only).
    Oracle,
    /// Run every method and report agreement.
    All,
}

impl fmt::Display for CheckMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CheckMethod::Real => "real",
            CheckMethod::Kr => "kr",
            CheckMethod::Ir => "ir",
            CheckMethod::Oracle => "oracle",
            CheckMethod::All => "all",
        };
        f.write_str(name)
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn load(path: &Path) -> Result<LoadedSystem, CliError> {
    SystemFile::parse(&read_file(path)?)?.load()
}

fn verdict_word(member: bool) -> &'static str {
    if member {
        "member"
    } else {
        "non-member"
    }
}

fn verdict_exit(member: bool) -> u8 {
    if member {
        EXIT_MEMBER
    } else {
        EXIT_NON_MEMBER
    }
}

fn print_residuals(verdict: &MembershipVerdict) {
    for (i, (lo, hi)) in verdict.residuals.iter().enumerate() {
        println!("row {}: lower slack {lo}, upper slack {hi}", i + 1);
    }
}

/// Parses the comma-separated coordinate list of `check --x`.
pub fn parse_point(text: &str) -> Result<Vec<ParsedScalar>, CliError> {
    text.split(',').map(parse_scalar_text).collect()
}

/// `check <file> --x v1,v2,... [--method ...]`
pub fn cmd_check(path: &Path, x_text: &str, method: CheckMethod) -> Result<u8, CliError> {
    let loaded = load(path)?;
    let coords = parse_point(x_text)?;
    let sys = &loaded.system;

    let exact = loaded.all_exact && coords.iter().all(|c| c.exact);
    if !exact {
        println!("note: input contains non-binary64 rationals; deciding on outward-rounded enclosures");
        if method != CheckMethod::All {
            println!("note: --method {method} is superseded by the enclosure decider");
        }
        let enclosures: Vec<Enclosure> = coords.iter().map(|c| c.enclosure).collect();
        let verdict = member_strict(sys, &loaded.a_enclosures, &loaded.b_enclosures, &enclosures)?;
        let (word, exit) = match verdict {
            StrictVerdict::Member => ("member", EXIT_MEMBER),
            StrictVerdict::NonMember => ("non-member", EXIT_NON_MEMBER),
            StrictVerdict::Uncertain => ("boundary-uncertain", EXIT_ERROR),
        };
        println!("{word}");
        return Ok(exit);
    }

    let x: Vec<f64> = coords.iter().map(|c| c.value).collect();
    let single = |verdict: MembershipVerdict| {
        print_residuals(&verdict);
        println!("{}", verdict_word(verdict.member));
        verdict_exit(verdict.member)
    };
    match method {
        CheckMethod::Real => Ok(single(member_real(sys, &x)?)),
        CheckMethod::Kr => Ok(single(member_kr(sys, &x)?)),
        CheckMethod::Ir => Ok(single(member_ir(sys, &x)?)),
        CheckMethod::Oracle => {
            let member = oracle_member(sys, &x)?;
            println!("{}", verdict_word(member));
            Ok(verdict_exit(member))
        }
        CheckMethod::All => {
            let real = member_real(sys, &x)?;
            let kr = member_kr(sys, &x)?;
            let ir = member_ir(sys, &x)?;
            println!("real:   {}", verdict_word(real.member));
            println!("kr:     {}", verdict_word(kr.member));
            println!("ir:     {}", verdict_word(ir.member));
            let oracle = match oracle_member(sys, &x) {
                Ok(v) => {
                    println!("oracle: {}", verdict_word(v));
                    Some(v)
                }
                Err(Error::OracleTooLarge { .. }) => {
                    println!("oracle: skipped (system beyond oracle size)");
                    None
                }
                Err(e) => return Err(e.into()),
            };
            let agree = kr.member == real.member
                && ir.member == real.member
                && oracle.map_or(true, |v| v == real.member);
            if !agree {
                println!("agreement: NO - methods disagree");
                return Ok(EXIT_ERROR);
            }
            println!("agreement: yes");
            print_residuals(&real);
            println!("{}", verdict_word(real.member));
            Ok(verdict_exit(real.member))
        }
    }
}

fn fmt_ivector(v: &IVector) -> String {
    v.iter().map(|iv| iv.to_string()).collect::<Vec<_>>().join(", ")
}

fn fmt_imatrix(m: &IMatrix) -> String {
    (0..m.rows())
        .map(|i| {
            let row = (0..m.cols())
                .map(|j| m.get(i, j).to_string())
                .collect::<Vec<_>>()
                .join(", ");
            format!("[{row}]")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn fmt_sign(v: f64) -> &'static str {
    if v > 0.0 {
        "+1"
    } else {
        "-1"
    }
}

fn fmt_rmatrix_signs(m: &RMatrix) -> String {
    (0..m.rows())
        .map(|i| {
            let row = (0..m.cols())
                .map(|j| fmt_sign(m.get(i, j)))
                .collect::<Vec<_>>()
                .join(", ");
            format!("[{row}]")
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn quant_word(q: Quantifier) -> &'static str {
    match q {
        Quantifier::ForAll => "forall",
        Quantifier::Exists => "exists",
    }
}

fn sigma_word(s: RelationSign) -> &'static str {
    match s {
        RelationSign::Eq => "eq",
        RelationSign::Ge => "ge",
        RelationSign::Le => "le",
    }
}

/// The deterministic dump `info` prints: the system, its quantifier
/// pattern, the prefix classification, and every derived form.
pub fn info_report(sys: &QuantIntervalSystem) -> String {
    let yn = |flag: bool| if flag { "yes" } else { "no" };
    let d = sys.build_derived();
    let (m, n) = (sys.m(), sys.n());
    let mut out = String::new();
    let _ = writeln!(out, "system: {m} rows, {n} cols");
    let _ = writeln!(
        out,
        "sigma = [{}]",
        sys.sigma_all()
            .iter()
            .map(|&s| sigma_word(s))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(out, "A = {}", fmt_imatrix(sys.a()));
    let _ = writeln!(out, "b = {}", fmt_ivector(sys.b()));
    let quant_rows = (0..m)
        .map(|i| {
            let row = (0..n)
                .map(|j| quant_word(sys.quant_a(i, j)))
                .collect::<Vec<_>>()
                .join(", ");
            format!("[{row}]")
        })
        .collect::<Vec<_>>()
        .join("; ");
    let _ = writeln!(out, "q(A) = {quant_rows}");
    let _ = writeln!(
        out,
        "q(b) = {}",
        (0..m)
            .map(|i| quant_word(sys.quant_b(i)))
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(
        out,
        "prefix = {}",
        sys.prefix()
            .params()
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    );
    let class = sys.classify_prefix();
    let _ = writeln!(
        out,
        "prefix class: AE={}, rowwise-AE={}, Q^sigma={}",
        yn(class.is_ae),
        yn(class.is_rowwise_ae),
        yn(class.is_q_sigma)
    );
    let _ = writeln!(out, "A_forall = {}", fmt_imatrix(&d.a_forall));
    let _ = writeln!(out, "A_exists = {}", fmt_imatrix(&d.a_exists));
    let _ = writeln!(out, "b_forall = {}", fmt_ivector(&d.b_forall));
    let _ = writeln!(out, "b_exists = {}", fmt_ivector(&d.b_exists));
    let _ = writeln!(out, "Ac = {}", fmt_imatrix(&d.a_char));
    let _ = writeln!(out, "bc = {}", fmt_ivector(&d.b_char));
    let _ = writeln!(out, "As = {}", fmt_rmatrix_signs(&d.a_sign));
    let _ = writeln!(
        out,
        "bs = [{}]",
        d.b_sign.iter().map(|&v| fmt_sign(v)).collect::<Vec<_>>().join(", ")
    );
    let _ = writeln!(
        out,
        "u = [{}]",
        d.u.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
    );
    let _ = writeln!(
        out,
        "v = [{}]",
        d.v.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ")
    );
    let _ = writeln!(out, "w = {}", fmt_ivector(&d.w));
    out
}

/// `info <file>`
pub fn cmd_info(path: &Path) -> Result<u8, CliError> {
    let loaded = load(path)?;
    print!("{}", info_report(&loaded.system));
    Ok(0)
}

/// Parses `x1lo,x1hi,x2lo,x2hi` (decimals or fractions).
pub fn parse_window(text: &str) -> Result<(f64, f64, f64, f64), CliError> {
    let vals = parse_point(text)?;
    if vals.len() != 4 {
        return Err(CliError::Arg(format!(
            "window needs 4 comma-separated bounds, got {}",
            vals.len()
        )));
    }
    Ok((vals[0].value, vals[1].value, vals[2].value, vals[3].value))
}

/// Parses `WxH`.
pub fn parse_resolution(text: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Arg(format!("resolution `{text}` is not of the form WxH"));
    let (w, h) = text.split_once('x').ok_or_else(bad)?;
    let width: usize = w.parse().map_err(|_| bad())?;
    let height: usize = h.parse().map_err(|_| bad())?;
    Ok((width, height))
}

/// `raster <file> --window ... --res WxH --out <path> [--format pgm|csv]`
pub fn cmd_raster(
    path: &Path,
    window: &str,
    res: &str,
    format: RasterFormat,
    out: &Path,
) -> Result<u8, CliError> {
    let loaded = load(path)?;
    let (x1_lo, x1_hi, x2_lo, x2_hi) = parse_window(window)?;
    let (width, height) = parse_resolution(res)?;
    let job = RasterJob {
        x1: (x1_lo, x1_hi),
        x2: (x2_lo, x2_hi),
        width,
        height,
    };
    let grid = classify_grid(&loaded.system, &job)?;
    let text = match format {
        RasterFormat::Pgm => encode_pgm(&grid, width, height),
        RasterFormat::Csv => encode_csv(&grid, &job),
    };
    if out == Path::new("-") {
        print!("{text}");
    } else {
        fs::write(out, text).map_err(|source| CliError::Write {
            path: out.to_path_buf(),
            source,
        })?;
        println!("wrote {} ({width}x{height})", out.display());
    }
    Ok(0)
}

/// One selftest failure: what was being checked, and on which input.
struct SelftestFailure {
    detail: String,
    system: QuantIntervalSystem,
    point: Vec<f64>,
}

impl SelftestFailure {
    fn print(&self) {
        println!("FAIL: {}", self.detail);
        println!(
            "counterexample point: [{}]",
            self.point
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
        println!(
            "counterexample system:\n{}",
            SystemFile::from_system(&self.system).to_json()
        );
    }
}

/// Runs every agreement suite on one sampled system and point.
fn selftest_case(
    sys: &QuantIntervalSystem,
    a_enc: &[qlinset_core::EntryEnclosure],
    b_enc: &[qlinset_core::EntryEnclosure],
    x: &[f64],
) -> Result<Option<String>, CliError> {
    let real = member_real(sys, x)?;
    let kr = member_kr(sys, x)?;
    let ir = member_ir(sys, x)?;
    if kr != real || ir != real {
        return Ok(Some(format!(
            "characterizations disagree: real={}, kr={}, ir={}",
            verdict_word(real.member),
            verdict_word(kr.member),
            verdict_word(ir.member)
        )));
    }
    let oracle = oracle_member(sys, x)?;
    if oracle != real.member {
        return Ok(Some(format!(
            "quantifier oracle says {}, characterizations say {}",
            verdict_word(oracle),
            verdict_word(real.member)
        )));
    }
    let x_enc: Vec<Enclosure> = x.iter().map(|&v| Enclosure::exact(v)).collect();
    let strict = member_strict(sys, a_enc, b_enc, &x_enc)?;
    if strict.decided() != Some(real.member) {
        return Ok(Some(format!(
            "enclosure decider says {strict:?} on exact data, expected {}",
            verdict_word(real.member)
        )));
    }
    Ok(None)
}

/// `selftest [--seed N] [--cases N]`
pub fn cmd_selftest(seed: u64, cases: u64) -> Result<u8, CliError> {
    if cases == 0 {
        println!("warning: 0 cases requested, nothing checked (vacuous pass)");
        return Ok(0);
    }
    println!("selftest: seed {seed}, {cases} cases");
    let mut sampler = SystemSampler::new(seed);
    let mut shuffle_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5e1f7e57);
    let mut points = 0u64;
    let mut reorderings = 0u64;
    for _ in 0..cases {
        let sys = sampler.sample_system();
        let (a_enc, b_enc) = exact_enclosures(&sys);
        for _ in 0..SELFTEST_POINTS {
            let x = sampler.sample_point(sys.n());
            if let Some(detail) = selftest_case(&sys, &a_enc, &b_enc, &x)? {
                SelftestFailure {
                    detail,
                    system: sys,
                    point: x,
                }
                .print();
                return Ok(1);
            }
            points += 1;
        }

        let ineq = sampler.sample_inequality_system();
        let x = sampler.sample_point(ineq.n());
        let stable = oracle_prefix_shuffle_test(&ineq, &x, SELFTEST_SHUFFLES, &mut shuffle_rng)?;
        let recursive = eval_prefix_recursive(&ineq, &x)?;
        let direct = member_real(&ineq, &x)?.member;
        if !stable || recursive != direct {
            SelftestFailure {
                detail: format!(
                    "prefix reordering changed the verdict (stable={stable}, recursive={}, direct={})",
                    verdict_word(recursive),
                    verdict_word(direct)
                ),
                system: ineq,
                point: x,
            }
            .print();
            return Ok(1);
        }
        reorderings += 1;
    }
    println!(
        "ok: {points} points checked by all deciders (real, kr, ir, oracle, enclosure) on {cases} systems"
    );
    println!("ok: {reorderings} inequality systems invariant under prefix reordering");
    Ok(0)
}

/// Convenience used by the binary: run a command described by parsed
/// arguments, returning the exit code.
pub enum Invocation {
    Check {
        file: PathBuf,
        x: String,
        method: CheckMethod,
    },
    Info {
        file: PathBuf,
    },
    Raster {
        file: PathBuf,
        window: String,
        res: String,
        format: RasterFormat,
        out: PathBuf,
    },
    Selftest {
        seed: u64,
        cases: u64,
    },
}

pub fn run(invocation: Invocation) -> Result<u8, CliError> {
    match invocation {
        Invocation::Check { file, x, method } => cmd_check(&file, &x, method),
        Invocation::Info { file } => cmd_info(&file),
        Invocation::Raster {
            file,
            window,
            res,
            format,
            out,
        } => cmd_raster(&file, &window, &res, format, &out),
        Invocation::Selftest { seed, cases } => cmd_selftest(seed, cases),
    }
}
