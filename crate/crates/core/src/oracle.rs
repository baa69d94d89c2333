//! Brute-force ground truth for the quantified membership predicate.
//!
//! This module evaluates `Q(A, b) (Ax sigma b)` directly from the
//! quantifier semantics — conditional minima for `forall`, maxima for
//! `exists` — without touching interval arithmetic or any of the derived
//! characterizations, so it can serve as an independent referee for the
//! `membership` module.
//!
//! Two facts keep the brute force exact:
//!
//! * For an inequality row the residual is affine in each parameter with a
//!   sign-fixed coefficient, so each conditional extremum is attained at an
//!   interval endpoint and the row verdict is independent of prefix order.
//! * For an equation row with a forall-before-exists (AE) prefix, the
//!   residual is affine in each universal parameter, so it suffices to
//!   check the existential range condition at the `2^k` corners of the
//!   universal box.
//!
//! [`eval_prefix_recursive`] additionally realizes the quantifier prefix
//! literally, endpoint by endpoint in prefix order, for inequality-only
//! systems; [`oracle_prefix_shuffle_test`] uses it to confirm that the
//! verdict does not depend on the order of the elementary prefixes.
//!
//! Everything here is deliberately exponential and guarded by size limits:
//! it exists for desk-scale verification, not production queries.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Error;
use crate::system::{ParamRef, Quantifier, QuantIntervalSystem, RelationSign};

/// Largest system the corner-enumerating oracle accepts.
pub const ORACLE_MAX_ROWS: usize = 6;
pub const ORACLE_MAX_COLS: usize = 6;

/// Largest parameter count (`m * (n + 1)`) the prefix recursion accepts.
pub const RECURSION_MAX_PARAMS: usize = 16;

/// Extremum of `c * t` over `t` in `[lo, hi]`: the minimum sits at `lo`
/// when `c >= 0` and at `hi` otherwise; the maximum mirrors that.
fn extreme_term(c: f64, lo: f64, hi: f64, minimize: bool) -> f64 {
    if (c >= 0.0) == minimize {
        c * lo
    } else {
        c * hi
    }
}

fn wants_min(q: Quantifier) -> bool {
    q == Quantifier::ForAll
}

/// Ground-truth verdict for one inequality row by direct conditional
/// extrema: `forall` parameters get the residual-minimizing endpoint,
/// `exists` parameters the maximizing one, term by term.  The result does
/// not depend on the prefix order.
///
/// # Panics
///
/// Panics if row `i` is an equation or `x` has the wrong length.
pub fn oracle_row_ineq(sys: &QuantIntervalSystem, i: usize, x: &[f64]) -> bool {
    assert_ne!(sys.sigma(i), RelationSign::Eq, "inequality row expected");
    assert_eq!(x.len(), sys.n(), "point dimension mismatch");
    // Normalize to "residual >= 0": for a GE row the residual is
    // sum_j a_ij x_j - b_i, for a LE row it is b_i - sum_j a_ij x_j.
    let flip = if sys.sigma(i) == RelationSign::Ge { 1.0 } else { -1.0 };
    let mut residual = 0.0;
    for j in 0..sys.n() {
        let e = sys.a().get(i, j);
        residual += extreme_term(
            flip * x[j],
            e.lo().value(),
            e.hi().value(),
            wants_min(sys.quant_a(i, j)),
        );
    }
    let b = sys.b().get(i);
    residual += extreme_term(
        -flip,
        b.lo().value(),
        b.hi().value(),
        wants_min(sys.quant_b(i)),
    );
    residual >= 0.0
}

/// Ground-truth verdict for one equation row whose prefix is AE within the
/// row.  Enumerates every corner of the universal parameters; at each
/// corner the existential parameters must be able to balance the equation,
/// which reduces to a range test `g_min <= r <= g_max` where `[g_min,
/// g_max]` is the exact range of the existential side (per-term endpoint
/// selection) and `r` the corner's residual.
///
/// # Panics
///
/// Panics if row `i` is not an equation or `x` has the wrong length.
pub fn oracle_row_eq(sys: &QuantIntervalSystem, i: usize, x: &[f64]) -> Result<bool, Error> {
    assert_eq!(sys.sigma(i), RelationSign::Eq, "equation row expected");
    assert_eq!(x.len(), sys.n(), "point dimension mismatch");
    if !row_is_ae(sys, i) {
        return Err(Error::EqRowNotAe { row: i });
    }
    // Split the equation sum_j a_ij x_j = b_i into a fixed part (universal
    // parameters, evaluated at a corner) and a movable part (existential
    // parameters): movable covers [g_min, g_max] and must reach r.
    let mut forall_params = Vec::new();
    let mut g_min = 0.0;
    let mut g_max = 0.0;
    for j in 0..sys.n() {
        let p = ParamRef::A { row: i, col: j };
        match sys.quant_a(i, j) {
            Quantifier::ForAll => forall_params.push(p),
            Quantifier::Exists => {
                let e = sys.a().get(i, j);
                g_min += extreme_term(x[j], e.lo().value(), e.hi().value(), true);
                g_max += extreme_term(x[j], e.lo().value(), e.hi().value(), false);
            }
        }
    }
    let b_param = ParamRef::B { row: i };
    match sys.quant_b(i) {
        Quantifier::ForAll => forall_params.push(b_param),
        Quantifier::Exists => {
            let b = sys.b().get(i);
            g_min += extreme_term(-1.0, b.lo().value(), b.hi().value(), true);
            g_max += extreme_term(-1.0, b.lo().value(), b.hi().value(), false);
        }
    }
    let k = forall_params.len();
    for corner in 0u32..(1 << k) {
        // r = (b if universal) - (universal part of Ax); the movable side
        // must satisfy g + r' = 0 ... written as g_min <= r <= g_max with
        // r the negated fixed contribution.
        let mut r = 0.0;
        for (idx, &p) in forall_params.iter().enumerate() {
            let interval = sys.interval_of(p);
            let v = if corner & (1 << idx) == 0 {
                interval.lo().value()
            } else {
                interval.hi().value()
            };
            r += match p {
                ParamRef::A { col, .. } => -v * x[col],
                ParamRef::B { .. } => v,
            };
        }
        if !(g_min <= r && r <= g_max) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff, in the system's prefix restricted to row `i`, no existential
/// parameter precedes a universal one.
fn row_is_ae(sys: &QuantIntervalSystem, i: usize) -> bool {
    let mut seen_exists = false;
    for &p in sys.prefix().params() {
        if p.row() != i {
            continue;
        }
        match sys.quant_of(p) {
            Quantifier::Exists => seen_exists = true,
            Quantifier::ForAll => {
                if seen_exists {
                    return false;
                }
            }
        }
    }
    true
}

/// Ground-truth membership verdict: the conjunction of the per-row oracles.
///
/// Refuses systems with more than [`ORACLE_MAX_ROWS`] rows or
/// [`ORACLE_MAX_COLS`] columns — the corner enumeration is exponential and
/// exists only to referee the fast characterizations on small systems.
pub fn oracle_member(sys: &QuantIntervalSystem, x: &[f64]) -> Result<bool, Error> {
    if sys.m() > ORACLE_MAX_ROWS || sys.n() > ORACLE_MAX_COLS {
        return Err(Error::OracleTooLarge {
            m: sys.m(),
            n: sys.n(),
            max_m: ORACLE_MAX_ROWS,
            max_n: ORACLE_MAX_COLS,
        });
    }
    if x.len() != sys.n() {
        return Err(Error::PointDimension {
            got: x.len(),
            expected: sys.n(),
        });
    }
    for i in 0..sys.m() {
        let row_ok = match sys.sigma(i) {
            RelationSign::Eq => oracle_row_eq(sys, i, x)?,
            _ => oracle_row_ineq(sys, i, x),
        };
        if !row_ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Evaluates the quantified predicate by literal endpoint recursion in
/// prefix order: a `forall` parameter must succeed at both endpoints of
/// its interval, an `exists` parameter at one.  Exact for inequality-only
/// systems: every row residual is affine in each parameter with a
/// sign-fixed coefficient, so each partially quantified truth set is a
/// closed ray and endpoint checks decide it.
///
/// Refuses equation rows (a point target defeats endpoint reasoning) and
/// systems with more than [`RECURSION_MAX_PARAMS`] parameters.
pub fn eval_prefix_recursive(sys: &QuantIntervalSystem, x: &[f64]) -> Result<bool, Error> {
    if let Some(row) = sys.sigma_all().iter().position(|&s| s == RelationSign::Eq) {
        return Err(Error::EqualityRowInRecursion { row });
    }
    let total = sys.m() * (sys.n() + 1);
    if total > RECURSION_MAX_PARAMS {
        return Err(Error::TooManyParameters {
            got: total,
            max: RECURSION_MAX_PARAMS,
        });
    }
    if x.len() != sys.n() {
        return Err(Error::PointDimension {
            got: x.len(),
            expected: sys.n(),
        });
    }
    let mut a_vals = vec![0.0; sys.m() * sys.n()];
    let mut b_vals = vec![0.0; sys.m()];
    Ok(recurse(sys, x, 0, &mut a_vals, &mut b_vals))
}

fn recurse(
    sys: &QuantIntervalSystem,
    x: &[f64],
    depth: usize,
    a_vals: &mut [f64],
    b_vals: &mut [f64],
) -> bool {
    let params = sys.prefix().params();
    if depth == params.len() {
        return (0..sys.m()).all(|i| {
            let lhs: f64 = (0..sys.n()).map(|j| a_vals[i * sys.n() + j] * x[j]).sum();
            match sys.sigma(i) {
                RelationSign::Ge => lhs >= b_vals[i],
                RelationSign::Le => lhs <= b_vals[i],
                RelationSign::Eq => unreachable!("equation rows are rejected upfront"),
            }
        });
    }
    let p = params[depth];
    let interval = sys.interval_of(p);
    let eval_at = |v: f64, a_vals: &mut [f64], b_vals: &mut [f64]| {
        match p {
            ParamRef::A { row, col } => a_vals[row * sys.n() + col] = v,
            ParamRef::B { row } => b_vals[row] = v,
        }
        recurse(sys, x, depth + 1, a_vals, b_vals)
    };
    let at_lo = eval_at(interval.lo().value(), a_vals, b_vals);
    match sys.quant_of(p) {
        Quantifier::ForAll if !at_lo => false,
        Quantifier::Exists if at_lo => true,
        _ => eval_at(interval.hi().value(), a_vals, b_vals),
    }
}

/// Checks that [`eval_prefix_recursive`] returns the same verdict under
/// `trials` random permutations of the quantifier prefix as under the
/// given one.  `Ok(true)` means every permutation agreed.
pub fn oracle_prefix_shuffle_test(
    sys: &QuantIntervalSystem,
    x: &[f64],
    trials: usize,
    rng: &mut impl Rng,
) -> Result<bool, Error> {
    let baseline = eval_prefix_recursive(sys, x)?;
    let mut params = sys.prefix().params().to_vec();
    for _ in 0..trials {
        params.shuffle(rng);
        let shuffled = sys.with_prefix(crate::system::PrefixOrder::new(
            params.clone(),
            sys.m(),
            sys.n(),
        )?)?;
        if eval_prefix_recursive(&shuffled, x)? != baseline {
            return Ok(false);
        }
    }
    Ok(true)
}
