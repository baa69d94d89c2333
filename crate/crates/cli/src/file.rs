//! JSON system files and exact scalar literals.
//!
//! A system file is a JSON object with keys `m`, `n`, `A` (an `m x n` array
//! of `{"lo", "hi", "q"}` entries), `b` (length `m`, same entry shape),
//! `sigma` (length `m` of `"eq"` / `"ge"` / `"le"`), and an optional
//! `prefix` (a permutation of the one-based parameter names `a_i_j` /
//! `b_i` in quantification order; omitted, the canonical row-major
//! forall-first order applies).
//!
//! Every scalar endpoint is a JSON number (taken verbatim as binary64) or a
//! string holding a decimal (`"0.25"`) or an integer fraction (`"-1/3"`).
//! String literals are parsed exactly: the stored endpoint is the nearest
//! binary64 and a one-ulp enclosure is kept alongside, so that files whose
//! data are not binary-representable can still be decided rigorously by the
//! enclosure mode.  Properness (`lo <= hi`) is checked on the exact
//! rationals, not on their roundings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use qlinset_core::{
    Enclosure, EntryEnclosure, IMatrix, Interval, IVector, ParamRef, PrefixOrder,
    QuantIntervalSystem, Quantifier, RelationSign,
};

use crate::error::CliError;

/// Largest numerator/denominator magnitude a reduced rational may have.
/// Two factors of this size keep the cross-multiplication comparisons
/// inside `i128`.
const VALUE_LIMIT: i128 = 1 << 62;

/// True when the integer is exactly a binary64.  Both halves of a reduced
/// `p/q` must be, so that the division `p/q` is correctly rounded.
fn representable(k: i128) -> bool {
    k.abs() <= VALUE_LIMIT && (k as f64) as i128 == k
}

/// One scalar literal: a JSON number or a decimal/fraction string.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumberLit {
    Number(f64),
    Text(String),
}

impl fmt::Display for NumberLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumberLit::Number(v) => write!(f, "{v}"),
            NumberLit::Text(t) => write!(f, "`{t}`"),
        }
    }
}

/// Quantifier of one entry, as spelled in files.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuantLit {
    Forall,
    Exists,
}

impl From<QuantLit> for Quantifier {
    fn from(q: QuantLit) -> Quantifier {
        match q {
            QuantLit::Forall => Quantifier::ForAll,
            QuantLit::Exists => Quantifier::Exists,
        }
    }
}

impl From<Quantifier> for QuantLit {
    fn from(q: Quantifier) -> QuantLit {
        match q {
            Quantifier::ForAll => QuantLit::Forall,
            Quantifier::Exists => QuantLit::Exists,
        }
    }
}

/// Relation sign of one row, as spelled in files.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaLit {
    Eq,
    Ge,
    Le,
}

impl From<SigmaLit> for RelationSign {
    fn from(s: SigmaLit) -> RelationSign {
        match s {
            SigmaLit::Eq => RelationSign::Eq,
            SigmaLit::Ge => RelationSign::Ge,
            SigmaLit::Le => RelationSign::Le,
        }
    }
}

impl From<RelationSign> for SigmaLit {
    fn from(s: RelationSign) -> SigmaLit {
        match s {
            RelationSign::Eq => SigmaLit::Eq,
            RelationSign::Ge => SigmaLit::Ge,
            RelationSign::Le => SigmaLit::Le,
        }
    }
}

/// One interval parameter: endpoints and quantifier.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryLit {
    pub lo: NumberLit,
    pub hi: NumberLit,
    pub q: QuantLit,
}

/// The on-disk shape of a quantified interval linear system.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<EntryLit>>,
    pub b: Vec<EntryLit>,
    pub sigma: Vec<SigmaLit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefix: Option<Vec<String>>,
}

/// A parsed scalar: the nearest binary64, a guaranteed enclosure of the
/// written rational, and the reduced rational itself for exact comparisons.
#[derive(Clone, Copy, Debug)]
pub struct ParsedScalar {
    /// Nearest binary64 to the written value.
    pub value: f64,
    /// Interval of binary64 bounds containing the written value; a point
    /// exactly when `exact`.
    pub enclosure: Enclosure,
    /// True when `value` equals the written rational.
    pub exact: bool,
    num: i128,
    den: i128,
}

impl ParsedScalar {
    /// Exact `self <= other` on the underlying rationals.
    pub fn le(&self, other: &ParsedScalar) -> bool {
        // Denominators are positive and bounded, so the cross products fit.
        self.num * other.den <= other.num * self.den
    }
}

fn gcd(mut a: i128, mut b: i128) -> i128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.abs()
}

/// Reduces and range-checks a rational with a positive denominator, then
/// rounds it to the nearest binary64.
fn from_rational(num: i128, den: i128, text: &str) -> Result<ParsedScalar, CliError> {
    debug_assert!(den > 0);
    let g = gcd(num, den).max(1);
    let (num, den) = (num / g, den / g);
    if !representable(num) || !representable(den) {
        return Err(CliError::Number(format!(
            "`{text}` (reduced numerator or denominator is not exactly a binary64)"
        )));
    }
    // Both halves are exactly representable, so the division is the
    // correctly rounded quotient.
    let value = num as f64 / den as f64;
    let exact = den & (den - 1) == 0;
    let enclosure = if exact {
        Enclosure::exact(value)
    } else {
        Enclosure::around(value)
    };
    Ok(ParsedScalar {
        value,
        enclosure,
        exact,
        num,
        den,
    })
}

/// Writes a binary64 as a reduced rational, refusing magnitudes or
/// precisions whose rational form would not fit the comparison arithmetic.
fn f64_to_rational(x: f64) -> Option<(i128, i128)> {
    if !x.is_finite() {
        return None;
    }
    if x == 0.0 {
        return Some((0, 1));
    }
    let mut v = x;
    let mut den: i128 = 1;
    while v.fract() != 0.0 {
        if den >= VALUE_LIMIT {
            return None;
        }
        v *= 2.0;
        den *= 2;
    }
    if v.abs() > VALUE_LIMIT as f64 {
        return None;
    }
    let num = v as i128;
    let g = gcd(num, den).max(1);
    Some((num / g, den / g))
}

fn parse_decimal(text: &str) -> Option<(i128, i128)> {
    let (sign, rest) = match text.strip_prefix('-') {
        Some(r) => (-1, r),
        None => (1, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = match rest.split_once('.') {
        Some((i, f)) => (i, f),
        None => (rest, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |s: &str| s.chars().all(|c| c.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let digits: String = int_part.chars().chain(frac_part.chars()).collect();
    let num: i128 = digits.parse().ok()?;
    let den = 10i128.checked_pow(frac_part.len() as u32)?;
    Some((sign * num, den))
}

/// Parses a decimal (`"0.25"`, `"-3"`) or integer fraction (`"1/3"`) into
/// an exactly tracked scalar.
pub fn parse_scalar_text(text: &str) -> Result<ParsedScalar, CliError> {
    let bad = || CliError::Number(format!("`{text}` (expected a decimal or a fraction p/q)"));
    let t = text.trim();
    if let Some((ns, ds)) = t.split_once('/') {
        let num: i128 = ns.trim().parse().map_err(|_| bad())?;
        let den: i128 = ds.trim().parse().map_err(|_| bad())?;
        if den <= 0 {
            return Err(CliError::Number(format!(
                "`{text}` (denominator must be a positive integer)"
            )));
        }
        from_rational(num, den, text)
    } else {
        let (num, den) = parse_decimal(t).ok_or_else(bad)?;
        from_rational(num, den, text)
    }
}

impl NumberLit {
    /// Parses the literal.  Bare JSON numbers denote themselves (always
    /// exact); strings denote the written rational.
    pub fn parse(&self) -> Result<ParsedScalar, CliError> {
        match self {
            NumberLit::Number(v) => {
                let (num, den) = f64_to_rational(*v).ok_or_else(|| {
                    CliError::Number(format!("{v} (magnitude or precision out of range)"))
                })?;
                Ok(ParsedScalar {
                    value: *v,
                    enclosure: Enclosure::exact(*v),
                    exact: true,
                    num,
                    den,
                })
            }
            NumberLit::Text(t) => parse_scalar_text(t),
        }
    }
}

/// A system file converted to the in-memory model, together with the
/// endpoint enclosures the rigorous decider consumes.
pub struct LoadedSystem {
    pub system: QuantIntervalSystem,
    /// Row-major `(lo, hi)` enclosures of the matrix endpoints.
    pub a_enclosures: Vec<EntryEnclosure>,
    pub b_enclosures: Vec<EntryEnclosure>,
    /// True when every written endpoint is exactly a binary64.
    pub all_exact: bool,
}

impl SystemFile {
    pub fn parse(text: &str) -> Result<SystemFile, CliError> {
        serde_json::from_str(text).map_err(Into::into)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("system files always serialize")
    }

    /// Validates the file and converts it to the in-memory model.
    pub fn load(&self) -> Result<LoadedSystem, CliError> {
        if self.a.len() != self.m {
            return Err(CliError::File(format!(
                "A has {} rows, m = {}",
                self.a.len(),
                self.m
            )));
        }
        if let Some(row) = self.a.iter().position(|r| r.len() != self.n) {
            return Err(CliError::File(format!(
                "A row {} has {} entries, n = {}",
                row + 1,
                self.a[row].len(),
                self.n
            )));
        }
        if self.b.len() != self.m {
            return Err(CliError::File(format!(
                "b has {} entries, m = {}",
                self.b.len(),
                self.m
            )));
        }
        if self.sigma.len() != self.m {
            return Err(CliError::File(format!(
                "sigma has {} entries, m = {}",
                self.sigma.len(),
                self.m
            )));
        }

        let mut all_exact = true;
        let mut parse_entry = |e: &EntryLit| -> Result<(Interval, EntryEnclosure), CliError> {
            let lo = e.lo.parse()?;
            let hi = e.hi.parse()?;
            if !lo.le(&hi) {
                return Err(CliError::File(format!(
                    "entry [{}, {}] is improper",
                    e.lo, e.hi
                )));
            }
            all_exact &= lo.exact && hi.exact;
            Ok((Interval::new(lo.value, hi.value), (lo.enclosure, hi.enclosure)))
        };

        let mut a_rows = Vec::with_capacity(self.m);
        let mut a_enclosures = Vec::with_capacity(self.m * self.n);
        let mut quant_a = Vec::with_capacity(self.m * self.n);
        for row in &self.a {
            let mut entries = Vec::with_capacity(self.n);
            for e in row {
                let (interval, enc) = parse_entry(e)?;
                entries.push(interval);
                a_enclosures.push(enc);
                quant_a.push(Quantifier::from(e.q));
            }
            a_rows.push(entries);
        }
        let mut b_entries = Vec::with_capacity(self.m);
        let mut b_enclosures = Vec::with_capacity(self.m);
        let mut quant_b = Vec::with_capacity(self.m);
        for e in &self.b {
            let (interval, enc) = parse_entry(e)?;
            b_entries.push(interval);
            b_enclosures.push(enc);
            quant_b.push(Quantifier::from(e.q));
        }

        let prefix = match &self.prefix {
            None => None,
            Some(names) => {
                let params = names
                    .iter()
                    .map(|s| ParamRef::from_str(s))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(PrefixOrder::new(params, self.m, self.n)?)
            }
        };

        let system = QuantIntervalSystem::new(
            IMatrix::from_rows(a_rows),
            IVector::new(b_entries),
            quant_a,
            quant_b,
            self.sigma.iter().map(|&s| RelationSign::from(s)).collect(),
            prefix,
        )?;
        Ok(LoadedSystem {
            system,
            a_enclosures,
            b_enclosures,
            all_exact,
        })
    }

    /// Writes an in-memory system back to the file shape, with bare binary64
    /// endpoints and the prefix spelled out.
    pub fn from_system(sys: &QuantIntervalSystem) -> SystemFile {
        let entry = |iv: Interval, q: Quantifier| EntryLit {
            lo: NumberLit::Number(iv.lo().value()),
            hi: NumberLit::Number(iv.hi().value()),
            q: q.into(),
        };
        let (m, n) = (sys.m(), sys.n());
        let a = (0..m)
            .map(|i| {
                (0..n)
                    .map(|j| entry(sys.a().get(i, j), sys.quant_a(i, j)))
                    .collect()
            })
            .collect();
        let b = (0..m).map(|i| entry(sys.b().get(i), sys.quant_b(i))).collect();
        SystemFile {
            m,
            n,
            a,
            b,
            sigma: sys.sigma_all().iter().map(|&s| s.into()).collect(),
            prefix: Some(sys.prefix().params().iter().map(|p| p.to_string()).collect()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(text: &str) -> ParsedScalar {
        parse_scalar_text(text).unwrap()
    }

    #[test]
    fn decimal_and_fraction_literals_parse_exactly() {
        let half = scalar("0.5");
        assert_eq!(half.value, 0.5);
        assert!(half.exact);
        assert!(half.enclosure.is_point());

        let third = scalar("1/3");
        assert_eq!(third.value, 1.0 / 3.0);
        assert!(!third.exact);
        assert!(third.enclosure.lo() < third.enclosure.hi());

        let tenth = scalar("0.1");
        assert_eq!(tenth.value, 0.1);
        assert!(!tenth.exact);

        assert_eq!(scalar("-2").value, -2.0);
        assert_eq!(scalar("-1/13").value, -1.0 / 13.0);
        assert_eq!(scalar("+0.25").value, 0.25);
        assert_eq!(scalar("2/4").value, 0.5);
        assert!(scalar("2/4").exact);
    }

    #[test]
    fn bad_literals_are_rejected() {
        for text in ["", "x", "1/0", "1/-2", "1e3", "1.2.3", "--1", "1/2/3"] {
            assert!(
                parse_scalar_text(text).is_err(),
                "`{text}` should be rejected"
            );
        }
        // The denominator 2^53 + 1 is not exactly a binary64.
        assert!(parse_scalar_text("1/9007199254740993").is_err());
        // Bare numbers of extreme magnitude cannot be compared exactly.
        assert!(NumberLit::Number(1e300).parse().is_err());
        assert!(NumberLit::Number(1e-300).parse().is_err());
        assert!(NumberLit::Number(0.1).parse().is_ok());
    }

    #[test]
    fn exact_comparison_orders_rationals_not_roundings() {
        // 0.1 + ulp-scale games: 1/10 < 2/20 + tiny is not expressible, so
        // use two literals whose roundings coincide but whose values differ.
        let a = scalar("6004799503160661/18014398509481984"); // rounds to 1/3's float
        let b = scalar("1/3");
        assert_eq!(a.value, b.value);
        assert!(a.le(&b) && !b.le(&a)); // 6004799503160661/2^54 < 1/3
    }

    #[test]
    fn files_round_trip_and_load() {
        let text = r#"{
            "m": 1, "n": 1,
            "A": [[{"lo": 2, "hi": 4, "q": "exists"}]],
            "b": [{"lo": 2, "hi": 6, "q": "exists"}],
            "sigma": ["eq"]
        }"#;
        let file = SystemFile::parse(text).unwrap();
        let loaded = file.load().unwrap();
        assert!(loaded.all_exact);
        assert_eq!(loaded.system.m(), 1);
        assert_eq!(loaded.system.a().get(0, 0), Interval::new(2.0, 4.0));

        let reprinted = SystemFile::from_system(&loaded.system);
        let reparsed = SystemFile::parse(&reprinted.to_json()).unwrap();
        assert_eq!(reparsed, reprinted);
        assert_eq!(reparsed.load().unwrap().system, loaded.system);
    }

    #[test]
    fn structural_errors_are_reported() {
        let missing_row = r#"{"m": 2, "n": 1,
            "A": [[{"lo": 0, "hi": 1, "q": "forall"}]],
            "b": [{"lo": 0, "hi": 1, "q": "forall"}, {"lo": 0, "hi": 1, "q": "forall"}],
            "sigma": ["eq", "eq"]}"#;
        assert!(matches!(
            SystemFile::parse(missing_row).unwrap().load(),
            Err(CliError::File(_))
        ));

        let improper = r#"{"m": 1, "n": 1,
            "A": [[{"lo": "1/3", "hi": "6004799503160661/18014398509481984", "q": "forall"}]],
            "b": [{"lo": 0, "hi": 1, "q": "forall"}],
            "sigma": ["eq"]}"#;
        // Both endpoints round to the same binary64, but as rationals
        // hi < lo: the exact check must reject this.
        assert!(matches!(
            SystemFile::parse(improper).unwrap().load(),
            Err(CliError::File(_))
        ));

        let unknown_key = r#"{"m": 1, "n": 1, "A": [], "b": [], "sigma": [], "extra": 0}"#;
        assert!(matches!(
            SystemFile::parse(unknown_key),
            Err(CliError::Json(_))
        ));
    }

    #[test]
    fn prefix_names_are_honoured() {
        let text = r#"{
            "m": 1, "n": 1,
            "A": [[{"lo": 1, "hi": 2, "q": "forall"}]],
            "b": [{"lo": 3, "hi": 4, "q": "exists"}],
            "sigma": ["eq"],
            "prefix": ["b_1", "a_1_1"]
        }"#;
        let loaded = SystemFile::parse(text).unwrap().load().unwrap();
        // The exists parameter precedes the forall one on an equality row.
        assert!(!loaded.system.classify_prefix().is_q_sigma);

        let bad = text.replace("b_1", "b_2");
        assert!(SystemFile::parse(&bad).unwrap().load().is_err());
    }
}
