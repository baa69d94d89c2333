//! Interval linear systems with quantified parameters.
//!
//! A system couples an interval matrix `A` and right-hand side `b` with a
//! quantifier (`forall` / `exists`) for every interval parameter, a relation
//! sign per row (`=`, `>=`, `<=`), and an explicit *prefix*: the order in
//! which the quantifiers are applied.  Since every parameter occurs in
//! exactly one row, only the relative order of quantifiers inside a row can
//! matter; the membership deciders require the class `Q^sigma`, where each
//! equality row lists its universal parameters before its existential ones
//! (inequality rows are order-insensitive).
//!
//! [`QuantIntervalSystem::build_derived`] produces the forms the
//! quantifier-free characterizations consume: the universal/existential
//! splits of `A` and `b`, the characteristic matrix and vector (universal
//! entries kept, existential ones dualized in `A`; the opposite convention
//! in `b`), the `±1` sign patterns, and the relation slack vectors.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::ext_real::ExtReal;
use crate::interval::{Interval, ProperInterval};
use crate::linalg::{IMatrix, IVector, RMatrix};

/// Quantifier attached to one interval parameter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Quantifier {
    ForAll,
    Exists,
}

/// Relation sign of one row of the system.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RelationSign {
    Eq,
    Ge,
    Le,
}

/// Reference to one interval parameter: a matrix entry or a right-hand side
/// component.  Indices are zero-based; the text form (`a_1_2`, `b_1`) is
/// one-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParamRef {
    A { row: usize, col: usize },
    B { row: usize },
}

impl ParamRef {
    pub fn row(self) -> usize {
        match self {
            ParamRef::A { row, .. } | ParamRef::B { row } => row,
        }
    }
}

impl fmt::Display for ParamRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamRef::A { row, col } => write!(f, "a_{}_{}", row + 1, col + 1),
            ParamRef::B { row } => write!(f, "b_{}", row + 1),
        }
    }
}

impl FromStr for ParamRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::InvalidSystem(format!("bad parameter name `{s}`"));
        let one_based = |tok: &str| tok.parse::<usize>().ok().filter(|&k| k >= 1).ok_or_else(err);
        if let Some(rest) = s.strip_prefix("a_") {
            let (i, j) = rest.split_once('_').ok_or_else(err)?;
            Ok(ParamRef::A {
                row: one_based(i)? - 1,
                col: one_based(j)? - 1,
            })
        } else if let Some(rest) = s.strip_prefix("b_") {
            Ok(ParamRef::B {
                row: one_based(rest)? - 1,
            })
        } else {
            Err(err())
        }
    }
}

/// The quantification order: a permutation of all `m(n+1)` parameters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PrefixOrder(Vec<ParamRef>);

impl PrefixOrder {
    /// Wraps an ordering after checking it is a permutation of the
    /// parameters of an `m x n` system.
    pub fn new(params: Vec<ParamRef>, m: usize, n: usize) -> Result<Self, Error> {
        let expected = m * (n + 1);
        if params.len() != expected {
            return Err(Error::InvalidSystem(format!(
                "prefix lists {} parameters, expected {expected}",
                params.len()
            )));
        }
        let mut seen = vec![false; expected];
        for &p in &params {
            let idx = match p {
                ParamRef::A { row, col } if row < m && col < n => row * n + col,
                ParamRef::B { row } if row < m => m * n + row,
                _ => {
                    return Err(Error::InvalidSystem(format!(
                        "prefix references {p} outside a {m}x{n} system"
                    )))
                }
            };
            if seen[idx] {
                return Err(Error::InvalidSystem(format!("prefix repeats {p}")));
            }
            seen[idx] = true;
        }
        Ok(PrefixOrder(params))
    }

    pub fn params(&self) -> &[ParamRef] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Where a prefix sits relative to the named quantifier classes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrefixClass {
    /// All universal quantifiers precede all existential ones globally.
    pub is_ae: bool,
    /// Within every row's sub-prefix, universal precede existential.
    pub is_rowwise_ae: bool,
    /// Rowwise-AE holds on every equality row (inequality rows are free).
    pub is_q_sigma: bool,
}

/// The canonical prefix: row-major, and inside each row all universal
/// parameters first (matrix entries by column, then the right-hand side),
/// followed by the existential ones in the same internal order.  Always
/// rowwise-AE, hence in `Q^sigma`.
pub fn default_prefix(
    m: usize,
    n: usize,
    quant_a: &[Quantifier],
    quant_b: &[Quantifier],
) -> PrefixOrder {
    assert_eq!(quant_a.len(), m * n);
    assert_eq!(quant_b.len(), m);
    let mut params = Vec::with_capacity(m * (n + 1));
    for i in 0..m {
        for &wanted in &[Quantifier::ForAll, Quantifier::Exists] {
            for j in 0..n {
                if quant_a[i * n + j] == wanted {
                    params.push(ParamRef::A { row: i, col: j });
                }
            }
            if quant_b[i] == wanted {
                params.push(ParamRef::B { row: i });
            }
        }
    }
    PrefixOrder(params)
}

/// An interval linear system `A x sigma b` with quantified parameters and an
/// explicit prefix order.  Entries are proper and finite.
#[derive(Clone, PartialEq, Debug)]
pub struct QuantIntervalSystem {
    a: IMatrix,
    b: IVector,
    quant_a: Vec<Quantifier>,
    quant_b: Vec<Quantifier>,
    sigma: Vec<RelationSign>,
    prefix: PrefixOrder,
}

impl QuantIntervalSystem {
    /// Validates and builds a system.  `prefix = None` selects
    /// [`default_prefix`].
    pub fn new(
        a: IMatrix,
        b: IVector,
        quant_a: Vec<Quantifier>,
        quant_b: Vec<Quantifier>,
        sigma: Vec<RelationSign>,
        prefix: Option<PrefixOrder>,
    ) -> Result<Self, Error> {
        let (m, n) = (a.rows(), a.cols());
        if m == 0 || n == 0 {
            return Err(Error::InvalidSystem("m and n must be at least 1".into()));
        }
        if b.len() != m || sigma.len() != m || quant_b.len() != m || quant_a.len() != m * n {
            return Err(Error::InvalidSystem(format!(
                "inconsistent dimensions for a {m}x{n} system"
            )));
        }
        for entry in a.entries().iter().chain(b.iter().collect::<Vec<_>>().iter()) {
            if !entry.is_finite() {
                return Err(Error::InvalidSystem(format!(
                    "entry {entry} is not finite"
                )));
            }
            ProperInterval::try_from(*entry)
                .map_err(|_| Error::InvalidSystem(format!("entry {entry} is improper")))?;
        }
        let prefix = match prefix {
            Some(p) => PrefixOrder::new(p.0, m, n)?,
            None => default_prefix(m, n, &quant_a, &quant_b),
        };
        Ok(QuantIntervalSystem {
            a,
            b,
            quant_a,
            quant_b,
            sigma,
            prefix,
        })
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }

    pub fn n(&self) -> usize {
        self.a.cols()
    }

    pub fn a(&self) -> &IMatrix {
        &self.a
    }

    pub fn b(&self) -> &IVector {
        &self.b
    }

    pub fn quant_a(&self, i: usize, j: usize) -> Quantifier {
        self.quant_a[i * self.n() + j]
    }

    pub fn quant_b(&self, i: usize) -> Quantifier {
        self.quant_b[i]
    }

    pub fn sigma(&self, i: usize) -> RelationSign {
        self.sigma[i]
    }

    pub fn sigma_all(&self) -> &[RelationSign] {
        &self.sigma
    }

    pub fn prefix(&self) -> &PrefixOrder {
        &self.prefix
    }

    /// Quantifier of an arbitrary parameter.
    pub fn quant_of(&self, p: ParamRef) -> Quantifier {
        match p {
            ParamRef::A { row, col } => self.quant_a(row, col),
            ParamRef::B { row } => self.quant_b(row),
        }
    }

    /// Interval of an arbitrary parameter.
    pub fn interval_of(&self, p: ParamRef) -> Interval {
        match p {
            ParamRef::A { row, col } => self.a.get(row, col),
            ParamRef::B { row } => self.b.get(row),
        }
    }

    /// The same system with a different prefix.
    pub fn with_prefix(&self, prefix: PrefixOrder) -> Result<Self, Error> {
        let mut sys = self.clone();
        sys.prefix = PrefixOrder::new(prefix.0, self.m(), self.n())?;
        Ok(sys)
    }

    /// The same system with different relation signs.
    pub fn with_sigma(&self, sigma: Vec<RelationSign>) -> Result<Self, Error> {
        if sigma.len() != self.m() {
            return Err(Error::InvalidSystem(format!(
                "sigma lists {} rows, expected {}",
                sigma.len(),
                self.m()
            )));
        }
        let mut sys = self.clone();
        sys.sigma = sigma;
        Ok(sys)
    }

    /// Classifies the prefix against the named quantifier classes.
    pub fn classify_prefix(&self) -> PrefixClass {
        let globally_ae = self.block_ae(self.prefix.params());
        let mut rowwise = true;
        let mut q_sigma = true;
        for i in 0..self.m() {
            let row_params: Vec<ParamRef> = self
                .prefix
                .params()
                .iter()
                .copied()
                .filter(|p| p.row() == i)
                .collect();
            let row_ae = self.block_ae(&row_params);
            rowwise &= row_ae;
            if self.sigma[i] == RelationSign::Eq {
                q_sigma &= row_ae;
            }
        }
        PrefixClass {
            is_ae: globally_ae,
            is_rowwise_ae: rowwise,
            is_q_sigma: q_sigma,
        }
    }

    /// True when no existential parameter precedes a universal one in the
    /// given subsequence.
    fn block_ae(&self, params: &[ParamRef]) -> bool {
        let mut seen_exists = false;
        for &p in params {
            match self.quant_of(p) {
                Quantifier::Exists => seen_exists = true,
                Quantifier::ForAll if seen_exists => return false,
                Quantifier::ForAll => {}
            }
        }
        true
    }

    /// First equality row whose sub-prefix is not AE, if any.
    pub fn first_non_ae_eq_row(&self) -> Option<usize> {
        (0..self.m()).find(|&i| {
            self.sigma[i] == RelationSign::Eq && {
                let row_params: Vec<ParamRef> = self
                    .prefix
                    .params()
                    .iter()
                    .copied()
                    .filter(|p| p.row() == i)
                    .collect();
                !self.block_ae(&row_params)
            }
        })
    }

    /// The system `(-A) x sigma (-b)` with unchanged quantifiers, relations
    /// and prefix.
    pub fn negate(&self) -> QuantIntervalSystem {
        QuantIntervalSystem {
            a: self.a.neg(),
            b: self.b.neg(),
            quant_a: self.quant_a.clone(),
            quant_b: self.quant_b.clone(),
            sigma: self.sigma.clone(),
            prefix: self.prefix.clone(),
        }
    }

    /// Builds every derived form the membership characterizations use.
    pub fn build_derived(&self) -> DerivedForms {
        let (m, n) = (self.m(), self.n());
        let mut a_forall = IMatrix::zero(m, n);
        let mut a_exists = IMatrix::zero(m, n);
        let mut a_char = IMatrix::zero(m, n);
        let mut a_sign = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                let entry = self.a.get(i, j);
                match self.quant_a(i, j) {
                    Quantifier::ForAll => {
                        a_forall.set(i, j, entry);
                        a_char.set(i, j, entry);
                        a_sign.push(-1.0);
                    }
                    Quantifier::Exists => {
                        a_exists.set(i, j, entry);
                        a_char.set(i, j, entry.dual());
                        a_sign.push(1.0);
                    }
                }
            }
        }
        let mut b_forall = IVector::zero(m);
        let mut b_exists = IVector::zero(m);
        let mut b_char = IVector::zero(m);
        let mut b_sign = Vec::with_capacity(m);
        for i in 0..m {
            let entry = self.b.get(i);
            match self.quant_b(i) {
                Quantifier::ForAll => {
                    b_forall.set(i, entry);
                    b_char.set(i, entry.dual());
                    b_sign.push(-1.0);
                }
                Quantifier::Exists => {
                    b_exists.set(i, entry);
                    b_char.set(i, entry);
                    b_sign.push(1.0);
                }
            }
        }
        let mut u = Vec::with_capacity(m);
        let mut v = Vec::with_capacity(m);
        let mut w = IVector::zero(m);
        for i in 0..m {
            match self.sigma[i] {
                RelationSign::Eq => {
                    u.push(ExtReal::ZERO);
                    v.push(ExtReal::ZERO);
                    w.set(i, Interval::ZERO);
                }
                RelationSign::Ge => {
                    u.push(ExtReal::ZERO);
                    v.push(ExtReal::POS_INF);
                    w.set(i, Interval::ext(ExtReal::ZERO, ExtReal::POS_INF));
                }
                RelationSign::Le => {
                    u.push(ExtReal::NEG_INF);
                    v.push(ExtReal::ZERO);
                    w.set(i, Interval::ext(ExtReal::NEG_INF, ExtReal::ZERO));
                }
            }
        }
        DerivedForms {
            a_forall,
            a_exists,
            b_forall,
            b_exists,
            a_char,
            b_char,
            a_sign: RMatrix::new(m, n, a_sign),
            b_sign,
            u,
            v,
            w,
        }
    }
}

/// All derived forms of a system, built by
/// [`QuantIntervalSystem::build_derived`].
///
/// The split parts reconstruct the data (`a_forall + a_exists = A`
/// entrywise, complementary entries being `[0,0]`).  The characteristic
/// matrix keeps universal entries and dualizes existential ones; the
/// characteristic vector does the opposite.  Sign patterns encode `exists`
/// as `+1` and `forall` as `-1`.  The slack scalars `u`, `v` and slack
/// intervals `w` fold the row relation into one two-sided form: zero for
/// `=`, one-sidedly infinite for `>=` / `<=`.
#[derive(Clone, PartialEq, Debug)]
pub struct DerivedForms {
    pub a_forall: IMatrix,
    pub a_exists: IMatrix,
    pub b_forall: IVector,
    pub b_exists: IVector,
    pub a_char: IMatrix,
    pub b_char: IVector,
    pub a_sign: RMatrix,
    pub b_sign: Vec<f64>,
    pub u: Vec<ExtReal>,
    pub v: Vec<ExtReal>,
    pub w: IVector,
}
