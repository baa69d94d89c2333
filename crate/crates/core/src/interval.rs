//! Directed (Kaucher) intervals.
//!
//! A directed interval `[lo, hi]` does not require `lo <= hi`.  Intervals
//! with `lo <= hi` are called *proper* and behave like classical intervals;
//! intervals with `lo > hi` are *improper*.  Swapping the endpoints (the
//! [`Interval::dual`] map) exchanges the two kinds.  The complete space is an
//! additive group: every interval has an exact opposite, which classical
//! interval arithmetic lacks.
//!
//! Inclusion compares endpoints as written, `u ⊆ v  iff  lo(u) >= lo(v) and
//! hi(u) <= hi(v)`, so an improper interval such as `[6,3]` is contained in
//! the proper `[4,5]`.  Multiplication and division realise the nested
//! min/max extrema of the pointwise products over the proper hulls of the
//! operands (minima for proper operands, maxima for improper ones); they are
//! implemented by a sign-class case table and cross-checked in tests against
//! a direct evaluation of those extrema.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;
use crate::ext_real::ExtReal;

/// A directed interval with extended-real endpoints, in either order.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    lo: ExtReal,
    hi: ExtReal,
}

/// Sign classes used by the multiplication case table.
///
/// Classified by the signs of the endpoints as written: `P` when both are
/// `>= 0`, `N` when both are `<= 0`, `Z` for proper zero-containing
/// intervals (`lo < 0 < hi`), and `DZ` for improper ones whose proper hull
/// contains zero (`lo > 0 > hi`).  Boundary intervals fall in more than one
/// class; the table formulas agree there, so any assignment is fine.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum SignClass {
    P,
    Z,
    N,
    DZ,
}

impl Interval {
    pub const ZERO: Interval = Interval {
        lo: ExtReal::ZERO,
        hi: ExtReal::ZERO,
    };

    /// Builds an interval from finite or infinite float endpoints.
    ///
    /// # Panics
    ///
    /// Panics if either endpoint is NaN.
    pub fn new(lo: f64, hi: f64) -> Self {
        Interval {
            lo: ExtReal::new(lo),
            hi: ExtReal::new(hi),
        }
    }

    pub const fn ext(lo: ExtReal, hi: ExtReal) -> Self {
        Interval { lo, hi }
    }

    /// The degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Self {
        Interval::new(x, x)
    }

    pub fn lo(self) -> ExtReal {
        self.lo
    }

    pub fn hi(self) -> ExtReal {
        self.hi
    }

    /// `true` when `lo <= hi`.
    pub fn is_proper(self) -> bool {
        self.lo <= self.hi
    }

    pub fn is_finite(self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    /// Endpoint swap.  An involution exchanging proper and improper
    /// intervals; it distributes over addition and commutes with scaling.
    pub fn dual(self) -> Interval {
        Interval {
            lo: self.hi,
            hi: self.lo,
        }
    }

    /// The proper hull: `self` if proper, `self.dual()` otherwise.
    pub fn pro(self) -> Interval {
        if self.is_proper() {
            self
        } else {
            self.dual()
        }
    }

    /// Midpoint `(lo + hi) / 2`; defined only for finite endpoints.
    pub fn mid(self) -> Result<f64, Error> {
        if !self.is_finite() {
            return Err(Error::MidRadUndefined);
        }
        Ok((self.lo.value() + self.hi.value()) / 2.0)
    }

    /// Radius `(hi - lo) / 2`; negative for improper intervals.  Defined
    /// only for finite endpoints.
    pub fn rad(self) -> Result<f64, Error> {
        if !self.is_finite() {
            return Err(Error::MidRadUndefined);
        }
        Ok((self.hi.value() - self.lo.value()) / 2.0)
    }

    /// Inclusion by endpoints as written: `lo(self) >= lo(other)` and
    /// `hi(self) <= hi(other)`.
    ///
    /// ```
    /// use qlinset_core::Interval;
    /// assert!(Interval::new(6.0, 3.0).subseteq(Interval::new(4.0, 5.0)));
    /// ```
    pub fn subseteq(self, other: Interval) -> bool {
        self.lo >= other.lo && self.hi <= other.hi
    }

    /// `lo <= x <= hi` with the endpoints as written (for proper intervals
    /// this is ordinary membership; for improper ones it is never true
    /// unless `lo == x == hi`).
    pub fn encloses_value(self, x: f64) -> bool {
        let x = ExtReal::new(x);
        self.lo <= x && x <= self.hi
    }

    /// Least upper bound for `subseteq`: `[min lo, max hi]`.
    ///
    /// # Panics
    ///
    /// Panics on infinite endpoints.
    pub fn join(self, other: Interval) -> Interval {
        assert!(
            self.is_finite() && other.is_finite(),
            "join requires finite endpoints"
        );
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Greatest lower bound for `subseteq`: `[max lo, min hi]`.  May be
    /// improper even for proper operands, e.g. `meet([1,2],[3,4]) = [3,2]`.
    ///
    /// # Panics
    ///
    /// Panics on infinite endpoints.
    pub fn meet(self, other: Interval) -> Interval {
        assert!(
            self.is_finite() && other.is_finite(),
            "meet requires finite endpoints"
        );
        Interval {
            lo: self.lo.max(other.lo),
            hi: self.hi.min(other.hi),
        }
    }

    /// Endpointwise addition, defined unless some endpoint pair sums
    /// opposite infinities.
    pub fn try_add(self, other: Interval) -> Result<Interval, Error> {
        Ok(Interval {
            lo: self.lo.try_add(other.lo)?,
            hi: self.hi.try_add(other.hi)?,
        })
    }

    /// `self + other.neg()`.
    pub fn try_sub(self, other: Interval) -> Result<Interval, Error> {
        self.try_add(-other)
    }

    /// Multiplication by a finite real scalar: `[l*lo, l*hi]` for `l >= 0`,
    /// `[l*hi, l*lo]` for `l < 0`, with `0 * (±inf) = 0`.
    pub fn scale(self, lambda: f64) -> Interval {
        if lambda >= 0.0 {
            Interval {
                lo: self.lo.scale(lambda),
                hi: self.hi.scale(lambda),
            }
        } else {
            Interval {
                lo: self.hi.scale(lambda),
                hi: self.lo.scale(lambda),
            }
        }
    }

    fn sign_class(self) -> SignClass {
        let lo = self.lo.value();
        let hi = self.hi.value();
        if lo >= 0.0 && hi >= 0.0 {
            SignClass::P
        } else if lo <= 0.0 && hi <= 0.0 {
            SignClass::N
        } else if lo <= 0.0 {
            SignClass::Z
        } else {
            SignClass::DZ
        }
    }

    /// Directed multiplication via the sign-class case table.
    ///
    /// # Panics
    ///
    /// Panics on infinite endpoints.
    pub fn mul(self, other: Interval) -> Interval {
        assert!(
            self.is_finite() && other.is_finite(),
            "mul requires finite endpoints"
        );
        use SignClass::*;
        let (a, b) = (self.lo.value(), self.hi.value());
        let (c, d) = (other.lo.value(), other.hi.value());
        let (lo, hi) = match (self.sign_class(), other.sign_class()) {
            (P, P) => (a * c, b * d),
            (P, Z) => (b * c, b * d),
            (P, N) => (b * c, a * d),
            (P, DZ) => (a * c, a * d),
            (Z, P) => (a * d, b * d),
            (Z, Z) => ((a * d).min(b * c), (a * c).max(b * d)),
            (Z, N) => (b * c, a * c),
            (Z, DZ) => (0.0, 0.0),
            (N, P) => (a * d, b * c),
            (N, Z) => (a * d, a * c),
            (N, N) => (b * d, a * c),
            (N, DZ) => (b * d, b * c),
            (DZ, P) => (a * c, b * c),
            (DZ, Z) => (0.0, 0.0),
            (DZ, N) => (b * d, a * d),
            (DZ, DZ) => ((a * c).max(b * d), (a * d).min(b * c)),
        };
        Interval::new(lo, hi)
    }

    /// Directed division: multiplies by the endpoint reciprocal
    /// `recip([c,d]) = [1/d, 1/c]`, which agrees with the classical
    /// reciprocal on proper intervals and commutes with `dual`.
    ///
    /// Fails when the proper hull of `other` contains zero.
    ///
    /// # Panics
    ///
    /// Panics on infinite endpoints.
    pub fn try_div(self, other: Interval) -> Result<Interval, Error> {
        assert!(
            self.is_finite() && other.is_finite(),
            "div requires finite endpoints"
        );
        let hull = other.pro();
        if hull.lo.value() <= 0.0 && 0.0 <= hull.hi.value() {
            return Err(Error::DivisionByZero);
        }
        let recip = Interval::new(1.0 / other.hi.value(), 1.0 / other.lo.value());
        Ok(self.mul(recip))
    }
}

impl Neg for Interval {
    type Output = Interval;

    /// The additive opposite, `(-1) * self = [-hi, -lo]`.
    fn neg(self) -> Interval {
        self.scale(-1.0)
    }
}

impl Add for Interval {
    type Output = Interval;

    /// # Panics
    ///
    /// Panics when an endpoint pair sums opposite infinities; use
    /// [`Interval::try_add`] to handle that case as a value.
    fn add(self, other: Interval) -> Interval {
        self.try_add(other)
            .expect("indeterminate sum (+inf) + (-inf)")
    }
}

impl Sub for Interval {
    type Output = Interval;

    fn sub(self, other: Interval) -> Interval {
        self + (-other)
    }
}

impl Mul for Interval {
    type Output = Interval;

    fn mul(self, other: Interval) -> Interval {
        Interval::mul(self, other)
    }
}

impl Div for Interval {
    type Output = Interval;

    /// # Panics
    ///
    /// Panics when the proper hull of `other` contains zero; use
    /// [`Interval::try_div`] to handle that case as a value.
    fn div(self, other: Interval) -> Interval {
        self.try_div(other)
            .expect("division by an interval whose proper hull contains zero")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `"[lo,hi]"` where each endpoint is a float literal or one of
    /// the tokens `inf`, `+inf`, `-inf`.  Round-trips with `Display`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let err = || Error::ParseInterval(s.to_string());
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(err)?;
        let (lo, hi) = body.split_once(',').ok_or_else(err)?;
        let parse = |tok: &str| -> Result<ExtReal, Error> {
            match tok.trim() {
                "inf" | "+inf" => Ok(ExtReal::POS_INF),
                "-inf" => Ok(ExtReal::NEG_INF),
                t => t
                    .parse::<f64>()
                    .ok()
                    .filter(|x| !x.is_nan())
                    .map(ExtReal::new)
                    .ok_or_else(err),
            }
        };
        Ok(Interval {
            lo: parse(lo)?,
            hi: parse(hi)?,
        })
    }
}

/// A classical interval: endpoints in order (`lo <= hi`), possibly infinite.
///
/// Constructed by validation from a directed interval; used wherever the
/// classical space is meant, e.g. the entries of a quantified system.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct ProperInterval(Interval);

impl ProperInterval {
    /// Validates `lo <= hi`.
    pub fn new(lo: f64, hi: f64) -> Result<Self, Error> {
        Self::try_from(Interval::new(lo, hi))
    }

    pub fn as_interval(self) -> Interval {
        self.0
    }

    pub fn lo(self) -> ExtReal {
        self.0.lo()
    }

    pub fn hi(self) -> ExtReal {
        self.0.hi()
    }
}

impl TryFrom<Interval> for ProperInterval {
    type Error = Error;

    fn try_from(u: Interval) -> Result<Self, Error> {
        if u.is_proper() {
            Ok(ProperInterval(u))
        } else {
            Err(Error::ImproperInterval {
                lo: u.lo().value(),
                hi: u.hi().value(),
            })
        }
    }
}

impl From<ProperInterval> for Interval {
    fn from(u: ProperInterval) -> Interval {
        u.0
    }
}

impl fmt::Display for ProperInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for ProperInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
