//! Extended real scalars, the endpoint domain of directed intervals.
//!
//! An [`ExtReal`] is a real number or one of the two infinities.  NaN is
//! excluded by every constructor, which makes the ordering total.  The only
//! partial operation is addition: `(+inf) + (-inf)` has no value and is
//! reported as an error.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::Error;

/// An element of the extended real line `R ∪ {-inf, +inf}`.
///
/// Wraps an `f64` that is never NaN (negative zero is normalised to zero so
/// that printing is canonical).
#[derive(Clone, Copy, PartialEq, PartialOrd)]
pub struct ExtReal(f64);

impl ExtReal {
    pub const NEG_INF: ExtReal = ExtReal(f64::NEG_INFINITY);
    pub const POS_INF: ExtReal = ExtReal(f64::INFINITY);
    pub const ZERO: ExtReal = ExtReal(0.0);

    /// Wraps a non-NaN float.
    ///
    /// # Panics
    ///
    /// Panics if `x` is NaN.
    pub fn new(x: f64) -> Self {
        assert!(!x.is_nan(), "ExtReal cannot hold NaN");
        // Normalise -0.0 so equal values have one printed form.
        ExtReal(if x == 0.0 { 0.0 } else { x })
    }

    /// The underlying float (`-inf`/`+inf` for the infinite elements).
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    /// Addition in the extended reals.
    ///
    /// Fails with [`Error::IndeterminateSum`] exactly when the operands are
    /// opposite infinities.
    pub fn try_add(self, other: ExtReal) -> Result<ExtReal, Error> {
        let sum = self.0 + other.0;
        if sum.is_nan() {
            return Err(Error::IndeterminateSum);
        }
        Ok(ExtReal::new(sum))
    }

    /// Subtraction, defined whenever `self + (-other)` is.
    pub fn try_sub(self, other: ExtReal) -> Result<ExtReal, Error> {
        self.try_add(-other)
    }

    /// Multiplication by a finite scalar, with `0 * (±inf)` defined as `0`.
    ///
    /// This is the endpoint rule used by interval scaling, where a zero
    /// multiplier collapses any interval - even an unbounded one - to `[0,0]`.
    ///
    /// # Panics
    ///
    /// Panics if `lambda` is not finite.
    pub fn scale(self, lambda: f64) -> ExtReal {
        assert!(lambda.is_finite(), "scaling factor must be finite");
        if lambda == 0.0 {
            return ExtReal::ZERO;
        }
        ExtReal::new(lambda * self.0)
    }

    pub fn min(self, other: ExtReal) -> ExtReal {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: ExtReal) -> ExtReal {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::new(x)
    }
}

impl Eq for ExtReal {}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        // Total because NaN is unrepresentable.
        self.partial_cmp(other).expect("ExtReal is never NaN")
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;

    fn neg(self) -> ExtReal {
        ExtReal::new(-self.0)
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    /// # Panics
    ///
    /// Panics on `(+inf) + (-inf)`; use [`ExtReal::try_add`] to handle that
    /// case as a value.
    fn add(self, other: ExtReal) -> ExtReal {
        self.try_add(other)
            .expect("indeterminate sum (+inf) + (-inf)")
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;

    fn sub(self, other: ExtReal) -> ExtReal {
        self + (-other)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == f64::INFINITY {
            write!(f, "inf")
        } else if self.0 == f64::NEG_INFINITY {
            write!(f, "-inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_total_with_infinities() {
        assert!(ExtReal::NEG_INF < ExtReal::new(-1.0e300));
        assert!(ExtReal::new(0.0) < ExtReal::POS_INF);
        assert_eq!(ExtReal::new(-0.0), ExtReal::ZERO);
    }

    #[test]
    fn addition_handles_one_sided_infinities() {
        let four = ExtReal::new(4.0);
        assert_eq!(four.try_add(ExtReal::POS_INF), Ok(ExtReal::POS_INF));
        assert_eq!(four.try_add(ExtReal::NEG_INF), Ok(ExtReal::NEG_INF));
        assert_eq!(
            ExtReal::POS_INF.try_add(ExtReal::NEG_INF),
            Err(Error::IndeterminateSum)
        );
        assert_eq!(
            ExtReal::NEG_INF.try_sub(ExtReal::NEG_INF),
            Err(Error::IndeterminateSum)
        );
    }

    #[test]
    #[should_panic(expected = "indeterminate sum")]
    fn operator_add_panics_on_opposite_infinities() {
        let _ = ExtReal::POS_INF + ExtReal::NEG_INF;
    }

    #[test]
    fn zero_times_infinity_is_zero() {
        assert_eq!(ExtReal::POS_INF.scale(0.0), ExtReal::ZERO);
        assert_eq!(ExtReal::NEG_INF.scale(0.0), ExtReal::ZERO);
        assert_eq!(ExtReal::POS_INF.scale(-2.0), ExtReal::NEG_INF);
        assert_eq!(ExtReal::new(3.0).scale(-2.0), ExtReal::new(-6.0));
    }

    #[test]
    fn display_round_trips_dyadic_values() {
        assert_eq!(ExtReal::new(0.5).to_string(), "0.5");
        assert_eq!(ExtReal::new(-3.0).to_string(), "-3");
        assert_eq!(ExtReal::POS_INF.to_string(), "inf");
        assert_eq!(ExtReal::NEG_INF.to_string(), "-inf");
    }
}
