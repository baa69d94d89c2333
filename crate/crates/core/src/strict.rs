//! Rigorous three-valued membership for inexactly representable data.
//!
//! The plain membership tests assume every scalar is an exact binary
//! floating-point number, which holds for the small-integer and dyadic data
//! this tool is normally fed.  When inputs are general rationals (`1/3`),
//! their nearest-`f64` approximations silently perturb the system.  This
//! module reruns the directed-interval test with every scalar replaced by a
//! tiny [`Enclosure`] of its exact value, all arithmetic outward rounded,
//! and returns a three-valued [`StrictVerdict`]: `Member` / `NonMember` only
//! when the verdict is certain for *every* real the enclosures admit,
//! `Uncertain` otherwise.
//!
//! Outward rounding is error-compensated rather than blanket 1-ulp nudging:
//! an addition widens only if its two-sum residue shows the rounded sum is
//! on the wrong side, a product only if `fma(a, b, -a*b)` does.  Exact
//! operations therefore stay exact, so on fully dyadic data the strict path
//! reproduces the plain verdict bit for bit, boundary cases included.

use crate::error::Error;
use crate::system::{QuantIntervalSystem, Quantifier, RelationSign};

/// `s + err` is exactly `a + b` (Knuth's two-sum; `err` may be non-finite
/// when the sum overflows, which the callers treat as "widen").
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    let aa = s - bb;
    (a - aa) + (b - bb)
}

fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if two_sum_err(a, b, s) >= 0.0 {
        s
    } else {
        s.next_down()
    }
}

fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if two_sum_err(a, b, s) <= 0.0 {
        s
    } else {
        s.next_up()
    }
}

fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if a.mul_add(b, -p) >= 0.0 {
        p
    } else {
        p.next_down()
    }
}

fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if a.mul_add(b, -p) <= 0.0 {
        p
    } else {
        p.next_up()
    }
}

/// A closed range `[lo, hi]` guaranteed to contain one exact real scalar.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Enclosure {
    lo: f64,
    hi: f64,
}

impl Enclosure {
    /// A scalar known exactly (dyadic data).
    pub fn exact(v: f64) -> Self {
        assert!(!v.is_nan(), "enclosure of NaN");
        Enclosure { lo: v, hi: v }
    }

    /// The 1-ulp band around a nearest-`f64` approximation of a real that
    /// is not exactly representable.
    pub fn around(v: f64) -> Self {
        assert!(v.is_finite(), "enclosure around a non-finite approximation");
        Enclosure {
            lo: v.next_down(),
            hi: v.next_up(),
        }
    }

    pub fn from_bounds(lo: f64, hi: f64) -> Self {
        assert!(!lo.is_nan() && !hi.is_nan() && lo <= hi, "invalid enclosure");
        Enclosure { lo, hi }
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn is_point(self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn neg(self) -> Self {
        Enclosure {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn add(self, other: Self) -> Self {
        Enclosure {
            lo: add_down(self.lo, other.lo),
            hi: add_up(self.hi, other.hi),
        }
    }

    pub fn sub(self, other: Self) -> Self {
        self.add(other.neg())
    }

    pub fn mul(self, other: Self) -> Self {
        let corners = [
            (self.lo, other.lo),
            (self.lo, other.hi),
            (self.hi, other.lo),
            (self.hi, other.hi),
        ];
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (a, b) in corners {
            lo = lo.min(mul_down(a, b));
            hi = hi.max(mul_up(a, b));
        }
        Enclosure { lo, hi }
    }

    fn hull(self, other: Self) -> Self {
        Enclosure {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }
}

/// Verdict of a rigorous membership query.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StrictVerdict {
    /// Every real admitted by the enclosures is a member.
    Member,
    /// Every real admitted by the enclosures is a non-member.
    NonMember,
    /// The enclosures straddle the decision boundary.
    Uncertain,
}

/// Endpoint enclosures of one interval entry: `(lo endpoint, hi endpoint)`.
pub type EntryEnclosure = (Enclosure, Enclosure);

/// Exact endpoint enclosures for a system whose data is fully dyadic.
pub fn exact_enclosures(sys: &QuantIntervalSystem) -> (Vec<EntryEnclosure>, Vec<EntryEnclosure>) {
    let a = sys
        .a()
        .entries()
        .iter()
        .map(|e| (Enclosure::exact(e.lo().value()), Enclosure::exact(e.hi().value())))
        .collect();
    let b = sys
        .b()
        .iter()
        .map(|e| (Enclosure::exact(e.lo().value()), Enclosure::exact(e.hi().value())))
        .collect();
    (a, b)
}

/// Endpoints of the directed scaling of an entry by a scalar enclosed in
/// `x`: for `x >= 0` the result is `[x*lo, x*hi]`, for `x < 0` it is
/// `[x*hi, x*lo]`, so a sign-straddling `x` contributes the hull of both
/// regimes (which share the zero product).
fn scale_enclosed(lo: Enclosure, hi: Enclosure, x: Enclosure) -> EntryEnclosure {
    if x.lo >= 0.0 {
        (lo.mul(x), hi.mul(x))
    } else if x.hi <= 0.0 {
        (hi.mul(x), lo.mul(x))
    } else {
        let neg = Enclosure::from_bounds(x.lo, 0.0);
        let pos = Enclosure::from_bounds(0.0, x.hi);
        (
            lo.mul(pos).hull(hi.mul(neg)),
            hi.mul(pos).hull(lo.mul(neg)),
        )
    }
}

fn side(slack: Enclosure) -> StrictVerdict {
    if slack.lo >= 0.0 {
        StrictVerdict::Member
    } else if slack.hi < 0.0 {
        StrictVerdict::NonMember
    } else {
        StrictVerdict::Uncertain
    }
}

/// Rigorous membership test.  `a_enc` (row-major, `m*n`) and `b_enc` (`m`)
/// enclose the exact endpoints of the system's entries; the `f64` endpoints
/// stored in `sys` itself are their nearest approximations and only supply
/// quantifiers, relations and the prefix.  `x` encloses the query point.
///
/// The test is the directed-interval characterization evaluated in outward
/// arithmetic; `Member`/`NonMember` certify that verdict for every real
/// selection from the enclosures.
///
/// # Panics
///
/// Panics if the enclosure slices disagree with the system's dimensions or
/// (in debug builds) do not contain the system's own endpoints.
pub fn member_strict(
    sys: &QuantIntervalSystem,
    a_enc: &[EntryEnclosure],
    b_enc: &[EntryEnclosure],
    x: &[Enclosure],
) -> Result<StrictVerdict, Error> {
    let (m, n) = (sys.m(), sys.n());
    assert_eq!(a_enc.len(), m * n, "matrix enclosure count mismatch");
    assert_eq!(b_enc.len(), m, "right-hand side enclosure count mismatch");
    if let Some(row) = sys.first_non_ae_eq_row() {
        return Err(Error::PrefixOutsideQSigma { row });
    }
    if x.len() != n {
        return Err(Error::PointDimension {
            got: x.len(),
            expected: n,
        });
    }
    let mut verdict = StrictVerdict::Member;
    for i in 0..m {
        // Characteristic row: dual the existential matrix entries and the
        // universal right-hand side component.
        let mut acx_lo = Enclosure::exact(0.0);
        let mut acx_hi = Enclosure::exact(0.0);
        for j in 0..n {
            let (e_lo, e_hi) = a_enc[i * n + j];
            debug_assert!(
                e_lo.contains(sys.a().get(i, j).lo().value())
                    && e_hi.contains(sys.a().get(i, j).hi().value()),
                "matrix enclosure does not contain the stored endpoint"
            );
            let (c_lo, c_hi) = match sys.quant_a(i, j) {
                Quantifier::ForAll => (e_lo, e_hi),
                Quantifier::Exists => (e_hi, e_lo),
            };
            let (t_lo, t_hi) = scale_enclosed(c_lo, c_hi, x[j]);
            acx_lo = acx_lo.add(t_lo);
            acx_hi = acx_hi.add(t_hi);
        }
        let (b_lo, b_hi) = b_enc[i];
        debug_assert!(
            b_lo.contains(sys.b().get(i).lo().value())
                && b_hi.contains(sys.b().get(i).hi().value()),
            "right-hand side enclosure does not contain the stored endpoint"
        );
        let (bc_lo, bc_hi) = match sys.quant_b(i) {
            Quantifier::ForAll => (b_hi, b_lo),
            Quantifier::Exists => (b_lo, b_hi),
        };
        let sigma = sys.sigma(i);
        if sigma != RelationSign::Le {
            combine(&mut verdict, side(acx_lo.sub(bc_lo)));
        }
        if sigma != RelationSign::Ge {
            combine(&mut verdict, side(bc_hi.sub(acx_hi)));
        }
        if verdict == StrictVerdict::NonMember {
            break;
        }
    }
    Ok(verdict)
}

/// Conjunction over comparison sides: one certain failure decides the whole
/// query; otherwise any uncertainty degrades a `Member` verdict.
fn combine(acc: &mut StrictVerdict, side: StrictVerdict) {
    *acc = match (*acc, side) {
        (_, StrictVerdict::NonMember) | (StrictVerdict::NonMember, _) => StrictVerdict::NonMember,
        (StrictVerdict::Uncertain, _) | (_, StrictVerdict::Uncertain) => StrictVerdict::Uncertain,
        (StrictVerdict::Member, StrictVerdict::Member) => StrictVerdict::Member,
    };
}

impl StrictVerdict {
    /// The verdict as a boolean when certain.
    pub fn decided(self) -> Option<bool> {
        match self {
            StrictVerdict::Member => Some(true),
            StrictVerdict::NonMember => Some(false),
            StrictVerdict::Uncertain => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::Interval;
    use crate::linalg::{IMatrix, IVector};
    use crate::membership::member_kr;

    fn sys1(
        a: Interval,
        qa: Quantifier,
        b: Interval,
        qb: Quantifier,
        sigma: RelationSign,
    ) -> QuantIntervalSystem {
        QuantIntervalSystem::new(
            IMatrix::from_rows(vec![vec![a]]),
            IVector::new(vec![b]),
            vec![qa],
            vec![qb],
            vec![sigma],
            None,
        )
        .unwrap()
    }

    #[test]
    fn rounding_helpers_are_exact_on_exact_operations() {
        assert_eq!(add_down(1.0, 2.0), 3.0);
        assert_eq!(add_up(1.0, 2.0), 3.0);
        assert_eq!(mul_down(1.5, 2.0), 3.0);
        assert_eq!(mul_up(1.5, 2.0), 3.0);
    }

    #[test]
    fn rounding_helpers_widen_only_inexact_operations() {
        // 0.1 + 0.2 and 0.1 * 0.1 are inexact in binary floating point;
        // only the side the rounding crossed gets nudged, so the bounds
        // stay adjacent (1 ulp apart), never 2.
        assert!(add_down(0.1, 0.2) < add_up(0.1, 0.2));
        assert!(mul_down(0.1, 0.1) < mul_up(0.1, 0.1));
        assert_eq!(add_up(0.1, 0.2), add_down(0.1, 0.2).next_up());
        assert_eq!(mul_up(0.1, 0.1), mul_down(0.1, 0.1).next_up());
    }

    #[test]
    fn exact_data_reproduces_plain_verdicts_on_the_boundary() {
        // forall A in [1,2], forall b in [3,4]: Ax >= b is tight at x = 4.
        let sys = sys1(
            Interval::new(1.0, 2.0),
            Quantifier::ForAll,
            Interval::new(3.0, 4.0),
            Quantifier::ForAll,
            RelationSign::Ge,
        );
        let (a_enc, b_enc) = exact_enclosures(&sys);
        let strict = member_strict(&sys, &a_enc, &b_enc, &[Enclosure::exact(4.0)]).unwrap();
        assert_eq!(strict, StrictVerdict::Member);
        assert_eq!(strict.decided(), member_kr(&sys, &[4.0]).ok().map(|v| v.member));
        let strict = member_strict(&sys, &a_enc, &b_enc, &[Enclosure::exact(3.9)]).unwrap();
        assert_eq!(strict, StrictVerdict::NonMember);
    }

    #[test]
    fn one_third_on_the_boundary_is_uncertain() {
        // 3x = 1 exactly at x = 1/3, which is not a binary fraction.
        let sys = sys1(
            Interval::new(3.0, 3.0),
            Quantifier::Exists,
            Interval::new(1.0, 1.0),
            Quantifier::Exists,
            RelationSign::Eq,
        );
        let (a_enc, b_enc) = exact_enclosures(&sys);
        let x = [Enclosure::around(1.0 / 3.0)];
        assert_eq!(
            member_strict(&sys, &a_enc, &b_enc, &x).unwrap(),
            StrictVerdict::Uncertain
        );
    }

    #[test]
    fn one_third_with_slack_is_decided() {
        let member = sys1(
            Interval::new(3.0, 3.0),
            Quantifier::Exists,
            Interval::new(0.0, 2.0),
            Quantifier::Exists,
            RelationSign::Eq,
        );
        let (a_enc, b_enc) = exact_enclosures(&member);
        let x = [Enclosure::around(1.0 / 3.0)];
        assert_eq!(
            member_strict(&member, &a_enc, &b_enc, &x).unwrap(),
            StrictVerdict::Member
        );
        let non_member = sys1(
            Interval::new(3.0, 3.0),
            Quantifier::Exists,
            Interval::new(2.0, 3.0),
            Quantifier::Exists,
            RelationSign::Eq,
        );
        let (a_enc, b_enc) = exact_enclosures(&non_member);
        assert_eq!(
            member_strict(&non_member, &a_enc, &b_enc, &x).unwrap(),
            StrictVerdict::NonMember
        );
    }

    #[test]
    fn wide_point_enclosures_certify_whole_boxes() {
        // forall a in [2,5]: a*x >= -10 holds for every x in [-1, 1].
        let sys = sys1(
            Interval::new(2.0, 5.0),
            Quantifier::ForAll,
            Interval::new(-10.0, -10.0),
            Quantifier::Exists,
            RelationSign::Ge,
        );
        let (a_enc, b_enc) = exact_enclosures(&sys);
        let x = [Enclosure::from_bounds(-1.0, 1.0)];
        assert_eq!(
            member_strict(&sys, &a_enc, &b_enc, &x).unwrap(),
            StrictVerdict::Member
        );
        // Against b = 0 the slack range is [-5, 2]: undecidable for the box.
        let sys0 = sys1(
            Interval::new(2.0, 5.0),
            Quantifier::ForAll,
            Interval::new(0.0, 0.0),
            Quantifier::Exists,
            RelationSign::Ge,
        );
        let (a_enc0, b_enc0) = exact_enclosures(&sys0);
        assert_eq!(
            member_strict(&sys0, &a_enc0, &b_enc0, &x).unwrap(),
            StrictVerdict::Uncertain
        );
    }

    #[test]
    fn strict_rejects_non_q_sigma_prefixes() {
        use crate::system::{ParamRef, PrefixOrder};
        let prefix = PrefixOrder::new(
            vec![ParamRef::B { row: 0 }, ParamRef::A { row: 0, col: 0 }],
            1,
            1,
        )
        .unwrap();
        let sys = QuantIntervalSystem::new(
            IMatrix::from_rows(vec![vec![Interval::new(1.0, 2.0)]]),
            IVector::new(vec![Interval::new(0.0, 1.0)]),
            vec![Quantifier::ForAll],
            vec![Quantifier::Exists],
            vec![RelationSign::Eq],
            Some(prefix),
        )
        .unwrap();
        let (a_enc, b_enc) = exact_enclosures(&sys);
        assert_eq!(
            member_strict(&sys, &a_enc, &b_enc, &[Enclosure::exact(1.0)]),
            Err(Error::PrefixOutsideQSigma { row: 0 })
        );
    }
}
