//! Membership of a real point in a quantified solution set.
//!
//! For systems in class `Q^sigma`, three equivalent quantifier-free tests
//! decide whether a point `x` belongs to the solution set:
//!
//! * [`member_real`] - per row `i`, with `t = (mid A . x - mid b)_i` and
//!   `r = ((As o rad A)|x| + bs o rad b)_i` (`o` componentwise, `As`/`bs`
//!   the `±1` quantifier sign patterns), require `|t| <= r` for `=` rows,
//!   `-t <= r` for `>=`, `t <= r` for `<=`.  Pure real arithmetic; this is
//!   the fast path.
//! * [`member_kr`] - the directed-interval form: `lo(Ac x) >= lo(bc) + u`
//!   and `hi(Ac x) <= hi(bc) + v` with the characteristic matrix/vector and
//!   the relation slacks `u`, `v`.
//! * [`member_ir`] - the split form over classical intervals:
//!   `A_forall x - b_forall  (subset of)  b_exists - A_exists x + w`.
//!
//! All three compute the same per-row slack pair (the residuals of the
//! lower and upper scalar comparisons) and hence the same verdict.  When
//! every product and sum involved is exactly representable — as on the
//! half-integer grids used throughout the tests — the three routes agree
//! bit for bit; on general data they may differ by rounding in the last
//! places, in which case the rigorous three-valued test in `strict` is the
//! appropriate referee.  [`member_basic`] evaluates the
//! closed forms of the four classical solution types (weak, tolerable,
//! controllable, strong) directly from `A`, `b` without building a
//! quantified system.

use crate::error::Error;
use crate::ext_real::ExtReal;
use crate::interval::Interval;
use crate::linalg::{abs_vec, mat_vec, IMatrix, IVector};
use crate::system::{QuantIntervalSystem, Quantifier, RelationSign};

/// Verdict plus diagnostics: for every row the slack of the lower and upper
/// scalar comparisons (`>= 0` iff the comparison holds; `+inf` when the row
/// relation imposes no bound on that side).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MembershipVerdict {
    pub member: bool,
    pub residuals: Vec<(ExtReal, ExtReal)>,
}

impl MembershipVerdict {
    fn from_residuals(residuals: Vec<(ExtReal, ExtReal)>) -> Self {
        let member = residuals
            .iter()
            .all(|&(lo, hi)| lo >= ExtReal::ZERO && hi >= ExtReal::ZERO);
        MembershipVerdict { member, residuals }
    }
}

/// The four classical solution types, i.e. the homogeneous quantifier
/// patterns: weak `(exists A)(exists b)`, tolerable `(forall A)(exists b)`,
/// controllable `(forall b)(exists A)`, strong `(forall A)(forall b)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SolutionKind {
    Weak,
    Tolerable,
    Controllable,
    Strong,
}

impl SolutionKind {
    /// The quantifiers this kind assigns to matrix entries and to
    /// right-hand side components, in that order.
    pub fn quantifiers(self) -> (Quantifier, Quantifier) {
        match self {
            SolutionKind::Weak => (Quantifier::Exists, Quantifier::Exists),
            SolutionKind::Tolerable => (Quantifier::ForAll, Quantifier::Exists),
            SolutionKind::Controllable => (Quantifier::Exists, Quantifier::ForAll),
            SolutionKind::Strong => (Quantifier::ForAll, Quantifier::ForAll),
        }
    }
}

fn validate(sys: &QuantIntervalSystem, x: &[f64]) -> Result<(), Error> {
    if let Some(row) = sys.first_non_ae_eq_row() {
        return Err(Error::PrefixOutsideQSigma { row });
    }
    if x.len() != sys.n() {
        return Err(Error::PointDimension {
            got: x.len(),
            expected: sys.n(),
        });
    }
    Ok(())
}

/// Subtraction that can only hit an indeterminate form through a bug: the
/// minuends here always have at least one finite side by construction.
fn slack(a: ExtReal, b: ExtReal) -> ExtReal {
    a.try_sub(b)
        .expect("slack arithmetic met opposite infinities; system endpoints must be finite")
}

/// Real-arithmetic membership test (the fast path).
pub fn member_real(sys: &QuantIntervalSystem, x: &[f64]) -> Result<MembershipVerdict, Error> {
    validate(sys, x)?;
    let (m, n) = (sys.m(), sys.n());
    let abs_x = abs_vec(x);
    let mut residuals = Vec::with_capacity(m);
    for i in 0..m {
        let mut t = 0.0;
        let mut r = 0.0;
        for j in 0..n {
            let entry = sys.a().get(i, j);
            let sign = match sys.quant_a(i, j) {
                Quantifier::Exists => 1.0,
                Quantifier::ForAll => -1.0,
            };
            t += entry.mid().expect("system entries are finite") * x[j];
            r += sign * entry.rad().expect("system entries are finite") * abs_x[j];
        }
        let b = sys.b().get(i);
        t -= b.mid().expect("system entries are finite");
        let b_sign = match sys.quant_b(i) {
            Quantifier::Exists => 1.0,
            Quantifier::ForAll => -1.0,
        };
        r += b_sign * b.rad().expect("system entries are finite");
        let lower = ExtReal::new(r + t);
        let upper = ExtReal::new(r - t);
        residuals.push(match sys.sigma(i) {
            RelationSign::Eq => (lower, upper),
            RelationSign::Ge => (lower, ExtReal::POS_INF),
            RelationSign::Le => (ExtReal::POS_INF, upper),
        });
    }
    Ok(MembershipVerdict::from_residuals(residuals))
}

/// Directed-interval membership test via the characteristic forms.
pub fn member_kr(sys: &QuantIntervalSystem, x: &[f64]) -> Result<MembershipVerdict, Error> {
    validate(sys, x)?;
    let d = sys.build_derived();
    let acx = mat_vec(&d.a_char, x);
    let residuals = (0..sys.m())
        .map(|i| {
            let bc = d.b_char.get(i);
            let lower_bound = bc.lo().try_add(d.u[i]).expect("bc endpoints are finite");
            let upper_bound = bc.hi().try_add(d.v[i]).expect("bc endpoints are finite");
            (
                slack(acx.get(i).lo(), lower_bound),
                slack(upper_bound, acx.get(i).hi()),
            )
        })
        .collect();
    Ok(MembershipVerdict::from_residuals(residuals))
}

/// Classical-interval membership test via the universal/existential split.
pub fn member_ir(sys: &QuantIntervalSystem, x: &[f64]) -> Result<MembershipVerdict, Error> {
    validate(sys, x)?;
    let d = sys.build_derived();
    let lhs = mat_vec(&d.a_forall, x).sub(&d.b_forall);
    let rhs = mat_vec(&d.a_exists, x).neg().add(&d.b_exists).add(&d.w);
    let residuals = (0..sys.m())
        .map(|i| {
            let (l, r) = (lhs.get(i), rhs.get(i));
            debug_assert!(l.is_proper() && r.is_proper());
            (slack(l.lo(), r.lo()), slack(r.hi(), l.hi()))
        })
        .collect();
    Ok(MembershipVerdict::from_residuals(residuals))
}

/// Closed-form membership for the four classical solution types, evaluated
/// rowwise on classical interval arithmetic:
///
/// | row   | weak              | tolerable         | controllable      | strong            |
/// |-------|-------------------|-------------------|-------------------|-------------------|
/// | `=`   | `0 in b - Ax`     | `Ax sub b`        | `b sub Ax`        | `Ax - b sub [0,0]`|
/// | `>=`  | `hi(Ax) >= lo(b)` | `lo(Ax) >= lo(b)` | `hi(Ax) >= hi(b)` | `lo(Ax) >= hi(b)` |
/// | `<=`  | `lo(Ax) <= hi(b)` | `hi(Ax) <= hi(b)` | `lo(Ax) <= lo(b)` | `hi(Ax) <= lo(b)` |
///
/// Equals `member_real` on the induced homogeneous system (see
/// [`induced_system`]).
///
/// # Panics
///
/// Panics on dimension mismatch or improper/non-finite entries.
pub fn member_basic(
    kind: SolutionKind,
    a: &IMatrix,
    b: &IVector,
    sigma: &[RelationSign],
    x: &[f64],
) -> bool {
    assert_eq!(b.len(), a.rows(), "right-hand side length mismatch");
    assert_eq!(sigma.len(), a.rows(), "sigma length mismatch");
    assert!(
        a.entries().iter().all(|e| e.is_proper()) && b.iter().all(|e| e.is_proper()),
        "member_basic requires proper (classical) inputs"
    );
    let ax = mat_vec(a, x);
    (0..a.rows()).all(|i| {
        let (row, rhs) = (ax.get(i), b.get(i));
        use RelationSign::*;
        use SolutionKind::*;
        match (kind, sigma[i]) {
            (Weak, Eq) => (rhs - row).encloses_value(0.0),
            (Weak, Ge) => row.hi() >= rhs.lo(),
            (Weak, Le) => row.lo() <= rhs.hi(),
            (Tolerable, Eq) => row.subseteq(rhs),
            (Tolerable, Ge) => row.lo() >= rhs.lo(),
            (Tolerable, Le) => row.hi() <= rhs.hi(),
            (Controllable, Eq) => rhs.subseteq(row),
            (Controllable, Ge) => row.hi() >= rhs.hi(),
            (Controllable, Le) => row.lo() <= rhs.lo(),
            (Strong, Eq) => (row - rhs).subseteq(Interval::ZERO),
            (Strong, Ge) => row.lo() >= rhs.hi(),
            (Strong, Le) => row.hi() <= rhs.lo(),
        }
    })
}

/// The quantified system whose solution set a [`SolutionKind`] describes:
/// every matrix entry and right-hand side component gets the kind's
/// homogeneous quantifier pattern, with the canonical prefix.
pub fn induced_system(
    kind: SolutionKind,
    a: IMatrix,
    b: IVector,
    sigma: Vec<RelationSign>,
) -> Result<QuantIntervalSystem, Error> {
    let (qa, qb) = kind.quantifiers();
    let quant_a = vec![qa; a.rows() * a.cols()];
    let quant_b = vec![qb; a.rows()];
    QuantIntervalSystem::new(a, b, quant_a, quant_b, sigma, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{ParamRef, PrefixOrder};

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi)
    }

    fn one_by_one(
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

    /// Asserts the three characterizations agree on the verdict; on grid
    /// data (`exact`) also on the residuals, bit for bit.
    fn agreement(sys: &QuantIntervalSystem, x: &[f64], exact: bool) -> bool {
        let real = member_real(sys, x).unwrap();
        let kr = member_kr(sys, x).unwrap();
        let ir = member_ir(sys, x).unwrap();
        assert_eq!(real.member, kr.member);
        assert_eq!(real.member, ir.member);
        if exact {
            assert_eq!(real.residuals, kr.residuals);
            assert_eq!(real.residuals, ir.residuals);
        }
        real.member
    }

    fn all_agree(sys: &QuantIntervalSystem, x: &[f64]) -> bool {
        agreement(sys, x, true)
    }

    #[test]
    fn weak_equation_example() {
        // exists A in [2,4], exists b in [2,6] with A*1 = b.
        let sys = one_by_one(
            iv(2.0, 4.0),
            Quantifier::Exists,
            iv(2.0, 6.0),
            Quantifier::Exists,
            RelationSign::Eq,
        );
        assert!(all_agree(&sys, &[1.0]));
        // At x = 10 the products [20,40] and [2,6] cannot meet.
        assert!(!all_agree(&sys, &[10.0]));
    }

    #[test]
    fn tolerable_equation_example() {
        // forall A in [2,4] there must be b in [0,8] with A*1 = b.
        let sys = one_by_one(
            iv(2.0, 4.0),
            Quantifier::ForAll,
            iv(0.0, 8.0),
            Quantifier::Exists,
            RelationSign::Eq,
        );
        let kr = member_kr(&sys, &[1.0]).unwrap();
        assert!(kr.member);
        assert!(all_agree(&sys, &[1.0]));
    }

    #[test]
    fn strong_inequality_boundary_is_inclusive() {
        // forall A in [1,2], forall b in [3,4]: A x >= b.
        let sys = one_by_one(
            iv(1.0, 2.0),
            Quantifier::ForAll,
            iv(3.0, 4.0),
            Quantifier::ForAll,
            RelationSign::Ge,
        );
        assert!(all_agree(&sys, &[4.0]));
        // 3.9 is representable but its midpoint products round, so the
        // routes agree on the verdict with residuals equal only up to ulps.
        assert!(!agreement(&sys, &[3.9], false));
        // The binding comparison sits exactly on the boundary at x = 4.
        let kr = member_kr(&sys, &[4.0]).unwrap();
        assert_eq!(kr.residuals[0].0, ExtReal::ZERO);
        assert_eq!(kr.residuals[0].1, ExtReal::POS_INF);
    }

    #[test]
    fn degenerate_system_is_the_point_test() {
        // 2x1 - 3x2 <= 4, 5x1 + 6x2 = 7, -x1 + 4x2 >= 5 at the vertex
        // x = (-1/13, 16/13), which satisfies rows 2 and 3 with equality.
        let a = IMatrix::from_rows(vec![
            vec![iv(2.0, 2.0), iv(-3.0, -3.0)],
            vec![iv(5.0, 5.0), iv(6.0, 6.0)],
            vec![iv(-1.0, -1.0), iv(4.0, 4.0)],
        ]);
        let b = IVector::new(vec![iv(4.0, 4.0), iv(7.0, 7.0), iv(5.0, 5.0)]);
        let sigma = vec![RelationSign::Le, RelationSign::Eq, RelationSign::Ge];
        let sys = QuantIntervalSystem::new(
            a,
            b,
            vec![Quantifier::Exists; 6],
            vec![Quantifier::Exists; 3],
            sigma,
            None,
        )
        .unwrap();
        let x = [-1.0 / 13.0, 16.0 / 13.0];
        assert!(all_agree(&sys, &x));
        // Any violated row flips the verdict.
        assert!(!all_agree(&sys, &[0.0, 0.0]));
        assert!(all_agree(&sys, &[-1.0, 2.0]));
    }

    #[test]
    fn non_q_sigma_prefix_is_refused_by_all_methods() {
        let prefix = PrefixOrder::new(
            vec![ParamRef::B { row: 0 }, ParamRef::A { row: 0, col: 0 }],
            1,
            1,
        )
        .unwrap();
        let sys = QuantIntervalSystem::new(
            IMatrix::from_rows(vec![vec![iv(1.0, 2.0)]]),
            IVector::new(vec![iv(0.0, 1.0)]),
            vec![Quantifier::ForAll],
            vec![Quantifier::Exists],
            vec![RelationSign::Eq],
            Some(prefix),
        )
        .unwrap();
        let expected = Err(Error::PrefixOutsideQSigma { row: 0 });
        assert_eq!(member_real(&sys, &[1.0]), expected);
        assert_eq!(member_kr(&sys, &[1.0]), expected);
        assert_eq!(member_ir(&sys, &[1.0]), expected);
    }

    #[test]
    fn wrong_point_dimension_is_an_error() {
        let sys = one_by_one(
            iv(1.0, 2.0),
            Quantifier::Exists,
            iv(0.0, 1.0),
            Quantifier::Exists,
            RelationSign::Le,
        );
        assert_eq!(
            member_real(&sys, &[1.0, 2.0]),
            Err(Error::PointDimension {
                got: 2,
                expected: 1
            })
        );
    }

    #[test]
    fn basic_type_closed_forms() {
        let sigma_eq = [RelationSign::Eq];
        let sigma_le = [RelationSign::Le];
        // Weak equation: 0 in b - Ax.
        let a = IMatrix::from_rows(vec![vec![iv(2.0, 4.0)]]);
        let b = IVector::new(vec![iv(2.0, 6.0)]);
        assert!(member_basic(SolutionKind::Weak, &a, &b, &sigma_eq, &[1.0]));
        assert!(!member_basic(SolutionKind::Weak, &a, &b, &sigma_eq, &[10.0]));
        // Strong <= : hi(Ax) <= lo(b).
        let a = IMatrix::from_rows(vec![vec![iv(1.0, 2.0)]]);
        let b = IVector::new(vec![iv(3.0, 4.0)]);
        assert!(member_basic(SolutionKind::Strong, &a, &b, &sigma_le, &[1.0]));
        assert!(!member_basic(SolutionKind::Strong, &a, &b, &sigma_le, &[2.0]));
        // Controllable equation: b inside the attainable products.
        let a = IMatrix::from_rows(vec![vec![iv(1.0, 3.0)]]);
        let b = IVector::new(vec![iv(1.5, 2.5)]);
        assert!(member_basic(
            SolutionKind::Controllable,
            &a,
            &b,
            &sigma_eq,
            &[1.0]
        ));
    }

    #[test]
    fn basic_types_match_the_induced_quantified_system() {
        let a = IMatrix::from_rows(vec![vec![iv(-1.0, 2.0), iv(0.5, 1.0)]]);
        let b = IVector::new(vec![iv(-2.0, 2.0)]);
        for kind in [
            SolutionKind::Weak,
            SolutionKind::Tolerable,
            SolutionKind::Controllable,
            SolutionKind::Strong,
        ] {
            for sigma in [RelationSign::Eq, RelationSign::Ge, RelationSign::Le] {
                let sys =
                    induced_system(kind, a.clone(), b.clone(), vec![sigma]).unwrap();
                for x in [[0.0, 0.0], [1.0, -1.5], [-2.0, 0.5]] {
                    assert_eq!(
                        member_basic(kind, &a, &b, &[sigma], &x),
                        member_real(&sys, &x).unwrap().member,
                        "kind {kind:?} sigma {sigma:?} x {x:?}"
                    );
                }
            }
        }
    }
}
