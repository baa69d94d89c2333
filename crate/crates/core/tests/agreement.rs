//! Differential testing of the membership characterizations against each
//! other and against the brute-force quantifier oracle, plus the solution
//! set identities that relate equations to inequality pairs, negated
//! systems, scaled systems, and the four classical solution types.
//!
//! All sampled data lives on half-integer grids, so every compared number
//! is computed exactly and the assertions are literal equalities.

use proptest::prelude::*;

use qlinset_core::membership::{member_basic, member_ir, member_kr, member_real};
use qlinset_core::oracle::{eval_prefix_recursive, oracle_member, oracle_prefix_shuffle_test};
use qlinset_core::strict::{exact_enclosures, member_strict, Enclosure};
use qlinset_core::{
    IMatrix, IVector, Interval, QuantIntervalSystem, Quantifier, RelationSign, SystemSampler,
};

fn sampled(seed: u64) -> (QuantIntervalSystem, Vec<f64>) {
    let mut s = SystemSampler::new(seed);
    let sys = s.sample_system();
    let x = s.sample_point(sys.n());
    (sys, x)
}

proptest! {
    /// The central claim: the three quantifier-free characterizations are
    /// the same test, down to the per-row residual pairs.
    #[test]
    fn the_three_characterizations_coincide(seed in any::<u64>()) {
        let (sys, x) = sampled(seed);
        let real = member_real(&sys, &x).unwrap();
        let kr = member_kr(&sys, &x).unwrap();
        let ir = member_ir(&sys, &x).unwrap();
        prop_assert_eq!(&real, &kr);
        prop_assert_eq!(&real, &ir);
        let all_nonneg = real
            .residuals
            .iter()
            .all(|&(lo, hi)| lo >= qlinset_core::ExtReal::ZERO && hi >= qlinset_core::ExtReal::ZERO);
        prop_assert_eq!(real.member, all_nonneg);
    }

    /// ... and they all equal the brute-force evaluation of the quantifier
    /// prefix itself.
    #[test]
    fn characterizations_match_the_quantifier_oracle(seed in any::<u64>()) {
        let (sys, x) = sampled(seed);
        prop_assert_eq!(
            member_real(&sys, &x).unwrap().member,
            oracle_member(&sys, &x).unwrap()
        );
    }

    /// For inequality-only systems the literal endpoint recursion through
    /// the prefix agrees too, under the sampled prefix order and twelve
    /// shuffled ones.
    #[test]
    fn prefix_recursion_agrees_and_ignores_prefix_order(seed in any::<u64>()) {
        let mut s = SystemSampler::new(seed);
        let sys = s.sample_inequality_system();
        let x = s.sample_point(sys.n());
        prop_assert_eq!(
            eval_prefix_recursive(&sys, &x).unwrap(),
            member_real(&sys, &x).unwrap().member
        );
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        prop_assert!(oracle_prefix_shuffle_test(&sys, &x, 12, &mut rng).unwrap());
    }

    /// An equation row holds exactly when both its inequality relaxations
    /// hold: replacing every `=` by `>=` and by `<=` (keeping quantifiers
    /// and prefix) splits the verdict into a conjunction.
    #[test]
    fn equations_split_into_inequality_pairs(seed in any::<u64>()) {
        let mut s = SystemSampler::new(seed);
        let sys = s.sample_equation_system();
        let x = s.sample_point(sys.n());
        let ge = sys.with_sigma(vec![RelationSign::Ge; sys.m()]).unwrap();
        let le = sys.with_sigma(vec![RelationSign::Le; sys.m()]).unwrap();
        prop_assert_eq!(
            member_real(&sys, &x).unwrap().member,
            member_real(&ge, &x).unwrap().member && member_real(&le, &x).unwrap().member
        );
    }

    /// Negating the data of an inequality system flips the relation signs
    /// without changing the solution set.
    #[test]
    fn negation_flips_relation_signs(seed in any::<u64>()) {
        let mut s = SystemSampler::new(seed);
        let sys = s.sample_inequality_system();
        let x = s.sample_point(sys.n());
        let flipped_sigma: Vec<RelationSign> = sys
            .sigma_all()
            .iter()
            .map(|&r| match r {
                RelationSign::Ge => RelationSign::Le,
                RelationSign::Le => RelationSign::Ge,
                RelationSign::Eq => RelationSign::Eq,
            })
            .collect();
        let negated = sys.negate().with_sigma(flipped_sigma).unwrap();
        prop_assert_eq!(
            member_real(&sys, &x).unwrap().member,
            member_real(&negated, &x).unwrap().member
        );
    }

    /// Each closed form of the four classical solution types equals the
    /// general test on the induced homogeneous system.
    #[test]
    fn basic_type_forms_match_the_general_test(seed in any::<u64>()) {
        let mut s = SystemSampler::new(seed);
        let kind = s.sample_kind();
        let sys = s.sample_homogeneous(kind);
        let x = s.sample_point(sys.n());
        prop_assert_eq!(
            member_basic(kind, sys.a(), sys.b(), sys.sigma_all(), &x),
            member_real(&sys, &x).unwrap().member
        );
    }

    /// Raising the upper endpoint of an existential right-hand side of a
    /// `>=` row never loses members.
    #[test]
    fn existential_ge_rows_are_monotone_in_b(seed in any::<u64>()) {
        let mut s = SystemSampler::new(seed);
        let base = s.sample_inequality_system();
        let x = s.sample_point(base.n());
        let (m, n) = (base.m(), base.n());
        let quant_a: Vec<Quantifier> = (0..m * n)
            .map(|k| base.quant_a(k / n, k % n))
            .collect();
        let make = |b: IVector| {
            QuantIntervalSystem::new(
                base.a().clone(),
                b,
                quant_a.clone(),
                vec![Quantifier::Exists; m],
                vec![RelationSign::Ge; m],
                None,
            )
            .unwrap()
        };
        let widened = IVector::new(
            base.b()
                .iter()
                .map(|e| Interval::ext(e.lo(), e.hi().try_add(qlinset_core::ExtReal::new(1.0)).unwrap()))
                .collect(),
        );
        let before = member_real(&make(base.b().clone()), &x).unwrap().member;
        let after = member_real(&make(widened), &x).unwrap().member;
        prop_assert!(!before || after, "widening b lost a member");
    }

    /// Equation systems are positively homogeneous: scaling all data by a
    /// positive factor leaves the verdict unchanged.
    #[test]
    fn equation_verdicts_are_scale_invariant(seed in any::<u64>(), k in 0usize..4) {
        let lambda = [0.5, 1.0, 2.0, 4.0][k];
        let mut s = SystemSampler::new(seed);
        let sys = s.sample_equation_system();
        let x = s.sample_point(sys.n());
        let scaled_a = IMatrix::new(
            sys.m(),
            sys.n(),
            sys.a().entries().iter().map(|e| e.scale(lambda)).collect(),
        );
        let scaled_b = IVector::new(sys.b().iter().map(|e| e.scale(lambda)).collect());
        let (m, n) = (sys.m(), sys.n());
        let scaled = QuantIntervalSystem::new(
            scaled_a,
            scaled_b,
            (0..m * n).map(|k| sys.quant_a(k / n, k % n)).collect(),
            (0..m).map(|i| sys.quant_b(i)).collect(),
            sys.sigma_all().to_vec(),
            Some(sys.prefix().clone()),
        )
        .unwrap();
        prop_assert_eq!(
            member_real(&sys, &x).unwrap().member,
            member_real(&scaled, &x).unwrap().member
        );
    }

    /// On fully dyadic data the rigorous three-valued test never hedges
    /// and reproduces the plain verdict exactly.
    #[test]
    fn strict_mode_is_exact_on_dyadic_data(seed in any::<u64>()) {
        let (sys, x) = sampled(seed);
        let (a_enc, b_enc) = exact_enclosures(&sys);
        let x_enc: Vec<Enclosure> = x.iter().map(|&c| Enclosure::exact(c)).collect();
        let strict = member_strict(&sys, &a_enc, &b_enc, &x_enc).unwrap();
        prop_assert_eq!(
            strict.decided(),
            Some(member_kr(&sys, &x).unwrap().member)
        );
    }
}
