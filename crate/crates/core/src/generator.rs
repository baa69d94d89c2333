//! Seeded random systems and query points for differential testing.
//!
//! Every sampled scalar is a small multiple of one half, so all downstream
//! arithmetic on the samples is exact in binary floating point and the
//! three membership characterizations plus the brute-force oracle can be
//! compared for literal equality.  Sampled prefixes are arbitrary global
//! permutations repaired just enough to stay inside class `Q^sigma`:
//! within each equation row the universal parameters are moved before the
//! existential ones, preserving their relative order.

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::interval::Interval;
use crate::linalg::{IMatrix, IVector};
use crate::membership::{induced_system, SolutionKind};
use crate::system::{ParamRef, PrefixOrder, QuantIntervalSystem, Quantifier, RelationSign};

/// Interval endpoints are drawn from this palette (then ordered).
pub const ENDPOINT_PALETTE: [f64; 7] = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];

/// Query-point coordinates are drawn from this palette.
pub const COORD_PALETTE: [f64; 9] = [-2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0];

/// Deterministic sampler of small quantified interval linear systems.
pub struct SystemSampler {
    rng: ChaCha8Rng,
    max_rows: usize,
    max_cols: usize,
}

impl SystemSampler {
    pub fn new(seed: u64) -> Self {
        Self::with_dims(seed, 3, 3)
    }

    pub fn with_dims(seed: u64, max_rows: usize, max_cols: usize) -> Self {
        assert!(max_rows >= 1 && max_cols >= 1);
        SystemSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_rows,
            max_cols,
        }
    }

    fn interval(&mut self) -> Interval {
        let a = *ENDPOINT_PALETTE.choose(&mut self.rng).unwrap();
        let b = *ENDPOINT_PALETTE.choose(&mut self.rng).unwrap();
        Interval::new(a.min(b), a.max(b))
    }

    fn quantifier(&mut self) -> Quantifier {
        if self.rng.random() {
            Quantifier::ForAll
        } else {
            Quantifier::Exists
        }
    }

    /// A random system with the given relation palette and a random
    /// `Q^sigma` prefix.
    fn sample(&mut self, sigma_palette: &[RelationSign]) -> QuantIntervalSystem {
        let m = self.rng.random_range(1..=self.max_rows);
        let n = self.rng.random_range(1..=self.max_cols);
        let a = IMatrix::from_rows(
            (0..m)
                .map(|_| (0..n).map(|_| self.interval()).collect())
                .collect(),
        );
        let b = IVector::new((0..m).map(|_| self.interval()).collect());
        let quant_a: Vec<Quantifier> = (0..m * n).map(|_| self.quantifier()).collect();
        let quant_b: Vec<Quantifier> = (0..m).map(|_| self.quantifier()).collect();
        let sigma: Vec<RelationSign> = (0..m)
            .map(|_| *sigma_palette.choose(&mut self.rng).unwrap())
            .collect();
        let prefix = self.q_sigma_prefix(m, n, &quant_a, &quant_b, &sigma);
        QuantIntervalSystem::new(a, b, quant_a, quant_b, sigma, Some(prefix))
            .expect("sampled data is finite, proper and dimensionally consistent")
    }

    /// A random global permutation of the parameters, repaired rowwise so
    /// every equation row reads forall-before-exists.
    fn q_sigma_prefix(
        &mut self,
        m: usize,
        n: usize,
        quant_a: &[Quantifier],
        quant_b: &[Quantifier],
        sigma: &[RelationSign],
    ) -> PrefixOrder {
        let mut params: Vec<ParamRef> = (0..m)
            .flat_map(|i| {
                (0..n)
                    .map(move |j| ParamRef::A { row: i, col: j })
                    .chain(std::iter::once(ParamRef::B { row: i }))
            })
            .collect();
        params.shuffle(&mut self.rng);
        let quant_of = |p: ParamRef| match p {
            ParamRef::A { row, col } => quant_a[row * n + col],
            ParamRef::B { row } => quant_b[row],
        };
        for (i, &s) in sigma.iter().enumerate() {
            if s != RelationSign::Eq {
                continue;
            }
            let positions: Vec<usize> = (0..params.len())
                .filter(|&k| params[k].row() == i)
                .collect();
            let mut row_params: Vec<ParamRef> =
                positions.iter().map(|&k| params[k]).collect();
            // Stable partition: universal first, relative order kept.
            row_params.sort_by_key(|&p| quant_of(p) == Quantifier::Exists);
            for (&k, &p) in positions.iter().zip(row_params.iter()) {
                params[k] = p;
            }
        }
        PrefixOrder::new(params, m, n).expect("repaired permutation stays a permutation")
    }

    /// A system with relations drawn from all of `=`, `>=`, `<=`.
    pub fn sample_system(&mut self) -> QuantIntervalSystem {
        self.sample(&[RelationSign::Eq, RelationSign::Ge, RelationSign::Le])
    }

    /// A system with inequality rows only (valid input for the prefix
    /// recursion and for relation-flip identities).
    pub fn sample_inequality_system(&mut self) -> QuantIntervalSystem {
        self.sample(&[RelationSign::Ge, RelationSign::Le])
    }

    /// A system with equation rows only.
    pub fn sample_equation_system(&mut self) -> QuantIntervalSystem {
        self.sample(&[RelationSign::Eq])
    }

    pub fn sample_kind(&mut self) -> SolutionKind {
        *[
            SolutionKind::Weak,
            SolutionKind::Tolerable,
            SolutionKind::Controllable,
            SolutionKind::Strong,
        ]
        .choose(&mut self.rng)
        .unwrap()
    }

    /// A system whose quantifier pattern is homogeneous per `kind`, with
    /// relations drawn from all three.
    pub fn sample_homogeneous(&mut self, kind: SolutionKind) -> QuantIntervalSystem {
        let sampled = self.sample_system();
        induced_system(
            kind,
            sampled.a().clone(),
            sampled.b().clone(),
            sampled.sigma_all().to_vec(),
        )
        .expect("resampled data stays valid")
    }

    /// A query point on the half-integer grid.
    pub fn sample_point(&mut self, n: usize) -> Vec<f64> {
        (0..n)
            .map(|_| *COORD_PALETTE.choose(&mut self.rng).unwrap())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let mut s1 = SystemSampler::new(42);
        let mut s2 = SystemSampler::new(42);
        for _ in 0..20 {
            let a = s1.sample_system();
            let b = s2.sample_system();
            assert_eq!(a, b);
            assert_eq!(s1.sample_point(a.n()), s2.sample_point(b.n()));
        }
    }

    #[test]
    fn sampled_systems_stay_inside_q_sigma() {
        let mut s = SystemSampler::new(7);
        for _ in 0..200 {
            let sys = s.sample_system();
            assert!(sys.classify_prefix().is_q_sigma);
            assert!(sys.first_non_ae_eq_row().is_none());
        }
    }

    #[test]
    fn inequality_sampler_avoids_equations() {
        let mut s = SystemSampler::new(11);
        for _ in 0..100 {
            let sys = s.sample_inequality_system();
            assert!(sys.sigma_all().iter().all(|&r| r != RelationSign::Eq));
        }
    }

    #[test]
    fn samples_use_the_published_palettes() {
        let mut s = SystemSampler::new(3);
        for _ in 0..50 {
            let sys = s.sample_system();
            for e in sys.a().entries().iter().copied().chain(sys.b().iter()) {
                assert!(ENDPOINT_PALETTE.contains(&e.lo().value()));
                assert!(ENDPOINT_PALETTE.contains(&e.hi().value()));
            }
            for c in s.sample_point(sys.n()) {
                assert!(COORD_PALETTE.contains(&c));
            }
        }
    }
}
