//! Membership in quantified solution sets of interval linear systems.
//!
//! An interval linear system `A x σ b` (with `σ` a rowwise choice of `=`,
//! `>=`, `<=`) together with a quantifier for every interval parameter and an
//! order in which those quantifiers are applied describes a *quantified
//! solution set*: the real points `x` for which the quantified statement
//! holds.  This crate decides membership of a point in such a set three
//! independent ways -
//!
//! * [`membership::member_real`]: a closed form in ordinary real arithmetic,
//! * [`membership::member_kr`]: one two-sided inclusion in the space of
//!   directed (Kaucher) intervals,
//! * [`membership::member_ir`]: an inclusion using classical intervals only,
//!
//! and provides a brute-force [`oracle`] that evaluates the quantifier
//! prefix directly, for cross-validation.  The supporting layers are
//! directed-interval arithmetic ([`interval`]), small dense interval
//! matrices ([`linalg`]), and the system model with its derived forms
//! ([`system`]).

pub mod error;
pub mod ext_real;
pub mod generator;
pub mod interval;
pub mod linalg;
pub mod membership;
pub mod oracle;
pub mod strict;
pub mod system;

pub use error::Error;
pub use ext_real::ExtReal;
pub use generator::SystemSampler;
pub use interval::{Interval, ProperInterval};
pub use linalg::{mat_vec, IMatrix, IVector, RMatrix};
pub use membership::{
    induced_system, member_basic, member_ir, member_kr, member_real, MembershipVerdict,
    SolutionKind,
};
pub use oracle::{
    eval_prefix_recursive, oracle_member, oracle_prefix_shuffle_test, oracle_row_eq,
    oracle_row_ineq,
};
pub use strict::{exact_enclosures, member_strict, Enclosure, EntryEnclosure, StrictVerdict};
pub use system::{
    default_prefix, DerivedForms, ParamRef, PrefixClass, PrefixOrder, QuantIntervalSystem,
    Quantifier, RelationSign,
};
