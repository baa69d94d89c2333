//! Error type shared by the whole library.

/// Errors reported by interval arithmetic, system construction, the
/// membership deciders and the brute-force oracle.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// `mid` / `rad` are only defined for intervals with finite endpoints.
    #[error("mid/rad undefined on extended intervals")]
    MidRadUndefined,

    /// `(+inf) + (-inf)` has no value in the extended reals.
    #[error("indeterminate sum (+inf) + (-inf)")]
    IndeterminateSum,

    /// Division requires the proper hull of the divisor to exclude zero.
    #[error("division by an interval whose proper hull contains zero")]
    DivisionByZero,

    /// A proper (ordered-endpoint) interval was required.
    #[error("improper interval where a proper one is required: [{lo}, {hi}]")]
    ImproperInterval { lo: f64, hi: f64 },

    /// An interval literal could not be parsed.
    #[error("invalid interval literal `{0}`")]
    ParseInterval(String),

    /// A system failed structural validation (dimensions, finiteness,
    /// properness, or a prefix that is not a permutation of the parameters).
    #[error("invalid system: {0}")]
    InvalidSystem(String),

    /// The membership deciders only accept prefixes in which, for every
    /// equality row, all universal parameters of that row precede its
    /// existential ones.
    #[error("prefix outside class Q^sigma: equality row {row} mixes exists before forall")]
    PrefixOutsideQSigma { row: usize },

    /// The corner-enumeration oracle needs the row's universal parameters
    /// to precede its existential ones.
    #[error("equality row {row} does not have an AE (forall-before-exists) prefix")]
    EqRowNotAe { row: usize },

    /// The brute-force oracle refuses systems beyond desk scale.
    #[error("oracle refuses systems larger than {max_m}x{max_n} (got {m}x{n})")]
    OracleTooLarge {
        m: usize,
        n: usize,
        max_m: usize,
        max_n: usize,
    },

    /// The prefix-recursion evaluator enumerates endpoint assignments of
    /// every parameter and is capped to keep that enumeration tractable.
    #[error("prefix recursion refuses systems with more than {max} parameters (got {got})")]
    TooManyParameters { got: usize, max: usize },

    /// The prefix-recursion evaluator is only exact on inequality rows.
    #[error("prefix recursion requires an inequality-only system (row {row} is an equality)")]
    EqualityRowInRecursion { row: usize },

    /// A real point with the wrong number of coordinates was supplied.
    #[error("point has {got} coordinates but the system has {expected} columns")]
    PointDimension { got: usize, expected: usize },
}
