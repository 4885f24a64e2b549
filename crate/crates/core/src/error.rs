//! Error types shared across the crate.

use num_rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cyclotomic order {order} does not divide target order {target}")]
    NonDivisibleOrder { order: u64, target: u64 },

    #[error("exponent vector has {got} entries, profile expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("weight A_beta' = {0} is an integer; no hypergeometric closed form applies")]
    IntegerWeight(BigRational),

    #[error("weight A_beta equals the pole order; the increment formula has a pole")]
    WeightEqualsOrder,

    #[error("polynomial has vanishing discriminant (gcd with derivative is nontrivial)")]
    ZeroDiscriminant,

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("{0} and {1} are not coprime")]
    NotCoprime(u32, u32),

    #[error("constraint system has {unknowns} unknowns, above the exact-solver limit {limit}")]
    TooLarge { unknowns: usize, limit: usize },

    #[error("integration path meets a zero of the perturbation polynomial: {0}")]
    BranchAmbiguity(String),

    #[error("argument lies on the branch cut [1, inf)")]
    BranchCut,

    #[error("contiguous shifts cannot reach the region c > a > 0")]
    NonNormalizable,

    #[error("gamma function pole at a non-positive integer")]
    PoleOfGamma,

    #[error("lattice basis rows are linearly dependent")]
    DependentRows,

    #[error("no contiguous relation applies to the remaining terms")]
    NoApplicableRelation,

    #[error("usage: {0}")]
    Usage(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
