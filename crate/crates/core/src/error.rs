//! Error type shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A word letter was zero; letters are positive integers.
    #[error("letter at position {position} must be a positive integer")]
    InvalidLetter { position: usize },

    /// An operation that needs a permutation got something else.
    #[error("word of length {len} is not a permutation of 1..={len}")]
    NotAPermutation { len: usize },

    /// Positions and heights are 1-indexed; zero is meaningless.
    #[error("position and height are 1-indexed; got position {position}, height {height}")]
    ZeroPositionOrHeight { position: u64, height: u64 },

    /// A parameter was outside the documented domain of an operation.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An exhaustive enumeration would visit more items than allowed.
    #[error("{items} items to enumerate exceed the budget of {budget}")]
    BudgetExceeded { items: u128, budget: u64 },

    /// A permanent was requested for a matrix above the hard size limit.
    #[error("permanent of a {n}x{n} matrix exceeds the size limit {limit}")]
    PermanentTooLarge { n: usize, limit: usize },

    /// A polynomial product would exceed the total-degree cap.
    #[error("polynomial total degree {degree} exceeds the cap of {cap}")]
    DegreeCapExceeded { degree: u64, cap: u32 },

    /// Division by a series that is zero through its whole truncation order.
    #[error("division by a series with no nonzero coefficient")]
    DivisionByZeroSeries,

    /// Series division is only defined when the numerator's low-order zeros
    /// cover the divisor's leading zeros.
    #[error("series division is inexact: numerator valuation {numerator} < divisor valuation {divisor}")]
    InexactSeriesDivision { numerator: usize, divisor: usize },

    /// Series square roots are only taken on the branch with constant term 1.
    #[error("series square root needs constant term 1, found {found}")]
    SqrtBranchUnsupported { found: String },

    /// A Laurent diagonal expansion needed more geometric terms than the
    /// exact-arithmetic bound allows.
    #[error("diagonal expansion needs {needed} terms, above the bound of {bound}")]
    ExpansionBoundExceeded { needed: usize, bound: usize },

    /// A floating-point estimate was requested outside its valid range.
    #[error("argument must exceed 1, got {found}")]
    ArgumentOutOfRange { found: f64 },

    /// Asymptotics for balanced permutations only exist where the count is
    /// nonzero, i.e. n = 0 or 3 mod 4.
    #[error("no asymptotic at n = {n}: the count vanishes unless n = 0 or 3 (mod 4)")]
    VanishingCount { n: u64 },

    /// Two routes that must agree disagreed, or an integrality guarantee
    /// failed. Always a bug, never user error.
    #[error("internal inconsistency in {context}: {detail}")]
    Internal { context: &'static str, detail: String },

    /// A serialized polynomial or series did not parse back.
    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },
}
