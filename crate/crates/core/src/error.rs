use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse monomial {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("variable index {index} outside 1..={n}")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("the constant monomial has no variable")]
    NoVariable,

    #[error("invalid instance: {0}")]
    InvalidSpec(String),

    #[error("invalid tier {0}; expected 0..=4")]
    InvalidTier(u8),

    /// `#B_d` fell below the expected Hilbert function value, which cannot
    /// happen for a generic sequence.
    #[error(
        "genericity violation at degree {degree}: #B_d = {b_d_size} < h({degree}) = {expected}"
    )]
    GenericityViolation {
        degree: u32,
        b_d_size: usize,
        expected: i128,
    },

    #[error("no standard monomials left at degree {degree} before the degree bound {bound}")]
    InconsistentState { degree: u32, bound: u32 },

    #[error("{0} is not an odd prime")]
    InvalidPrime(u32),

    #[error("oracle budget exceeded: {count} monomials at degree {degree} (budget {budget})")]
    BudgetExceeded {
        degree: u32,
        count: u128,
        budget: u128,
    },

    #[error("polynomial sequence is empty or not homogeneous")]
    NotHomogeneous,

    #[error("cannot start worker threads: {0}")]
    ThreadPool(String),
}
