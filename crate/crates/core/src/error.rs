use thiserror::Error;

/// Errors shared by all modules of the crate.
///
/// Contract violations (composing constants, mixing elements of different
/// fields) panic instead; `Error` is reserved for conditions that depend on
/// run-time data: bad field parameters, singular inputs, and exhausted
/// search budgets.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree m must be at least 1")]
    ZeroExtensionDegree,
    #[error("field size {q} exceeds the supported bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },
    #[error("modulus must be monic of degree {expected}, got {got}")]
    BadModulus { expected: usize, got: String },
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("function of degree {0} is not a unit")]
    NotAUnit(usize),
    #[error("coefficient matrix is singular: ad - bc = 0")]
    SingularMoebius,
    #[error("group of order {order} exceeds the lattice-enumeration bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },
    #[error("unit group of F_{q} has {count} elements, above the enumeration bound {bound}")]
    UnitEnumerationTooLarge { q: u64, count: u64, bound: u64 },
    #[error("declared search space of {declared} candidates exceeds the budget {cap}")]
    BudgetExceeded { declared: u128, cap: u64 },
    #[error("not a subgroup of the given group")]
    NotASubgroup,
    #[error("subgroup is not contained in the affine group")]
    NotInGamma0,
    #[error("expected a polynomial, got a function with nonconstant denominator")]
    NotAPolynomial,
    #[error("the two decompositions compose to different functions")]
    CompositionsDiffer,
    #[error("composition does not fix infinity (deg num <= deg den)")]
    DeltaNotPositive,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

impl Error {
    /// True for errors caused by an exhausted search or enumeration budget,
    /// as opposed to invalid input.
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::GroupTooLarge { .. }
                | Error::UnitEnumerationTooLarge { .. }
                | Error::BudgetExceeded { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
