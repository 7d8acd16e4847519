use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the numerical layers.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("c out of range: {0} not in (0, 1)")]
    COutOfRange(f64),
    #[error("kappa must be positive, got {0}")]
    KappaNonPositive(f64),
    #[error("negative Robin parameter {name} = {value}")]
    NegativeRobin { name: &'static str, value: f64 },
    #[error("Neumann pair rejected: beta0 = beta1 = 0 has no positive principal eigenvalue")]
    NeumannPair,
    #[error("placement a = {a} outside [0, {max}]")]
    PlacementOutOfRange { a: f64, max: f64 },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),

    #[error("negative propagation length {0}")]
    NegativeLength(f64),
    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(f64),
    #[error("weight value must be nonzero")]
    ZeroWeight,
    #[error("propagator argument {0} exceeds the supported range")]
    ArgumentTooLarge(f64),
    #[error("position x = {0} outside [0, 1]")]
    PositionOutOfRange(f64),

    #[error("degenerate configuration: |A(a)| = {0} below 1e-12")]
    DegenerateA(f64),
    #[error("a* undefined: artanh argument {0} has magnitude >= 1")]
    AStarUndefined(f64),
    #[error("limit equation has a pole at lambda = {0}")]
    Pole(f64),
    #[error("Lou-Yanagida limit equations require a = 0, got {0}")]
    LouRequiresLeftPlacement(f64),

    #[error("invalid bracket [{lo}, {hi}]: residuals {r_lo}, {r_hi}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        r_lo: f64,
        r_hi: f64,
    },
    #[error("non-finite residual {value} at lambda = {lambda}")]
    NonFiniteResidual { lambda: f64, value: f64 },
    #[error("no bracket found after {0} refinements")]
    NoBracket(usize),
    #[error("no positive eigenfunction among {0} roots")]
    NoPositiveEigenfunction(usize),
    #[error("weighted norm of the eigenfunction is not positive: {0}")]
    NonPositiveWeightedNorm(f64),
}

impl Error {
    /// True for errors caused by rejected inputs rather than numerical failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::COutOfRange(_)
                | Error::KappaNonPositive(_)
                | Error::NegativeRobin { .. }
                | Error::NeumannPair
                | Error::PlacementOutOfRange { .. }
                | Error::InvalidConfig(_)
                | Error::NegativeLength(_)
                | Error::NonPositiveLambda(_)
                | Error::ZeroWeight
                | Error::PositionOutOfRange(_)
                | Error::LouRequiresLeftPlacement(_)
        )
    }
}
