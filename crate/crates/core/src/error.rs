use crate::antenna::AntennaConfig;
use crate::rational::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("antenna counts must be positive, got {0:?}")]
    ZeroAntenna([u32; 4]),

    #[error("antenna tuple {0} violates M1<=N1, N1<=M1+M2, N2<=M2, M2<=N1+N2")]
    NonCanonical(AntennaConfig),

    #[error("interference exponent must be non-negative, got {0}")]
    NegativeAlpha(Rational),

    #[error("cannot parse rational from {0:?}")]
    InvalidRational(String),

    #[error("cannot parse antenna tuple from {0:?} (expected M1,M2,N1,N2)")]
    InvalidConfig(String),

    #[error("invalid alpha grid {0:?}: {1}")]
    InvalidGrid(String, &'static str),

    #[error("half-plane with zero normal")]
    ZeroNormal,

    #[error("half-plane intersection is unbounded")]
    UnboundedRegion,

    #[error("half-plane intersection is empty")]
    EmptyRegion,

    #[error("power exponent A2 = {a2} outside the admissible range [{lo}, {hi}]")]
    A2OutOfRange {
        a2: Rational,
        lo: Rational,
        hi: Rational,
    },

    #[error("allocation requires {expected} interference (alpha = {alpha})")]
    WrongRegime {
        expected: &'static str,
        alpha: Rational,
    },

    #[error("verification failed for {config} at alpha = {alpha}: {constraint}")]
    VerificationFailure {
        config: AntennaConfig,
        alpha: Rational,
        constraint: String,
    },

    #[error("loss decomposition mismatch for {config}, alpha = {alpha}, r = {r}: {detail}")]
    DecompositionMismatch {
        config: AntennaConfig,
        alpha: Rational,
        r: u32,
        detail: String,
    },

    #[error("rank deficit r = {r} exceeds M2 = {m2}")]
    RankOutOfRange { r: u32, m2: u32 },

    #[error("malformed region document: {0}")]
    Document(String),
}
