use thiserror::Error;

/// Everything that can go wrong inside the simulator.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("rate `{name}` is negative ({value})")]
    NegativeRate { name: &'static str, value: f64 },

    #[error("total cavity decay kappa1 + kappa2 + kappa_loss must be > 0")]
    ZeroCavity,

    #[error("bad time step: {0}")]
    BadStep(String),

    #[error("pulse cannot be resolved on the grid: {0}")]
    DegeneratePulse(String),

    #[error("invalid pulse: {0}")]
    InvalidPulse(String),

    #[error("signals live on different time grids")]
    GridMismatch,

    #[error("pulsed dynamics require zero detunings (delta_a = {delta_a}, delta_c = {delta_c})")]
    Detuned { delta_a: f64, delta_c: f64 },

    #[error("step-doubling check failed: output norm moved by {deviation:e} (tolerance {tolerance:e})")]
    NonConverged { deviation: f64, tolerance: f64 },

    #[error("signal has zero norm")]
    ZeroSignal,

    #[error("expected {expected} qubits, found {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("all branch coefficients on this detector vanish")]
    Degenerate,

    #[error("links do not share a consistent first qubit")]
    SharedQubitMismatch,

    #[error("coupling search bracket [{lo}, {hi}] does not change sign")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    #[error("config key `{key}`: {reason}")]
    ConfigInvalid { key: String, reason: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable upper-case name of the failure kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NegativeRate { .. } => "NEGATIVE_RATE",
            Error::ZeroCavity => "ZERO_CAVITY",
            Error::BadStep(_) => "BAD_STEP",
            Error::DegeneratePulse(_) => "DEGENERATE_PULSE",
            Error::InvalidPulse(_) => "INVALID_PULSE",
            Error::GridMismatch => "GRID_MISMATCH",
            Error::Detuned { .. } => "DETUNED",
            Error::NonConverged { .. } => "NON_CONVERGED",
            Error::ZeroSignal => "ZERO_SIGNAL",
            Error::WrongArity { .. } => "WRONG_ARITY",
            Error::Degenerate => "DEGENERATE",
            Error::SharedQubitMismatch => "SHARED_QUBIT_MISMATCH",
            Error::NoSignChange { .. } => "NO_SIGN_CHANGE",
            Error::InvalidNetwork(_) => "INVALID_NETWORK",
            Error::ConfigInvalid { .. } => "CONFIG_INVALID",
            Error::Io(_) => "IO",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
