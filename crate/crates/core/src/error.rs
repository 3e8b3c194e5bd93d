use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Evaluation hit a pole of a function (digamma argument, non-interacting energy, ...).
    #[error("pole at {at}")]
    Pole { at: f64 },

    #[error("argument outside domain: {0}")]
    Domain(String),

    #[error("angular momentum {l} exceeds the factorial table bound {bound}")]
    Overflow { l: u32, bound: u32 },

    #[error("quadrature order {order} below required {required}")]
    InsufficientOrder { order: usize, required: usize },

    #[error("no basis state satisfies the cutoff for L = {l}, cutoff = {cutoff}")]
    EmptyBasis { l: u32, cutoff: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("extrapolation did not converge: estimates {coarse} and {fine} differ by more than {tolerance}")]
    NonConvergence { coarse: f64, fine: f64, tolerance: f64 },

    #[error("failed to bracket root on band {band}, branch {branch}: {detail}")]
    BracketFailure { band: u32, branch: usize, detail: String },

    #[error("no sign change of the fit function in R = [{r_min}, {r_max}] fm")]
    NoBracket { r_min: f64, r_max: f64 },

    #[error("energy level crosses a non-interacting pole at R = {r} fm")]
    PoleCollision { r: f64 },

    #[error("channel S = {s}, T = {t} violates the antisymmetry selection rule")]
    SelectionRule { s: u8, t: u8 },

    #[error("{failed} of {total} Monte-Carlo samples failed")]
    TooManyFailures { failed: usize, total: usize },

    #[error("invalid halo system description: {0}")]
    Schema(String),

    #[error("version mismatch: expected {expected}, found {found}")]
    VersionMismatch { expected: String, found: String },
}

impl Error {
    pub fn is_pole(&self) -> bool {
        matches!(self, Error::Pole { .. })
    }
}
