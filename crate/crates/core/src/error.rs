use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:e})")]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("sign-vector search incomplete: n = {n} exceeds the exhaustive cap of {cap} and rounding fallback is disabled")]
    SearchIncomplete { n: usize, cap: usize },

    #[error("degree counts are not class-constant: {0}")]
    NotClassConstant(String),

    #[error("structural error in partition: {0}")]
    Structural(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("step size underflow at t = {t}: required step {h:e} < 1e-14")]
    Stiffness { t: f64, h: f64 },

    #[error("non-finite state at t = {t}")]
    Divergence { t: f64 },

    #[error("degenerate tangent frame at t = {t}: column norm {norm:e}")]
    DegenerateFrame { t: f64, norm: f64 },

    #[error("no oscillation: the series has an all-zero spectrum")]
    NoOscillation,

    #[error("graph is disconnected")]
    Disconnected,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NoConvergence { .. }
            | Error::Stiffness { .. }
            | Error::Divergence { .. }
            | Error::DegenerateFrame { .. }
            | Error::NotClassConstant(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
