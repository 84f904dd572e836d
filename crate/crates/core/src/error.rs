use thiserror::Error;

/// Which end of a profile curve an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Start,
    Finish,
}

impl std::fmt::Display for End {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            End::Start => f.write_str("start"),
            End::Finish => f.write_str("end"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate tangent: vertical component {v2:e} is too small for the general frame formula")]
    DegenerateTangent { v2: f64 },
    #[error("index {index} has no centered stencil in a curve with {len} samples")]
    BoundaryIndex { index: usize, len: usize },
    #[error("AxisContact: sample {index} has y = {y:e}")]
    AxisContact { index: usize, y: f64 },
    #[error("need at least {needed} samples, got {got}")]
    InsufficientResolution { needed: usize, got: usize },
    #[error("{end} of the curve does not match the boundary data: {what} off by {deviation:e}")]
    BoundaryMismatch {
        end: End,
        what: &'static str,
        deviation: f64,
    },
    #[error("offset s0 = 0 puts the singularity at infinity")]
    ZeroOffset,
    #[error("|x| = alpha is reached by a half circle")]
    HalfCircleCase,
    #[error("x = {x} is outside the range of the {branch} branch")]
    BranchMismatch { x: f64, branch: &'static str },
    #[error("no critical arc reaches the point behind the start tangent (energy limit 8)")]
    NoCriticalArc,
    #[error("step failure: step size fell to {tau:e} without sufficient decrease")]
    StepFailure { tau: f64 },
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
