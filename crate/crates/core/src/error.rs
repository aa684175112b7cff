use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid triangulation ({invariant}): {detail}")]
    InvalidTriangulation {
        invariant: &'static str,
        detail: String,
    },

    #[error("flip not defined at edge {edge}: both sides lie in triangle {triangle}")]
    FlipNotDefined { edge: usize, triangle: usize },

    #[error("matrix is not factorizable as u(x)v(y)u(z): lower-left entry {c} is zero")]
    NotFactorizable { c: f64 },

    #[error("matrix is not hyperbolic: |trace| = {trace}")]
    NotHyperbolic { trace: f64 },

    #[error("word is not a loop: endpoint {endpoint:?} is not ±identity")]
    NotALoop { endpoint: [[f64; 2]; 2] },

    #[error("angle residual {residual} exceeds the rounding gate; subdivide further")]
    StepTooCoarse { residual: f64 },

    #[error("sampler failed after {attempts} attempts: {detail}")]
    SamplerFailed { attempts: usize, detail: String },

    #[error("edge {edge} is degenerate: lower-left entry {c} of its holonomy vanishes")]
    EdgeDegenerate { edge: usize, c: f64 },

    #[error("flip at edge {edge} is degenerate: the new edge has vanishing λ-length")]
    FlipDegenerate { edge: usize },

    #[error("convention mismatch: {0}")]
    ConventionMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal assertion failed: {0}")]
    InternalAssertion(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
