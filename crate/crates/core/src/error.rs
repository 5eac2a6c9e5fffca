use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("sampling failure: evaluator returned a non-finite value at z = {point}")]
    SamplingFailure { point: Complex64 },

    #[error(
        "coefficient {index} disagrees between sampling radii by {discrepancy:e} \
         (allowed {allowed:e}); function is not analytic on the sampling disc"
    )]
    NotAnalyticOnSamplingDisc {
        index: usize,
        discrepancy: f64,
        allowed: f64,
    },

    #[error("degenerate linear fractional map (ad - bc = 0)")]
    DegenerateMobius,

    #[error("not a self-map of the disc: {0}")]
    NotASelfMap(String),

    #[error("unknown catalogue id `{0}`")]
    UnknownCatalogueId(String),

    #[error("boundary extrapolation did not converge for derivative order {order} (spread {spread:e})")]
    LowSmoothness { order: usize, spread: f64 },

    #[error("boundary jet has no third derivative")]
    MissingThirdDerivative,

    #[error("{context} did not converge; last points: {last_points:?}")]
    NonConvergence {
        context: String,
        last_points: Vec<Complex64>,
    },

    #[error("parabolic type is indeterminate: Re(ωφ''(ω)) = {value:e} with no third-derivative data")]
    IndeterminateType { value: f64 },

    #[error("hypothesis of {theorem} violated: {detail}")]
    HypothesisViolation { theorem: String, detail: String },

    #[error("parameter out of admissible range: {0}")]
    ParameterOutOfRange(String),
}

impl Error {
    pub(crate) fn hypothesis(theorem: &str, detail: impl Into<String>) -> Self {
        Error::HypothesisViolation {
            theorem: theorem.to_string(),
            detail: detail.into(),
        }
    }
}
