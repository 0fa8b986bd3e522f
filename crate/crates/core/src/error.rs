use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("curve `{id}`: {reason}")]
    InvalidCurve { id: String, reason: String },

    #[error("curve `{id}`: t = {t} is outside the observed span [{lo}, {hi}]")]
    Extrapolation {
        id: String,
        t: f64,
        lo: f64,
        hi: f64,
    },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("duplicate curve id `{0}`")]
    DuplicateId(String),

    #[error("degree J = {j} exceeds the reference size n = {n}")]
    DegreeTooLarge { j: usize, n: usize },

    #[error("degree J must be at least 1")]
    ZeroDegree,

    #[error("draw count K must be at least 1")]
    ZeroDraws,

    #[error("exact enumeration needs {subsets} subsets (limit {limit})")]
    SubsetBudget { subsets: f64, limit: f64 },

    #[error("population enumeration needs {tuples} tuples (limit {limit})")]
    EnumerationBudget { tuples: f64, limit: f64 },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("rankings do not share the same id set")]
    MismatchedIds,
}
