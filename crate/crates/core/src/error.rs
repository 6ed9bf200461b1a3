use thiserror::Error;

use crate::bounds::density::DensityCheckpoint;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph D({k},{t}): need 0 < k < t")]
    InvalidSpec { k: u64, t: u64 },
    #[error("D({k},{t}) is not connected; normalize it first")]
    NotCoprime { k: u64, t: u64 },
    #[error("offset {delta} is not reachable from 0")]
    UnreachableVertex { delta: i64 },
    #[error("window length exceeds the search limit {limit}")]
    LimitExceeded { limit: u64 },
    #[error("color {color} does not occur in the word")]
    ColorAbsent { color: u32 },
    #[error("no construction applies: {0}")]
    NotApplicable(String),
    #[error("assembly infeasible: {0}")]
    AssemblyInfeasible(String),
    #[error("no periodic word found for colors {l}..={}", 3 * l + 2)]
    SearchExhausted { l: u32 },
    #[error("window sizes are not affine in i: {values:?}")]
    NotAffine { values: Vec<(u32, u64)> },
    #[error("alpha rule starts at i = {i_min} but the density sum starts at {}", q + 1)]
    RuleRangeMismatch { q: u32, i_min: u32 },
    #[error("search budget exhausted after {} window lengths", .0.maxima.len().saturating_sub(1))]
    BudgetExceeded(Box<DensityCheckpoint>),
    #[error("invalid search problem: {0}")]
    InvalidProblem(String),
    #[error("invalid distance matrix: {0}")]
    InvalidDistanceMatrix(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("checkpoint does not match the problem: {0}")]
    CheckpointMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    /// Stable snake_case name of the variant, used in machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidSpec { .. } => "invalid_spec",
            Error::NotCoprime { .. } => "not_coprime",
            Error::UnreachableVertex { .. } => "unreachable_vertex",
            Error::LimitExceeded { .. } => "limit_exceeded",
            Error::ColorAbsent { .. } => "color_absent",
            Error::NotApplicable(_) => "not_applicable",
            Error::AssemblyInfeasible(_) => "assembly_infeasible",
            Error::SearchExhausted { .. } => "search_exhausted",
            Error::NotAffine { .. } => "not_affine",
            Error::RuleRangeMismatch { .. } => "rule_range_mismatch",
            Error::BudgetExceeded(_) => "budget_exceeded",
            Error::InvalidProblem(_) => "invalid_problem",
            Error::InvalidDistanceMatrix(_) => "invalid_distance_matrix",
            Error::Parse { .. } => "parse",
            Error::CheckpointMismatch(_) => "checkpoint_mismatch",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Internal(_) => "internal",
        }
    }
}
