//! Lower-bound machinery: exhaustive window search, density windows and the
//! density sum.

pub mod alpha;
pub mod density;
pub mod search;

pub use alpha::{density_lower_bound, fit_alpha, AlphaRule, LowerBound};
pub use density::{density_window_bound, DensityBound, DensityCheckpoint, DensityOptions};
pub use search::{
    search_colorability, search_finite_graph, Budget, Checkpoint, DistanceMatrix, DistanceMode,
    SearchOptions, SearchOutcome, SearchProblem, SearchStats, Status,
};
