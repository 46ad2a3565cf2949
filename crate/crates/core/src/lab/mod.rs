//! Dealing-method studies: the method catalog, comparisons, the two- and
//! three-color sweeps, sequence search and the Monte Carlo shuffler.

mod catalog;
mod sample;
mod search;
mod studies;

pub use catalog::{conjectured_method, MethodSpec, CONJECTURED_SEQUENCE};
pub use sample::{
    sample_a_shuffle, sample_permutation, simulate_hand_distribution, ShuffleSample, SimulationReport,
};
pub use search::{search_dealing, SearchConfig, SearchObjective, SearchOutcome, SearchStrategy, EXHAUSTIVE_CAP};
pub use studies::{
    compare_methods, conjecture_metric, grid_three_types, three_type_coefficient, two_type_sweep, GridCell,
    SweepRow,
};
