//! Experiment harness: scenario worlds, seeded episodes, traces, the
//! estimator study and outcome analysis.

mod analysis;
mod config;
mod episode;
mod study;

pub use analysis::{
    block_modifications, central_axis_cleared, central_axis_ever_removed, classify_outcome_exp3,
    exp2_crossing_turn, Outcome, AXIS_LAYERS, DAM_MIN_REGION,
};
pub use config::{
    build_experiment1, build_experiment2, build_experiment3, builtin, EarthSlab, ScenarioConfig,
    BUILTIN_NAMES, EXP2_FAR_SIDE_X, EXP2_TURNS, EXP3_SURFACE_Z,
};
pub use episode::{
    counterfactual_counts, provenance_line, render_snapshots, render_trace, run_episode, Episode,
    TurnRecord,
};
pub use study::{default_grid, parse_grid, run_estimator_study, StudyRow, StudyTable};
