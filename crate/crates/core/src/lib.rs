//! Empowerment-driven agents in a deterministic voxel block world.
//!
//! The crate is layered bottom-up:
//!
//! * [`info_theory`]: entropy, mutual information and a Blahut–Arimoto
//!   capacity solver.
//! * [`blockworld`]: the voxel world, agent embodiments and turn dynamics
//!   (movement, gravity, lava).
//! * [`empowerment`]: exact and sparse-sampled n-step empowerment under the
//!   location sensor, plus estimator-quality tools.
//! * [`controller`]: the greedy empowerment-maximizing decision rule.
//! * [`scenarios`]: experiment worlds, episode runner, traces and analysis.

pub mod blockworld;
pub mod controller;
pub mod empowerment;
pub mod error;
pub mod info_theory;
pub mod rng;
pub mod scenarios;

pub use blockworld::{
    action_set, step, Action, Cell, Dims, Embodiment, Inventory, Pos, WorldState,
};
pub use controller::{choose_action, Decision, Estimator};
pub use empowerment::{exact_empowerment, sparse_empowerment, EmpowermentEstimate, SensorReading};
pub use error::{Error, Result};
pub use info_theory::{channel_capacity, CapacityResult, Channel, Distribution};
pub use rng::StreamKey;
pub use scenarios::{run_episode, Episode, ScenarioConfig, TurnRecord};
