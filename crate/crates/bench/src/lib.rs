//! Fixtures shared by the criterion benchmarks.

use empowerment_core::scenarios::{build_experiment1, build_experiment3};
use empowerment_core::{Embodiment, WorldState};

/// Starting world of the lava-spreading scenario.
pub fn lava_world() -> WorldState {
    build_experiment3(0)
        .build_world()
        .expect("built-in scenario is valid")
}

/// Starting world of the embodiment scenario.
pub fn column_world(e: Embodiment) -> WorldState {
    build_experiment1(e, 0)
        .build_world()
        .expect("built-in scenario is valid")
}
