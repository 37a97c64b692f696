//! Random small worlds shared by the integration tests.

#![allow(dead_code)]

use empowerment_core::{Cell, Dims, Embodiment, Inventory, Pos, WorldState};
use rand::Rng;

/// A random world with each side in `1..=max_side`, random terrain and a
/// living agent on an empty cell.
pub fn random_world(rng: &mut impl Rng, max_side: i32) -> WorldState {
    let dims = Dims::new(
        rng.random_range(1..=max_side),
        rng.random_range(1..=max_side),
        rng.random_range(1..=max_side),
    )
    .unwrap();
    let agent = Pos::new(
        rng.random_range(0..dims.width),
        rng.random_range(0..dims.depth),
        rng.random_range(0..dims.height),
    );
    let mut w = WorldState::new(dims, agent).unwrap();
    for z in 0..dims.height {
        for y in 0..dims.depth {
            for x in 0..dims.width {
                let c = match rng.random_range(0..20) {
                    0..=6 => Cell::Earth,
                    7..=8 => Cell::Lava,
                    _ => Cell::Empty,
                };
                w.set_cell(Pos::new(x, y, z), c).unwrap();
            }
        }
    }
    w.set_cell(agent, Cell::Empty).unwrap();
    if rng.random_bool(0.5) {
        w.set_inventory(Inventory::HoldsEarth);
    }
    let period = [None, Some(1), Some(2), Some(5)][rng.random_range(0..4)];
    w.set_lava_period(period).unwrap();
    w.set_turn(rng.random_range(0..10));
    w
}

pub fn random_embodiment(rng: &mut impl Rng) -> Embodiment {
    Embodiment::ALL[rng.random_range(0..3)]
}
