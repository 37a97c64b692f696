use super::{Action, Cell, Direction, Embodiment, Inventory, WorldState};
use crate::error::{Error, Result};

/// The agent's half of a turn. Pure; the input is not modified.
pub fn apply_action(w: &WorldState, a: Action, e: Embodiment) -> Result<WorldState> {
    check_legal(a, e)?;
    let mut next = w.clone();
    next.act(a, e);
    Ok(next)
}

/// The world's half of a turn: turn counter, gravity, lava spread, death.
pub fn world_update(w: &WorldState, e: Embodiment) -> WorldState {
    let mut next = w.clone();
    next.update(e);
    next
}

/// One full turn: `world_update(apply_action(w, a, e))`.
pub fn step(w: &WorldState, a: Action, e: Embodiment) -> Result<WorldState> {
    check_legal(a, e)?;
    let mut next = w.clone();
    next.step_in_place(a, e);
    Ok(next)
}

fn check_legal(a: Action, e: Embodiment) -> Result<()> {
    if matches!(a, Action::MoveUp | Action::MoveDown) && e != Embodiment::Flying {
        return Err(Error::IllegalAction {
            action: a,
            embodiment: e,
        });
    }
    Ok(())
}

impl WorldState {
    /// In-place turn used by the rollout hot path. The caller guarantees the
    /// action belongs to `action_set(e)`.
    #[inline]
    pub(crate) fn step_in_place(&mut self, a: Action, e: Embodiment) {
        self.act(a, e);
        self.update(e);
    }

    fn act(&mut self, a: Action, e: Embodiment) {
        if !self.alive {
            return;
        }
        match a {
            Action::MoveNorth => self.walk(Direction::North, e),
            Action::MoveEast => self.walk(Direction::East, e),
            Action::MoveSouth => self.walk(Direction::South, e),
            Action::MoveWest => self.walk(Direction::West, e),
            Action::MoveUp => self.walk(Direction::Up, e),
            Action::MoveDown => self.walk(Direction::Down, e),
            Action::InteractUp => self.interact(Direction::Up),
            Action::InteractDown => self.interact(Direction::Down),
            Action::InteractNorth => self.interact(Direction::North),
            Action::InteractSouth => self.interact(Direction::South),
            Action::InteractEast => self.interact(Direction::East),
            Action::InteractWest => self.interact(Direction::West),
            Action::DoNothing => {}
            Action::Destroy => self.inventory = Inventory::Empty,
        }
    }

    fn walk(&mut self, d: Direction, e: Embodiment) {
        let target = self.agent.shifted(d);
        match self.cell(target) {
            None => {}
            Some(Cell::Empty) => self.agent = target,
            Some(_) => {
                let lateral = !matches!(d, Direction::Up | Direction::Down);
                if e == Embodiment::Climbing && lateral {
                    let above = target.shifted(Direction::Up);
                    if self.cell(above) == Some(Cell::Empty) {
                        self.agent = above;
                    }
                }
            }
        }
    }

    fn interact(&mut self, d: Direction) {
        let target = self.agent.shifted(d);
        let Some(c) = self.cell(target) else { return };
        let i = self.dims.index(target);
        match (self.inventory, c) {
            (Inventory::Empty, Cell::Earth) => {
                self.grid[i] = Cell::Empty;
                self.inventory = Inventory::HoldsEarth;
            }
            (Inventory::HoldsEarth, Cell::Empty) => {
                self.grid[i] = Cell::Earth;
                self.inventory = Inventory::Empty;
            }
            _ => {}
        }
    }

    fn update(&mut self, e: Embodiment) {
        self.turn += 1;

        if self.alive && e != Embodiment::Flying {
            let below = self.agent.shifted(Direction::Down);
            if self.cell(below) == Some(Cell::Empty) {
                self.agent = below;
            }
        }

        if let Some(period) = self.lava_period {
            if self.turn.is_multiple_of(u64::from(period)) {
                self.spread_lava();
            }
        }

        if self.alive && self.touches_lava(self.agent) {
            self.alive = false;
        }
    }

    /// One synchronous generation of lava growth, computed from the current
    /// lava set and applied afterwards.
    fn spread_lava(&mut self) {
        let mut targets: Vec<usize> = Vec::new();
        for (i, &c) in self.grid.iter().enumerate() {
            if c != Cell::Lava {
                continue;
            }
            let p = self.dims.pos_of(i);
            let below = p.shifted(Direction::Down);
            // The floor of the world supports lava like earth does.
            let support = if below.z < 0 {
                Some(Cell::Earth)
            } else {
                self.cell(below)
            };
            match support {
                Some(Cell::Empty) => {
                    if below != self.agent {
                        targets.push(self.dims.index(below));
                    }
                }
                Some(Cell::Earth) => {
                    for d in Direction::LATERAL {
                        let n = p.shifted(d);
                        if n != self.agent && self.cell(n) == Some(Cell::Empty) {
                            targets.push(self.dims.index(n));
                        }
                    }
                }
                _ => {}
            }
        }
        for i in targets {
            self.grid[i] = Cell::Lava;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::{action_set, Dims, Pos};
    use super::*;

    fn flat(e_dims: (i32, i32, i32), ground_top: i32, agent: Pos) -> WorldState {
        let d = Dims::new(e_dims.0, e_dims.1, e_dims.2).unwrap();
        let mut w = WorldState::new(d, agent).unwrap();
        if ground_top >= 0 {
            w.fill_layers(0, ground_top, Cell::Earth).unwrap();
        }
        w
    }

    #[test]
    fn climbing_steps_up_one() {
        let mut w = flat((3, 3, 4), 0, Pos::new(1, 1, 1));
        w.set_cell(Pos::new(1, 2, 1), Cell::Earth).unwrap();
        let c = apply_action(&w, Action::MoveNorth, Embodiment::Climbing).unwrap();
        assert_eq!(c.agent_pos(), Pos::new(1, 2, 2));
        let n = apply_action(&w, Action::MoveNorth, Embodiment::NonClimbing).unwrap();
        assert_eq!(n.agent_pos(), Pos::new(1, 1, 1));
        let f = apply_action(&w, Action::MoveNorth, Embodiment::Flying).unwrap();
        assert_eq!(f.agent_pos(), Pos::new(1, 1, 1));
    }

    #[test]
    fn climb_blocked_by_two_high_wall() {
        let mut w = flat((3, 3, 4), 0, Pos::new(1, 1, 1));
        w.set_cell(Pos::new(1, 2, 1), Cell::Earth).unwrap();
        w.set_cell(Pos::new(1, 2, 2), Cell::Earth).unwrap();
        let c = apply_action(&w, Action::MoveNorth, Embodiment::Climbing).unwrap();
        assert_eq!(c.agent_pos(), Pos::new(1, 1, 1));
    }

    #[test]
    fn boundaries_are_walls() {
        let w = flat((2, 2, 3), 0, Pos::new(0, 0, 1));
        for a in [Action::MoveSouth, Action::MoveWest] {
            assert_eq!(apply_action(&w, a, Embodiment::Climbing).unwrap(), w);
        }
        let mut held = w.clone();
        held.set_inventory(Inventory::HoldsEarth);
        assert_eq!(
            apply_action(&held, Action::InteractWest, Embodiment::Climbing).unwrap(),
            held
        );
    }

    #[test]
    fn take_and_place() {
        let w = flat((3, 3, 4), 1, Pos::new(1, 1, 2));
        let took = apply_action(&w, Action::InteractDown, Embodiment::Climbing).unwrap();
        assert_eq!(took.inventory(), Inventory::HoldsEarth);
        assert_eq!(took.cell(Pos::new(1, 1, 1)), Some(Cell::Empty));
        // already holding: interacting with earth is a no-op
        let mut walled = took.clone();
        walled.set_cell(Pos::new(1, 0, 2), Cell::Earth).unwrap();
        let again = apply_action(&walled, Action::InteractSouth, Embodiment::Climbing).unwrap();
        assert_eq!(again, walled);
        let placed = apply_action(&took, Action::InteractNorth, Embodiment::Climbing).unwrap();
        assert_eq!(placed.inventory(), Inventory::Empty);
        assert_eq!(placed.cell(Pos::new(1, 2, 2)), Some(Cell::Earth));
        let gone = apply_action(&took, Action::Destroy, Embodiment::Climbing).unwrap();
        assert_eq!(gone.inventory(), Inventory::Empty);
        assert_eq!(gone.block_total() + 1, took.block_total());
        // destroy with nothing held is legal and changes nothing
        assert_eq!(
            apply_action(&w, Action::Destroy, Embodiment::Climbing).unwrap(),
            w
        );
    }

    #[test]
    fn lava_cannot_be_taken() {
        let mut w = flat((3, 3, 4), 1, Pos::new(1, 1, 2));
        w.set_cell(Pos::new(1, 1, 1), Cell::Lava).unwrap();
        let r = apply_action(&w, Action::InteractDown, Embodiment::Climbing).unwrap();
        assert_eq!(r, w);
    }

    #[test]
    fn illegal_vertical_moves() {
        let w = flat((3, 3, 4), 0, Pos::new(1, 1, 1));
        assert!(matches!(
            apply_action(&w, Action::MoveUp, Embodiment::Climbing),
            Err(Error::IllegalAction { .. })
        ));
        assert!(step(&w, Action::MoveDown, Embodiment::NonClimbing).is_err());
        let up = step(&w, Action::MoveUp, Embodiment::Flying).unwrap();
        assert_eq!(up.agent_pos(), Pos::new(1, 1, 2));
        let down = step(&up, Action::MoveDown, Embodiment::Flying).unwrap();
        assert_eq!(down.agent_pos(), Pos::new(1, 1, 1));
        // flying is blocked by the ground
        assert_eq!(
            step(&down, Action::MoveDown, Embodiment::Flying)
                .unwrap()
                .agent_pos(),
            down.agent_pos()
        );
    }

    #[test]
    fn gravity_one_cell_per_turn() {
        let w = flat((3, 3, 6), 0, Pos::new(1, 1, 4));
        let a = world_update(&w, Embodiment::Climbing);
        assert_eq!(a.agent_pos(), Pos::new(1, 1, 3));
        assert_eq!(a.turn(), 1);
        let b = world_update(&a, Embodiment::Climbing);
        assert_eq!(b.agent_pos(), Pos::new(1, 1, 2));
        let c = world_update(&w, Embodiment::Flying);
        assert_eq!(c.agent_pos(), Pos::new(1, 1, 4));
        // standing on ground: no fall
        let g = flat((3, 3, 6), 0, Pos::new(1, 1, 1));
        assert_eq!(
            world_update(&g, Embodiment::Climbing).agent_pos(),
            g.agent_pos()
        );
    }

    #[test]
    fn do_nothing_on_flat_ground() {
        let w = flat((3, 3, 4), 0, Pos::new(1, 1, 1));
        let s = step(&w, Action::DoNothing, Embodiment::Climbing).unwrap();
        let mut expected = w.clone();
        expected.set_turn(1);
        assert_eq!(s, expected);
    }

    #[test]
    fn walking_off_a_ledge_falls_in_same_step() {
        let mut w = flat((3, 3, 5), 0, Pos::new(1, 1, 2));
        w.set_cell(Pos::new(1, 1, 1), Cell::Earth).unwrap();
        let lateral = apply_action(&w, Action::MoveEast, Embodiment::Climbing).unwrap();
        assert_eq!(lateral.agent_pos(), Pos::new(2, 1, 2));
        let fell = world_update(&lateral, Embodiment::Climbing);
        assert_eq!(
            step(&w, Action::MoveEast, Embodiment::Climbing).unwrap(),
            fell
        );
        assert_eq!(fell.agent_pos(), Pos::new(2, 1, 1));
    }

    #[test]
    fn lava_falls_into_empty_cell() {
        let mut w = flat((3, 3, 6), 2, Pos::new(0, 0, 3));
        w.set_lava_period(Some(1)).unwrap();
        w.set_cell(Pos::new(2, 2, 2), Cell::Empty).unwrap();
        w.set_cell(Pos::new(2, 2, 3), Cell::Lava).unwrap();
        let n = world_update(&w, Embodiment::Climbing);
        assert_eq!(n.cell(Pos::new(2, 2, 3)), Some(Cell::Lava));
        assert_eq!(n.cell(Pos::new(2, 2, 2)), Some(Cell::Lava));
        // it fell; no sideways spread this generation
        assert_eq!(n.cell(Pos::new(1, 2, 3)), Some(Cell::Empty));
    }

    #[test]
    fn lava_spreads_sideways_over_earth_only() {
        let mut w = flat((5, 5, 5), 2, Pos::new(0, 0, 3));
        w.set_lava_period(Some(1)).unwrap();
        w.set_cell(Pos::new(2, 2, 3), Cell::Lava).unwrap();
        let n = world_update(&w, Embodiment::Climbing);
        for d in Direction::LATERAL {
            assert_eq!(n.cell(Pos::new(2, 2, 3).shifted(d)), Some(Cell::Lava));
        }
        assert_eq!(n.cell(Pos::new(2, 2, 4)), Some(Cell::Empty));
        // one generation only
        assert_eq!(n.cell(Pos::new(4, 2, 3)), Some(Cell::Empty));
        assert_eq!(n.count(Cell::Lava), 5);

        // lava resting on lava stays put
        let mut m = flat((5, 5, 5), 1, Pos::new(0, 0, 4));
        m.set_lava_period(Some(1)).unwrap();
        m.set_cell(Pos::new(2, 2, 2), Cell::Lava).unwrap();
        m.set_cell(Pos::new(2, 2, 3), Cell::Lava).unwrap();
        let n = world_update(&m, Embodiment::Climbing);
        assert_eq!(n.cell(Pos::new(1, 2, 3)), Some(Cell::Empty));
        assert_eq!(n.cell(Pos::new(1, 2, 2)), Some(Cell::Lava));
    }

    #[test]
    fn lava_respects_period() {
        let mut w = flat((5, 5, 5), 2, Pos::new(0, 0, 3));
        w.set_lava_period(Some(5)).unwrap();
        w.set_cell(Pos::new(4, 4, 3), Cell::Lava).unwrap();
        let mut s = w.clone();
        for t in 1..=5 {
            s = world_update(&s, Embodiment::Climbing);
            let expected = if t < 5 { 1 } else { 3 };
            assert_eq!(s.count(Cell::Lava), expected, "turn {t}");
        }
    }

    #[test]
    fn lava_kills_neighbour_and_skips_agent_cell() {
        let mut w = flat((3, 3, 4), 0, Pos::new(0, 1, 1));
        w.set_cell(Pos::new(1, 1, 1), Cell::Lava).unwrap();
        let n = world_update(&w, Embodiment::Climbing);
        assert!(!n.is_alive());

        let mut v = flat((3, 1, 3), 0, Pos::new(0, 0, 1));
        v.set_lava_period(Some(1)).unwrap();
        v.set_cell(Pos::new(1, 0, 1), Cell::Lava).unwrap();
        let n = world_update(&v, Embodiment::Climbing);
        assert_eq!(n.cell(Pos::new(0, 0, 1)), Some(Cell::Empty));
        assert_eq!(n.cell(Pos::new(2, 0, 1)), Some(Cell::Lava));
        assert!(!n.is_alive());
    }

    #[test]
    fn dead_agents_do_not_act_or_fall() {
        let mut w = flat((3, 3, 5), 0, Pos::new(1, 1, 3));
        w.kill();
        for &a in action_set(Embodiment::Climbing) {
            let s = step(&w, a, Embodiment::Climbing).unwrap();
            assert_eq!(s.agent_pos(), w.agent_pos());
            assert_eq!(s.cells_changed_from(&w), 0);
            assert_eq!(s.turn(), 1);
            assert!(!s.is_alive());
        }
    }

    #[test]
    fn lava_still_spreads_after_death() {
        let mut w = flat((4, 1, 3), 0, Pos::new(0, 0, 1));
        w.set_lava_period(Some(1)).unwrap();
        w.set_cell(Pos::new(3, 0, 1), Cell::Lava).unwrap();
        w.kill();
        let s = step(&w, Action::MoveEast, Embodiment::Climbing).unwrap();
        assert_eq!(s.count(Cell::Lava), 2);
    }
}
