//! Deterministic voxel world: cells, agent embodiments, actions and dynamics.
//!
//! Coordinates are `(x, y, z)` with `z` pointing up. North is `+y`, east is
//! `+x`. The world boundary behaves as an impassable wall.

mod dynamics;
mod snapshot;

pub use dynamics::{apply_action, step, world_update};
pub use snapshot::{parse_snapshot, render_snapshot};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[repr(u8)]
pub enum Cell {
    #[default]
    Empty,
    Earth,
    Lava,
}

impl Cell {
    pub fn is_filled(self) -> bool {
        self != Cell::Empty
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Inventory {
    #[default]
    Empty,
    HoldsEarth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Embodiment {
    /// Steps up onto a filled cell when the cell above it is free.
    Climbing,
    /// Blocked by any filled cell.
    NonClimbing,
    /// Ignores gravity and can also move up and down.
    Flying,
}

impl Embodiment {
    pub const ALL: [Embodiment; 3] = [
        Embodiment::Climbing,
        Embodiment::NonClimbing,
        Embodiment::Flying,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Embodiment::Climbing => "climbing",
            Embodiment::NonClimbing => "non-climbing",
            Embodiment::Flying => "flying",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl std::str::FromStr for Embodiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "climbing" | "climb" => Ok(Embodiment::Climbing),
            "non-climbing" | "noclimb" => Ok(Embodiment::NonClimbing),
            "flying" | "fly" => Ok(Embodiment::Flying),
            other => Err(Error::InvalidConfig(format!(
                "unknown embodiment {other:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    North,
    East,
    South,
    West,
    Up,
    Down,
}

impl Direction {
    pub const ALL: [Direction; 6] = [
        Direction::North,
        Direction::East,
        Direction::South,
        Direction::West,
        Direction::Up,
        Direction::Down,
    ];
    pub const LATERAL: [Direction; 4] = [
        Direction::North,
        Direction::East,
        Direction::South,
        Direction::West,
    ];

    pub fn offset(self) -> (i32, i32, i32) {
        match self {
            Direction::North => (0, 1, 0),
            Direction::East => (1, 0, 0),
            Direction::South => (0, -1, 0),
            Direction::West => (-1, 0, 0),
            Direction::Up => (0, 0, 1),
            Direction::Down => (0, 0, -1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    MoveNorth,
    MoveEast,
    MoveSouth,
    MoveWest,
    MoveUp,
    MoveDown,
    InteractUp,
    InteractDown,
    InteractNorth,
    InteractSouth,
    InteractEast,
    InteractWest,
    DoNothing,
    Destroy,
}

impl Action {
    pub fn name(self) -> &'static str {
        match self {
            Action::MoveNorth => "move-north",
            Action::MoveEast => "move-east",
            Action::MoveSouth => "move-south",
            Action::MoveWest => "move-west",
            Action::MoveUp => "move-up",
            Action::MoveDown => "move-down",
            Action::InteractUp => "interact-up",
            Action::InteractDown => "interact-down",
            Action::InteractNorth => "interact-north",
            Action::InteractSouth => "interact-south",
            Action::InteractEast => "interact-east",
            Action::InteractWest => "interact-west",
            Action::DoNothing => "do-nothing",
            Action::Destroy => "destroy",
        }
    }
}

const GROUND_ACTIONS: [Action; 12] = [
    Action::MoveNorth,
    Action::MoveEast,
    Action::MoveSouth,
    Action::MoveWest,
    Action::InteractUp,
    Action::InteractDown,
    Action::InteractNorth,
    Action::InteractSouth,
    Action::InteractEast,
    Action::InteractWest,
    Action::DoNothing,
    Action::Destroy,
];

const FLYING_ACTIONS: [Action; 14] = [
    Action::MoveNorth,
    Action::MoveEast,
    Action::MoveSouth,
    Action::MoveWest,
    Action::MoveUp,
    Action::MoveDown,
    Action::InteractUp,
    Action::InteractDown,
    Action::InteractNorth,
    Action::InteractSouth,
    Action::InteractEast,
    Action::InteractWest,
    Action::DoNothing,
    Action::Destroy,
];

/// The ordered actuator alphabet of an embodiment.
///
/// Ground agents get the four cardinal moves, six interactions, do-nothing and
/// destroy. Flying agents additionally get `MoveUp`/`MoveDown` right after the
/// cardinal moves. Indices into this slice are used throughout traces.
pub fn action_set(e: Embodiment) -> &'static [Action] {
    match e {
        Embodiment::Climbing | Embodiment::NonClimbing => &GROUND_ACTIONS,
        Embodiment::Flying => &FLYING_ACTIONS,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pos {
    pub x: i32,
    pub y: i32,
    pub z: i32,
}

impl Pos {
    pub const fn new(x: i32, y: i32, z: i32) -> Self {
        Pos { x, y, z }
    }

    pub fn shifted(self, d: Direction) -> Pos {
        let (dx, dy, dz) = d.offset();
        Pos::new(self.x + dx, self.y + dy, self.z + dz)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub width: i32,
    pub depth: i32,
    pub height: i32,
}

impl Dims {
    pub fn new(width: i32, depth: i32, height: i32) -> Result<Self> {
        if width < 1 || depth < 1 || height < 1 {
            return Err(Error::InvalidWorld(format!(
                "dimensions must be positive, got {width}x{depth}x{height}"
            )));
        }
        Ok(Dims {
            width,
            depth,
            height,
        })
    }

    pub fn volume(self) -> usize {
        (self.width * self.depth * self.height) as usize
    }

    #[inline]
    pub fn contains(self, p: Pos) -> bool {
        p.x >= 0
            && p.y >= 0
            && p.z >= 0
            && p.x < self.width
            && p.y < self.depth
            && p.z < self.height
    }

    #[inline]
    fn index(self, p: Pos) -> usize {
        ((p.z * self.depth + p.y) * self.width + p.x) as usize
    }

    fn pos_of(self, idx: usize) -> Pos {
        let idx = idx as i32;
        let x = idx % self.width;
        let y = (idx / self.width) % self.depth;
        let z = idx / (self.width * self.depth);
        Pos::new(x, y, z)
    }
}

/// Full world state: voxel grid plus the agent.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WorldState {
    dims: Dims,
    grid: Vec<Cell>,
    agent: Pos,
    inventory: Inventory,
    alive: bool,
    turn: u64,
    lava_period: Option<u32>,
}

impl WorldState {
    /// An all-empty world with the agent at `agent`.
    pub fn new(dims: Dims, agent: Pos) -> Result<Self> {
        if !dims.contains(agent) {
            return Err(Error::InvalidWorld(format!(
                "agent position {agent:?} outside {dims:?}"
            )));
        }
        Ok(WorldState {
            dims,
            grid: vec![Cell::Empty; dims.volume()],
            agent,
            inventory: Inventory::Empty,
            alive: true,
            turn: 0,
            lava_period: None,
        })
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn agent_pos(&self) -> Pos {
        self.agent
    }

    pub fn inventory(&self) -> Inventory {
        self.inventory
    }

    pub fn is_alive(&self) -> bool {
        self.alive
    }

    pub fn turn(&self) -> u64 {
        self.turn
    }

    pub fn lava_period(&self) -> Option<u32> {
        self.lava_period
    }

    /// Out-of-bounds positions read as `None`.
    #[inline]
    pub fn cell(&self, p: Pos) -> Option<Cell> {
        self.dims.contains(p).then(|| self.grid[self.dims.index(p)])
    }

    pub fn set_cell(&mut self, p: Pos, c: Cell) -> Result<()> {
        if !self.dims.contains(p) {
            return Err(Error::InvalidWorld(format!(
                "cell {p:?} outside {:?}",
                self.dims
            )));
        }
        let i = self.dims.index(p);
        self.grid[i] = c;
        Ok(())
    }

    /// Fills every cell with `lo <= z <= hi`.
    pub fn fill_layers(&mut self, lo: i32, hi: i32, c: Cell) -> Result<()> {
        for z in lo..=hi {
            for y in 0..self.dims.depth {
                for x in 0..self.dims.width {
                    self.set_cell(Pos::new(x, y, z), c)?;
                }
            }
        }
        Ok(())
    }

    pub fn set_agent_pos(&mut self, p: Pos) -> Result<()> {
        if !self.dims.contains(p) {
            return Err(Error::InvalidWorld(format!(
                "agent position {p:?} outside {:?}",
                self.dims
            )));
        }
        self.agent = p;
        Ok(())
    }

    pub fn set_inventory(&mut self, inv: Inventory) {
        self.inventory = inv;
    }

    pub fn set_turn(&mut self, turn: u64) {
        self.turn = turn;
    }

    /// Kills the agent. There is no way back.
    pub fn kill(&mut self) {
        self.alive = false;
    }

    pub fn set_lava_period(&mut self, period: Option<u32>) -> Result<()> {
        if period == Some(0) {
            return Err(Error::InvalidWorld("lava period must be positive".into()));
        }
        self.lava_period = period;
        Ok(())
    }

    /// Checks the structural invariants: agent in bounds on an empty cell.
    pub fn validate(&self) -> Result<()> {
        match self.cell(self.agent) {
            None => Err(Error::InvalidWorld(format!(
                "agent {:?} out of bounds",
                self.agent
            ))),
            Some(Cell::Empty) => Ok(()),
            Some(c) => Err(Error::InvalidWorld(format!(
                "agent cell {:?} holds {c:?}",
                self.agent
            ))),
        }
    }

    pub fn count(&self, c: Cell) -> usize {
        self.grid.iter().filter(|&&g| g == c).count()
    }

    /// Earth cells plus a held block.
    pub fn block_total(&self) -> usize {
        self.count(Cell::Earth) + usize::from(self.inventory == Inventory::HoldsEarth)
    }

    /// Positions of all cells holding `c`, in storage order.
    pub fn cells_of(&self, c: Cell) -> impl Iterator<Item = Pos> + '_ {
        self.grid
            .iter()
            .enumerate()
            .filter(move |(_, g)| **g == c)
            .map(|(i, _)| self.dims.pos_of(i))
    }

    /// Number of cells whose content differs from `other` (same dims).
    pub fn cells_changed_from(&self, other: &WorldState) -> usize {
        self.grid
            .iter()
            .zip(&other.grid)
            .filter(|(a, b)| a != b)
            .count()
    }

    pub fn touches_lava(&self, p: Pos) -> bool {
        Direction::ALL
            .iter()
            .any(|&d| self.cell(p.shifted(d)) == Some(Cell::Lava))
    }
}
