//! Scenario definitions and the built-in experiment worlds.
//!
//! Configs are TOML:
//!
//! ```toml
//! name = "exp3"
//! dims = [8, 3, 7]            # width (x), depth (y), height (z)
//! embodiment = "climbing"     # climbing | non-climbing | flying
//! agent_start = [0, 0, 4]
//! horizon = 15
//! samples = 1000
//! turns = 300
//! seed = 0
//! lava_period = 5             # optional; omit for no lava dynamics
//! lava = [[7, 2, 4]]          # optional lava seed cells
//! empty = []                  # optional cells carved out after filling
//! counterfactuals = false     # optional
//! snapshot_every = 0          # optional; 0 = final snapshot only
//!
//! [[earth]]                   # earth slabs, inclusive z-range
//! z_min = 0
//! z_max = 3
//! ```
//!
//! Cells are applied in the order earth slabs, `empty`, `lava`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::blockworld::{Cell, Dims, Embodiment, Pos, WorldState};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EarthSlab {
    pub z_min: i32,
    pub z_max: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub name: String,
    pub dims: [i32; 3],
    pub embodiment: Embodiment,
    pub agent_start: [i32; 3],
    pub horizon: u32,
    pub samples: u32,
    pub turns: u32,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lava_period: Option<u32>,
    #[serde(default)]
    pub earth: Vec<EarthSlab>,
    #[serde(default)]
    pub empty: Vec<[i32; 3]>,
    #[serde(default)]
    pub lava: Vec<[i32; 3]>,
    #[serde(default)]
    pub counterfactuals: bool,
    #[serde(default)]
    pub snapshot_every: u32,
}

fn pos(p: [i32; 3]) -> Pos {
    Pos::new(p[0], p[1], p[2])
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig =
            toml::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always serializable")
    }

    /// SHA-256 of the canonical TOML form, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml().as_bytes()))
    }

    /// Checks the invariants and that the initial world can be built.
    ///
    /// `turns = 0` is accepted and yields an empty episode.
    pub fn validate(&self) -> Result<()> {
        if self.horizon == 0 || self.samples == 0 {
            return Err(Error::InvalidConfig(
                "horizon and samples must be at least 1".into(),
            ));
        }
        self.build_world()?
            .validate()
            .map_err(|e| Error::InvalidConfig(e.to_string()))
    }

    pub fn build_world(&self) -> Result<WorldState> {
        let dims = Dims::new(self.dims[0], self.dims[1], self.dims[2])
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        let mut w = WorldState::new(dims, pos(self.agent_start))
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        for slab in &self.earth {
            if slab.z_min > slab.z_max || slab.z_min < 0 || slab.z_max >= dims.height {
                return Err(Error::InvalidConfig(format!("bad earth slab {slab:?}")));
            }
            w.fill_layers(slab.z_min, slab.z_max, Cell::Earth)?;
        }
        for &p in &self.empty {
            w.set_cell(pos(p), Cell::Empty)
                .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        }
        for &p in &self.lava {
            w.set_cell(pos(p), Cell::Lava)
                .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        }
        w.set_lava_period(self.lava_period)
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        if w.cell(w.agent_pos()) != Some(Cell::Empty) {
            return Err(Error::InvalidConfig("agent start cell is not empty".into()));
        }
        Ok(w)
    }
}

/// Height of the first free layer in experiment 3 (where the lava flows).
pub const EXP3_SURFACE_Z: i32 = 4;
/// First column index of the larger region in experiment 2.
pub const EXP2_FAR_SIDE_X: i32 = 3;
/// Turn budget for the experiment 2 bridge snapshot.
pub const EXP2_TURNS: u32 = 50;

/// Top earth layer of the experiment 1 world.
pub const EXP1_EARTH_TOP_Z: i32 = 4;

/// 3×3×8 world, five earth layers, agent in the middle of layer 6.
pub fn build_experiment1(e: Embodiment, seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        name: format!(
            "exp1-{}",
            match e {
                Embodiment::Climbing => "climb",
                Embodiment::NonClimbing => "noclimb",
                Embodiment::Flying => "fly",
            }
        ),
        dims: [3, 3, 8],
        embodiment: e,
        agent_start: [1, 1, EXP1_EARTH_TOP_Z + 1],
        horizon: 15,
        samples: 1000,
        turns: 1000,
        seed,
        lava_period: None,
        earth: vec![EarthSlab {
            z_min: 0,
            z_max: EXP1_EARTH_TOP_Z,
        }],
        empty: vec![],
        lava: vec![],
        counterfactuals: false,
        snapshot_every: 0,
    }
}

/// 6×5×5 world with three earth layers and a lava stream along `x = 2` in the
/// top earth layer, leaving two columns on the agent's side and three beyond.
/// Geometry taken from the starting-configuration rendering.
pub fn build_experiment2(seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        name: "exp2".into(),
        dims: [6, 5, 5],
        embodiment: Embodiment::Climbing,
        agent_start: [0, 0, 3],
        horizon: 15,
        samples: 1000,
        turns: EXP2_TURNS,
        seed,
        lava_period: Some(1),
        earth: vec![EarthSlab { z_min: 0, z_max: 2 }],
        empty: vec![],
        lava: (0..5).map(|y| [2, y, 2]).collect(),
        counterfactuals: false,
        snapshot_every: 0,
    }
}

/// 8×3×7 world, four earth layers, agent and lava seed in opposite top corners;
/// lava spreads on turns divisible by 5.
pub fn build_experiment3(seed: u64) -> ScenarioConfig {
    ScenarioConfig {
        name: "exp3".into(),
        dims: [8, 3, 7],
        embodiment: Embodiment::Climbing,
        agent_start: [0, 0, EXP3_SURFACE_Z],
        horizon: 15,
        samples: 1000,
        turns: 300,
        seed,
        lava_period: Some(5),
        earth: vec![EarthSlab {
            z_min: 0,
            z_max: EXP3_SURFACE_Z - 1,
        }],
        empty: vec![],
        lava: vec![[7, 2, EXP3_SURFACE_Z]],
        counterfactuals: false,
        snapshot_every: 0,
    }
}

pub const BUILTIN_NAMES: [&str; 5] = ["exp1-climb", "exp1-noclimb", "exp1-fly", "exp2", "exp3"];

pub fn builtin(name: &str, seed: u64) -> Option<ScenarioConfig> {
    match name {
        "exp1-climb" => Some(build_experiment1(Embodiment::Climbing, seed)),
        "exp1-noclimb" => Some(build_experiment1(Embodiment::NonClimbing, seed)),
        "exp1-fly" => Some(build_experiment1(Embodiment::Flying, seed)),
        "exp2" => Some(build_experiment2(seed)),
        "exp3" => Some(build_experiment3(seed)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn experiment1_geometry() {
        let cfg = build_experiment1(Embodiment::Flying, 1);
        let w = cfg.build_world().unwrap();
        assert_eq!((cfg.horizon, cfg.samples, cfg.turns), (15, 1000, 1000));
        assert_eq!(w.agent_pos(), Pos::new(1, 1, 5));
        assert_eq!(w.count(Cell::Earth), 45);
        assert_eq!(w.count(Cell::Lava), 0);
        assert_eq!(w.cell(Pos::new(1, 1, 4)), Some(Cell::Earth));
        assert_eq!(w.cell(Pos::new(1, 1, 5)), Some(Cell::Empty));
    }

    #[test]
    fn experiment2_geometry() {
        let w = build_experiment2(0).build_world().unwrap();
        for y in 0..5 {
            assert_eq!(w.cell(Pos::new(2, y, 2)), Some(Cell::Lava));
            assert_eq!(w.cell(Pos::new(1, y, 2)), Some(Cell::Earth));
            assert_eq!(w.cell(Pos::new(3, y, 2)), Some(Cell::Earth));
        }
        assert_eq!(w.agent_pos(), Pos::new(0, 0, 3));
        assert_eq!(w.cell(Pos::new(0, 0, 2)), Some(Cell::Earth));
        assert!(w.agent_pos().x < EXP2_FAR_SIDE_X);
    }

    #[test]
    fn experiment3_geometry() {
        let cfg = build_experiment3(0);
        let w = cfg.build_world().unwrap();
        assert_eq!(cfg.dims, [8, 3, 7]);
        assert_eq!(w.lava_period(), Some(5));
        assert_eq!(cfg.turns, 300);
        assert_eq!(w.count(Cell::Earth), 8 * 3 * 4);
        assert_eq!(w.cell(Pos::new(7, 2, 4)), Some(Cell::Lava));
        assert_eq!(w.agent_pos(), Pos::new(0, 0, 4));
    }

    #[test]
    fn toml_round_trip_and_hash() {
        for name in BUILTIN_NAMES {
            let cfg = builtin(name, 9).unwrap();
            let back = ScenarioConfig::from_toml(&cfg.to_toml()).unwrap();
            assert_eq!(back, cfg);
            assert_eq!(back.hash(), cfg.hash());
        }
        let a = build_experiment3(1);
        let b = build_experiment3(2);
        assert_ne!(a.hash(), b.hash());
    }

    #[test]
    fn rejects_bad_configs() {
        let mut cfg = build_experiment3(0);
        cfg.agent_start = [0, 0, 2];
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
        let mut cfg = build_experiment3(0);
        cfg.samples = 0;
        assert!(cfg.validate().is_err());
        let mut cfg = build_experiment3(0);
        cfg.agent_start = [8, 0, 5];
        assert!(cfg.validate().is_err());
        assert!(ScenarioConfig::from_toml("name = 3").is_err());
        assert!(builtin("exp4", 0).is_none());
    }
}
