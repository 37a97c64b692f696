use std::fmt::Write as _;

use rayon::prelude::*;

use super::config::ScenarioConfig;
use crate::blockworld::{action_set, render_snapshot, Action, Embodiment, Pos, WorldState};
use crate::controller::choose_action_sparse;
use crate::empowerment::sparse_empowerment;
use crate::error::Result;
use crate::rng::{tag, StreamKey};

/// One row of an episode trace, describing the state the decision was made in.
#[derive(Debug, Clone, PartialEq)]
pub struct TurnRecord {
    pub turn: u64,
    pub position: Pos,
    pub alive: bool,
    pub chosen: Action,
    /// Successor reachable counts, in `action_set` order.
    pub action_counts: Vec<u32>,
    /// Current-state reachable counts for each embodiment in
    /// [`Embodiment::ALL`] order, when requested.
    pub counterfactual: Option<[u32; 3]>,
}

#[derive(Debug, Clone)]
pub struct Episode {
    pub config: ScenarioConfig,
    pub initial: WorldState,
    pub records: Vec<TurnRecord>,
    pub final_world: WorldState,
    /// `(turn, snapshot text)` at every `snapshot_every` turns plus the final state.
    pub snapshots: Vec<(u64, String)>,
}

impl Episode {
    pub fn died(&self) -> bool {
        !self.final_world.is_alive()
    }

    /// Positions occupied at the start of every turn and at the end.
    pub fn path(&self) -> impl Iterator<Item = Pos> + '_ {
        self.records
            .iter()
            .map(|r| r.position)
            .chain(std::iter::once(self.final_world.agent_pos()))
    }
}

/// Empowerment of the current state as seen by each embodiment.
pub fn counterfactual_counts(
    w: &WorldState,
    horizon: u32,
    samples: u32,
    key: StreamKey,
) -> [u32; 3] {
    let v: Vec<u32> = Embodiment::ALL
        .par_iter()
        .map(|&e| {
            sparse_empowerment(w, e, horizon, samples, key.child(e.index() as u64)).reachable_count
        })
        .collect();
    [v[0], v[1], v[2]]
}

/// Runs a seeded episode: decide, step, record, for `cfg.turns` turns.
pub fn run_episode(cfg: &ScenarioConfig) -> Result<Episode> {
    cfg.validate()?;
    let initial = cfg.build_world()?;
    let root = StreamKey::root(cfg.seed);
    let e = cfg.embodiment;
    let mut world = initial.clone();
    let mut records = Vec::with_capacity(cfg.turns as usize);
    let mut snapshots = Vec::new();

    for _ in 0..cfg.turns {
        let turn_key = root.child(world.turn());
        let counterfactual = cfg.counterfactuals.then(|| {
            counterfactual_counts(
                &world,
                cfg.horizon,
                cfg.samples,
                turn_key.child(tag::COUNTERFACTUAL),
            )
        });
        let decision = choose_action_sparse(&world, e, cfg.horizon, cfg.samples, turn_key);
        records.push(TurnRecord {
            turn: world.turn(),
            position: world.agent_pos(),
            alive: world.is_alive(),
            chosen: decision.chosen,
            action_counts: decision
                .evaluations
                .iter()
                .map(|(_, v)| v.reachable_count)
                .collect(),
            counterfactual,
        });
        world = crate::blockworld::step(&world, decision.chosen, e)?;
        if cfg.snapshot_every > 0 && world.turn() % u64::from(cfg.snapshot_every) == 0 {
            snapshots.push((world.turn(), render_snapshot(&world)));
        }
    }
    if snapshots.last().map(|s| s.0) != Some(world.turn()) {
        snapshots.push((world.turn(), render_snapshot(&world)));
    }

    Ok(Episode {
        config: cfg.clone(),
        initial,
        records,
        final_world: world,
        snapshots,
    })
}

/// Header comment shared by every output file of a run.
pub fn provenance_line(cfg: &ScenarioConfig) -> String {
    format!(
        "# scenario={} seed={} config_sha256={}",
        cfg.name,
        cfg.seed,
        cfg.hash()
    )
}

/// Comma-separated trace: provenance comment, column header, one row per turn.
pub fn render_trace(ep: &Episode) -> String {
    let cfg = &ep.config;
    let mut out = provenance_line(cfg);
    out.push('\n');
    out.push_str("turn,x,y,z,alive,chosen_action");
    for a in action_set(cfg.embodiment) {
        let _ = write!(out, ",{}", a.name());
    }
    if cfg.counterfactuals {
        for e in Embodiment::ALL {
            let _ = write!(out, ",cf_{}", e.name());
        }
    }
    out.push('\n');
    for r in &ep.records {
        let _ = write!(
            out,
            "{},{},{},{},{},{}",
            r.turn,
            r.position.x,
            r.position.y,
            r.position.z,
            u8::from(r.alive),
            r.chosen.name()
        );
        for c in &r.action_counts {
            let _ = write!(out, ",{c}");
        }
        if let Some(cf) = r.counterfactual {
            for c in cf {
                let _ = write!(out, ",{c}");
            }
        }
        out.push('\n');
    }
    out
}

/// All snapshots of the episode, each preceded by the provenance line.
pub fn render_snapshots(ep: &Episode) -> String {
    let mut out = String::new();
    for (_, snap) in &ep.snapshots {
        out.push_str(&provenance_line(&ep.config));
        out.push('\n');
        out.push_str(snap);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::config::build_experiment3;

    fn small(turns: u32) -> ScenarioConfig {
        let mut cfg = build_experiment3(5);
        cfg.horizon = 4;
        cfg.samples = 30;
        cfg.turns = turns;
        cfg
    }

    #[test]
    fn zero_turns_is_empty() {
        let ep = run_episode(&small(0)).unwrap();
        assert!(ep.records.is_empty());
        assert_eq!(ep.final_world, ep.initial);
        assert_eq!(ep.snapshots.len(), 1);
    }

    #[test]
    fn replay_is_identical() {
        let mut cfg = small(12);
        cfg.counterfactuals = true;
        cfg.snapshot_every = 4;
        let a = run_episode(&cfg).unwrap();
        let b = run_episode(&cfg).unwrap();
        assert_eq!(render_trace(&a), render_trace(&b));
        assert_eq!(render_snapshots(&a), render_snapshots(&b));
        assert_eq!(a.records.len(), 12);
        assert_eq!(
            a.snapshots.iter().map(|s| s.0).collect::<Vec<_>>(),
            vec![4, 8, 12]
        );
        for r in &a.records {
            assert_eq!(r.action_counts.len(), 12);
            assert!(r.counterfactual.is_some());
        }
    }

    #[test]
    fn trace_layout() {
        let ep = run_episode(&small(2)).unwrap();
        let text = render_trace(&ep);
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# scenario=exp3 seed=5 config_sha256="));
        assert!(lines[1].starts_with("turn,x,y,z,alive,chosen_action,move-north"));
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[2].split(',').count(), 6 + 12);
        assert!(lines[2].starts_with("0,0,0,4,1,"));
    }
}
