//! Post-hoc classification and summary statistics for finished episodes.

use std::collections::VecDeque;

use super::config::{EXP1_EARTH_TOP_Z, EXP2_FAR_SIDE_X, EXP3_SURFACE_Z};
use super::episode::Episode;
use crate::blockworld::{step, Cell, Direction, Pos, WorldState};
use crate::error::Result;

/// Smallest open surface region that counts as a held dam.
pub const DAM_MIN_REGION: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Island,
    Cave,
    Dam,
    Other,
}

impl Outcome {
    pub fn label(self) -> &'static str {
        match self {
            Outcome::Island => "island",
            Outcome::Cave => "cave",
            Outcome::Dam => "dam",
            Outcome::Other => "other",
        }
    }
}

/// 4-connected component in layer `z` of cells equal to `kind`, from `start`.
fn layer_component(w: &WorldState, start: Pos, kind: Cell) -> Vec<Pos> {
    if w.cell(start) != Some(kind) {
        return Vec::new();
    }
    let mut seen = vec![start];
    let mut queue = VecDeque::from([start]);
    while let Some(p) = queue.pop_front() {
        for d in Direction::LATERAL {
            let n = p.shifted(d);
            if w.cell(n) == Some(kind) && !seen.contains(&n) {
                seen.push(n);
                queue.push_back(n);
            }
        }
    }
    seen
}

/// Classifies the final state of an experiment-3 episode.
///
/// With `S` the layer the lava flows in:
/// * Island: the agent stands at `S + 1` on an earth patch in layer `S` whose
///   in-bounds lateral border is entirely lava.
/// * Cave: the agent is below `S` with earth somewhere above it in its column
///   up to `S`.
/// * Dam: an open (empty) region of at least [`DAM_MIN_REGION`] cells
///   survives in layer `S` and contains the agent's column (or, when the
///   agent is at or above `S`, borders it).
/// * Other: everything else, including death.
pub fn classify_outcome_exp3(w: &WorldState) -> Outcome {
    if !w.is_alive() {
        return Outcome::Other;
    }
    let s = EXP3_SURFACE_Z;
    let a = w.agent_pos();

    if a.z == s + 1 {
        let patch = layer_component(w, Pos::new(a.x, a.y, s), Cell::Earth);
        if !patch.is_empty() {
            let mut border = patch
                .iter()
                .flat_map(|p| Direction::LATERAL.map(|d| p.shifted(d)))
                .filter(|n| !patch.contains(n))
                .filter_map(|n| w.cell(n))
                .peekable();
            if border.peek().is_some() && border.all(|c| c == Cell::Lava) {
                return Outcome::Island;
            }
        }
    }

    if a.z < s && (a.z + 1..=s).any(|z| w.cell(Pos::new(a.x, a.y, z)) == Some(Cell::Earth)) {
        return Outcome::Cave;
    }

    let here = Pos::new(a.x, a.y, s);
    let neighbours = Direction::LATERAL.map(|d| here.shifted(d));
    let candidates: &[Pos] = if a.z >= s { &neighbours } else { &[] };
    for &c in std::iter::once(&here).chain(candidates) {
        if layer_component(w, c, Cell::Empty).len() >= DAM_MIN_REGION {
            return Outcome::Dam;
        }
    }
    Outcome::Other
}

/// Cells changed relative to the starting world.
pub fn block_modifications(ep: &Episode) -> usize {
    ep.final_world.cells_changed_from(&ep.initial)
}

/// Layers of the experiment 1 world checked by [`central_axis_cleared`].
pub const AXIS_LAYERS: [i32; 2] = [EXP1_EARTH_TOP_Z - 1, EXP1_EARTH_TOP_Z];

fn axis_cells(w: &WorldState) -> impl Iterator<Item = Pos> {
    let d = w.dims();
    let (cx, cy) = (d.width / 2, d.depth / 2);
    AXIS_LAYERS.into_iter().flat_map(move |z| {
        let row = (0..d.width).map(move |x| Pos::new(x, cy, z));
        let col = (0..d.depth)
            .filter(move |&y| y != cy)
            .map(move |y| Pos::new(cx, y, z));
        row.chain(col)
    })
}

/// Whether the middle cross (every cell sharing the centre's `x` or `y`) of
/// the top two earth layers holds no earth. Corners may stay.
pub fn central_axis_cleared(w: &WorldState) -> bool {
    axis_cells(w).all(|p| w.cell(p) != Some(Cell::Earth))
}

/// Whether every cross cell that started as earth was emptied at some turn,
/// even if a block was placed back later. Replays the recorded actions.
pub fn central_axis_ever_removed(ep: &Episode) -> Result<bool> {
    let mut pending: Vec<Pos> = axis_cells(&ep.initial)
        .filter(|&p| ep.initial.cell(p) == Some(Cell::Earth))
        .collect();
    let mut w = ep.initial.clone();
    for r in &ep.records {
        w = step(&w, r.chosen, ep.config.embodiment)?;
        pending.retain(|&p| w.cell(p) == Some(Cell::Earth));
    }
    Ok(pending.is_empty())
}

/// First turn at which the agent stands beyond the experiment-2 lava stream.
pub fn exp2_crossing_turn(ep: &Episode) -> Option<u64> {
    ep.path()
        .zip(0u64..)
        .find(|(p, _)| p.x >= EXP2_FAR_SIDE_X)
        .map(|(_, t)| t)
}
