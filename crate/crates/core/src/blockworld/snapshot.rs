//! Plain-text voxel snapshots.
//!
//! ```text
//! dims W D H turn T
//! <layer z = H-1>
//!
//! <layer z = H-2>
//! ...
//! ```
//!
//! Each layer is `D` rows of `W` characters, northmost row (`y = D-1`) first.
//! `.` empty, `#` earth, `L` lava, `A` the agent (`a` when dead). The agent is
//! drawn over its (empty) cell. Inventory and lava period are not encoded.

use super::{Cell, Dims, Pos, WorldState};
use crate::error::{Error, Result};

pub fn render_snapshot(w: &WorldState) -> String {
    let d = w.dims();
    let mut out = format!(
        "dims {} {} {} turn {}\n",
        d.width,
        d.depth,
        d.height,
        w.turn()
    );
    for z in (0..d.height).rev() {
        for y in (0..d.depth).rev() {
            for x in 0..d.width {
                let p = Pos::new(x, y, z);
                let ch = if p == w.agent_pos() {
                    if w.is_alive() {
                        'A'
                    } else {
                        'a'
                    }
                } else {
                    match w.cell(p) {
                        Some(Cell::Earth) => '#',
                        Some(Cell::Lava) => 'L',
                        _ => '.',
                    }
                };
                out.push(ch);
            }
            out.push('\n');
        }
        if z > 0 {
            out.push('\n');
        }
    }
    out
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses [`render_snapshot`] output back into a world with an empty
/// inventory and no lava spreading.
pub fn parse_snapshot(text: &str) -> Result<WorldState> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| perr(1, "empty snapshot"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    let nums = match tokens.as_slice() {
        ["dims", w, d, h, "turn", t] => [*w, *d, *h, *t]
            .iter()
            .map(|v| v.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| perr(1, e.to_string()))?,
        _ => return Err(perr(1, "header must be \"dims W D H turn T\"")),
    };
    let to_i32 = |v: i64| i32::try_from(v).map_err(|_| perr(1, "dimension out of range"));
    let dims = Dims::new(to_i32(nums[0])?, to_i32(nums[1])?, to_i32(nums[2])?)?;
    let turn = u64::try_from(nums[3]).map_err(|_| perr(1, "negative turn"))?;

    let rows: Vec<(usize, &str)> = lines.filter(|(_, l)| !l.trim().is_empty()).collect();
    let expected = (dims.depth * dims.height) as usize;
    if rows.len() != expected {
        return Err(perr(
            rows.last().map_or(1, |r| r.0 + 1),
            format!("expected {expected} rows, found {}", rows.len()),
        ));
    }

    let mut cells = Vec::new();
    let mut agent: Option<(Pos, bool)> = None;
    for (k, (ln, row)) in rows.iter().enumerate() {
        let z = dims.height - 1 - (k as i32 / dims.depth);
        let y = dims.depth - 1 - (k as i32 % dims.depth);
        let chars: Vec<char> = row.trim_end().chars().collect();
        if chars.len() != dims.width as usize {
            return Err(perr(ln + 1, format!("expected {} columns", dims.width)));
        }
        for (x, ch) in chars.into_iter().enumerate() {
            let p = Pos::new(x as i32, y, z);
            let cell = match ch {
                '.' => Cell::Empty,
                '#' => Cell::Earth,
                'L' => Cell::Lava,
                'A' | 'a' => {
                    if agent.is_some() {
                        return Err(perr(ln + 1, "more than one agent"));
                    }
                    agent = Some((p, ch == 'A'));
                    Cell::Empty
                }
                other => return Err(perr(ln + 1, format!("unknown cell {other:?}"))),
            };
            cells.push((p, cell));
        }
    }
    let (pos, alive) = agent.ok_or_else(|| perr(1, "no agent in snapshot"))?;
    let mut w = WorldState::new(dims, pos)?;
    for (p, c) in cells {
        w.set_cell(p, c)?;
    }
    w.set_turn(turn);
    if !alive {
        w.kill();
    }
    Ok(w)
}
