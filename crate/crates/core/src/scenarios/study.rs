//! Estimator-quality study over the five reference distributions.

use std::fmt::Write as _;

use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::empowerment::{approximation_model, mc_discovery_estimate, reference_distributions};
use crate::error::{Error, Result};
use crate::rng::{tag, StreamKey};

#[derive(Debug, Clone, PartialEq)]
pub struct StudyRow {
    pub m: u32,
    pub simulated: [f64; 5],
    pub model: [f64; 5],
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyTable {
    pub seed: u64,
    pub reps: u32,
    pub rows: Vec<StudyRow>,
}

impl StudyTable {
    /// Header comment naming the seed, repetitions and a hash of the grid.
    pub fn provenance_line(&self) -> String {
        let grid: Vec<String> = self.rows.iter().map(|r| r.m.to_string()).collect();
        let digest = hex::encode(Sha256::digest(grid.join(",").as_bytes()));
        format!(
            "# estimator-study seed={} reps={} grid_sha256={digest}",
            self.seed, self.reps
        )
    }

    pub fn row(&self, m: u32) -> Option<&StudyRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    /// Two-column `m estimate` plot data for distribution `dist` (0-based).
    pub fn simulated_series(&self, dist: usize) -> String {
        self.series(|r| r.simulated[dist])
    }

    pub fn model_series(&self, dist: usize) -> String {
        self.series(|r| r.model[dist])
    }

    fn series(&self, f: impl Fn(&StudyRow) -> f64) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let _ = writeln!(out, "{} {:.6}", r.m, f(r));
        }
        out
    }
}

/// `1..=100` step 1, then `110..=1000` step 10.
pub fn default_grid() -> Vec<u32> {
    (1..=100).chain((110..=1000).step_by(10)).collect()
}

/// Parses `start:end:step` ranges separated by commas, or bare integers.
pub fn parse_grid(text: &str) -> Result<Vec<u32>> {
    let bad = |msg: String| Error::InvalidConfig(format!("grid {text:?}: {msg}"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let nums = part
            .split(':')
            .map(|t| t.parse::<u32>().map_err(|e| bad(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        match nums[..] {
            [v] => out.push(v),
            [a, b] => out.extend(a..=b),
            [a, b, s] if s > 0 => out.extend((a..=b).step_by(s as usize)),
            _ => return Err(bad(format!("cannot read {part:?}"))),
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err(bad("needs at least one sample size, all ≥ 1".into()));
    }
    Ok(out)
}

/// Simulated and modelled estimates for each reference distribution and `m`.
///
/// Distribution `d` at sample size `m` uses the stream
/// `seed / STUDY / d / m`, so grid order and threading do not matter.
pub fn run_estimator_study(grid: &[u32], reps: u32, seed: u64) -> Result<StudyTable> {
    if grid.is_empty() || grid.contains(&0) {
        return Err(Error::InvalidConfig(
            "sample grid must be non-empty with m ≥ 1".into(),
        ));
    }
    if reps == 0 {
        return Err(Error::InvalidConfig("reps must be at least 1".into()));
    }
    let dists = reference_distributions();
    let root = StreamKey::root(seed).child(tag::STUDY);
    let rows = grid
        .par_iter()
        .map(|&m| {
            let mut simulated = [0.0; 5];
            let mut model = [0.0; 5];
            for (d, p) in dists.iter().enumerate() {
                simulated[d] =
                    mc_discovery_estimate(p, m, reps, root.child(d as u64).child(u64::from(m)));
                model[d] = approximation_model(p, m);
            }
            StudyRow {
                m,
                simulated,
                model,
            }
        })
        .collect();
    Ok(StudyTable { seed, reps, rows })
}
