//! n-step empowerment of a world state under the location sensor.
//!
//! In a deterministic world the channel from an open-loop action sequence to
//! the final agent location has capacity `ln |S*|`, where `S*` is the set of
//! reachable end locations. [`exact_empowerment`] enumerates every sequence;
//! [`sparse_empowerment`] draws `m` uniform random sequences and counts the
//! distinct locations they reach, which can only undercount `S*`.
//!
//! The second half of the module models the quality of that estimator on
//! abstract outcome distributions: [`mc_discovery_estimate`] simulates it and
//! [`approximation_model`] predicts it analytically.

use std::collections::{BTreeMap, HashSet};

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution as _;
use rand::Rng;

use crate::blockworld::{action_set, Action, Embodiment, Pos, WorldState};
use crate::error::{Error, Result};
use crate::info_theory::{Channel, Distribution};
use crate::rng::StreamKey;

/// Default cap on the number of sequences [`exact_empowerment`] will enumerate.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 2_000_000;

/// What the agent perceives at the end of a rollout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SensorReading {
    pub location: Pos,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Samples {
    Exhaustive,
    Sampled(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmpowermentEstimate {
    pub reachable_count: u32,
    pub horizon: u32,
    pub samples: Samples,
}

impl EmpowermentEstimate {
    pub fn nats(&self) -> f64 {
        f64::from(self.reachable_count).ln()
    }
}

/// Runs `seq` open-loop from `w` and reports the final location.
pub fn rollout(w: &WorldState, seq: &[Action], e: Embodiment) -> Result<SensorReading> {
    if let Some(&bad) = seq.iter().find(|a| !action_set(e).contains(a)) {
        return Err(Error::IllegalAction {
            action: bad,
            embodiment: e,
        });
    }
    let mut s = w.clone();
    for &a in seq {
        s.step_in_place(a, e);
    }
    Ok(SensorReading {
        location: s.agent_pos(),
    })
}

/// Number of `n`-step sequences, or [`Error::BudgetExceeded`] above `budget`.
pub fn enumeration_size(e: Embodiment, n: u32, budget: u64) -> Result<u64> {
    let k = action_set(e).len() as u128;
    let required = k.checked_pow(n).unwrap_or(u128::MAX);
    if required > u128::from(budget) {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(required as u64)
}

/// Exhaustive n-step empowerment with the default enumeration budget.
pub fn exact_empowerment(w: &WorldState, e: Embodiment, n: u32) -> Result<EmpowermentEstimate> {
    exact_empowerment_with_budget(w, e, n, DEFAULT_ENUMERATION_BUDGET)
}

/// Enumerates all `|A|^n` sequences depth-first and counts distinct end
/// locations. Refuses with [`Error::BudgetExceeded`] above `budget` sequences.
pub fn exact_empowerment_with_budget(
    w: &WorldState,
    e: Embodiment,
    n: u32,
    budget: u64,
) -> Result<EmpowermentEstimate> {
    enumeration_size(e, n, budget)?;
    let mut reached = HashSet::new();
    enumerate(w, e, n, &mut reached);
    Ok(EmpowermentEstimate {
        reachable_count: reached.len() as u32,
        horizon: n,
        samples: Samples::Exhaustive,
    })
}

fn enumerate(w: &WorldState, e: Embodiment, remaining: u32, reached: &mut HashSet<Pos>) {
    // a dead agent's location is fixed for every continuation
    if remaining == 0 || !w.is_alive() {
        reached.insert(w.agent_pos());
        return;
    }
    for &a in action_set(e) {
        let mut next = w.clone();
        next.step_in_place(a, e);
        enumerate(&next, e, remaining - 1, reached);
    }
}

/// The deterministic channel from sequence index (lexicographic over
/// `action_set(e)`) to end location, built by rolling out each sequence
/// independently. Columns are the distinct locations in sorted order.
pub fn sequence_channel(w: &WorldState, e: Embodiment, n: u32, budget: u64) -> Result<Channel> {
    let total = enumeration_size(e, n, budget)?;
    let actions = action_set(e);
    let k = actions.len() as u64;
    let mut ends = Vec::with_capacity(total as usize);
    let mut seq = vec![Action::DoNothing; n as usize];
    for idx in 0..total {
        let mut rest = idx;
        for slot in seq.iter_mut().rev() {
            *slot = actions[(rest % k) as usize];
            rest /= k;
        }
        ends.push(rollout(w, &seq, e)?.location);
    }
    let mut columns: BTreeMap<Pos, usize> = ends.iter().map(|&p| (p, 0)).collect();
    for (i, v) in columns.values_mut().enumerate() {
        *v = i;
    }
    let targets: Vec<usize> = ends.iter().map(|p| columns[p]).collect();
    Channel::deterministic(&targets, columns.len())
}

/// Sparse-sampling estimate from `m` i.i.d. uniform `n`-step sequences.
///
/// Sample `i` draws its actions from the stream `key.child(i)`, so the result
/// depends only on the inputs and the key.
pub fn sparse_empowerment(
    w: &WorldState,
    e: Embodiment,
    n: u32,
    m: u32,
    key: StreamKey,
) -> EmpowermentEstimate {
    assert!(
        n >= 1 && m >= 1,
        "horizon and sample count must be positive"
    );
    let actions = action_set(e);
    let mut seen = vec![false; w.dims().volume()];
    let mut count = 0u32;
    let mut scratch = w.clone();
    for i in 0..m {
        scratch.clone_from(w);
        let mut rng = key.child(u64::from(i)).rollout_rng();
        for _ in 0..n {
            if !scratch.is_alive() {
                break;
            }
            let a = actions[rng.random_range(0..actions.len())];
            scratch.step_in_place(a, e);
        }
        let slot = &mut seen[location_index(&scratch)];
        if !*slot {
            *slot = true;
            count += 1;
        }
    }
    EmpowermentEstimate {
        reachable_count: count,
        horizon: n,
        samples: Samples::Sampled(m),
    }
}

fn location_index(w: &WorldState) -> usize {
    let d = w.dims();
    let p = w.agent_pos();
    ((p.z * d.depth + p.y) * d.width + p.x) as usize
}

/// Mean over `reps` repetitions of `ln(distinct outcomes among m draws from p)`.
pub fn mc_discovery_estimate(p: &Distribution, m: u32, reps: u32, key: StreamKey) -> f64 {
    assert!(
        m >= 1 && reps >= 1,
        "samples and repetitions must be positive"
    );
    let sampler = WeightedIndex::new(p.probs()).expect("validated distribution");
    let support = p.support_size();
    let mut seen = vec![false; p.len()];
    let mut total = 0.0;
    for r in 0..reps {
        seen.iter_mut().for_each(|s| *s = false);
        let mut rng = key.child(u64::from(r)).rng();
        let mut found = 0usize;
        for _ in 0..m {
            let s = sampler.sample(&mut rng);
            if !seen[s] {
                seen[s] = true;
                found += 1;
                if found == support {
                    break;
                }
            }
        }
        total += (found as f64).ln();
    }
    total / f64::from(reps)
}

/// Analytic prediction `ln(|S| - Σ_s (1 - p(s))^m)` of the sparse estimator.
pub fn approximation_model(p: &Distribution, m: u32) -> f64 {
    assert!(m >= 1, "sample count must be positive");
    let missed: f64 = p.probs().iter().map(|q| (1.0 - q).powf(f64::from(m))).sum();
    // the expected count is at least Σ p = 1; clamp away rounding below it
    (p.len() as f64 - missed).max(1.0).ln()
}

/// The five ten-outcome test distributions used in the estimator study.
pub fn reference_distributions() -> [Distribution; 5] {
    let mk = |v: Vec<f64>| Distribution::new(v).expect("reference distribution is valid");
    let mut skew2 = vec![0.91];
    skew2.extend([0.01; 9]);
    let mut skew3 = vec![0.991];
    skew3.extend([0.001; 9]);
    let mut dyadic: Vec<f64> = (1..=9).map(|k| 0.5f64.powi(k)).collect();
    dyadic.push(1.0 / 512.0);
    let mut mixed = vec![0.2; 4];
    mixed.push(0.1);
    mixed.extend([0.02; 5]);
    [
        mk(vec![0.1; 10]),
        mk(skew2),
        mk(skew3),
        mk(dyadic),
        mk(mixed),
    ]
}
