//! Greedy one-step empowerment maximization.
//!
//! Every available action is simulated for one full turn and the successor
//! state is scored by its estimated empowerment. The agent takes an action with
//! the highest reachable count, breaking ties uniformly at random.

use rand::Rng;
use rayon::prelude::*;

use crate::blockworld::{action_set, Action, Embodiment, WorldState};
use crate::empowerment::{exact_empowerment_with_budget, sparse_empowerment, EmpowermentEstimate};
use crate::error::Result;
use crate::rng::{tag, StreamKey};

/// How successor states are scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    Sparse {
        horizon: u32,
        samples: u32,
    },
    /// Noise-free scoring by full enumeration.
    Exact {
        horizon: u32,
        budget: u64,
    },
}

impl Estimator {
    pub fn estimate(
        &self,
        w: &WorldState,
        e: Embodiment,
        key: StreamKey,
    ) -> Result<EmpowermentEstimate> {
        match *self {
            Estimator::Sparse { horizon, samples } => {
                Ok(sparse_empowerment(w, e, horizon, samples, key))
            }
            Estimator::Exact { horizon, budget } => {
                exact_empowerment_with_budget(w, e, horizon, budget)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub chosen: Action,
    /// One entry per action, in `action_set` order.
    pub evaluations: Vec<(Action, EmpowermentEstimate)>,
    pub tie_set_size: usize,
}

impl Decision {
    pub fn best_count(&self) -> u32 {
        self.evaluations
            .iter()
            .map(|(_, est)| est.reachable_count)
            .max()
            .unwrap_or(0)
    }
}

/// Scores every action and picks an argmax.
///
/// Action `i` is scored with stream `key.child(DECISION).child(i)`; the tie
/// break draws from `key.child(TIE_BREAK)`. Evaluations run in parallel but the
/// result does not depend on scheduling.
pub fn choose_action(
    w: &WorldState,
    e: Embodiment,
    est: &Estimator,
    key: StreamKey,
) -> Result<Decision> {
    let actions = action_set(e);
    let scored: Vec<(Action, EmpowermentEstimate)> = actions
        .par_iter()
        .enumerate()
        .map(|(i, &a)| {
            let mut succ = w.clone();
            succ.step_in_place(a, e);
            let stream = key.child(tag::DECISION).child(i as u64);
            est.estimate(&succ, e, stream).map(|v| (a, v))
        })
        .collect::<Result<_>>()?;
    Ok(pick(scored, key.child(tag::TIE_BREAK)))
}

fn pick(evaluations: Vec<(Action, EmpowermentEstimate)>, key: StreamKey) -> Decision {
    let best = evaluations
        .iter()
        .map(|(_, v)| v.reachable_count)
        .max()
        .expect("non-empty action set");
    let ties: Vec<usize> = evaluations
        .iter()
        .enumerate()
        .filter(|(_, (_, v))| v.reachable_count == best)
        .map(|(i, _)| i)
        .collect();
    let winner = if ties.len() == 1 {
        ties[0]
    } else {
        ties[key.rng().random_range(0..ties.len())]
    };
    Decision {
        chosen: evaluations[winner].0,
        tie_set_size: ties.len(),
        evaluations,
    }
}

/// Sparse-sampling convenience wrapper.
pub fn choose_action_sparse(
    w: &WorldState,
    e: Embodiment,
    horizon: u32,
    samples: u32,
    key: StreamKey,
) -> Decision {
    choose_action(w, e, &Estimator::Sparse { horizon, samples }, key)
        .expect("sparse estimation is infallible")
}
