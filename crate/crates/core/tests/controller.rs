use empowerment_core::empowerment::DEFAULT_ENUMERATION_BUDGET;
use empowerment_core::{
    action_set, choose_action, Action, Cell, Dims, Embodiment, Estimator, Pos, StreamKey,
    WorldState,
};

const EXACT_1: Estimator = Estimator::Exact {
    horizon: 1,
    budget: DEFAULT_ENUMERATION_BUDGET,
};

#[test]
fn ties_are_broken_uniformly() {
    // one cell: every action leaves the agent where it is
    let w = WorldState::new(Dims::new(1, 1, 1).unwrap(), Pos::new(0, 0, 0)).unwrap();
    let e = Embodiment::Climbing;
    let actions = action_set(e);
    let trials = 2400;
    let mut hits = vec![0u32; actions.len()];
    for t in 0..trials {
        let d = choose_action(&w, e, &EXACT_1, StreamKey::root(t)).unwrap();
        assert_eq!(d.tie_set_size, actions.len());
        hits[actions.iter().position(|&a| a == d.chosen).unwrap()] += 1;
    }
    let expected = f64::from(trials as u32) / actions.len() as f64;
    let chi2: f64 = hits
        .iter()
        .map(|&h| (f64::from(h) - expected).powi(2) / expected)
        .sum();
    // 11 degrees of freedom, p = 0.001
    assert!(chi2 < 31.26, "chi-square {chi2:.2} for counts {hits:?}");
}

#[test]
fn exact_scoring_finds_the_single_best_move() {
    // non-climber on a floor, boxed in north and south, with the open middle to its east
    let mut w = WorldState::new(Dims::new(3, 3, 3).unwrap(), Pos::new(0, 1, 1)).unwrap();
    w.fill_layers(0, 0, Cell::Earth).unwrap();
    w.set_cell(Pos::new(0, 0, 1), Cell::Earth).unwrap();
    w.set_cell(Pos::new(0, 2, 1), Cell::Earth).unwrap();
    let e = Embodiment::NonClimbing;

    for seed in 0..25 {
        let d = choose_action(&w, e, &EXACT_1, StreamKey::root(seed)).unwrap();
        assert_eq!(d.chosen, Action::MoveEast);
        assert_eq!(d.tie_set_size, 1);
        let runner_up = d
            .evaluations
            .iter()
            .filter(|(a, _)| *a != Action::MoveEast)
            .map(|(_, v)| v.reachable_count)
            .max()
            .unwrap();
        assert!(d.best_count() > runner_up);
    }
}

#[test]
fn dead_agent_has_nothing_to_choose() {
    let mut w = WorldState::new(Dims::new(3, 3, 3).unwrap(), Pos::new(1, 1, 1)).unwrap();
    w.kill();
    let d = choose_action(&w, Embodiment::Flying, &EXACT_1, StreamKey::root(4)).unwrap();
    assert_eq!(d.tie_set_size, action_set(Embodiment::Flying).len());
    assert_eq!(d.best_count(), 1);
}

#[test]
fn budget_overflow_is_reported() {
    let w = WorldState::new(Dims::new(2, 2, 2).unwrap(), Pos::new(0, 0, 0)).unwrap();
    let est = Estimator::Exact {
        horizon: 9,
        budget: 1000,
    };
    let err = choose_action(&w, Embodiment::Climbing, &est, StreamKey::root(0)).unwrap_err();
    assert!(matches!(
        err,
        empowerment_core::Error::BudgetExceeded { budget: 1000, .. }
    ));
}
