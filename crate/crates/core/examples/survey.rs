//! Per-seed outcome summary for a built-in scenario.
//!
//! `cargo run --release --example survey -- exp3 0..10 [turns]`

use std::time::Instant;

use empowerment_core::scenarios::{
    block_modifications, builtin, central_axis_cleared, classify_outcome_exp3, exp2_crossing_turn,
    run_episode,
};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (Some(name), Some(range)) = (args.first(), args.get(1)) else {
        eprintln!("usage: survey <scenario> <first>..<end> [turns]");
        std::process::exit(2);
    };
    let (lo, hi) = range.split_once("..").expect("seed range like 0..10");
    let seeds = lo.parse::<u64>().unwrap()..hi.parse::<u64>().unwrap();
    let turns: Option<u32> = args.get(2).map(|t| t.parse().unwrap());

    for seed in seeds {
        let mut cfg = builtin(name, seed).unwrap_or_else(|| panic!("unknown scenario {name}"));
        if let Some(t) = turns {
            cfg.turns = t;
        }
        let t0 = Instant::now();
        let ep = run_episode(&cfg).unwrap();
        let w = &ep.final_world;
        let p = w.agent_pos();
        println!(
            "seed={seed} alive={} final=({},{},{}) mods={} crossed={:?} axis={} exp3={} {:.1}s",
            w.is_alive(),
            p.x,
            p.y,
            p.z,
            block_modifications(&ep),
            exp2_crossing_turn(&ep),
            central_axis_cleared(w),
            classify_outcome_exp3(w).label(),
            t0.elapsed().as_secs_f64()
        );
    }
}
