//! `blockworld`: batch front end for the empowerment block-world experiments.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use empowerment_core::empowerment::{
    enumeration_size, exact_empowerment_with_budget, sparse_empowerment, DEFAULT_ENUMERATION_BUDGET,
};
use empowerment_core::scenarios::{
    block_modifications, builtin, central_axis_cleared, classify_outcome_exp3, default_grid,
    exp2_crossing_turn, parse_grid, provenance_line, render_snapshots, render_trace, run_episode,
    run_estimator_study, Episode, ScenarioConfig, BUILTIN_NAMES,
};
use empowerment_core::{Error, StreamKey};

const TRACE_FILE: &str = "trace.csv";
const SNAPSHOT_FILE: &str = "snapshots.txt";
const CONFIG_FILE: &str = "config.toml";

#[derive(Parser)]
#[command(
    name = "blockworld",
    version,
    about = "Empowerment-driven agents in a voxel block world"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an episode and write trace.csv, snapshots.txt and config.toml.
    Run {
        #[command(flatten)]
        scenario: ScenarioArgs,
        #[arg(long)]
        turns: Option<u32>,
        /// Write a snapshot every this many turns (the final state is always written).
        #[arg(long)]
        snapshot_every: Option<u32>,
        /// Also record every embodiment's estimate of the current state.
        #[arg(long)]
        counterfactuals: bool,
        /// Output directory [default: <scenario name>-seed<seed>].
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulated vs modelled sparse-estimate quality on the five reference distributions.
    EstimatorStudy {
        #[arg(long, default_value_t = 1000)]
        reps: u32,
        /// Sample sizes as `start:end:step` ranges or integers, comma separated.
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "estimator-study")]
        out: PathBuf,
    },
    /// Exhaustive vs sparse empowerment of a scenario's initial state, horizons 1..=n.
    ExactVsSparse {
        #[command(flatten)]
        scenario: ScenarioArgs,
        /// Largest number of action sequences to enumerate.
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run a finished run directory from its config.toml and compare outputs byte for byte.
    Replay { dir: PathBuf },
}

#[derive(Args)]
struct ScenarioArgs {
    /// Built-in scenario name or path to a TOML config.
    scenario: String,
    #[arg(long)]
    seed: Option<u64>,
    /// Look-ahead n.
    #[arg(long)]
    horizon: Option<u32>,
    /// Sampled sequences m.
    #[arg(long)]
    samples: Option<u32>,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("unknown scenario {0:?}: not a file and not one of {names}", names = BUILTIN_NAMES.join(", "))]
    UnknownScenario(String),
    #[error("cannot read config {path}: {source}")]
    Config {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("replay of {0} differs")]
    Mismatch(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => 3,
            CliError::Core(_) | CliError::UnknownScenario(_) | CliError::Config { .. } => 2,
            CliError::Io { .. } | CliError::Mismatch(_) => 1,
        }
    }

    fn guidance(&self) -> Option<&'static str> {
        match self {
            CliError::Core(Error::BudgetExceeded { .. }) => {
                Some("lower --horizon, raise --budget, or use sparse sampling (`run`)")
            }
            _ => None,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_config(path: &Path) -> CliResult<ScenarioConfig> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Config {
        path: path.to_owned(),
        source,
    })?;
    Ok(ScenarioConfig::from_toml(&text)?)
}

fn write(dir: &Path, name: &str, text: &str) -> CliResult<()> {
    let path = dir.join(name);
    fs::write(&path, text).map_err(|source| CliError::Io { path, source })
}

fn create_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_owned(),
        source,
    })
}

impl ScenarioArgs {
    fn load(&self) -> CliResult<ScenarioConfig> {
        let mut cfg = match builtin(&self.scenario, self.seed.unwrap_or(0)) {
            Some(cfg) => cfg,
            None => {
                let path = Path::new(&self.scenario);
                if !path.is_file() {
                    return Err(CliError::UnknownScenario(self.scenario.clone()));
                }
                read_config(path)?
            }
        };
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(n) = self.horizon {
            cfg.horizon = n;
        }
        if let Some(m) = self.samples {
            cfg.samples = m;
        }
        Ok(cfg)
    }
}

fn default_out(cfg: &ScenarioConfig, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{}-seed{}{suffix}", cfg.name, cfg.seed))
}

fn write_run(dir: &Path, ep: &Episode) -> CliResult<()> {
    create_dir(dir)?;
    write(
        dir,
        CONFIG_FILE,
        &format!("{}\n{}", provenance_line(&ep.config), ep.config.to_toml()),
    )?;
    write(dir, TRACE_FILE, &render_trace(ep))?;
    write(dir, SNAPSHOT_FILE, &render_snapshots(ep))
}

/// Experiment-specific outcome fields for the summary line.
fn outcome_summary(ep: &Episode) -> String {
    let w = &ep.final_world;
    let name = ep.config.name.as_str();
    let mut s = format!("modifications={}", block_modifications(ep));
    if name.starts_with("exp1") {
        let _ = write!(s, " central_axis_cleared={}", central_axis_cleared(w));
    } else if name.starts_with("exp2") {
        match exp2_crossing_turn(ep) {
            Some(t) => {
                let _ = write!(s, " crossed_at_turn={t}");
            }
            None => s.push_str(" crossed=false"),
        }
    } else if name.starts_with("exp3") {
        let _ = write!(s, " outcome={}", classify_outcome_exp3(w).label());
    }
    s
}

fn cmd_run(
    scenario: &ScenarioArgs,
    turns: Option<u32>,
    snapshot_every: Option<u32>,
    counterfactuals: bool,
    out: Option<PathBuf>,
) -> CliResult<()> {
    let mut cfg = scenario.load()?;
    if let Some(t) = turns {
        cfg.turns = t;
    }
    if let Some(k) = snapshot_every {
        cfg.snapshot_every = k;
    }
    cfg.counterfactuals |= counterfactuals;
    cfg.validate()?;
    let dir = out.unwrap_or_else(|| default_out(&cfg, ""));
    let ep = run_episode(&cfg)?;
    write_run(&dir, &ep)?;
    let p = ep.final_world.agent_pos();
    println!(
        "{} seed={} turns={} final=({},{},{}) alive={} {} out={}",
        cfg.name,
        cfg.seed,
        ep.records.len(),
        p.x,
        p.y,
        p.z,
        ep.final_world.is_alive(),
        outcome_summary(&ep),
        dir.display()
    );
    Ok(())
}

fn cmd_study(reps: u32, grid: Option<&str>, seed: u64, out: &Path) -> CliResult<()> {
    let grid = match grid {
        Some(g) => parse_grid(g)?,
        None => default_grid(),
    };
    let table = run_estimator_study(&grid, reps, seed)?;
    create_dir(out)?;
    let head = table.provenance_line();
    for d in 0..5 {
        write(
            out,
            &format!("Prob{}.txt", d + 1),
            &format!(
                "{head} series=simulated p{}\n{}",
                d + 1,
                table.simulated_series(d)
            ),
        )?;
        write(
            out,
            &format!("Approx{}.txt", d + 1),
            &format!("{head} series=model p{}\n{}", d + 1, table.model_series(d)),
        )?;
    }
    let last = table.rows.last().expect("grid is non-empty");
    let finals: Vec<String> = last.simulated.iter().map(|v| format!("{v:.4}")).collect();
    println!(
        "estimator-study seed={seed} reps={reps} points={} m={} simulated=[{}] out={}",
        table.rows.len(),
        last.m,
        finals.join(", "),
        out.display()
    );
    Ok(())
}

fn cmd_exact_vs_sparse(
    scenario: &ScenarioArgs,
    budget: u64,
    out: Option<PathBuf>,
) -> CliResult<()> {
    let cfg = scenario.load()?;
    cfg.validate()?;
    let w = cfg.build_world()?;
    let e = cfg.embodiment;
    // fail before doing any work if the largest horizon is out of reach
    enumeration_size(e, cfg.horizon, budget)?;

    let root = StreamKey::root(cfg.seed);
    let mut csv = format!(
        "{}\nhorizon,exact_count,exact_nats,sparse_count,sparse_nats\n",
        provenance_line(&cfg)
    );
    for n in 1..=cfg.horizon {
        let exact = exact_empowerment_with_budget(&w, e, n, budget)?;
        let sparse = sparse_empowerment(&w, e, n, cfg.samples, root.child(u64::from(n)));
        let _ = writeln!(
            csv,
            "{n},{},{:.6},{},{:.6}",
            exact.reachable_count,
            exact.nats(),
            sparse.reachable_count,
            sparse.nats()
        );
        println!(
            "n={n} exact={} ({:.4} nats) sparse(m={})={} ({:.4} nats)",
            exact.reachable_count,
            exact.nats(),
            cfg.samples,
            sparse.reachable_count,
            sparse.nats()
        );
    }
    let dir = out.unwrap_or_else(|| default_out(&cfg, "-exact-vs-sparse"));
    create_dir(&dir)?;
    write(&dir, "exact_vs_sparse.csv", &csv)?;
    println!("{} seed={} out={}", cfg.name, cfg.seed, dir.display());
    Ok(())
}

/// 1-based number of the first differing line.
fn first_difference(a: &str, b: &str) -> usize {
    a.lines().zip(b.lines()).take_while(|(x, y)| x == y).count() + 1
}

fn cmd_replay(dir: &Path) -> CliResult<()> {
    let cfg = read_config(&dir.join(CONFIG_FILE))?;
    let ep = run_episode(&cfg)?;
    for (name, fresh) in [
        (TRACE_FILE, render_trace(&ep)),
        (SNAPSHOT_FILE, render_snapshots(&ep)),
    ] {
        let stored = read(&dir.join(name))?;
        if stored != fresh {
            eprintln!(
                "{name}: first difference at line {}",
                first_difference(&stored, &fresh)
            );
            return Err(CliError::Mismatch(dir.join(name).display().to_string()));
        }
    }
    println!(
        "replay {} seed={} identical ({TRACE_FILE}, {SNAPSHOT_FILE})",
        cfg.name, cfg.seed
    );
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            scenario,
            turns,
            snapshot_every,
            counterfactuals,
            out,
        } => cmd_run(&scenario, turns, snapshot_every, counterfactuals, out),
        Command::EstimatorStudy {
            reps,
            grid,
            seed,
            out,
        } => cmd_study(reps, grid.as_deref(), seed, &out),
        Command::ExactVsSparse {
            scenario,
            budget,
            out,
        } => cmd_exact_vs_sparse(&scenario, budget, out),
        Command::Replay { dir } => cmd_replay(&dir),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            if let Some(hint) = e.guidance() {
                eprintln!("hint: {hint}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
