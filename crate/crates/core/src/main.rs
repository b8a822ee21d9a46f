//! `bestarm` — command-line front end for two-armed best-arm identification.
//!
//! Four subcommands: `complexity` (model constants), `rates` (exploration
//! rate tables), `bound` (the LIL deviation bound), and `simulate` (Monte
//! Carlo replication of a strategy, optionally sweeping delta or budget).
//!
//! Diagnostics — the resolved config digest and `--progress` lines — go to
//! stderr; machine-readable results (key=value, JSON, CSV) go to stdout or
//! the `--out` file. Exit codes: 2 for configuration errors, 3 for runtime
//! strategy errors.

use std::fs;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bestarm::error::Error;
use bestarm::rates::{lil_bound, ExplorationRate, RateKind};
use bestarm::sim::{self, Sweep};
use bestarm::strategies::StrategySpec;
use bestarm::{complexity, config, BanditModel};

#[derive(Parser)]
#[command(name = "bestarm", version, about = "Two-armed best-arm identification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the complexity constants of a model.
    Complexity(ComplexityArgs),
    /// Tabulate an exploration rate beta(t, delta) as CSV.
    Rates(RatesArgs),
    /// Evaluate the sub-Gaussian LIL deviation bound.
    Bound(BoundArgs),
    /// Run Monte Carlo replications of a strategy and emit CSV.
    Simulate(SimulateArgs),
}

#[derive(Args)]
struct ComplexityArgs {
    /// Path to a model JSON file.
    #[arg(long)]
    model: String,
    /// Also run the grid-search oracle and print its values.
    #[arg(long)]
    oracle: bool,
    /// Grid resolution for the oracle.
    #[arg(long, default_value_t = 2000)]
    grid: usize,
    /// Emit the report as JSON instead of key=value lines.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RatesArgs {
    /// Rate kind: robbins, improved_lil, alpha_elim, conjectured_log_log,
    /// fixed_log.
    #[arg(long)]
    kind: String,
    /// Risk parameter delta in (0,1).
    #[arg(long)]
    delta: f64,
    /// Smallest time to tabulate.
    #[arg(long, default_value_t = 1)]
    t_min: u64,
    /// Largest time to tabulate.
    #[arg(long)]
    t_max: u64,
    /// Step between tabulated times.
    #[arg(long, default_value_t = 1)]
    step: u64,
}

#[derive(Args)]
struct BoundArgs {
    /// Deviation level x (must exceed 8/(e-1)^2).
    #[arg(long)]
    x: f64,
    /// Exponent beta of the bound (must exceed 1/(1 - 1/(2x))).
    #[arg(long, default_value_t = 1.5)]
    beta_exp: f64,
}

#[derive(Args)]
struct SimulateArgs {
    /// Path to a model JSON file.
    #[arg(long)]
    model: String,
    /// Path to a strategy JSON file.
    #[arg(long)]
    strategy: String,
    /// Number of Monte Carlo replications.
    #[arg(long)]
    reps: u64,
    /// Base seed; defaults to the AB_SEED environment variable, then 0.
    #[arg(long)]
    seed: Option<u64>,
    /// Write CSV here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Sweep the risk parameter over these values.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    sweep_delta: Option<Vec<f64>>,
    /// Sweep the static budget over these values.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    sweep_budget: Option<Vec<u64>>,
    /// Report per-cell progress on stderr.
    #[arg(long)]
    progress: bool,
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Strategy(_) | Error::UnequalVariances | Error::NoConvergence { .. } => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Complexity(args) => cmd_complexity(args),
        Command::Rates(args) => cmd_rates(args),
        Command::Bound(args) => cmd_bound(args),
        Command::Simulate(args) => cmd_simulate(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn read_model(path: &str) -> Result<BanditModel, Error> {
    let text =
        fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
    config::parse_model(&text)
}

fn cmd_complexity(args: ComplexityArgs) -> Result<(), Error> {
    let model = read_model(&args.model)?;
    let report = complexity::report(&model)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("c_star={}", report.c_star);
        println!("c_lower_star={}", report.c_lower_star);
        println!("i_star={}", report.i_star);
        println!("i_lower_star={}", report.i_lower_star);
        println!("kappa_B={}", report.kappa_b);
        println!("kappa_C_lower={}", report.kappa_c_lower);
        println!("optimal_alpha={}", report.optimal_alpha);
        if let Some(theta) = report.theta_star {
            println!("theta_star={theta}");
        }
        if let Some(theta) = report.theta_lower_star {
            println!("theta_lower_star={theta}");
        }
    }
    if args.oracle {
        let oracle = complexity::brute_force_complexities(&model, args.grid)?;
        println!("oracle_c_star={}", oracle.c_star);
        println!("oracle_c_lower_star={}", oracle.c_lower_star);
        println!("oracle_i_star={}", oracle.i_star);
        println!("oracle_i_lower_star={}", oracle.i_lower_star);
    }
    Ok(())
}

fn parse_kind(name: &str) -> Result<RateKind, Error> {
    Ok(match name {
        "robbins" => RateKind::Robbins,
        "improved_lil" => RateKind::ImprovedLil,
        "alpha_elim" => RateKind::AlphaElim,
        "conjectured_log_log" => RateKind::ConjecturedLogLog,
        "fixed_log" => RateKind::FixedLog,
        other => {
            return Err(Error::Config(format!(
                "unknown rate kind {other:?} (expected robbins, improved_lil, \
                 alpha_elim, conjectured_log_log, or fixed_log)"
            )))
        }
    })
}

fn cmd_rates(args: RatesArgs) -> Result<(), Error> {
    let rate = ExplorationRate::new(parse_kind(&args.kind)?, args.delta)
        .map_err(|e| Error::Config(e.to_string()))?;
    if args.t_min < 1 || args.t_min > args.t_max || args.step < 1 {
        return Err(Error::Config(format!(
            "need 1 <= t_min <= t_max and step >= 1, got t_min={}, t_max={}, step={}",
            args.t_min, args.t_max, args.step
        )));
    }
    println!("t,beta");
    let mut t = args.t_min;
    while t <= args.t_max {
        println!("{},{}", t, rate.beta(t)?);
        t += args.step;
    }
    Ok(())
}

fn cmd_bound(args: BoundArgs) -> Result<(), Error> {
    let value = lil_bound(args.x, args.beta_exp).map_err(|e| Error::Config(e.to_string()))?;
    println!("x={}", args.x);
    println!("beta_exp={}", args.beta_exp);
    println!("bound={value}");
    Ok(())
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("AB_SEED") {
        Ok(text) => text
            .parse::<u64>()
            .map_err(|_| Error::Config(format!("AB_SEED must be a 64-bit integer, got {text:?}"))),
        Err(_) => Ok(0),
    }
}

/// The swept value reported for a non-sweep run: the strategy's risk level
/// if it has one, otherwise its budget.
fn single_cell_param(strategy: &StrategySpec) -> f64 {
    match strategy.delta() {
        Some(delta) => delta,
        None => match *strategy {
            StrategySpec::FixedBudgetStatic { t, .. } => t as f64,
            _ => f64::NAN,
        },
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), Error> {
    if args.reps == 0 {
        return Err(Error::Config("reps must be positive".into()));
    }
    let model = read_model(&args.model)?;
    let strategy_text = fs::read_to_string(&args.strategy)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", args.strategy)))?;
    let strategy = config::parse_strategy(&strategy_text, &model)?;
    let seed = resolve_seed(args.seed)?;

    eprintln!(
        "config: model={} strategy={} reps={} seed={}",
        serde_json::to_string(&report_model(&model)).unwrap(),
        serde_json::to_string(&strategy).unwrap(),
        args.reps,
        seed
    );

    let sweep = match (args.sweep_delta, args.sweep_budget) {
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "--sweep-delta and --sweep-budget are mutually exclusive".into(),
            ))
        }
        (Some(deltas), None) => Some(Sweep::Delta(deltas)),
        (None, Some(budgets)) => Some(Sweep::Budget(budgets)),
        (None, None) => None,
    };

    let rows = match sweep {
        Some(sweep) => {
            let mut rows = Vec::new();
            let values: Vec<f64> = match &sweep {
                Sweep::Delta(v) => v.clone(),
                Sweep::Budget(v) => v.iter().map(|&t| t as f64).collect(),
            };
            // run cell by cell so --progress can narrate the sweep
            for (i, row) in sim::run_sweep(&model, &strategy, &sweep, args.reps, seed)
                .into_iter()
                .enumerate()
            {
                if args.progress {
                    eprintln!("progress: cell {}/{} (param {})", i + 1, values.len(), row.sweep_param);
                }
                rows.push(row);
            }
            rows
        }
        None => {
            if args.progress {
                eprintln!("progress: running {} replications", args.reps);
            }
            vec![sim::SweepRow {
                sweep_param: single_cell_param(&strategy),
                result: sim::simulate(&model, &strategy, args.reps, seed),
            }]
        }
    };

    // a run that only failed (single cell) should surface its error status
    if rows.len() == 1 {
        if let Err(e) = &rows[0].result {
            return Err(Error::Strategy(e.to_string()));
        }
    }

    let csv = sim::sweep_csv(&rows);
    match args.out {
        Some(path) => {
            let mut file = fs::File::create(&path)
                .map_err(|e| Error::Config(format!("cannot write {path}: {e}")))?;
            file.write_all(csv.as_bytes())
                .map_err(|e| Error::Config(format!("cannot write {path}: {e}")))?;
            eprintln!("wrote {path}");
        }
        None => print!("{csv}"),
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct ModelDigest {
    family: &'static str,
    mu: [f64; 2],
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma2: Option<[f64; 2]>,
}

fn report_model(model: &BanditModel) -> ModelDigest {
    let mu = [model.arm1().mean(), model.arm2().mean()];
    match model.sigmas() {
        Some((s1, s2)) => ModelDigest {
            family: "gaussian",
            mu,
            sigma2: Some([s1 * s1, s2 * s2]),
        },
        None => ModelDigest {
            family: "bernoulli",
            mu,
            sigma2: None,
        },
    }
}
