//! Deterministic Monte Carlo harness: replications run on independent,
//! seed-addressed random streams so results are byte-identical regardless
//! of how work is scheduled across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arms::BanditModel;
use crate::complexity;
use crate::error::{Error, Result};
use crate::strategies::{optimal_budget_split, RunOutcome, StrategySpec};

/// The generator for replication `rep` of a simulation seeded with `seed`.
/// Streams are independent, so the outcome of a replication does not depend
/// on which worker runs it or in what order.
pub fn replication_rng(seed: u64, rep: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(rep);
    rng
}

/// Aggregate statistics over the replications of one simulation cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SimulationSummary {
    pub replications: u64,
    /// Fraction of replications recommending the wrong arm.
    pub error_prob: f64,
    /// Binomial standard error of `error_prob`.
    pub error_stderr: f64,
    /// 95% upper confidence bound on the error probability; uses the rule
    /// of three (3/N) when no errors were observed.
    pub error_upper95: f64,
    pub mean_tau: f64,
    pub tau_p50: u64,
    pub tau_p90: u64,
    pub tau_p99: u64,
    pub censored_frac: f64,
    pub seed: u64,
}

fn nearest_rank(sorted: &[u64], q: f64) -> u64 {
    debug_assert!(!sorted.is_empty());
    let n = sorted.len();
    let rank = (q * n as f64).ceil() as usize;
    sorted[rank.clamp(1, n) - 1]
}

/// Summarize a completed batch of replications.
pub fn summarize(outcomes: &[RunOutcome], seed: u64) -> Result<SimulationSummary> {
    if outcomes.is_empty() {
        return Err(Error::Config("replications must be positive".into()));
    }
    let n = outcomes.len() as f64;
    let errors = outcomes.iter().filter(|o| !o.correct).count() as f64;
    let censored = outcomes.iter().filter(|o| o.censored).count() as f64;
    let p = errors / n;
    let stderr = (p * (1.0 - p) / n).sqrt();
    let upper95 = if errors == 0.0 {
        3.0 / n
    } else {
        (p + 1.6448536269514722 * stderr).min(1.0)
    };
    let mut taus: Vec<u64> = outcomes.iter().map(|o| o.tau).collect();
    taus.sort_unstable();
    let mean_tau = taus.iter().map(|&t| t as f64).sum::<f64>() / n;
    Ok(SimulationSummary {
        replications: outcomes.len() as u64,
        error_prob: p,
        error_stderr: stderr,
        error_upper95: upper95,
        mean_tau,
        tau_p50: nearest_rank(&taus, 0.50),
        tau_p90: nearest_rank(&taus, 0.90),
        tau_p99: nearest_rank(&taus, 0.99),
        censored_frac: censored / n,
        seed,
    })
}

/// Run `reps` independent replications of `strategy` on `model` in parallel
/// and return the raw outcomes in replication order.
pub fn run_replications(
    model: &BanditModel,
    strategy: &StrategySpec,
    reps: u64,
    seed: u64,
) -> Result<Vec<RunOutcome>> {
    if reps == 0 {
        return Err(Error::Config("replications must be positive".into()));
    }
    strategy.validate()?;
    (0..reps)
        .into_par_iter()
        .map(|rep| {
            let mut rng = replication_rng(seed, rep);
            strategy.run(model, &mut rng)
        })
        .collect()
}

/// Run and summarize one simulation cell.
pub fn simulate(
    model: &BanditModel,
    strategy: &StrategySpec,
    reps: u64,
    seed: u64,
) -> Result<SimulationSummary> {
    let outcomes = run_replications(model, strategy, reps, seed)?;
    summarize(&outcomes, seed)
}

/// Parameter sweep: one simulation cell per value, varying either the risk
/// level or the static budget.
#[derive(Debug, Clone, PartialEq)]
pub enum Sweep {
    Delta(Vec<f64>),
    Budget(Vec<u64>),
}

fn with_delta(strategy: &StrategySpec, delta: f64) -> Result<StrategySpec> {
    let mut s = *strategy;
    match &mut s {
        StrategySpec::UniformElimination { rate, .. }
        | StrategySpec::AlphaElimination { rate, .. } => rate.delta = delta,
        StrategySpec::BernoulliKlStopping { delta: d, .. }
        | StrategySpec::Sprt { delta: d, .. } => *d = delta,
        StrategySpec::FixedBudgetStatic { .. } => {
            return Err(Error::Config(
                "the static strategy has no risk parameter to sweep".into(),
            ))
        }
    }
    s.validate()?;
    Ok(s)
}

fn with_budget(model: &BanditModel, strategy: &StrategySpec, t: u64) -> Result<StrategySpec> {
    match strategy {
        StrategySpec::FixedBudgetStatic { .. } => {
            let n1 = optimal_budget_split(model, t)?;
            Ok(StrategySpec::FixedBudgetStatic { t, n1 })
        }
        _ => Err(Error::Config(
            "budget sweeps apply only to the static strategy".into(),
        )),
    }
}

/// One row of sweep output: the swept value plus either a summary or the
/// error that cell produced.
#[derive(Debug)]
pub struct SweepRow {
    pub sweep_param: f64,
    pub result: Result<SimulationSummary>,
}

/// Run a sweep cell by cell. Each cell reuses the same base seed; cells are
/// distinguished by their strategy parameters, not their randomness, so
/// paired comparisons across cells share noise.
pub fn run_sweep(
    model: &BanditModel,
    strategy: &StrategySpec,
    sweep: &Sweep,
    reps: u64,
    seed: u64,
) -> Vec<SweepRow> {
    let cells: Vec<(f64, Result<StrategySpec>)> = match sweep {
        Sweep::Delta(deltas) => deltas
            .iter()
            .map(|&d| (d, with_delta(strategy, d)))
            .collect(),
        Sweep::Budget(budgets) => budgets
            .iter()
            .map(|&t| (t as f64, with_budget(model, strategy, t)))
            .collect(),
    };
    cells
        .into_iter()
        .map(|(value, spec)| SweepRow {
            sweep_param: value,
            result: spec.and_then(|s| simulate(model, &s, reps, seed)),
        })
        .collect()
}

pub const SWEEP_CSV_HEADER: &str = "sweep_param,replications,error_prob,error_stderr,mean_tau,\
                                    tau_p50,tau_p90,tau_p99,censored_frac,seed,error";

/// Render sweep rows as CSV. Failed cells carry the error message in the
/// trailing `error` column and empty statistics.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in rows {
        match &row.result {
            Ok(s) => out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{},\n",
                row.sweep_param,
                s.replications,
                s.error_prob,
                s.error_stderr,
                s.mean_tau,
                s.tau_p50,
                s.tau_p90,
                s.tau_p99,
                s.censored_frac,
                s.seed
            )),
            Err(e) => out.push_str(&format!(
                "{},,,,,,,,,,\"{}\"\n",
                row.sweep_param,
                e.to_string().replace('"', "'")
            )),
        }
    }
    out
}

/// The large-deviation reference curve `exp(-t / kappa_B)` for the optimal
/// static strategy at the given budgets.
pub fn theoretical_curve(model: &BanditModel, budgets: &[u64]) -> Result<Vec<(u64, f64)>> {
    let c_star = complexity::report(model)?.c_star;
    Ok(budgets
        .iter()
        .map(|&t| (t, (-c_star * t as f64).exp()))
        .collect())
}
