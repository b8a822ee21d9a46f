//! JSON config parsing for models and strategies.
//!
//! Model files look like
//! `{"family":"gaussian","mu":[0.5,0.0],"sigma2":[0.25,0.25]}` or
//! `{"family":"bernoulli","mu":[0.6,0.4]}`. Strategy files are tagged by a
//! `"strategy"` field; the safety `cap` may be omitted, in which case a
//! model-dependent default is filled in.

use serde::Deserialize;

use crate::arms::BanditModel;
use crate::error::{Error, Result};
use crate::rates::ExplorationRate;
use crate::strategies::{default_cap, optimal_budget_split, StrategySpec};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelConfig {
    family: String,
    mu: [f64; 2],
    #[serde(default)]
    sigma2: Option<[f64; 2]>,
}

/// Parse a model config from JSON text.
pub fn parse_model(json: &str) -> Result<BanditModel> {
    let cfg: ModelConfig =
        serde_json::from_str(json).map_err(|e| Error::Config(format!("bad model file: {e}")))?;
    match cfg.family.as_str() {
        "gaussian" => {
            let sigma2 = cfg.sigma2.ok_or_else(|| {
                Error::Config("gaussian models require a sigma2 field".into())
            })?;
            BanditModel::gaussian(cfg.mu[0], sigma2[0], cfg.mu[1], sigma2[1])
        }
        "bernoulli" => {
            if cfg.sigma2.is_some() {
                return Err(Error::Config(
                    "bernoulli models do not take a sigma2 field".into(),
                ));
            }
            BanditModel::bernoulli(cfg.mu[0], cfg.mu[1])
        }
        other => Err(Error::Config(format!(
            "unknown family {other:?} (expected \"gaussian\" or \"bernoulli\")"
        ))),
    }
}

#[derive(Debug, Deserialize)]
#[serde(tag = "strategy", rename_all = "snake_case")]
enum StrategyConfig {
    FixedBudgetStatic {
        t: u64,
        #[serde(default)]
        n1: Option<u64>,
    },
    UniformElimination {
        rate: ExplorationRate,
        #[serde(default)]
        cap: Option<u64>,
    },
    AlphaElimination {
        alpha: f64,
        rate: ExplorationRate,
        #[serde(default)]
        cap: Option<u64>,
    },
    BernoulliKlStopping {
        delta: f64,
        #[serde(default)]
        cap: Option<u64>,
    },
    Sprt {
        delta: f64,
        #[serde(default)]
        known_means: Option<(f64, f64)>,
        #[serde(default)]
        cap: Option<u64>,
    },
}

/// Parse a strategy config from JSON text, resolving defaults against the
/// model it will run on: a missing `cap` becomes the model's safety cap, a
/// missing static `n1` becomes the optimal split, and missing SPRT
/// `known_means` become the true means.
pub fn parse_strategy(json: &str, model: &BanditModel) -> Result<StrategySpec> {
    let cfg: StrategyConfig =
        serde_json::from_str(json).map_err(|e| Error::Config(format!("bad strategy file: {e}")))?;
    let spec = match cfg {
        StrategyConfig::FixedBudgetStatic { t, n1 } => {
            let n1 = match n1 {
                Some(n1) => n1,
                None => optimal_budget_split(model, t)?,
            };
            StrategySpec::FixedBudgetStatic { t, n1 }
        }
        StrategyConfig::UniformElimination { rate, cap } => StrategySpec::UniformElimination {
            rate,
            cap: cap.unwrap_or_else(|| default_cap(model, rate.delta)),
        },
        StrategyConfig::AlphaElimination { alpha, rate, cap } => StrategySpec::AlphaElimination {
            alpha,
            rate,
            cap: cap.unwrap_or_else(|| default_cap(model, rate.delta)),
        },
        StrategyConfig::BernoulliKlStopping { delta, cap } => StrategySpec::BernoulliKlStopping {
            delta,
            cap: cap.unwrap_or_else(|| default_cap(model, delta)),
        },
        StrategyConfig::Sprt {
            delta,
            known_means,
            cap,
        } => StrategySpec::Sprt {
            delta,
            known_means: known_means
                .unwrap_or_else(|| (model.arm1().mean(), model.arm2().mean())),
            cap: cap.unwrap_or_else(|| default_cap(model, delta)),
        },
    };
    spec.validate()
        .map_err(|e| Error::Config(format!("invalid strategy: {e}")))?;
    Ok(spec)
}
