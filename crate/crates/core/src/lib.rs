//! Best-arm identification for two-armed bandits: complexity constants,
//! exploration rates, sequential strategies, and a deterministic Monte
//! Carlo harness.
//!
//! The library covers both canonical objectives:
//!
//! * **Fixed budget** — the sampling horizon is set in advance and the goal
//!   is to minimize the probability of recommending the worse arm; error
//!   decays like `exp(-t / kappa_B)`.
//! * **Fixed confidence** — sampling continues until a stopping rule fires
//!   with a `delta`-PAC guarantee, and the goal is to minimize the expected
//!   stopping time; `E[tau] ~ kappa_C log(1/delta)`.
//!
//! [`arms`] defines the distribution models, [`complexity`] the constants
//! `c*`, `c_*`, `I*`, `I_*` and the Chernoff information, [`rates`] the
//! exploration rates `beta(t, delta)` with their deviation bound,
//! [`strategies`] the executable sampling/stopping rules, and [`sim`] the
//! replication harness. [`config`] parses the JSON files the CLI consumes.

pub mod arms;
pub mod complexity;
pub mod config;
pub mod error;
pub mod rates;
pub mod sim;
pub mod strategies;

pub use arms::{ArmSpec, BanditModel, ExpFamily};
pub use complexity::ComplexityReport;
pub use error::{Error, Result};
pub use rates::{ExplorationRate, RateKind};
pub use sim::{SimulationSummary, Sweep};
pub use strategies::{RunOutcome, StrategySpec};
