//! Python bindings for the `bestarm` library: model construction, the
//! complexity report, exploration rates, the LIL bound, and the Monte Carlo
//! simulation entry point.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use bestarm::rates::{self, ExplorationRate, RateKind};
use bestarm::sim;
use bestarm::strategies;
use bestarm::{complexity, config, BanditModel};

fn value_err(err: bestarm::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

/// A two-armed bandit model: arm 1 and arm 2 from the same family with
/// distinct means.
#[pyclass(frozen)]
struct Model {
    inner: BanditModel,
}

#[pymethods]
impl Model {
    /// Gaussian arms with known variances.
    #[staticmethod]
    fn gaussian(mu1: f64, var1: f64, mu2: f64, var2: f64) -> PyResult<Self> {
        Ok(Model {
            inner: BanditModel::gaussian(mu1, var1, mu2, var2).map_err(value_err)?,
        })
    }

    /// Bernoulli arms with the given success probabilities.
    #[staticmethod]
    fn bernoulli(mu1: f64, mu2: f64) -> PyResult<Self> {
        Ok(Model {
            inner: BanditModel::bernoulli(mu1, mu2).map_err(value_err)?,
        })
    }

    /// Parse the JSON model format used by the CLI, e.g.
    /// `{"family":"gaussian","mu":[0.5,0.0],"sigma2":[0.25,0.25]}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Model {
            inner: config::parse_model(text).map_err(value_err)?,
        })
    }

    #[getter]
    fn means(&self) -> (f64, f64) {
        (self.inner.arm1().mean(), self.inner.arm2().mean())
    }

    #[getter]
    fn gap(&self) -> f64 {
        self.inner.gap()
    }

    #[getter]
    fn best_arm(&self) -> u8 {
        self.inner.best_arm()
    }

    #[getter]
    fn family(&self) -> &'static str {
        if self.inner.is_gaussian() {
            "gaussian"
        } else {
            "bernoulli"
        }
    }

    fn __repr__(&self) -> String {
        let (m1, m2) = (self.inner.arm1().mean(), self.inner.arm2().mean());
        format!("Model(family={:?}, means=({m1}, {m2}))", self.family())
    }
}

/// All complexity constants of a model as a dict: c_star, c_lower_star,
/// i_star, i_lower_star, kappa_b, kappa_c_lower, optimal_alpha, and (for
/// Bernoulli models) theta_star / theta_lower_star.
#[pyfunction]
fn complexity_report<'py>(py: Python<'py>, model: &Model) -> PyResult<Bound<'py, PyDict>> {
    let report = complexity::report(&model.inner).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("c_star", report.c_star)?;
    dict.set_item("c_lower_star", report.c_lower_star)?;
    dict.set_item("i_star", report.i_star)?;
    dict.set_item("i_lower_star", report.i_lower_star)?;
    dict.set_item("kappa_b", report.kappa_b)?;
    dict.set_item("kappa_c_lower", report.kappa_c_lower)?;
    dict.set_item("optimal_alpha", report.optimal_alpha)?;
    dict.set_item("theta_star", report.theta_star)?;
    dict.set_item("theta_lower_star", report.theta_lower_star)?;
    Ok(dict)
}

fn parse_kind(name: &str) -> PyResult<RateKind> {
    Ok(match name {
        "robbins" => RateKind::Robbins,
        "improved_lil" => RateKind::ImprovedLil,
        "alpha_elim" => RateKind::AlphaElim,
        "conjectured_log_log" => RateKind::ConjecturedLogLog,
        "fixed_log" => RateKind::FixedLog,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown rate kind {other:?}"
            )))
        }
    })
}

/// Evaluate the exploration rate `beta(t, delta)` for the named kind.
#[pyfunction]
fn beta(kind: &str, delta: f64, t: u64) -> PyResult<f64> {
    ExplorationRate::new(parse_kind(kind)?, delta)
        .and_then(|rate| rate.beta(t))
        .map_err(value_err)
}

/// The sub-Gaussian LIL deviation bound at level `x` with exponent
/// `beta_exp`.
#[pyfunction]
fn lil_bound(x: f64, beta_exp: f64) -> PyResult<f64> {
    rates::lil_bound(x, beta_exp).map_err(value_err)
}

/// The Bernoulli stopping statistic `I_*(x, y)` for empirical means `x, y`.
#[pyfunction]
fn kl_stopping_statistic(x: f64, y: f64) -> f64 {
    strategies::bernoulli_stopping_statistic(x, y)
}

/// The optimal number of arm-1 samples out of a static budget of `t`.
#[pyfunction]
fn optimal_budget_split(model: &Model, t: u64) -> PyResult<u64> {
    strategies::optimal_budget_split(&model.inner, t).map_err(value_err)
}

/// Run `reps` Monte Carlo replications of a strategy (given in the CLI's
/// JSON format) and return the summary as a dict.
#[pyfunction]
fn simulate<'py>(
    py: Python<'py>,
    model: &Model,
    strategy_json: &str,
    reps: u64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let strategy = config::parse_strategy(strategy_json, &model.inner).map_err(value_err)?;
    let summary = py
        .detach(|| sim::simulate(&model.inner, &strategy, reps, seed))
        .map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("replications", summary.replications)?;
    dict.set_item("error_prob", summary.error_prob)?;
    dict.set_item("error_stderr", summary.error_stderr)?;
    dict.set_item("error_upper95", summary.error_upper95)?;
    dict.set_item("mean_tau", summary.mean_tau)?;
    dict.set_item("tau_p50", summary.tau_p50)?;
    dict.set_item("tau_p90", summary.tau_p90)?;
    dict.set_item("tau_p99", summary.tau_p99)?;
    dict.set_item("censored_frac", summary.censored_frac)?;
    dict.set_item("seed", summary.seed)?;
    Ok(dict)
}

/// Large-deviation reference curve `exp(-t / kappa_B)` at the given budgets.
#[pyfunction]
fn theoretical_curve(model: &Model, budgets: Vec<u64>) -> PyResult<Vec<(u64, f64)>> {
    sim::theoretical_curve(&model.inner, &budgets).map_err(value_err)
}

#[pymodule]
fn bestarm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(complexity_report, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(lil_bound, m)?)?;
    m.add_function(wrap_pyfunction!(kl_stopping_statistic, m)?)?;
    m.add_function(wrap_pyfunction!(optimal_budget_split, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(theoretical_curve, m)?)?;
    Ok(())
}
