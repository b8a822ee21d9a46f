//! Exploration rates `beta(t, delta)` for elimination stopping rules, and the
//! sub-Gaussian law-of-iterated-logarithm deviation bound they rest on.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RateKind {
    /// `(t+1)/t * log((t+1)/(2 delta))` — Robbins' provably safe rate.
    Robbins,
    /// `log(1/delta) + (3/4) loglog(1/delta) + (3/2) log(1 + log(t/2))`.
    ImprovedLil,
    /// `log(t/delta) + 2 loglog(6t)` — for alpha-elimination.
    AlphaElim,
    /// `log((log(t) + 1)/delta)` — conjectured optimal rate.
    ConjecturedLogLog,
    /// `log(1/delta)` — only safe for a single pre-specified stopping time.
    FixedLog,
}

impl RateKind {
    pub fn name(self) -> &'static str {
        match self {
            RateKind::Robbins => "robbins",
            RateKind::ImprovedLil => "improved_lil",
            RateKind::AlphaElim => "alpha_elim",
            RateKind::ConjecturedLogLog => "conjectured_log_log",
            RateKind::FixedLog => "fixed_log",
        }
    }
}

/// A named exploration rate together with its risk parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExplorationRate {
    pub kind: RateKind,
    pub delta: f64,
}

impl ExplorationRate {
    pub fn new(kind: RateKind, delta: f64) -> Result<Self> {
        let rate = ExplorationRate { kind, delta };
        rate.validate()?;
        Ok(rate)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::Domain(format!(
                "delta must lie in (0,1), got {}",
                self.delta
            )));
        }
        if self.kind == RateKind::ImprovedLil && self.delta >= (-1.0f64).exp() {
            return Err(Error::Domain(format!(
                "the improved LIL rate requires delta < 1/e, got {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// Evaluate `beta(t, delta)`.
    pub fn beta(&self, t: u64) -> Result<f64> {
        if t < 1 {
            return Err(Error::Domain("t must be at least 1".into()));
        }
        let delta = self.delta;
        match self.kind {
            RateKind::Robbins => {
                let tf = t as f64;
                Ok((tf + 1.0) / tf * ((tf + 1.0) / (2.0 * delta)).ln())
            }
            RateKind::ImprovedLil => {
                if t < 2 {
                    return Err(Error::Domain(
                        "the improved LIL rate requires t >= 2".into(),
                    ));
                }
                let z = (1.0 / delta).ln();
                Ok(z + 0.75 * z.ln() + 1.5 * (1.0 + (t as f64 / 2.0).ln()).ln())
            }
            RateKind::AlphaElim => {
                let tf = t as f64;
                Ok((tf / delta).ln() + 2.0 * (6.0 * tf).ln().ln())
            }
            RateKind::ConjecturedLogLog => {
                let tf = t as f64;
                Ok(((tf.ln() + 1.0) / delta).ln())
            }
            RateKind::FixedLog => Ok((1.0 / delta).ln()),
        }
    }
}

/// Riemann zeta on `u > 1`: partial sum plus an Euler-Maclaurin tail.
///
/// With `N = 1e5` terms the tail correction is accurate far beyond the
/// 1e-10 absolute error budget.
pub fn zeta(u: f64) -> f64 {
    assert!(u > 1.0, "zeta requires u > 1, got {u}");
    zeta_with_terms(u, 100_000)
}

pub(crate) fn zeta_with_terms(u: f64, n: u64) -> f64 {
    let mut sum = 0.0;
    for k in 1..=n {
        sum += (k as f64).powf(-u);
    }
    let nf = n as f64;
    sum + nf.powf(1.0 - u) / (u - 1.0) - 0.5 * nf.powf(-u) + u / 12.0 * nf.powf(-u - 1.0)
}

const LIL_X_MIN: f64 = 8.0 / ((std::f64::consts::E - 1.0) * (std::f64::consts::E - 1.0));

/// Deviation bound for sub-Gaussian sums: probability that the normalized sum
/// ever exceeds `sqrt(2t(x + beta_exp * loglog(et)))` is at most
/// `sqrt(e) zeta(beta_exp (1 - 1/(2x))) (sqrt(x)/(2 sqrt 2) + 1)^beta_exp exp(-x)`.
pub fn lil_bound(x: f64, beta_exp: f64) -> Result<f64> {
    if !(beta_exp > 1.0) {
        return Err(Error::Domain(format!(
            "beta_exp must exceed 1, got {beta_exp}"
        )));
    }
    if !(x >= LIL_X_MIN) {
        return Err(Error::Domain(format!(
            "x must be at least 8/(e-1)^2 = {LIL_X_MIN:.6}, got {x}"
        )));
    }
    let u = beta_exp * (1.0 - 1.0 / (2.0 * x));
    if u <= 1.0 {
        return Err(Error::Domain(format!(
            "beta_exp (1 - 1/(2x)) = {u} must exceed 1 for the zeta series to converge"
        )));
    }
    let sqrt_e = 0.5f64.exp();
    Ok(sqrt_e * zeta(u) * (x.sqrt() / (2.0 * 2.0f64.sqrt()) + 1.0).powf(beta_exp) * (-x).exp())
}

/// Left-hand side of the sufficient condition certifying the improved LIL
/// rate at risk level `delta = exp(-z)`, with exponents `d = 3/2`,
/// `c = 3/4`. The rate is certified when this is at most 1.
pub fn improved_rate_lhs(z: f64) -> Result<f64> {
    if !(z > 1.0) {
        return Err(Error::Domain(format!(
            "z = log(1/delta) must exceed 1, got {z}"
        )));
    }
    let (d, c) = (1.5, 0.75);
    let w = z + c * z.ln();
    let u = d * (1.0 - 1.0 / (2.0 * w));
    if u <= 1.0 {
        // zeta series diverges; the condition cannot hold
        return Ok(f64::INFINITY);
    }
    let sqrt_e = 0.5f64.exp();
    Ok(sqrt_e * zeta(u) * (w.sqrt() + 2.0 * 2.0f64.sqrt()).powf(d)
        / ((2.0 * 2.0f64.sqrt()).powf(d) * z.powf(c)))
}

/// Whether the improved LIL rate is certified (not merely conjectured) to be
/// safe at this `delta`. The certification is a sufficient condition only; it
/// holds in the limit `delta -> 0` but kicks in far below any practically
/// used risk level, so callers typically warn rather than abort when it
/// returns false.
pub fn improved_rate_valid(delta: f64) -> Result<bool> {
    if !(delta > 0.0 && delta < (-1.0f64).exp()) {
        return Err(Error::Domain(format!(
            "delta must lie in (0, 1/e), got {delta}"
        )));
    }
    Ok(improved_rate_lhs((1.0 / delta).ln())? <= 1.0)
}
