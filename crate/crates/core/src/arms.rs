//! Arm distribution models: Gaussian with known variance and canonical
//! one-parameter exponential families (Bernoulli instance), together with
//! sampling and Kullback-Leibler divergences.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A canonical one-parameter exponential family with density
/// `A(x) exp(theta * x - b(theta))`.
///
/// Only the Bernoulli instance is shipped; the natural parameter is the
/// log-odds `theta = log(mu / (1 - mu))` with log-partition
/// `b(theta) = log(1 + e^theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ExpFamily {
    Bernoulli,
}

impl ExpFamily {
    pub fn name(self) -> &'static str {
        match self {
            ExpFamily::Bernoulli => "bernoulli",
        }
    }

    /// Log-partition function `b(theta)`.
    pub fn log_partition(self, theta: f64) -> f64 {
        match self {
            // log(1 + e^theta), evaluated stably for large |theta|
            ExpFamily::Bernoulli => theta.max(0.0) + (-theta.abs()).exp().ln_1p(),
        }
    }

    /// Mean function `mu(theta) = b'(theta)`, strictly increasing on the
    /// parameter interval.
    pub fn mean(self, theta: f64) -> f64 {
        match self {
            ExpFamily::Bernoulli => 1.0 / (1.0 + (-theta).exp()),
        }
    }

    /// Inverse of the mean function.
    pub fn mean_inverse(self, mu: f64) -> f64 {
        match self {
            ExpFamily::Bernoulli => (mu / (1.0 - mu)).ln(),
        }
    }

    /// Open interval of valid natural parameters.
    pub fn param_interval(self) -> (f64, f64) {
        match self {
            ExpFamily::Bernoulli => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Open interval of attainable means.
    pub fn mean_interval(self) -> (f64, f64) {
        match self {
            ExpFamily::Bernoulli => (0.0, 1.0),
        }
    }

    /// KL divergence in natural parameters:
    /// `K(theta1, theta2) = mu(theta1)(theta1 - theta2) - b(theta1) + b(theta2)`.
    pub fn kl(self, theta1: f64, theta2: f64) -> f64 {
        self.mean(theta1) * (theta1 - theta2) - self.log_partition(theta1)
            + self.log_partition(theta2)
    }
}

/// One arm of a bandit model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArmSpec {
    GaussianKnownVariance { mean: f64, variance: f64 },
    ExpFamilyArm { natural_param: f64, family: ExpFamily },
}

impl ArmSpec {
    pub fn gaussian(mean: f64, variance: f64) -> Result<Self> {
        if !(variance > 0.0) || !variance.is_finite() || !mean.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "Gaussian arm requires finite mean and variance > 0, got mean={mean}, variance={variance}"
            )));
        }
        Ok(ArmSpec::GaussianKnownVariance { mean, variance })
    }

    pub fn exp_family(natural_param: f64, family: ExpFamily) -> Result<Self> {
        let (lo, hi) = family.param_interval();
        if !(natural_param > lo && natural_param < hi) || natural_param.is_nan() {
            return Err(Error::InvalidParameter(format!(
                "natural parameter {natural_param} outside the {} parameter interval",
                family.name()
            )));
        }
        Ok(ArmSpec::ExpFamilyArm {
            natural_param,
            family,
        })
    }

    /// Bernoulli arm specified by its mean, which must lie strictly in (0, 1).
    pub fn bernoulli(mu: f64) -> Result<Self> {
        if !(mu > 0.0 && mu < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "Bernoulli mean must lie in (0,1), got {mu}"
            )));
        }
        Self::exp_family(ExpFamily::Bernoulli.mean_inverse(mu), ExpFamily::Bernoulli)
    }

    pub fn mean(&self) -> f64 {
        match *self {
            ArmSpec::GaussianKnownVariance { mean, .. } => mean,
            ArmSpec::ExpFamilyArm {
                natural_param,
                family,
            } => family.mean(natural_param),
        }
    }

    /// One i.i.d. draw from the arm. Identical generator state reproduces an
    /// identical sequence.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            ArmSpec::GaussianKnownVariance { mean, variance } => {
                let z: f64 = rng.sample(StandardNormal);
                mean + variance.sqrt() * z
            }
            ArmSpec::ExpFamilyArm {
                natural_param,
                family: ExpFamily::Bernoulli,
            } => {
                let mu = ExpFamily::Bernoulli.mean(natural_param);
                if rng.random::<f64>() < mu {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }
}

/// `KL(p, q)` between two arms of the same family.
pub fn kl(p: &ArmSpec, q: &ArmSpec) -> Result<f64> {
    match (*p, *q) {
        (
            ArmSpec::GaussianKnownVariance {
                mean: m1,
                variance: v1,
            },
            ArmSpec::GaussianKnownVariance {
                mean: m2,
                variance: v2,
            },
        ) => Ok(gaussian_kl(m1, v1, m2, v2)),
        (
            ArmSpec::ExpFamilyArm {
                natural_param: t1,
                family: f1,
            },
            ArmSpec::ExpFamilyArm {
                natural_param: t2,
                family: f2,
            },
        ) if f1 == f2 => Ok(f1.kl(t1, t2)),
        _ => Err(Error::FamilyMismatch),
    }
}

pub(crate) fn gaussian_kl(m1: f64, v1: f64, m2: f64, v2: f64) -> f64 {
    0.5 * (v2 / v1).ln() + (v1 + (m1 - m2) * (m1 - m2)) / (2.0 * v2) - 0.5
}

/// Binary relative entropy `d(x, y) = KL(B(x), B(y))`, extended continuously
/// to `x` in {0, 1} and with a `+inf` sentinel when `y` is in {0, 1} and
/// `x != y`.
pub fn bernoulli_d(x: f64, y: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
    if x == y {
        return 0.0;
    }
    if y <= 0.0 || y >= 1.0 {
        return f64::INFINITY;
    }
    let mut total = 0.0;
    if x > 0.0 {
        total += x * (x / y).ln();
    }
    if x < 1.0 {
        total += (1.0 - x) * ((1.0 - x) / (1.0 - y)).ln();
    }
    total.max(0.0)
}

/// An ordered pair of arms from the same family with distinct means.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BanditModel {
    arm1: ArmSpec,
    arm2: ArmSpec,
}

impl BanditModel {
    pub fn new(arm1: ArmSpec, arm2: ArmSpec) -> Result<Self> {
        match (arm1, arm2) {
            (ArmSpec::GaussianKnownVariance { .. }, ArmSpec::GaussianKnownVariance { .. }) => {}
            (
                ArmSpec::ExpFamilyArm { family: f1, .. },
                ArmSpec::ExpFamilyArm { family: f2, .. },
            ) if f1 == f2 => {}
            _ => return Err(Error::FamilyMismatch),
        }
        if arm1.mean() == arm2.mean() {
            return Err(Error::ZeroGap);
        }
        Ok(BanditModel { arm1, arm2 })
    }

    pub fn gaussian(mu1: f64, var1: f64, mu2: f64, var2: f64) -> Result<Self> {
        Self::new(ArmSpec::gaussian(mu1, var1)?, ArmSpec::gaussian(mu2, var2)?)
    }

    pub fn bernoulli(mu1: f64, mu2: f64) -> Result<Self> {
        Self::new(ArmSpec::bernoulli(mu1)?, ArmSpec::bernoulli(mu2)?)
    }

    pub fn arm1(&self) -> &ArmSpec {
        &self.arm1
    }

    pub fn arm2(&self) -> &ArmSpec {
        &self.arm2
    }

    /// `mean(arm1) - mean(arm2)`, never zero.
    pub fn gap(&self) -> f64 {
        self.arm1.mean() - self.arm2.mean()
    }

    /// Index (1 or 2) of the arm with the larger mean.
    pub fn best_arm(&self) -> u8 {
        if self.gap() > 0.0 {
            1
        } else {
            2
        }
    }

    pub fn is_gaussian(&self) -> bool {
        matches!(self.arm1, ArmSpec::GaussianKnownVariance { .. })
    }

    /// Standard deviations, for Gaussian models.
    pub fn sigmas(&self) -> Option<(f64, f64)> {
        match (self.arm1, self.arm2) {
            (
                ArmSpec::GaussianKnownVariance { variance: v1, .. },
                ArmSpec::GaussianKnownVariance { variance: v2, .. },
            ) => Some((v1.sqrt(), v2.sqrt())),
            _ => None,
        }
    }

    /// The common variance, when both arms are Gaussian with equal variances.
    pub fn common_variance(&self) -> Option<f64> {
        match (self.arm1, self.arm2) {
            (
                ArmSpec::GaussianKnownVariance { variance: v1, .. },
                ArmSpec::GaussianKnownVariance { variance: v2, .. },
            ) if v1 == v2 => Some(v1),
            _ => None,
        }
    }

    pub fn family(&self) -> Option<ExpFamily> {
        match self.arm1 {
            ArmSpec::ExpFamilyArm { family, .. } => Some(family),
            _ => None,
        }
    }

    /// Natural parameters `(theta1, theta2)` for exponential-family models.
    pub fn thetas(&self) -> Option<(f64, f64)> {
        match (self.arm1, self.arm2) {
            (
                ArmSpec::ExpFamilyArm {
                    natural_param: t1, ..
                },
                ArmSpec::ExpFamilyArm {
                    natural_param: t2, ..
                },
            ) => Some((t1, t2)),
            _ => None,
        }
    }
}
