//! Information-theoretic complexity quantities for two-armed bandit models:
//! the fixed-budget and fixed-confidence constants, Chernoff information and
//! its reverse, the uniform-sampling constants, the exponent function
//! `g_alpha`, and optimal budget allocations. A grid-search oracle
//! cross-checks every closed form and root-finder output.

use serde::Serialize;

use crate::arms::{bernoulli_d, BanditModel, ExpFamily};
use crate::error::{Error, Result};

/// All complexity constants of a model in one place.
///
/// `kappa_b = 1/c_star` is the fixed-budget complexity; `kappa_c_lower =
/// 1/c_lower_star` the fixed-confidence lower-bound complexity. The matched
/// parameters `theta_star` / `theta_lower_star` are only available for
/// exponential-family models.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexityReport {
    pub c_star: f64,
    pub c_lower_star: f64,
    pub i_star: f64,
    pub i_lower_star: f64,
    pub kappa_b: f64,
    pub kappa_c_lower: f64,
    pub optimal_alpha: f64,
    pub theta_star: Option<f64>,
    pub theta_lower_star: Option<f64>,
}

/// Compute the report for any supported model.
pub fn report(model: &BanditModel) -> Result<ComplexityReport> {
    if model.is_gaussian() {
        gaussian_complexities(model)
    } else {
        exp_family_complexities(model, 1e-12)
    }
}

/// Closed forms for Gaussian models with known variances.
pub fn gaussian_complexities(model: &BanditModel) -> Result<ComplexityReport> {
    let (s1, s2) = model.sigmas().ok_or(Error::FamilyMismatch)?;
    let gap = model.gap();
    let c = gap * gap / (2.0 * (s1 + s2) * (s1 + s2));
    let i = gap * gap / (4.0 * (s1 * s1 + s2 * s2));
    Ok(ComplexityReport {
        c_star: c,
        c_lower_star: c,
        i_star: i,
        i_lower_star: i,
        kappa_b: 1.0 / c,
        kappa_c_lower: 1.0 / c,
        optimal_alpha: s1 / (s1 + s2),
        theta_star: None,
        theta_lower_star: None,
    })
}

fn exp_family_complexities(model: &BanditModel, tol: f64) -> Result<ComplexityReport> {
    let (theta_star, k_star) = chernoff_info(model, tol)?;
    let (theta_lower_star, k_lower_star) = reverse_chernoff(model, tol)?;
    let (i_star, i_lower_star) = uniform_complexities(model)?;
    Ok(ComplexityReport {
        c_star: k_star,
        c_lower_star: k_lower_star,
        i_star,
        i_lower_star,
        kappa_b: 1.0 / k_star,
        kappa_c_lower: 1.0 / k_lower_star,
        optimal_alpha: optimal_alpha(model)?,
        theta_star: Some(theta_star),
        theta_lower_star: Some(theta_lower_star),
    })
}

const BISECT_MAX_ITER: usize = 200;

/// Bisection for a continuous function with a sign change on [lo, hi].
/// A `tol` of zero runs until the bracket collapses or the iteration
/// budget is spent, i.e. to full floating-point precision.
fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let (mut flo, fhi) = (f(lo), f(hi));
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoConvergence {
            lo,
            hi,
            residual: flo.abs().min(fhi.abs()),
        });
    }
    for _ in 0..BISECT_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break; // bracket collapsed to adjacent floats
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
        if hi - lo <= tol * (1.0 + mid.abs()) {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Chernoff information: the parameter `theta*` strictly between `theta1` and
/// `theta2` with `K(theta*, theta1) = K(theta*, theta2)`, and the common
/// value `K* = K(theta*, theta1)`.
pub fn chernoff_info(model: &BanditModel, tol: f64) -> Result<(f64, f64)> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    let (t1, t2, family) = exp_family_params(model)?;
    let (lo, hi) = bracket(t1, t2);
    let h = |theta: f64| family.kl(theta, t1) - family.kl(theta, t2);
    let theta_star = bisect(h, lo, hi, 0.0)?;
    let k_star = family.kl(theta_star, t1);
    let residual = h(theta_star).abs();
    if residual > tol * (1.0 + k_star.abs()) {
        return Err(Error::NoConvergence {
            lo,
            hi,
            residual,
        });
    }
    Ok((theta_star, k_star))
}

/// Reverse Chernoff point: `theta_*` with
/// `K(theta1, theta_*) = K(theta2, theta_*)`, and `K_* = K(theta1, theta_*)`.
pub fn reverse_chernoff(model: &BanditModel, tol: f64) -> Result<(f64, f64)> {
    if !(tol > 0.0) {
        return Err(Error::Domain(format!("tol must be positive, got {tol}")));
    }
    let (t1, t2, family) = exp_family_params(model)?;
    let (lo, hi) = bracket(t1, t2);
    let h = |theta: f64| family.kl(t1, theta) - family.kl(t2, theta);
    let theta_lower = bisect(h, lo, hi, 0.0)?;
    let k_lower = family.kl(t1, theta_lower);
    let residual = h(theta_lower).abs();
    if residual > tol * (1.0 + k_lower.abs()) {
        return Err(Error::NoConvergence {
            lo,
            hi,
            residual,
        });
    }
    Ok((theta_lower, k_lower))
}

fn exp_family_params(model: &BanditModel) -> Result<(f64, f64, ExpFamily)> {
    match (model.thetas(), model.family()) {
        (Some((t1, t2)), Some(family)) => Ok((t1, t2, family)),
        _ => Err(Error::FamilyMismatch),
    }
}

fn bracket(t1: f64, t2: f64) -> (f64, f64) {
    let (a, b) = if t1 < t2 { (t1, t2) } else { (t2, t1) };
    let eps = 1e-12 * (1.0 + (b - a).abs());
    (a + eps, b - eps)
}

/// Uniform-sampling complexity constants `(I*, I_*)`.
pub fn uniform_complexities(model: &BanditModel) -> Result<(f64, f64)> {
    if model.is_gaussian() {
        let (s1, s2) = model.sigmas().unwrap();
        let gap = model.gap();
        let i = gap * gap / (4.0 * (s1 * s1 + s2 * s2));
        return Ok((i, i));
    }
    let (t1, t2, family) = exp_family_params(model)?;
    // I*: the infimum over alternatives is attained at the natural-parameter
    // midpoint; I_*: at the parameter whose mean is the mean midpoint.
    let theta_mid = 0.5 * (t1 + t2);
    let i_star = 0.5 * (family.kl(theta_mid, t1) + family.kl(theta_mid, t2));
    let mean_mid = 0.5 * (family.mean(t1) + family.mean(t2));
    let theta_mean_mid = family.mean_inverse(mean_mid);
    let i_lower = 0.5 * (family.kl(t1, theta_mean_mid) + family.kl(t2, theta_mean_mid));
    Ok((i_star, i_lower))
}

/// Error-exponent function of a static allocation giving fraction `alpha` of
/// the budget to arm 1:
/// `g_alpha = alpha K(m, theta1) + (1 - alpha) K(m, theta2)` with
/// `m = alpha theta1 + (1 - alpha) theta2`.
pub fn g_alpha(alpha: f64, model: &BanditModel) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Domain(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    let (t1, t2, family) = exp_family_params(model)?;
    let mix = alpha * t1 + (1.0 - alpha) * t2;
    Ok(alpha * family.kl(mix, t1) + (1.0 - alpha) * family.kl(mix, t2))
}

/// Maximize `g_alpha` over an alpha grid with `steps` interior points.
/// Independent cross-check for [`chernoff_info`] and [`optimal_alpha`].
pub fn g_alpha_grid_max(model: &BanditModel, steps: usize) -> Result<(f64, f64)> {
    let mut best = (0.5, f64::NEG_INFINITY);
    for i in 1..steps {
        let alpha = i as f64 / steps as f64;
        let v = g_alpha(alpha, model)?;
        if v > best.1 {
            best = (alpha, v);
        }
    }
    Ok(best)
}

/// Optimal fraction of the budget allocated to arm 1.
pub fn optimal_alpha(model: &BanditModel) -> Result<f64> {
    if model.is_gaussian() {
        let (s1, s2) = model.sigmas().unwrap();
        return Ok(s1 / (s1 + s2));
    }
    let (t1, t2, _) = exp_family_params(model)?;
    let (theta_star, _) = chernoff_info(model, 1e-12)?;
    let alpha = (theta_star - t2) / (t1 - t2);
    debug_assert!(alpha > 0.0 && alpha < 1.0);
    Ok(alpha)
}

/// Grid-search oracle for all four infima of the complexity report.
///
/// Minimizes each objective exhaustively over alternative models on a mean
/// grid (with the best arm flipped), then refines the grid twice around the
/// incumbent. Variances stay fixed for Gaussian alternatives.
pub fn brute_force_complexities(
    model: &BanditModel,
    grid_resolution: usize,
) -> Result<ComplexityReport> {
    if grid_resolution < 100 {
        return Err(Error::Domain(format!(
            "grid_resolution must be at least 100, got {grid_resolution}"
        )));
    }
    // Orient so the first coordinate belongs to the better arm; alternatives
    // then satisfy x < y. All four objectives are invariant under the
    // simultaneous relabeling.
    let swapped = model.gap() < 0.0;

    if model.is_gaussian() {
        let (s1, s2) = model.sigmas().unwrap();
        let (va, vb) = if swapped {
            (s2 * s2, s1 * s1)
        } else {
            (s1 * s1, s2 * s2)
        };
        let (mu_a, mu_b) = oriented_means(model, swapped);
        let gap = (mu_a - mu_b).abs();
        let lo = mu_b - 3.0 * gap;
        let hi = mu_a + 3.0 * gap;
        let kl_a = move |x: f64| (x - mu_a) * (x - mu_a) / (2.0 * va);
        let kl_b = move |y: f64| (y - mu_b) * (y - mu_b) / (2.0 * vb);
        // With per-arm variances fixed, KL is symmetric in its arguments, so
        // the forward and reverse objectives coincide exactly.
        let (c_star, _, _) = grid_min2(lo, hi, grid_resolution, |x, y| kl_a(x).max(kl_b(y)));
        let (i_star, _, _) = grid_min2(lo, hi, grid_resolution, |x, y| 0.5 * (kl_a(x) + kl_b(y)));
        let (s1, s2) = model.sigmas().unwrap();
        return Ok(ComplexityReport {
            c_star,
            c_lower_star: c_star,
            i_star,
            i_lower_star: i_star,
            kappa_b: 1.0 / c_star,
            kappa_c_lower: 1.0 / c_star,
            optimal_alpha: s1 / (s1 + s2),
            theta_star: None,
            theta_lower_star: None,
        });
    }

    let family = model.family().ok_or(Error::FamilyMismatch)?;
    let (mu_a, mu_b) = oriented_means(model, swapped);
    let (lo, hi) = (1e-4, 1.0 - 1e-4);
    let fwd = move |x: f64, y: f64| (bernoulli_d(x, mu_a), bernoulli_d(y, mu_b));
    let rev = move |x: f64, y: f64| (bernoulli_d(mu_a, x), bernoulli_d(mu_b, y));
    let (c_star, cx, cy) = grid_min2(lo, hi, grid_resolution, |x, y| {
        let (a, b) = fwd(x, y);
        a.max(b)
    });
    let (c_lower_star, lx, ly) = grid_min2(lo, hi, grid_resolution, |x, y| {
        let (a, b) = rev(x, y);
        a.max(b)
    });
    let (i_star, _, _) = grid_min2(lo, hi, grid_resolution, |x, y| {
        let (a, b) = fwd(x, y);
        0.5 * (a + b)
    });
    let (i_lower_star, _, _) = grid_min2(lo, hi, grid_resolution, |x, y| {
        let (a, b) = rev(x, y);
        0.5 * (a + b)
    });
    let (alpha, _) = g_alpha_grid_max(model, 10_000)?;
    Ok(ComplexityReport {
        c_star,
        c_lower_star,
        i_star,
        i_lower_star,
        kappa_b: 1.0 / c_star,
        kappa_c_lower: 1.0 / c_lower_star,
        optimal_alpha: alpha,
        theta_star: Some(family.mean_inverse(0.5 * (cx + cy))),
        theta_lower_star: Some(family.mean_inverse(0.5 * (lx + ly))),
    })
}

fn oriented_means(model: &BanditModel, swapped: bool) -> (f64, f64) {
    let (m1, m2) = (model.arm1().mean(), model.arm2().mean());
    if swapped {
        (m2, m1)
    } else {
        (m1, m2)
    }
}

/// Minimize `f(x, y)` over grid pairs with `x < y`, refining the grid around
/// the incumbent. The objectives here are convex, so the coarse argmin
/// brackets the true minimizer.
fn grid_min2<F: Fn(f64, f64) -> f64>(lo0: f64, hi0: f64, n: usize, f: F) -> (f64, f64, f64) {
    let mut lo = lo0;
    let mut hi = hi0;
    let mut best = (f64::INFINITY, lo0, hi0);
    for _stage in 0..3 {
        let h = (hi - lo) / (n - 1) as f64;
        let grid: Vec<f64> = (0..n).map(|i| lo + i as f64 * h).collect();
        for (i, &x) in grid.iter().enumerate() {
            for &y in &grid[i + 1..] {
                let v = f(x, y);
                if v < best.0 {
                    best = (v, x, y);
                }
            }
        }
        lo = (best.1 - 3.0 * h).max(lo0);
        hi = (best.2 + 3.0 * h).min(hi0);
    }
    best
}
