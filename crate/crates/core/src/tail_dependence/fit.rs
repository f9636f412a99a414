//! Rank-based method-of-moments fit of `(θ, ζ)`.
//!
//! Minimizes `‖ζ M_c(θ) − M_Q̂‖` where both moment vectors are normalized by
//! the scheme's `a_j`. For fixed θ the best ζ is the least-squares scalar
//! `⟨M_c, M_Q̂⟩ / ⟨M_c, M_c⟩`, so only θ is searched.

use serde::{Deserialize, Serialize};

use super::family::TailFamily;
use super::ranks::{moment_vector, RankedPairs};
use super::scheme::WeightScheme;
use crate::error::{Error, Result};
use crate::optimize::{nelder_mead, SimplexOptions};

/// η̂ is kept inside `[ETA_FLOOR, 1]`.
pub const ETA_FLOOR: f64 = 0.5 + 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub theta_hat: Vec<f64>,
    pub zeta_hat: f64,
    pub eta_hat: f64,
    /// Set when `η(θ̂)` fell outside (1/2, 1] and was clamped.
    pub eta_clamped: bool,
    pub objective_value: f64,
    pub converged: bool,
    pub k3: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct FitOptions {
    pub starts: usize,
    pub simplex: SimplexOptions,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            starts: 5,
            simplex: SimplexOptions::default(),
        }
    }
}

/// `(1/a_j) ∫_{I_j} c(x, y; θ) dx dy` for every region.
pub fn family_moment_vector(
    family: &dyn TailFamily,
    theta: &[f64],
    scheme: &WeightScheme,
) -> Result<Vec<f64>> {
    if !family.contains(theta) {
        return Err(Error::ThetaOutOfBox {
            theta: theta.to_vec(),
        });
    }
    Ok(raw_family_moments(family, theta, scheme))
}

fn raw_family_moments(family: &dyn TailFamily, theta: &[f64], scheme: &WeightScheme) -> Vec<f64> {
    scheme
        .regions()
        .iter()
        .zip(scheme.normalizers())
        .map(|(r, a)| family.rect_integral(r, theta) / a)
        .collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Least-squares scale, kept strictly positive.
pub fn profile_zeta(model: &[f64], empirical: &[f64]) -> f64 {
    let z = dot(model, empirical) / dot(model, model);
    if z.is_finite() && z > 0.0 {
        z
    } else {
        f64::MIN_POSITIVE
    }
}

/// `‖ζ M_c(θ) − M_Q̂‖`.
pub fn objective(model: &[f64], empirical: &[f64], zeta: f64) -> f64 {
    model
        .iter()
        .zip(empirical)
        .map(|(m, e)| (zeta * m - e).powi(2))
        .sum::<f64>()
        .sqrt()
}

fn start_points(bounds: &[(f64, f64)], count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|i| {
            let t = (i as f64 + 0.5) / count as f64;
            bounds.iter().map(|&(lo, hi)| lo + t * (hi - lo)).collect()
        })
        .collect()
}

/// Fits against a precomputed empirical moment vector.
pub fn fit_moment_vector(
    empirical: &[f64],
    k3: usize,
    family: &dyn TailFamily,
    scheme: &WeightScheme,
    opts: FitOptions,
) -> Result<FitResult> {
    if empirical.len() != scheme.len() {
        return Err(Error::InvalidInput(format!(
            "moment vector has {} components, scheme has {} regions",
            empirical.len(),
            scheme.len()
        )));
    }
    let bounds = family.param_box();
    if bounds.len() + 1 > scheme.len() {
        return Err(Error::BadScheme(format!(
            "{} parameters plus scale need at least {} regions, scheme has {}",
            bounds.len(),
            bounds.len() + 1,
            scheme.len()
        )));
    }
    if empirical.iter().all(|v| *v == 0.0) {
        return Err(Error::DegenerateMoments);
    }

    let profiled = |theta: &[f64]| -> f64 {
        let m = raw_family_moments(family, theta, scheme);
        objective(&m, empirical, profile_zeta(&m, empirical))
    };

    // lowest objective wins, ties go to the earlier start
    let best = start_points(&bounds, opts.starts.max(1))
        .iter()
        .map(|s| nelder_mead(profiled, s, &bounds, opts.simplex))
        .filter(|r| r.converged)
        .reduce(|best, r| if r.value < best.value { r } else { best })
        .ok_or(Error::NoConvergence {
            iterations: opts.simplex.max_iter,
        })?;

    let theta_hat = best.x;
    let model = raw_family_moments(family, &theta_hat, scheme);
    let zeta_hat = profile_zeta(&model, empirical);
    let raw_eta = family.eta(&theta_hat);
    let eta_clamped = !(raw_eta > 0.5 && raw_eta <= 1.0);
    Ok(FitResult {
        objective_value: objective(&model, empirical, zeta_hat),
        eta_hat: raw_eta.clamp(ETA_FLOOR, 1.0),
        eta_clamped,
        theta_hat,
        zeta_hat,
        converged: true,
        k3,
    })
}

/// M-estimate of `(θ, ζ)` from ranked pairs.
pub fn m_estimate(
    ranks: &RankedPairs,
    k3: usize,
    family: &dyn TailFamily,
    scheme: &WeightScheme,
) -> Result<FitResult> {
    let empirical = moment_vector(ranks, k3, scheme)?;
    fit_moment_vector(&empirical, k3, family, scheme, FitOptions::default())
}
