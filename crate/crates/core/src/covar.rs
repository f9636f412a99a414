//! Adjustment-factor solving and the composite CoVaR estimator
//! `(η̂*_p)^{-γ̂} · VaR̂_Y(p)`.

use serde::{Deserialize, Serialize};

use crate::error::{check_level, Error, Result};
use crate::models::ModelSpec;
use crate::roots::{bisect_log, Bracket};
use crate::sample::PairedSample;
use crate::tail_dependence::{m_estimate, rank_pairs, TailFamily, WeightScheme};
use crate::tail_margins::{hill, sort_series, weissman_var};

/// Lower end of the bracket for `η*`.
pub const ETA_STAR_LOWER: f64 = 1e-300;
/// Relative tolerance of every adjustment-factor root.
pub const ROOT_RTOL: f64 = 1e-12;

/// Which CoVaR definition the adjustment factor targets.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Variant {
    /// Conditioning on `X ≥ VaR_X(p)`: `c(1, s) = p^{2-1/η}`.
    #[default]
    Exceedance,
    /// Target level `q = C p`: `c(1, C s) = C p^{2-1/η}`.
    ExceedanceTwoLevel { c: f64 },
    /// Conditioning on `X = VaR_X(p)`: `c_x(1, s) = p^{2-1/η}`.
    Equality,
    /// `c_x(1, C s) = C p^{2-1/η}`.
    EqualityTwoLevel { c: f64 },
}

impl Variant {
    fn scale(self) -> f64 {
        match self {
            Variant::Exceedance | Variant::Equality => 1.0,
            Variant::ExceedanceTwoLevel { c } | Variant::EqualityTwoLevel { c } => c,
        }
    }

    fn uses_derivative(self) -> bool {
        matches!(self, Variant::Equality | Variant::EqualityTwoLevel { .. })
    }
}

#[derive(Clone, Copy)]
pub struct AdjustmentQuery<'a> {
    pub p: f64,
    pub variant: Variant,
    pub family: &'a dyn TailFamily,
    pub theta: &'a [f64],
    /// Coefficient of tail dependence used in the exponent `2 − 1/η`.
    pub eta: f64,
}

/// Solves the variant's equation for `s ∈ (0, 1]`.
pub fn solve_eta_star(query: &AdjustmentQuery<'_>) -> Result<f64> {
    let AdjustmentQuery {
        p,
        variant,
        family,
        theta,
        eta,
    } = *query;
    check_level(p)?;
    if !(eta > 0.5 && eta <= 1.0) {
        return Err(Error::BadEta(eta));
    }
    let scale = variant.scale();
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::OutOfDomain {
            name: "C",
            value: scale,
            reason: "two-level ratio must be positive".into(),
        });
    }
    if !family.contains(theta) {
        return Err(Error::ThetaOutOfBox {
            theta: theta.to_vec(),
        });
    }
    let lhs = |s: f64| -> Option<f64> {
        if variant.uses_derivative() {
            family.c_x(1.0, scale * s, theta)
        } else {
            Some(family.c(1.0, scale * s, theta))
        }
    };
    let at_one = lhs(1.0).ok_or_else(|| {
        Error::Unsupported(format!("family `{}` provides no c_x", family.name()))
    })?;
    let target = scale * p.powf(2.0 - 1.0 / eta);
    if target.is_nan() || target <= 0.0 || target > at_one {
        return Err(Error::NoRoot(format!(
            "target {target} not within (0, {at_one}] reached at s = 1"
        )));
    }
    match bisect_log(
        |s| lhs(s).unwrap_or(f64::NAN) - target,
        ETA_STAR_LOWER,
        1.0,
        ROOT_RTOL,
    ) {
        Bracket::Root(s) => Ok(s),
        Bracket::NotBracketed { f_lo, f_hi } => Err(Error::NoRoot(format!(
            "equation not bracketed on [{ETA_STAR_LOWER}, 1]: residuals {f_lo}, {f_hi}"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tuning {
    pub p: f64,
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
}

impl Tuning {
    /// All three sample fractions equal to `k`.
    pub fn uniform(p: f64, k: usize) -> Self {
        Self {
            p,
            k1: k,
            k2: k,
            k3: k,
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        check_level(self.p)?;
        let max = n.saturating_sub(1);
        for (name, k) in [("k1", self.k1), ("k2", self.k2), ("k3", self.k3)] {
            if k == 0 || k > max {
                return Err(Error::BadK { name, k, n, max });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CovarEstimate {
    pub gamma_hat: f64,
    pub var_hat_p: f64,
    pub theta_hat: Vec<f64>,
    pub zeta_hat: f64,
    pub eta_hat: f64,
    pub eta_clamped: bool,
    pub objective_value: f64,
    pub eta_star_hat: f64,
    pub covar_hat: f64,
    pub family: String,
    pub variant: Variant,
    pub tuning: Tuning,
}

pub fn covar_estimate(
    sample: &PairedSample,
    tuning: Tuning,
    family: &dyn TailFamily,
    scheme: &WeightScheme,
) -> Result<CovarEstimate> {
    covar_estimate_variant(sample, tuning, family, scheme, Variant::Exceedance)
}

/// Hill → Weissman → moment fit → adjustment factor → CoVaR.
///
/// For the two-level variants the extrapolated quantile is still taken at
/// level `p`, as in the defining formula.
pub fn covar_estimate_variant(
    sample: &PairedSample,
    tuning: Tuning,
    family: &dyn TailFamily,
    scheme: &WeightScheme,
    variant: Variant,
) -> Result<CovarEstimate> {
    let n = sample.len();
    if n < 3 {
        return Err(Error::TooShort { n, min: 3 });
    }
    tuning.validate(n)?;

    let series = sort_series(sample.y())?;
    let gamma_hat = hill(&series, tuning.k1)?.gamma_hat;
    let var_hat_p = weissman_var(&series, gamma_hat, tuning.k2, tuning.p)?.value;

    let ranks = rank_pairs(sample)?;
    let fit = m_estimate(&ranks, tuning.k3, family, scheme)?;

    let eta_star_hat = solve_eta_star(&AdjustmentQuery {
        p: tuning.p,
        variant,
        family,
        theta: &fit.theta_hat,
        eta: fit.eta_hat,
    })?;
    if !(eta_star_hat > 0.0 && eta_star_hat <= 1.0) {
        return Err(Error::EtaStarOutOfRange(eta_star_hat));
    }
    Ok(CovarEstimate {
        covar_hat: eta_star_hat.powf(-gamma_hat) * var_hat_p,
        gamma_hat,
        var_hat_p,
        theta_hat: fit.theta_hat,
        zeta_hat: fit.zeta_hat,
        eta_hat: fit.eta_hat,
        eta_clamped: fit.eta_clamped,
        objective_value: fit.objective_value,
        eta_star_hat,
        family: family.name().to_string(),
        variant,
        tuning,
    })
}

/// Root `s ∈ (0, 1]` of `Q(p, p s) = p²` for a joint distribution function
/// `Q` of the survival uniforms `(1 − F₁(X), 1 − F₂(Y))`.
pub fn adjustment_factor_for(q: impl Fn(f64, f64) -> f64, p: f64) -> Result<f64> {
    check_level(p)?;
    let target = p * p;
    match bisect_log(|s| q(p, p * s) - target, ETA_STAR_LOWER, 1.0, ROOT_RTOL) {
        Bracket::Root(s) => Ok(s),
        Bracket::NotBracketed { f_lo, f_hi } => Err(Error::NoRoot(format!(
            "Q(p, p s) - p^2 does not change sign on (0, 1]: residuals {f_lo}, {f_hi}"
        ))),
    }
}

/// Exact adjustment factor `η_p` of a simulation model.
pub fn adjustment_factor_exact(model: &ModelSpec, p: f64) -> Result<f64> {
    model.validate()?;
    let js = model.joint_survival();
    adjustment_factor_for(|u, v| js.copula(u, v), p)
}
