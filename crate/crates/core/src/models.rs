//! The two simulation models: a Pareto mixture and the inverted
//! Hüsler–Reiss distribution with unit Fréchet margins.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::erf::{erfc, erfc_inv};

use crate::covar::adjustment_factor_exact;
use crate::error::{check_level, Error, Result};
use crate::roots::{brent, Bracket};
use crate::sample::PairedSample;
use crate::tail_dependence::FamilyKind;

const LN_MIN_POSITIVE: f64 = -745.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase", deny_unknown_fields)]
pub enum ModelSpec {
    /// `(X, Y) = B (Z1, Z3) + (1 − B)(Z2, Z2)`, `Z1, Z3 ~ Pareto(θ1)`,
    /// `Z2 ~ Pareto(θ2)`, `B ~ Bernoulli(1/2)`.
    Model1 { theta1: f64, theta2: f64 },
    /// Inverted Hüsler–Reiss with `θ = Φ(λ)`.
    Model2 { theta: f64 },
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            ModelSpec::Model1 { theta1, theta2 } => {
                if !(theta1 > 0.0 && theta2 > 0.0 && theta1.is_finite() && theta2.is_finite()) {
                    return Err(Error::BadSpec(format!(
                        "theta1={theta1}, theta2={theta2} must be positive"
                    )));
                }
                let ratio = theta1 / theta2;
                if !(ratio > 1.5 && ratio < 2.0) {
                    return Err(Error::BadSpec(format!(
                        "theta1/theta2 = {ratio} must lie in (3/2, 2)"
                    )));
                }
            }
            ModelSpec::Model2 { theta } => {
                if !(theta > 0.5 && theta <= 1.0) {
                    return Err(Error::BadSpec(format!("theta={theta} must lie in (1/2, 1]")));
                }
            }
        }
        Ok(())
    }

    /// Tail family whose parameter the model's joint tail belongs to.
    pub fn family_kind(&self) -> FamilyKind {
        match self {
            ModelSpec::Model1 { .. } => FamilyKind::ParetoMixture,
            ModelSpec::Model2 { .. } => FamilyKind::InvertedHuslerReiss,
        }
    }

    /// Parameter of [`Self::family_kind`] at the population level.
    pub fn tail_parameter(&self) -> f64 {
        match *self {
            ModelSpec::Model1 { theta1, theta2 } => theta1 / theta2,
            ModelSpec::Model2 { theta } => theta,
        }
    }

    /// Extreme value index of the Y margin.
    pub fn gamma_y(&self) -> f64 {
        match *self {
            ModelSpec::Model1 { theta1, theta2 } => theta1.max(theta2),
            ModelSpec::Model2 { .. } => 1.0,
        }
    }

    pub fn joint_survival(&self) -> JointSurvival {
        JointSurvival::new(*self)
    }

    pub fn sample(&self, n: usize, seed: u64) -> Result<PairedSample> {
        match self {
            ModelSpec::Model1 { .. } => sample_model1(self, n, seed),
            ModelSpec::Model2 { .. } => sample_model2(self, n, seed),
        }
    }
}

pub(crate) fn std_normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x / std::f64::consts::SQRT_2)
}

pub(crate) fn std_normal_quantile(p: f64) -> f64 {
    -std::f64::consts::SQRT_2 * erfc_inv(2.0 * p)
}

/// Uniform on the open interval (0, 1).
fn open_unit<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}

fn pareto<R: RngCore>(rng: &mut R, theta: f64) -> f64 {
    open_unit(rng).powf(-theta)
}

pub fn sample_model1(spec: &ModelSpec, n: usize, seed: u64) -> Result<PairedSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_model1_with(spec, n, &mut rng, |r| r.random::<bool>())
}

fn sample_model1_with<R: Rng>(
    spec: &ModelSpec,
    n: usize,
    rng: &mut R,
    mut bernoulli: impl FnMut(&mut R) -> bool,
) -> Result<PairedSample> {
    spec.validate()?;
    let ModelSpec::Model1 { theta1, theta2 } = *spec else {
        return Err(Error::BadSpec("expected model1".into()));
    };
    let (mut x, mut y) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let b = bernoulli(rng);
        let z1 = pareto(rng, theta1);
        let z2 = pareto(rng, theta2);
        let z3 = pareto(rng, theta1);
        if b {
            x.push(z1);
            y.push(z3);
        } else {
            x.push(z2);
            y.push(z2);
        }
    }
    PairedSample::new(x, y)
}

/// Stable tail dependence function `ℓ(x, y)` of the Hüsler–Reiss model.
fn ell(x: f64, y: f64, lambda: f64) -> f64 {
    let r = (x / y).ln() / (2.0 * lambda);
    x * std_normal_cdf(lambda + r) + y * std_normal_cdf(lambda - r)
}

/// `P(V ≤ v | U = u)` for the survival uniforms, written in `z = ln v`.
fn conditional_cdf(u: f64, z: f64, lambda: f64) -> f64 {
    let x = -u.ln();
    let y = -z;
    if y <= 0.0 {
        return 1.0;
    }
    let q = (-ell(x, y, lambda)).exp();
    q * std_normal_cdf(lambda + (x / y).ln() / (2.0 * lambda)) / u
}

pub fn sample_model2(spec: &ModelSpec, n: usize, seed: u64) -> Result<PairedSample> {
    spec.validate()?;
    let ModelSpec::Model2 { theta } = *spec else {
        return Err(Error::BadSpec("expected model2".into()));
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = std_normal_quantile(theta);
    let (mut x, mut y) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for _ in 0..n {
        let u = open_unit(&mut rng);
        let w = open_unit(&mut rng);
        let v = if theta >= 1.0 {
            w
        } else {
            match brent(
                |z| conditional_cdf(u, z, lambda) - w,
                LN_MIN_POSITIVE,
                0.0,
                1e-14,
                200,
            ) {
                Bracket::Root(z) => z.exp(),
                Bracket::NotBracketed { .. } => return Err(Error::RootFail { u, w }),
            }
        };
        x.push(frechet_from_survival(u));
        y.push(frechet_from_survival(v));
    }
    PairedSample::new(x, y)
}

/// Unit Fréchet value whose survival probability is `u`.
fn frechet_from_survival(u: f64) -> f64 {
    -1.0 / (-u).ln_1p()
}

/// Analytic joint and marginal survival functions of a model.
#[derive(Debug, Clone, Copy)]
pub struct JointSurvival {
    spec: ModelSpec,
    lambda: f64,
}

impl JointSurvival {
    fn new(spec: ModelSpec) -> Self {
        let lambda = match spec {
            ModelSpec::Model2 { theta } if theta < 1.0 => std_normal_quantile(theta),
            _ => f64::INFINITY,
        };
        Self { spec, lambda }
    }

    pub fn spec(&self) -> &ModelSpec {
        &self.spec
    }

    /// `P(X > s, Y > t)`.
    pub fn joint(&self, s: f64, t: f64) -> f64 {
        match self.spec {
            ModelSpec::Model1 { theta1, theta2 } => {
                let (s, t) = (s.max(1.0), t.max(1.0));
                0.5 * (s * t).powf(-1.0 / theta1) + 0.5 * s.max(t).powf(-1.0 / theta2)
            }
            ModelSpec::Model2 { .. } => self.copula(self.survival_x(s), self.survival_y(t)),
        }
    }

    pub fn survival_x(&self, s: f64) -> f64 {
        match self.spec {
            ModelSpec::Model1 { theta1, theta2 } => {
                let s = s.max(1.0);
                0.5 * s.powf(-1.0 / theta1) + 0.5 * s.powf(-1.0 / theta2)
            }
            ModelSpec::Model2 { .. } => {
                if s <= 0.0 {
                    1.0
                } else {
                    -(-1.0 / s).exp_m1()
                }
            }
        }
    }

    pub fn survival_y(&self, t: f64) -> f64 {
        self.survival_x(t)
    }

    /// Smallest `s` with `P(X > s) ≤ u`, to relative tolerance 1e-12.
    pub fn quantile_x(&self, u: f64) -> f64 {
        if u >= 1.0 {
            return match self.spec {
                ModelSpec::Model1 { .. } => 1.0,
                ModelSpec::Model2 { .. } => 0.0,
            };
        }
        if u <= 0.0 {
            return f64::INFINITY;
        }
        match self.spec {
            ModelSpec::Model1 { theta1, theta2 } => {
                let target = u.ln();
                // S(s) ≤ s^{-1/θmax} for s ≥ 1, which bounds the log-quantile
                let hi = theta1.max(theta2) * -target;
                let f = |z: f64| {
                    let a = -z / theta1;
                    let b = -z / theta2;
                    let m = a.max(b);
                    m + (0.5 * (a - m).exp() + 0.5 * (b - m).exp()).ln() - target
                };
                match brent(f, 0.0, hi, 1e-13, 300) {
                    Bracket::Root(z) => z.exp(),
                    Bracket::NotBracketed { .. } => hi.exp(),
                }
            }
            ModelSpec::Model2 { .. } => frechet_from_survival(u),
        }
    }

    pub fn quantile_y(&self, u: f64) -> f64 {
        self.quantile_x(u)
    }

    /// `Q(u, v) = P(S_X(X) < u, S_Y(Y) < v)`.
    pub fn copula(&self, u: f64, v: f64) -> f64 {
        if u <= 0.0 || v <= 0.0 {
            return 0.0;
        }
        if u >= 1.0 {
            return v.min(1.0);
        }
        if v >= 1.0 {
            return u;
        }
        match self.spec {
            ModelSpec::Model1 { .. } => self.joint(self.quantile_x(u), self.quantile_y(v)),
            ModelSpec::Model2 { .. } => {
                if self.lambda.is_infinite() {
                    u * v
                } else {
                    (-ell(-u.ln(), -v.ln(), self.lambda)).exp()
                }
            }
        }
    }
}

pub fn joint_survival(spec: &ModelSpec) -> Result<JointSurvival> {
    spec.validate()?;
    Ok(spec.joint_survival())
}

/// `CoVaR_{Y|X}(p) = VaR_Y(p η_p)` with the exact adjustment factor.
pub fn true_covar(spec: &ModelSpec, p: f64) -> Result<f64> {
    check_level(p)?;
    let eta = adjustment_factor_exact(spec, p)?;
    Ok(spec.joint_survival().quantile_y(p * eta))
}
