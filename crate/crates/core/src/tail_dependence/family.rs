//! Parametric families for the joint-tail limit `c(x, y; θ)`.

use serde::{Deserialize, Serialize};

use super::scheme::Rect;
use crate::quadrature::integrate_rect;

/// Absolute tolerance for rectangle integrals of families without closed forms.
pub const QUADRATURE_TOL: f64 = 1e-10;

/// A parametric family `c(·,·;θ)`, homogeneous of order `1/η(θ)`.
///
/// Only `c`, `eta` and `param_box` are required. Families whose rectangle
/// integrals have closed forms should override [`TailFamily::rect_integral`];
/// the default integrates numerically. The partial derivatives are optional:
/// `None` means the family does not provide them.
pub trait TailFamily: Send + Sync {
    fn name(&self) -> &str;

    /// Closed parameter box, one `(lo, hi)` pair per coordinate.
    fn param_box(&self) -> Vec<(f64, f64)>;

    fn c(&self, x: f64, y: f64, theta: &[f64]) -> f64;

    fn eta(&self, theta: &[f64]) -> f64;

    fn c_x(&self, _x: f64, _y: f64, _theta: &[f64]) -> Option<f64> {
        None
    }

    fn c_y(&self, _x: f64, _y: f64, _theta: &[f64]) -> Option<f64> {
        None
    }

    fn rect_integral(&self, rect: &Rect, theta: &[f64]) -> f64 {
        integrate_rect(
            |x, y| self.c(x, y, theta),
            (rect.x_lo, rect.x_hi),
            (rect.y_lo, rect.y_hi),
            QUADRATURE_TOL,
        )
    }

    fn dim(&self) -> usize {
        self.param_box().len()
    }

    fn contains(&self, theta: &[f64]) -> bool {
        let b = self.param_box();
        theta.len() == b.len()
            && theta
                .iter()
                .zip(&b)
                .all(|(t, &(lo, hi))| *t >= lo && *t <= hi)
    }
}

/// `c(x, y; α) = 2^{α-1} (x ∧ y)^α`, the limit for the Pareto mixture model.
///
/// The mixture's two Pareto indices enter only through their ratio
/// `α = θ₁/θ₂`, so α is the single identifiable parameter. `η = 1/α`.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParetoMixture;

/// `∫_0^a ∫_0^b (x ∧ y)^α dy dx`.
fn min_power_corner(a: f64, b: f64, alpha: f64) -> f64 {
    if a <= 0.0 || b <= 0.0 {
        return 0.0;
    }
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    let a1 = alpha + 1.0;
    let a2 = alpha + 2.0;
    lo.powf(a2) / (a1 * a2) + hi * lo.powf(a1) / a1 - lo.powf(a2) / a2
}

impl TailFamily for ParetoMixture {
    fn name(&self) -> &str {
        "pareto-mixture"
    }

    fn param_box(&self) -> Vec<(f64, f64)> {
        vec![(1.0, 2.0)]
    }

    fn c(&self, x: f64, y: f64, theta: &[f64]) -> f64 {
        let a = theta[0];
        2f64.powf(a - 1.0) * x.min(y).powf(a)
    }

    fn eta(&self, theta: &[f64]) -> f64 {
        1.0 / theta[0]
    }

    // Zero on the side where the other coordinate is the minimum; at the
    // diagonal the right derivative (zero) is used.
    fn c_x(&self, x: f64, y: f64, theta: &[f64]) -> Option<f64> {
        let a = theta[0];
        Some(if x < y {
            2f64.powf(a - 1.0) * a * x.powf(a - 1.0)
        } else {
            0.0
        })
    }

    fn c_y(&self, x: f64, y: f64, theta: &[f64]) -> Option<f64> {
        self.c_x(y, x, theta)
    }

    fn rect_integral(&self, r: &Rect, theta: &[f64]) -> f64 {
        let a = theta[0];
        let f = |u: f64, v: f64| min_power_corner(u, v, a);
        let raw = f(r.x_hi, r.y_hi) - f(r.x_lo, r.y_hi) - f(r.x_hi, r.y_lo) + f(r.x_lo, r.y_lo);
        2f64.powf(a - 1.0) * raw
    }
}

/// `c(x, y; θ) = (x y)^θ`, the limit for the inverted Hüsler–Reiss model.
/// `η = 1/(2θ)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct InvertedHuslerReiss;

impl TailFamily for InvertedHuslerReiss {
    fn name(&self) -> &str {
        "inverted-husler-reiss"
    }

    fn param_box(&self) -> Vec<(f64, f64)> {
        vec![(0.5, 1.0)]
    }

    fn c(&self, x: f64, y: f64, theta: &[f64]) -> f64 {
        (x * y).powf(theta[0])
    }

    fn eta(&self, theta: &[f64]) -> f64 {
        0.5 / theta[0]
    }

    fn c_x(&self, x: f64, y: f64, theta: &[f64]) -> Option<f64> {
        let t = theta[0];
        Some(t * x.powf(t - 1.0) * y.powf(t))
    }

    fn c_y(&self, x: f64, y: f64, theta: &[f64]) -> Option<f64> {
        self.c_x(y, x, theta)
    }

    fn rect_integral(&self, r: &Rect, theta: &[f64]) -> f64 {
        let t1 = theta[0] + 1.0;
        let ix = (r.x_hi.powf(t1) - r.x_lo.powf(t1)) / t1;
        let iy = (r.y_hi.powf(t1) - r.y_lo.powf(t1)) / t1;
        ix * iy
    }
}

/// The built-in families, selectable by name in configs and on the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    #[serde(alias = "pm")]
    ParetoMixture,
    #[serde(alias = "ihr")]
    InvertedHuslerReiss,
}

impl FamilyKind {
    pub fn family(self) -> &'static dyn TailFamily {
        match self {
            FamilyKind::ParetoMixture => &ParetoMixture,
            FamilyKind::InvertedHuslerReiss => &InvertedHuslerReiss,
        }
    }
}

impl std::str::FromStr for FamilyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pm" | "pareto-mixture" | "model1" => Ok(FamilyKind::ParetoMixture),
            "ihr" | "inverted-husler-reiss" | "model2" => Ok(FamilyKind::InvertedHuslerReiss),
            other => Err(format!(
                "unknown family `{other}` (expected `pm` or `ihr`)"
            )),
        }
    }
}
