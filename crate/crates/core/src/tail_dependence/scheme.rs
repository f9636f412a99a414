use serde::{Deserialize, Serialize};

use super::family::TailFamily;
use crate::error::{Error, Result};

/// Axis-aligned rectangle `[x_lo, x_hi] × [y_lo, y_hi]`, serialized as a
/// four-element array.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Rect {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl Rect {
    pub const fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Self {
        Self { x_lo, x_hi, y_lo, y_hi }
    }

    pub fn max_extent(&self) -> f64 {
        self.x_hi.max(self.y_hi)
    }
}

impl From<[f64; 4]> for Rect {
    fn from(a: [f64; 4]) -> Self {
        Rect::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Rect> for [f64; 4] {
    fn from(r: Rect) -> Self {
        [r.x_lo, r.x_hi, r.y_lo, r.y_hi]
    }
}

/// On-disk form of a weight scheme. Normalizers are recomputed on load.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeSpec {
    pub regions: Vec<Rect>,
    pub theta_ref: Vec<f64>,
}

impl SchemeSpec {
    /// Regions used with the Pareto mixture family, reference α = 1.
    pub fn pareto_mixture_default() -> Self {
        Self {
            regions: vec![
                Rect::new(0.0, 1.0, 0.0, 1.0),
                Rect::new(0.0, 0.8, 0.0, 1.0),
                Rect::new(0.0, 1.0, 0.0, 0.5),
                Rect::new(0.0, 0.5, 0.0, 0.3),
                Rect::new(0.0, 0.5, 0.0, 0.5),
            ],
            theta_ref: vec![1.0],
        }
    }

    /// Regions used with the inverted Hüsler–Reiss family, reference θ = 0.6.
    pub fn inverted_husler_reiss_default() -> Self {
        Self {
            regions: vec![
                Rect::new(0.0, 1.0, 0.0, 1.0),
                Rect::new(0.0, 2.0, 0.0, 2.0),
                Rect::new(0.5, 1.5, 0.5, 1.5),
                Rect::new(0.0, 1.0, 0.0, 3.0),
                Rect::new(0.0, 3.0, 0.0, 1.0),
            ],
            theta_ref: vec![0.6],
        }
    }
}

/// Indicator weights `1{(x,y) ∈ I_j} / a_j` with
/// `a_j = ∫_{I_j} c(x, y; θ_REF) dx dy`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightScheme {
    spec: SchemeSpec,
    normalizers: Vec<f64>,
}

impl WeightScheme {
    pub fn new(spec: SchemeSpec, family: &dyn TailFamily) -> Result<Self> {
        if spec.regions.is_empty() {
            return Err(Error::BadScheme("no regions".into()));
        }
        for (j, r) in spec.regions.iter().enumerate() {
            let ok = [r.x_lo, r.x_hi, r.y_lo, r.y_hi].iter().all(|v| v.is_finite())
                && r.x_lo >= 0.0
                && r.y_lo >= 0.0
                && r.x_lo < r.x_hi
                && r.y_lo < r.y_hi;
            if !ok {
                return Err(Error::BadScheme(format!("region {j} is not a proper rectangle in [0,∞)²: {r:?}")));
            }
        }
        if !family.contains(&spec.theta_ref) {
            return Err(Error::ThetaOutOfBox {
                theta: spec.theta_ref.clone(),
            });
        }
        let normalizers: Vec<f64> = spec
            .regions
            .iter()
            .map(|r| family.rect_integral(r, &spec.theta_ref))
            .collect();
        if let Some(j) = normalizers.iter().position(|a| !(*a > 0.0 && a.is_finite())) {
            return Err(Error::BadScheme(format!(
                "normalizer a_{} = {} is not positive",
                j + 1,
                normalizers[j]
            )));
        }
        Ok(Self { spec, normalizers })
    }

    pub fn from_json(json: &str, family: &dyn TailFamily) -> Result<Self> {
        Self::new(serde_json::from_str(json)?, family)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.spec).expect("scheme serializes")
    }

    pub fn regions(&self) -> &[Rect] {
        &self.spec.regions
    }

    pub fn theta_ref(&self) -> &[f64] {
        &self.spec.theta_ref
    }

    pub fn normalizers(&self) -> &[f64] {
        &self.normalizers
    }

    pub fn spec(&self) -> &SchemeSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.spec.regions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spec.regions.is_empty()
    }

    /// Largest coordinate any region reaches.
    pub fn max_extent(&self) -> f64 {
        self.spec
            .regions
            .iter()
            .map(Rect::max_extent)
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tail_dependence::family::{InvertedHuslerReiss, ParetoMixture};

    #[test]
    fn json_round_trip_recomputes_normalizers() {
        let s = WeightScheme::new(SchemeSpec::inverted_husler_reiss_default(), &InvertedHuslerReiss).unwrap();
        let json = s.to_json();
        assert!(!json.contains("normalizer"));
        let back = WeightScheme::from_json(&json, &InvertedHuslerReiss).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn rejects_bad_regions_and_reference() {
        let mut spec = SchemeSpec::pareto_mixture_default();
        spec.regions.push(Rect::new(0.5, 0.2, 0.0, 1.0));
        assert!(matches!(WeightScheme::new(spec, &ParetoMixture), Err(Error::BadScheme(_))));
        let mut spec = SchemeSpec::pareto_mixture_default();
        spec.theta_ref = vec![2.5];
        assert!(matches!(WeightScheme::new(spec, &ParetoMixture), Err(Error::ThetaOutOfBox { .. })));
        let err = WeightScheme::from_json(r#"{"regions": [], "theta_ref": [1.0]}"#, &ParetoMixture);
        assert!(matches!(err, Err(Error::BadScheme(_))));
    }

    #[test]
    fn default_extents() {
        let pm = WeightScheme::new(SchemeSpec::pareto_mixture_default(), &ParetoMixture).unwrap();
        let ihr = WeightScheme::new(SchemeSpec::inverted_husler_reiss_default(), &InvertedHuslerReiss).unwrap();
        assert_eq!(pm.max_extent(), 1.0);
        assert_eq!(ihr.max_extent(), 3.0);
        // a_1 for α_REF = 1 is ∫∫ min(x, y) = 1/3
        assert!((pm.normalizers()[0] - 1.0 / 3.0).abs() < 1e-15);
    }
}
