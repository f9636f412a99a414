use serde::{Deserialize, Serialize};

use crate::error::{check_level, Error, Result};

/// `S(r, x) = (p − 1{x > r}) r + 1{x > r} x`, the 1-homogeneous scoring
/// function for the upper `p` quantile.
pub fn quantile_score(r: f64, x: f64, p: f64) -> f64 {
    if x > r {
        (p - 1.0) * r + x
    } else {
        p * r
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreSeries {
    /// Time indices of the scored events.
    pub events: Vec<usize>,
    pub scores: Vec<f64>,
    pub average: f64,
    pub count: usize,
}

/// Upper-`p` empirical quantile: the `(⌊wp⌋ + 1)`-th largest of the window.
pub fn empirical_var(window: &[f64], p: f64) -> Result<f64> {
    check_level(p)?;
    if window.is_empty() {
        return Err(Error::TooShort { n: 0, min: 1 });
    }
    let mut v = window.to_vec();
    v.sort_by(|a, b| b.total_cmp(a));
    let j = ((window.len() as f64 * p).floor() as usize).min(window.len() - 1);
    Ok(v[j])
}

/// Times `t ≥ window` at which `x[t]` exceeds the empirical VaR of
/// `x[t−window..t]`.
pub fn distress_events(x: &[f64], window: usize, p: f64) -> Result<Vec<usize>> {
    check_level(p)?;
    if window == 0 || window >= x.len() {
        return Err(Error::WindowTooShort {
            window,
            available: x.len(),
        });
    }
    let mut out = Vec::new();
    for t in window..x.len() {
        if x[t] > empirical_var(&x[t - window..t], p)? {
            out.push(t);
        }
    }
    Ok(out)
}

/// Scores `forecast[t]` against `observation[t]` at each event time.
pub fn score_events(forecast: &[f64], observation: &[f64], events: &[usize], p: f64) -> Result<ScoreSeries> {
    check_level(p)?;
    if forecast.len() != observation.len() {
        return Err(Error::InvalidInput(format!(
            "{} forecasts for {} observations",
            forecast.len(),
            observation.len()
        )));
    }
    if let Some(&t) = events.iter().find(|&&t| t >= forecast.len()) {
        return Err(Error::InvalidInput(format!("event time {t} beyond the series")));
    }
    let scores: Vec<f64> = events
        .iter()
        .map(|&t| quantile_score(forecast[t], observation[t], p))
        .collect();
    let count = scores.len();
    let average = if count == 0 {
        0.0
    } else {
        scores.iter().sum::<f64>() / count as f64
    };
    Ok(ScoreSeries {
        events: events.to_vec(),
        scores,
        average,
        count,
    })
}
