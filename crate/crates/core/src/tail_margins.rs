//! Univariate heavy-tail estimation: order statistics, the Hill estimator of
//! the extreme value index and Weissman's quantile extrapolation.

use serde::{Deserialize, Serialize};

use crate::error::{check_level, Error, Result};

/// Ascending order statistics `Y_{n,1} <= ... <= Y_{n,n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedSeries {
    values: Vec<f64>,
}

impl SortedSeries {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `Y_{n,j}`, one-based.
    pub fn order_stat(&self, j: usize) -> f64 {
        self.values[j - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailIndexEstimate {
    pub gamma_hat: f64,
    pub k1: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarEstimate {
    pub level_p: f64,
    pub value: f64,
    pub k2: usize,
}

/// Stable ascending sort; ties keep their input order.
pub fn sort_series(raw: &[f64]) -> Result<SortedSeries> {
    if let Some(index) = raw.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite { index });
    }
    if raw.len() < 3 {
        return Err(Error::TooShort {
            n: raw.len(),
            min: 3,
        });
    }
    let mut values = raw.to_vec();
    values.sort_by(f64::total_cmp);
    Ok(SortedSeries { values })
}

fn check_k(name: &'static str, k: usize, n: usize) -> Result<()> {
    if k >= 1 && k < n {
        Ok(())
    } else {
        Err(Error::BadK {
            name,
            k,
            n,
            max: n - 1,
        })
    }
}

/// Hill estimator over the top `k1` order statistics:
/// mean of `log Y_{n,n-i+1} - log Y_{n,n-k1}` for `i = 1..=k1`.
pub fn hill(series: &SortedSeries, k1: usize) -> Result<TailIndexEstimate> {
    let n = series.len();
    check_k("k1", k1, n)?;
    let threshold = series.order_stat(n - k1);
    if threshold <= 0.0 {
        return Err(Error::NonPositiveThreshold { value: threshold });
    }
    let log_t = threshold.ln();
    let sum: f64 = series.values[n - k1..].iter().map(|v| v.ln() - log_t).sum();
    Ok(TailIndexEstimate {
        gamma_hat: sum / k1 as f64,
        k1,
    })
}

/// Weissman extrapolation `Y_{n,n-k2} (k2 / (n p))^gamma_hat`.
pub fn weissman_var(
    series: &SortedSeries,
    gamma_hat: f64,
    k2: usize,
    p: f64,
) -> Result<VarEstimate> {
    let n = series.len();
    check_level(p)?;
    check_k("k2", k2, n)?;
    let base = series.order_stat(n - k2);
    let factor = k2 as f64 / (n as f64 * p);
    Ok(VarEstimate {
        level_p: p,
        value: base * factor.powf(gamma_hat),
        k2,
    })
}
