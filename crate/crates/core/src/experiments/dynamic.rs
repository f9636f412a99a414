use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::covar::{covar_estimate, Tuning};
use crate::error::{Error, Result};
use crate::sample::PairedSample;
use crate::tail_dependence::{TailFamily, WeightScheme};

/// Location/scale forecasts for Y together with standardized residual pairs,
/// all indexed by the same time axis.
#[derive(Debug, Clone, PartialEq)]
pub struct FilteredSeries {
    pub mu: Vec<f64>,
    pub sigma: Vec<f64>,
    pub residuals: PairedSample,
}

impl FilteredSeries {
    pub fn new(mu: Vec<f64>, sigma: Vec<f64>, residuals: PairedSample) -> Result<Self> {
        if mu.len() != residuals.len() || sigma.len() != residuals.len() {
            return Err(Error::InvalidInput(format!(
                "series lengths differ: mu {}, sigma {}, residuals {}",
                mu.len(),
                sigma.len(),
                residuals.len()
            )));
        }
        if let Some(t) = sigma.iter().position(|s| !(*s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidInput(format!("sigma[{t}] = {} is not positive", sigma[t])));
        }
        if let Some(t) = mu.iter().position(|m| !m.is_finite()) {
            return Err(Error::NonFinite { index: t });
        }
        Ok(Self { mu, sigma, residuals })
    }

    pub fn len(&self) -> usize {
        self.mu.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicConfig {
    /// Number of residual pairs before `t` used for each estimate.
    pub window: usize,
    /// Re-estimate every this many steps; hold the residual CoVaR between.
    pub refresh_every: usize,
    pub tuning: Tuning,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForecastRecord {
    pub t: usize,
    pub mu: f64,
    pub sigma: f64,
    /// Residual pair observed at `t`.
    pub z_x: f64,
    pub z_y: f64,
    /// CoVaR of the residual pair, from the latest refresh.
    pub residual_covar: f64,
    /// `mu + sigma · residual_covar`.
    pub covar: f64,
    /// Whether the residual CoVaR was re-estimated at this step.
    pub refreshed: bool,
}

/// Forecasts for every `t ∈ [window, T)` from residuals `t−window..t`.
pub fn dynamic_covar(
    series: &FilteredSeries,
    config: &DynamicConfig,
    family: &dyn TailFamily,
    scheme: &WeightScheme,
) -> Result<Vec<ForecastRecord>> {
    let total = series.len();
    if config.window == 0 || config.window >= total {
        return Err(Error::WindowTooShort {
            window: config.window,
            available: total,
        });
    }
    if config.refresh_every == 0 {
        return Err(Error::InvalidInput("refresh_every must be at least 1".into()));
    }
    let mut out = Vec::with_capacity(total - config.window);
    let mut held = f64::NAN;
    for t in config.window..total {
        let refreshed = (t - config.window).is_multiple_of(config.refresh_every);
        if refreshed {
            let window = series.residuals.window(t - config.window, t);
            held = covar_estimate(&window, config.tuning, family, scheme)?.covar_hat;
        }
        out.push(ForecastRecord {
            t,
            mu: series.mu[t],
            sigma: series.sigma[t],
            z_x: series.residuals.x()[t],
            z_y: series.residuals.y()[t],
            residual_covar: held,
            covar: series.mu[t] + series.sigma[t] * held,
            refreshed,
        });
    }
    Ok(out)
}

/// `t,mu,sigma,covar` rows.
pub fn write_forecast_csv<W: Write>(records: &[ForecastRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "mu", "sigma", "covar"])?;
    for r in records {
        w.write_record([r.t.to_string(), r.mu.to_string(), r.sigma.to_string(), r.covar.to_string()])?;
    }
    w.flush()?;
    Ok(())
}
