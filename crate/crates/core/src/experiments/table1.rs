use std::io::Write;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::naive::naive_covar;
use crate::covar::{covar_estimate, CovarEstimate, Tuning};
use crate::error::{check_level, Error, Result};
use crate::models::{true_covar, ModelSpec};
use crate::tail_dependence::{FamilyKind, SchemeSpec, WeightScheme};

/// A `k` entry: either one number for all three fractions or an explicit
/// `{"k1": .., "k2": .., "k3": ..}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum KEntry {
    Uniform(usize),
    Triple { k1: usize, k2: usize, k3: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "KEntry")]
pub struct KTriple {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
}

impl From<KEntry> for KTriple {
    fn from(e: KEntry) -> Self {
        match e {
            KEntry::Uniform(k) => KTriple { k1: k, k2: k, k3: k },
            KEntry::Triple { k1, k2, k3 } => KTriple { k1, k2, k3 },
        }
    }
}

impl KTriple {
    pub fn tuning(&self, p: f64) -> Tuning {
        Tuning {
            p,
            k1: self.k1,
            k2: self.k2,
            k3: self.k3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelSpec,
    pub p: f64,
    pub n: usize,
    pub reps: usize,
    pub k_grid: Vec<KTriple>,
    pub seed: u64,
    /// Defaults to the family matching the model.
    #[serde(default)]
    pub family: Option<FamilyKind>,
    /// Defaults to the family's built-in regions.
    #[serde(default)]
    pub scheme: Option<SchemeSpec>,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn family_kind(&self) -> FamilyKind {
        self.family.unwrap_or_else(|| self.model.family_kind())
    }

    pub fn weight_scheme(&self) -> Result<WeightScheme> {
        let kind = self.family_kind();
        let spec = self.scheme.clone().unwrap_or_else(|| match kind {
            FamilyKind::ParetoMixture => SchemeSpec::pareto_mixture_default(),
            FamilyKind::InvertedHuslerReiss => SchemeSpec::inverted_husler_reiss_default(),
        });
        WeightScheme::new(spec, kind.family())
    }

    pub fn validate(&self) -> Result<()> {
        self.model.validate()?;
        check_level(self.p)?;
        if self.reps == 0 {
            return Err(Error::InvalidInput("reps must be at least 1".into()));
        }
        if self.k_grid.is_empty() {
            return Err(Error::InvalidInput("k_grid is empty".into()));
        }
        for k in &self.k_grid {
            for (name, v) in [("k1", k.k1), ("k2", k.k2), ("k3", k.k3)] {
                if v == 0 || v >= self.n {
                    return Err(Error::BadK {
                        name,
                        k: v,
                        n: self.n,
                        max: self.n.saturating_sub(1),
                    });
                }
            }
        }
        self.weight_scheme()?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (divisor `reps − 1`); absent for one rep.
    pub sd: Option<f64>,
}

/// Mean and sample standard deviation.
pub fn summarize(values: &[f64]) -> Summary {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let sd = (values.len() > 1)
        .then(|| (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt());
    Summary { mean, sd }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KSummary {
    pub k1: usize,
    pub k2: usize,
    pub k3: usize,
    pub mean: f64,
    pub sd: Option<f64>,
    /// `mean − true value`.
    pub bias: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepRecord {
    pub rep: usize,
    pub seed: u64,
    /// One estimate per `k_grid` entry, in grid order.
    pub estimates: Vec<CovarEstimate>,
    pub naive: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub true_value: f64,
    pub rows: Vec<KSummary>,
    pub naive: Summary,
    pub naive_bias: f64,
    pub reps: Vec<RepRecord>,
}

impl ExperimentReport {
    /// Flat rep-level CSV, one row per (rep, k).
    pub fn write_reps_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "rep", "seed", "k1", "k2", "k3", "covar_hat", "gamma_hat", "var_hat", "theta_hat",
            "eta_hat", "eta_star_hat", "naive",
        ])?;
        for r in &self.reps {
            for e in &r.estimates {
                let theta = e
                    .theta_hat
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                w.write_record([
                    r.rep.to_string(),
                    r.seed.to_string(),
                    e.tuning.k1.to_string(),
                    e.tuning.k2.to_string(),
                    e.tuning.k3.to_string(),
                    e.covar_hat.to_string(),
                    e.gamma_hat.to_string(),
                    e.var_hat_p.to_string(),
                    theta,
                    e.eta_hat.to_string(),
                    e.eta_star_hat.to_string(),
                    r.naive.to_string(),
                ])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn one_rep(config: &ExperimentConfig, scheme: &WeightScheme, rep: usize) -> Result<RepRecord> {
    let seed = config.seed.wrapping_add(rep as u64);
    let sample = config.model.sample(config.n, seed)?;
    let family = config.family_kind().family();
    let estimates = config
        .k_grid
        .iter()
        .map(|k| covar_estimate(&sample, k.tuning(config.p), family, scheme))
        .collect::<Result<Vec<_>>>()?;
    Ok(RepRecord {
        rep,
        seed,
        estimates,
        naive: naive_covar(&sample, config.p)?,
    })
}

/// Runs `reps` independent repetitions (in parallel on the current rayon
/// pool) with per-rep seeds `seed + rep`. Results do not depend on the
/// thread count.
pub fn run_table1(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let scheme = config.weight_scheme()?;
    let true_value = true_covar(&config.model, config.p)?;

    let reps = (0..config.reps)
        .into_par_iter()
        .map(|rep| {
            one_rep(config, &scheme, rep).map_err(|e| Error::Repetition {
                rep,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let rows = config
        .k_grid
        .iter()
        .enumerate()
        .map(|(j, k)| {
            let v: Vec<f64> = reps.iter().map(|r| r.estimates[j].covar_hat).collect();
            let s = summarize(&v);
            KSummary {
                k1: k.k1,
                k2: k.k2,
                k3: k.k3,
                mean: s.mean,
                sd: s.sd,
                bias: s.mean - true_value,
            }
        })
        .collect();
    let naive_values: Vec<f64> = reps.iter().map(|r| r.naive).collect();
    let naive = summarize(&naive_values);

    Ok(ExperimentReport {
        config: config.clone(),
        true_value,
        rows,
        naive_bias: naive.mean - true_value,
        naive,
        reps,
    })
}
