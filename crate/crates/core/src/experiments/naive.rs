use crate::error::{check_level, Error, Result};
use crate::sample::PairedSample;

/// Empirical conditional quantile of Y among the observations whose X is at
/// or above the `⌊np⌋`-th largest X.
///
/// Of the `m` selected Y values the `⌊mp⌋`-th largest is returned (the
/// largest when `⌊mp⌋ = 0`).
pub fn naive_covar(sample: &PairedSample, p: f64) -> Result<f64> {
    check_level(p)?;
    let n = sample.len();
    let m = (n as f64 * p).floor() as usize;
    if m < 2 {
        return Err(Error::TooFewExceedances(format!(
            "floor(n p) = {m} with n={n}, p={p}; need at least 2"
        )));
    }
    let mut xs = sample.x().to_vec();
    xs.sort_by(|a, b| b.total_cmp(a));
    let threshold = xs[m - 1];

    let mut ys: Vec<f64> = sample
        .pairs()
        .filter(|&(x, _)| x >= threshold)
        .map(|(_, y)| y)
        .collect();
    ys.sort_by(|a, b| b.total_cmp(a));
    let j = ((ys.len() as f64 * p).floor() as usize).max(1);
    Ok(ys[j - 1])
}
