use std::io::Write;

use crate::error::{Error, Result};
use crate::sample::PairedSample;
use crate::tail_dependence::{m_estimate, rank_pairs, TailFamily, WeightScheme};

/// η̂ for every `k3` in the grid, in grid order. Failures are reported per
/// grid point rather than aborting the scan.
pub fn eta_scan(
    sample: &PairedSample,
    family: &dyn TailFamily,
    scheme: &WeightScheme,
    k3_grid: &[usize],
) -> Result<Vec<(usize, Result<f64>)>> {
    let n = sample.len();
    if let Some(&k) = k3_grid.iter().find(|&&k| k == 0 || k >= n) {
        return Err(Error::BadK {
            name: "k3",
            k,
            n,
            max: n.saturating_sub(1),
        });
    }
    let ranks = rank_pairs(sample)?;
    Ok(k3_grid
        .iter()
        .map(|&k3| (k3, m_estimate(&ranks, k3, family, scheme).map(|f| f.eta_hat)))
        .collect())
}

/// `k3,eta_hat` rows; failed grid points leave `eta_hat` empty.
pub fn write_eta_scan_csv<W: Write>(rows: &[(usize, Result<f64>)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["k3", "eta_hat"])?;
    for (k3, eta) in rows {
        let eta = eta.as_ref().map(|v| v.to_string()).unwrap_or_default();
        w.write_record([k3.to_string(), eta])?;
    }
    w.flush()?;
    Ok(())
}
