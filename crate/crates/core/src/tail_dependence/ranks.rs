//! Rank transform and the empirical tail measure `Q̂ₙ`.
//!
//! `Q̂ₙ(x, y)` counts the pairs whose X-rank is among the top `⌊k₃x⌋` and
//! whose Y-rank is among the top `⌊k₃y⌋`, divided by `n`.

use super::scheme::{Rect, WeightScheme};
use crate::error::{Error, Result};
use crate::sample::PairedSample;

/// Marginal ranks, `n` = largest. Ties are broken by first occurrence: among
/// equal values the earlier observation gets the lower rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedPairs {
    rank_x: Vec<usize>,
    rank_y: Vec<usize>,
}

fn ranks(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    // sort_by is stable, so equal values keep input order
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut rank = vec![0; values.len()];
    for (pos, &i) in order.iter().enumerate() {
        rank[i] = pos + 1;
    }
    rank
}

pub fn rank_pairs(sample: &PairedSample) -> Result<RankedPairs> {
    if sample.len() < 2 {
        return Err(Error::TooShort {
            n: sample.len(),
            min: 2,
        });
    }
    Ok(RankedPairs {
        rank_x: ranks(sample.x()),
        rank_y: ranks(sample.y()),
    })
}

impl RankedPairs {
    /// Builds from explicit rank arrays; each must be a permutation of `1..=n`.
    pub fn from_ranks(rank_x: Vec<usize>, rank_y: Vec<usize>) -> Result<Self> {
        let n = rank_x.len();
        let is_perm = |r: &[usize]| {
            let mut seen = vec![false; n + 1];
            r.iter().all(|&v| {
                (1..=n).contains(&v) && !std::mem::replace(&mut seen[v], true)
            })
        };
        if n < 2 || rank_y.len() != n || !is_perm(&rank_x) || !is_perm(&rank_y) {
            return Err(Error::InvalidInput(
                "rank arrays must be permutations of 1..=n of equal length n >= 2".into(),
            ));
        }
        Ok(Self { rank_x, rank_y })
    }

    pub fn n(&self) -> usize {
        self.rank_x.len()
    }

    pub fn rank_x(&self) -> &[usize] {
        &self.rank_x
    }

    pub fn rank_y(&self) -> &[usize] {
        &self.rank_y
    }

    /// Position from the top: 1 for the largest observation.
    fn depth(rank: usize, n: usize) -> usize {
        n + 1 - rank
    }
}

fn check_k3(k3: usize, n: usize) -> Result<()> {
    if k3 >= 1 && k3 <= n {
        Ok(())
    } else {
        Err(Error::BadK {
            name: "k3",
            k: k3,
            n,
            max: n,
        })
    }
}

fn floor_count(k3: usize, v: f64) -> usize {
    (k3 as f64 * v).floor() as usize
}

/// `Q̂ₙ(x, y)`.
pub fn empirical_q(ranks: &RankedPairs, k3: usize, x: f64, y: f64) -> Result<f64> {
    let n = ranks.n();
    check_k3(k3, n)?;
    for (name, v) in [("x", x), ("y", y)] {
        if !(v >= 0.0 && v.is_finite()) {
            return Err(Error::OutOfDomain {
                name,
                value: v,
                reason: "must be finite and non-negative".into(),
            });
        }
        if floor_count(k3, v) > n {
            return Err(Error::OutOfDomain {
                name,
                value: v,
                reason: format!("floor(k3*{name}) exceeds n = {n}"),
            });
        }
    }
    let (cx, cy) = (floor_count(k3, x), floor_count(k3, y));
    let count = ranks
        .rank_x
        .iter()
        .zip(&ranks.rank_y)
        .filter(|(&rx, &ry)| {
            RankedPairs::depth(rx, n) <= cx && RankedPairs::depth(ry, n) <= cy
        })
        .count();
    Ok(count as f64 / n as f64)
}

/// `∫_R Q̂ₙ(x, y) dx dy`, exact.
///
/// Pair `i` contributes on `x ≥ d_x/k₃, y ≥ d_y/k₃` where `d` is its depth
/// from the top, so the integral is a sum of overlap-length products.
pub fn rect_integral_q(ranks: &RankedPairs, k3: usize, rect: &Rect) -> f64 {
    let n = ranks.n();
    let k = k3 as f64;
    let overlap = |depth: usize, lo: f64, hi: f64| (hi - lo.max(depth as f64 / k)).max(0.0);
    let sum: f64 = ranks
        .rank_x
        .iter()
        .zip(&ranks.rank_y)
        .map(|(&rx, &ry)| {
            let lx = overlap(RankedPairs::depth(rx, n), rect.x_lo, rect.x_hi);
            if lx == 0.0 {
                return 0.0;
            }
            lx * overlap(RankedPairs::depth(ry, n), rect.y_lo, rect.y_hi)
        })
        .sum();
    sum / n as f64
}

/// Component `j` is `(1/a_j) ∫_{I_j} Q̂ₙ`.
pub fn moment_vector(ranks: &RankedPairs, k3: usize, scheme: &WeightScheme) -> Result<Vec<f64>> {
    let n = ranks.n();
    check_k3(k3, n)?;
    let extent = scheme.max_extent();
    let reach = floor_count(k3, extent);
    if reach > n {
        return Err(Error::RegionTooLarge {
            k3,
            n,
            extent,
            reach,
        });
    }
    Ok(scheme
        .regions()
        .iter()
        .zip(scheme.normalizers())
        .map(|(r, a)| rect_integral_q(ranks, k3, r) / a)
        .collect())
}
