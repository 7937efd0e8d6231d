//! Wealth shares implied by the share law, with Lorenz curve and Gini
//! coefficient.
//!
//! A population split into `q` equal groups is treated as `q` boxes, so the
//! richest group holds `ln 2 / ln(q + 1)` and the `k` richest hold
//! `ln(k + 1) / ln(q + 1)`.

use serde::Serialize;

use crate::distribution::{cumulative_share, rho_table};
use crate::error::{Error, Result};
use crate::numeric;

/// Shares of `q` equal groups, richest first.
pub fn quantile_shares(n_groups: u64) -> Result<Vec<f64>> {
    Ok(rho_table(n_groups, 1.0)?.into_probabilities())
}

/// Alternative reading: rank `n_boxes` boxes by the share law and split the
/// ranks into `q` equal bands, richest first. Band edges are rounded to the
/// nearest box.
pub fn rank_cumulative_shares(n_groups: u64, n_boxes: u64) -> Result<Vec<f64>> {
    if n_groups == 0 || n_groups > n_boxes {
        return Err(Error::param(format!(
            "cannot split {n_boxes} boxes into {n_groups} groups"
        )));
    }
    let edge = |g: u64| -> u64 {
        let scaled = g as u128 * n_boxes as u128 + n_groups as u128 / 2;
        (scaled / n_groups as u128) as u64
    };
    let mut shares = Vec::with_capacity(n_groups as usize);
    let mut previous = 0.0;
    for g in 1..=n_groups {
        let upto = cumulative_share(edge(g).max(1), n_boxes)?;
        shares.push(upto - previous);
        previous = upto;
    }
    Ok(shares)
}

/// Lorenz curve and Gini coefficient of a share table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WealthReport {
    pub n_groups: u64,
    /// Normalized shares, richest first.
    pub shares: Vec<f64>,
    /// `(population_fraction, wealth_fraction)` from `(0, 0)` to `(1, 1)`,
    /// poorest group first.
    pub lorenz: Vec<(f64, f64)>,
    pub gini: f64,
}

/// Normalizes `shares` and summarizes their inequality.
///
/// Gini is the mean absolute difference `sum_ij |s_i - s_j| / (2 q sum s)`,
/// evaluated in `O(q log q)` from the sorted shares.
pub fn lorenz_gini(shares: &[f64]) -> Result<WealthReport> {
    if shares.is_empty() {
        return Err(Error::param("no shares given"));
    }
    if let Some(s) = shares.iter().find(|s| !(**s > 0.0 && s.is_finite())) {
        return Err(Error::domain(format!("share {s} is not positive")));
    }
    let total = numeric::sum(shares.iter().copied());
    let mut ascending: Vec<f64> = shares.iter().map(|s| s / total).collect();
    ascending.sort_by(f64::total_cmp);
    let q = ascending.len();

    let gini = numeric::sum(
        ascending
            .iter()
            .enumerate()
            .map(|(i, x)| (2.0 * (i + 1) as f64 - q as f64 - 1.0) * x),
    ) / q as f64;

    let mut lorenz = Vec::with_capacity(q + 1);
    lorenz.push((0.0, 0.0));
    let mut acc = numeric::CompensatedSum::new();
    for (i, x) in ascending.iter().enumerate() {
        acc.add(*x);
        lorenz.push(((i + 1) as f64 / q as f64, acc.value().min(1.0)));
    }
    if let Some(last) = lorenz.last_mut() {
        *last = (1.0, 1.0);
    }

    ascending.reverse();
    Ok(WealthReport {
        n_groups: q as u64,
        shares: ascending,
        lorenz,
        gini: gini.max(0.0),
    })
}
