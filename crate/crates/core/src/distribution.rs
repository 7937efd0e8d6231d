//! Closed-form mathematics of the particles-in-boxes model.
//!
//! Configurations of `P` indistinguishable particles in `N` distinguishable
//! boxes number `(N+P-1)! / ((N-1)! P!)`. Treating every configuration as
//! equally likely and maximizing the entropy gives a potential
//! `phi(n) = theta * ln((n+1)/n)` for a box holding `n` particles, and
//! normalizing the potential over `n = 1..N` gives the share law
//! `rho(n) = ln(1 + 1/n) / ln(N + 1)`.

use std::f64::consts::PI;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric;

/// Model parameters: `N` boxes and, optionally, `P` particles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoxEnsemble {
    n_boxes: u64,
    n_particles: Option<u64>,
}

impl BoxEnsemble {
    /// An ensemble with a fixed number of particles.
    pub fn new(n_boxes: u64, n_particles: u64) -> Result<Self> {
        if n_boxes == 0 {
            return Err(Error::param("the number of boxes must be at least 1"));
        }
        Ok(Self {
            n_boxes,
            n_particles: Some(n_particles),
        })
    }

    /// An ensemble used only for asymptotic (large-`P`) quantities.
    pub fn boxes_only(n_boxes: u64) -> Result<Self> {
        if n_boxes == 0 {
            return Err(Error::param("the number of boxes must be at least 1"));
        }
        Ok(Self {
            n_boxes,
            n_particles: None,
        })
    }

    pub fn n_boxes(&self) -> u64 {
        self.n_boxes
    }

    pub fn n_particles(&self) -> Option<u64> {
        self.n_particles
    }

    /// The particle count, or a parameter error if the ensemble has none.
    pub fn particles(&self) -> Result<u64> {
        self.n_particles
            .ok_or_else(|| Error::param("operation needs a particle count"))
    }
}

/// Dimensionless temperature.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct Temperature(f64);

impl Temperature {
    pub fn new(theta: f64) -> Result<Self> {
        if theta.is_finite() && theta > 0.0 {
            Ok(Self(theta))
        } else {
            Err(Error::domain(format!(
                "temperature must be positive, got {theta}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Number of configurations, computed exactly.
pub fn multiplicity(ensemble: &BoxEnsemble) -> Result<BigUint> {
    let p = ensemble.particles()?;
    Ok(binomial(
        ensemble.n_boxes - 1 + p,
        p.min(ensemble.n_boxes - 1),
    ))
}

/// Exact `C(n, k)`; every intermediate value is itself a binomial coefficient,
/// so each division is exact.
pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

/// `ln` of [`multiplicity`], usable for `N` and `P` up to about `10^15`.
///
/// Small `min(N-1, P)` sums `ln(1 + m/i)` term by term; otherwise a Stirling
/// expansion written in `ln_1p` form avoids the cancellation of subtracting
/// three large log-gamma values.
pub fn log_multiplicity(ensemble: &BoxEnsemble) -> Result<f64> {
    let p = ensemble.particles()?;
    let a = ensemble.n_boxes - 1;
    let (m, k) = if a >= p { (a, p) } else { (p, a) };
    Ok(ln_binomial_sum(m as f64, k))
}

const DIRECT_SUM_LIMIT: u64 = 32;

// ln C(m + k, k) with m >= k.
fn ln_binomial_sum(m: f64, k: u64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    if k <= DIRECT_SUM_LIMIT {
        return numeric::sum((1..=k).map(|i| (m / i as f64).ln_1p()));
    }
    let kf = k as f64;
    let leading = m * (kf / m).ln_1p() + kf * (m / kf).ln_1p();
    let gaussian = 0.5 * ((kf / m).ln_1p() - (2.0 * PI * kf).ln());
    leading + gaussian + stirling_tail(m + kf) - stirling_tail(m) - stirling_tail(kf)
}

// ln Gamma(x + 1) - (x ln x - x + ln(2 pi x) / 2), accurate for x > 30.
fn stirling_tail(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 / 1680.0)))
}

/// Stirling form of the entropy, `N ((1+n) ln(1+n) - n ln n)`.
pub fn shannon_info(n_boxes: u64, mean_occupancy: f64) -> Result<f64> {
    if n_boxes == 0 {
        return Err(Error::param("the number of boxes must be at least 1"));
    }
    if !(mean_occupancy > 0.0 && mean_occupancy.is_finite()) {
        return Err(Error::domain(format!(
            "mean occupancy must be positive, got {mean_occupancy}"
        )));
    }
    let n = mean_occupancy;
    Ok(n_boxes as f64 * ((1.0 + n) * n.ln_1p() - n * n.ln()))
}

/// Potential of a box holding `n` particles: `theta * ln((n+1)/n)`.
pub fn phi(n: f64, theta: Temperature) -> Result<f64> {
    check_occupancy(n)?;
    Ok(theta.value() * n.recip().ln_1p())
}

/// Mean occupancy at potential-to-temperature ratio `x`: `1 / (e^x - 1)`.
///
/// This inverts [`phi`] at unit temperature.
pub fn occupancy_from_potential(x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::domain(format!(
            "potential ratio must be positive, got {x}"
        )));
    }
    Ok(x.exp_m1().recip())
}

/// Stationary potential from the Lagrange-multiplier route: `(N/beta) ln((n+1)/n)`.
pub fn lagrange_phi(n: f64, n_boxes: u64, beta: f64) -> Result<f64> {
    check_occupancy(n)?;
    if n_boxes == 0 {
        return Err(Error::param("the number of boxes must be at least 1"));
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::domain(format!(
            "multiplier beta must be positive, got {beta}"
        )));
    }
    Ok(n_boxes as f64 / beta * n.recip().ln_1p())
}

/// Normalizes [`lagrange_phi`] over `n = 1..N`. The multiplier cancels, so the
/// result matches [`rho_table`] for every positive `beta`.
pub fn lagrange_table(n_boxes: u64, beta: f64) -> Result<ShareDistribution> {
    let potentials = (1..=n_boxes.max(1))
        .map(|n| lagrange_phi(n as f64, n_boxes, beta))
        .collect::<Result<Vec<_>>>()?;
    let total = numeric::sum(potentials.iter().copied());
    let probabilities = potentials.into_iter().map(|v| v / total).collect();
    Ok(ShareDistribution {
        n_boxes,
        probabilities,
        alpha: 1.0,
        kind: ShareKind::Plain,
    })
}

fn check_occupancy(n: f64) -> Result<()> {
    if n > 0.0 && n.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "occupancy must be positive, got {n}"
        )))
    }
}

/// Which law produced a [`ShareDistribution`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShareKind {
    Plain,
    Alpha,
}

/// Normalized share table `rho(1..N)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShareDistribution {
    n_boxes: u64,
    probabilities: Vec<f64>,
    alpha: f64,
    kind: ShareKind,
}

impl ShareDistribution {
    /// Rebuilds a table from its parts, checking normalization, positivity
    /// and monotonicity.
    pub fn from_parts(probabilities: Vec<f64>, alpha: f64, kind: ShareKind) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::param("share table is empty"));
        }
        if !alpha.is_finite() {
            return Err(Error::param("alpha must be finite"));
        }
        if kind == ShareKind::Plain && alpha != 1.0 {
            return Err(Error::param("a plain share table has alpha = 1"));
        }
        if let Some(bad) = probabilities.iter().find(|p| !(**p > 0.0 && p.is_finite())) {
            return Err(Error::param(format!(
                "share {bad} is not a positive probability"
            )));
        }
        let total = numeric::sum(probabilities.iter().copied());
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::param(format!("shares sum to {total}, not 1")));
        }
        let ordered = |ok: fn(f64, f64) -> bool| probabilities.windows(2).all(|w| ok(w[0], w[1]));
        let monotone = if alpha > 0.0 {
            ordered(|a, b| a > b)
        } else if alpha < 0.0 {
            ordered(|a, b| a < b)
        } else {
            ordered(|a, b| (a - b).abs() <= 1e-15)
        };
        if !monotone {
            return Err(Error::param(format!(
                "shares are not ordered as required for alpha = {alpha}"
            )));
        }
        Ok(Self {
            n_boxes: probabilities.len() as u64,
            probabilities,
            alpha,
            kind,
        })
    }

    pub fn n_boxes(&self) -> u64 {
        self.n_boxes
    }

    /// Shares indexed from `n = 1` at position 0.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Share of the box holding `n` particles, `1 <= n <= N`.
    pub fn share(&self, n: u64) -> Option<f64> {
        n.checked_sub(1)
            .and_then(|i| self.probabilities.get(i as usize).copied())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kind(&self) -> ShareKind {
        self.kind
    }

    pub fn into_probabilities(self) -> Vec<f64> {
        self.probabilities
    }
}

/// Share law over `n = 1..N`. `alpha = 1` uses the telescoping closed form;
/// any other exponent goes through [`power_law_table`].
pub fn rho_table(n_boxes: u64, alpha: f64) -> Result<ShareDistribution> {
    if n_boxes == 0 {
        return Err(Error::param("the number of boxes must be at least 1"));
    }
    if !alpha.is_finite() {
        return Err(Error::param(format!("alpha must be finite, got {alpha}")));
    }
    if alpha != 1.0 {
        return power_law_table(n_boxes, alpha);
    }
    let norm = (n_boxes as f64).ln_1p();
    let probabilities = (1..=n_boxes)
        .map(|n| (n as f64).recip().ln_1p() / norm)
        .collect();
    Ok(ShareDistribution {
        n_boxes,
        probabilities,
        alpha: 1.0,
        kind: ShareKind::Plain,
    })
}

/// Weights `ln(1 + 1/n)^alpha` normalized by direct compensated summation.
/// Evaluated in log space so large `|alpha|` neither overflows nor underflows
/// the leading weight.
pub fn power_law_table(n_boxes: u64, alpha: f64) -> Result<ShareDistribution> {
    if n_boxes == 0 {
        return Err(Error::param("the number of boxes must be at least 1"));
    }
    if !alpha.is_finite() {
        return Err(Error::param(format!("alpha must be finite, got {alpha}")));
    }
    let log_weights: Vec<f64> = (1..=n_boxes)
        .map(|n| alpha * (n as f64).recip().ln_1p().ln())
        .collect();
    let peak = log_weights
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_weights.iter().map(|lw| (lw - peak).exp()).collect();
    let z = numeric::sum(weights.iter().copied());
    Ok(ShareDistribution {
        n_boxes,
        probabilities: weights.into_iter().map(|w| w / z).collect(),
        alpha,
        kind: ShareKind::Alpha,
    })
}

/// Combined share of the `k` richest boxes, `ln(k+1) / ln(N+1)`.
pub fn cumulative_share(k: u64, n_boxes: u64) -> Result<f64> {
    if n_boxes == 0 || k == 0 || k > n_boxes {
        return Err(Error::param(format!("rank {k} is outside 1..={n_boxes}")));
    }
    Ok((k as f64).ln_1p() / (n_boxes as f64).ln_1p())
}
