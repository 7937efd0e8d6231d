//! Goodness-of-fit statistics and the maximum-likelihood exponent of the
//! power-`alpha` share law.

use serde::Serialize;
use statrs::function::gamma::checked_gamma_ur;

use crate::error::{Error, Result};
use crate::numeric;

/// Chi-square, G and MAD statistics of one comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GoodnessOfFit {
    pub chi_square: f64,
    pub dof: u64,
    pub p_value: f64,
    pub g_statistic: f64,
    /// Mean absolute deviation of the observed from the expected proportions.
    pub mad: f64,
}

/// Upper tail `P(X >= chi_square)` of a chi-square law with `dof` degrees of
/// freedom, i.e. the regularized upper incomplete gamma `Q(dof/2, chi_square/2)`.
pub fn chi_square_sf(chi_square: f64, dof: u64) -> Result<f64> {
    if dof == 0 {
        return Err(Error::param(
            "chi-square needs at least one degree of freedom",
        ));
    }
    if chi_square.is_nan() || chi_square < 0.0 {
        return Err(Error::domain(format!(
            "invalid chi-square statistic {chi_square}"
        )));
    }
    if chi_square == 0.0 {
        return Ok(1.0);
    }
    if chi_square.is_infinite() {
        return Ok(0.0);
    }
    checked_gamma_ur(dof as f64 / 2.0, chi_square / 2.0)
        .map(|q| q.clamp(0.0, 1.0))
        .map_err(|e| Error::domain(e.to_string()))
}

/// Pearson chi-square of `observed` counts against `expected` counts.
///
/// `dof` is the number of categories minus one. The G statistic treats
/// `0 ln 0` as zero; MAD compares the two tables as proportions.
pub fn chi_square(observed: &[f64], expected: &[f64]) -> Result<GoodnessOfFit> {
    if observed.len() != expected.len() {
        return Err(Error::param(format!(
            "{} observed categories but {} expected",
            observed.len(),
            expected.len()
        )));
    }
    if observed.len() < 2 {
        return Err(Error::param("chi-square needs at least two categories"));
    }
    if let Some(e) = expected.iter().find(|e| !(**e > 0.0 && e.is_finite())) {
        return Err(Error::param(format!("expected count {e} is not positive")));
    }
    if let Some(o) = observed.iter().find(|o| !(**o >= 0.0 && o.is_finite())) {
        return Err(Error::param(format!("observed count {o} is invalid")));
    }
    let total_observed = numeric::sum(observed.iter().copied());
    if total_observed < 1.0 {
        return Err(Error::param("no observations"));
    }
    let total_expected = numeric::sum(expected.iter().copied());

    let pairs = || observed.iter().zip(expected);
    let chi = numeric::sum(pairs().map(|(o, e)| (o - e) * (o - e) / e));
    let g = 2.0
        * numeric::sum(
            pairs()
                .filter(|(o, _)| **o > 0.0)
                .map(|(o, e)| o * (o / e).ln()),
        );
    let mad = mean_abs_deviation(
        observed.iter().map(|o| o / total_observed),
        expected.iter().map(|e| e / total_expected),
    );
    let dof = observed.len() as u64 - 1;
    Ok(GoodnessOfFit {
        chi_square: chi,
        dof,
        p_value: chi_square_sf(chi, dof)?,
        // rounding can push a perfect fit a hair below zero
        g_statistic: g.max(0.0),
        mad,
    })
}

/// [`chi_square`] after merging adjacent categories until each merged
/// category expects at least `min_expected` observations. A short remainder
/// at the end joins the last merged category.
pub fn chi_square_pooled(
    observed: &[f64],
    expected: &[f64],
    min_expected: f64,
) -> Result<GoodnessOfFit> {
    if observed.len() != expected.len() {
        return Err(Error::param(
            "observed and expected tables differ in length",
        ));
    }
    let mut obs = Vec::new();
    let mut exp = Vec::new();
    let (mut o_acc, mut e_acc) = (0.0, 0.0);
    for (o, e) in observed.iter().zip(expected) {
        o_acc += o;
        e_acc += e;
        if e_acc >= min_expected {
            obs.push(o_acc);
            exp.push(e_acc);
            o_acc = 0.0;
            e_acc = 0.0;
        }
    }
    if e_acc > 0.0 || o_acc > 0.0 {
        match (obs.last_mut(), exp.last_mut()) {
            (Some(o), Some(e)) => {
                *o += o_acc;
                *e += e_acc;
            }
            _ => {
                obs.push(o_acc);
                exp.push(e_acc);
            }
        }
    }
    chi_square(&obs, &exp)
}

fn mean_abs_deviation(a: impl Iterator<Item = f64>, b: impl Iterator<Item = f64>) -> f64 {
    let mut n = 0usize;
    let total = numeric::sum(a.zip(b).map(|(x, y)| {
        n += 1;
        (x - y).abs()
    }));
    if n == 0 {
        0.0
    } else {
        total / n as f64
    }
}

/// Mean over categories of `|observed - expected|`; both tables are
/// proportions summing to one.
pub fn mad(observed_prop: &[f64], expected_prop: &[f64]) -> Result<f64> {
    if observed_prop.len() != expected_prop.len() {
        return Err(Error::param(format!(
            "proportion tables differ in length ({} vs {})",
            observed_prop.len(),
            expected_prop.len()
        )));
    }
    if observed_prop.is_empty() {
        return Err(Error::param("empty proportion tables"));
    }
    for (name, table) in [("observed", observed_prop), ("expected", expected_prop)] {
        let total = numeric::sum(table.iter().copied());
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::param(format!("{name} proportions sum to {total}")));
        }
    }
    Ok(mean_abs_deviation(
        observed_prop.iter().copied(),
        expected_prop.iter().copied(),
    ))
}

/// Result of [`fit_alpha`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaFit {
    pub alpha_hat: f64,
    pub log_likelihood: f64,
    /// From the observed Fisher information `C * Var_alpha[ln w]`.
    pub std_error: f64,
    pub iterations: u32,
}

/// Log weights `ln w(n)`, with `w(n) = ln(1 + 1/n)`, of the power-`alpha` law.
struct PowerLaw {
    log_w: Vec<f64>,
}

struct Moments {
    log_z: f64,
    mean: f64,
    variance: f64,
}

impl PowerLaw {
    fn new(n_boxes: usize) -> Self {
        Self {
            log_w: (1..=n_boxes)
                .map(|n| (n as f64).recip().ln_1p().ln())
                .collect(),
        }
    }

    // log Z(alpha) and the first two moments of ln w under p_alpha
    fn moments(&self, alpha: f64) -> Moments {
        let peak = self
            .log_w
            .iter()
            .map(|y| alpha * y)
            .fold(f64::NEG_INFINITY, f64::max);
        let mut z = numeric::CompensatedSum::new();
        let mut s1 = numeric::CompensatedSum::new();
        let mut s2 = numeric::CompensatedSum::new();
        for &y in &self.log_w {
            let weight = (alpha * y - peak).exp();
            z.add(weight);
            s1.add(weight * y);
            s2.add(weight * y * y);
        }
        let z = z.value();
        let mean = s1.value() / z;
        Moments {
            log_z: peak + z.ln(),
            mean,
            variance: (s2.value() / z - mean * mean).max(0.0),
        }
    }
}

/// Maximum-likelihood `alpha` for counts over `n = 1..N` under
/// `p_alpha(n) = w(n)^alpha / Z(alpha)`.
///
/// The log-likelihood is strictly concave, so its stationary point
/// `mean_obs[ln w] = E_alpha[ln w]` is unique. The root is bracketed from
/// `[-20, 20]` (widened if needed), bisected to width `1e-8`, then polished
/// with safeguarded Newton steps.
pub fn fit_alpha(counts: &[f64], n_boxes: u64) -> Result<AlphaFit> {
    if counts.len() as u64 != n_boxes {
        return Err(Error::param(format!(
            "histogram has {} bins for {} boxes",
            counts.len(),
            n_boxes
        )));
    }
    if let Some(c) = counts.iter().find(|c| !(**c >= 0.0 && c.is_finite())) {
        return Err(Error::param(format!("invalid count {c}")));
    }
    let total = numeric::sum(counts.iter().copied());
    if total < 2.0 {
        return Err(Error::Fit("at least two observations are needed".into()));
    }
    if counts.iter().filter(|c| **c > 0.0).count() < 2 {
        return Err(Error::Fit(
            "counts occupy a single box; the likelihood has no maximum".into(),
        ));
    }

    let law = PowerLaw::new(counts.len());
    let observed_mean = numeric::sum(counts.iter().zip(&law.log_w).map(|(c, y)| c * y)) / total;
    let score = |alpha: f64| observed_mean - law.moments(alpha).mean;

    let mut iterations = 0u32;
    let (mut lo, mut hi) = (-20.0f64, 20.0f64);
    while score(lo) <= 0.0 || score(hi) >= 0.0 {
        if score(lo) == 0.0 {
            hi = lo;
            break;
        }
        if score(hi) == 0.0 {
            lo = hi;
            break;
        }
        if hi > 1.0e6 {
            return Err(Error::Fit(
                "could not bracket the likelihood maximum".into(),
            ));
        }
        lo *= 2.0;
        hi *= 2.0;
        iterations += 1;
    }
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        let s = score(mid);
        if s > 0.0 {
            lo = mid;
        } else if s < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            hi = mid;
        }
        iterations += 1;
    }

    let mut alpha = 0.5 * (lo + hi);
    // score signs near the root are noisy, so an endpoint may sit on it
    let slack = (hi - lo).max(1e-12);
    let (lo, hi) = (lo - slack, hi + slack);
    for _ in 0..8 {
        let m = law.moments(alpha);
        if m.variance <= 0.0 {
            break;
        }
        let step = (observed_mean - m.mean) / m.variance;
        let next = alpha + step;
        if !(next >= lo && next <= hi) {
            break;
        }
        iterations += 1;
        alpha = next;
        if step.abs() <= 1e-15 * alpha.abs().max(1.0) {
            break;
        }
    }

    let m = law.moments(alpha);
    let information = total * m.variance;
    if information.is_nan() || information <= 0.0 {
        return Err(Error::Fit(
            "Fisher information vanished at the estimate".into(),
        ));
    }
    Ok(AlphaFit {
        alpha_hat: alpha,
        log_likelihood: log_likelihood_with(&law, counts, alpha),
        std_error: information.sqrt().recip(),
        iterations,
    })
}

fn log_likelihood_with(law: &PowerLaw, counts: &[f64], alpha: f64) -> f64 {
    let log_z = law.moments(alpha).log_z;
    numeric::sum(
        counts
            .iter()
            .zip(&law.log_w)
            .filter(|(c, _)| **c > 0.0)
            .map(|(c, y)| c * (alpha * y - log_z)),
    )
}

/// `sum_n c_n ln p_alpha(n)` for counts over `n = 1..counts.len()`.
pub fn log_likelihood(counts: &[f64], alpha: f64) -> f64 {
    log_likelihood_with(&PowerLaw::new(counts.len()), counts, alpha)
}
