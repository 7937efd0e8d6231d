//! Ground truth by exhaustive enumeration, and the exact single-box marginal
//! when every configuration is equally likely.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::distribution::{binomial, multiplicity, rho_table, BoxEnsemble};
use crate::error::{Error, Result};
use crate::numeric;

/// Default limit on the number of configurations [`enumerate_configurations`]
/// will produce.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// One microstate: the occupancy of each box.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Configuration {
    occupancies: Vec<u64>,
}

impl Configuration {
    /// Checks that the occupancies add up to `n_particles`.
    pub fn new(occupancies: Vec<u64>, n_particles: u64) -> Result<Self> {
        if occupancies.is_empty() {
            return Err(Error::param("a configuration needs at least one box"));
        }
        let total: u128 = occupancies.iter().map(|&c| c as u128).sum();
        if total != n_particles as u128 {
            return Err(Error::param(format!(
                "occupancies sum to {total}, expected {n_particles}"
            )));
        }
        Ok(Self { occupancies })
    }

    pub(crate) fn from_vec_unchecked(occupancies: Vec<u64>) -> Self {
        Self { occupancies }
    }

    pub fn occupancies(&self) -> &[u64] {
        &self.occupancies
    }

    pub fn n_particles(&self) -> u64 {
        self.occupancies.iter().sum()
    }
}

/// Lexicographic iterator over every configuration of an ensemble.
#[derive(Debug, Clone)]
pub struct Configurations {
    current: Option<Vec<u64>>,
}

impl Iterator for Configurations {
    type Item = Configuration;

    fn next(&mut self) -> Option<Configuration> {
        let current = self.current.as_mut()?;
        let out = Configuration::from_vec_unchecked(current.clone());

        // Advance: bump the rightmost non-final box whose suffix still holds
        // particles, then move the remainder of that suffix into the last box.
        let last = current.len() - 1;
        let mut tail = current[last];
        let mut advanced = false;
        for i in (0..last).rev() {
            if tail > 0 {
                current[i] += 1;
                current[last] = tail - 1;
                advanced = true;
                break;
            }
            tail += current[i];
            current[i] = 0;
        }
        if !advanced {
            self.current = None;
        }
        Some(out)
    }
}

/// Every configuration of the ensemble exactly once, in lexicographic order.
///
/// Fails with a resource error if the count exceeds `cap`.
pub fn enumerate_configurations(ensemble: &BoxEnsemble, cap: u64) -> Result<Configurations> {
    let p = ensemble.particles()?;
    let count = multiplicity(ensemble)?;
    if count > BigUint::from(cap) {
        return Err(Error::Resource {
            what: "enumeration",
            count: count.to_string(),
            cap,
        });
    }
    let n = usize::try_from(ensemble.n_boxes())
        .map_err(|_| Error::param("too many boxes to enumerate"))?;
    let mut first = vec![0u64; n];
    first[n - 1] = p;
    Ok(Configurations {
        current: Some(first),
    })
}

/// Exact distribution of one designated box's occupancy, indexed `k = 0..=P`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OccupancyDistribution {
    pub n_boxes: u64,
    pub n_particles: u64,
    pub prob: Vec<f64>,
}

impl OccupancyDistribution {
    pub fn mean(&self) -> f64 {
        numeric::sum(self.prob.iter().enumerate().map(|(k, p)| k as f64 * p))
    }
}

/// Closed-form marginal `prob[k] = Omega(N-1, P-k) / Omega(N, P)`.
///
/// Evaluated through the ratio `prob[k+1] / prob[k] = (P-k) / (N+P-k-2)`,
/// starting from `prob[0] = (N-1) / (N+P-1)`.
pub fn exact_marginal(ensemble: &BoxEnsemble) -> Result<OccupancyDistribution> {
    let p = ensemble.particles()?;
    let n = ensemble.n_boxes();
    let len = usize::try_from(p)
        .ok()
        .and_then(|p| p.checked_add(1))
        .ok_or_else(|| Error::param("too many particles for a marginal table"))?;
    let mut prob = vec![0.0; len];
    if n == 1 {
        prob[len - 1] = 1.0;
    } else {
        let (nf, pf) = (n as f64, p as f64);
        let mut current = (nf - 1.0) / (nf + pf - 1.0);
        for (k, slot) in prob.iter_mut().enumerate() {
            *slot = current;
            let kf = k as f64;
            current *= (pf - kf) / (nf + pf - kf - 2.0);
        }
    }
    Ok(OccupancyDistribution {
        n_boxes: n,
        n_particles: p,
        prob,
    })
}

/// Exact marginal as integer weights: `counts[k]` configurations put `k`
/// particles in the designated box, out of `multiplicity(N, P)` in total.
pub fn exact_marginal_counts(ensemble: &BoxEnsemble) -> Result<Vec<BigUint>> {
    let p = ensemble.particles()?;
    let n = ensemble.n_boxes();
    Ok((0..=p)
        .map(|k| {
            if n == 1 {
                BigUint::from(u32::from(k == p))
            } else {
                // Omega(N-1, P-k) = C(N+P-k-2, P-k)
                binomial(n + p - k - 2, (p - k).min(n - 2))
            }
        })
        .collect())
}

/// One row of a [`DeviationReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationRow {
    pub n: u64,
    pub exact_conditional: f64,
    pub eq2_renormalized: f64,
}

/// Exact conditional marginal `P(k = n | k >= 1)` next to the share law
/// restricted and renormalized to the same support `n = 1..min(P, N)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DeviationReport {
    pub n_boxes: u64,
    pub n_particles: u64,
    pub rows: Vec<DeviationRow>,
    /// Exact conditional mass on `k > min(P, N)`, where the share law is zero.
    pub exact_tail: f64,
    /// Total-variation distance, counting `exact_tail` as disagreement.
    pub total_variation: f64,
}

/// Compares the exact finite-size marginal with the share law.
pub fn deviation_report(ensemble: &BoxEnsemble) -> Result<DeviationReport> {
    let p = ensemble.particles()?;
    let n = ensemble.n_boxes();
    if n < 2 || p < 1 {
        return Err(Error::param("deviation report needs N >= 2 and P >= 1"));
    }
    let support = n.min(p);
    let marginal = exact_marginal(ensemble)?;
    let occupied = 1.0 - marginal.prob[0];
    // Truncating the N-box law to 1..=support and renormalizing gives the
    // support-sized law, since the normalizer telescopes to ln(support + 1).
    let law = rho_table(support, 1.0)?;

    let rows: Vec<DeviationRow> = (1..=support)
        .map(|k| DeviationRow {
            n: k,
            exact_conditional: marginal.prob[k as usize] / occupied,
            eq2_renormalized: law.share(k).unwrap_or(0.0),
        })
        .collect();
    let covered = numeric::sum(rows.iter().map(|r| r.exact_conditional));
    let exact_tail = (1.0 - covered).max(0.0);
    let l1 = numeric::sum(
        rows.iter()
            .map(|r| (r.exact_conditional - r.eq2_renormalized).abs()),
    ) + exact_tail;
    Ok(DeviationReport {
        n_boxes: n,
        n_particles: p,
        rows,
        exact_tail,
        total_variation: 0.5 * l1,
    })
}

/// Frequencies of box 1's occupancy over a full enumeration; test helper for
/// small instances.
pub fn enumerated_marginal_counts(ensemble: &BoxEnsemble, cap: u64) -> Result<Vec<u64>> {
    let p = ensemble.particles()?;
    let mut counts = vec![0u64; p as usize + 1];
    for config in enumerate_configurations(ensemble, cap)? {
        counts[config.occupancies()[0] as usize] += 1;
    }
    Ok(counts)
}

/// Converts an exact count table to probabilities.
pub fn counts_to_probabilities(counts: &[BigUint]) -> Vec<f64> {
    let total: BigUint = counts.iter().sum();
    counts
        .iter()
        .map(|c| match (c.to_f64(), total.to_f64()) {
            (Some(a), Some(b)) if b.is_finite() && b > 0.0 => a / b,
            _ => numeric::ratio_biguint(c, &total),
        })
        .collect()
}
