//! Seeded Monte Carlo sampling of uniformly random configurations.
//!
//! A configuration of `P` particles in `N` boxes is a row of `P` stars and
//! `N - 1` bars; choosing the bar positions uniformly without replacement
//! among the `N + P - 1` slots picks every configuration with the same
//! probability, and the occupancies are the gaps between bars.
//!
//! Randomness comes from ChaCha8: the 64-bit seed sets the key and trial `t`
//! reads ChaCha stream `t`, so every trial has its own substream and results
//! do not depend on how trials are split between workers.

use std::collections::BTreeMap;
use std::thread;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::distribution::BoxEnsemble;
use crate::error::{Error, Result};
use crate::oracle::Configuration;

/// Generator for trial `trial` under `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws one configuration uniformly using the supplied generator.
pub fn sample_configuration_with<R: Rng + ?Sized>(
    ensemble: &BoxEnsemble,
    rng: &mut R,
) -> Result<Configuration> {
    let p = ensemble.particles()?;
    let too_big = || Error::param("ensemble too large to sample on this platform");
    let bars = usize::try_from(ensemble.n_boxes() - 1).map_err(|_| too_big())?;
    let particles = usize::try_from(p).map_err(|_| too_big())?;
    let slots = bars.checked_add(particles).ok_or_else(too_big)?;

    let mut positions = index::sample(rng, slots, bars).into_vec();
    positions.sort_unstable();

    let mut occupancies = Vec::with_capacity(bars + 1);
    let mut start = 0usize;
    for bar in positions {
        occupancies.push((bar - start) as u64);
        start = bar + 1;
    }
    occupancies.push((slots - start) as u64);
    Ok(Configuration::from_vec_unchecked(occupancies))
}

/// One uniformly random configuration, deterministic in `seed`.
pub fn sample_configuration(ensemble: &BoxEnsemble, seed: u64) -> Result<Configuration> {
    sample_configuration_with(ensemble, &mut trial_rng(seed, 0))
}

/// Counts of an observed occupancy.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Histogram {
    bins: BTreeMap<u64, u64>,
    total_observations: u64,
}

impl Histogram {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, k: u64) {
        *self.bins.entry(k).or_insert(0) += 1;
        self.total_observations += 1;
    }

    /// Bin-wise addition.
    pub fn merge(&mut self, other: &Histogram) {
        for (&k, &c) in &other.bins {
            *self.bins.entry(k).or_insert(0) += c;
        }
        self.total_observations += other.total_observations;
    }

    pub fn count(&self, k: u64) -> u64 {
        self.bins.get(&k).copied().unwrap_or(0)
    }

    pub fn bins(&self) -> &BTreeMap<u64, u64> {
        &self.bins
    }

    pub fn total_observations(&self) -> u64 {
        self.total_observations
    }

    pub fn mean(&self) -> f64 {
        if self.total_observations == 0 {
            return 0.0;
        }
        let weighted: f64 = self.bins.iter().map(|(&k, &c)| k as f64 * c as f64).sum();
        weighted / self.total_observations as f64
    }

    /// Dense counts for `k = 0..len`; bins at or beyond `len` are dropped.
    pub fn dense(&self, len: usize) -> Vec<u64> {
        let mut out = vec![0; len];
        for (&k, &c) in &self.bins {
            if let Some(slot) = usize::try_from(k).ok().and_then(|i| out.get_mut(i)) {
                *slot = c;
            }
        }
        out
    }
}

fn histogram_range(
    ensemble: &BoxEnsemble,
    seed: u64,
    trials: std::ops::Range<u64>,
) -> Result<Histogram> {
    let mut hist = Histogram::new();
    for trial in trials {
        let config = sample_configuration_with(ensemble, &mut trial_rng(seed, trial))?;
        hist.record(config.occupancies()[0]);
    }
    Ok(hist)
}

/// Occupancy of box 1 pooled over `trials` independent configurations.
///
/// The result depends only on `(ensemble, trials, seed)`, not on `workers`.
pub fn occupancy_histogram(
    ensemble: &BoxEnsemble,
    trials: u64,
    seed: u64,
    workers: usize,
) -> Result<Histogram> {
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    if workers == 0 {
        return Err(Error::param("workers must be at least 1"));
    }
    ensemble.particles()?;
    let workers = (workers as u64).min(trials);
    if workers == 1 {
        return histogram_range(ensemble, seed, 0..trials);
    }
    let chunk = trials.div_ceil(workers);
    let parts: Vec<Result<Histogram>> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let range = (w * chunk).min(trials)..((w + 1) * chunk).min(trials);
                scope.spawn(move || histogram_range(ensemble, seed, range))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sampler worker panicked"))
            .collect()
    });
    let mut merged = Histogram::new();
    for part in parts {
        merged.merge(&part?);
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn ens(n: u64, p: u64) -> BoxEnsemble {
        BoxEnsemble::new(n, p).unwrap()
    }

    #[test]
    fn trivial_ensembles() {
        for seed in [0, 1, u64::MAX] {
            assert_eq!(
                sample_configuration(&ens(1, 5), seed)
                    .unwrap()
                    .occupancies(),
                &[5]
            );
            assert_eq!(
                sample_configuration(&ens(3, 0), seed)
                    .unwrap()
                    .occupancies(),
                &[0, 0, 0]
            );
        }
    }

    #[test]
    fn samples_are_valid_and_deterministic() {
        let e = ens(7, 30);
        for seed in 0..50 {
            let a = sample_configuration(&e, seed).unwrap();
            let b = sample_configuration(&e, seed).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.occupancies().len(), 7);
            assert_eq!(a.n_particles(), 30);
        }
    }

    #[test]
    fn requires_particles() {
        let e = BoxEnsemble::boxes_only(3).unwrap();
        assert!(sample_configuration(&e, 1).is_err());
    }

    #[test]
    fn two_boxes_uniform_over_configurations() {
        let e = ens(2, 3);
        let draws = 200_000u64;
        let mut counts: HashMap<Vec<u64>, u64> = HashMap::new();
        for t in 0..draws {
            let c = sample_configuration_with(&e, &mut trial_rng(99, t)).unwrap();
            *counts.entry(c.occupancies().to_vec()).or_default() += 1;
        }
        assert_eq!(counts.len(), 4);
        let sigma = (draws as f64 * 0.25 * 0.75).sqrt();
        for (config, c) in counts {
            let dev = (c as f64 - draws as f64 * 0.25).abs();
            assert!(dev < 4.0 * sigma, "{config:?}: {c}");
        }
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let e = ens(5, 20);
        let one = occupancy_histogram(&e, 10_001, 7, 1).unwrap();
        for workers in [2, 3, 8, 64] {
            assert_eq!(occupancy_histogram(&e, 10_001, 7, workers).unwrap(), one);
        }
        assert_eq!(one.total_observations(), 10_001);
        assert_eq!(one.bins().values().sum::<u64>(), 10_001);
    }

    #[test]
    fn histogram_argument_checks() {
        let e = ens(2, 3);
        assert!(occupancy_histogram(&e, 0, 1, 1).is_err());
        assert!(occupancy_histogram(&e, 10, 1, 0).is_err());
    }

    #[test]
    fn mean_converges() {
        let e = ens(4, 12);
        let h = occupancy_histogram(&e, 100_000, 3, 4).unwrap();
        // Var of one box's occupancy: P (N-1) (N+P) / (N^2 (N+1))
        let m = 3.0;
        let var: f64 = 12.0 * 3.0 * 16.0 / (16.0 * 5.0);
        let se = (var / 100_000.0).sqrt();
        assert!((h.mean() - m).abs() < 5.0 * se, "{}", h.mean());
    }

    #[test]
    fn merge_adds_bins() {
        let mut a = Histogram::new();
        a.record(1);
        a.record(2);
        let mut b = Histogram::new();
        b.record(2);
        a.merge(&b);
        assert_eq!(a.count(2), 2);
        assert_eq!(a.total_observations(), 3);
        assert_eq!(a.dense(3), vec![0, 1, 2]);
    }
}
