//! Maximum-entropy occupancy of particles in boxes.
//!
//! When every configuration of `P` indistinguishable particles over `N`
//! distinguishable boxes is equally likely, the equilibrium share of a box
//! holding `n` particles follows the normalized log-share law
//!
//! ```text
//! rho(n) = ln(1 + 1/n) / ln(N + 1),   n = 1..N
//! ```
//!
//! This crate provides
//!
//! - [`distribution`]: exact multiplicity, the Stirling entropy, the
//!   temperature/potential relations, the share law and its power-`alpha`
//!   generalization;
//! - [`oracle`]: exhaustive enumeration and the exact single-box marginal;
//! - [`sampler`]: seeded, worker-count independent Monte Carlo sampling;
//! - [`benford`]: leading-digit extraction and conformance reports;
//! - [`inequality`]: quantile shares, Lorenz curve and Gini coefficient;
//! - [`fitting`]: chi-square / G / MAD statistics and the `alpha` MLE;
//! - [`io`]: input parsing, the built-in poll fixture and report emission.

pub mod benford;
pub mod distribution;
mod error;
pub mod fitting;
pub mod inequality;
pub mod io;
pub mod numeric;
pub mod oracle;
pub mod sampler;

pub use error::{Error, Result};

pub use distribution::{BoxEnsemble, ShareDistribution, ShareKind, Temperature};
pub use fitting::{AlphaFit, GoodnessOfFit};
