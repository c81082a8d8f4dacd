//! Exact analysis and seeded simulation of two entanglement-assisted
//! communication complexity tasks, together with the detector-imperfection
//! modelling needed to judge when an experiment would beat the best
//! classical strategy.
//!
//! The two-party task asks Alice and Bob to decide, with one bit of
//! communication, whether their numbers on a ring are neighbours or
//! anti-neighbours; sharing a singlet lifts the success probability from
//! the classical optimum of 3/4 (on the smallest ring) to ½(1+cos π/4) ≈
//! 0.854. The three-party task asks Alice to announce a modular sum with
//! one bit from each partner; sharing a GHZ state lifts 3/4 to certainty.
//!
//! Module map:
//! - [`quantum`]: small statevector simulator (1–3 qubits) with planar
//!   measurement axes, plus closed-form singlet correlations.
//! - [`tasks`]: the two promise problems, their instance types, exhaustive
//!   enumeration, and uniform sampling.
//! - [`classical`]: exact-rational scoring of classical strategies and the
//!   exhaustive searches establishing the classical optima.
//! - [`protocols`]: the entanglement-assisted protocols and the
//!   classical-spin hidden-variable baseline.
//! - [`bell`]: the probability-sum Bell inequality linking the two-party
//!   protocol to nonlocality (local bound 3, quantum value 2+√2).
//! - [`detectors`]: detector efficiency and background model, expected
//!   success rates, thresholds, and the feasibility region.
//! - [`harness`]: reproducible parallel Monte Carlo runner and the report
//!   types behind the `qcc` command-line interface.

pub mod bell;
pub mod classical;
pub mod detectors;
pub mod error;
pub mod harness;
pub mod protocols;
pub mod quantum;
pub mod tasks;

pub use error::{Error, Result};
