//! The Bell inequality behind the two-party protocol, in probability-sum
//! form: with two measurement settings per party, the sum
//!
//! ```text
//! p_opposite(a1,b1) + p_opposite(a2,b1) + p_opposite(a2,b2) + p_same(a1,b2)
//! ```
//!
//! is at most 3 for every local deterministic (or mixed) assignment, while
//! singlet correlations reach 2 + √2. The classical-spin hidden-variable
//! model saturates the local bound.

use rand::Rng;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, SQRT_2, TAU};

use crate::error::{Error, Result};
use crate::protocols::spin_outcomes;
use crate::quantum::singlet_correlation;

/// The local bound on the probability sum.
pub const LOCAL_BOUND: u32 = 3;

/// The quantum maximum of the probability sum, `2 + √2`.
pub fn quantum_maximum() -> f64 {
    2.0 + SQRT_2
}

/// Two measurement angles per party.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SetupPair {
    a1: f64,
    a2: f64,
    b1: f64,
    b2: f64,
}

impl SetupPair {
    pub fn new(a1: f64, a2: f64, b1: f64, b2: f64) -> Result<Self> {
        for angle in [a1, a2, b1, b2] {
            if !angle.is_finite() {
                return Err(Error::arg(format!(
                    "measurement angles must be finite, got {angle}"
                )));
            }
        }
        Ok(SetupPair { a1, a2, b1, b2 })
    }

    /// The maximally violating angles `a1=0, a2=π/2, b1=π/4, b2=3π/4`.
    pub fn canonical() -> Self {
        SetupPair {
            a1: 0.0,
            a2: FRAC_PI_2,
            b1: FRAC_PI_4,
            b2: 3.0 * FRAC_PI_4,
        }
    }

    pub fn angles(&self) -> (f64, f64, f64, f64) {
        (self.a1, self.a2, self.b1, self.b2)
    }
}

/// The exact quantum value of the probability sum for singlet measurements
/// at the given settings.
pub fn hardy_sum_quantum(setup: &SetupPair) -> f64 {
    let p_opposite = |a: f64, b: f64| singlet_correlation(a, b).1;
    let p_same = |a: f64, b: f64| singlet_correlation(a, b).0;
    p_opposite(setup.a1, setup.b1)
        + p_opposite(setup.a2, setup.b1)
        + p_opposite(setup.a2, setup.b2)
        + p_same(setup.a1, setup.b2)
}

/// A local deterministic assignment: a fixed `±1` output per setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalDeterministicStrategy {
    alice: [i8; 2],
    bob: [i8; 2],
}

impl LocalDeterministicStrategy {
    pub fn new(alice: [i8; 2], bob: [i8; 2]) -> Result<Self> {
        if alice.iter().chain(&bob).any(|v| *v != 1 && *v != -1) {
            return Err(Error::arg("local outputs must be +1 or -1"));
        }
        Ok(LocalDeterministicStrategy { alice, bob })
    }

    /// All 16 deterministic assignments.
    pub fn all() -> Vec<LocalDeterministicStrategy> {
        let mut out = Vec::with_capacity(16);
        for mask in 0..16u8 {
            let sign = |bit: u8| if (mask >> bit) & 1 == 1 { 1 } else { -1 };
            out.push(LocalDeterministicStrategy {
                alice: [sign(0), sign(1)],
                bob: [sign(2), sign(3)],
            });
        }
        out
    }
}

/// The probability sum of a deterministic assignment: each term is 0 or 1.
pub fn hardy_sum_local(strategy: &LocalDeterministicStrategy) -> u32 {
    let opposite = |a: i8, b: i8| u32::from(a != b);
    let same = |a: i8, b: i8| u32::from(a == b);
    opposite(strategy.alice[0], strategy.bob[0])
        + opposite(strategy.alice[1], strategy.bob[0])
        + opposite(strategy.alice[1], strategy.bob[1])
        + same(strategy.alice[0], strategy.bob[1])
}

/// The exhaustive maximum of the sum over all 16 deterministic assignments.
pub fn hardy_local_maximum() -> u32 {
    LocalDeterministicStrategy::all()
        .iter()
        .map(hardy_sum_local)
        .max()
        .expect("the strategy list is nonempty")
}

/// A Monte Carlo estimate with its normal-approximation standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinModelEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub trials: u64,
}

/// Estimates the probability sum under the classical-spin model: each trial
/// draws one shared hidden direction, evaluates all four terms on the
/// resulting deterministic outcomes, and averages. The standard error is the
/// sample standard deviation of the per-trial sums over `√trials` (zero for
/// a single trial).
pub fn hardy_sum_spin_model<R: Rng + ?Sized>(
    setup: &SetupPair,
    trials: u64,
    rng: &mut R,
) -> Result<SpinModelEstimate> {
    if trials == 0 {
        return Err(Error::arg("at least one trial is required"));
    }
    let mut sum = 0u64;
    let mut sum_sq = 0u64;
    for _ in 0..trials {
        let lambda = rng.gen_range(0.0..TAU);
        let term = |a: f64, b: f64, want_opposite: bool| {
            let (alice, bob) = spin_outcomes(a, b, lambda);
            u64::from((alice != bob) == want_opposite)
        };
        let t = term(setup.a1, setup.b1, true)
            + term(setup.a2, setup.b1, true)
            + term(setup.a2, setup.b2, true)
            + term(setup.a1, setup.b2, false);
        sum += t;
        sum_sq += t * t;
    }
    let n = trials as f64;
    let estimate = sum as f64 / n;
    let std_error = if trials > 1 {
        let variance = (sum_sq as f64 - sum as f64 * sum as f64 / n) / (n - 1.0);
        (variance.max(0.0) / n).sqrt()
    } else {
        0.0
    };
    Ok(SpinModelEstimate {
        estimate,
        std_error,
        trials,
    })
}
