//! Detector imperfections: efficiency `η` (the chance an event produces a
//! click) and visibility `μ` (the fraction of clicks carrying the true
//! outcome; the rest are uniformly random background). Includes the simulated
//! protocols with classical fallback, the analytic expected-success formulas,
//! the threshold curves, and feasibility-region grids.
//!
//! Parties never signal a detector failure: each sends its agreed fallback
//! bit instead, so exactly one bit flows per channel in every branch.

use rand::Rng;
use serde::Serialize;
use std::f64::consts::SQRT_2;
use std::sync::OnceLock;

use crate::classical::{best_response_rule, Colouring, DecisionRule, ThreePartyEncoding};
use crate::error::{Error, Result};
use crate::protocols::{
    guess_from_signs, sample_three_party_outcomes, sample_two_party_outcomes,
    two_party_quantum_success,
};
use crate::quantum::Outcome;
use crate::tasks::{check_ring_param, ThreePartyInstance, TwoPartyInstance};

/// Tolerance treating a computed threshold within rounding error of 1 as
/// feasible, so the curve's meeting point with `μ = 1` is not lost to the
/// last bit.
const THRESHOLD_ROUNDING: f64 = 1e-12;

/// Detector parameters shared by every party's detector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorModel {
    eta: f64,
    mu: f64,
}

impl DetectorModel {
    pub fn new(eta: f64, mu: f64) -> Result<Self> {
        check_probability(eta, "eta")?;
        check_probability(mu, "mu")?;
        Ok(DetectorModel { eta, mu })
    }

    pub fn perfect() -> Self {
        DetectorModel { eta: 1.0, mu: 1.0 }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }
}

fn check_probability(value: f64, name: &str) -> Result<()> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::arg(format!(
            "{name} must be a probability in [0, 1], got {value}"
        )));
    }
    Ok(())
}

/// What one detector reports for one measurement event. The `faithful` flag
/// is bookkeeping for tests; protocol logic must decide from `outcome` alone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectionResult {
    NoClick,
    Click { outcome: Outcome, faithful: bool },
}

impl DetectionResult {
    /// The reported outcome, if the detector clicked.
    pub fn outcome(&self) -> Option<Outcome> {
        match self {
            DetectionResult::NoClick => None,
            DetectionResult::Click { outcome, .. } => Some(*outcome),
        }
    }
}

/// Passes a true measurement outcome through a detector: no click with
/// probability `1−η`; otherwise the true outcome with probability `μ` or a
/// uniformly random background outcome with probability `1−μ`.
pub fn detect<R: Rng + ?Sized>(
    true_outcome: Outcome,
    model: DetectorModel,
    rng: &mut R,
) -> DetectionResult {
    if rng.gen::<f64>() >= model.eta {
        return DetectionResult::NoClick;
    }
    if rng.gen::<f64>() < model.mu {
        DetectionResult::Click {
            outcome: true_outcome,
            faithful: true,
        }
    } else {
        let outcome = if rng.gen::<bool>() {
            Outcome::Plus
        } else {
            Outcome::Minus
        };
        DetectionResult::Click {
            outcome,
            faithful: false,
        }
    }
}

/// The agreed classical fallback for the two-party protocol: a colouring for
/// Alice's no-click message and Bob's matching decision rule.
#[derive(Debug, Clone)]
pub struct TwoPartyFallback {
    colouring: Colouring,
    rule: DecisionRule,
}

impl TwoPartyFallback {
    /// The optimal fallback at ring parameter `n`: the half-circle colouring
    /// with Bob's best response.
    pub fn optimal(n: u32) -> Result<Self> {
        let colouring = Colouring::half_circle(n)?;
        let (rule, _) = best_response_rule(&colouring);
        Ok(TwoPartyFallback { colouring, rule })
    }

    pub fn colouring(&self) -> &Colouring {
        &self.colouring
    }

    pub fn rule(&self) -> &DecisionRule {
        &self.rule
    }
}

fn fallback_for(n: u32) -> TwoPartyFallback {
    static FOUR: OnceLock<TwoPartyFallback> = OnceLock::new();
    if n == 4 {
        FOUR.get_or_init(|| TwoPartyFallback::optimal(4).expect("4 is a valid ring parameter"))
            .clone()
    } else {
        TwoPartyFallback::optimal(n).expect("instances carry valid ring parameters")
    }
}

/// Plays one two-party round through imperfect detectors with the optimal
/// classical fallback for the instance's ring size. Alice sends her detected
/// outcome, or her colour bit if her detector stays silent; Bob applies the
/// quantum opposite-outcomes rule if his detector clicked and the classical
/// decision rule otherwise.
pub fn run_two_party_with_detectors<R: Rng + ?Sized>(
    instance: &TwoPartyInstance,
    model: DetectorModel,
    rng: &mut R,
) -> bool {
    run_two_party_with_detectors_using(instance, model, &fallback_for(instance.n()), rng)
        .expect("fallback built for the instance's ring size")
}

/// As [`run_two_party_with_detectors`], with an explicit fallback strategy.
pub fn run_two_party_with_detectors_using<R: Rng + ?Sized>(
    instance: &TwoPartyInstance,
    model: DetectorModel,
    fallback: &TwoPartyFallback,
    rng: &mut R,
) -> Result<bool> {
    if fallback.colouring.n() != instance.n() {
        return Err(Error::arg(format!(
            "fallback is for n={} but the instance has n={}",
            fallback.colouring.n(),
            instance.n()
        )));
    }
    let (a_true, b_true) = sample_two_party_outcomes(instance, rng);
    let alice = detect(a_true, model, rng);
    let bob = detect(b_true, model, rng);
    let message = match alice.outcome() {
        Some(outcome) => outcome.value(),
        None => fallback.colouring.colour(instance.x()),
    };
    let guess = match bob.outcome() {
        Some(outcome) => guess_from_signs(message, outcome.value()),
        None => fallback.rule.decide(instance.y(), message),
    };
    Ok(guess == instance.relation())
}

/// The agreed classical fallback for the three-party protocol: Bob and
/// Claire each send which half of `{0..3}` their input lies in and Alice
/// answers by majority — one of the encodings attaining the classical
/// optimum 3/4.
pub fn canonical_three_party_encoding() -> &'static ThreePartyEncoding {
    static ENCODING: OnceLock<ThreePartyEncoding> = OnceLock::new();
    ENCODING.get_or_init(|| {
        ThreePartyEncoding::from_messages([0, 0, 1, 1], [0, 0, 1, 1])
            .expect("message tables contain only bits")
    })
}

/// Plays one three-party round through imperfect detectors. Bob and Claire
/// each send their detected bit, or their fallback message bit on no click;
/// Alice answers the three-bit parity if her own detector clicked, otherwise
/// she applies the fallback decision table to the two received bits.
pub fn run_three_party_with_detectors<R: Rng + ?Sized>(
    instance: &ThreePartyInstance,
    model: DetectorModel,
    rng: &mut R,
) -> bool {
    let enc = canonical_three_party_encoding();
    let (a_true, b_true, c_true) = sample_three_party_outcomes(instance, rng);
    let alice = detect(a_true, model, rng);
    let bob = detect(b_true, model, rng);
    let claire = detect(c_true, model, rng);
    let m_bob = match bob.outcome() {
        Some(outcome) => outcome.bit(),
        None => enc.bob_message(instance.y()),
    };
    let m_claire = match claire.outcome() {
        Some(outcome) => outcome.bit(),
        None => enc.claire_message(instance.z()),
    };
    let guess = match alice.outcome() {
        Some(outcome) => outcome.bit() ^ m_bob ^ m_claire,
        None => enc.decide(instance.x(), m_bob, m_claire),
    };
    guess == instance.f()
}

/// Analytic expected success of the two-party protocol with detectors: the
/// all-faithful-click branch wins at the quantum rate, the double-no-click
/// branch at the classical rate `(n−1)/n`, and every mixed branch at 1/2.
pub fn expected_success_two_party(eta: f64, mu: f64, n: u32) -> Result<f64> {
    check_probability(eta, "eta")?;
    check_probability(mu, "mu")?;
    let p_q = two_party_quantum_success(n)?;
    let p_c = f64::from(n - 1) / f64::from(n);
    let quantum = (eta * mu).powi(2);
    let classical = (1.0 - eta).powi(2);
    Ok(quantum * p_q + classical * p_c + (1.0 - quantum - classical) * 0.5)
}

/// Analytic expected success of the three-party protocol with detectors:
/// certain success on all-faithful clicks, 3/4 on triple no-click, 1/2
/// otherwise.
pub fn expected_success_three_party(eta: f64, mu: f64) -> Result<f64> {
    check_probability(eta, "eta")?;
    check_probability(mu, "mu")?;
    let quantum = (eta * mu).powi(3);
    let classical = (1.0 - eta).powi(3);
    Ok(quantum + classical * 0.75 + (1.0 - quantum - classical) * 0.5)
}

/// The detector efficiency below which the two-party protocol cannot beat
/// the classical rate even with perfect visibility:
/// `(2 p_c − 1) / (p_q + p_c − 1)`.
pub fn eta_min_two_party(n: u32) -> Result<f64> {
    let p_q = two_party_quantum_success(n)?;
    let p_c = f64::from(n - 1) / f64::from(n);
    Ok((2.0 * p_c - 1.0) / (p_q + p_c - 1.0))
}

/// The efficiency below which the three-party protocol cannot beat 3/4 even
/// with perfect visibility: `(√21 − 3) / 2`.
pub fn eta_min_three_party() -> f64 {
    (21.0f64.sqrt() - 3.0) / 2.0
}

/// The visibility above which the two-party protocol beats the classical
/// rate at efficiency `eta` (for the standard ring `n = 4`):
/// `√(2√2·η(2−η)) / (2η)`. `None` means no visibility suffices at this
/// efficiency.
pub fn mu_threshold_two_party(eta: f64) -> Result<Option<f64>> {
    check_probability(eta, "eta")?;
    if eta == 0.0 {
        return Err(Error::arg(
            "eta must be positive: without clicks there is no quantum branch",
        ));
    }
    let value = (2.0 * SQRT_2 * eta * (2.0 - eta)).sqrt() / (2.0 * eta);
    Ok((value <= 1.0 + THRESHOLD_ROUNDING).then_some(value.min(1.0)))
}

/// The visibility above which the three-party protocol beats 3/4 at
/// efficiency `eta`: `∛(4η³ − 12η² + 12η) / (2η)`. `None` means infeasible.
pub fn mu_threshold_three_party(eta: f64) -> Result<Option<f64>> {
    check_probability(eta, "eta")?;
    if eta == 0.0 {
        return Err(Error::arg(
            "eta must be positive: without clicks there is no quantum branch",
        ));
    }
    let value = (4.0 * eta.powi(3) - 12.0 * eta.powi(2) + 12.0 * eta).cbrt() / (2.0 * eta);
    Ok((value <= 1.0 + THRESHOLD_ROUNDING).then_some(value.min(1.0)))
}

/// One sample of the feasibility region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityPoint {
    pub eta: f64,
    pub mu: f64,
    pub expected_success: f64,
    pub beats_classical: bool,
}

/// Evaluates the analytic expected success on a uniform `resolution ×
/// resolution` grid over `[0,1]²`, flagging points that strictly beat the
/// classical rate. Points are ordered lexicographically by `(η, μ)`. The
/// ring parameter applies to the two-party task only.
pub fn feasibility_grid(
    parties: u8,
    resolution: u32,
    n: Option<u32>,
) -> Result<Vec<FeasibilityPoint>> {
    if !(2..=3).contains(&parties) {
        return Err(Error::arg(format!("parties must be 2 or 3, got {parties}")));
    }
    if resolution < 2 {
        return Err(Error::arg(format!(
            "grid resolution must be at least 2, got {resolution}"
        )));
    }
    if parties == 3 && n.is_some() {
        return Err(Error::arg(
            "the ring parameter applies only to the two-party task",
        ));
    }
    let n = n.unwrap_or(4);
    check_ring_param(n)?;
    let p_c = match parties {
        2 => f64::from(n - 1) / f64::from(n),
        _ => 0.75,
    };
    let coord = |i: u32| f64::from(i) / f64::from(resolution - 1);
    let mut points = Vec::with_capacity((resolution as usize).pow(2));
    for i in 0..resolution {
        let eta = coord(i);
        for j in 0..resolution {
            let mu = coord(j);
            let expected_success = match parties {
                2 => expected_success_two_party(eta, mu, n)?,
                _ => expected_success_three_party(eta, mu)?,
            };
            points.push(FeasibilityPoint {
                eta,
                mu,
                expected_success,
                beats_classical: expected_success > p_c,
            });
        }
    }
    Ok(points)
}
