//! The entanglement-assisted protocols for both tasks, their closed-form
//! success rates, and the classical-spin hidden-variable alternative.
//!
//! Two-party: the parties share a singlet, measure at angles proportional to
//! their inputs, and Bob guesses "neighbours" exactly when the two outcomes
//! are opposite. Three-party: the parties share the GHZ state, rotate phases
//! by their inputs, apply Hadamards, and Alice answers the parity of the
//! three measured bits.

use rand::Rng;
use std::f64::consts::{PI, TAU};

use crate::error::Result;
use crate::quantum::{MeasurementAxis, Outcome, StateVector};
use crate::tasks::{check_ring_param, Relation, ThreePartyInstance, TwoPartyInstance};

/// Closed-form success probability `(1 + cos(π/n)) / 2` of the two-party
/// entanglement protocol on a ring of `2n` points.
pub fn two_party_quantum_success(n: u32) -> Result<f64> {
    check_ring_param(n)?;
    Ok(0.5 * (1.0 + (PI / f64::from(n)).cos()))
}

/// The measurement angle a party derives from ring input `v`: `πv/n`.
pub(crate) fn ring_angle(v: u32, n: u32) -> f64 {
    PI * f64::from(v) / f64::from(n)
}

/// The guessing rule both quantum and spin protocols share: opposite
/// outcomes mean "neighbours".
pub(crate) fn guess_from_signs(alice: i8, bob: i8) -> Relation {
    if alice != bob {
        Relation::Neighbours
    } else {
        Relation::AntiNeighbours
    }
}

/// Samples the raw singlet measurement outcomes `(Alice, Bob)` for an
/// instance, before any guessing or detector filtering.
pub(crate) fn sample_two_party_outcomes<R: Rng + ?Sized>(
    instance: &TwoPartyInstance,
    rng: &mut R,
) -> (Outcome, Outcome) {
    let axes = [
        MeasurementAxis::new(ring_angle(instance.x(), instance.n())).expect("finite angle"),
        MeasurementAxis::new(ring_angle(instance.y(), instance.n())).expect("finite angle"),
    ];
    let outcomes = StateVector::singlet()
        .sample_outcomes(&axes, rng)
        .expect("axis count matches qubit count");
    (outcomes[0], outcomes[1])
}

/// Plays one round of the two-party quantum protocol. Returns Bob's guess
/// and whether it matches the true relation.
pub fn run_two_party_quantum<R: Rng + ?Sized>(
    instance: &TwoPartyInstance,
    rng: &mut R,
) -> (Relation, bool) {
    let (a, b) = sample_two_party_outcomes(instance, rng);
    let guess = guess_from_signs(a.value(), b.value());
    (guess, guess == instance.relation())
}

/// Exact success probability of the two-party protocol on one instance,
/// evaluated from the statevector rather than the closed form: the
/// probability of opposite outcomes for neighbours, of equal outcomes for
/// anti-neighbours.
pub fn two_party_quantum_exact_success(instance: &TwoPartyInstance) -> f64 {
    let axes = [
        MeasurementAxis::new(ring_angle(instance.x(), instance.n())).expect("finite angle"),
        MeasurementAxis::new(ring_angle(instance.y(), instance.n())).expect("finite angle"),
    ];
    let state = StateVector::singlet();
    let p = |o: [Outcome; 2]| {
        state
            .joint_probability(&axes, &o)
            .expect("two axes, two outcomes")
    };
    match instance.relation() {
        Relation::Neighbours => {
            p([Outcome::Plus, Outcome::Minus]) + p([Outcome::Minus, Outcome::Plus])
        }
        Relation::AntiNeighbours => {
            p([Outcome::Plus, Outcome::Plus]) + p([Outcome::Minus, Outcome::Minus])
        }
    }
}

/// The shared state after all three parties' local operations: GHZ, a phase
/// of `π·input/2` on each party's qubit, then a Hadamard on each qubit.
/// Measuring in the computational basis then makes the bit parity equal the
/// target function with certainty.
pub fn three_party_protocol_state(instance: &ThreePartyInstance) -> StateVector {
    let mut state = StateVector::ghz();
    for (qubit, input) in [instance.x(), instance.y(), instance.z()]
        .into_iter()
        .enumerate()
    {
        state = state
            .phase(qubit, PI * f64::from(input) / 2.0)
            .expect("qubit index in range");
    }
    for qubit in 0..3 {
        state = state.hadamard(qubit).expect("qubit index in range");
    }
    state
}

/// Samples the three parties' protocol measurement outcomes `(Alice, Bob,
/// Claire)` for an instance.
pub(crate) fn sample_three_party_outcomes<R: Rng + ?Sized>(
    instance: &ThreePartyInstance,
    rng: &mut R,
) -> (Outcome, Outcome, Outcome) {
    let axes = [MeasurementAxis::new(0.0).expect("finite angle"); 3];
    let outcomes = three_party_protocol_state(instance)
        .sample_outcomes(&axes, rng)
        .expect("axis count matches qubit count");
    (outcomes[0], outcomes[1], outcomes[2])
}

/// Plays one round of the three-party quantum protocol: Bob and Claire send
/// their measured bits and Alice answers the parity of all three. Returns
/// Alice's answer and whether it matches the target.
pub fn run_three_party_quantum<R: Rng + ?Sized>(
    instance: &ThreePartyInstance,
    rng: &mut R,
) -> (u8, bool) {
    let (a, b, c) = sample_three_party_outcomes(instance, rng);
    let guess = a.bit() ^ b.bit() ^ c.bit();
    (guess, guess == instance.f())
}

/// Exact success probability of the three-party protocol on one instance:
/// the total probability of outcome triples whose parity equals the target.
pub fn three_party_quantum_exact_success(instance: &ThreePartyInstance) -> f64 {
    let axes = [MeasurementAxis::new(0.0).expect("finite angle"); 3];
    let dist = three_party_protocol_state(instance)
        .outcome_distribution(&axes)
        .expect("axis count matches qubit count");
    dist.iter()
        .enumerate()
        .filter(|(tuple, _)| (tuple.count_ones() % 2) as u8 == instance.f())
        .map(|(_, p)| p)
        .sum()
}

/// The deterministic outcome pair of the classical-spin model for hidden
/// direction `lambda`: Alice reports the sign of `cos(θ−λ)`, Bob the opposite
/// sign of `cos(φ−λ)`. Zero cosines count as positive (a measure-zero
/// convention).
pub(crate) fn spin_outcomes(theta: f64, phi: f64, lambda: f64) -> (i8, i8) {
    let sgn = |v: f64| if v >= 0.0 { 1 } else { -1 };
    (sgn((theta - lambda).cos()), -sgn((phi - lambda).cos()))
}

/// Plays one round of the two-party task with the classical-spin model in
/// place of the singlet: a shared hidden direction is drawn uniformly, both
/// parties compute their deterministic outcomes, and Bob applies the same
/// opposite-outcomes rule as the quantum protocol.
pub fn run_classical_spin_two_party<R: Rng + ?Sized>(
    instance: &TwoPartyInstance,
    rng: &mut R,
) -> (Relation, bool) {
    let lambda = rng.gen_range(0.0..TAU);
    let theta = ring_angle(instance.x(), instance.n());
    let phi = ring_angle(instance.y(), instance.n());
    let (a, b) = spin_outcomes(theta, phi, lambda);
    let guess = guess_from_signs(a, b);
    (guess, guess == instance.relation())
}
