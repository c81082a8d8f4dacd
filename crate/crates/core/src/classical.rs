//! Deterministic classical strategies for both tasks, exact rational scoring,
//! and exhaustive optimality searches.
//!
//! Two-party strategies are a colouring of the ring (Alice's one-bit message)
//! plus a decision rule for Bob; three-party strategies are one-bit message
//! encodings for Bob and Claire plus a decision table for Alice. Scores are
//! exact fractions of the uniformly weighted instance set, so optimality
//! claims are equalities rather than floating-point comparisons.

use num_rational::Ratio;
use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::tasks::{
    check_ring_param, enumerate_three_party, enumerate_two_party, Relation, ThreePartyInstance,
    TwoPartyInstance,
};

/// An exact success probability: a reduced fraction in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactProbability(Ratio<u64>);

impl ExactProbability {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::arg("probability denominator must be nonzero"));
        }
        if numerator > denominator {
            return Err(Error::arg(format!(
                "probability {numerator}/{denominator} exceeds 1"
            )));
        }
        Ok(ExactProbability(Ratio::new(numerator, denominator)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn as_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }
}

impl fmt::Display for ExactProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Index into the two-slot message dimension: `+1` first, `-1` second.
fn bit_index(bit: i8) -> usize {
    debug_assert!(
        bit == 1 || bit == -1,
        "message bit must be +1 or -1, got {bit}"
    );
    usize::from(bit < 0)
}

/// A two-colouring `g(x)` of the `2n` ring points; Alice's message is the
/// colour of her input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    n: u32,
    colours: Vec<i8>,
}

impl Colouring {
    /// Builds a colouring from explicit `+1`/`-1` values, one per ring point.
    pub fn from_signs(n: u32, colours: Vec<i8>) -> Result<Self> {
        check_ring_param(n)?;
        if colours.len() != 2 * n as usize {
            return Err(Error::arg(format!(
                "expected {} colours for n={n}, got {}",
                2 * n,
                colours.len()
            )));
        }
        if let Some(bad) = colours.iter().find(|c| **c != 1 && **c != -1) {
            return Err(Error::arg(format!("colours must be +1 or -1, got {bad}")));
        }
        Ok(Colouring { n, colours })
    }

    /// Decodes a colouring from the low `2n` bits of `mask`: bit `x` set
    /// means `g(x) = +1`. This is the index order used by the exhaustive
    /// search.
    pub fn from_mask(n: u32, mask: u64) -> Result<Self> {
        check_ring_param(n)?;
        let bits = 2 * n;
        if bits < 64 && mask >> bits != 0 {
            return Err(Error::arg(format!(
                "mask {mask:#x} has bits beyond the {bits} ring points"
            )));
        }
        let colours = (0..bits)
            .map(|x| if (mask >> x) & 1 == 1 { 1 } else { -1 })
            .collect();
        Ok(Colouring { n, colours })
    }

    /// The colouring with `x < n` coloured `+1` and the opposite half `-1`.
    pub fn half_circle(n: u32) -> Result<Self> {
        check_ring_param(n)?;
        let colours = (0..2 * n).map(|x| if x < n { 1 } else { -1 }).collect();
        Ok(Colouring { n, colours })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The colour of point `x`; panics if `x` is outside the ring.
    pub fn colour(&self, x: u32) -> i8 {
        self.colours[x as usize]
    }
}

impl fmt::Display for Colouring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.colours {
            f.write_str(if *c > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// Bob's deterministic response: a guess for every (input, received bit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionRule {
    n: u32,
    table: Vec<Relation>,
}

impl DecisionRule {
    /// Builds a rule from an explicit table indexed by `y * 2 + b`, where `b`
    /// is 0 for a `+1` message and 1 for `-1`.
    pub fn from_table(n: u32, table: Vec<Relation>) -> Result<Self> {
        check_ring_param(n)?;
        if table.len() != 4 * n as usize {
            return Err(Error::arg(format!(
                "expected {} table entries for n={n}, got {}",
                4 * n,
                table.len()
            )));
        }
        Ok(DecisionRule { n, table })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Bob's guess on input `y` after receiving message `bit` (`+1`/`-1`);
    /// panics if `y` is outside the ring.
    pub fn decide(&self, y: u32, bit: i8) -> Relation {
        self.table[y as usize * 2 + bit_index(bit)]
    }
}

/// Shared scoring core: per-(y, bit) class counts for a colouring over a
/// precomputed instance list, folded into a rule and its exact success count.
fn best_response_counts(
    colouring: &Colouring,
    instances: &[TwoPartyInstance],
) -> (Vec<Relation>, u64) {
    let ring = 2 * colouring.n as usize;
    let mut counts = vec![[[0u64; 2]; 2]; ring];
    for inst in instances {
        let b = bit_index(colouring.colour(inst.x()));
        let class = usize::from(inst.relation() == Relation::AntiNeighbours);
        counts[inst.y() as usize][b][class] += 1;
    }
    let mut table = Vec::with_capacity(2 * ring);
    let mut successes = 0;
    for row in &counts {
        for [neighbours, anti] in row {
            // Majority guess; an exact tie goes to Neighbours.
            if neighbours >= anti {
                table.push(Relation::Neighbours);
                successes += neighbours;
            } else {
                table.push(Relation::AntiNeighbours);
                successes += anti;
            }
        }
    }
    (table, successes)
}

/// Bob's optimal rule against a fixed colouring: for each (y, bit) he guesses
/// the majority relation among the consistent instances. Returns the rule and
/// its exact success probability; no rule against this colouring scores
/// higher.
pub fn best_response_rule(colouring: &Colouring) -> (DecisionRule, ExactProbability) {
    let instances = enumerate_two_party(colouring.n).expect("colouring constructors validate n");
    let (table, successes) = best_response_counts(colouring, &instances);
    let score = ExactProbability(Ratio::new(successes, instances.len() as u64));
    (
        DecisionRule {
            n: colouring.n,
            table,
        },
        score,
    )
}

/// Exact success probability of an arbitrary (colouring, rule) pair over the
/// uniform instance set.
pub fn evaluate_two_party_strategy(
    colouring: &Colouring,
    rule: &DecisionRule,
) -> Result<ExactProbability> {
    if colouring.n != rule.n {
        return Err(Error::arg(format!(
            "colouring is for n={} but rule is for n={}",
            colouring.n, rule.n
        )));
    }
    let instances = enumerate_two_party(colouring.n)?;
    let successes = instances
        .iter()
        .filter(|inst| rule.decide(inst.y(), colouring.colour(inst.x())) == inst.relation())
        .count() as u64;
    Ok(ExactProbability(Ratio::new(
        successes,
        instances.len() as u64,
    )))
}

/// Plays one round of the classical protocol: Alice sends `g(x)`, Bob applies
/// the rule. Returns Bob's guess and whether it matches the true relation.
pub fn run_classical_two_party(
    instance: &TwoPartyInstance,
    colouring: &Colouring,
    rule: &DecisionRule,
) -> Result<(Relation, bool)> {
    if instance.n() != colouring.n || instance.n() != rule.n {
        return Err(Error::arg(format!(
            "instance n={}, colouring n={}, rule n={} must agree",
            instance.n(),
            colouring.n,
            rule.n
        )));
    }
    let guess = rule.decide(instance.y(), colouring.colour(instance.x()));
    Ok((guess, guess == instance.relation()))
}

/// Maximum ring parameter accepted by the exhaustive two-party search
/// (2^(2n) colourings; 16 bits is instantaneous, beyond that growth is 4×
/// per step).
pub const MAX_SEARCH_N: u32 = 8;

/// Scores every colouring under its best response and returns the maximum
/// with the first witness in mask order (lowest index wins ties).
pub fn exhaustive_search_two_party(n: u32) -> Result<(ExactProbability, Colouring)> {
    check_ring_param(n)?;
    if n > MAX_SEARCH_N {
        return Err(Error::Capacity(format!(
            "exhaustive search supports n up to {MAX_SEARCH_N}, got {n}"
        )));
    }
    let instances = enumerate_two_party(n)?;
    let total = instances.len() as u64;
    let mut best_successes = 0;
    let mut best_mask = 0;
    for mask in 0..1u64 << (2 * n) {
        let colouring = Colouring::from_mask(n, mask)?;
        let (_, successes) = best_response_counts(&colouring, &instances);
        if successes > best_successes {
            best_successes = successes;
            best_mask = mask;
        }
    }
    Ok((
        ExactProbability(Ratio::new(best_successes, total)),
        Colouring::from_mask(n, best_mask)?,
    ))
}

/// A deterministic strategy for the three-party task: one-bit message
/// encodings for Bob and Claire and Alice's decision table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreePartyEncoding {
    bob_msg: [u8; 4],
    claire_msg: [u8; 4],
    alice_decision: [[[u8; 2]; 2]; 4],
}

impl ThreePartyEncoding {
    pub fn new(
        bob_msg: [u8; 4],
        claire_msg: [u8; 4],
        alice_decision: [[[u8; 2]; 2]; 4],
    ) -> Result<Self> {
        let msg_bits_ok = bob_msg.iter().chain(&claire_msg).all(|b| *b <= 1);
        let decision_bits_ok = alice_decision.iter().flatten().flatten().all(|b| *b <= 1);
        if !msg_bits_ok || !decision_bits_ok {
            return Err(Error::arg("encoding tables must contain only bits 0 and 1"));
        }
        Ok(ThreePartyEncoding {
            bob_msg,
            claire_msg,
            alice_decision,
        })
    }

    /// Completes a message pair with Alice's optimal decision: for each
    /// (x, mB, mC) she answers the majority value of `f` over the consistent
    /// instances, ties going to 0. For fixed messages no other decision table
    /// scores higher.
    pub fn from_messages(bob_msg: [u8; 4], claire_msg: [u8; 4]) -> Result<Self> {
        if !bob_msg.iter().chain(&claire_msg).all(|b| *b <= 1) {
            return Err(Error::arg("message tables must contain only bits 0 and 1"));
        }
        let mut counts = [[[[0u32; 2]; 2]; 2]; 4];
        for inst in enumerate_three_party() {
            let mb = bob_msg[inst.y() as usize] as usize;
            let mc = claire_msg[inst.z() as usize] as usize;
            counts[inst.x() as usize][mb][mc][inst.f() as usize] += 1;
        }
        let mut alice_decision = [[[0u8; 2]; 2]; 4];
        for x in 0..4 {
            for mb in 0..2 {
                for mc in 0..2 {
                    let [zeros, ones] = counts[x][mb][mc];
                    alice_decision[x][mb][mc] = u8::from(ones > zeros);
                }
            }
        }
        Ok(ThreePartyEncoding {
            bob_msg,
            claire_msg,
            alice_decision,
        })
    }

    pub fn bob_msg(&self) -> [u8; 4] {
        self.bob_msg
    }

    pub fn claire_msg(&self) -> [u8; 4] {
        self.claire_msg
    }

    pub fn alice_decision(&self) -> [[[u8; 2]; 2]; 4] {
        self.alice_decision
    }

    /// Bob's message bit for input `y`; panics outside `0..4`.
    pub fn bob_message(&self, y: u32) -> u8 {
        self.bob_msg[y as usize]
    }

    /// Claire's message bit for input `z`; panics outside `0..4`.
    pub fn claire_message(&self, z: u32) -> u8 {
        self.claire_msg[z as usize]
    }

    /// Alice's answer on input `x` given the two received bits; panics
    /// outside the domain.
    pub fn decide(&self, x: u32, m_bob: u8, m_claire: u8) -> u8 {
        self.alice_decision[x as usize][m_bob as usize][m_claire as usize]
    }
}

impl fmt::Display for ThreePartyEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "bob_msg:    {:?}", self.bob_msg)?;
        writeln!(f, "claire_msg: {:?}", self.claire_msg)?;
        writeln!(f, "alice_decision (x, bob bit, claire bit):")?;
        for (x, rows) in self.alice_decision.iter().enumerate() {
            write!(f, "  x={x}:")?;
            for (mb, row) in rows.iter().enumerate() {
                for (mc, bit) in row.iter().enumerate() {
                    write!(f, " ({mb},{mc})->{bit}")?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Exact success fraction of an encoding over the 32 uniform instances.
pub fn evaluate_three_party_encoding(enc: &ThreePartyEncoding) -> ExactProbability {
    let instances = enumerate_three_party();
    let successes = instances
        .iter()
        .filter(|inst| run_classical_three_party(inst, enc).1)
        .count() as u64;
    ExactProbability(Ratio::new(successes, instances.len() as u64))
}

/// Plays one round of the three-party classical protocol. Returns Alice's
/// answer bit and whether it matches the target.
pub fn run_classical_three_party(
    instance: &ThreePartyInstance,
    enc: &ThreePartyEncoding,
) -> (u8, bool) {
    let guess = enc.decide(
        instance.x(),
        enc.bob_message(instance.y()),
        enc.claire_message(instance.z()),
    );
    (guess, guess == instance.f())
}

/// Scores all 256 message pairs (with Alice's decision derived by majority,
/// which is optimal for fixed messages) and returns the maximum with the
/// first witness in (bob mask, claire mask) order.
pub fn exhaustive_search_three_party() -> (ExactProbability, ThreePartyEncoding) {
    let mut best: Option<(ExactProbability, ThreePartyEncoding)> = None;
    for bob_mask in 0..16u32 {
        for claire_mask in 0..16u32 {
            let bob_msg = std::array::from_fn(|v| ((bob_mask >> v) & 1) as u8);
            let claire_msg = std::array::from_fn(|v| ((claire_mask >> v) & 1) as u8);
            let enc = ThreePartyEncoding::from_messages(bob_msg, claire_msg)
                .expect("mask bits are valid");
            let score = evaluate_three_party_encoding(&enc);
            if best.as_ref().is_none_or(|(b, _)| score > *b) {
                best = Some((score, enc));
            }
        }
    }
    best.expect("search space is nonempty")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn frac(n: u64, d: u64) -> ExactProbability {
        ExactProbability::new(n, d).unwrap()
    }

    fn random_colouring<R: Rng>(n: u32, rng: &mut R) -> Colouring {
        let colours = (0..2 * n)
            .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
            .collect();
        Colouring::from_signs(n, colours).unwrap()
    }

    fn random_rule<R: Rng>(n: u32, rng: &mut R) -> DecisionRule {
        let table = (0..4 * n)
            .map(|_| {
                if rng.gen::<bool>() {
                    Relation::Neighbours
                } else {
                    Relation::AntiNeighbours
                }
            })
            .collect();
        DecisionRule::from_table(n, table).unwrap()
    }

    #[test]
    fn exact_probability_reduces_and_orders() {
        assert_eq!(frac(24, 32), frac(3, 4));
        assert_eq!(frac(24, 32).numer(), 3);
        assert_eq!(frac(24, 32).denom(), 4);
        assert_eq!(frac(3, 4).to_string(), "3/4");
        assert_eq!(frac(32, 32).to_string(), "1");
        assert!(frac(1, 2) < frac(3, 4));
        assert!((frac(3, 4).as_f64() - 0.75).abs() < 1e-15);
        assert!(ExactProbability::new(5, 4).is_err());
        assert!(ExactProbability::new(1, 0).is_err());
    }

    #[test]
    fn half_circle_layout() {
        let c = Colouring::half_circle(4).unwrap();
        assert_eq!(c.to_string(), "++++----");
        assert_eq!(c.colour(0), 1);
        assert_eq!(c.colour(3), 1);
        assert_eq!(c.colour(4), -1);
        assert!(Colouring::half_circle(5).is_err());
        assert!(Colouring::half_circle(2).is_err());
    }

    #[test]
    fn colouring_constructors_validate() {
        assert!(Colouring::from_signs(4, vec![1; 8]).is_ok());
        assert!(Colouring::from_signs(4, vec![1; 7]).is_err());
        assert!(Colouring::from_signs(4, vec![0; 8]).is_err());
        assert!(Colouring::from_mask(4, 1 << 8).is_err());
        let c = Colouring::from_mask(4, 0b0000_0011).unwrap();
        assert_eq!(c.to_string(), "++------");
    }

    #[test]
    fn half_circle_best_response_scores() {
        for (n, expected) in [(4, frac(3, 4)), (6, frac(5, 6)), (8, frac(7, 8))] {
            let (rule, score) = best_response_rule(&Colouring::half_circle(n).unwrap());
            assert_eq!(score, expected, "n={n}");
            assert_eq!(rule.n(), n);
            // The returned score is consistent with independent evaluation.
            let direct =
                evaluate_two_party_strategy(&Colouring::half_circle(n).unwrap(), &rule).unwrap();
            assert_eq!(direct, expected);
        }
    }

    #[test]
    fn constant_colouring_is_uninformative() {
        for n in [4, 6, 8] {
            let c = Colouring::from_signs(n, vec![1; 2 * n as usize]).unwrap();
            let (_, score) = best_response_rule(&c);
            assert_eq!(score, frac(1, 2), "n={n}");
        }
    }

    #[test]
    fn best_response_beats_random_rules() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let colouring = random_colouring(4, &mut rng);
            let (_, best) = best_response_rule(&colouring);
            for _ in 0..50 {
                let rule = random_rule(4, &mut rng);
                let score = evaluate_two_party_strategy(&colouring, &rule).unwrap();
                assert!(
                    score <= best,
                    "{rule:?} beat the best response on {colouring}"
                );
            }
        }
    }

    #[test]
    fn score_is_invariant_under_flip_and_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let n = 4;
            let ring = 2 * n as usize;
            let colouring = random_colouring(n, &mut rng);
            let (_, base) = best_response_rule(&colouring);

            let flipped: Vec<i8> = (0..ring).map(|x| -colouring.colour(x as u32)).collect();
            let (_, flipped_score) =
                best_response_rule(&Colouring::from_signs(n, flipped).unwrap());
            assert_eq!(base, flipped_score);

            for k in 0..ring {
                let rotated: Vec<i8> = (0..ring)
                    .map(|x| colouring.colour(((x + k) % ring) as u32))
                    .collect();
                let (_, rotated_score) =
                    best_response_rule(&Colouring::from_signs(n, rotated).unwrap());
                assert_eq!(base, rotated_score, "rotation k={k}");
            }
        }
    }

    #[test]
    fn mixtures_never_beat_the_deterministic_optimum() {
        // Sharing random numbers makes the players' strategy a convex mixture
        // of deterministic ones, so its score is the average of member
        // scores and cannot exceed the deterministic maximum.
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let (optimum, _) = exhaustive_search_two_party(4).unwrap();
        for _ in 0..1000 {
            let members = rng.gen_range(2..=8);
            let mut total = Ratio::new(0u64, 1u64);
            for _ in 0..members {
                let (_, score) = best_response_rule(&random_colouring(4, &mut rng));
                total += score.0;
            }
            let mixture = total / Ratio::from_integer(members as u64);
            assert!(mixture <= optimum.0, "mixture {mixture} beat {optimum}");
        }
    }

    #[test]
    fn exhaustive_search_two_party_optima() {
        let (best4, witness4) = exhaustive_search_two_party(4).unwrap();
        assert_eq!(best4, frac(3, 4));
        // First maximal colouring in mask order: points 0 and 1 coloured +1.
        assert_eq!(witness4.to_string(), "++------");
        assert_eq!(best_response_rule(&witness4).1, best4);

        let (best6, witness6) = exhaustive_search_two_party(6).unwrap();
        assert_eq!(best6, frac(5, 6));
        assert_eq!(witness6.to_string(), "++++--------");

        // The maximum dominates the half-circle member.
        let (_, half) = best_response_rule(&Colouring::half_circle(4).unwrap());
        assert!(best4 >= half);

        assert!(exhaustive_search_two_party(5).is_err());
        assert!(matches!(
            exhaustive_search_two_party(10),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn run_classical_two_party_matches_hand_trace() {
        // Colouring "--+-++-+" (mask 0b1011_0100). Hand-derived best-response
        // rule: y=2 maps +1 to anti, -1 to neighbours; y=0 is all ties, so
        // both bits map to Neighbours.
        let colouring = Colouring::from_mask(4, 0b1011_0100).unwrap();
        let (rule, score) = best_response_rule(&colouring);
        assert_eq!(score, frac(3, 4));
        assert_eq!(rule.decide(0, 1), Relation::Neighbours);
        assert_eq!(rule.decide(0, -1), Relation::Neighbours);

        let run = |x, y| {
            run_classical_two_party(&TwoPartyInstance::new(4, x, y).unwrap(), &colouring, &rule)
                .unwrap()
        };
        // x=0 is coloured -1 and y=1 maps -1 to Neighbours: correct.
        assert_eq!(run(0, 1), (Relation::Neighbours, true));
        // x=5 is coloured +1 and y=2 maps +1 to AntiNeighbours: correct.
        assert_eq!(run(5, 2), (Relation::AntiNeighbours, true));
        // x=5 against y=0 guesses Neighbours but the pair is anti: wrong.
        assert_eq!(run(5, 0), (Relation::Neighbours, false));
    }

    #[test]
    fn per_run_average_equals_exact_score() {
        let colouring = Colouring::half_circle(4).unwrap();
        let (rule, score) = best_response_rule(&colouring);
        let instances = enumerate_two_party(4).unwrap();
        let successes = instances
            .iter()
            .filter(|inst| run_classical_two_party(inst, &colouring, &rule).unwrap().1)
            .count() as u64;
        assert_eq!(frac(successes, instances.len() as u64), score);
    }

    #[test]
    fn run_classical_two_party_rejects_mismatched_sizes() {
        let instance = TwoPartyInstance::new(4, 0, 1).unwrap();
        let colouring = Colouring::half_circle(4).unwrap();
        let rule6 = best_response_rule(&Colouring::half_circle(6).unwrap()).0;
        assert!(run_classical_two_party(&instance, &colouring, &rule6).is_err());
        assert!(evaluate_two_party_strategy(&colouring, &rule6).is_err());
    }

    #[test]
    fn three_party_encoding_validates_bits() {
        assert!(ThreePartyEncoding::from_messages([0, 0, 1, 1], [0, 1, 2, 1]).is_err());
        assert!(ThreePartyEncoding::new([0; 4], [0; 4], [[[2, 0], [0, 0]]; 4]).is_err());
    }

    #[test]
    fn partition_encodings_score_as_enumerated() {
        // The three balanced partitions of {0..3} are not interchangeable:
        // pairs built from {0,1}|{2,3} and {0,3}|{1,2} reach 3/4, while any
        // pair involving the parity partition {0,2}|{1,3} collapses to 1/2
        // because that message determines nothing about f's high bit.
        let floor = [0, 0, 1, 1];
        let other = [0, 1, 1, 0];
        let parity = [0, 1, 0, 1];
        let score =
            |b, c| evaluate_three_party_encoding(&ThreePartyEncoding::from_messages(b, c).unwrap());
        assert_eq!(score(floor, floor), frac(3, 4));
        assert_eq!(score(other, other), frac(3, 4));
        assert_eq!(score(floor, other), frac(3, 4));
        assert_eq!(score(parity, parity), frac(1, 2));
        assert_eq!(score(floor, parity), frac(1, 2));
        assert_eq!(score(parity, other), frac(1, 2));
    }

    #[test]
    fn floor_partition_decision_table() {
        let enc = ThreePartyEncoding::from_messages([0, 0, 1, 1], [0, 0, 1, 1]).unwrap();
        // Majority answers, hand-enumerable: x=0 and x=2 are all ties (to 0);
        // x=1 and x=3 have strict majorities forming complementary XOR-like
        // patterns.
        assert_eq!(
            enc.alice_decision(),
            [
                [[0, 0], [0, 0]],
                [[1, 0], [0, 1]],
                [[0, 0], [0, 0]],
                [[0, 1], [1, 0]],
            ]
        );
        assert_eq!(evaluate_three_party_encoding(&enc), frac(3, 4));
    }

    #[test]
    fn constant_messages_give_all_zero_decision() {
        // With uninformative messages every (x, mB, mC) cell is a 4-4 tie, so
        // the tie-break answers 0 everywhere and exactly the 16 f=0 instances
        // succeed.
        let enc = ThreePartyEncoding::from_messages([0; 4], [0; 4]).unwrap();
        assert_eq!(enc.alice_decision(), [[[0; 2]; 2]; 4]);
        assert_eq!(evaluate_three_party_encoding(&enc), frac(1, 2));
    }

    #[test]
    fn encoding_scores_are_multiples_of_one_thirtysecond() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        for _ in 0..200 {
            let bob = std::array::from_fn(|_| rng.gen_range(0..2u8));
            let claire = std::array::from_fn(|_| rng.gen_range(0..2u8));
            let decision = std::array::from_fn(|_| {
                std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(0..2u8)))
            });
            let enc = ThreePartyEncoding::new(bob, claire, decision).unwrap();
            let score = evaluate_three_party_encoding(&enc);
            assert_eq!(
                32 % score.denom(),
                0,
                "denominator {} does not divide 32",
                score.denom()
            );
            assert!(score <= frac(1, 1));
        }
    }

    #[test]
    fn exhaustive_search_three_party_optimum() {
        let (best, witness) = exhaustive_search_three_party();
        assert_eq!(best, frac(3, 4));
        // First maximal message pair in mask order.
        assert_eq!(witness.bob_msg(), [1, 0, 0, 0]);
        assert_eq!(witness.claire_msg(), [1, 1, 0, 0]);
        assert_eq!(evaluate_three_party_encoding(&witness), best);
    }

    #[test]
    fn derived_decision_is_optimal_for_fixed_messages() {
        // Replacing the majority decision with random tables never helps.
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..50 {
            let bob: [u8; 4] = std::array::from_fn(|_| rng.gen_range(0..2u8));
            let claire: [u8; 4] = std::array::from_fn(|_| rng.gen_range(0..2u8));
            let best = evaluate_three_party_encoding(
                &ThreePartyEncoding::from_messages(bob, claire).unwrap(),
            );
            for _ in 0..20 {
                let decision = std::array::from_fn(|_| {
                    std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(0..2u8)))
                });
                let enc = ThreePartyEncoding::new(bob, claire, decision).unwrap();
                assert!(evaluate_three_party_encoding(&enc) <= best);
            }
        }
    }

    #[test]
    fn run_classical_three_party_spot_checks() {
        let enc = ThreePartyEncoding::from_messages([0, 0, 1, 1], [0, 0, 1, 1]).unwrap();
        let run =
            |x, y, z| run_classical_three_party(&ThreePartyInstance::new(x, y, z).unwrap(), &enc);
        assert_eq!(run(0, 0, 0), (0, true)); // f = 0, tie cell answers 0
        assert_eq!(run(1, 1, 0), (1, true)); // f = 1, strict majority cell
        assert_eq!(run(0, 1, 1), (0, false)); // f = 1 but the tie cell says 0
    }

    #[test]
    fn encoding_display_lists_three_tables() {
        let enc = ThreePartyEncoding::from_messages([1, 0, 0, 0], [1, 1, 0, 0]).unwrap();
        let text = enc.to_string();
        assert!(text.contains("bob_msg:    [1, 0, 0, 0]"));
        assert!(text.contains("claire_msg: [1, 1, 0, 0]"));
        assert!(text.contains("x=3:"));
    }
}
