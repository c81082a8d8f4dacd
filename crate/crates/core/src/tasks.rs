//! Problem instances for the two communication tasks.
//!
//! Two-party: Alice holds `x` and Bob holds `y`, both drawn from `0..2n` on a
//! ring of `2n` points, promised that the circular distance between them is
//! either 1 (neighbours) or `n-1` (anti-neighbours). Bob must decide which
//! after receiving a single bit from Alice.
//!
//! Three-party: Alice, Bob and Claire hold `x, y, z` from `{0,1,2,3}` with
//! `x + y + z` even, and Alice must announce `((x + y + z) mod 4) / 2` after
//! receiving one bit from each partner.
//!
//! Instances carry their ground-truth answer so scoring code never has to
//! recompute it.

use rand::Rng;

use crate::error::{Error, Result};

/// Validates the ring parameter shared by everything two-party: even, at
/// least 4.
pub(crate) fn check_ring_param(n: u32) -> Result<()> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::arg(format!(
            "ring parameter n must be even and at least 4, got {n}"
        )));
    }
    Ok(())
}

/// Which side of the two-party promise an input pair falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Neighbours,
    AntiNeighbours,
}

/// Validates the two-party parameters and classifies the pair, returning
/// `None` when the inputs are in range but the promise does not hold.
pub fn classify_relation(x: u32, y: u32, n: u32) -> Result<Option<Relation>> {
    check_ring_param(n)?;
    let ring = 2 * n;
    if x >= ring || y >= ring {
        return Err(Error::arg(format!(
            "inputs must lie in 0..{ring} for n={n}, got x={x}, y={y}"
        )));
    }
    let diff = (x + ring - y) % ring;
    if diff == 1 || diff == ring - 1 {
        Ok(Some(Relation::Neighbours))
    } else if diff == n - 1 || diff == n + 1 {
        Ok(Some(Relation::AntiNeighbours))
    } else {
        Ok(None)
    }
}

/// One promised input pair for the two-party task on a ring of `2n` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoPartyInstance {
    n: u32,
    x: u32,
    y: u32,
    relation: Relation,
}

impl TwoPartyInstance {
    /// Builds an instance, rejecting pairs that violate the promise.
    pub fn new(n: u32, x: u32, y: u32) -> Result<Self> {
        match classify_relation(x, y, n)? {
            Some(relation) => Ok(TwoPartyInstance { n, x, y, relation }),
            None => Err(Error::arg(format!(
                "inputs x={x}, y={y} violate the distance promise for n={n}"
            ))),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Alice's input.
    pub fn x(&self) -> u32 {
        self.x
    }

    /// Bob's input.
    pub fn y(&self) -> u32 {
        self.y
    }

    /// The ground-truth answer Bob is trying to produce.
    pub fn relation(&self) -> Relation {
        self.relation
    }
}

/// All `8n` promised pairs for ring parameter `n`, grouped by `x` ascending.
/// For every `x` the four partners appear in the order `x+1`, `x-1`, `x+n-1`,
/// `x+n+1` (mod `2n`), so each relation class contributes `4n` instances.
pub fn enumerate_two_party(n: u32) -> Result<Vec<TwoPartyInstance>> {
    check_ring_param(n)?;
    let ring = 2 * n;
    let mut out = Vec::with_capacity(8 * n as usize);
    for x in 0..ring {
        for (offset, relation) in [
            (1, Relation::Neighbours),
            (ring - 1, Relation::Neighbours),
            (n - 1, Relation::AntiNeighbours),
            (n + 1, Relation::AntiNeighbours),
        ] {
            out.push(TwoPartyInstance {
                n,
                x,
                y: (x + offset) % ring,
                relation,
            });
        }
    }
    Ok(out)
}

/// Draws a promised pair uniformly from the `8n` instances.
pub fn sample_two_party<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Result<TwoPartyInstance> {
    check_ring_param(n)?;
    let ring = 2 * n;
    let i = rng.gen_range(0..8 * n);
    let x = i / 4;
    let (offset, relation) = [
        (1, Relation::Neighbours),
        (ring - 1, Relation::Neighbours),
        (n - 1, Relation::AntiNeighbours),
        (n + 1, Relation::AntiNeighbours),
    ][(i % 4) as usize];
    Ok(TwoPartyInstance {
        n,
        x,
        y: (x + offset) % ring,
        relation,
    })
}

/// The three-party target function: the high bit of `(x + y + z) mod 4`. The
/// parity promise makes the low bit zero, so this is `((x + y + z) mod 4) / 2`;
/// outside the promise the function is undefined and an error is returned.
pub fn f_three(x: u32, y: u32, z: u32) -> Result<u8> {
    if x > 3 || y > 3 || z > 3 {
        return Err(Error::arg(format!(
            "inputs must lie in 0..4, got x={x}, y={y}, z={z}"
        )));
    }
    if !(x + y + z).is_multiple_of(2) {
        return Err(Error::arg(format!(
            "inputs must have even sum, got x={x}, y={y}, z={z}"
        )));
    }
    Ok((((x + y + z) % 4) / 2) as u8)
}

/// One promised input triple for the three-party task.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreePartyInstance {
    x: u32,
    y: u32,
    z: u32,
    f: u8,
}

impl ThreePartyInstance {
    /// Builds an instance, rejecting triples outside the parity promise.
    pub fn new(x: u32, y: u32, z: u32) -> Result<Self> {
        let f = f_three(x, y, z)?;
        Ok(ThreePartyInstance { x, y, z, f })
    }

    /// Alice's input.
    pub fn x(&self) -> u32 {
        self.x
    }

    /// Bob's input.
    pub fn y(&self) -> u32 {
        self.y
    }

    /// Claire's input.
    pub fn z(&self) -> u32 {
        self.z
    }

    /// The ground-truth answer bit Alice is trying to produce.
    pub fn f(&self) -> u8 {
        self.f
    }
}

/// All 32 promised triples, ordered by `(x, y, z)` lexicographically.
pub fn enumerate_three_party() -> Vec<ThreePartyInstance> {
    let mut out = Vec::with_capacity(32);
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                if (x + y + z) % 2 == 0 {
                    out.push(ThreePartyInstance {
                        x,
                        y,
                        z,
                        f: (((x + y + z) % 4) / 2) as u8,
                    });
                }
            }
        }
    }
    out
}

/// Draws a promised triple uniformly from the 32 instances.
pub fn sample_three_party<R: Rng + ?Sized>(rng: &mut R) -> ThreePartyInstance {
    let i = rng.gen_range(0..32u32);
    let xy = i / 2;
    let x = xy / 4;
    let y = xy % 4;
    // For each (x, y) exactly two z values satisfy the parity promise:
    // (x + y) mod 2 and (x + y) mod 2 + 2.
    let z = (x + y) % 2 + 2 * (i % 2);
    ThreePartyInstance {
        x,
        y,
        z,
        f: (((x + y + z) % 4) / 2) as u8,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashMap;

    #[test]
    fn classify_relation_on_hand_checked_pairs() {
        // n = 4: ring of 8, neighbour distance 1, anti-neighbour distance 3.
        assert_eq!(
            classify_relation(0, 1, 4).unwrap(),
            Some(Relation::Neighbours)
        );
        assert_eq!(
            classify_relation(0, 7, 4).unwrap(),
            Some(Relation::Neighbours)
        );
        assert_eq!(
            classify_relation(7, 0, 4).unwrap(),
            Some(Relation::Neighbours)
        );
        assert_eq!(
            classify_relation(0, 3, 4).unwrap(),
            Some(Relation::AntiNeighbours)
        );
        assert_eq!(
            classify_relation(0, 5, 4).unwrap(),
            Some(Relation::AntiNeighbours)
        );
        assert_eq!(
            classify_relation(6, 1, 4).unwrap(),
            Some(Relation::AntiNeighbours)
        );
        assert_eq!(classify_relation(0, 0, 4).unwrap(), None);
        assert_eq!(classify_relation(0, 2, 4).unwrap(), None);
        assert_eq!(classify_relation(0, 4, 4).unwrap(), None);
        assert_eq!(classify_relation(0, 6, 4).unwrap(), None);
    }

    #[test]
    fn classify_relation_is_symmetric_and_rotation_invariant() {
        for n in [4u32, 6, 8] {
            let ring = 2 * n;
            for x in 0..ring {
                for y in 0..ring {
                    let base = classify_relation(x, y, n).unwrap();
                    assert_eq!(
                        base,
                        classify_relation(y, x, n).unwrap(),
                        "n={n}, x={x}, y={y}"
                    );
                    for k in 0..ring {
                        assert_eq!(
                            base,
                            classify_relation((x + k) % ring, (y + k) % ring, n).unwrap(),
                            "rotation k={k} changed the relation at n={n}, x={x}, y={y}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn classify_relation_rejects_bad_parameters() {
        assert!(classify_relation(0, 1, 2).is_err());
        assert!(classify_relation(0, 1, 5).is_err());
        assert!(classify_relation(8, 0, 4).is_err());
        assert!(classify_relation(0, 8, 4).is_err());
    }

    #[test]
    fn two_party_instance_enforces_promise() {
        let inst = TwoPartyInstance::new(4, 0, 1).unwrap();
        assert_eq!(inst.relation(), Relation::Neighbours);
        assert!(TwoPartyInstance::new(4, 0, 2).is_err());
        assert!(TwoPartyInstance::new(4, 0, 9).is_err());
        assert!(TwoPartyInstance::new(5, 0, 1).is_err());
    }

    #[test]
    fn enumeration_counts_and_consistency() {
        for n in [4u32, 6, 8] {
            let all = enumerate_two_party(n).unwrap();
            assert_eq!(all.len(), 8 * n as usize);
            let neighbours = all
                .iter()
                .filter(|i| i.relation() == Relation::Neighbours)
                .count();
            // The promise set is balanced between the two relations.
            assert_eq!(neighbours, 4 * n as usize);
            for inst in &all {
                assert_eq!(
                    classify_relation(inst.x(), inst.y(), n).unwrap(),
                    Some(inst.relation())
                );
            }
            // All 8n entries are distinct pairs.
            let mut pairs: Vec<_> = all.iter().map(|i| (i.x(), i.y())).collect();
            pairs.sort_unstable();
            pairs.dedup();
            assert_eq!(pairs.len(), 8 * n as usize);
        }
        assert!(enumerate_two_party(3).is_err());
    }

    #[test]
    fn two_party_sampling_is_uniform() {
        let n = 4;
        let trials = 320_000u32;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut counts: HashMap<(u32, u32), u32> = HashMap::new();
        let mut neighbours = 0u32;
        for _ in 0..trials {
            let inst = sample_two_party(n, &mut rng).unwrap();
            assert_eq!(
                classify_relation(inst.x(), inst.y(), n).unwrap(),
                Some(inst.relation())
            );
            if inst.relation() == Relation::Neighbours {
                neighbours += 1;
            }
            *counts.entry((inst.x(), inst.y())).or_default() += 1;
        }
        assert_eq!(counts.len(), 8 * n as usize);
        // Each of the 32 instances expects 10000 hits; 5 sigma is about 500.
        let expect = trials as f64 / (8 * n) as f64;
        let sigma = (expect * (1.0 - 1.0 / (8 * n) as f64)).sqrt();
        for (pair, count) in counts {
            assert!(
                (count as f64 - expect).abs() <= 5.0 * sigma,
                "pair {pair:?} hit {count} times, expected about {expect}"
            );
        }
        // Relation classes are drawn with equal frequency.
        let half = trials as f64 / 2.0;
        assert!((neighbours as f64 - half).abs() <= 5.0 * (half / 2.0f64).sqrt() * 2.0f64.sqrt());
    }

    #[test]
    fn sampling_is_deterministic_for_fixed_seed() {
        let draw = |seed: u64| -> Vec<(u32, u32)> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..50)
                .map(|_| sample_two_party(6, &mut rng).unwrap())
                .map(|i| (i.x(), i.y()))
                .collect()
        };
        assert_eq!(draw(21), draw(21));
        assert_ne!(draw(21), draw(22));
    }

    #[test]
    fn f_three_values_and_errors() {
        assert_eq!(f_three(0, 0, 0).unwrap(), 0);
        assert_eq!(f_three(1, 1, 2).unwrap(), 0); // sum 4
        assert_eq!(f_three(1, 1, 0).unwrap(), 1); // sum 2
        assert_eq!(f_three(3, 3, 0).unwrap(), 1); // sum 6
        assert_eq!(f_three(2, 2, 2).unwrap(), 1); // sum 6
        assert_eq!(f_three(3, 3, 2).unwrap(), 0); // sum 8
        assert!(f_three(1, 0, 0).is_err()); // odd sum
        assert!(f_three(4, 0, 0).is_err()); // out of range
    }

    #[test]
    fn f_three_is_permutation_invariant() {
        for inst in enumerate_three_party() {
            let (x, y, z) = (inst.x(), inst.y(), inst.z());
            for (a, b, c) in [(x, z, y), (y, x, z), (y, z, x), (z, x, y), (z, y, x)] {
                assert_eq!(f_three(a, b, c).unwrap(), inst.f());
            }
        }
    }

    #[test]
    fn three_party_instance_enforces_promise() {
        let inst = ThreePartyInstance::new(1, 1, 0).unwrap();
        assert_eq!(inst.f(), 1);
        assert!(ThreePartyInstance::new(1, 0, 0).is_err());
        assert!(ThreePartyInstance::new(4, 0, 0).is_err());
    }

    #[test]
    fn three_party_enumeration_is_complete() {
        let all = enumerate_three_party();
        assert_eq!(all.len(), 32);
        let mut seen: Vec<_> = all.iter().map(|i| (i.x(), i.y(), i.z())).collect();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 32);
        for inst in &all {
            assert_eq!((inst.x() + inst.y() + inst.z()) % 2, 0);
            assert_eq!(inst.f(), f_three(inst.x(), inst.y(), inst.z()).unwrap());
        }
        // Targets are balanced: 16 instances for each answer bit.
        let ones: usize = all.iter().map(|i| i.f() as usize).sum();
        assert_eq!(ones, 16);
        // Every partner input remains possible whatever x is.
        for x in 0..4 {
            let ys: std::collections::HashSet<_> =
                all.iter().filter(|i| i.x() == x).map(|i| i.y()).collect();
            let zs: std::collections::HashSet<_> =
                all.iter().filter(|i| i.x() == x).map(|i| i.z()).collect();
            assert_eq!(ys.len(), 4);
            assert_eq!(zs.len(), 4);
        }
    }

    #[test]
    fn three_party_sampling_is_uniform() {
        let trials = 320_000u32;
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut counts: HashMap<(u32, u32, u32), u32> = HashMap::new();
        for _ in 0..trials {
            let inst = sample_three_party(&mut rng);
            assert_eq!(inst.f(), f_three(inst.x(), inst.y(), inst.z()).unwrap());
            *counts.entry((inst.x(), inst.y(), inst.z())).or_default() += 1;
        }
        assert_eq!(counts.len(), 32);
        let expect = trials as f64 / 32.0;
        let sigma = (expect * (1.0 - 1.0 / 32.0)).sqrt();
        for (triple, count) in counts {
            assert!(
                (count as f64 - expect).abs() <= 5.0 * sigma,
                "triple {triple:?} hit {count} times, expected about {expect}"
            );
        }
    }
}
