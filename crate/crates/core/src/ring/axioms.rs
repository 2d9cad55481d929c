use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Elem, TabulatedRing};

/// Ring sizes up to this bound get an exhaustive triple scan.
pub const TRIPLE_EXHAUSTIVE_LIMIT: usize = 512;
/// Ring sizes up to this bound get an exhaustive pair scan.
pub const PAIR_EXHAUSTIVE_LIMIT: usize = 4096;
/// Sample count used above the exhaustive limits.
pub const SAMPLES: usize = 1_000_000;
/// Seed for sampled scans.
pub const AXIOM_SEED: u64 = 0x5eed_a510;

/// How a family of identities was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum Coverage {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

/// A concrete counterexample to a ring axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum AxiomFailure {
    AdditiveIdentity { x: Elem },
    AdditiveInverse { x: Elem },
    AdditionNotCommutative { x: Elem, y: Elem },
    AdditionNotAssociative { x: Elem, y: Elem, z: Elem },
    MultiplicationNotAssociative { x: Elem, y: Elem, z: Elem },
    LeftDistributivity { x: Elem, y: Elem, z: Elem },
    RightDistributivity { x: Elem, y: Elem, z: Elem },
    DeclaredUnit { unit: Elem, x: Elem },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub label: String,
    pub size: usize,
    pub pair_coverage: Coverage,
    pub triple_coverage: Coverage,
    pub commutative: bool,
    pub characteristic: u64,
    pub unit: Option<Elem>,
    pub left_s_unital: bool,
    pub right_s_unital: bool,
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn is_ring(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn s_unital(&self) -> bool {
        self.left_s_unital && self.right_s_unital
    }
}

/// Every `r` lies in `R·r`.
pub fn is_left_s_unital(ring: &TabulatedRing) -> bool {
    ring.one().is_some() || ring.elements().all(|r| ring.elements().any(|s| ring.mul(s, r) == r))
}

/// Every `r` lies in `r·R`.
pub fn is_right_s_unital(ring: &TabulatedRing) -> bool {
    ring.one().is_some() || ring.elements().all(|r| ring.elements().any(|s| ring.mul(r, s) == r))
}

/// Least `N > 0` with `N·x = 0` for all `x` (the characteristic).
pub fn additive_exponent(ring: &TabulatedRing) -> u64 {
    ring.additive_basis().into_iter().map(|b| ring.additive_order(b)).fold(1u64, |acc, o| acc.lcm(&o))
}

/// Checks the ring axioms and computes classification flags.
///
/// Only the first counterexample of each kind is recorded.
pub fn check_ring_axioms(ring: &TabulatedRing) -> AxiomReport {
    let n = ring.size();
    let mut failures = Vec::new();
    let note = |f: AxiomFailure, failures: &mut Vec<AxiomFailure>| {
        if !failures.iter().any(|g| std::mem::discriminant(g) == std::mem::discriminant(&f)) {
            failures.push(f);
        }
    };

    for x in ring.elements() {
        if ring.add(0, x) != x || ring.add(x, 0) != x {
            note(AxiomFailure::AdditiveIdentity { x }, &mut failures);
        }
        if ring.add(x, ring.neg(x)) != 0 {
            note(AxiomFailure::AdditiveInverse { x }, &mut failures);
        }
    }

    let mut commutative = true;
    let mut pair = |x: Elem, y: Elem, failures: &mut Vec<AxiomFailure>| {
        if ring.add(x, y) != ring.add(y, x) {
            note(AxiomFailure::AdditionNotCommutative { x, y }, failures);
        }
        if ring.mul(x, y) != ring.mul(y, x) {
            commutative = false;
        }
    };
    let pair_coverage = if n <= PAIR_EXHAUSTIVE_LIMIT {
        for x in ring.elements() {
            for y in ring.elements() {
                pair(x, y, &mut failures);
            }
        }
        Coverage::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED);
        for _ in 0..SAMPLES {
            let (x, y) = (rng.gen_range(0..n as Elem), rng.gen_range(0..n as Elem));
            pair(x, y, &mut failures);
        }
        Coverage::Sampled { samples: SAMPLES, seed: AXIOM_SEED }
    };

    let triple = |x: Elem, y: Elem, z: Elem, failures: &mut Vec<AxiomFailure>| {
        if ring.add(ring.add(x, y), z) != ring.add(x, ring.add(y, z)) {
            note(AxiomFailure::AdditionNotAssociative { x, y, z }, failures);
        }
        if ring.mul(ring.mul(x, y), z) != ring.mul(x, ring.mul(y, z)) {
            note(AxiomFailure::MultiplicationNotAssociative { x, y, z }, failures);
        }
        let yz = ring.add(y, z);
        if ring.mul(x, yz) != ring.add(ring.mul(x, y), ring.mul(x, z)) {
            note(AxiomFailure::LeftDistributivity { x, y, z }, failures);
        }
        if ring.mul(yz, x) != ring.add(ring.mul(y, x), ring.mul(z, x)) {
            note(AxiomFailure::RightDistributivity { x, y, z }, failures);
        }
    };
    let triple_coverage = if n <= TRIPLE_EXHAUSTIVE_LIMIT {
        for x in ring.elements() {
            for y in ring.elements() {
                for z in ring.elements() {
                    triple(x, y, z, &mut failures);
                }
            }
        }
        Coverage::Exhaustive
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(AXIOM_SEED ^ 1);
        for _ in 0..SAMPLES {
            let x = rng.gen_range(0..n as Elem);
            let y = rng.gen_range(0..n as Elem);
            let z = rng.gen_range(0..n as Elem);
            triple(x, y, z, &mut failures);
        }
        Coverage::Sampled { samples: SAMPLES, seed: AXIOM_SEED ^ 1 }
    };

    let is_unit = |e: Elem| ring.elements().all(|x| ring.mul(e, x) == x && ring.mul(x, e) == x);
    let unit = match ring.one() {
        Some(e) => {
            if let Some(x) = ring.elements().find(|&x| ring.mul(e, x) != x || ring.mul(x, e) != x) {
                note(AxiomFailure::DeclaredUnit { unit: e, x }, &mut failures);
                None
            } else {
                Some(e)
            }
        }
        None if n <= PAIR_EXHAUSTIVE_LIMIT => ring.elements().find(|&e| is_unit(e)),
        None => None,
    };

    let (left_s_unital, right_s_unital) =
        if unit.is_some() { (true, true) } else { (is_left_s_unital(ring), is_right_s_unital(ring)) };
    let characteristic = additive_exponent(ring);

    AxiomReport {
        label: ring.label().to_string(),
        size: n,
        pair_coverage,
        triple_coverage,
        commutative,
        characteristic,
        unit,
        left_s_unital,
        right_s_unital,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::ExoticRingSpec;

    #[test]
    fn boolean_two() {
        let rep = check_ring_axioms(&TabulatedRing::boolean(2).unwrap());
        assert!(rep.is_ring());
        assert!(rep.commutative && rep.unital() && rep.s_unital());
        assert_eq!(rep.characteristic, 2);
        assert_eq!(rep.triple_coverage, Coverage::Exhaustive);
    }

    #[test]
    fn z3_squared() {
        let rep = check_ring_axioms(&TabulatedRing::zq_power(3, 2).unwrap());
        assert!(rep.is_ring());
        assert_eq!(rep.characteristic, 3);
        assert_eq!(rep.size, 9);
        assert!(rep.unital());
    }

    #[test]
    fn exotic_two_two() {
        let rep = check_ring_axioms(&TabulatedRing::exotic(ExoticRingSpec { a: 2, b: 2 }).unwrap());
        assert!(rep.is_ring());
        assert!(rep.commutative && rep.unital());
        assert_eq!(rep.characteristic, 2);
    }

    #[test]
    fn exotic_one_one() {
        let ring = TabulatedRing::exotic(ExoticRingSpec { a: 1, b: 1 }).unwrap();
        assert_eq!(ring.size(), 16);
        let rep = check_ring_axioms(&ring);
        assert!(rep.is_ring() && rep.commutative && rep.unital());
    }

    #[test]
    fn poly_quotients_are_rings() {
        for (k, l, kp) in [(2, 3, 1), (2, 1, 0), (6, 2, 0), (4, 3, 1), (3, 2, 0)] {
            let rep = check_ring_axioms(&TabulatedRing::poly_quotient(k, l, kp).unwrap());
            assert!(rep.is_ring(), "{k} {l} {kp}: {:?}", rep.failures);
            assert_eq!(rep.characteristic, k as u64);
        }
    }

    #[test]
    fn zero_ring_is_not_s_unital() {
        let rep = check_ring_axioms(&TabulatedRing::zero_ring(2, 2).unwrap());
        assert!(rep.is_ring());
        assert!(!rep.unital() && !rep.left_s_unital && !rep.right_s_unital);
    }

    #[test]
    fn subring_search_finds_hidden_unit() {
        // {0, 3} in Z_6 is a copy of Z_2 with unit 3.
        let z6 = TabulatedRing::zq_power(6, 1).unwrap();
        let (r, _) = z6.subring(&[0, 3], "3Z_6").unwrap();
        assert_eq!(r.one(), None);
        assert_eq!(check_ring_axioms(&r).unit, Some(1));
    }

    #[test]
    fn flipped_product_is_caught() {
        let ring = TabulatedRing::zq_power(2, 2).unwrap();
        let bad = ring.with_product_overridden(1, 1, 0).unwrap();
        let rep = check_ring_axioms(&bad);
        assert!(!rep.is_ring());
    }

    #[test]
    fn large_rings_are_sampled() {
        let rep = check_ring_axioms(&TabulatedRing::boolean(10).unwrap());
        assert!(rep.is_ring());
        assert!(matches!(rep.triple_coverage, Coverage::Sampled { .. }));
        assert_eq!(rep.pair_coverage, Coverage::Exhaustive);
    }
}
