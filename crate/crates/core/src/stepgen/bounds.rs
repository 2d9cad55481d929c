use serde::Serialize;

use super::product::{product_set, SideMode};
use crate::additive::{closure_of_set, genericity_number, thickness, ElementSet, Genericity, Thickness};
use crate::error::{Error, Result};
use crate::ring::{additive_exponent, is_left_s_unital};

#[derive(Debug, Clone, Serialize)]
pub struct GenericBoundReport {
    /// Genericity number of `D` (exact unless `genericity_exact` is false).
    pub n: u32,
    pub genericity_exact: bool,
    /// Least `m` with `E^{+m} = <D>`, `E = D ∪ {0} ∪ -D`.
    pub m: u32,
    pub bound: u32,
    pub holds: bool,
    pub subgroup_order: usize,
}

/// Checks that `E^{+3n}` is the subgroup generated by `D`, where `n` is the
/// number of translates of `D` needed to cover the ring.
pub fn verify_generic_generation_bound(d: &ElementSet<'_>) -> Result<GenericBoundReport> {
    let ring = d.ring();
    let cap = ring.size() as u32;
    let (n, genericity_exact) = match genericity_number(d, cap)? {
        Genericity::Exact { n, .. } => (n, true),
        Genericity::UpperBound { n, .. } => (n, false),
        Genericity::ExceedsCap => return Err(Error::NotGeneric { cap: cap as usize }),
    };
    let mut e = d.union(&d.negation());
    e.insert(0);
    let target = closure_of_set(d).into_carrier();
    let mut layer = e.clone();
    let mut m = 1;
    while layer != target {
        layer = layer.sum(&e);
        m += 1;
        assert!(layer.is_subset(&target), "sums of E left <D>");
    }
    let bound = 3 * n;
    Ok(GenericBoundReport { n, genericity_exact, m, bound, holds: m <= bound, subgroup_order: target.len() })
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum FactorialVerdict {
    Checked {
        thickness: u32,
        /// `n! mod char(R)`, the multiplier actually applied.
        multiplier: u64,
        holds: bool,
        /// Least `N > 0` with `N·R ⊆ R·D`.
        minimal_n: u64,
    },
    Inapplicable {
        reason: String,
    },
}

/// Checks `n!·R ⊆ R·D` for a thick `D` in a left s-unital ring, `n` the thickness of `D`.
pub fn verify_sunital_factorial(d: &ElementSet<'_>, thickness_cap: u32) -> FactorialVerdict {
    let ring = d.ring();
    if !is_left_s_unital(ring) {
        return FactorialVerdict::Inapplicable { reason: "ring is not left s-unital".into() };
    }
    let n = match thickness(d, thickness_cap) {
        Thickness::Thick(n) => n,
        other => return FactorialVerdict::Inapplicable { reason: format!("set is not thick: {other:?}") },
    };
    let exponent = additive_exponent(ring);
    let multiplier = (1..=n as u64).fold(1 % exponent, |acc, k| acc * (k % exponent) % exponent);
    let rd = product_set(d, SideMode::LEFT);
    let multiples_inside = |k: u64| ring.elements().all(|r| rd.contains(ring.times(r, k)));
    let holds = multiples_inside(multiplier);
    let minimal_n = (1..=exponent).find(|&k| multiples_inside(k)).unwrap_or(exponent);
    FactorialVerdict::Checked { thickness: n, multiplier, holds, minimal_n }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::additive::closure;
    use crate::ring::TabulatedRing;

    #[test]
    fn subgroup_generates_in_one_step() {
        let r = TabulatedRing::zq_power(2, 4).unwrap();
        let h = closure(&r, &[1, 2]);
        let rep = verify_generic_generation_bound(h.carrier()).unwrap();
        assert_eq!((rep.m, rep.n), (1, 4));
        assert!(rep.holds && rep.genericity_exact);
    }

    #[test]
    fn z8_plus_minus_one() {
        let z8 = TabulatedRing::zq_power(8, 1).unwrap();
        let rep = verify_generic_generation_bound(&ElementSet::from_elems(&z8, [1, 7])).unwrap();
        assert_eq!(rep.n, 4);
        assert_eq!(rep.m, 4);
        assert!(rep.holds);
        assert_eq!(rep.subgroup_order, 8);
    }

    #[test]
    fn coset_shape_in_z2_fourth() {
        let r = TabulatedRing::zq_power(2, 4).unwrap();
        let h = closure(&r, &[1, 2, 4]);
        let d = ElementSet::from_elems(&r, [3, 3 ^ 8]);
        let rep = verify_generic_generation_bound(&d.union(h.carrier())).unwrap();
        assert!(rep.holds);
    }

    fn checked(v: FactorialVerdict) -> (u32, u64, bool, u64) {
        match v {
            FactorialVerdict::Checked { thickness, multiplier, holds, minimal_n } => {
                (thickness, multiplier, holds, minimal_n)
            }
            FactorialVerdict::Inapplicable { reason } => panic!("{reason}"),
        }
    }

    #[test]
    fn z6_even_residues() {
        let z6 = TabulatedRing::zq_power(6, 1).unwrap();
        let (n, mult, holds, min) = checked(verify_sunital_factorial(&ElementSet::from_elems(&z6, [0, 2, 4]), 16));
        assert_eq!((n, mult, holds), (3, 0, true));
        assert_eq!(min, 2);
    }

    #[test]
    fn z5_with_one() {
        let z5 = TabulatedRing::zq_power(5, 1).unwrap();
        let (n, mult, holds, min) = checked(verify_sunital_factorial(&ElementSet::from_elems(&z5, [0, 1, 4]), 16));
        assert_eq!((n, mult, holds, min), (3, 1, true, 1));
    }

    #[test]
    fn whole_ring() {
        let r = TabulatedRing::zq_power(3, 2).unwrap();
        let (n, _, holds, min) = checked(verify_sunital_factorial(&ElementSet::full(&r), 16));
        assert_eq!(n, 2);
        assert!(holds);
        assert_eq!(min, 1);
    }

    #[test]
    fn inapplicable_inputs() {
        let zero = TabulatedRing::zero_ring(2, 2).unwrap();
        assert!(matches!(
            verify_sunital_factorial(&ElementSet::full(&zero), 16),
            FactorialVerdict::Inapplicable { .. }
        ));
        let z6 = TabulatedRing::zq_power(6, 1).unwrap();
        assert!(matches!(
            verify_sunital_factorial(&ElementSet::from_elems(&z6, [0, 1]), 16),
            FactorialVerdict::Inapplicable { .. }
        ));
    }
}
