use serde::Serialize;

use super::product::{product_set, SideMode};
use super::steps::{step_set, HalfSteps};
use crate::additive::{genericity_number, ElementSet};

/// The first condition a candidate sequence violates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum BourgainViolation {
    EmptySequence,
    Symmetry {
        k: usize,
    },
    Genericity {
        k: usize,
    },
    Containment {
        k: usize,
    },
    Descending {
        k: usize,
    },
    /// `D_{k+1} + D_{k+1} ⊄ D_k`.
    Additive {
        k: usize,
    },
    /// `R·D_{k+1} ⊄ D_k`.
    Multiplicative {
        k: usize,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct BourgainReport {
    pub length: usize,
    pub step_set_size: usize,
    pub violation: Option<BourgainViolation>,
}

impl BourgainReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks that `seq` is a descending chain of generic symmetric sets inside the
/// `n`-step set of `D`, with `D_{k+1} + D_{k+1} ⊆ D_k` and `R·D_{k+1} ⊆ D_k`.
pub fn verify_bourgain_system(
    seq: &[ElementSet<'_>],
    d: &ElementSet<'_>,
    n: HalfSteps,
    mode: SideMode,
) -> BourgainReport {
    let target = step_set(d, n, mode);
    let report = |violation| BourgainReport { length: seq.len(), step_set_size: target.len(), violation };
    if seq.is_empty() {
        return report(Some(BourgainViolation::EmptySequence));
    }
    let cap = d.ring().size() as u32;
    for (k, s) in seq.iter().enumerate() {
        if !s.is_symmetric() {
            return report(Some(BourgainViolation::Symmetry { k }));
        }
        if s.is_empty() || genericity_number(s, cap).map_or(true, |g| g.bound().is_none()) {
            return report(Some(BourgainViolation::Genericity { k }));
        }
        if !s.is_subset(&target) {
            return report(Some(BourgainViolation::Containment { k }));
        }
    }
    let mult = mode.without_unit();
    for k in 0..seq.len() - 1 {
        let (big, small) = (&seq[k], &seq[k + 1]);
        if !small.is_subset(big) {
            return report(Some(BourgainViolation::Descending { k }));
        }
        if !small.sum(small).is_subset(big) {
            return report(Some(BourgainViolation::Additive { k }));
        }
        if !product_set(small, mult).is_subset(big) {
            return report(Some(BourgainViolation::Multiplicative { k }));
        }
    }
    report(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::TabulatedRing;
    use crate::stepgen::principal_ideal;

    #[test]
    fn constant_ideal_sequence() {
        let p = TabulatedRing::boolean(3).unwrap();
        let i = principal_ideal(&p, 0b011);
        let rep =
            verify_bourgain_system(&[i.clone(), i.clone(), i.clone()], &i, HalfSteps::whole(1), SideMode::LEFT_UNIT);
        assert!(rep.holds(), "{:?}", rep.violation);
    }

    #[test]
    fn asymmetric_member_fails() {
        let z6 = TabulatedRing::zq_power(6, 1).unwrap();
        let all = ElementSet::full(&z6);
        let bad = ElementSet::from_elems(&z6, [0, 1, 2]);
        let rep = verify_bourgain_system(&[all.clone(), bad], &all, HalfSteps::whole(1), SideMode::LEFT);
        assert_eq!(rep.violation, Some(BourgainViolation::Symmetry { k: 1 }));
    }

    #[test]
    fn two_ideals_inside_two_steps() {
        let p = TabulatedRing::boolean(3).unwrap();
        let i0 = principal_ideal(&p, 0b011);
        let i1 = principal_ideal(&p, 0b001);
        let d = ElementSet::from_elems(&p, [0, 0b011]);
        let rep = verify_bourgain_system(&[i0, i1], &d, HalfSteps::whole(2), SideMode::LEFT_UNIT);
        assert!(rep.holds(), "{:?}", rep.violation);
    }

    #[test]
    fn non_descending_fails() {
        let p = TabulatedRing::boolean(3).unwrap();
        let i0 = principal_ideal(&p, 0b011);
        let i1 = principal_ideal(&p, 0b001);
        let all = ElementSet::full(&p);
        let rep = verify_bourgain_system(&[i1, i0], &all, HalfSteps::whole(1), SideMode::LEFT);
        assert_eq!(rep.violation, Some(BourgainViolation::Descending { k: 0 }));
    }
}
