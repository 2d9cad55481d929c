use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::ideal::ideal_closure;
use super::product::{product_set, SideMode};
use crate::additive::{ElementSet, Subgroup};

/// A step count `n/2`, so that `3` means `1½` steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfSteps(pub u32);

impl HalfSteps {
    pub fn whole(n: u32) -> Self {
        HalfSteps(2 * n)
    }

    pub fn and_a_half(k: u32) -> Self {
        HalfSteps(2 * k + 1)
    }

    pub fn is_whole(self) -> bool {
        self.0 % 2 == 0
    }

    /// The integer part `k` of `k` or `k½`.
    pub fn floor(self) -> u32 {
        self.0 / 2
    }
}

impl fmt::Display for HalfSteps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.floor(), self.is_whole()) {
            (k, true) => write!(f, "{k}"),
            (0, false) => write!(f, "½"),
            (k, false) => write!(f, "{k}½"),
        }
    }
}

impl std::str::FromStr for HalfSteps {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (int, half) = if let Some(p) = s.strip_suffix('½') {
            (p, true)
        } else if let Some(p) = s.strip_suffix(".5") {
            (p, true)
        } else {
            (s, false)
        };
        let k: u32 =
            if int.is_empty() && half { 0 } else { int.parse().map_err(|_| format!("bad step count {s:?}"))? };
        Ok(if half { HalfSteps::and_a_half(k) } else { HalfSteps::whole(k) })
    }
}

/// `H + X^{+k}` with `X` the product set of `H`; `k = 0` gives `H`.
pub fn half_step_set<'r>(h: &Subgroup<'r>, k: u32, mode: SideMode) -> ElementSet<'r> {
    if k == 0 {
        return h.carrier().clone();
    }
    let x = product_set(h.carrier(), mode);
    h.carrier().sum(&x.n_fold_sum(k))
}

/// The `n`-step set of `D`: `X^{+n}` for whole `n`, `D + X^{+k}` for `n = k½`.
pub fn step_set<'r>(d: &ElementSet<'r>, n: HalfSteps, mode: SideMode) -> ElementSet<'r> {
    let x = product_set(d, mode);
    let layer = x.n_fold_sum(n.floor());
    if n.is_whole() {
        layer
    } else {
        d.sum(&layer)
    }
}

/// True when `set` is an additive subgroup: contains 0, is symmetric and
/// equals its own double sumset.
pub fn is_subgroup_set(set: &ElementSet<'_>) -> bool {
    set.contains(0) && set.is_symmetric() && set.sum(set) == *set
}

/// The sumset chain `X, X^{+2}, ..` of a product set `X`.
#[derive(Debug, Clone)]
pub struct StepChain<'r> {
    pub base: ElementSet<'r>,
    /// `layers[i]` is `X^{+(i+1)}`.
    pub layers: Vec<ElementSet<'r>>,
    pub layer_times: Vec<Duration>,
    pub stabilized_at: Option<u32>,
    pub group_at: Option<u32>,
}

impl<'r> StepChain<'r> {
    pub fn layer(&self, n: u32) -> Option<&ElementSet<'r>> {
        n.checked_sub(1).and_then(|i| self.layers.get(i as usize))
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layers.iter().map(|l| l.len()).collect()
    }
}

/// Result of [`min_steps_to_group`].
#[derive(Debug, Clone)]
pub struct StepOutcome<'r> {
    /// Minimal `n` with `X^{+n}` a subgroup, or `None` past the cap.
    pub steps: Option<u32>,
    pub chain: StepChain<'r>,
    /// The generated group agrees with an independently computed ideal closure.
    pub closure_agrees: Option<bool>,
}

/// Minimal `n <= max_n` such that the `n`-fold sum of the product set of `H` is a group.
pub fn min_steps_to_group<'r>(h: &Subgroup<'r>, mode: SideMode, max_n: u32) -> StepOutcome<'r> {
    let x = product_set(h.carrier(), mode);
    let mut chain =
        StepChain { base: x.clone(), layers: Vec::new(), layer_times: Vec::new(), stabilized_at: None, group_at: None };
    let mut current = x.clone();
    for n in 1..=max_n.max(1) {
        let start = Instant::now();
        let grouped = is_subgroup_set(&current);
        let next = if grouped { current.clone() } else { current.sum(&x) };
        chain.layers.push(current);
        chain.layer_times.push(start.elapsed());
        if grouped {
            chain.group_at = Some(n);
            chain.stabilized_at = Some(n);
            break;
        }
        current = next;
    }
    let closure_agrees = chain.group_at.map(|n| {
        let reached = chain.layer(n).expect("group layer");
        *reached == ideal_closure(&x, mode.side)
    });
    StepOutcome { steps: chain.group_at, chain, closure_agrees }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::additive::closure;
    use crate::ring::TabulatedRing;

    #[test]
    fn half_step_rendering() {
        assert_eq!(HalfSteps::and_a_half(1).to_string(), "1½");
        assert_eq!(HalfSteps::whole(2).to_string(), "2");
        assert_eq!(HalfSteps(1).to_string(), "½");
        assert_eq!("1½".parse::<HalfSteps>().unwrap(), HalfSteps(3));
        assert_eq!("2.5".parse::<HalfSteps>().unwrap(), HalfSteps(5));
        assert_eq!("4".parse::<HalfSteps>().unwrap(), HalfSteps(8));
        assert!("x".parse::<HalfSteps>().is_err());
    }

    #[test]
    fn half_step_zero_is_h() {
        let p = TabulatedRing::boolean(4).unwrap();
        let h = closure(&p, &[0b1010, 0b1100]);
        assert_eq!(half_step_set(&h, 0, SideMode::LEFT), *h.carrier());
    }

    #[test]
    fn half_step_contains_decomposition() {
        let p = TabulatedRing::boolean(4).unwrap();
        let h = closure(&p, &[0b1010, 0b1100]);
        let s = half_step_set(&h, 1, SideMode::LEFT);
        // {1,2,3} = A0 △ ({0,2} ∩ A1)
        assert_eq!(0b1010 ^ (0b0101 & 0b1100), 0b1110);
        assert!(s.contains(0b1110));
    }

    #[test]
    fn half_step_fills_z2_squared() {
        let r = TabulatedRing::zq_power(2, 2).unwrap();
        let h = closure(&r, &[r.encode(&[1, 1]).unwrap()]);
        assert!(half_step_set(&h, 1, SideMode::LEFT).is_full());
    }

    #[test]
    fn ideal_is_one_step() {
        let r = TabulatedRing::zq_power(2, 3).unwrap();
        let ideal = closure(&r, &[r.encode(&[1, 0, 0]).unwrap(), r.encode(&[0, 1, 0]).unwrap()]);
        let out = min_steps_to_group(&ideal, SideMode::LEFT, 8);
        assert_eq!(out.steps, Some(1));
        assert_eq!(out.closure_agrees, Some(true));
    }

    #[test]
    fn independent_pair_needs_two_steps() {
        let p = TabulatedRing::boolean(4).unwrap();
        let h = closure(&p, &[0b1010, 0b1100]);
        let out = min_steps_to_group(&h, SideMode::LEFT, 8);
        assert_eq!(out.steps, Some(2));
        assert!(!out.chain.layer(1).unwrap().contains(0b1110));
        assert!(out.chain.layer(2).unwrap().contains(0b1110));
        assert_eq!(out.closure_agrees, Some(true));
    }

    #[test]
    fn independent_triple_needs_three_steps() {
        let p = TabulatedRing::boolean(8).unwrap();
        let h = closure(&p, &[0b1010_1010, 0b1100_1100, 0b1111_0000]);
        let out = min_steps_to_group(&h, SideMode::LEFT, 8);
        assert_eq!(out.steps, Some(3));
        assert_eq!(out.closure_agrees, Some(true));
    }

    #[test]
    fn cap_reached() {
        let p = TabulatedRing::boolean(8).unwrap();
        let h = closure(&p, &[0b1010_1010, 0b1100_1100, 0b1111_0000]);
        let out = min_steps_to_group(&h, SideMode::LEFT, 2);
        assert_eq!(out.steps, None);
        assert_eq!(out.chain.layers.len(), 2);
    }
}
