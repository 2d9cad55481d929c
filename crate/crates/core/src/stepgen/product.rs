use std::fmt;

use serde::{Deserialize, Serialize};

use crate::additive::{closure, ElementSet};
use crate::ring::{Elem, TabulatedRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// Which products form the multiplier set: `R·D`, `D·R` or `R·D·R`,
/// optionally with `1` adjoined to `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SideMode {
    pub side: Side,
    pub with_unit: bool,
}

impl SideMode {
    pub const LEFT: SideMode = SideMode { side: Side::Left, with_unit: false };
    pub const RIGHT: SideMode = SideMode { side: Side::Right, with_unit: false };
    pub const TWO_SIDED: SideMode = SideMode { side: Side::TwoSided, with_unit: false };
    pub const LEFT_UNIT: SideMode = SideMode { side: Side::Left, with_unit: true };
    pub const RIGHT_UNIT: SideMode = SideMode { side: Side::Right, with_unit: true };
    pub const TWO_SIDED_UNIT: SideMode = SideMode { side: Side::TwoSided, with_unit: true };

    pub fn without_unit(self) -> SideMode {
        SideMode { with_unit: false, ..self }
    }
}

impl fmt::Display for SideMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = if self.with_unit { "(R∪{1})" } else { "R" };
        match self.side {
            Side::Left => write!(f, "{r}·D"),
            Side::Right => write!(f, "D·{r}"),
            Side::TwoSided => write!(f, "{r}·D·{r}"),
        }
    }
}

/// `R·x`, an additive subgroup (the image of `r ↦ r·x`).
pub fn left_multiples<'r>(ring: &'r TabulatedRing, x: Elem) -> ElementSet<'r> {
    let gens: Vec<Elem> = ring.additive_basis().into_iter().map(|b| ring.mul(b, x)).collect();
    closure(ring, &gens).into_carrier()
}

/// `x·R`.
pub fn right_multiples<'r>(ring: &'r TabulatedRing, x: Elem) -> ElementSet<'r> {
    let gens: Vec<Elem> = ring.additive_basis().into_iter().map(|b| ring.mul(x, b)).collect();
    closure(ring, &gens).into_carrier()
}

fn left_products<'r>(d: &ElementSet<'r>) -> ElementSet<'r> {
    let ring = d.ring();
    let mut out = ElementSet::empty(ring);
    for x in d.iter() {
        // x = r·y already covered means R·x ⊆ R·y.
        if !out.contains(x) {
            out.union_with(&left_multiples(ring, x));
        }
    }
    out
}

fn right_products<'r>(d: &ElementSet<'r>) -> ElementSet<'r> {
    let ring = d.ring();
    let mut out = ElementSet::empty(ring);
    for x in d.iter() {
        if !out.contains(x) {
            out.union_with(&right_multiples(ring, x));
        }
    }
    out
}

/// All products of the given shape with a factor from `D`.
pub fn product_set<'r>(d: &ElementSet<'r>, mode: SideMode) -> ElementSet<'r> {
    let mut out = match mode.side {
        Side::Left => left_products(d),
        Side::Right => right_products(d),
        Side::TwoSided => {
            let rd = left_products(d);
            let mut rdr = right_products(&rd);
            if mode.with_unit {
                rdr.union_with(&rd);
                rdr.union_with(&right_products(d));
            }
            rdr
        }
    };
    if mode.with_unit {
        out.union_with(d);
    }
    out
}
