use serde::Serialize;

use crate::error::{Error, Result};

/// Largest ground set the families are built over.
pub const MAX_GROUND: u32 = 16;

/// Subsets `A_0..A_{n-1}` of `{0..x_size-1}`, each stored as a bit mask.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndependentFamily {
    pub n: u32,
    pub x_size: u32,
    pub sets: Vec<u32>,
}

impl IndependentFamily {
    pub fn members(&self, i: usize) -> Vec<u32> {
        (0..self.x_size).filter(|&x| self.sets[i] >> x & 1 == 1).collect()
    }

    pub fn union_of_first(&self, k: usize) -> u32 {
        self.sets[..k].iter().fold(0, |acc, s| acc | s)
    }

    pub fn independent(&self) -> bool {
        is_independent(&self.sets, self.x_size)
    }
}

/// Every one of the `2^n` cells `∩ A_i^{±}` meets the ground set.
pub fn is_independent(sets: &[u32], x_size: u32) -> bool {
    let ground: u32 = if x_size >= 32 { u32::MAX } else { (1u32 << x_size) - 1 };
    (0u32..1 << sets.len()).all(|signs| {
        let cell = sets
            .iter()
            .enumerate()
            .fold(ground, |acc, (i, &a)| if signs >> i & 1 == 1 { acc & a } else { acc & !a & ground });
        cell != 0
    })
}

/// `A_i = {x : bit i of x is set}` over `{0..2^n-1}`.
pub fn canonical_independent_family(n: u32) -> Result<IndependentFamily> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    if n > 4 {
        return Err(Error::InvalidParameter(format!(
            "n={n} needs 2^{n} ground points; at most {MAX_GROUND} are supported"
        )));
    }
    let x_size = 1u32 << n;
    let sets = (0..n).map(|i| (0..x_size).filter(|x| x >> i & 1 == 1).fold(0u32, |acc, x| acc | 1 << x)).collect();
    let family = IndependentFamily { n, x_size, sets };
    debug_assert!(family.independent());
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_examples() {
        let f = canonical_independent_family(2).unwrap();
        assert_eq!(f.members(0), vec![1, 3]);
        assert_eq!(f.members(1), vec![2, 3]);
        assert_eq!(f.x_size, 4);
        let f = canonical_independent_family(1).unwrap();
        assert_eq!(f.members(0), vec![1]);
        assert_eq!(f.x_size, 2);
        for n in 1..=4 {
            assert!(canonical_independent_family(n).unwrap().independent());
        }
        assert!(canonical_independent_family(5).is_err());
        assert!(canonical_independent_family(0).is_err());
    }

    #[test]
    fn dependent_families_rejected() {
        assert!(!is_independent(&[0b0011, 0b0011], 4));
        assert!(!is_independent(&[0b1111], 4));
        assert!(is_independent(&[0b0001], 4));
    }
}
