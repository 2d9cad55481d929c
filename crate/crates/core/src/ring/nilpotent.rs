//! Symbolic elements of the free commutative ring of characteristic 2 and
//! nilpotency class 3 on generators `X_0, .., X_{k-1}`.
//!
//! Elements are Z_2-combinations of the `X_i` and of the monomials
//! `X_j X_i` with `j <= i`. The ring is never tabulated.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Nilpotent3Element {
    /// Indices `i` with `a_i = 1`.
    pub linear: BTreeSet<usize>,
    /// Pairs `(j, i)`, `j <= i`, with `a_{ji} = 1`.
    pub quadratic: BTreeSet<(usize, usize)>,
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn toggle<T: Ord>(set: &mut BTreeSet<T>, v: T) {
    if !set.remove(&v) {
        set.insert(v);
    }
}

impl Nilpotent3Element {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The generator `X_i`.
    pub fn generator(i: usize, k: usize) -> Result<Self> {
        if i >= k {
            return Err(Error::IndexOutOfRange { index: i, count: k });
        }
        let mut x = Self::zero();
        x.linear.insert(i);
        Ok(x)
    }

    /// Sum of the generators with the given indices (each at most once).
    pub fn sum_of_generators(indices: &[usize], k: usize) -> Result<Self> {
        let mut x = Self::zero();
        for &i in indices {
            x = x.add(&Self::generator(i, k)?);
        }
        Ok(x)
    }

    /// The monomial `X_a X_b`.
    pub fn monomial(a: usize, b: usize, k: usize) -> Result<Self> {
        for i in [a, b] {
            if i >= k {
                return Err(Error::IndexOutOfRange { index: i, count: k });
            }
        }
        let mut x = Self::zero();
        x.quadratic.insert(ordered(a, b));
        Ok(x)
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_empty() && self.quadratic.is_empty()
    }

    pub fn check_indices(&self, k: usize) -> Result<()> {
        let worst = self.linear.iter().copied().chain(self.quadratic.iter().map(|&(_, i)| i)).max();
        match worst {
            Some(i) if i >= k => Err(Error::IndexOutOfRange { index: i, count: k }),
            _ => Ok(()),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for &i in &other.linear {
            toggle(&mut out.linear, i);
        }
        for &p in &other.quadratic {
            toggle(&mut out.quadratic, p);
        }
        out
    }

    /// The quadratic terms `X_j X_i` present in `self`, as ordered pairs.
    pub fn quadratic_terms(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.quadratic.iter().copied()
    }
}

impl fmt::Display for Nilpotent3Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.linear.iter().map(|i| format!("X{i}")).collect();
        for &(j, i) in &self.quadratic {
            if i == j {
                parts.push(format!("X{i}^2"));
            } else {
                parts.push(format!("X{j}X{i}"));
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Product in the class-3 nilpotent ring on `k` generators.
pub fn nilpotent3_mul(x: &Nilpotent3Element, y: &Nilpotent3Element, k: usize) -> Result<Nilpotent3Element> {
    x.check_indices(k)?;
    y.check_indices(k)?;
    let mut out = Nilpotent3Element::zero();
    for &a in &x.linear {
        for &b in &y.linear {
            toggle(&mut out.quadratic, ordered(a, b));
        }
    }
    Ok(out)
}

/// Whether the quadratic coefficient `a_{ji}` (`j <= i`) enters `h`.
pub fn h_counts_pair(j: usize, i: usize) -> bool {
    let (j, i) = ordered(j, i);
    i > 0 && j < usize::BITS as usize && i % (1usize << j) == 0
}

/// The homomorphism `h : (R, +) -> Z_2`: odd-index linear coefficients plus the
/// quadratic coefficients `a_{ji}` with `i` a positive multiple of `2^j`.
pub fn h(x: &Nilpotent3Element) -> u8 {
    let odd = x.linear.iter().filter(|&&i| i % 2 == 1).count();
    let quad = x.quadratic.iter().filter(|&&(j, i)| h_counts_pair(j, i)).count();
    ((odd + quad) % 2) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(i: usize) -> Nilpotent3Element {
        Nilpotent3Element::generator(i, 9).unwrap()
    }

    #[test]
    fn product_of_generators() {
        let p = nilpotent3_mul(&gen(0), &gen(1), 9).unwrap();
        assert_eq!(p, Nilpotent3Element::monomial(0, 1, 9).unwrap());
    }

    #[test]
    fn triple_products_vanish() {
        let p = nilpotent3_mul(&gen(0), &gen(1), 9).unwrap();
        assert!(nilpotent3_mul(&p, &gen(2), 9).unwrap().is_zero());
    }

    #[test]
    fn square_of_sum_has_no_cross_term() {
        let s = gen(0).add(&gen(1));
        let sq = nilpotent3_mul(&s, &s, 9).unwrap();
        let expected =
            Nilpotent3Element::monomial(0, 0, 9).unwrap().add(&Nilpotent3Element::monomial(1, 1, 9).unwrap());
        assert_eq!(sq, expected);
        assert_eq!(sq.to_string(), "X0^2 + X1^2");
    }

    #[test]
    fn index_range_enforced() {
        assert!(matches!(Nilpotent3Element::generator(9, 9), Err(Error::IndexOutOfRange { index: 9, count: 9 })));
        let big = Nilpotent3Element::generator(12, 20).unwrap();
        assert!(nilpotent3_mul(&big, &gen(1), 9).is_err());
    }

    #[test]
    fn h_on_witness_terms() {
        assert_eq!(h(&Nilpotent3Element::monomial(1, 2, 9).unwrap()), 1);
        assert_eq!(h(&Nilpotent3Element::monomial(3, 2, 9).unwrap()), 0);
        assert_eq!(h(&Nilpotent3Element::monomial(3, 8, 9).unwrap()), 1);
        assert_eq!(h(&gen(3)), 1);
        assert_eq!(h(&gen(2)), 0);
        assert_eq!(h(&Nilpotent3Element::monomial(0, 0, 9).unwrap()), 0);
        assert_eq!(h(&Nilpotent3Element::monomial(0, 5, 9).unwrap()), 1);
    }
}
