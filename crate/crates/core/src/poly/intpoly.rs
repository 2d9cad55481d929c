use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Sparse polynomial in one variable with exact integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    terms: BTreeMap<u64, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(0, c)
    }

    /// `c * X^e`.
    pub fn monomial(e: u64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// `X^e`.
    pub fn x_pow(e: u64) -> Self {
        Self::monomial(e, 1)
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (u64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn add_term(&mut self, e: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn coefficient(&self, e: u64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Least exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<u64> {
        self.terms.keys().next().copied()
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        IntPoly { terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect() }
    }

    /// Coefficients reduced into `[0, m)`.
    pub fn reduce_coefficients(&self, m: &BigInt) -> Self {
        Self::from_terms(self.terms.iter().map(|(&e, c)| (e, c.mod_floor(m))))
    }

    /// Exponents of the terms with odd coefficient.
    pub fn odd_support(&self) -> impl Iterator<Item = u64> + '_ {
        self.terms.iter().filter(|(_, c)| c.is_odd()).map(|(&e, _)| e)
    }
}

impl std::ops::Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl std::ops::Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly { terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect() }
    }
}

impl std::ops::Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl std::ops::Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        let mut out = IntPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = magnitude.is_one();
            match e {
                0 => write!(f, "{magnitude}")?,
                1 if unit => write!(f, "X")?,
                1 => write!(f, "{magnitude}X")?,
                _ if unit => write!(f, "X^{e}")?,
                _ => write!(f, "{magnitude}X^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(u64, String)> = self.terms.iter().map(|(&e, c)| (e, c.to_string())).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(u64, String)> = Vec::deserialize(d)?;
        let mut p = IntPoly::zero();
        for (e, c) in pairs {
            let c: BigInt = c.parse().map_err(serde::de::Error::custom)?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        let p = IntPoly::from_terms([(4, 1), (2, 3), (0, 6)]);
        assert_eq!(p.to_string(), "X^4 + 3X^2 + 6");
        let q = IntPoly::from_terms([(4, 1), (2, -1), (1, 2)]);
        assert_eq!(q.to_string(), "X^4 - X^2 + 2X");
        assert_eq!((-&IntPoly::x_pow(1)).to_string(), "-X");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    #[test]
    fn cancellation_drops_terms() {
        let p = IntPoly::from_terms([(3, 1), (5, -1)]);
        let s = &p + &IntPoly::from_terms([(3, -1)]);
        assert_eq!(s, IntPoly::monomial(5, -1));
        assert_eq!(s.term_count(), 1);
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn big_coefficients() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let p = IntPoly::monomial(2, big.clone());
        let sq = &p * &p;
        assert_eq!(sq.coefficient(4), &big * &big);
        assert_eq!(sq.degree(), Some(4));
    }

    #[test]
    fn serde_round_trip() {
        let p = IntPoly::from_terms([(9, 1), (3, -1), (1, 6)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, r#"[[1,"6"],[3,"-1"],[9,"1"]]"#);
        assert_eq!(serde_json::from_str::<IntPoly>(&json).unwrap(), p);
    }

    #[test]
    fn content_and_valuation() {
        let p = IntPoly::from_terms([(3, 6), (1, 4)]);
        assert_eq!(p.content(), BigInt::from(2));
        assert_eq!(p.valuation(), Some(1));
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec((0u64..12, -20i64..20), 0..6).prop_map(IntPoly::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) - &b, a);
        }
    }
}
