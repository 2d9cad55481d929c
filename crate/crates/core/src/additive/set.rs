use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::ring::{Elem, TabulatedRing};

/// Dense indicator subset of a ring's elements.
#[derive(Clone)]
pub struct ElementSet<'r> {
    ring: &'r TabulatedRing,
    words: Vec<u64>,
}

const SWAP_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Moves bit `b` of `word` to bit `b ^ s` for `s < 64`.
#[inline]
fn xor_permute(mut word: u64, s: u32) -> u64 {
    for (k, mask) in SWAP_MASKS.iter().enumerate() {
        if s >> k & 1 == 1 {
            let w = 1u32 << k;
            word = ((word & mask) << w) | ((word >> w) & mask);
        }
    }
    word
}

impl<'r> ElementSet<'r> {
    pub fn empty(ring: &'r TabulatedRing) -> Self {
        ElementSet { ring, words: vec![0; ring.size().div_ceil(64)] }
    }

    pub fn full(ring: &'r TabulatedRing) -> Self {
        let mut s = Self::empty(ring);
        for x in ring.elements() {
            s.insert(x);
        }
        s
    }

    pub fn singleton(ring: &'r TabulatedRing, x: Elem) -> Self {
        let mut s = Self::empty(ring);
        s.insert(x);
        s
    }

    /// The set `{0}`.
    pub fn zero(ring: &'r TabulatedRing) -> Self {
        Self::singleton(ring, 0)
    }

    pub fn from_elems(ring: &'r TabulatedRing, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(ring);
        for x in elems {
            s.insert(x);
        }
        s
    }

    pub fn ring(&self) -> &'r TabulatedRing {
        self.ring
    }

    fn same_ring(&self, other: &ElementSet<'_>) -> Result<()> {
        if std::ptr::eq(self.ring, other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        let x = x as usize;
        x < self.ring.size() && self.words[x >> 6] >> (x & 63) & 1 == 1
    }

    /// Inserts `x`, returning whether it was new.
    #[inline]
    pub fn insert(&mut self, x: Elem) -> bool {
        assert!((x as usize) < self.ring.size(), "element {x} outside ring of size {}", self.ring.size());
        let (w, b) = (x as usize >> 6, x & 63);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, x: Elem) -> bool {
        if !self.contains(x) {
            return false;
        }
        self.words[x as usize >> 6] &= !(1 << (x & 63));
        true
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.ring.size()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some((i as u32) << 6 | b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<Elem> {
        self.iter().collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_subset(&self, other: &ElementSet<'_>) -> bool {
        std::ptr::eq(self.ring, other.ring) && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &ElementSet<'_>) {
        assert!(std::ptr::eq(self.ring, other.ring), "ring mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &ElementSet<'_>) -> Self {
        let mut out = self.clone();
        out.union_with(other);
        out
    }

    pub fn intersection(&self, other: &ElementSet<'_>) -> Self {
        assert!(std::ptr::eq(self.ring, other.ring), "ring mismatch");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        ElementSet { ring: self.ring, words }
    }

    pub fn difference(&self, other: &ElementSet<'_>) -> Self {
        assert!(std::ptr::eq(self.ring, other.ring), "ring mismatch");
        let words = self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect();
        ElementSet { ring: self.ring, words }
    }

    pub fn complement(&self) -> Self {
        ElementSet::full(self.ring).difference(self)
    }

    /// `{-x : x in self}`.
    pub fn negation(&self) -> Self {
        if self.ring.is_xor() {
            return self.clone();
        }
        Self::from_elems(self.ring, self.iter().map(|x| self.ring.neg(x)))
    }

    pub fn is_symmetric(&self) -> bool {
        self.ring.is_xor() || self.iter().all(|x| self.contains(self.ring.neg(x)))
    }

    /// `self + d`.
    pub fn translate(&self, d: Elem) -> Self {
        let mut out = Self::empty(self.ring);
        out.or_translate(self, d);
        out
    }

    /// `self |= src + d`.
    pub(crate) fn or_translate(&mut self, src: &ElementSet<'_>, d: Elem) {
        let ring = self.ring;
        if ring.is_xor() {
            let shift = (d >> 6) as usize;
            let low = d & 63;
            for (w, &word) in src.words.iter().enumerate() {
                if word != 0 {
                    self.words[w ^ shift] |= xor_permute(word, low);
                }
            }
        } else {
            for x in src.iter() {
                self.insert(ring.add(x, d));
            }
        }
    }

    /// `{a + b : a in self, b in other}`.
    pub fn sumset(&self, other: &ElementSet<'_>) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.sum(other))
    }

    /// As [`ElementSet::sumset`], panicking on ring mismatch.
    pub fn sum(&self, other: &ElementSet<'_>) -> Self {
        assert!(std::ptr::eq(self.ring, other.ring), "ring mismatch");
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut out = Self::empty(self.ring);
        for d in small.iter() {
            out.or_translate(large, d);
            if out.is_full() {
                break;
            }
        }
        out
    }

    /// The `n`-fold sum `D + .. + D`; `n = 0` gives `{0}`.
    pub fn n_fold_sum(&self, n: u32) -> Self {
        let mut acc = Self::zero(self.ring);
        for _ in 0..n {
            acc = acc.sum(self);
        }
        acc
    }

    /// The elements of `self` as a short display, with structural decodes.
    pub fn describe(&self, limit: usize) -> String {
        let mut items: Vec<String> = self.iter().take(limit).map(|x| self.ring.decode(x)).collect();
        if self.len() > limit {
            items.push(format!("... ({} total)", self.len()));
        }
        format!("{{{}}}", items.join(", "))
    }
}

impl PartialEq for ElementSet<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.ring, other.ring) && self.words == other.words
    }
}

impl Eq for ElementSet<'_> {}

impl Hash for ElementSet<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.words.hash(state);
    }
}

impl fmt::Debug for ElementSet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn xor_permute_matches_bitwise() {
        for s in 0..64 {
            for b in 0..64 {
                assert_eq!(xor_permute(1u64 << b, s), 1u64 << (b ^ s));
            }
        }
    }

    #[test]
    fn z4_sumset() {
        let r = TabulatedRing::zq_power(4, 1).unwrap();
        let d = ElementSet::from_elems(&r, [0, 1]);
        assert_eq!(d.sum(&d).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn identity_case() {
        let r = TabulatedRing::zq_power(3, 2).unwrap();
        let d = ElementSet::from_elems(&r, [1, 5, 7]);
        assert_eq!(d.sum(&ElementSet::zero(&r)), d);
        assert_eq!(d.n_fold_sum(1), d);
        assert_eq!(d.n_fold_sum(0), ElementSet::zero(&r));
    }

    #[test]
    fn z2_fourth_sumset() {
        let r = TabulatedRing::zq_power(2, 4).unwrap();
        let e = |i: u32| 1u32 << (i - 1);
        let a = ElementSet::from_elems(&r, [e(1), e(2)]);
        let b = ElementSet::from_elems(&r, [e(3)]);
        let s = a.sum(&b);
        assert_eq!(s.to_vec(), vec![e(1) | e(3), e(2) | e(3)]);
    }

    #[test]
    fn mismatched_rings() {
        let r = TabulatedRing::zq_power(2, 2).unwrap();
        let t = TabulatedRing::zq_power(2, 2).unwrap();
        let a = ElementSet::zero(&r);
        let b = ElementSet::zero(&t);
        assert_eq!(a.sumset(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn iter_and_remove() {
        let r = TabulatedRing::boolean(8).unwrap();
        let mut s = ElementSet::from_elems(&r, [3, 64, 200, 255]);
        assert_eq!(s.to_vec(), vec![3, 64, 200, 255]);
        assert!(s.remove(64));
        assert!(!s.remove(64));
        assert_eq!(s.len(), 3);
        assert!(!s.contains(1000));
    }

    fn brute_sum<'r>(a: &ElementSet<'r>, b: &ElementSet<'r>) -> ElementSet<'r> {
        let ring = a.ring();
        let mut out = ElementSet::empty(ring);
        for x in a.iter() {
            for y in b.iter() {
                out.insert(ring.add(x, y));
            }
        }
        out
    }

    proptest! {
        #[test]
        fn xor_kernel_matches_pairs(xs in proptest::collection::vec(0u32..1024, 0..20), ys in proptest::collection::vec(0u32..1024, 0..20)) {
            let r = TabulatedRing::boolean(10).unwrap();
            let a = ElementSet::from_elems(&r, xs);
            let b = ElementSet::from_elems(&r, ys);
            prop_assert_eq!(a.sum(&b), brute_sum(&a, &b));
        }

        #[test]
        fn sumset_commutes_and_associates(xs in proptest::collection::vec(0u32..36, 1..8), ys in proptest::collection::vec(0u32..36, 1..8), zs in proptest::collection::vec(0u32..36, 1..8)) {
            let r = TabulatedRing::zq_power(6, 2).unwrap();
            let a = ElementSet::from_elems(&r, xs);
            let b = ElementSet::from_elems(&r, ys);
            let c = ElementSet::from_elems(&r, zs);
            prop_assert_eq!(a.sum(&b), b.sum(&a));
            prop_assert_eq!(a.sum(&b).sum(&c), a.sum(&b.sum(&c)));
        }
    }
}
