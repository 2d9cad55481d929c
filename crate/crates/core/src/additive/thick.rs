use serde::{Deserialize, Serialize};

use std::collections::HashMap;

use super::ElementSet;
use crate::error::{Error, Result};
use crate::ring::{Elem, TabulatedRing};

pub const DEFAULT_THICKNESS_CAP: u32 = 16;

/// Rings up to this size get an exact minimal cover.
pub const EXACT_COVER_LIMIT: usize = 4096;

/// Work budget, in bit-word operations, for one exact cover search.
pub const COVER_WORK_BUDGET: u64 = 40_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "n", rename_all = "snake_case")]
pub enum Thickness {
    /// Minimal `n` such that the set is `n`-thick.
    Thick(u32),
    NotSymmetric,
    /// `0` is missing, so constant sequences avoid the set and no `n` works.
    NotThick,
    ExceedsCap,
}

impl Thickness {
    pub fn value(self) -> Option<u32> {
        match self {
            Thickness::Thick(n) => Some(n),
            _ => None,
        }
    }
}

/// Minimal `n` such that among any `n` elements two have their difference in `D`.
pub fn thickness(d: &ElementSet<'_>, cap: u32) -> Thickness {
    if !d.is_symmetric() {
        return Thickness::NotSymmetric;
    }
    if !d.contains(0) {
        return Thickness::NotThick;
    }
    // Longest sequence with no difference in D = largest clique of the graph
    // x ~ y iff y - x not in D; by translation it may be assumed to contain 0.
    let mut search = Clique { d, best: 1, limit: cap.saturating_sub(1) as usize };
    let candidates = d.complement();
    search.extend(1, candidates);
    let n = search.best as u32 + 1;
    if n > cap {
        Thickness::ExceedsCap
    } else {
        Thickness::Thick(n)
    }
}

struct Clique<'a, 'r> {
    d: &'a ElementSet<'r>,
    best: usize,
    limit: usize,
}

impl Clique<'_, '_> {
    fn extend(&mut self, size: usize, candidates: ElementSet<'_>) {
        if size > self.best {
            self.best = size;
        }
        if self.best > self.limit {
            return;
        }
        let mut rest = candidates;
        while !rest.is_empty() {
            if size + rest.len() <= self.best {
                return;
            }
            let x = rest.iter().next().expect("nonempty");
            rest.remove(x);
            // y is compatible with x iff y - x not in D, i.e. y not in x + D.
            let next = rest.difference(&self.d.translate(x));
            self.extend(size + 1, next);
            if self.best > self.limit {
                return;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Genericity {
    /// Minimal number of translates, with the translating elements.
    Exact {
        n: u32,
        translates: Vec<Elem>,
    },
    /// A cover found greedily; the minimum may be smaller.
    UpperBound {
        n: u32,
        translates: Vec<Elem>,
    },
    ExceedsCap,
}

impl Genericity {
    pub fn exact(&self) -> Option<u32> {
        match self {
            Genericity::Exact { n, .. } => Some(*n),
            _ => None,
        }
    }

    pub fn bound(&self) -> Option<u32> {
        match self {
            Genericity::Exact { n, .. } | Genericity::UpperBound { n, .. } => Some(*n),
            Genericity::ExceedsCap => None,
        }
    }
}

/// Minimal number of additive translates of `D` covering the ring.
///
/// The minimum is proved by branch and bound for rings up to
/// [`EXACT_COVER_LIMIT`] within [`COVER_WORK_BUDGET`]; otherwise a greedy
/// cover is returned as an upper bound.
pub fn genericity_number(d: &ElementSet<'_>, cap: u32) -> Result<Genericity> {
    if d.is_empty() {
        return Err(Error::EmptySet);
    }
    let ring = d.ring();
    let size = ring.size();
    let lower = size.div_ceil(d.len()) as u32;
    if lower > cap {
        return Ok(Genericity::ExceedsCap);
    }
    let greedy = greedy_cover(d);
    let found = greedy.len() as u32;
    if size <= EXACT_COVER_LIMIT {
        if found == lower {
            return Ok(Genericity::Exact { n: lower, translates: greedy });
        }
        let mut search = Cover::new(d);
        for k in lower..found.min(cap.saturating_add(1)) {
            match search.covers_with(k) {
                Some(true) => {
                    let mut translates = search.chosen_elements();
                    translates.sort_unstable();
                    return Ok(Genericity::Exact { n: k, translates });
                }
                Some(false) => {}
                None => break,
            }
        }
        if !search.exhausted {
            return Ok(if found > cap {
                Genericity::ExceedsCap
            } else {
                Genericity::Exact { n: found, translates: greedy }
            });
        }
    }
    if found > cap {
        return Ok(Genericity::ExceedsCap);
    }
    Ok(Genericity::UpperBound { n: found, translates: greedy })
}

fn greedy_cover(d: &ElementSet<'_>) -> Vec<Elem> {
    let ring = d.ring();
    let mut covered = ElementSet::empty(ring);
    let mut chosen = Vec::new();
    let neg = d.negation();
    while !covered.is_full() {
        let u = covered.complement().iter().next().expect("uncovered element");
        // Translates t + D containing u have t in u - D; take the one covering most.
        let best = neg
            .translate(u)
            .iter()
            .max_by_key(|&t| (d.translate(t).difference(&covered).len(), std::cmp::Reverse(t)))
            .expect("D nonempty");
        covered.union_with(&d.translate(best));
        chosen.push(best);
    }
    chosen
}

/// Exact cover search over the distinct translates of `D`, as raw bit words.
struct Cover<'r> {
    ring: &'r TabulatedRing,
    d: Vec<Elem>,
    /// Distinct translates and one translating element for each.
    sets: Vec<Vec<u64>>,
    reps: Vec<Elem>,
    /// Index into `sets` of `t + D`, for every `t`.
    class: Vec<usize>,
    budget: u64,
    exhausted: bool,
    chosen: Vec<usize>,
}

impl<'r> Cover<'r> {
    fn new(d: &ElementSet<'r>) -> Self {
        let ring = d.ring();
        let mut sets: Vec<Vec<u64>> = Vec::new();
        let mut reps = Vec::new();
        let mut index = HashMap::new();
        let class = ring
            .elements()
            .map(|t| {
                let words = d.translate(t).words().to_vec();
                *index.entry(words.clone()).or_insert_with(|| {
                    sets.push(words);
                    reps.push(t);
                    sets.len() - 1
                })
            })
            .collect();
        Cover {
            ring,
            d: d.to_vec(),
            sets,
            reps,
            class,
            budget: COVER_WORK_BUDGET,
            exhausted: false,
            chosen: Vec::new(),
        }
    }

    fn chosen_elements(&self) -> Vec<Elem> {
        self.chosen.iter().map(|&c| self.reps[c]).collect()
    }

    /// `Some(true)` if `k >= 1` translates cover the ring, `None` when out of budget.
    ///
    /// Translating a cover keeps it a cover, so the first translate is `D` itself.
    fn covers_with(&mut self, k: u32) -> Option<bool> {
        let first = self.class[0];
        self.chosen = vec![first];
        let found = self.search(self.sets[first].clone(), k - 1);
        if !found {
            self.chosen.clear();
        }
        if self.exhausted {
            None
        } else {
            Some(found)
        }
    }

    fn search(&mut self, covered: Vec<u64>, k: u32) -> bool {
        let size = self.ring.size();
        let missing = size - covered.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        if missing == 0 {
            return true;
        }
        if k == 0 || missing > k as usize * self.d.len() {
            return false;
        }
        let cost = covered.len() as u64 * (self.d.len() as u64 + 1);
        if self.budget < cost {
            self.exhausted = true;
            return false;
        }
        self.budget -= cost;
        let u = covered
            .iter()
            .enumerate()
            .find(|(_, &w)| w != u64::MAX)
            .map(|(i, &w)| (i * 64 + (!w).trailing_zeros() as usize) as Elem)
            .expect("uncovered element exists");
        // Every cover has a translate t + D containing u, so t lies in u - D.
        let mut options: Vec<(usize, usize)> = Vec::with_capacity(self.d.len());
        for &x in &self.d {
            let c = self.class[self.ring.add(u, self.ring.neg(x)) as usize];
            if options.iter().all(|&(o, _)| o != c) {
                let gain = self.sets[c].iter().zip(&covered).map(|(s, c)| (s & !c).count_ones() as usize).sum();
                options.push((c, gain));
            }
        }
        options.sort_by_key(|&(c, gain)| (std::cmp::Reverse(gain), c));
        for (c, gain) in options {
            if k == 1 && gain < missing {
                break;
            }
            let next: Vec<u64> = covered.iter().zip(&self.sets[c]).map(|(a, b)| a | b).collect();
            self.chosen.push(c);
            if self.search(next, k - 1) {
                return true;
            }
            self.chosen.pop();
            if self.exhausted {
                return false;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::additive::closure;

    #[test]
    fn thickness_examples() {
        let z6 = TabulatedRing::zq_power(6, 1).unwrap();
        assert_eq!(thickness(&ElementSet::full(&z6), 16), Thickness::Thick(2));
        assert_eq!(thickness(&ElementSet::from_elems(&z6, [0, 2, 4]), 16), Thickness::Thick(3));
        let z2 = TabulatedRing::zq_power(2, 1).unwrap();
        assert_eq!(thickness(&ElementSet::zero(&z2), 16), Thickness::Thick(3));
    }

    #[test]
    fn thickness_verdicts() {
        let z6 = TabulatedRing::zq_power(6, 1).unwrap();
        assert_eq!(thickness(&ElementSet::from_elems(&z6, [0, 1]), 16), Thickness::NotSymmetric);
        assert_eq!(thickness(&ElementSet::from_elems(&z6, [1, 5]), 16), Thickness::NotThick);
        let big = TabulatedRing::boolean(8).unwrap();
        assert_eq!(thickness(&ElementSet::zero(&big), 16), Thickness::ExceedsCap);
        assert_eq!(thickness(&ElementSet::zero(&z6), 16), Thickness::Thick(7));
        assert_eq!(thickness(&ElementSet::zero(&z6), 7), Thickness::Thick(7));
        assert_eq!(thickness(&ElementSet::zero(&z6), 6), Thickness::ExceedsCap);
    }

    #[test]
    fn thickness_two_iff_everything() {
        let z4 = TabulatedRing::zq_power(4, 1).unwrap();
        for mask in 0u32..16 {
            let d = ElementSet::from_elems(&z4, (0..4).filter(|i| mask >> i & 1 == 1));
            let all_pairs = (0..4).all(|a| (0..4).all(|b| d.contains(z4.sub(b, a))));
            assert_eq!(thickness(&d, 16) == Thickness::Thick(2), all_pairs);
        }
    }

    #[test]
    fn genericity_examples() {
        let z4 = TabulatedRing::zq_power(4, 1).unwrap();
        assert_eq!(genericity_number(&ElementSet::full(&z4), 16).unwrap().exact(), Some(1));
        let g = genericity_number(&ElementSet::from_elems(&z4, [0, 1]), 16).unwrap();
        assert_eq!(g.exact(), Some(2));
        let r = TabulatedRing::zq_power(2, 4).unwrap();
        let h = closure(&r, &[1, 2]);
        assert_eq!(genericity_number(h.carrier(), 16).unwrap().exact(), Some(4));
        assert_eq!(genericity_number(&ElementSet::empty(&z4), 16), Err(Error::EmptySet));
    }

    #[test]
    fn genericity_beats_greedy_lower_bound() {
        // {0,1,3} in Z_7 cannot cover in 2 translates (6 < 7) but 3 suffice.
        let z7 = TabulatedRing::zq_power(7, 1).unwrap();
        let g = genericity_number(&ElementSet::from_elems(&z7, [0, 1, 3]), 16).unwrap();
        assert_eq!(g.exact(), Some(3));
        let z8 = TabulatedRing::zq_power(8, 1).unwrap();
        let g = genericity_number(&ElementSet::from_elems(&z8, [1, 7]), 16).unwrap();
        assert_eq!(g.exact(), Some(4));
    }

    fn translates_cover(d: &ElementSet<'_>, ts: &[Elem]) -> bool {
        let mut u = ElementSet::empty(d.ring());
        for &t in ts {
            u.union_with(&d.translate(t));
        }
        u.is_full()
    }

    #[test]
    fn cover_witnesses_are_covers() {
        let r = TabulatedRing::zq_power(3, 3).unwrap();
        let d = ElementSet::from_elems(&r, [0, 1, 2, 4, 13, 26]);
        match genericity_number(&d, 27).unwrap() {
            Genericity::Exact { n, translates } => {
                assert_eq!(translates.len(), n as usize);
                assert!(translates_cover(&d, &translates));
            }
            other => panic!("{other:?}"),
        }
    }
}
