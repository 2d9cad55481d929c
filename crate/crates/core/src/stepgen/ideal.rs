use std::collections::HashSet;

use serde::Serialize;

use super::product::Side;
use crate::additive::{closure_of_set, ElementSet, Subgroup};
use crate::ring::Elem;

/// Rings up to this size get an exhaustive ideal search.
pub const IDEAL_SEARCH_LIMIT: usize = 4096;

/// Number of ideals the exhaustive search may visit.
pub const IDEAL_STATE_BUDGET: usize = 200_000;

/// Grows `seed` to the smallest `side`-ideal containing it, giving up as soon
/// as an element outside `bound` appears.
fn grow_ideal<'r>(seed: &ElementSet<'r>, side: Side, bound: Option<&ElementSet<'r>>) -> Option<Subgroup<'r>> {
    let ring = seed.ring();
    let inside = |s: &ElementSet<'_>| bound.is_none_or(|b| s.is_subset(b));
    let mut ideal = closure_of_set(seed);
    if !inside(ideal.carrier()) {
        return None;
    }
    let basis = ring.additive_basis();
    let mut frontier = ideal.carrier().to_vec();
    while let Some(y) = frontier.pop() {
        for &b in &basis {
            let products: &[Elem] = match side {
                Side::Left => &[ring.mul(b, y)],
                Side::Right => &[ring.mul(y, b)],
                Side::TwoSided => &[ring.mul(b, y), ring.mul(y, b)],
            };
            for &p in products {
                if ideal.contains(p) {
                    continue;
                }
                if bound.is_some_and(|s| !s.contains(p)) {
                    return None;
                }
                let before = ideal.carrier().clone();
                ideal.adjoin(p);
                if !inside(ideal.carrier()) {
                    return None;
                }
                frontier.extend(ideal.carrier().difference(&before).iter());
            }
        }
    }
    Some(ideal)
}

/// The smallest additive subgroup containing `set` that is closed under
/// multiplication by ring elements on `side`.
pub fn ideal_closure<'r>(set: &ElementSet<'r>, side: Side) -> ElementSet<'r> {
    grow_ideal(set, side, None).expect("unbounded growth").into_carrier()
}

/// The two-sided ideal generated by `x`.
pub fn principal_ideal(ring: &crate::TabulatedRing, x: Elem) -> ElementSet<'_> {
    ideal_closure(&ElementSet::singleton(ring, x), Side::TwoSided)
}

/// Full-scan check that `set` is a two-sided ideal.
pub fn is_ideal(set: &ElementSet<'_>) -> bool {
    let ring = set.ring();
    if !set.contains(0) {
        return false;
    }
    let elems = set.to_vec();
    for &x in &elems {
        if !set.contains(ring.neg(x)) {
            return false;
        }
        for &y in &elems {
            if !set.contains(ring.add(x, y)) {
                return false;
            }
        }
        for r in ring.elements() {
            if !set.contains(ring.mul(r, x)) || !set.contains(ring.mul(x, r)) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealSearchResult<'r> {
    /// Largest two-sided ideal found inside the query set.
    #[serde(skip)]
    pub found: Option<ElementSet<'r>>,
    pub min_index: Option<usize>,
    /// The reported ideal has the least index among all ideals inside the set.
    pub exhaustive: bool,
    /// Elements whose principal ideal lies in the set.
    pub candidates: usize,
    pub distinct_principal: usize,
    pub states_visited: usize,
}

/// Searches for a two-sided ideal of least index contained in `s`.
pub fn find_ideal_within<'r>(s: &ElementSet<'r>) -> IdealSearchResult<'r> {
    let ring = s.ring();
    if !s.contains(0) {
        return IdealSearchResult {
            found: None,
            min_index: None,
            exhaustive: true,
            candidates: 0,
            distinct_principal: 0,
            states_visited: 0,
        };
    }
    let mut seen = HashSet::new();
    let mut principal: Vec<ElementSet<'r>> = Vec::new();
    let mut candidates = 0;
    for x in s.iter() {
        if let Some(p) = grow_ideal(&ElementSet::singleton(ring, x), Side::TwoSided, Some(s)) {
            candidates += 1;
            let p = p.into_carrier();
            if seen.insert(p.words().to_vec()) {
                principal.push(p);
            }
        }
    }
    principal.sort_by_key(|p| std::cmp::Reverse(p.len()));

    let mut total = ElementSet::zero(ring);
    for p in &principal {
        total = total.sum(p);
    }
    let finish = |best: ElementSet<'r>, exhaustive: bool, states: usize| IdealSearchResult {
        min_index: Some(ring.size() / best.len()),
        found: Some(best),
        exhaustive,
        candidates,
        distinct_principal: principal.len(),
        states_visited: states,
    };
    if total.is_subset(s) {
        // Every ideal inside s is generated by candidates, so this one contains them all.
        return finish(total, true, 1);
    }

    if ring.size() <= IDEAL_SEARCH_LIMIT {
        let mut search = Search {
            s,
            principal: &principal,
            memo: HashSet::new(),
            best: ElementSet::zero(ring),
            out_of_budget: false,
        };
        search.visit(ElementSet::zero(ring));
        let states = search.memo.len();
        let exhaustive = !search.out_of_budget;
        let best = search.best;
        return finish(best, exhaustive, states);
    }

    let mut best = ElementSet::zero(ring);
    for p in &principal {
        let next = best.sum(p);
        if next.is_subset(s) {
            best = next;
        }
    }
    finish(best, false, principal.len())
}

struct Search<'a, 'r> {
    s: &'a ElementSet<'r>,
    principal: &'a [ElementSet<'r>],
    memo: HashSet<Vec<u64>>,
    best: ElementSet<'r>,
    out_of_budget: bool,
}

impl<'r> Search<'_, 'r> {
    fn visit(&mut self, current: ElementSet<'r>) {
        if self.out_of_budget {
            return;
        }
        if self.memo.len() >= IDEAL_STATE_BUDGET {
            self.out_of_budget = true;
            return;
        }
        if !self.memo.insert(current.words().to_vec()) {
            return;
        }
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        for p in self.principal {
            if p.is_subset(&current) {
                continue;
            }
            let next = current.sum(p);
            if next.is_subset(self.s) {
                self.visit(next);
            }
        }
    }
}
