use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::nilpotent::random_element;
use super::report::{ReportBuilder, ScenarioReport, Verdict};
use super::{Caps, Context, Params};
use crate::additive::{
    closure, enumerate_subgroups, genericity_number, is_coset_independent, thickness, triangularize, ElementSet,
    Genericity, Subgroup, Thickness,
};
use crate::error::{Error, Result};
use crate::poly::{
    certify_not_in_rh, coset_representative, in_h, in_rr_possible, is_prime, quotient_element, reduce_mod_im,
    CertificateVerdict, IntPoly,
};
use crate::ring::nilpotent::{h, nilpotent3_mul};
use crate::ring::{check_ring_axioms, Elem, RingDescriptor, TabulatedRing};
use crate::stepgen::{
    find_ideal_within, half_step_set, ideal_closure, is_ideal, is_subgroup_set, min_steps_to_group, product_set, Side,
    SideMode,
};

const CLAIM: &str = "the module invariants over a seeded corpus of rings, subgroups and polynomials";

const MODES: [SideMode; 6] = [
    SideMode::LEFT,
    SideMode::RIGHT,
    SideMode::TWO_SIDED,
    SideMode::LEFT_UNIT,
    SideMode::RIGHT_UNIT,
    SideMode::TWO_SIDED_UNIT,
];

/// A named ring construction in the test corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusRing {
    pub descriptor: RingDescriptor,
    /// Whether the construction has a multiplicative identity.
    pub unital: bool,
}

impl CorpusRing {
    pub fn build(&self) -> Result<TabulatedRing> {
        self.descriptor.build()
    }
}

/// The fixed corpus, ordered by construction kind and then size.
pub fn corpus_rings() -> Vec<CorpusRing> {
    use RingDescriptor::*;
    let unital = [
        ZqPower { q: 2, n: 1 },
        ZqPower { q: 2, n: 2 },
        ZqPower { q: 2, n: 3 },
        ZqPower { q: 2, n: 4 },
        ZqPower { q: 2, n: 5 },
        ZqPower { q: 2, n: 6 },
        ZqPower { q: 3, n: 1 },
        ZqPower { q: 3, n: 2 },
        ZqPower { q: 3, n: 3 },
        ZqPower { q: 4, n: 1 },
        ZqPower { q: 4, n: 2 },
        ZqPower { q: 4, n: 3 },
        ZqPower { q: 5, n: 2 },
        ZqPower { q: 6, n: 1 },
        ZqPower { q: 6, n: 2 },
        ZqPower { q: 7, n: 2 },
        ZqPower { q: 8, n: 1 },
        ZqPower { q: 8, n: 2 },
        ZqPower { q: 9, n: 2 },
        ZqPower { q: 12, n: 1 },
        ZqPower { q: 64, n: 1 },
        ZqPower { q: 256, n: 1 },
        ZqPower { q: 512, n: 1 },
        ZqPower { q: 4096, n: 1 },
        Boolean { x_size: 2 },
        Boolean { x_size: 3 },
        Boolean { x_size: 4 },
        Boolean { x_size: 5 },
        PolyQuotient { k: 2, l: 3, kp: 1 },
        PolyQuotient { k: 3, l: 2, kp: 0 },
        PolyQuotient { k: 2, l: 4, kp: 1 },
        PolyQuotient { k: 2, l: 4, kp: 2 },
        PolyQuotient { k: 4, l: 2, kp: 1 },
        PolyQuotient { k: 2, l: 5, kp: 1 },
        PolyQuotient { k: 6, l: 2, kp: 0 },
        PolyQuotient { k: 4, l: 3, kp: 1 },
        PolyQuotient { k: 5, l: 3, kp: 0 },
        Exotic { a: 1, b: 1 },
        Exotic { a: 1, b: 2 },
        Exotic { a: 2, b: 1 },
        Exotic { a: 2, b: 2 },
    ];
    let zero = [Zero { modulus: 2, dim: 3 }, Zero { modulus: 3, dim: 2 }, Zero { modulus: 4, dim: 2 }];
    unital
        .into_iter()
        .map(|descriptor| CorpusRing { descriptor, unital: true })
        .chain(zero.into_iter().map(|descriptor| CorpusRing { descriptor, unital: false }))
        .collect()
}

/// A single overridden product, used to check that the properties detect corrupted rings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fault {
    pub ring: RingDescriptor,
    pub x: Elem,
    pub y: Elem,
    pub value: Elem,
}

struct Tally {
    name: &'static str,
    instances: usize,
    failures: usize,
    witness: Option<Value>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, instances: 0, failures: 0, witness: None }
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }
}

/// Removes elements one at a time while `fails` keeps holding.
fn shrink(mut elems: Vec<Elem>, fails: impl Fn(&[Elem]) -> bool) -> Vec<Elem> {
    'outer: loop {
        for i in 0..elems.len() {
            let mut smaller = elems.clone();
            smaller.remove(i);
            if fails(&smaller) {
                elems = smaller;
                continue 'outer;
            }
        }
        return elems;
    }
}

fn random_set<'r>(ring: &'r TabulatedRing, rng: &mut ChaCha8Rng, density: f64) -> ElementSet<'r> {
    ElementSet::from_elems(ring, ring.elements().filter(|_| rng.gen_bool(density)).collect::<Vec<_>>())
}

fn random_elems(ring: &TabulatedRing, rng: &mut ChaCha8Rng, max: usize) -> Vec<Elem> {
    let k = rng.gen_range(0..=max);
    (0..k).map(|_| rng.gen_range(0..ring.size() as Elem)).collect()
}

fn random_subgroup<'r>(ring: &'r TabulatedRing, rng: &mut ChaCha8Rng) -> Subgroup<'r> {
    let gens = random_elems(ring, rng, 3);
    closure(ring, &gens)
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: u64, max_terms: usize, coef: i64) -> IntPoly {
    let k = rng.gen_range(0..=max_terms);
    IntPoly::from_terms((0..k).map(|_| (rng.gen_range(0..=max_deg), rng.gen_range(-coef..=coef))).collect::<Vec<_>>())
}

fn set_json(set: &[Elem], ring: &TabulatedRing) -> Value {
    json!(set.iter().map(|&x| ring.decode(x)).collect::<Vec<_>>())
}

fn pick<'a>(rings: &'a [TabulatedRing], rng: &mut ChaCha8Rng) -> &'a TabulatedRing {
    rings.choose(rng).expect("nonempty ring list")
}

fn prop_ring_axioms(t: &mut Tally, corpus: &[(CorpusRing, TabulatedRing)], rng: &mut ChaCha8Rng, budget: usize) {
    for (c, ring) in corpus {
        let rep = check_ring_axioms(ring);
        t.record(rep.is_ring() && rep.unital() == c.unital, || json!({"ring": ring.label(), "failures": rep.failures}));
    }
    let rings: Vec<&TabulatedRing> = corpus.iter().map(|(_, r)| r).collect();
    for _ in 0..budget {
        let ring = *rings.choose(rng).expect("nonempty");
        let n = ring.size() as Elem;
        let (x, y, z) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let ok = ring.mul(ring.mul(x, y), z) == ring.mul(x, ring.mul(y, z))
            && ring.mul(x, ring.add(y, z)) == ring.add(ring.mul(x, y), ring.mul(x, z))
            && ring.mul(ring.add(x, y), z) == ring.add(ring.mul(x, z), ring.mul(y, z))
            && ring.add(x, y) == ring.add(y, x);
        t.record(ok, || json!({"ring": ring.label(), "x": x, "y": y, "z": z}));
    }
}

fn prop_boolean_iso(t: &mut Tally, rng: &mut ChaCha8Rng, budget: usize) -> Result<()> {
    let pairs = (1..=8u32)
        .map(|n| Ok((TabulatedRing::boolean(n)?, TabulatedRing::zq_power(2, n)?)))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..budget {
        let (b, z) = &pairs[i % pairs.len()];
        let n = b.size() as Elem;
        let (x, y) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let to_z = |m: Elem| -> Elem {
            let bits = (i % pairs.len()) as u32 + 1;
            z.encode(&(0..bits).map(|k| m >> k & 1).collect::<Vec<_>>()).expect("digits below 2")
        };
        let ok = to_z(b.add(x, y)) == z.add(to_z(x), to_z(y))
            && to_z(b.mul(x, y)) == z.mul(to_z(x), to_z(y))
            && b.add(x, y) == x ^ y
            && b.mul(x, y) == x & y;
        t.record(ok, || json!({"ring": b.label(), "x": x, "y": y}));
    }
    Ok(())
}

fn prop_exotic(t: &mut Tally, rng: &mut ChaCha8Rng, budget: usize) -> Result<()> {
    let specs = [(1u32, 1u32), (1, 2), (2, 1), (2, 2), (3, 2)];
    let rings = specs.iter().map(|&(a, b)| RingDescriptor::Exotic { a, b }.build()).collect::<Result<Vec<_>>>()?;
    for i in 0..budget {
        let (a, b) = specs[i % specs.len()];
        let ring = &rings[i % specs.len()];
        let g_mask: Elem = (1 << (a + b)) - 1;
        let f_mask: Elem = (1 << a) - 1;
        let e: Elem = 1 << (a + b);
        let (r, s) = (rng.gen_range(0..=g_mask), rng.gen_range(0..=g_mask));
        let x = rng.gen_range(0..ring.size() as Elem);
        let expected = if (r & s & f_mask).count_ones() % 2 == 1 { e } else { 0 };
        let ok = ring.mul(r, s) == expected
            && ring.mul(e, r) == 0
            && ring.mul(r, e) == 0
            && ring.one().is_some_and(|one| ring.mul(one, x) == x && ring.mul(x, one) == x);
        t.record(ok, || json!({"ring": ring.label(), "r": r, "s": s, "x": x}));
    }
    Ok(())
}

fn prop_nilpotent(t: &mut Tally, rng: &mut ChaCha8Rng, budget: usize) {
    for _ in 0..budget {
        let k = rng.gen_range(3..=12);
        let (x, y, z) = (random_element(rng, k), random_element(rng, k), random_element(rng, k));
        let xy = nilpotent3_mul(&x, &y, k).expect("in range");
        let ok = xy == nilpotent3_mul(&y, &x, k).expect("in range")
            && nilpotent3_mul(&xy, &z, k).expect("in range").is_zero()
            && h(&x.add(&y)) == (h(&x) + h(&y)) % 2;
        t.record(ok, || json!({"k": k, "x": x.to_string(), "y": y.to_string(), "z": z.to_string()}));
    }
}

fn prop_closure(t: &mut Tally, rings: &[TabulatedRing], rng: &mut ChaCha8Rng, budget: usize) {
    for _ in 0..budget {
        let ring = pick(rings, rng);
        let gens = random_elems(ring, rng, 4);
        let h1 = closure(ring, &gens);
        let h2 = closure(ring, &h1.carrier().to_vec());
        let ok = h1.carrier() == h2.carrier()
            && gens.iter().all(|&g| h1.contains(g))
            && is_subgroup_set(h1.carrier())
            && ring.size() % h1.order() == 0;
        t.record(ok, || json!({"ring": ring.label(), "gens": set_json(&gens, ring)}));
    }
}

fn brute_sum<'r>(a: &ElementSet<'r>, b: &ElementSet<'r>) -> ElementSet<'r> {
    let ring = a.ring();
    ElementSet::from_elems(ring, a.iter().flat_map(|x| b.iter().map(move |y| ring.add(x, y))).collect::<Vec<_>>())
}

fn prop_sumset(t: &mut Tally, rings: &[TabulatedRing], rng: &mut ChaCha8Rng, budget: usize) {
    for _ in 0..budget {
        let ring = pick(rings, rng);
        let density = rng.gen_range(0.02..0.3);
        let (a, b, c) =
            (random_set(ring, rng, density), random_set(ring, rng, density), random_set(ring, rng, density));
        let laws = |a: &ElementSet<'_>| {
            let ab = a.sum(&b);
            ab == b.sum(a)
                && ab.sum(&c) == a.sum(&b.sum(&c))
                && a.sum(&ElementSet::zero(ring)) == *a
                && ab == brute_sum(a, &b)
                && (a.is_empty() || b.is_empty() || ab.len() >= a.len().max(b.len()))
        };
        let ok = laws(&a);
        t.record(ok, || {
            let small = shrink(a.to_vec(), |s| !laws(&ElementSet::from_elems(ring, s.iter().copied())));
            json!({"ring": ring.label(), "a": set_json(&small, ring), "b": b.describe(32), "c": c.describe(32)})
        });
    }
}

fn prop_coset_independence(t: &mut Tally, rings: &[TabulatedRing], rng: &mut ChaCha8Rng, budget: usize) {
    for _ in 0..budget {
        let ring = pick(rings, rng);
        let (h1, h2) = (random_subgroup(ring, rng), random_subgroup(ring, rng));
        let joint: Vec<Elem> = h1.generators().iter().chain(h2.generators()).copied().collect();
        let expected = closure(ring, &joint).order() == ring.size();
        let ok = is_coset_independent(&h1, &h2).is_ok_and(|v| v == expected);
        t.record(ok, || json!({"ring": ring.label(), "h1": set_json(h1.generators(), ring), "h2": set_json(h2.generators(), ring)}));
    }
}

fn prop_triangularize(t: &mut Tally, rng: &mut ChaCha8Rng, budget: usize) -> Result<()> {
    let shapes: Vec<(u64, usize)> = [2u64, 3, 4, 5, 6]
        .iter()
        .flat_map(|&q| (1..=6).filter(move |&n| q.pow(n as u32) <= 4096).map(move |n| (q, n)))
        .collect();
    for _ in 0..budget {
        let (q, n) = *shapes.choose(rng).expect("nonempty");
        let ring = TabulatedRing::zq_power(q as u32, n as u32)?;
        let k = rng.gen_range(0..=n + 1);
        let gens: Vec<Vec<i64>> =
            (0..k).map(|_| (0..n).map(|_| rng.gen_range(-(q as i64)..2 * q as i64)).collect()).collect();
        let basis = triangularize(q, n, &gens)?;
        let elems = gens
            .iter()
            .map(|g| ring.encode(&g.iter().map(|&v| v.rem_euclid(q as i64) as u32).collect::<Vec<_>>()))
            .collect::<Result<Vec<_>>>()?;
        let hc = closure(&ring, &elems);
        let ok = basis.span_in(&ring)?.carrier() == hc.carrier()
            && basis.index == hc.index() as u128
            && (basis.noninvertible().len() as u128) < basis.index;
        t.record(ok, || json!({"q": q, "N": n, "gens": gens}));
    }
    Ok(())
}

fn brute_products<'r>(d: &ElementSet<'r>, mode: SideMode) -> ElementSet<'r> {
    let ring = d.ring();
    let mut mult: Vec<Option<Elem>> = ring.elements().map(Some).collect();
    if mode.with_unit {
        mult.push(None);
    }
    let apply = |r: Option<Elem>, x: Elem, left: bool| match r {
        None => x,
        Some(r) if left => ring.mul(r, x),
        Some(r) => ring.mul(x, r),
    };
    let mut out = ElementSet::empty(ring);
    for x in d.iter() {
        for &r in &mult {
            match mode.side {
                Side::Left => {
                    out.insert(apply(r, x, true));
                }
                Side::Right => {
                    out.insert(apply(r, x, false));
                }
                Side::TwoSided => {
                    for &s in &mult {
                        out.insert(apply(s, apply(r, x, true), false));
                    }
                }
            }
        }
    }
    out
}

fn prop_product_sets(t: &mut Tally, rings: &[TabulatedRing], rng: &mut ChaCha8Rng, budget: usize) {
    for _ in 0..budget {
        let ring = pick(rings, rng);
        let mode = *MODES.choose(rng).expect("nonempty");
        let d = {
            let density = rng.gen_range(0.02..0.2);
            random_set(ring, rng, density)
        };
        let bigger = d.union(&random_set(ring, rng, 0.1));
        let fails = |s: &[Elem]| {
            let set = ElementSet::from_elems(ring, s.iter().copied());
            product_set(&set, mode) != brute_products(&set, mode)
        };
        let ok = !fails(&d.to_vec()) && product_set(&d, mode).is_subset(&product_set(&bigger, mode));
        t.record(ok, || {
            let small = shrink(d.to_vec(), fails);
            json!({"ring": ring.label(), "mode": mode.to_string(), "d": set_json(&small, ring)})
        });
    }
}

fn prop_min_steps(t: &mut Tally, rings: &[TabulatedRing], rng: &mut ChaCha8Rng, budget: usize, caps: Caps) {
    for _ in 0..budget {
        let ring = pick(rings, rng);
        let hg = random_subgroup(ring, rng);
        let mode = *MODES.choose(rng).expect("nonempty");
        let out = min_steps_to_group(&hg, mode, caps.max_steps);
        let ok = match out.steps {
            Some(n) => {
                let group = out.chain.layer(n).expect("layer recorded");
                let two_sided_ok =
                    mode != SideMode::TWO_SIDED_UNIT || *group == ideal_closure(hg.carrier(), Side::TwoSided);
                out.closure_agrees == Some(true) && is_subgroup_set(group) && two_sided_ok
            }
            None => true,
        };
        t.record(ok, || json!({"ring": ring.label(), "mode": mode.to_string(), "h": set_json(hg.generators(), ring)}));
    }
}

fn prop_ideal_search(t: &mut Tally, rings: &[TabulatedRing], rng: &mut ChaCha8Rng, budget: usize) {
    let ideals: Vec<Vec<ElementSet<'_>>> = rings
        .iter()
        .map(|r| {
            enumerate_subgroups(r, 5000)
                .unwrap_or_default()
                .into_iter()
                .map(Subgroup::into_carrier)
                .filter(is_ideal)
                .collect()
        })
        .collect();
    for _ in 0..budget {
        let i = rng.gen_range(0..rings.len());
        let ring = &rings[i];
        let mut s = if rng.gen_bool(0.5) {
            half_step_set(&random_subgroup(ring, rng), 1, *MODES.choose(rng).expect("nonempty"))
        } else {
            {
                let density = rng.gen_range(0.3..0.9);
                random_set(ring, rng, density)
            }
        };
        s.insert(0);
        let fails = |elems: &[Elem]| {
            let mut s = ElementSet::from_elems(ring, elems.iter().copied());
            s.insert(0);
            let res = find_ideal_within(&s);
            let Some(found) = res.found else { return true };
            let sound = is_ideal(&found) && found.is_subset(&s);
            let best = ideals[i].iter().filter(|id| id.is_subset(&s)).map(|id| id.len()).max();
            let optimal = !res.exhaustive || ideals[i].is_empty() || best == Some(found.len());
            !(sound && optimal)
        };
        let ok = !fails(&s.to_vec());
        t.record(ok, || json!({"ring": ring.label(), "s": set_json(&shrink(s.to_vec(), fails), ring)}));
    }
}

fn prop_half_steps(t: &mut Tally, rings: &[TabulatedRing], rng: &mut ChaCha8Rng, budget: usize) {
    for _ in 0..budget {
        let ring = pick(rings, rng);
        let hg = random_subgroup(ring, rng);
        let mode = *MODES.choose(rng).expect("nonempty");
        let s0 = half_step_set(&hg, 0, mode);
        let s1 = half_step_set(&hg, 1, mode);
        let s2 = half_step_set(&hg, 2, mode);
        let ok = s0 == *hg.carrier() && s0.is_subset(&s1) && s1.is_subset(&s2);
        t.record(ok, || json!({"ring": ring.label(), "mode": mode.to_string(), "h": set_json(hg.generators(), ring)}));
    }
}

fn brute_max_clique(ring: &TabulatedRing, d: &ElementSet<'_>) -> usize {
    let n = ring.size();
    (0u32..1 << n)
        .filter(|&mask| {
            let members: Vec<Elem> = (0..n as Elem).filter(|&x| mask >> x & 1 == 1).collect();
            members.iter().enumerate().all(|(i, &x)| members[i + 1..].iter().all(|&y| !d.contains(ring.sub(y, x))))
        })
        .map(|mask| mask.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn brute_cover(ring: &TabulatedRing, d: &ElementSet<'_>) -> Option<u32> {
    let n = ring.size();
    (1..=n as u32).find(|&k| {
        (0u32..1 << n).filter(|m| m.count_ones() == k).any(|mask| {
            let mut cover = ElementSet::empty(ring);
            for x in (0..n as Elem).filter(|&x| mask >> x & 1 == 1) {
                cover.union_with(&d.translate(x));
            }
            cover.is_full()
        })
    })
}

fn prop_thick_generic(t: &mut Tally, rings: &[TabulatedRing], rng: &mut ChaCha8Rng, budget: usize) {
    let tiny: Vec<&TabulatedRing> = rings.iter().filter(|r| r.size() <= 12).collect();
    for _ in 0..budget {
        let ring = *tiny.choose(rng).expect("tiny rings in corpus");
        let mut d = {
            let density = rng.gen_range(0.1..0.5);
            random_set(ring, rng, density)
        };
        d.union_with(&d.negation());
        d.insert(0);
        let thick_ok = thickness(&d, 16) == Thickness::Thick(brute_max_clique(ring, &d) as u32 + 1);
        let generic_ok = match genericity_number(&d, ring.size() as u32) {
            Ok(Genericity::Exact { n, .. }) => Some(n) == brute_cover(ring, &d),
            _ => false,
        };
        t.record(thick_ok && generic_ok, || json!({"ring": ring.label(), "d": d.describe(32)}));
    }
}

fn h_generator(rng: &mut ChaCha8Rng) -> IntPoly {
    let a = rng.gen_range(0..40u64);
    let same: Vec<u64> = (0..40).filter(|&b| b != a && is_prime(b) == is_prime(a)).collect();
    let b = *same.choose(rng).expect("both classes are infinite");
    &IntPoly::x_pow(a) - &IntPoly::x_pow(b)
}

fn random_h_element(rng: &mut ChaCha8Rng) -> IntPoly {
    let mut p = random_poly(rng, 20, 4, 5).scale(&2.into());
    for _ in 0..rng.gen_range(0..3) {
        let g = h_generator(rng);
        p = if rng.gen_bool(0.5) { &p + &g } else { &p - &g };
    }
    p
}

fn prop_poly_h(t: &mut Tally, rng: &mut ChaCha8Rng, budget: usize) {
    for _ in 0..budget {
        let (p, q) = (random_poly(rng, 30, 8, 5), random_poly(rng, 30, 8, 5));
        let g = h_generator(rng);
        let ok = (!(in_h(&p) && in_h(&q)) || in_h(&(&p + &q)))
            && in_h(&p.scale(&2.into()))
            && in_h(&g)
            && in_h(&(&p - &coset_representative(&p)))
            && in_h(&random_h_element(rng));
        t.record(ok, || json!({"p": p.to_string(), "q": q.to_string(), "g": g.to_string()}));
    }
}

fn prop_reduction(t: &mut Tally, rng: &mut ChaCha8Rng, budget: usize) -> Result<()> {
    for _ in 0..budget {
        let m = rng.gen_range(1..=4u64);
        let top = (1..=m).product::<u64>() + m;
        let (p, q) = (random_poly(rng, 3 * top, 6, 50), random_poly(rng, 3 * top, 6, 50));
        let rp = reduce_mod_im(&p, m)?;
        let rq = reduce_mod_im(&q, m)?;
        let ok = rp.certifies(&p)
            && reduce_mod_im(&rp.normal, m)?.normal == rp.normal
            && reduce_mod_im(&(&p + &q), m)?.normal == reduce_mod_im(&(&rp.normal + &rq.normal), m)?.normal;
        t.record(ok, || json!({"m": m, "p": p.to_string(), "q": q.to_string()}));
    }
    Ok(())
}

fn prop_certify_sound(t: &mut Tally, rng: &mut ChaCha8Rng, budget: usize) -> Result<()> {
    let (k, l, kp) = (4u32, 4u32, 1u32);
    let quotient = TabulatedRing::poly_quotient(k, l, kp)?;
    let mut gens = Vec::new();
    for i in 0..8 {
        gens.push(quotient_element(&quotient, &IntPoly::monomial(i, 2), k, l, kp)?);
    }
    for a in 0..13u64 {
        for b in (0..13).filter(|&b| b != a && is_prime(b) == is_prime(a)) {
            gens.push(quotient_element(&quotient, &(&IntPoly::x_pow(a) - &IntPoly::x_pow(b)), k, l, kp)?);
        }
    }
    let h_t = closure(&quotient, &gens);
    let rh_t = product_set(h_t.carrier(), SideMode::LEFT);
    for _ in 0..budget {
        let r = random_poly(rng, 12, 4, 6);
        let hp = random_h_element(rng);
        let prod = &r * &hp;
        let certified =
            !prod.is_zero() && certify_not_in_rh(&prod, None).is_ok_and(|c| c.verdict == CertificateVerdict::Certified);
        let image_ok = rh_t.contains(quotient_element(&quotient, &prod, k, l, kp)?)
            && h_t.contains(quotient_element(&quotient, &hp, k, l, kp)?);
        t.record(!certified && image_ok, || json!({"r": r.to_string(), "h": hp.to_string()}));
    }
    Ok(())
}

fn prop_xz(t: &mut Tally, rng: &mut ChaCha8Rng, budget: usize) {
    for _ in 0..budget {
        let shift = |p: IntPoly| &p * &IntPoly::x_pow(1);
        let (p, q) = (shift(random_poly(rng, 15, 5, 9)), shift(random_poly(rng, 15, 5, 9)));
        let prod = &p * &q;
        let ok = prod.is_zero() || in_rr_possible(&prod).is_ok_and(|v| v);
        t.record(ok, || json!({"p": p.to_string(), "q": q.to_string()}));
    }
}

fn finish(mut b: ReportBuilder, tallies: Vec<Tally>, budget: usize) -> ScenarioReport {
    let mut counts = serde_json::Map::new();
    for t in &tallies {
        let verdict = if t.failures > 0 {
            Verdict::Fail
        } else if t.instances < budget {
            Verdict::Inconclusive
        } else {
            Verdict::Pass
        };
        b.check(t.name, verdict, format!("{} failures in {} instances", t.failures, t.instances));
        counts.insert(t.name.to_string(), json!(t.instances));
        if let Some(w) = &t.witness {
            b.witness(&format!("counterexample[{}]", t.name), w);
        }
    }
    b.witness("instances", counts);
    b.finish()
}

fn build_corpus() -> Result<Vec<(CorpusRing, TabulatedRing)>> {
    corpus_rings().into_iter().map(|c| c.build().map(|r| (c, r))).collect()
}

/// Runs every property family on at least `budget` seeded instances.
pub fn run_corpus_properties(seed: u64, budget: usize) -> Result<ScenarioReport> {
    run_corpus_with_caps(seed, budget, Caps::default())
}

fn run_corpus_with_caps(seed: u64, budget: usize, caps: Caps) -> Result<ScenarioReport> {
    if budget == 0 {
        return Err(Error::InvalidParameter("budget must be positive".into()));
    }
    let mut b = ReportBuilder::new("corpus", CLAIM, caps);
    b.param("seed", seed).param("budget", budget);
    let corpus = build_corpus()?;
    let small: Vec<TabulatedRing> = corpus.iter().filter(|(_, r)| r.size() <= 64).map(|(_, r)| r.clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tallies = Vec::new();
    macro_rules! family {
        ($name:literal, |$t:ident| $body:expr) => {{
            let mut $t = Tally::new($name);
            b.timed($name, || $body)?;
            tallies.push($t);
        }};
    }
    family!("ring_axioms", |t| {
        prop_ring_axioms(&mut t, &corpus, &mut rng, budget);
        Ok::<_, Error>(())
    });
    family!("boolean_isomorphism", |t| prop_boolean_iso(&mut t, &mut rng, budget));
    family!("exotic_products", |t| prop_exotic(&mut t, &mut rng, budget));
    family!("nilpotent_class_three", |t| {
        prop_nilpotent(&mut t, &mut rng, budget);
        Ok::<_, Error>(())
    });
    family!("closure_idempotent", |t| {
        prop_closure(&mut t, &small, &mut rng, budget);
        Ok::<_, Error>(())
    });
    family!("sumset_laws", |t| {
        prop_sumset(&mut t, &small, &mut rng, budget);
        Ok::<_, Error>(())
    });
    family!("coset_independence", |t| {
        prop_coset_independence(&mut t, &small, &mut rng, budget);
        Ok::<_, Error>(())
    });
    family!("triangularization", |t| prop_triangularize(&mut t, &mut rng, budget));
    family!("product_sets", |t| {
        prop_product_sets(&mut t, &small, &mut rng, budget);
        Ok::<_, Error>(())
    });
    family!("min_steps_closure", |t| {
        prop_min_steps(&mut t, &small, &mut rng, budget, caps);
        Ok::<_, Error>(())
    });
    family!("ideal_search", |t| {
        prop_ideal_search(&mut t, &small, &mut rng, budget);
        Ok::<_, Error>(())
    });
    family!("half_step_monotone", |t| {
        prop_half_steps(&mut t, &small, &mut rng, budget);
        Ok::<_, Error>(())
    });
    family!("thickness_genericity", |t| {
        prop_thick_generic(&mut t, &small, &mut rng, budget);
        Ok::<_, Error>(())
    });
    family!("h_kernel", |t| {
        prop_poly_h(&mut t, &mut rng, budget);
        Ok::<_, Error>(())
    });
    family!("reduction", |t| prop_reduction(&mut t, &mut rng, budget));
    family!("certificate_soundness", |t| prop_certify_sound(&mut t, &mut rng, budget));
    family!("xz_products", |t| {
        prop_xz(&mut t, &mut rng, budget);
        Ok::<_, Error>(())
    });
    Ok(finish(b, tallies, budget))
}

/// Runs the ring-level properties on a single ring with one corrupted product.
pub fn run_corpus_with_fault(seed: u64, budget: usize, fault: &Fault) -> Result<ScenarioReport> {
    if budget == 0 {
        return Err(Error::InvalidParameter("budget must be positive".into()));
    }
    let base = fault.ring.build()?;
    let n = base.size() as Elem;
    if fault.x >= n || fault.y >= n || fault.value >= n {
        return Err(Error::InvalidParameter(format!("fault entries must be below the ring size {n}")));
    }
    let ring = base.with_product_overridden(fault.x, fault.y, fault.value)?;
    let mut b = ReportBuilder::new("corpus", CLAIM, Caps::default());
    b.param("seed", seed).param("budget", budget).param("fault", fault);
    let unital = base.one().is_some();
    let corpus = vec![(CorpusRing { descriptor: fault.ring.clone(), unital }, ring.clone())];
    let rings = vec![ring];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut axioms = Tally::new("ring_axioms");
    prop_ring_axioms(&mut axioms, &corpus, &mut rng, budget);
    let mut products = Tally::new("product_sets");
    prop_product_sets(&mut products, &rings, &mut rng, budget);
    Ok(finish(b, vec![axioms, products], budget))
}

/// Registry entry point: `budget` defaults to 100.
pub fn run_corpus(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["budget"])?;
    let budget: usize = params.get_or("budget", 100)?;
    run_corpus_with_caps(ctx.seed, budget, ctx.caps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_builds() {
        let rings = corpus_rings();
        assert!(rings.len() >= 40);
        for c in &rings {
            let r = c.build().unwrap();
            assert!(r.size() <= 4096);
            assert_eq!(r.one().is_some(), c.unital, "{}", r.label());
        }
    }

    #[test]
    fn small_budget_passes_and_is_deterministic() {
        let a = run_corpus_properties(7, 12).unwrap();
        let fails: Vec<_> = a.checks.iter().filter(|c| c.verdict != Verdict::Pass).collect();
        assert!(fails.is_empty(), "{fails:#?}\n{:#?}", a.witnesses);
        let b = run_corpus_properties(7, 12).unwrap();
        assert_eq!(a.without_timing(), b.without_timing());
    }

    #[test]
    fn fault_is_detected_with_witness() {
        let fault = Fault { ring: RingDescriptor::ZqPower { q: 2, n: 3 }, x: 3, y: 5, value: 0 };
        let r = run_corpus_with_fault(1, 50, &fault).unwrap();
        assert_eq!(r.status, Verdict::Fail);
        assert_eq!(r.check("ring_axioms").unwrap().verdict, Verdict::Fail);
        assert!(r.witness("counterexample[ring_axioms]").is_some());
    }

    #[test]
    fn shrink_keeps_failure() {
        let out = shrink(vec![1, 2, 3, 4, 5], |s| s.contains(&3) && s.len() >= 2);
        assert_eq!(out.len(), 2);
        assert!(out.contains(&3));
    }
}
