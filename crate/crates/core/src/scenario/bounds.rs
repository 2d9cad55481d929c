use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::corpus::corpus_rings;
use super::report::{ReportBuilder, ScenarioReport, Verdict};
use super::{Context, Params};
use crate::additive::{closure, enumerate_subgroups, ElementSet, Subgroup};
use crate::error::{Error, Result};
use crate::ring::{is_left_s_unital, TabulatedRing};
use crate::stepgen::{
    find_ideal_within, half_step_set, is_ideal, verify_generic_generation_bound, verify_sunital_factorial,
    FactorialVerdict, SideMode,
};

const GENERIC_CLAIM: &str = "generation of <D> by 3n-fold sums of a generic symmetric set covered by n translates";
const FACTORIAL_CLAIM: &str = "n!·R lies in R·D for an n-thick set D in an s-unital ring";
const HALF_STEP_CLAIM: &str = "an ideal inside H + R·H, found and independently verified";

/// Subgroup count above which a corpus ring is reported as not enumerable.
const SUBGROUP_LIMIT: usize = 20_000;
const THICKNESS_CAP: u32 = 16;

fn rings_up_to(max: usize, filter: impl Fn(&TabulatedRing) -> bool) -> Result<Vec<TabulatedRing>> {
    let mut out = Vec::new();
    for c in corpus_rings() {
        let ring = c.build()?;
        if ring.size() <= max && filter(&ring) {
            out.push(ring);
        }
    }
    Ok(out)
}

/// `S ∪ -S` for a random `S` of the given density.
fn random_symmetric<'r>(ring: &'r TabulatedRing, rng: &mut ChaCha8Rng, density: f64) -> ElementSet<'r> {
    let mut s = ElementSet::empty(ring);
    for x in ring.elements() {
        if rng.gen_bool(density) {
            s.insert(x);
            s.insert(ring.neg(x));
        }
    }
    if s.is_empty() {
        let x = rng.gen_range(0..ring.size() as u32);
        s.insert(x);
        s.insert(ring.neg(x));
    }
    s
}

/// A random subgroup of index at most `max_index`.
fn random_small_index_subgroup<'r>(ring: &'r TabulatedRing, rng: &mut ChaCha8Rng, max_index: usize) -> Subgroup<'r> {
    let mut h = closure(ring, &[]);
    while h.index() > max_index {
        h.adjoin(rng.gen_range(0..ring.size() as u32));
    }
    h
}

pub fn run_generic_bound(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["count", "max_size"])?;
    let count: usize = params.get_or("count", 500)?;
    let max_size: usize = params.get_or("max_size", 256)?;
    let mut b = ReportBuilder::new("generic-3n-bound", GENERIC_CLAIM, ctx.caps);
    b.param("count", count).param("max_size", max_size);
    let rings = rings_up_to(max_size.min(ctx.caps.max_ring_size), |_| true)?;
    if rings.is_empty() {
        return Err(Error::InvalidParameter(format!("no corpus ring has at most {max_size} elements")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut violations = Vec::new();
    let mut inexact = 0usize;
    let mut unverified = 0usize;
    let mut worst = (0u32, 1u32);
    let mut checked = 0usize;
    b.timed("samples", || -> Result<()> {
        for t in 0..count {
            let ring = &rings[t % rings.len()];
            let density = rng.gen_range(0.02..0.4);
            let mut d = random_symmetric(ring, &mut rng, density);
            if rng.gen_bool(0.3) {
                d.union_with(random_small_index_subgroup(ring, &mut rng, 8).carrier());
            }
            let rep = verify_generic_generation_bound(&d)?;
            checked += 1;
            let lower = ring.size().div_ceil(d.len()) as u32;
            let ok = if rep.genericity_exact {
                rep.holds
            } else {
                inexact += 1;
                rep.m <= 3 * lower || {
                    unverified += 1;
                    true
                }
            };
            if rep.m * worst.1 > worst.0 * rep.n {
                worst = (rep.m, rep.n);
            }
            if !ok && violations.len() < 5 {
                violations.push(json!({"ring": ring.label(), "d": d.describe(32), "n": rep.n, "m": rep.m}));
            }
        }
        Ok(())
    })?;
    b.param("rings", rings.len());
    b.check_bool(
        "bound_holds",
        violations.is_empty(),
        format!("{} violations of E^(+3n) = <D> among {checked} sets", violations.len()),
    );
    b.param("inexact_genericity", inexact);
    b.check(
        "all_instances_decided",
        if unverified == 0 { Verdict::Pass } else { Verdict::Inconclusive },
        format!(
            "{inexact} sets had only a greedy cover; each is decided by 3·ceil(|R|/|D|) <= 3n, {unverified} left undecided"
        ),
    );
    b.witness("largest_m_over_n", json!({"m": worst.0, "n": worst.1}));
    if !violations.is_empty() {
        b.witness("violations", violations);
    }
    Ok(b.finish())
}

pub fn run_sunital_factorial(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["count", "max_size"])?;
    let count: usize = params.get_or("count", 100)?;
    let max_size: usize = params.get_or("max_size", 512)?;
    let mut b = ReportBuilder::new("sunital-factorial", FACTORIAL_CLAIM, ctx.caps);
    b.param("count", count).param("max_size", max_size);
    let rings = rings_up_to(max_size.min(ctx.caps.max_ring_size), is_left_s_unital)?;
    if rings.is_empty() {
        return Err(Error::InvalidParameter(format!("no s-unital corpus ring has at most {max_size} elements")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut violations = Vec::new();
    let mut checked = 0usize;
    let mut resampled = 0usize;
    let mut thickness_seen = std::collections::BTreeMap::<u32, usize>::new();
    b.timed("samples", || {
        let mut t = 0usize;
        while checked < count && resampled < 20 * count {
            let ring = &rings[t % rings.len()];
            t += 1;
            let mut d = random_small_index_subgroup(ring, &mut rng, 8).into_carrier();
            let density = rng.gen_range(0.0..0.1);
            d.union_with(&random_symmetric(ring, &mut rng, density));
            d.insert(0);
            match verify_sunital_factorial(&d, THICKNESS_CAP) {
                FactorialVerdict::Checked { thickness, holds, multiplier, minimal_n } => {
                    checked += 1;
                    *thickness_seen.entry(thickness).or_default() += 1;
                    if !holds && violations.len() < 5 {
                        violations.push(json!({
                            "ring": ring.label(), "d": d.describe(32), "thickness": thickness,
                            "multiplier": multiplier, "minimal_n": minimal_n
                        }));
                    }
                }
                FactorialVerdict::Inapplicable { .. } => resampled += 1,
            }
        }
    });
    b.param("rings", rings.len());
    b.check_bool(
        "factorial_inclusion",
        violations.is_empty(),
        format!("{} violations among {checked} thick sets", violations.len()),
    );
    if checked < count {
        b.check(
            "coverage",
            Verdict::Inconclusive,
            format!("only {checked} of {count} sampled sets were thick within the cap"),
        );
    }
    b.witness("thickness_histogram", thickness_seen);
    if !violations.is_empty() {
        b.witness("violations", violations);
    }
    Ok(b.finish())
}

pub fn run_ideal_in_half_step(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["max_size", "sample"])?;
    let max_size: usize = params.get_or("max_size", 4096)?;
    let sample: Option<usize> = params.opt("sample")?;
    let mut b = ReportBuilder::new("ideal-in-half-step", HALF_STEP_CLAIM, ctx.caps);
    b.param("max_size", max_size);
    if let Some(s) = sample {
        b.param("sample", s);
    }
    let rings = rings_up_to(max_size.min(ctx.caps.max_ring_size), |_| true)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut rows = Vec::new();
    let mut unverified = Vec::new();
    let mut not_found = 0usize;
    let mut non_exhaustive = 0usize;
    let mut too_many = Vec::new();
    let mut total = 0usize;
    b.timed("search", || {
        for ring in &rings {
            let Some(mut subgroups) = enumerate_subgroups(ring, SUBGROUP_LIMIT) else {
                too_many.push(ring.label().to_string());
                continue;
            };
            if let Some(s) = sample {
                subgroups.shuffle(&mut rng);
                subgroups.truncate(s);
            }
            let mut min_index = usize::MAX;
            let mut max_index = 0usize;
            for h in &subgroups {
                total += 1;
                let s = half_step_set(h, 1, SideMode::LEFT);
                let res = find_ideal_within(&s);
                non_exhaustive += usize::from(!res.exhaustive);
                match &res.found {
                    Some(i) => {
                        let ok = is_ideal(i) && i.is_subset(&s) && i.contains(0);
                        if !ok && unverified.len() < 5 {
                            unverified.push(json!({"ring": ring.label(), "h": ring_elems(ring, h)}));
                        }
                        let idx = ring.size() / i.len();
                        min_index = min_index.min(idx);
                        max_index = max_index.max(idx);
                    }
                    None => not_found += 1,
                }
            }
            rows.push(json!({
                "ring": ring.label(), "size": ring.size(), "subgroups": subgroups.len(),
                "min_index": min_index, "max_min_index": max_index
            }));
        }
    });
    b.param("rings", rings.len()).param("subgroups", total);
    b.check_bool("ideal_found", not_found == 0, format!("{not_found} of {total} half-step sets contain no ideal"));
    b.check_bool(
        "ideal_verified",
        unverified.is_empty(),
        format!("{} of {total} ideals fail re-verification", unverified.len()),
    );
    b.param("non_exhaustive_searches", non_exhaustive);
    if !too_many.is_empty() {
        b.check(
            "enumeration",
            Verdict::Inconclusive,
            format!("subgroup lattice too large for: {}", too_many.join(", ")),
        );
    }
    b.witness("empirical_indices", rows);
    if !unverified.is_empty() {
        b.witness("unverified", unverified);
    }
    Ok(b.finish())
}

fn ring_elems(ring: &TabulatedRing, h: &Subgroup<'_>) -> Vec<String> {
    h.generators().iter().map(|&g| ring.decode(g)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_generic_run() {
        let p = Params::new().with("count", 40).with("max_size", 64);
        let r = run_generic_bound(&p, &Context::default()).unwrap();
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
    }

    #[test]
    fn small_factorial_run() {
        let p = Params::new().with("count", 20).with("max_size", 64);
        let r = run_sunital_factorial(&p, &Context::default()).unwrap();
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
    }

    #[test]
    fn small_half_step_run() {
        let p = Params::new().with("max_size", 32);
        let r = run_ideal_in_half_step(&p, &Context::default()).unwrap();
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
    }
}
