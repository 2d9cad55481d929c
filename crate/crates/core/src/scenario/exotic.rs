use super::report::{ReportBuilder, ScenarioReport, Verdict};
use super::{Context, Params};
use crate::additive::ElementSet;
use crate::error::{Error, Result};
use crate::ring::{check_ring_axioms, Elem, ExoticRingSpec, TabulatedRing};
use crate::stepgen::{ideal_closure, principal_ideal, product_set, Side, SideMode};

const CLAIM: &str = "the ring built from independent functionals whose product set contains no finite-index ideal";

pub fn run_exotic(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["a", "b"])?;
    let a: u32 = params.require("a")?;
    let bb: u32 = params.require("b")?;
    if a == 0 || bb == 0 {
        return Err(Error::InvalidParameter(format!("need a >= 1 and b >= 1, got a={a}, b={bb}")));
    }
    let mut b = ReportBuilder::new("exotic-ring", CLAIM, ctx.caps);
    b.param("a", a).param("b", bb);
    let bits = a + bb + 2;
    if bits > 16 || (1usize << bits) > ctx.caps.max_ring_size {
        b.check("ring_size", Verdict::Inconclusive, format!("cap exceeded: the ring has 2^{bits} elements"));
        return Ok(b.finish());
    }
    let ring = TabulatedRing::exotic(ExoticRingSpec { a, b: bb })?;
    let axioms = b.timed("axioms", || check_ring_axioms(&ring));
    b.check_bool("ring_axioms", axioms.is_ring() && axioms.unital(), format!("{} failures", axioms.failures.len()));

    let g_mask: Elem = (1 << (a + bb)) - 1;
    let f_mask: Elem = (1 << a) - 1;
    let e: Elem = 1 << (a + bb);
    let g: Vec<Elem> = (0..=g_mask).collect();
    let g_set = ElementSet::from_elems(&ring, g.iter().copied());

    let values_ok = g.iter().all(|&r| g.iter().all(|&s| [0, e].contains(&ring.mul(r, s))));
    b.check_bool("products_in_zero_or_e", values_ok, "r·s lies in {0, e} for all r, s in G");

    let lhs = b.timed("product_set", || product_set(&g_set, SideMode::LEFT));
    let mut moved = ElementSet::empty(&ring);
    for &s in &g {
        if g.iter().any(|&r| ring.mul(r, s) != 0) {
            moved.insert(ring.add(e, s));
        }
    }
    let e_part = ElementSet::singleton(&ring, e);
    let rhs = g_set.union(&moved).union(&e_part);
    let disjoint = g_set.intersection(&moved).is_empty()
        && g_set.intersection(&e_part).is_empty()
        && moved.intersection(&e_part).is_empty();
    b.check_bool(
        "identity_forward",
        lhs.is_subset(&rhs),
        format!("R·G ({} elements) lies in G ⊔ (e + moved) ⊔ {{e}}", lhs.len()),
    );
    b.check_bool(
        "identity_backward",
        rhs.is_subset(&lhs) && disjoint,
        format!("the three parts ({}, {}, 1 elements) are disjoint and lie in R·G", g_set.len(), moved.len()),
    );

    let functional: Vec<Elem> = (1..=f_mask).collect();
    let extra: Vec<Elem> = (1..(1 << bb)).map(|t: Elem| t << a).collect();
    let fact_a =
        functional.iter().all(|&r| g.iter().any(|&s| ring.mul(r, s) == e) && principal_ideal(&ring, r).contains(e));
    b.check_bool(
        "fact_a",
        fact_a,
        format!(
            "each of the {} nonzero functional sums r has s in G with r·s = e, so e lies in the ideal of r",
            functional.len()
        ),
    );
    let fact_b = extra.iter().all(|&t| !lhs.contains(ring.add(e, t)) && g.iter().all(|&r| ring.mul(r, t) == 0));
    b.check_bool(
        "fact_b",
        fact_b,
        format!(
            "for each of the {} nonzero extra elements t, t is annihilated by G and e + t is outside R·G",
            extra.len()
        ),
    );
    let mut escaping = 0usize;
    for &r in &functional {
        for &t in &extra {
            let ideal = ideal_closure(&ElementSet::from_elems(&ring, [r, t]), Side::TwoSided);
            if ideal.contains(ring.add(e, t)) && !ideal.is_subset(&lhs) {
                escaping += 1;
            }
        }
    }
    let pairs = functional.len() * extra.len();
    b.check_bool(
        "ideals_escape",
        escaping == pairs,
        format!("{escaping} of {pairs} ideals generated by a functional sum and an extra element leave R·G"),
    );
    b.witness("e", ring.decode(e));
    b.witness("sample_escape", extra.first().map(|&t| ring.decode(ring.add(e, t))));
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances() {
        for (a, bb) in [(1, 1), (2, 2), (1, 3)] {
            let r = run_exotic(&Params::new().with("a", a).with("b", bb), &Context::default()).unwrap();
            assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
        }
        assert!(run_exotic(&Params::new().with("a", 0).with("b", 1), &Context::default()).is_err());
        let r = run_exotic(&Params::new().with("a", 8).with("b", 8), &Context::default()).unwrap();
        assert_eq!(r.status, Verdict::Inconclusive);
    }
}
