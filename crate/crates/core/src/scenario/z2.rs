use super::family::{canonical_independent_family, is_independent, IndependentFamily, MAX_GROUND};
use super::report::{ReportBuilder, ScenarioReport, Verdict};
use super::{Context, Params};
use crate::additive::{closure, Subgroup};
use crate::error::{Error, Result};
use crate::ring::{Elem, TabulatedRing};
use crate::stepgen::{min_steps_to_group, product_set, SideMode};

const Z2_CLAIM: &str = "unbounded step counts in the power set ring of a countable set";
const NESTED_CLAIM: &str = "the descending chain of subgroups with step counts separated at every level";

fn mask_set(mask: u32) -> String {
    let items: Vec<String> = (0..32).filter(|&x| mask >> x & 1 == 1).map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Records an inconclusive check when the power set of the ground set exceeds the caps.
fn ground_cap(b: &mut ReportBuilder, ground: u64, ctx: &Context) -> bool {
    let fits = ground <= MAX_GROUND as u64 && (1u128 << ground) <= ctx.caps.max_ring_size as u128;
    if !fits {
        b.check(
            "ring_size",
            Verdict::Inconclusive,
            format!(
                "cap exceeded: P of a {ground}-point set has 2^{ground} elements, cap is {}",
                ctx.caps.max_ring_size
            ),
        );
    }
    fits
}

/// `A_0 △ (X_1 ∩ A_1) △ ⋯` with `X_i` the complement of `A_0 ∪ ⋯ ∪ A_{i-1}`.
fn union_decomposition(sets: &[u32], ground_mask: u32) -> Vec<u32> {
    let mut covered = 0u32;
    sets.iter()
        .map(|&a| {
            let term = a & !covered & ground_mask;
            covered |= a;
            term
        })
        .collect()
}

pub fn run_z2_steps(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["n"])?;
    let n: u32 = params.require("n")?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let mut b = ReportBuilder::new("z2-steps", Z2_CLAIM, ctx.caps);
    b.param("n", n);
    let ground = 1u64 << n.min(63);
    if !ground_cap(&mut b, ground, ctx) {
        return Ok(b.finish());
    }
    let family = canonical_independent_family(n)?;
    b.check_bool("independent_family", family.independent(), format!("all {} cells nonempty", 1u64 << n));
    let ring = TabulatedRing::boolean(family.x_size)?;
    let gens: Vec<Elem> = family.sets.iter().map(|&s| s as Elem).collect();
    let h = closure(&ring, &gens);
    let witness_mask = family.union_of_first(n as usize);
    let witness = witness_mask as Elem;
    b.witness("family", family.sets.iter().map(|&s| mask_set(s)).collect::<Vec<_>>());
    b.witness("witness", mask_set(witness_mask));

    let x = b.timed("product_set", || product_set(h.carrier(), SideMode::LEFT));
    let terms = union_decomposition(&family.sets, (1u32 << family.x_size) - 1);
    let terms_ok =
        terms.iter().all(|&t| x.contains(t as Elem)) && terms.iter().fold(0, |acc, t| acc ^ t) == witness_mask;
    b.check_bool(
        "union_decomposition",
        terms_ok,
        format!(
            "witness = {} with every term in R·H",
            terms.iter().map(|&t| mask_set(t)).collect::<Vec<_>>().join(" △ ")
        ),
    );

    if n == 1 {
        b.check("outside_previous_fold", Verdict::Pass, "base case: the 0-fold sum is {0} and the witness is nonempty");
    } else {
        let below = b.timed("lower_fold", || x.n_fold_sum(n - 1));
        b.check_bool(
            "outside_previous_fold",
            !below.contains(witness),
            format!("witness not in the {}-fold sum of R·H ({} elements)", n - 1, below.len()),
        );
    }
    let at = b.timed("upper_fold", || x.n_fold_sum(n));
    b.check_bool(
        "inside_fold",
        at.contains(witness),
        format!("witness in the {n}-fold sum of R·H ({} elements)", at.len()),
    );

    record_min_steps(&mut b, &h, n, ctx);
    Ok(b.finish())
}

fn record_min_steps(b: &mut ReportBuilder, h: &Subgroup<'_>, n: u32, ctx: &Context) {
    let outcome = b.timed("min_steps", || min_steps_to_group(h, SideMode::LEFT, ctx.caps.max_steps));
    b.witness("layer_sizes", outcome.chain.layer_sizes());
    match outcome.steps {
        Some(s) => {
            b.param("min_steps", s);
            b.check_bool("min_steps_at_least_n", s >= n, format!("R·H generates a group in exactly {s} steps"));
            b.check_bool(
                "closure_cross_check",
                outcome.closure_agrees == Some(true),
                "generated group equals the independently computed ideal closure",
            );
        }
        None => {
            b.check(
                "min_steps_at_least_n",
                Verdict::Inconclusive,
                format!("no group within {} steps (max_steps cap)", ctx.caps.max_steps),
            );
        }
    }
}

/// Families `A^1, .., A^m` with `A^j` over `Y_j = {0..2^{j+1}-1}`, extended by
/// independent subsets `Z_0..Z_j` of `Y_{j+1} \ Y_j`.
pub fn nested_family(m: u32) -> Result<Vec<IndependentFamily>> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    if m > 3 {
        return Err(Error::InvalidParameter(format!(
            "m={m} needs 2^{} ground points; at most {MAX_GROUND} are supported",
            m + 1
        )));
    }
    let mut out = vec![IndependentFamily { n: 1, x_size: 4, sets: vec![0b1] }];
    for j in 1..m {
        let prev = &out[j as usize - 1];
        let offset = 1u32 << (j + 1);
        let width = offset;
        let z: Vec<u32> = (0..=j)
            .map(|i| (0..width).filter(|t| t >> i & 1 == 1).fold(0u32, |acc, t| acc | 1 << (offset + t)))
            .collect();
        let mut sets: Vec<u32> = (0..j as usize).map(|i| prev.sets[i] | z[i]).collect();
        sets.push(prev.sets[j as usize - 1] | z[j as usize]);
        out.push(IndependentFamily { n: j + 1, x_size: offset * 2, sets });
    }
    Ok(out)
}

pub fn run_nested_chain(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["n", "m"])?;
    let n: u32 = params.require("n")?;
    let m: u32 = params.require("m")?;
    if n == 0 || n > m {
        return Err(Error::InvalidParameter(format!("need 1 <= n <= m, got n={n}, m={m}")));
    }
    let mut b = ReportBuilder::new("nested-chain", NESTED_CLAIM, ctx.caps);
    b.param("n", n).param("m", m);
    let ground = 1u64 << (m + 1).min(63);
    if !ground_cap(&mut b, ground, ctx) {
        return Ok(b.finish());
    }
    let families = nested_family(m)?;
    let top = &families[m as usize - 1];
    let low = &families[n as usize - 1];
    b.check_bool(
        "independent_families",
        families.iter().all(|f| is_independent(&f.sets, f.x_size)),
        "every family in the recursion passes the cell check",
    );
    let y_n = (1u32 << low.x_size) - 1;
    b.check_bool(
        "restriction",
        (0..n as usize).all(|i| top.sets[i] & y_n == low.sets[i]),
        format!("A_i^{m} restricted to Y_{n} is A_i^{n}"),
    );
    let ring = TabulatedRing::boolean(top.x_size)?;
    let all = (1u32 << top.x_size) - 1;
    let subgroup_for = |f: &IndependentFamily| {
        let mut gens: Vec<Elem> = f.sets.iter().map(|&s| s as Elem).collect();
        let outside = all & !((1u32 << f.x_size) - 1);
        gens.extend((0..top.x_size).filter(|&y| outside >> y & 1 == 1).map(|y| 1 << y));
        closure(&ring, &gens)
    };
    let h_m = subgroup_for(top);
    let h_n = subgroup_for(low);
    b.param("index_h_m", h_m.index()).param("index_h_n", h_n.index());
    let witness_mask = top.union_of_first(n as usize);
    let witness = witness_mask as Elem;
    b.witness("family_m", top.sets.iter().map(|&s| mask_set(s)).collect::<Vec<_>>());
    b.witness("family_n", low.sets.iter().map(|&s| mask_set(s)).collect::<Vec<_>>());
    b.witness("witness", mask_set(witness_mask));

    let x_m = b.timed("product_set_m", || product_set(h_m.carrier(), SideMode::LEFT));
    let terms = union_decomposition(&top.sets[..n as usize], all);
    b.check_bool(
        "union_decomposition",
        terms.iter().all(|&t| x_m.contains(t as Elem)) && terms.iter().fold(0, |acc, t| acc ^ t) == witness_mask,
        "witness is a sum of n elements of R·H_m",
    );
    let upper = b.timed("upper_fold", || x_m.n_fold_sum(n));
    b.check_bool("inside_fold_m", upper.contains(witness), format!("witness in the {n}-fold sum of R·H_{m}"));
    if n == 1 {
        b.check("outside_fold_n", Verdict::Pass, "base case: the 0-fold sum is {0} and the witness is nonempty");
    } else {
        let x_n = b.timed("product_set_n", || product_set(h_n.carrier(), SideMode::LEFT));
        let lower = b.timed("lower_fold", || x_n.n_fold_sum(n - 1));
        b.check_bool(
            "outside_fold_n",
            !lower.contains(witness),
            format!("witness not in the {}-fold sum of R·H_{n} ({} elements)", n - 1, lower.len()),
        );
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(n: u32) -> ScenarioReport {
        run_z2_steps(&Params::new().with("n", n), &Context::default()).unwrap()
    }

    #[test]
    fn two_and_three_steps() {
        let r = run(2);
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
        assert_eq!(r.witness("witness").unwrap(), "{1,2,3}");
        assert_eq!(r.params["min_steps"], 2);
        let r = run(3);
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
        assert_eq!(r.params["min_steps"], 3);
    }

    #[test]
    fn base_case_and_cap() {
        let r = run(1);
        assert_eq!(r.status, Verdict::Pass);
        let r = run(5);
        assert_eq!(r.status, Verdict::Inconclusive);
        assert!(run_z2_steps(&Params::new(), &Context::default()).is_err());
    }

    #[test]
    fn nested_families_follow_recursion() {
        let fams = nested_family(3).unwrap();
        assert_eq!(fams[0].sets, vec![0b1]);
        assert_eq!(fams[1].x_size, 8);
        assert_eq!(fams[2].x_size, 16);
        for f in &fams {
            assert!(f.independent(), "{f:?}");
        }
        assert_eq!(fams[1].sets[0] & 0xf, 0b1);
        assert_eq!(fams[1].sets[1] & 0xf, 0b1);
    }

    #[test]
    fn nested_small() {
        let r = run_nested_chain(&Params::new().with("n", 2).with("m", 2), &Context::default()).unwrap();
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
        let r = run_nested_chain(&Params::new().with("n", 1).with("m", 2), &Context::default()).unwrap();
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
        assert!(run_nested_chain(&Params::new().with("n", 3).with("m", 2), &Context::default()).is_err());
    }
}
