use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::report::{ReportBuilder, ScenarioReport, Verdict};
use super::{Context, Params};
use crate::error::{Error, Result};
use crate::ring::nilpotent::{h, nilpotent3_mul, Nilpotent3Element};

const CLAIM: &str = "the class-3 nilpotent ring whose index-2 subgroup has a non-ideal stabilizer";
const ADDITIVITY_PAIRS: usize = 10_000;

/// `f = X_{i_0} + X_{i_1} + ⋯` multiplied by `g = X_{2^{i_0}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NilpotentWitness {
    pub i0: usize,
    pub f: Vec<usize>,
}

fn default_witnesses() -> Vec<NilpotentWitness> {
    vec![
        NilpotentWitness { i0: 1, f: vec![1] },
        NilpotentWitness { i0: 1, f: vec![1, 3, 5] },
        NilpotentWitness { i0: 3, f: vec![3] },
    ]
}

fn validate(w: &NilpotentWitness, k: usize) -> Result<()> {
    if w.i0 % 2 == 0 || w.i0 >= usize::BITS as usize - 1 || 1usize << w.i0 >= k {
        return Err(Error::InvalidParameter(format!("i0={} must be odd with 2^i0 < k={k}", w.i0)));
    }
    let mut f = w.f.clone();
    f.sort_unstable();
    f.dedup();
    if f.len() != w.f.len() || f.first() != Some(&w.i0) {
        return Err(Error::InvalidParameter(format!("f={:?} must list distinct indices starting at i0={}", w.f, w.i0)));
    }
    if let Some(bad) = f.iter().find(|&&i| i % 2 == 0 || i >= k) {
        return Err(Error::InvalidParameter(format!("f index {bad} must be odd and below k={k}")));
    }
    Ok(())
}

/// The value of `h(X_i X_g)` with `g = 2^{i_0}` and `i` odd, `i >= i_0`,
/// read off by case: `i = i_0`, `i < g`, or `i > g`.
fn predicted_term(i: usize, i0: usize) -> (u8, &'static str) {
    let g = 1usize << i0;
    if i == i0 {
        (1, "leading term: g is a positive multiple of 2^i0")
    } else if i < g {
        (0, "i < g: 2^i does not divide g since i > i0")
    } else {
        (0, "i > g: i is odd, so 2^g does not divide it")
    }
}

pub(super) fn random_element(rng: &mut ChaCha8Rng, k: usize) -> Nilpotent3Element {
    let mut x = Nilpotent3Element::zero();
    for i in 0..k {
        if rng.gen::<bool>() {
            x.linear.insert(i);
        }
        for j in 0..=i {
            if rng.gen::<bool>() {
                x.quadratic.insert((j, i));
            }
        }
    }
    x
}

pub fn run_nilpotent(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["k", "i0_list", "witnesses"])?;
    let k: usize = params.get_or("k", 9)?;
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k={k} leaves no odd i0 with 2^i0 < k")));
    }
    let witnesses: Vec<NilpotentWitness> = match (params.opt::<Vec<usize>>("i0_list")?, params.opt("witnesses")?) {
        (Some(_), Some(_)) => return Err(Error::InvalidParameter("give either i0_list or witnesses, not both".into())),
        (Some(list), None) => list.into_iter().map(|i0| NilpotentWitness { i0, f: vec![i0] }).collect(),
        (None, Some(ws)) => ws,
        (None, None) => default_witnesses(),
    };
    if witnesses.is_empty() {
        return Err(Error::InvalidParameter("at least one witness is required".into()));
    }
    for w in &witnesses {
        validate(w, k)?;
    }
    let mut b = ReportBuilder::new("nilpotent-stab", CLAIM, ctx.caps);
    b.param("k", k).param("witnesses", &witnesses);

    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut violations = 0usize;
    let mut cube_violations = 0usize;
    b.timed("additivity", || {
        for _ in 0..ADDITIVITY_PAIRS {
            let x = random_element(&mut rng, k);
            let y = random_element(&mut rng, k);
            if h(&x.add(&y)) != (h(&x) + h(&y)) % 2 {
                violations += 1;
            }
            let xy = nilpotent3_mul(&x, &y, k).expect("indices in range");
            let yx = nilpotent3_mul(&y, &x, k).expect("indices in range");
            if xy != yx || !nilpotent3_mul(&xy, &x, k).expect("indices in range").is_zero() {
                cube_violations += 1;
            }
        }
    });
    b.check_bool("h_additive", violations == 0, format!("{violations} violations on {ADDITIVITY_PAIRS} seeded pairs"));
    b.check_bool(
        "class_three",
        cube_violations == 0,
        format!("x·y = y·x and x·y·x = 0 on {ADDITIVITY_PAIRS} seeded pairs ({cube_violations} violations)"),
    );
    let x1 = Nilpotent3Element::generator(1, k)?;
    b.check_bool(
        "index_two",
        h(&x1) == 1 && h(&Nilpotent3Element::zero()) == 0,
        "h is onto Z_2 (h(X1) = 1), so H = ker h has index 2",
    );

    let mut rows = Vec::new();
    for w in &witnesses {
        let g_index = 1usize << w.i0;
        let g = Nilpotent3Element::generator(g_index, k)?;
        let f = Nilpotent3Element::sum_of_generators(&w.f, k)?;
        let fg = nilpotent3_mul(&f, &g, k)?;
        let label = format!("i0={} f={f} g=X{g_index}", w.i0);
        let mut terms_ok = true;
        let mut terms = Vec::new();
        for &i in &w.f {
            let term = nilpotent3_mul(&Nilpotent3Element::generator(i, k)?, &g, k)?;
            let (expected, case) = predicted_term(i, w.i0);
            let actual = h(&term);
            terms_ok &= actual == expected;
            terms.push(serde_json::json!({"term": term.to_string(), "h": actual, "expected": expected, "case": case}));
        }
        b.check_bool(&format!("g_in_h[{label}]"), h(&g) == 0, "g has an even index");
        b.check_bool(&format!("bullet_cases[{label}]"), terms_ok, "termwise h-values match the case analysis");
        b.check_bool(
            &format!("product_outside_h[{label}]"),
            h(&fg) == 1,
            format!("h({fg}) = {}, so f is not in Stab(H)", h(&fg)),
        );
        rows.push(serde_json::json!({"i0": w.i0, "f": f.to_string(), "g": g.to_string(), "fg": fg.to_string(), "terms": terms}));
    }
    b.witness("products", rows);
    if b.has_failure() {
        b.check("conclusion", Verdict::Fail, "some witness did not leave H");
    }
    Ok(b.finish())
}
