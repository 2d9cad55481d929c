use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::report::{ReportBuilder, ScenarioReport, Verdict};
use super::{Context, Params};
use crate::additive::ElementSet;
use crate::error::{Error, Result};
use crate::poly::{
    build_q, build_q_prime, certify_not_in_rh, coset_representative, factorial, fg_ideal_witness,
    find_prime_neg_one_mod, h_coset_representatives, in_h, is_prime, parity_profile, quotient_element, reduce_mod_im,
    sieve, xz_checks, CertificateVerdict, IntPoly,
};
use crate::ring::{Elem, TabulatedRing};
use crate::stepgen::is_ideal;

const ZX_CLAIM: &str = "the index-4 subgroup of Z[X] whose product set contains no finite-index ideal";
const XZ_CLAIM: &str = "the index-4 subgroup of XZ[X] whose extended product set contains no finite-index ideal";
const FG_CLAIM: &str = "the finite-index ideal inside (R·D)^{+(n+1)} for finitely generated commutative rings";

const GENERATOR_EXPONENT_LIMIT: u64 = 40;
const DEFAULT_PRIME_CAP: u64 = 10_000;

/// Quotient `Z_k[X]/(X^5 - X)` through which every ideal of index at most `m` factors.
fn divisibility_quotient(m: u64) -> Option<(u32, u32, u32)> {
    match m {
        2 => Some((4, 5, 1)),
        3 => Some((6, 5, 1)),
        _ => None,
    }
}

fn check_cosets(b: &mut ReportBuilder, ctx: &Context) {
    let reps = h_coset_representatives();
    let profiles: Vec<_> = reps.iter().map(parity_profile).collect();
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| profiles[i] != profiles[j] && !in_h(&(&reps[i] - &reps[j]))));
    let flags = sieve(GENERATOR_EXPONENT_LIMIT);
    let mut generators_in_kernel = true;
    for a in 0..GENERATOR_EXPONENT_LIMIT {
        generators_in_kernel &= parity_profile(&IntPoly::monomial(a, 2)).is_zero();
        for c in 0..a {
            if flags[a as usize] == flags[c as usize] {
                generators_in_kernel &= parity_profile(&(&IntPoly::x_pow(a) - &IntPoly::x_pow(c))).is_zero();
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let sampled_ok = (0..500).all(|_| {
        let p = IntPoly::from_terms((0..6).map(|_| (rng.gen_range(0..30u64), rng.gen_range(-9i64..10))));
        let rep = coset_representative(&p);
        reps.contains(&rep) && in_h(&(&p - &rep))
    });
    b.check_bool(
        "coset_representatives",
        distinct && generators_in_kernel && sampled_ok,
        "0, 1, X^2, X^2+1 have the four distinct parity profiles, every generator of H has zero profile, and 500 sampled polynomials reduce to one of them",
    );
    b.witness("coset_representatives", reps.iter().map(|r| r.to_string()).collect::<Vec<_>>());
}

fn check_power_differences(b: &mut ReportBuilder, m: u64, f: u64, q_prime: &IntPoly) -> Result<()> {
    let mut factor_ok = true;
    for k in 1..=m {
        let base = &IntPoly::x_pow(m + k) - &IntPoly::x_pow(m);
        let geometric = IntPoly::from_terms((0..f / k).map(|t| (t * k, 1)));
        factor_ok &= f % k == 0 && &base * &geometric == *q_prime;
    }
    b.check_bool(
        "factorization_identity",
        factor_ok,
        format!("X^(m!+m) - X^m = (1 + X^k + .. + X^(m!-k))(X^(m+k) - X^m) for every k in 1..={m}"),
    );

    let Some((k, l, kp)) = divisibility_quotient(m) else {
        b.param("finite_quotient_checked", false);
        return Ok(());
    };
    b.param("finite_quotient_checked", true);
    let ring = TabulatedRing::poly_quotient(k, l, kp)?;
    let x = quotient_element(&ring, &IntPoly::x_pow(1), k, l, kp)?;
    let targets =
        [quotient_element(&ring, &IntPoly::constant(f), k, l, kp)?, quotient_element(&ring, q_prime, k, l, kp)?];
    let pow_diffs: Vec<Elem> = (0..=m)
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .map(|(i, j)| quotient_element(&ring, &(&IntPoly::x_pow(j) - &IntPoly::x_pow(i)), k, l, kp))
        .collect::<Result<_>>()?;
    let mut ideals = 0usize;
    let mut all_ok = true;
    let mut cross_checked = true;
    for j in 2..=m as u32 {
        if k % j != 0 {
            continue;
        }
        for c in 1..j.pow(l) {
            let coeffs: Vec<u32> = (0..l).map(|i| c / j.pow(i) % j).collect();
            let in_kernel = |e: Elem| {
                let coords = ring.coordinates(e).expect("structured ring");
                coords.iter().zip(&coeffs).map(|(a, b)| a * b).sum::<u32>() % j == 0
            };
            let kernel = ElementSet::from_elems(&ring, ring.elements().filter(|&e| in_kernel(e)));
            if kernel.iter().any(|e| !in_kernel(ring.mul(x, e))) {
                continue;
            }
            ideals += 1;
            all_ok &= targets.iter().all(|&t| kernel.contains(t)) && pow_diffs.iter().any(|&d| kernel.contains(d));
            if ring.size() <= 1024 {
                cross_checked &= is_ideal(&kernel);
            }
        }
    }
    b.check_bool(
        "finite_quotient_ideals",
        all_ok && cross_checked && ideals > 0,
        format!(
            "{ideals} proper ideals of index at most {m} in {} all contain {f} and X^{} - X^{m}, and some X^j - X^i with i < j <= {m}",
            ring.label(),
            f + m
        ),
    );
    Ok(())
}

pub fn run_zx_lemma(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["m", "p", "prime_cap"])?;
    let m: u64 = params.require("m")?;
    if !(2..=7).contains(&m) {
        return Err(Error::InvalidParameter(format!("m must lie in 2..=7, got {m}")));
    }
    let f = factorial(m)?;
    let p = match params.opt::<u64>("p")? {
        Some(p) => p,
        None => find_prime_neg_one_mod(f, params.get_or("prime_cap", DEFAULT_PRIME_CAP)?)?,
    };
    let q = build_q(m, p)?;
    let q_prime = build_q_prime(m)?;
    let mut b = ReportBuilder::new("zx-no-ideal", ZX_CLAIM, ctx.caps);
    b.param("m", m).param("p", p);
    b.witness("Q", &q).witness("Q_prime", &q_prime);

    check_cosets(&mut b, ctx);
    check_power_differences(&mut b, m, f, &q_prime)?;

    let rq = reduce_mod_im(&q, m)?;
    let rqp = reduce_mod_im(&q_prime, m)?;
    b.check_bool(
        "reduction_to_zero",
        rq.normal.is_zero() && rq.certifies(&q) && rqp.normal.is_zero() && rqp.certifies(&q_prime),
        format!("Q and Q' reduce to 0 modulo ({f}, X^{} - X^{m}) with verified cofactors", f + m),
    );
    b.witness("reduction_cofactors", serde_json::json!({ "u": rq.u, "v": rq.v }));

    let diff = &q - &q_prime;
    let prof = parity_profile(&diff);
    b.check_bool(
        "difference_in_h",
        in_h(&diff),
        format!("Q - Q' = {diff}; parities (prime {}, non-prime {})", prof.prime_parity, prof.nonprime_parity),
    );

    let flags = sieve(GENERATOR_EXPONENT_LIMIT);
    let mixed_ok = (0..GENERATOR_EXPONENT_LIMIT).filter(|&a| flags[a as usize]).all(|a| {
        (0..GENERATOR_EXPONENT_LIMIT)
            .filter(|&c| !flags[c as usize])
            .all(|c| !in_h(&(&IntPoly::x_pow(a) - &IntPoly::x_pow(c))))
    });
    b.check_bool(
        "power_differences_outside_h",
        mixed_ok && !in_h(&IntPoly::one()),
        format!("X^a - X^c outside H for all prime a and non-prime c below {GENERATOR_EXPONENT_LIMIT}; 1 outside H"),
    );

    let m_prime = is_prime(m);
    if m_prime {
        b.check_bool("q_prime_not_in_h", !in_h(&q_prime), format!("{} is not prime and {m} is prime", f + m));
        let cert = certify_not_in_rh(&q, Some(p))?;
        let verdict = match cert.verdict {
            CertificateVerdict::Certified => Verdict::Pass,
            CertificateVerdict::Inconclusive => Verdict::Inconclusive,
        };
        let detail = cert.premises.iter().map(|p| format!("{}: {}", p.name, p.detail)).collect::<Vec<_>>().join("; ");
        b.check("certify_not_in_rh", verdict, format!("inference from premises: {detail}"));
        b.witness("certificate", &cert);
        let all_pass = !b.has_failure() && verdict == Verdict::Pass;
        b.check_bool("conclusion", all_pass, format!("Q lies in every ideal of index at most {m} but not in R·H"));
    } else {
        let reason = format!("m={m} is not prime, so Q' lies in H and the certificate does not apply");
        b.check("q_prime_not_in_h", Verdict::Inapplicable, reason.clone());
        b.check("certify_not_in_rh", Verdict::Inapplicable, reason);
    }
    Ok(b.finish())
}

pub fn run_xz_lemma(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["m"])?;
    let m: u64 = params.require("m")?;
    if !(2..=7).contains(&m) {
        return Err(Error::InvalidParameter(format!("m must lie in 2..=7, got {m}")));
    }
    let r = xz_checks(m)?;
    let mut b = ReportBuilder::new("xz-no-ideal", XZ_CLAIM, ctx.caps);
    b.param("m", m);
    b.witness("Q_double_prime", &r.polynomial);
    b.check_bool(
        "not_in_rr",
        r.not_in_rr,
        format!(
            "degree-1 coefficient {} is nonzero, so the valuation is 1 while products have valuation >= 2",
            r.degree_one_coefficient
        ),
    );
    match r.not_in_h {
        Some(outside) => {
            b.check_bool(
                "not_in_h",
                outside,
                format!(
                    "parities over positive exponents: prime {}, non-prime {}",
                    r.profile.prime_parity, r.profile.nonprime_parity
                ),
            );
        }
        None => {
            b.check("not_in_h", Verdict::Inapplicable, format!("m={m} is not prime"));
        }
    }
    b.check_bool(
        "in_ideal_analog",
        r.reduces_to_zero && r.reduction_certified,
        "reduces to 0 using the generators m!X^j and X^(m!+e) - X^e with verified cofactors",
    );
    Ok(b.finish())
}

pub fn run_fg_ideal_witness(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["n", "k", "pairs"])?;
    let n: usize = params.require("n")?;
    let k: i64 = params.require("k")?;
    let pairs: Vec<(u32, u32)> = params.require("pairs")?;
    let r = fg_ideal_witness(n, k, &pairs)?;
    let mut b = ReportBuilder::new("fg-ideal-witness", FG_CLAIM, ctx.caps);
    b.param("n", n).param("k", k).param("pairs", &pairs);
    b.param("generator_count", r.generator_count);
    b.witness("generators", &r.generators);
    b.check_bool(
        "structural",
        r.generator_count == n + 1 && r.fold == n + 1,
        format!("{} generators, each in D, so I lies in the {}-fold sum of R·D", r.generator_count, r.fold),
    );
    b.witness("index_bound", &r.index_bound);
    match &r.quotient {
        Some(q) => {
            b.param("quotient_size", q.tabulated_size);
            b.check_bool(
                "quotient_size",
                q.matches,
                format!(
                    "{}: division count {}, distinct normal forms {:?}, tabulated size {:?}",
                    q.label, q.expected, q.normal_forms, q.tabulated_size
                ),
            );
            b.witness("quotient", q);
        }
        None => {
            b.check("quotient_size", Verdict::Pass, format!("structural certificate only; [R:I] <= {}", r.index_bound));
        }
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zx(m: u64, p: Option<u64>) -> ScenarioReport {
        let mut params = Params::new().with("m", m);
        if let Some(p) = p {
            params = params.with("p", p);
        }
        run_zx_lemma(&params, &Context::default()).unwrap()
    }

    #[test]
    fn zx_small_m() {
        for (m, p) in [(2, None), (3, None), (2, Some(5)), (5, None), (7, None)] {
            let r = zx(m, p);
            assert_eq!(r.status, Verdict::Pass, "m={m}: {:#?}", r.checks);
        }
        assert_eq!(zx(2, None).params["p"], 3);
        assert_eq!(zx(3, None).params["p"], 5);
        assert_eq!(zx(4, None).status, Verdict::Inapplicable);
    }

    #[test]
    fn zx_rejects_bad_prime() {
        let params = Params::new().with("m", 3).with("p", 7);
        assert!(run_zx_lemma(&params, &Context::default()).is_err());
        assert!(run_zx_lemma(&Params::new().with("m", 9), &Context::default()).is_err());
    }

    #[test]
    fn xz_instances() {
        for m in [2, 3, 5] {
            let r = run_xz_lemma(&Params::new().with("m", m), &Context::default()).unwrap();
            assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
        }
    }

    #[test]
    fn fg_instances() {
        let run = |n: usize, k: i64, pairs: Vec<(u32, u32)>| {
            run_fg_ideal_witness(&Params::new().with("n", n).with("k", k).with("pairs", pairs), &Context::default())
        };
        assert_eq!(run(1, 2, vec![(1, 3)]).unwrap().status, Verdict::Pass);
        assert_eq!(run(1, 3, vec![(0, 2)]).unwrap().status, Verdict::Pass);
        assert_eq!(run(2, 2, vec![(1, 2), (1, 2)]).unwrap().status, Verdict::Pass);
        assert!(run(1, 0, vec![(1, 3)]).is_err());
    }
}
