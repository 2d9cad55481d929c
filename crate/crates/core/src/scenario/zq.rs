use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::{ReportBuilder, ScenarioReport, Verdict};
use super::{Context, Params};
use crate::additive::{closure, enumerate_subgroups, triangularize, ElementSet, Subgroup};
use crate::error::{Error, Result};
use crate::ring::{Elem, TabulatedRing};
use crate::stepgen::{find_ideal_within, is_ideal, product_set, SideMode};

const BOUND_CLAIM: &str = "the index bound for ideals inside R·H in finite powers of Z_q";
const TRI_CLAIM: &str = "lower-triangular generators for finite-index subgroups of Z_q^N";

/// Subgroup count above which the full enumeration is refused.
const SUBGROUP_LIMIT: usize = 20_000;

fn ring_size_of(q: u64, n: u32) -> Option<u64> {
    q.checked_pow(n)
}

/// Outcome of the index-bound analysis for one subgroup.
struct BoundOutcome {
    ideal_ok: bool,
    n: usize,
    found_index: Option<usize>,
    bound: Option<u128>,
    verified: bool,
    exhaustive: bool,
}

impl BoundOutcome {
    fn holds(&self) -> bool {
        self.ideal_ok
            && self.verified
            && match (self.found_index, self.bound) {
                (Some(i), Some(b)) => (i as u128) < b,
                (Some(_), None) => true,
                (None, _) => false,
            }
    }
}

fn analyze(ring: &TabulatedRing, q: u64, dim: usize, h: &Subgroup<'_>) -> Result<BoundOutcome> {
    let gens: Vec<Vec<i64>> = h
        .generators()
        .iter()
        .map(|&g| ring.coordinates(g).expect("radix ring").into_iter().map(i64::from).collect())
        .collect();
    let basis = triangularize(q, dim, &gens)?;
    let n = basis.noninvertible().last().map_or(0, |&i| i + 1);
    let x = product_set(h.carrier(), SideMode::LEFT);
    let ideal = ElementSet::from_elems(
        ring,
        ring.elements().filter(|&e| ring.coordinates(e).expect("radix ring")[..n].iter().all(|&c| c == 0)),
    );
    let ideal_ok = is_ideal(&ideal) && ideal.is_subset(&x);
    let search = find_ideal_within(&x);
    let verified = search.found.as_ref().is_some_and(|i| is_ideal(i) && i.is_subset(&x));
    let found_index = search.found.as_ref().map(|i| ring.size() / i.len());
    let bound = u32::try_from(h.index()).ok().and_then(|e| (q as u128).checked_pow(e));
    Ok(BoundOutcome { ideal_ok, n, found_index, bound, verified, exhaustive: search.exhaustive })
}

pub fn run_zq_subgroup(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["q", "N", "gens"])?;
    let q: u64 = params.require("q")?;
    let dim: u32 = params.require("N")?;
    let gens: Option<Vec<Vec<i64>>> = params.opt("gens")?;
    if q < 2 || dim == 0 {
        return Err(Error::InvalidParameter(format!("need q >= 2 and N >= 1, got q={q}, N={dim}")));
    }
    if let Some(bad) = gens.iter().flatten().find(|g| g.len() != dim as usize) {
        return Err(Error::InvalidParameter(format!("generator {bad:?} does not have N={dim} coordinates")));
    }
    let mut b = ReportBuilder::new("zq-index-bound", BOUND_CLAIM, ctx.caps);
    b.param("q", q).param("N", dim);
    match ring_size_of(q, dim) {
        Some(s) if s <= ctx.caps.max_ring_size as u64 && q <= u32::MAX as u64 => {}
        _ => {
            b.check(
                "ring_size",
                Verdict::Inconclusive,
                format!("cap exceeded: Z_{q}^{dim} exceeds {}", ctx.caps.max_ring_size),
            );
            return Ok(b.finish());
        }
    }
    let ring = TabulatedRing::zq_power(q as u32, dim)?;
    let dim = dim as usize;

    match gens {
        Some(gens) => {
            b.param("gens", &gens);
            let elems = gens
                .iter()
                .map(|g| ring.encode(&g.iter().map(|&v| v.rem_euclid(q as i64) as u32).collect::<Vec<_>>()))
                .collect::<Result<Vec<Elem>>>()?;
            let h = closure(&ring, &elems);
            let out = b.timed("analysis", || analyze(&ring, q, dim, &h))?;
            b.param("index_h", h.index()).param("n", out.n);
            b.check_bool(
                "tail_ideal_in_product_set",
                out.ideal_ok,
                format!("0^{} × Z_{q}^{} is an ideal inside R·H", out.n, dim - out.n),
            );
            b.check_bool("ideal_verified", out.verified, "the ideal found inside R·H passes independent verification");
            b.check_bool(
                "index_bound",
                out.holds(),
                format!(
                    "ideal of index {} inside R·H, bound q^[R:H] = {q}^{} ({})",
                    out.found_index.map_or("none".into(), |i| i.to_string()),
                    h.index(),
                    if out.exhaustive { "exhaustive search" } else { "greedy search" }
                ),
            );
            b.witness("ideal_index", out.found_index);
        }
        None => {
            b.param("gens", "all subgroups");
            let Some(all) = b.timed("enumerate", || enumerate_subgroups(&ring, SUBGROUP_LIMIT)) else {
                b.check("subgroups", Verdict::Inconclusive, format!("more than {SUBGROUP_LIMIT} subgroups"));
                return Ok(b.finish());
            };
            let mut failures = Vec::new();
            let mut tail_fail = 0usize;
            let mut unverified = 0usize;
            let mut worst_ratio = 0f64;
            let mut rows = Vec::new();
            b.timed("analysis", || -> Result<()> {
                for h in &all {
                    let out = analyze(&ring, q, dim, h)?;
                    tail_fail += usize::from(!out.ideal_ok);
                    unverified += usize::from(!out.verified);
                    if !out.holds() && failures.len() < 5 {
                        failures.push(ring_decode_all(&ring, h.generators()));
                    }
                    if let (Some(i), Some(bd)) = (out.found_index, out.bound) {
                        worst_ratio = worst_ratio.max(i as f64 / bd as f64);
                    }
                    rows.push(json!([h.index(), out.found_index]));
                }
                Ok(())
            })?;
            b.param("subgroups", all.len());
            b.check_bool(
                "tail_ideal_in_product_set",
                tail_fail == 0,
                format!("{tail_fail} of {} subgroups fail", all.len()),
            );
            b.check_bool(
                "ideal_verified",
                unverified == 0,
                format!("{unverified} of {} ideals fail verification", all.len()),
            );
            b.check_bool(
                "index_bound",
                failures.is_empty(),
                format!(
                    "{} of {} subgroups violate index < q^[R:H]; largest ratio {worst_ratio:.4}",
                    failures.len(),
                    all.len()
                ),
            );
            b.witness("index_pairs", rows);
            if !failures.is_empty() {
                b.witness("violations", failures);
            }
        }
    }
    Ok(b.finish())
}

fn ring_decode_all(ring: &TabulatedRing, elems: &[Elem]) -> Vec<String> {
    elems.iter().map(|&e| ring.decode(e)).collect()
}

/// Determinant by fraction-free elimination.
fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

fn subsets(len: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if len < k {
        return Vec::new();
    }
    let mut out = subsets(len - 1, k);
    for mut s in subsets(len - 1, k - 1) {
        s.push(len - 1);
        out.push(s);
    }
    out
}

/// A modulus `M` with `M·Z^N` inside the lattice: the gcd of all maximal minors.
fn lattice_modulus(gens: &[Vec<i64>], n: usize) -> i128 {
    subsets(gens.len(), n).into_iter().fold(0i128, |acc, rows| {
        let m = rows.iter().map(|&r| gens[r].iter().map(|&v| v as i128).collect()).collect();
        acc.gcd(&bareiss(m))
    })
}

/// `[Z^N : L]` by counting the residues of `L` in `(Z_M)^N`.
fn brute_force_index(gens: &[Vec<i64>], n: usize, modulus: u32) -> Result<usize> {
    let ring = TabulatedRing::zq_power(modulus, n as u32)?;
    let elems = gens
        .iter()
        .map(|g| ring.encode(&g.iter().map(|&v| v.rem_euclid(modulus as i64) as u32).collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?;
    Ok(closure(&ring, &elems).index())
}

fn random_gens(rng: &mut ChaCha8Rng, count: usize, n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    (0..count).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect()).collect()
}

pub fn run_triangularize(params: &Params, ctx: &Context) -> Result<ScenarioReport> {
    params.expect_only(&["count", "qs", "max_n", "lattice_count", "lattice_max_n"])?;
    let count: usize = params.get_or("count", 200)?;
    let qs: Vec<u64> = params.get_or("qs", vec![2, 3, 4, 6])?;
    let max_n: usize = params.get_or("max_n", 6)?;
    let lattice_count: usize = params.get_or("lattice_count", 50)?;
    let lattice_max_n: usize = params.get_or("lattice_max_n", 4)?;
    if qs.is_empty() || qs.iter().any(|&q| q < 2) || max_n == 0 || lattice_max_n == 0 {
        return Err(Error::InvalidParameter("need nonempty qs with every q >= 2, and positive dimensions".into()));
    }
    let mut b = ReportBuilder::new("triangularize", TRI_CLAIM, ctx.caps);
    b.param("count", count).param("qs", &qs).param("max_n", max_n);
    b.param("lattice_count", lattice_count).param("lattice_max_n", lattice_max_n);
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);

    let mut shape_fail = 0usize;
    let mut recon_fail = 0usize;
    let mut count_fail = 0usize;
    let mut index_fail = 0usize;
    let mut skipped = 0usize;
    let mut first_failure = None;
    b.timed("finite", || -> Result<()> {
        for t in 0..count {
            let q = qs[t % qs.len()];
            let fitting: Vec<usize> = (1..=max_n)
                .filter(|&n| ring_size_of(q, n as u32).is_some_and(|s| s <= ctx.caps.max_ring_size as u64))
                .collect();
            let Some(&top) = fitting.last() else {
                skipped += 1;
                continue;
            };
            let n = rng.gen_range(1..=top);
            let k = rng.gen_range(0..=n + 1);
            let gens = random_gens(&mut rng, k, n, 0, q as i64 - 1);
            let ring = TabulatedRing::zq_power(q as u32, n as u32)?;
            let basis = triangularize(q, n, &gens)?;
            let elems = gens
                .iter()
                .map(|g| ring.encode(&g.iter().map(|&v| v as u32).collect::<Vec<_>>()))
                .collect::<Result<Vec<_>>>()?;
            let h = closure(&ring, &elems);
            let shape = (0..n).all(|i| basis.rows[i][i + 1..].iter().all(|&v| v == 0))
                && basis.diagonal.iter().all(|&d| d >= 1 && q as u128 % d == 0);
            let recon = basis.span_in(&ring)?.carrier() == h.carrier();
            let counted = (basis.noninvertible().len() as u128) < basis.index;
            let indexed = basis.index == h.index() as u128;
            for (ok, tally) in [
                (shape, &mut shape_fail),
                (recon, &mut recon_fail),
                (counted, &mut count_fail),
                (indexed, &mut index_fail),
            ] {
                if !ok {
                    *tally += 1;
                    first_failure.get_or_insert_with(|| json!({"q": q, "N": n, "gens": gens.clone()}));
                }
            }
        }
        Ok(())
    })?;
    let done = count - skipped;
    b.check_bool("triangular_shape", shape_fail == 0, format!("{shape_fail} of {done} bases not lower triangular"));
    b.check_bool("reconstruction", recon_fail == 0, format!("{recon_fail} of {done} bases span a different subgroup"));
    b.check_bool(
        "noninvertible_below_index",
        count_fail == 0,
        format!("{count_fail} of {done} bases have at least index-many non-invertible diagonal entries"),
    );
    b.check_bool(
        "index_matches_closure",
        index_fail == 0,
        format!("{index_fail} of {done} products of diagonals differ from the index"),
    );
    if skipped > 0 {
        b.check("finite_coverage", Verdict::Inconclusive, format!("{skipped} instances skipped: ring exceeds cap"));
    }

    let mut lattice_fail = 0usize;
    let mut lattice_done = 0usize;
    let mut exhausted = 0usize;
    let mut sizes = Vec::new();
    b.timed("lattices", || -> Result<()> {
        for t in 0..lattice_count {
            let n = 1 + t % lattice_max_n;
            let budget = (ctx.caps.max_ring_size as f64).powf(1.0 / n as f64).floor() as i128;
            let mut accepted = None;
            for _ in 0..10_000 {
                let extra = rng.gen_range(0..=1);
                let gens = random_gens(&mut rng, n + extra, n, -3, 3);
                let m = lattice_modulus(&gens, n).abs();
                if m >= 1 && m <= budget {
                    accepted = Some((gens, m));
                    break;
                }
            }
            let Some((gens, m)) = accepted else {
                exhausted += 1;
                continue;
            };
            lattice_done += 1;
            let basis = triangularize(0, n, &gens)?;
            let brute = brute_force_index(&gens, n, m.max(2) as u32)?;
            sizes.push(json!([n, basis.index.to_string()]));
            if basis.index != brute as u128 || (0..n).any(|i| basis.rows[i][i + 1..].iter().any(|&v| v != 0)) {
                lattice_fail += 1;
                first_failure.get_or_insert_with(|| json!({"q": 0, "N": n, "gens": gens.clone()}));
            }
        }
        Ok(())
    })?;
    b.check_bool(
        "lattice_index",
        lattice_fail == 0,
        format!("{lattice_fail} of {lattice_done} integer lattices disagree with the brute-force coset count"),
    );
    if exhausted > 0 {
        b.check(
            "lattice_coverage",
            Verdict::Inconclusive,
            format!("{exhausted} lattices could not be sampled within the cap"),
        );
    }
    b.witness("lattice_indices", sizes);
    if let Some(f) = first_failure {
        b.witness("first_failure", f);
    }
    Ok(b.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zq(q: u64, n: u32, gens: serde_json::Value) -> ScenarioReport {
        run_zq_subgroup(&Params::new().with("q", q).with("N", n).with("gens", gens), &Context::default()).unwrap()
    }

    #[test]
    fn single_subgroups() {
        let r = zq(2, 2, json!([[1, 1]]));
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
        assert_eq!(r.witness("ideal_index").unwrap(), 1);
        let r = zq(3, 3, json!([[1, 0, 0], [0, 1, 1]]));
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
        let r = zq(2, 4, json!([[1, 1, 0, 0], [0, 0, 1, 1]]));
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
    }

    #[test]
    fn all_subgroups_small() {
        let r = run_zq_subgroup(&Params::new().with("q", 2).with("N", 3), &Context::default()).unwrap();
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
        assert_eq!(r.params["subgroups"], 16);
    }

    #[test]
    fn invalid_inputs() {
        let ctx = Context::default();
        assert!(run_zq_subgroup(&Params::new().with("q", 1).with("N", 2), &ctx).is_err());
        assert!(run_zq_subgroup(&Params::new().with("q", 2).with("N", 2).with("gens", json!([[1]])), &ctx).is_err());
        let r = run_zq_subgroup(&Params::new().with("q", 2).with("N", 17), &ctx).unwrap();
        assert_eq!(r.status, Verdict::Inconclusive);
    }

    #[test]
    fn determinant_and_modulus() {
        assert_eq!(bareiss(vec![vec![2, 0], vec![1, 3]]), 6);
        assert_eq!(bareiss(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(bareiss(vec![vec![1, 2], vec![2, 4]]), 0);
        assert_eq!(lattice_modulus(&[vec![2, 0], vec![0, 3], vec![1, 1]], 2), 1);
        assert_eq!(brute_force_index(&[vec![2, 0], vec![0, 3]], 2, 6).unwrap(), 6);
    }

    #[test]
    fn seeded_triangularization() {
        let p = Params::new().with("count", 40).with("lattice_count", 12);
        let r = run_triangularize(&p, &Context::default()).unwrap();
        assert_eq!(r.status, Verdict::Pass, "{:#?}", r.checks);
        assert_eq!(r.without_timing(), run_triangularize(&p, &Context::default()).unwrap().without_timing());
    }
}
