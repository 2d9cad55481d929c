use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::intpoly::IntPoly;
use super::primes::{factorial, is_prime, sieve};
use crate::error::{Error, Result};

/// Parities of the odd-coefficient monomial counts, split by exponent primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ParityProfile {
    pub prime_parity: u8,
    pub nonprime_parity: u8,
}

impl ParityProfile {
    pub fn is_zero(self) -> bool {
        self.prime_parity == 0 && self.nonprime_parity == 0
    }
}

pub fn parity_profile(p: &IntPoly) -> ParityProfile {
    let flags = sieve(p.degree().unwrap_or(0));
    let (mut prime, mut nonprime) = (0u8, 0u8);
    for e in p.odd_support() {
        if flags[e as usize] {
            prime ^= 1;
        } else {
            nonprime ^= 1;
        }
    }
    ParityProfile { prime_parity: prime, nonprime_parity: nonprime }
}

/// Membership in `H = 2R + <X^n - X^m : n, m both prime or both not prime>`.
pub fn in_h(p: &IntPoly) -> bool {
    parity_profile(p).is_zero()
}

/// The coset representative `α + βX²` of `p` modulo `H`.
pub fn coset_representative(p: &IntPoly) -> IntPoly {
    let prof = parity_profile(p);
    IntPoly::from_terms([(0, prof.nonprime_parity as i64), (2, prof.prime_parity as i64)])
}

/// The four coset representatives of `H`.
pub fn h_coset_representatives() -> [IntPoly; 4] {
    [IntPoly::zero(), IntPoly::one(), IntPoly::x_pow(2), IntPoly::from_terms([(2, 1), (0, 1)])]
}

/// Eisenstein's criterion at `prime`.
pub fn eisenstein_witness(p: &IntPoly, prime: u64) -> Result<bool> {
    if !is_prime(prime) {
        return Err(Error::NotPrime(prime));
    }
    let deg = match p.degree() {
        Some(d) if d > 0 => d,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "Eisenstein's criterion needs a non-constant polynomial, got {p}"
            )))
        }
    };
    let q = BigInt::from(prime);
    let divides = |c: &BigInt| (c % &q).is_zero();
    let lower_ok = (0..deg).all(|e| divides(&p.coefficient(e)));
    let leading_ok = !divides(&p.coefficient(deg));
    let constant_ok = !(p.coefficient(0) % (&q * &q)).is_zero();
    Ok(lower_ok && leading_ok && constant_ok)
}

fn factorial_int(m: u64) -> Result<(u64, BigInt)> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let f = factorial(m)?;
    Ok((f, BigInt::from(f)))
}

/// `Q_{m,p} = X^{m!+m} + pX^m + m!p`, for a prime `p ≡ -1 (mod m!)`.
pub fn build_q(m: u64, p: u64) -> Result<IntPoly> {
    let (f, fb) = factorial_int(m)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if (p + 1) % f != 0 {
        return Err(Error::NotMinusOne { p, modulus: f });
    }
    let pb = BigInt::from(p);
    let mut q = IntPoly::x_pow(f + m);
    q.add_term(m, pb.clone());
    q.add_term(0, fb * pb);
    Ok(q)
}

/// `Q'_m = X^{m!+m} - X^m`.
pub fn build_q_prime(m: u64) -> Result<IntPoly> {
    let (f, _) = factorial_int(m)?;
    Ok(IntPoly::from_terms([(f + m, 1), (m, -1)]))
}

/// `Q''_m = X^{m!+m} - X^m + m!X`.
pub fn build_q_double_prime(m: u64) -> Result<IntPoly> {
    let (_, fb) = factorial_int(m)?;
    let mut q = build_q_prime(m)?;
    q.add_term(1, fb);
    Ok(q)
}

/// Normal form modulo `I_m = (m!, X^{m!+m} - X^m)` together with the cofactors
/// `u, v` satisfying `p - normal = m!·u + (X^{m!+m} - X^m)·v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Reduction {
    pub m: u64,
    pub normal: IntPoly,
    pub u: IntPoly,
    pub v: IntPoly,
}

impl Reduction {
    /// Recomputes `m!·u + (X^{m!+m} - X^m)·v` and compares it to `p - normal`.
    pub fn certifies(&self, p: &IntPoly) -> bool {
        let (Ok((_, fb)), Ok(g)) = (factorial_int(self.m), build_q_prime(self.m)) else {
            return false;
        };
        let rhs = &self.u.scale(&fb) + &(&g * &self.v);
        &(p - &self.normal) == &rhs
    }
}

pub fn reduce_mod_im(p: &IntPoly, m: u64) -> Result<Reduction> {
    let (f, fb) = factorial_int(m)?;
    let top = f.checked_add(m).ok_or(Error::Overflow("reduction degree"))?;
    let mut folded = IntPoly::zero();
    let mut v = IntPoly::zero();
    for (e, c) in p.terms() {
        let mut e = e;
        while e >= top {
            v.add_term(e - top, c.clone());
            e -= f;
        }
        folded.add_term(e, c.clone());
    }
    let mut normal = IntPoly::zero();
    let mut u = IntPoly::zero();
    for (e, c) in folded.terms() {
        let (q, r) = c.div_mod_floor(&fb);
        u.add_term(e, q);
        normal.add_term(e, r);
    }
    Ok(Reduction { m, normal, u, v })
}

#[derive(Debug, Clone, Serialize)]
pub struct Premise {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateVerdict {
    Certified,
    Inconclusive,
}

/// An inference (not an enumeration) that `q ∉ R·H`.
#[derive(Debug, Clone, Serialize)]
pub struct NotInRhCertificate {
    pub polynomial: IntPoly,
    pub eisenstein_prime: Option<u64>,
    pub premises: Vec<Premise>,
    pub conclusion: Option<String>,
    pub method: &'static str,
    pub verdict: CertificateVerdict,
}

fn small_prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = 2u64;
    while d <= 1_000_000 && !n.is_one() {
        let db = BigInt::from(d);
        if (&n % &db).is_zero() {
            out.push(d);
            while (&n % &db).is_zero() {
                n /= &db;
            }
        }
        d += 1;
    }
    if !n.is_one() {
        if let Ok(rest) = u64::try_from(&n) {
            if is_prime(rest) {
                out.push(rest);
            }
        }
    }
    out
}

/// Certifies `q ∉ R·H` from three premises: `q` is irreducible in `Z[X]`
/// (primitive and Eisenstein at some prime), `q ∉ H`, and `1 ∉ H`.
///
/// A factorisation `q = r·h` with `h ∈ H` would force one factor to be `±1`:
/// `h = ±1` contradicts `1 ∉ H`, and `r = ±1` contradicts `q ∉ H`.
/// If `prime` is `None`, the prime divisors of the constant term are tried.
pub fn certify_not_in_rh(q: &IntPoly, prime: Option<u64>) -> Result<NotInRhCertificate> {
    let candidates = match prime {
        Some(p) => {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            vec![p]
        }
        None => small_prime_divisors(&q.coefficient(0)),
    };
    let non_constant = q.degree().is_some_and(|d| d > 0);
    let primitive = q.content().is_one();
    let eisenstein_prime =
        if non_constant { candidates.into_iter().find(|&p| eisenstein_witness(q, p).unwrap_or(false)) } else { None };
    let irreducible = Premise {
        name: "irreducible".into(),
        holds: primitive && eisenstein_prime.is_some(),
        detail: match eisenstein_prime {
            Some(p) if primitive => format!("primitive and Eisenstein at {p}"),
            Some(p) => format!("Eisenstein at {p} but content {} is not a unit", q.content()),
            None => "no Eisenstein prime found".into(),
        },
    };
    let prof = parity_profile(q);
    let q_outside = Premise {
        name: "q_not_in_H".into(),
        holds: !prof.is_zero(),
        detail: format!("prime parity {}, non-prime parity {}", prof.prime_parity, prof.nonprime_parity),
    };
    let one_prof = parity_profile(&IntPoly::one());
    let one_outside = Premise {
        name: "one_not_in_H".into(),
        holds: !one_prof.is_zero(),
        detail: format!("non-prime parity of 1 is {}", one_prof.nonprime_parity),
    };
    let premises = vec![irreducible, q_outside, one_outside];
    let certified = premises.iter().all(|p| p.holds);
    Ok(NotInRhCertificate {
        polynomial: q.clone(),
        eisenstein_prime,
        premises,
        conclusion: certified.then(|| "q is not in R·H".to_string()),
        method: "inference",
        verdict: if certified { CertificateVerdict::Certified } else { CertificateVerdict::Inconclusive },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(terms: &[(u64, i64)]) -> IntPoly {
        IntPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn h_membership_examples() {
        assert!(in_h(&poly(&[(3, 1), (5, -1)])));
        let p = poly(&[(2, 1), (4, -1)]);
        assert!(!in_h(&p));
        assert_eq!(parity_profile(&p), ParityProfile { prime_parity: 1, nonprime_parity: 1 });
        assert!(in_h(&poly(&[(7, 2), (4, 1), (6, 1)])));
        assert!(!in_h(&IntPoly::one()));
    }

    #[test]
    fn coset_representatives_are_distinct_classes() {
        let reps = h_coset_representatives();
        for (i, a) in reps.iter().enumerate() {
            assert_eq!(&coset_representative(a), a);
            for b in &reps[i + 1..] {
                assert!(!in_h(&(a - b)));
            }
        }
        let p = poly(&[(9, 3), (5, 1), (0, 7)]);
        assert!(in_h(&(&p - &coset_representative(&p))));
    }

    #[test]
    fn eisenstein_examples() {
        assert!(eisenstein_witness(&poly(&[(4, 1), (2, 3), (0, 6)]), 3).unwrap());
        assert!(!eisenstein_witness(&poly(&[(2, 1), (0, 4)]), 2).unwrap());
        assert!(eisenstein_witness(&poly(&[(2, 1), (1, 2), (0, 2)]), 2).unwrap());
        assert_eq!(eisenstein_witness(&poly(&[(2, 1)]), 4), Err(Error::NotPrime(4)));
        assert!(eisenstein_witness(&IntPoly::constant(3), 3).is_err());
    }

    #[test]
    fn builders() {
        assert_eq!(build_q(2, 3).unwrap().to_string(), "X^4 + 3X^2 + 6");
        assert_eq!(build_q(3, 5).unwrap().to_string(), "X^9 + 5X^3 + 30");
        assert_eq!(build_q(2, 5).unwrap().to_string(), "X^4 + 5X^2 + 10");
        assert_eq!(build_q_prime(2).unwrap().to_string(), "X^4 - X^2");
        assert_eq!(build_q_double_prime(2).unwrap().to_string(), "X^4 - X^2 + 2X");
        assert_eq!(build_q(3, 7), Err(Error::NotMinusOne { p: 7, modulus: 6 }));
        assert_eq!(build_q(2, 9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn reduction_examples() {
        for (m, p) in [(2, 3), (3, 5), (4, 23), (5, 239)] {
            let q = build_q(m, p).unwrap();
            let r = reduce_mod_im(&q, m).unwrap();
            assert!(r.normal.is_zero(), "m={m}: {}", r.normal);
            assert!(r.certifies(&q));
            let qp = build_q_prime(m).unwrap();
            assert!(reduce_mod_im(&qp, m).unwrap().normal.is_zero());
        }
        assert_eq!(reduce_mod_im(&IntPoly::x_pow(4), 2).unwrap().normal, IntPoly::x_pow(2));
        assert!(reduce_mod_im(&IntPoly::constant(6), 3).unwrap().normal.is_zero());
        assert!(reduce_mod_im(&IntPoly::one(), 0).is_err());
    }

    #[test]
    fn certificates() {
        for (m, p) in [(2, 3), (3, 5)] {
            let c = certify_not_in_rh(&build_q(m, p).unwrap(), Some(p)).unwrap();
            assert_eq!(c.verdict, CertificateVerdict::Certified);
            assert_eq!(c.eisenstein_prime, Some(p));
            let auto = certify_not_in_rh(&build_q(m, p).unwrap(), None).unwrap();
            assert_eq!(auto.verdict, CertificateVerdict::Certified);
        }
        let c = certify_not_in_rh(&IntPoly::x_pow(2), None).unwrap();
        assert_eq!(c.verdict, CertificateVerdict::Inconclusive);
        assert!(c.conclusion.is_none());
        let c = certify_not_in_rh(&build_q_prime(2).unwrap(), None).unwrap();
        assert_eq!(c.verdict, CertificateVerdict::Inconclusive);
    }

    fn arb_poly() -> impl Strategy<Value = IntPoly> {
        proptest::collection::vec((0u64..16, -5i64..5), 0..6).prop_map(IntPoly::from_terms)
    }

    proptest! {
        #[test]
        fn h_is_a_subgroup_kernel(a in arb_poly(), b in arb_poly(), x in 0u64..40, y in 0u64..40) {
            if in_h(&a) && in_h(&b) {
                prop_assert!(in_h(&(&a + &b)));
            }
            prop_assert!(in_h(&a.scale(&BigInt::from(2))));
            prop_assert_eq!(in_h(&(&a + &b)), coset_representative(&a) == coset_representative(&(-&b)));
            let flags = sieve(40);
            let gen = &IntPoly::x_pow(x) - &IntPoly::x_pow(y);
            if flags[x as usize] == flags[y as usize] {
                prop_assert!(in_h(&gen));
            } else {
                prop_assert!(!in_h(&gen));
            }
        }

        #[test]
        fn reduction_is_sound_idempotent_and_additive(a in arb_poly(), b in arb_poly(), m in 1u64..4) {
            let ra = reduce_mod_im(&a, m).unwrap();
            prop_assert!(ra.certifies(&a));
            prop_assert_eq!(&reduce_mod_im(&ra.normal, m).unwrap().normal, &ra.normal);
            let rb = reduce_mod_im(&b, m).unwrap();
            let sum = reduce_mod_im(&(&a + &b), m).unwrap().normal;
            prop_assert_eq!(sum, reduce_mod_im(&(&ra.normal + &rb.normal), m).unwrap().normal);
        }

        #[test]
        fn products_with_h_are_never_certified(r in arb_poly(), h in arb_poly()) {
            let h = &h - &coset_representative(&h);
            prop_assume!(!h.is_zero() && !r.is_zero());
            let c = certify_not_in_rh(&(&r * &h), None).unwrap();
            prop_assert_eq!(c.verdict, CertificateVerdict::Inconclusive);
        }
    }
}
