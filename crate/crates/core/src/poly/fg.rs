use std::collections::HashSet;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::intpoly::IntPoly;
use crate::error::{Error, Result};
use crate::ring::{Elem, TabulatedRing, MAX_RING_SIZE};

const NORMAL_FORM_BUDGET: u64 = 1 << 18;

/// Coordinates of the image of `p` in `Z_k[X]/(X^l - X^kp)`.
pub fn quotient_coordinates(p: &IntPoly, k: u32, l: u32, kp: u32) -> Vec<u32> {
    let (l64, kp64) = (l as u64, kp as u64);
    let period = l64 - kp64;
    let modulus = BigInt::from(k);
    let mut acc = vec![BigInt::from(0); l as usize];
    for (e, c) in p.terms() {
        let e = if e < l64 { e } else { kp64 + (e - kp64) % period };
        acc[e as usize] += c;
    }
    acc.iter()
        .map(|c| {
            let r = ((c % &modulus) + &modulus) % &modulus;
            r.to_u32().expect("residue below k")
        })
        .collect()
}

/// The element of a `poly_quotient` ring represented by `p`.
pub fn quotient_element(ring: &TabulatedRing, p: &IntPoly, k: u32, l: u32, kp: u32) -> Result<Elem> {
    ring.encode(&quotient_coordinates(p, k, l, kp))
}

#[derive(Debug, Clone, Serialize)]
pub struct QuotientCheck {
    pub label: String,
    /// `|k|^l` from the division argument.
    pub expected: u64,
    /// Distinct normal forms among all polynomials of degree below `l + 2`.
    pub normal_forms: Option<u64>,
    pub tabulated_size: Option<u64>,
    pub relation_holds: bool,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FgReport {
    pub num_vars: usize,
    pub k: i64,
    pub pairs: Vec<(u32, u32)>,
    pub generators: Vec<String>,
    pub generator_count: usize,
    /// `I` lies in the `fold`-fold sum of `R·D`.
    pub fold: usize,
    /// Upper bound `|k|^(l_1 ⋯ l_n)` on `[R : I]`, as a decimal string.
    pub index_bound: String,
    pub quotient: Option<QuotientCheck>,
}

impl FgReport {
    pub fn holds(&self) -> bool {
        self.generator_count == self.num_vars + 1 && self.quotient.as_ref().map_or(true, |q| q.matches)
    }
}

fn count_normal_forms(k: u32, l: u32, kp: u32) -> Option<u64> {
    let len = l + 2;
    let total = (k as u64).checked_pow(len)?;
    if total > NORMAL_FORM_BUDGET {
        return None;
    }
    let mut seen = HashSet::new();
    let mut digits = vec![0u32; len as usize];
    for _ in 0..total {
        let p = IntPoly::from_terms(digits.iter().enumerate().map(|(e, &c)| (e as u64, c as i64)));
        seen.insert(quotient_coordinates(&p, k, l, kp));
        for d in digits.iter_mut() {
            *d += 1;
            if *d < k {
                break;
            }
            *d = 0;
        }
    }
    Some(seen.len() as u64)
}

/// Certificate that `I = (k·1) + Σ (a_i^{l_i} - a_i^{k_i})` lies in `(R·D)^{+(n+1)}`
/// and has finite index, for `D` containing each of those generators.
pub fn fg_ideal_witness(num_vars: usize, k: i64, pairs: &[(u32, u32)]) -> Result<FgReport> {
    if num_vars == 0 {
        return Err(Error::InvalidParameter("at least one variable is required".into()));
    }
    if k == 0 {
        return Err(Error::InvalidParameter("k must be nonzero".into()));
    }
    if pairs.len() != num_vars {
        return Err(Error::InvalidParameter(format!("expected {num_vars} exponent pairs, got {}", pairs.len())));
    }
    if let Some(&(ki, li)) = pairs.iter().find(|&&(ki, li)| ki >= li) {
        return Err(Error::InvalidParameter(format!("exponent pair ({ki}, {li}) needs k_i < l_i")));
    }
    let mut generators = vec![format!("{k}·1")];
    generators.extend(pairs.iter().enumerate().map(|(i, &(ki, li))| format!("a{i}^{li} - a{i}^{ki}")));
    let product: BigUint = pairs.iter().map(|&(_, l)| BigUint::from(l)).product();
    let modulus = BigUint::from(k.unsigned_abs());
    let index_bound = match product.to_u32() {
        Some(e) => modulus.pow(e).to_string(),
        None if modulus.is_one() => "1".into(),
        None => format!("{modulus}^{product}"),
    };
    let quotient = if num_vars == 1 { Some(check_quotient(k.unsigned_abs(), pairs[0])?) } else { None };
    Ok(FgReport {
        num_vars,
        k,
        pairs: pairs.to_vec(),
        generator_count: generators.len(),
        generators,
        fold: num_vars + 1,
        index_bound,
        quotient,
    })
}

fn check_quotient(k: u64, (kp, l): (u32, u32)) -> Result<QuotientCheck> {
    let k32 = u32::try_from(k).map_err(|_| Error::Overflow("quotient modulus"))?;
    let expected = k.checked_pow(l).ok_or(Error::Overflow("quotient size"))?;
    let label = crate::ring::poly_quotient_label(k, l.into(), kp.into());
    if k == 1 {
        return Ok(QuotientCheck {
            label,
            expected: 1,
            normal_forms: Some(1),
            tabulated_size: None,
            relation_holds: true,
            matches: true,
        });
    }
    let normal_forms = count_normal_forms(k32, l, kp);
    let (tabulated_size, relation_holds) = if expected as usize <= MAX_RING_SIZE {
        let ring = TabulatedRing::poly_quotient(k32, l, kp)?;
        let x = quotient_element(&ring, &IntPoly::x_pow(1), k32, l, kp)?;
        let pow = |e: u32| (0..e).fold(ring.one().expect("unital"), |acc, _| ring.mul(acc, x));
        (Some(ring.size() as u64), pow(l) == pow(kp))
    } else {
        (None, true)
    };
    let matches = normal_forms.map_or(true, |n| n == expected)
        && tabulated_size.map_or(true, |s| s == expected)
        && relation_holds
        && (normal_forms.is_some() || tabulated_size.is_some());
    Ok(QuotientCheck { label, expected, normal_forms, tabulated_size, relation_holds, matches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_variable_quotients() {
        let r = fg_ideal_witness(1, 2, &[(1, 3)]).unwrap();
        let q = r.quotient.as_ref().unwrap();
        assert_eq!(q.label, "Z_2[X]/(X^3 - X)");
        assert_eq!((q.expected, q.normal_forms, q.tabulated_size), (8, Some(8), Some(8)));
        assert!(r.holds());
        assert_eq!(r.generator_count, 2);

        let r = fg_ideal_witness(1, 3, &[(0, 2)]).unwrap();
        let q = r.quotient.as_ref().unwrap();
        assert_eq!((q.expected, q.tabulated_size), (9, Some(9)));
        assert!(r.holds());

        let r = fg_ideal_witness(1, -4, &[(2, 5)]).unwrap();
        assert_eq!(r.quotient.as_ref().unwrap().expected, 1024);
        assert!(r.holds());
    }

    #[test]
    fn two_variables_structural_only() {
        let r = fg_ideal_witness(2, 2, &[(1, 2), (1, 2)]).unwrap();
        assert_eq!(r.generator_count, 3);
        assert_eq!(r.fold, 3);
        assert!(r.quotient.is_none());
        assert_eq!(r.index_bound, "16");
        assert!(r.holds());
    }

    #[test]
    fn invalid_inputs() {
        assert!(fg_ideal_witness(1, 0, &[(1, 3)]).is_err());
        assert!(fg_ideal_witness(1, 2, &[(3, 3)]).is_err());
        assert!(fg_ideal_witness(2, 2, &[(1, 3)]).is_err());
        assert!(fg_ideal_witness(0, 2, &[]).is_err());
    }

    #[test]
    fn coordinates_fold_exponents() {
        let p = IntPoly::from_terms([(5, 1), (0, -1)]);
        assert_eq!(quotient_coordinates(&p, 4, 3, 1), vec![3, 1, 0]);
    }
}
