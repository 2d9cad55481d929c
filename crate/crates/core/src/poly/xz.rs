use serde::Serialize;

use super::intpoly::IntPoly;
use super::primes::is_prime;
use super::zx::{build_q_double_prime, parity_profile, reduce_mod_im, ParityProfile};
use crate::error::{Error, Result};

fn require_xz(p: &IntPoly) -> Result<()> {
    if p.coefficient(0) != 0.into() {
        return Err(Error::NotInXZ);
    }
    Ok(())
}

/// Parity profile of an element of `XZ[X]`.
pub fn xz_parity_profile(p: &IntPoly) -> Result<ParityProfile> {
    require_xz(p)?;
    Ok(parity_profile(p))
}

/// Membership in `2·XZ[X] + <X^n - X^m : n, m > 0 both prime or both not prime>`.
pub fn in_h_xz(p: &IntPoly) -> Result<bool> {
    Ok(xz_parity_profile(p)?.is_zero())
}

/// Every product of two elements of `XZ[X]` has valuation at least 2.
pub fn in_rr_possible(p: &IntPoly) -> Result<bool> {
    require_xz(p)?;
    Ok(p.valuation().map_or(true, |v| v >= 2))
}

#[derive(Debug, Clone, Serialize)]
pub struct XzReport {
    pub m: u64,
    pub polynomial: IntPoly,
    pub degree_one_coefficient: String,
    pub valuation: Option<u64>,
    pub not_in_rr: bool,
    pub m_is_prime: bool,
    /// `Some` only for prime `m`.
    pub not_in_h: Option<bool>,
    pub profile: ParityProfile,
    pub reduces_to_zero: bool,
    pub reduction_certified: bool,
}

impl XzReport {
    pub fn holds(&self) -> bool {
        self.not_in_rr && self.not_in_h.unwrap_or(true) && self.reduces_to_zero && self.reduction_certified
    }
}

/// Checks on `Q''_m = X^{m!+m} - X^m + m!X` inside `XZ[X]`.
pub fn xz_checks(m: u64) -> Result<XzReport> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!("m must be at least 2, got {m}")));
    }
    let q = build_q_double_prime(m)?;
    let profile = xz_parity_profile(&q)?;
    let not_in_rr = !in_rr_possible(&q)?;
    let m_is_prime = is_prime(m);
    let reduction = reduce_mod_im(&q, m)?;
    let no_constant_cofactor = reduction.u.coefficient(0) == 0.into();
    Ok(XzReport {
        m,
        degree_one_coefficient: q.coefficient(1).to_string(),
        valuation: q.valuation(),
        not_in_rr,
        m_is_prime,
        not_in_h: m_is_prime.then(|| !profile.is_zero()),
        profile,
        reduces_to_zero: reduction.normal.is_zero(),
        reduction_certified: reduction.certifies(&q) && no_constant_cofactor,
        polynomial: q,
    })
}
