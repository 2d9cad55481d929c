use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;
const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime(n: u64, a: u64) -> bool {
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test for all `u64`.
///
/// Trial division settles everything below `10^12`; larger inputs go through
/// strong-pseudoprime tests on the first twelve primes, which have no common
/// false positive in range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d <= TRIAL_LIMIT && d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if d * d > n {
        return true;
    }
    WITNESSES.iter().all(|&a| strong_probable_prime(n, a))
}

/// Primality flags for `0..=n`.
pub fn sieve(n: u64) -> Vec<bool> {
    let n = n as usize;
    let mut flags = vec![true; n + 1];
    flags[0] = false;
    if n >= 1 {
        flags[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if flags[i] {
            for j in (i * i..=n).step_by(i) {
                flags[j] = false;
            }
        }
        i += 1;
    }
    flags
}

/// Smallest prime `p ≡ -1 (mod modulus)` among `modulus * t - 1`, `t = 1..=cap`.
pub fn find_prime_neg_one_mod(modulus: u64, cap: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::InvalidParameter(format!("modulus must be at least 2, got {modulus}")));
    }
    for t in 1..=cap {
        let candidate = modulus.checked_mul(t).ok_or(Error::Overflow("prime search"))? - 1;
        if is_prime(candidate) {
            return Ok(candidate);
        }
    }
    Err(Error::PrimeSearchExhausted { modulus, cap })
}

/// `m!` as a `u64`.
pub fn factorial(m: u64) -> Result<u64> {
    (1..=m).try_fold(1u64, |acc, k| acc.checked_mul(k)).ok_or(Error::Overflow("factorial"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes_agree_with_sieve() {
        let flags = sieve(10_000);
        for n in 0..=10_000u64 {
            assert_eq!(is_prime(n), flags[n as usize], "{n}");
        }
    }

    #[test]
    fn large_inputs() {
        assert!(is_prime(1_000_000_007));
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
        assert!(!is_prime(1_000_000_007 * 1_000_000_009));
        // Strong pseudoprime to bases 2..=37 is impossible below 3.3e24; check a Carmichael number.
        assert!(!is_prime(561));
    }

    #[test]
    fn minus_one_search() {
        assert_eq!(find_prime_neg_one_mod(2, 100).unwrap(), 3);
        assert_eq!(find_prime_neg_one_mod(6, 100).unwrap(), 5);
        assert_eq!(find_prime_neg_one_mod(24, 100).unwrap(), 23);
        assert_eq!(find_prime_neg_one_mod(120, 100).unwrap(), 239);
        assert!(matches!(find_prime_neg_one_mod(120, 1), Err(Error::PrimeSearchExhausted { .. })));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0).unwrap(), 1);
        assert_eq!(factorial(7).unwrap(), 5040);
        assert!(factorial(21).is_err());
    }
}
