//! Small integer helpers shared across modules.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

/// Deterministic primality test by trial division; fine at desk scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: u64) -> u32 {
    assert!(!n.is_zero(), "valuation of zero is undefined");
    let p = BigInt::from(p);
    let mut m = n.abs();
    let mut v = 0;
    while (&m % &p).is_zero() {
        m /= &p;
        v += 1;
    }
    v
}

/// gcd of a slice of big integers (0 for the empty slice / all zeros).
pub fn gcd_all(values: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(97));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(&BigInt::from(12), 2), 2);
        assert_eq!(valuation(&BigInt::from(-27), 3), 3);
        assert_eq!(valuation(&BigInt::from(5), 2), 0);
    }
}
