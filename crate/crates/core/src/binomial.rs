//! Binomial coefficients over big integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// `C(n, k)`, zero whenever `k < 0` or `k > n` (and for negative `n`).
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial as a `u64`, for multiplicities that are known to be small.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pascal_identity() {
        for n in 1..40 {
            for k in 0..=n {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "C({n},{k})"
                );
            }
        }
    }

    #[test]
    fn out_of_range_is_zero() {
        assert!(binomial(5, -1).is_zero());
        assert!(binomial(5, 6).is_zero());
        assert!(binomial(-2, 1).is_zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(6, 1), BigInt::from(6));
        assert_eq!(binomial(6, 2), BigInt::from(15));
    }

    #[test]
    fn small_variant_agrees() {
        for n in 0..30u64 {
            for k in 0..=n + 1 {
                assert_eq!(BigInt::from(binomial_u64(n, k)), binomial(n as i64, k as i64));
            }
        }
    }
}
