//! Exact arithmetic substrate: rationals, polynomials, dense matrices.

mod matrix;
mod polynomial;
pub mod rational;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use matrix::{solve_linear, RationalMatrix};
pub use polynomial::{Degree, Polynomial};
pub use rational::{format_rational, int, parse_rational, ratio, Rational};

/// `n choose k`, zero when `k < 0` or `k > n`.
pub fn binomial(n: usize, k: i64) -> BigInt {
    if k < 0 || k as u64 > n as u64 {
        return BigInt::zero();
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Binomial coefficient for possibly negative `n` (zero when `n < 0`).
pub fn binomial_signed(n: i64, k: i64) -> BigInt {
    if n < 0 {
        BigInt::zero()
    } else {
        binomial(n as usize, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn factorial(n: usize) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, i| acc * i)
    }

    #[test]
    fn small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn pascal_difference_identity() {
        for a in 1..=12usize {
            for b in 1..=a as i64 {
                assert_eq!(
                    binomial(a, b) - binomial(a - 1, b),
                    binomial(a - 1, b - 1),
                    "a={a} b={b}"
                );
            }
        }
    }

    #[test]
    fn matches_factorial_formula() {
        for n in 0..=20usize {
            for k in 0..=n {
                let expected = factorial(n) / (factorial(k) * factorial(n - k));
                assert_eq!(binomial(n, k as i64), expected);
            }
        }
    }
}
