//! Integer combinatorics shared by the closed-form formulas.
//!
//! Every function takes signed arguments and returns 0 where the usual
//! combinatorial meaning is empty (negative indices, parts exceeding the
//! total). This matches how the multi-sums use them: a term whose binomial
//! or falling factorial has an out-of-range index simply vanishes.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: i64) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `C(n, k)`; zero unless `0 ≤ k ≤ n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `C(n; k_1, ..., k_r) = n! / (k_1! ⋯ k_r! (n − Σk)!)`; zero if any part
/// is negative or the parts exceed `n`.
pub fn multinomial(n: i64, parts: &[i64]) -> BigInt {
    let used: i64 = parts.iter().sum();
    if n < 0 || parts.iter().any(|&k| k < 0) || used > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    let mut left = n;
    for &k in parts {
        out *= binomial(left, k);
        left -= k;
    }
    out
}

/// `[r, s] = r(r−1)⋯(r−s+1)` with `[r, 0] = 1`; the `s`-th derivative of
/// `x^r` is `[r, s] x^{r−s}`. Zero for `s < 0`.
pub fn falling_factorial(r: i64, s: i64) -> BigInt {
    if s < 0 {
        return BigInt::zero();
    }
    (0..s).fold(BigInt::one(), |acc, t| acc * (r - t))
}

/// Stirling number of the second kind from the alternating sum
/// `{r, s} = (1/s!) Σ_t (−1)^{s−t} C(s,t) t^r`, with `0⁰ = 1`.
pub fn stirling2(r: i64, s: i64) -> BigInt {
    if r < 0 || s < 0 {
        return BigInt::zero();
    }
    let mut sum = BigInt::zero();
    for t in 0..=s {
        let term = binomial(s, t) * pow(t, r);
        if (s - t) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum / factorial(s)
}

/// `base^exp` for `exp ≥ 0`, with `0⁰ = 1`.
pub fn pow(base: i64, exp: i64) -> BigInt {
    assert!(exp >= 0, "negative exponent");
    num_traits::pow(BigInt::from(base), exp as usize)
}

/// `(−1)^n` as `±1`.
pub fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}
