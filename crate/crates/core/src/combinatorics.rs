//! Exact scalar combinatorics: rising factorials, Stirling numbers of the
//! second kind, double factorials, and the alternating sum
//! `sigma(m, n) = sum_k C(m,k) k^n (-1)^k / (k + 1/2)_(m+1)` in its direct
//! and closed forms.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{from_bigint, int, rat, Rational};

pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Rising factorial `alpha (alpha + 1) ... (alpha + k - 1)`, with
/// `(alpha)_0 = 1`.
pub fn pochhammer(alpha: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut term = alpha.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Rising factorial of a polynomial argument, expanded:
/// `base (base + 1) ... (base + k - 1)`.
pub fn pochhammer_poly(base: &UniPoly, k: u64) -> UniPoly {
    let mut acc = UniPoly::one().with_var(base.var());
    for i in 0..k {
        acc = &acc * &(base + &UniPoly::constant(int(i as i64)));
    }
    acc
}

/// `n^e` with the convention `0^0 = 1`.
fn int_pow(n: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(n), e as usize)
}

/// Stirling number of the second kind from the alternating sum
/// `S(n,k) = (1/k!) sum_j C(k,j) (-1)^(k-j) j^n`.
pub fn stirling2(n: u64, k: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binomial(k, j) * int_pow(j, n);
        if (k - j) % 2 == 1 {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc / factorial(k)
}

/// `n!!`: the product `n (n-2) (n-4) ...` down to 1 or 2; `0!! = 1!! = 1`.
pub fn double_factorial(n: u64) -> BigInt {
    (1..=n).rev().step_by(2).map(BigInt::from).product()
}

/// The alternating sum defining `sigma(m, n)`, evaluated term by term.
pub fn sigma_direct(m: u64, n: u64) -> Rational {
    let half = rat(1, 2);
    (0..=m)
        .map(|k| {
            let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
            let num = from_bigint(binomial(m, k) * int_pow(k, n)) * sign;
            num / pochhammer(&(int(k as i64) + &half), m + 1)
        })
        .sum()
}

/// `p_n(m) = sum_k S(n,k) (-m)_k (1/2)_k (2m - n + 1)_(n-k)` as an expanded
/// polynomial in `m`.
pub fn p_poly(n: u64) -> UniPoly {
    let neg_m = UniPoly::from_ints(&[0, -1]).with_var('m');
    let shifted = UniPoly::linear(int(2), int(1 - n as i64)).with_var('m');
    let mut acc = UniPoly::zero().with_var('m');
    for k in 0..=n {
        let s = stirling2(n, k);
        if s.is_zero() {
            continue;
        }
        let coeff = from_bigint(s) * pochhammer(&rat(1, 2), k);
        let term = &pochhammer_poly(&neg_m, k) * &pochhammer_poly(&shifted, n - k);
        acc = &acc + &term.scale(&coeff);
    }
    acc.with_var('m')
}

/// `2 * 4^m (2m - n)! / (m! (4m + 1)!!) * p_n(m)`; requires `2m >= n`.
pub fn sigma_closed(m: u64, n: u64) -> Result<Rational> {
    if 2 * m < n {
        return Err(Error::precondition(format!(
            "closed form needs 2m >= n, got m = {m}, n = {n}"
        )));
    }
    let prefactor = Rational::new(
        BigInt::from(2) * num_traits::pow(BigInt::from(4), m as usize) * factorial(2 * m - n),
        factorial(m) * double_factorial(4 * m + 1),
    );
    Ok(prefactor * p_poly(n).eval(&int(m as i64)))
}
