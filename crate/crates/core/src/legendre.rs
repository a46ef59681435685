//! Legendre polynomials `P_k` (normalized by `P_k(1) = 1`) and exact change
//! of basis between monomials and the Legendre basis.

use std::sync::{OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::combinatorics::{factorial, pochhammer};
use crate::poly::UniPoly;
use crate::rational::{from_bigint, int, rat, Rational};

static CACHE: OnceLock<RwLock<Vec<UniPoly>>> = OnceLock::new();

fn cache() -> &'static RwLock<Vec<UniPoly>> {
    CACHE.get_or_init(|| RwLock::new(vec![UniPoly::one(), UniPoly::x()]))
}

/// `P_k` via Bonnet's recurrence `(k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}`.
///
/// Results are memoized in a process-wide table guarded by a read-write lock.
pub fn legendre_poly(k: usize) -> UniPoly {
    if let Some(p) = cache().read().expect("legendre cache poisoned").get(k) {
        return p.clone();
    }
    let mut table = cache().write().expect("legendre cache poisoned");
    while table.len() <= k {
        let n = table.len() - 1;
        let next = {
            let a = table[n].shift(1).scale(&int(2 * n as i64 + 1));
            let b = table[n - 1].scale(&int(n as i64));
            (&a - &b).scale(&rat(1, n as i64 + 1))
        };
        table.push(next);
    }
    table[k].clone()
}

/// `P_k(0)`: zero for odd `k`, `(-1)^j (1/2)_j / j!` for `k = 2j`.
pub fn legendre_at_zero(k: usize) -> Rational {
    if k % 2 == 1 {
        return Rational::zero();
    }
    let j = (k / 2) as u64;
    let sign = if j % 2 == 1 { -Rational::one() } else { Rational::one() };
    sign * pochhammer(&rat(1, 2), j) / from_bigint(factorial(j))
}

/// Coefficients in the Legendre basis: entry `k` multiplies `P_k`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LegendreExpansion {
    coeffs: Vec<Rational>,
}

impl LegendreExpansion {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        LegendreExpansion { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Scales entry `k` by `f(k)`.
    pub fn map_diagonal(&self, mut f: impl FnMut(usize) -> Rational) -> LegendreExpansion {
        LegendreExpansion::new(self.coeffs.iter().enumerate().map(|(k, c)| c * f(k)).collect())
    }

    /// `sum_k c_k P_k` in the monomial basis.
    pub fn reconstruct(&self) -> UniPoly {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(UniPoly::zero(), |acc, (k, c)| &acc + &legendre_poly(k).scale(c))
    }
}

/// `x^n = (n!/2^n) sum_{k <= n/2} (2n - 4k + 1) P_{n-2k} / (k! (3/2)_{n-k})`.
pub fn monomial_to_legendre(n: usize) -> LegendreExpansion {
    let mut coeffs = vec![Rational::zero(); n + 1];
    let front = from_bigint(factorial(n as u64)) / from_bigint(num_traits::pow(num_bigint::BigInt::from(2), n));
    for k in 0..=n / 2 {
        let num = int((2 * n - 4 * k + 1) as i64);
        let den = from_bigint(factorial(k as u64)) * pochhammer(&rat(3, 2), (n - k) as u64);
        coeffs[n - 2 * k] = &front * num / den;
    }
    LegendreExpansion::new(coeffs)
}

pub fn to_legendre_basis(p: &UniPoly) -> LegendreExpansion {
    let len = p.coeffs().len();
    let mut coeffs = vec![Rational::zero(); len];
    for (n, c) in p.terms() {
        for (k, e) in monomial_to_legendre(n).coeffs().iter().enumerate() {
            coeffs[k] += c * e;
        }
    }
    LegendreExpansion::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_few() {
        assert_eq!(legendre_poly(0), UniPoly::one());
        assert_eq!(legendre_poly(1), UniPoly::x());
        assert_eq!(legendre_poly(2), UniPoly::new(vec![rat(-1, 2), int(0), rat(3, 2)]));
    }

    #[test]
    fn ode_and_normalization() {
        for k in 0..=30 {
            let p = legendre_poly(k);
            assert_eq!(p.eval(&int(1)), int(1), "P_{k}(1)");
            let residual = &(&UniPoly::from_ints(&[-1, 0, 1]) * &p.nth_derivative(2))
                + &(&UniPoly::from_ints(&[0, 2]) * &p.derivative());
            let residual = &residual - &p.scale(&int((k * (k + 1)) as i64));
            assert!(residual.is_zero(), "ODE residual for k = {k}");
        }
    }

    #[test]
    fn parity() {
        for k in 0..=30 {
            let p = legendre_poly(k);
            let expect = if k % 2 == 0 { p.clone() } else { -&p };
            assert_eq!(p.reflect(), expect);
        }
    }

    #[test]
    fn values_at_zero() {
        assert_eq!(legendre_at_zero(1), int(0));
        assert_eq!(legendre_at_zero(2), rat(-1, 2));
        assert_eq!(legendre_at_zero(4), rat(3, 8));
        for k in 0..=30 {
            assert_eq!(legendre_at_zero(k), legendre_poly(k).eval(&int(0)));
        }
    }

    #[test]
    fn monomial_expansions() {
        assert_eq!(monomial_to_legendre(0).coeffs(), &[int(1)]);
        assert_eq!(monomial_to_legendre(1).coeffs(), &[int(0), int(1)]);
        assert_eq!(monomial_to_legendre(2).coeffs(), &[rat(1, 3), int(0), rat(2, 3)]);
        for n in 0..=30 {
            assert_eq!(monomial_to_legendre(n).reconstruct(), UniPoly::monomial(int(1), n));
        }
    }

    #[test]
    fn basis_change() {
        let e = to_legendre_basis(&legendre_poly(5));
        assert_eq!(e.coeffs(), &[int(0), int(0), int(0), int(0), int(0), int(1)]);
        let e = to_legendre_basis(&UniPoly::from_ints(&[0, 1, 1]));
        assert_eq!(e.coeffs(), &[rat(1, 3), int(1), rat(2, 3)]);
        assert!(to_legendre_basis(&UniPoly::zero()).is_zero());
    }

    #[test]
    fn concurrent_cache_access() {
        let handles: Vec<_> = (0..4)
            .map(|t| std::thread::spawn(move || legendre_poly(20 + t).eval(&int(1))))
            .collect();
        for h in handles {
            assert_eq!(h.join().unwrap(), int(1));
        }
    }
}
