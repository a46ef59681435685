//! Finite-order differential operators `T = sum_k S_k(x) D^k` with
//! polynomial coefficients, the Legendre operator `delta`, and the
//! coefficient-at-zero formulas for operators diagonal in the Legendre basis.

use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, double_factorial, factorial, p_poly, pochhammer, pochhammer_poly, stirling2};
use crate::error::{Error, Result};
use crate::legendre::{legendre_at_zero, to_legendre_basis};
use crate::poly::UniPoly;
use crate::rational::{from_bigint, int, rat, Rational};

/// `sum_k coeffs[k](x) D^k`; the last entry is nonzero unless the operator
/// is zero.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiffOperator {
    coeffs: Vec<UniPoly>,
}

impl DiffOperator {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(UniPoly::is_zero) {
            coeffs.pop();
        }
        DiffOperator { coeffs }
    }

    pub fn zero() -> Self {
        DiffOperator::new(Vec::new())
    }

    pub fn identity() -> Self {
        DiffOperator::multiplication(UniPoly::one())
    }

    /// Multiplication by a fixed polynomial.
    pub fn multiplication(p: UniPoly) -> Self {
        DiffOperator::new(vec![p])
    }

    pub fn scalar(c: Rational) -> Self {
        DiffOperator::multiplication(UniPoly::constant(c))
    }

    /// `D^n`.
    pub fn derivative_power(n: usize) -> Self {
        let mut coeffs = vec![UniPoly::zero(); n + 1];
        coeffs[n] = UniPoly::one();
        DiffOperator::new(coeffs)
    }

    /// Legendre's operator `(x^2 - 1) D^2 + 2x D`, with `delta P_k = k(k+1) P_k`.
    pub fn delta() -> Self {
        DiffOperator::new(vec![
            UniPoly::zero(),
            UniPoly::from_ints(&[0, 2]),
            UniPoly::from_ints(&[-1, 0, 1]),
        ])
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> UniPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Highest `k` with a nonzero coefficient; `None` for the zero operator.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn apply(&self, p: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        let mut deriv = p.clone();
        for s in &self.coeffs {
            if deriv.is_zero() {
                break;
            }
            if !s.is_zero() {
                acc = &acc + &(s * &deriv);
            }
            deriv = deriv.derivative();
        }
        acc
    }

    /// `self ∘ other`, by the Leibniz rule
    /// `D^i (B f^(j)) = sum_l C(i,l) B^(l) f^(i-l+j)`.
    pub fn compose(&self, other: &DiffOperator) -> DiffOperator {
        if self.is_zero() || other.is_zero() {
            return DiffOperator::zero();
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![UniPoly::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                for l in 0..=i {
                    let bl = b.nth_derivative(l);
                    if bl.is_zero() {
                        break;
                    }
                    let c = from_bigint(binomial(i as u64, l as u64));
                    out[i - l + j] = &out[i - l + j] + &(a * &bl).scale(&c);
                }
            }
        }
        DiffOperator::new(out)
    }

    pub fn scale(&self, c: &Rational) -> DiffOperator {
        DiffOperator::new(self.coeffs.iter().map(|p| p.scale(c)).collect())
    }

    pub fn pow(&self, e: usize) -> DiffOperator {
        (0..e).fold(DiffOperator::identity(), |acc, _| acc.compose(self))
    }
}

impl<'a> Add<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn add(self, rhs: &DiffOperator) -> DiffOperator {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOperator::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn sub(self, rhs: &DiffOperator) -> DiffOperator {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOperator::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

/// Composition.
impl<'a> Mul<&'a DiffOperator> for &'a DiffOperator {
    type Output = DiffOperator;
    fn mul(self, rhs: &DiffOperator) -> DiffOperator {
        self.compose(rhs)
    }
}

/// Eigenvalues `gamma_k = interp(k)` of an operator diagonal in the Legendre
/// basis, optionally with `h` such that `interp(x) = h(x^2 + x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenSequence {
    interp: UniPoly,
    h: Option<UniPoly>,
}

fn x_squared_plus_x() -> UniPoly {
    UniPoly::from_ints(&[0, 1, 1])
}

impl EigenSequence {
    pub fn from_interp(interp: UniPoly) -> Self {
        EigenSequence { interp, h: None }
    }

    /// The sequence `h(k^2 + k)`.
    pub fn from_h(h: UniPoly) -> Self {
        EigenSequence {
            interp: h.compose(&x_squared_plus_x()),
            h: Some(h),
        }
    }

    /// Attaches `h` after checking `h(x^2 + x) = interp`.
    pub fn with_h(self, h: UniPoly) -> Result<Self> {
        if h.compose(&x_squared_plus_x()) != self.interp {
            return Err(Error::precondition(
                "h(x^2 + x) differs from the interpolating polynomial",
            ));
        }
        Ok(EigenSequence { h: Some(h), ..self })
    }

    pub fn interp(&self) -> &UniPoly {
        &self.interp
    }

    pub fn h(&self) -> Option<&UniPoly> {
        self.h.as_ref()
    }

    pub fn gamma(&self, k: usize) -> Rational {
        self.interp.eval(&int(k as i64))
    }

    pub fn terms(&self, count: usize) -> Vec<Rational> {
        (0..count).map(|k| self.gamma(k)).collect()
    }
}

/// Applies the Legendre-diagonal operator with eigenvalues `seq` to `p`.
pub fn apply_diagonal(seq: &EigenSequence, p: &UniPoly) -> UniPoly {
    to_legendre_basis(p).map_diagonal(|k| seq.gamma(k)).reconstruct()
}

/// `h(delta) = a_0 + a_1 delta + ... + a_n delta^n`, by Horner's scheme.
pub fn operator_from_h(h: &UniPoly) -> DiffOperator {
    let delta = DiffOperator::delta();
    h.coeffs().iter().rev().fold(DiffOperator::zero(), |acc, a| {
        &acc.compose(&delta) + &DiffOperator::scalar(a.clone())
    })
}

/// `S_n(0)` from the Legendre expansion of `x^n`:
/// `2^-n sum_k (2n - 4k + 1) gamma_{n-2k} P_{n-2k}(0) / (k! (3/2)_{n-k})`.
pub fn coeff_at_zero_direct(seq: &EigenSequence, n: usize) -> Rational {
    let mut acc = Rational::zero();
    for k in 0..=n / 2 {
        let idx = n - 2 * k;
        let p0 = legendre_at_zero(idx);
        if p0.is_zero() {
            continue;
        }
        let num = int((2 * n - 4 * k + 1) as i64) * seq.gamma(idx) * p0;
        let den = from_bigint(factorial(k as u64)) * pochhammer(&rat(3, 2), (n - k) as u64);
        acc += num / den;
    }
    acc / from_bigint(num_traits::pow(num_bigint::BigInt::from(2), n))
}

/// `S_n(0) = T[x^n](0) / n!`, applying the operator to `x^n`.
pub fn coeff_at_zero_via_action(seq: &EigenSequence, n: usize) -> Rational {
    let image = apply_diagonal(seq, &UniPoly::monomial(Rational::one(), n));
    image.eval(&Rational::zero()) / from_bigint(factorial(n as u64))
}

/// Full coefficients `S_0(x), ..., S_max(x)` of the differential-operator
/// form of a Legendre-diagonal operator, by triangular solve of
/// `T[x^n] = sum_{k <= n} n!/(n-k)! x^(n-k) S_k(x)`.
///
/// The truncation agrees with the operator on polynomials of degree at most
/// `max_order`; it is the whole operator when that operator has order at
/// most `max_order`.
pub fn extract_operator(seq: &EigenSequence, max_order: usize) -> DiffOperator {
    let mut found: Vec<UniPoly> = Vec::with_capacity(max_order + 1);
    for n in 0..=max_order {
        let mut rest = apply_diagonal(seq, &UniPoly::monomial(Rational::one(), n));
        for (k, s) in found.iter().enumerate() {
            let falling = from_bigint(factorial(n as u64) / factorial((n - k) as u64));
            rest = &rest - &s.shift(n - k).scale(&falling);
        }
        let nf = from_bigint(factorial(n as u64));
        found.push(rest.scale(&(Rational::one() / nf)));
    }
    DiffOperator::new(found)
}

/// `S_2m(0) = 1/(2 4^m m!) sum_k C(m,k) (4k+1) gamma_2k (-1)^k / (k + 1/2)_(m+1)`.
pub fn s2m_direct(seq: &EigenSequence, m: usize) -> Rational {
    let mu = m as u64;
    let mut acc = Rational::zero();
    for k in 0..=mu {
        let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
        let num = from_bigint(binomial(mu, k)) * int(4 * k as i64 + 1) * seq.gamma(2 * k as usize) * sign;
        acc += num / pochhammer(&(int(k as i64) + rat(1, 2)), mu + 1);
    }
    let den = int(2) * from_bigint(num_traits::pow(num_bigint::BigInt::from(4), m) * factorial(mu));
    acc / den
}

/// The polynomial
/// `P(m) = sum_j a_j 2^j (2m - n)_(n-j) [4 p_{j+1}(m) + (2m - j) p_j(m)]`
/// for `interp = sum_j a_j x^j` of degree `n`, expanded in `m`.
pub fn capital_p(seq: &EigenSequence) -> Result<UniPoly> {
    let n = seq.interp.degree().ok_or(Error::ZeroPolynomial)?;
    let p: Vec<UniPoly> = (0..=n as u64 + 1).map(p_poly).collect();
    let base = UniPoly::linear(int(2), int(-(n as i64))).with_var('m');
    let mut acc = UniPoly::zero().with_var('m');
    for (j, a) in seq.interp.terms() {
        let rising = pochhammer_poly(&base, (n - j) as u64);
        let two_m_minus_j = UniPoly::linear(int(2), int(-(j as i64))).with_var('m');
        let bracket = &p[j + 1].scale(&int(4)) + &(&two_m_minus_j * &p[j]);
        let weight = a * from_bigint(num_traits::pow(num_bigint::BigInt::from(2), j));
        acc = &acc + &(&rising * &bracket).scale(&weight);
    }
    Ok(acc.with_var('m'))
}

/// Status of the closed-form route for `S_2m(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedRoute {
    /// `m < deg(interp)`: the closed form is not claimed there.
    BelowRange,
    /// `2m - n - 1 < 0`, so the factorial prefactor is undefined.
    Undefined,
    Agrees(Rational),
    /// Disagreement at `m = n`, kept as a finding about the validity range.
    BoundaryMismatch(Rational),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2mEvaluation {
    pub m: usize,
    pub direct: Rational,
    pub closed: ClosedRoute,
}

/// `(2m - n - 1)! / ((m!)^2 (4m + 1)!!) P(m)`, when defined and `m >= n`.
pub fn s2m_closed(seq: &EigenSequence, m: usize) -> Option<Rational> {
    let n = seq.interp.degree()?;
    if m < n || 2 * m < n + 1 {
        return None;
    }
    let mu = m as u64;
    let pre = Rational::new(
        factorial(2 * mu - n as u64 - 1),
        factorial(mu) * factorial(mu) * double_factorial(4 * mu + 1),
    );
    let big_p = capital_p(seq).ok()?;
    Some(pre * big_p.eval(&int(m as i64)))
}

/// Evaluates `S_2m(0)` by the direct sum and, for `m >= deg(interp)`, by the
/// closed form; a disagreement above the boundary is an internal error.
pub fn s2m0_formula(seq: &EigenSequence, m: usize) -> Result<S2mEvaluation> {
    let direct = s2m_direct(seq, m);
    let closed = match seq.interp.degree() {
        None => ClosedRoute::BelowRange,
        Some(n) if m < n => ClosedRoute::BelowRange,
        Some(n) => match s2m_closed(seq, m) {
            None => ClosedRoute::Undefined,
            Some(v) if v == direct => ClosedRoute::Agrees(v),
            Some(v) if m == n => ClosedRoute::BoundaryMismatch(v),
            Some(v) => {
                return Err(Error::inconsistent(format!(
                    "S_2m(0) routes disagree at m = {m}: direct {direct}, closed {v}"
                )))
            }
        },
    };
    Ok(S2mEvaluation { m, direct, closed })
}

/// Writes `p = h(x^2 + x) + q` with `q` a combination of odd powers of `x`,
/// by peeling leading terms against the basis
/// `b_k = (x^2 + x)^(k/2)` (k even), `x^k` (k odd).
pub fn decompose_even_odd(p: &UniPoly) -> (UniPoly, UniPoly) {
    let base = x_squared_plus_x();
    let mut rest = p.clone();
    let mut h = vec![Rational::zero(); p.degree().map_or(0, |d| d / 2 + 1)];
    let mut q = UniPoly::zero();
    while let Some(d) = rest.degree() {
        let lead = rest.leading();
        let piece = if d % 2 == 1 {
            let t = UniPoly::monomial(lead.clone(), d);
            q = &q + &t;
            t
        } else {
            h[d / 2] += &lead;
            base.pow((d / 2) as u32).scale(&lead)
        };
        rest = &rest - &piece;
    }
    (UniPoly::new(h), q)
}

/// `(xD)^n = sum_k S(n,k) x^k D^k`.
pub fn xd_expansion(n: usize) -> DiffOperator {
    DiffOperator::new(
        (0..=n)
            .map(|k| UniPoly::monomial(from_bigint(stirling2(n as u64, k as u64)), k))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::legendre::legendre_poly;

    fn seq(c: &[i64]) -> EigenSequence {
        EigenSequence::from_interp(UniPoly::from_ints(c))
    }

    #[test]
    fn delta_eigenvalues() {
        let d = DiffOperator::delta();
        for k in 0..=10 {
            let pk = legendre_poly(k);
            assert_eq!(d.apply(&pk), pk.scale(&int((k * k + k) as i64)));
        }
        assert!(d.apply(&UniPoly::one()).is_zero());
        // (x^2 - 1) 2 + 2x 2x
        assert_eq!(
            d.apply(&UniPoly::from_ints(&[0, 0, 1])),
            UniPoly::from_ints(&[-2, 0, 6])
        );
        assert_eq!(d.coeff(1).eval(&int(0)), int(0));
        assert_eq!(d.coeff(2).eval(&int(0)), int(-1));
    }

    #[test]
    fn compose_product_rule() {
        let d = DiffOperator::derivative_power(1);
        let x = DiffOperator::multiplication(UniPoly::x());
        assert_eq!(d.compose(&x), DiffOperator::new(vec![UniPoly::one(), UniPoly::x()]));
        assert_eq!(
            DiffOperator::delta().compose(&DiffOperator::identity()),
            DiffOperator::delta()
        );
    }

    #[test]
    fn derivative_intertwines_delta() {
        for n in 0..=4usize {
            for a in [0, 1, -2] {
                let lhs = DiffOperator::derivative_power(n)
                    .compose(&(&DiffOperator::delta() - &DiffOperator::scalar(int(a))));
                let inner = DiffOperator::new(vec![
                    UniPoly::constant(int((n * n + n) as i64 - a)),
                    UniPoly::from_ints(&[0, 2 * (n as i64 + 1)]),
                    UniPoly::from_ints(&[-1, 0, 1]),
                ]);
                assert_eq!(lhs, inner.compose(&DiffOperator::derivative_power(n)));
            }
        }
    }

    #[test]
    fn operators_from_h() {
        assert_eq!(operator_from_h(&UniPoly::x()), DiffOperator::delta());
        let sq = operator_from_h(&UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(sq, DiffOperator::delta().compose(&DiffOperator::delta()));
        assert_eq!(sq.apply(&legendre_poly(2)), legendre_poly(2).scale(&int(36)));
        let shifted = operator_from_h(&UniPoly::from_ints(&[-2, 1]));
        assert!(shifted.apply(&legendre_poly(1)).is_zero());
    }

    #[test]
    fn diagonal_application() {
        let p = UniPoly::from_ints(&[3, -1, 4, 1]);
        assert_eq!(apply_diagonal(&seq(&[1]), &p), p);
        let p3 = legendre_poly(3);
        assert_eq!(apply_diagonal(&seq(&[0, 1, 1]), &p3), p3.scale(&int(12)));
        // x^2 = P0/3 + 2 P2/3; gamma_k = k scales to 0 and 4/3
        let out = apply_diagonal(&seq(&[0, 1]), &UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!(out, legendre_poly(2).scale(&rat(4, 3)));
    }

    #[test]
    fn coefficient_at_zero() {
        let delta_seq = seq(&[0, 1, 1]);
        assert_eq!(coeff_at_zero_direct(&delta_seq, 2), int(-1));
        assert_eq!(coeff_at_zero_direct(&seq(&[1]), 0), int(1));
        for n in 1..8 {
            assert_eq!(coeff_at_zero_direct(&seq(&[1]), n), int(0));
        }
        for s in [seq(&[0, 1]), seq(&[0, 0, 0, 1]), seq(&[2, -1, 3])] {
            for n in 0..10 {
                assert_eq!(coeff_at_zero_direct(&s, n), coeff_at_zero_via_action(&s, n));
            }
        }
    }

    #[test]
    fn extraction_recovers_delta() {
        let op = extract_operator(&seq(&[0, 1, 1]), 6);
        assert_eq!(op, DiffOperator::delta());
    }

    #[test]
    fn s2m_examples() {
        let delta_seq = seq(&[0, 1, 1]);
        assert_eq!(s2m0_formula(&delta_seq, 1).unwrap().direct, int(-1));
        for m in 2..8 {
            let e = s2m0_formula(&delta_seq, m).unwrap();
            assert_eq!(e.direct, int(0));
            assert_eq!(e.closed, ClosedRoute::Agrees(int(0)));
        }
        for m in 1..6 {
            assert_eq!(s2m0_formula(&seq(&[1]), m).unwrap().direct, int(0));
        }
        assert_eq!(s2m0_formula(&seq(&[1]), 0).unwrap().closed, ClosedRoute::Undefined);
        assert_eq!(
            s2m0_formula(&seq(&[0, 0, 1]), 1).unwrap().closed,
            ClosedRoute::BelowRange
        );
    }

    #[test]
    fn capital_p_examples() {
        let p = capital_p(&seq(&[0, 1])).unwrap();
        assert_eq!(p.eval(&rat(1, 2)), rat(-3, 2));
        assert!(capital_p(&seq(&[1])).unwrap().is_zero());
        let cubic = capital_p(&seq(&[0, 0, 0, 1])).unwrap();
        assert!(!cubic.is_zero());
        assert!(!cubic.eval(&rat(3, 2)).is_zero());
        assert!(capital_p(&seq(&[])).is_err());
    }

    #[test]
    fn even_odd_decomposition() {
        let (h, q) = decompose_even_odd(&UniPoly::from_ints(&[0, 0, 1, 2, 1]));
        assert_eq!((h, q), (UniPoly::from_ints(&[0, 0, 1]), UniPoly::zero()));
        let (h, q) = decompose_even_odd(&UniPoly::from_ints(&[0, 0, 1]));
        assert_eq!((h, q), (UniPoly::x(), UniPoly::from_ints(&[0, -1])));
        let (h, q) = decompose_even_odd(&UniPoly::from_ints(&[0, 1, 1]));
        assert_eq!((h, q), (UniPoly::x(), UniPoly::zero()));
    }

    #[test]
    fn xd_powers() {
        assert_eq!(xd_expansion(1), DiffOperator::new(vec![UniPoly::zero(), UniPoly::x()]));
        let xd = xd_expansion(1);
        assert_eq!(xd_expansion(2), xd.compose(&xd));
        assert_eq!(
            xd_expansion(2).coeffs(),
            &[UniPoly::zero(), UniPoly::x(), UniPoly::from_ints(&[0, 0, 1])]
        );
        assert_eq!(
            xd_expansion(3).apply(&UniPoly::from_ints(&[0, 0, 1])),
            UniPoly::from_ints(&[0, 0, 8])
        );
        for n in 0..6 {
            assert_eq!(xd_expansion(n), xd.pow(n));
        }
    }

    #[test]
    fn json_is_list_of_polys() {
        let s = serde_json::to_string(&DiffOperator::delta()).unwrap();
        assert_eq!(
            s,
            r#"[{"var":"x","coeffs":{}},{"var":"x","coeffs":{"1":"2/1"}},{"var":"x","coeffs":{"0":"-1/1","2":"1/1"}}]"#
        );
        let back: DiffOperator = serde_json::from_str(&s).unwrap();
        assert_eq!(back, DiffOperator::delta());
    }
}
