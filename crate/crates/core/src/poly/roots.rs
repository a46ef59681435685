//! Real-root machinery over the rationals.
//!
//! Sturm chains are built on primitive integer polynomials with
//! sign-preserving pseudo-remainders, which keeps coefficient growth in
//! check and avoids rational normalization in the inner loop. Multiplicities
//! come from Yun's squarefree decomposition, never from numeric clustering.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{int, Rational, Sign};

/// An endpoint of a counting interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(Rational),
    PosInf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn from_uni(p: &UniPoly) -> IntPoly {
        IntPoly(p.primitive_integer_coeffs())
    }

    fn degree(&self) -> usize {
        self.0.len() - 1
    }

    fn leading(&self) -> &BigInt {
        self.0.last().expect("nonzero")
    }

    fn derivative(&self) -> IntPoly {
        let mut d: Vec<BigInt> = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        trim(&mut d);
        IntPoly(d)
    }

    fn make_primitive(mut self) -> IntPoly {
        let content = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !content.is_zero() && !content.is_one() {
            for c in &mut self.0 {
                *c /= &content;
            }
        }
        self
    }

    /// A positive multiple of `-(self mod divisor)`.
    fn neg_sturm_remainder(&self, divisor: &IntPoly) -> IntPoly {
        let mut r = self.0.clone();
        let db = divisor.degree();
        let lb = divisor.leading();
        let lb_abs = lb.abs();
        let lb_neg = lb.is_negative();
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let lr = r.last().cloned().expect("nonempty");
            // r <- |lb| r - sign(lb) lr x^shift divisor
            let factor = if lb_neg { -lr } else { lr };
            for c in r.iter_mut() {
                *c *= &lb_abs;
            }
            for (j, d) in divisor.0.iter().enumerate() {
                r[shift + j] -= &factor * d;
            }
            debug_assert!(r.last().is_some_and(Zero::is_zero));
            r.pop();
            trim(&mut r);
        }
        for c in r.iter_mut() {
            *c = -c.clone();
        }
        IntPoly(r).make_primitive()
    }

    /// Sign at a rational point, via the homogenized integer form.
    fn sign_at(&self, at: &Rational) -> Sign {
        let (a, b) = (at.numer(), at.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        // Horner in a with powers of b accumulating from the top.
        for c in self.0.iter().rev() {
            acc = acc * a + c * &bpow;
            bpow *= b;
        }
        // acc = sum c_i a^i b^(d-i), a positive multiple of p(a/b)
        Sign::of_int(&acc)
    }

    fn sign_at_bound(&self, at: &Bound) -> Sign {
        match at {
            Bound::Finite(r) => self.sign_at(r),
            Bound::PosInf => Sign::of_int(self.leading()),
            Bound::NegInf => {
                let s = Sign::of_int(self.leading());
                if self.degree() % 2 == 1 {
                    s.flip()
                } else {
                    s
                }
            }
        }
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn variations(signs: impl Iterator<Item = Sign>) -> usize {
    let mut last = Sign::Zero;
    let mut count = 0;
    for s in signs {
        if s == Sign::Zero {
            continue;
        }
        if last != Sign::Zero && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

fn raw_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone()];
    if p.degree() == 0 {
        return chain;
    }
    chain.push(p.derivative().make_primitive());
    loop {
        let n = chain.len();
        let r = chain[n - 2].neg_sturm_remainder(&chain[n - 1]);
        if r.0.is_empty() {
            break;
        }
        chain.push(r);
    }
    chain
}

/// Sturm chain of the squarefree part of a nonzero polynomial.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &UniPoly) -> Result<SturmChain> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let sqf = squarefree_part(p)?;
        Ok(SturmChain {
            chain: raw_chain(&IntPoly::from_uni(&sqf)),
        })
    }

    fn variations_at(&self, at: &Bound) -> usize {
        variations(self.chain.iter().map(|q| q.sign_at_bound(at)))
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Bound, hi: &Bound) -> usize {
        let vl = self.variations_at(lo);
        let vh = self.variations_at(hi);
        vl.saturating_sub(vh)
    }
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &UniPoly, lo: &Bound, hi: &Bound) -> Result<usize> {
    Ok(SturmChain::new(p)?.count(lo, hi))
}

/// `p / gcd(p, p')`, made monic.
pub fn squarefree_part(p: &UniPoly) -> Result<UniPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    Ok(p.div_exact(&g)?.monic())
}

/// Yun's decomposition: `p = lc * prod f_i^i` with monic, squarefree,
/// pairwise coprime `f_i`. Constant strata are omitted.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.is_constant() {
        return Ok(out);
    }
    let dp = p.derivative();
    let a0 = p.gcd(&dp);
    let mut b = p.div_exact(&a0)?;
    let c = dp.div_exact(&a0)?;
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while !b.is_constant() {
        let a = b.gcd(&d);
        let next_b = b.div_exact(&a)?;
        let next_c = d.div_exact(&a)?;
        d = &next_c - &next_b.derivative();
        b = next_b;
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    Ok(out)
}

/// Sum over distinct real roots of their multiplicities.
pub fn real_root_count_with_multiplicity(p: &UniPoly) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut total = 0;
    for (f, mult) in squarefree_decomposition(p)? {
        total += mult * SturmChain::new(&f)?.count(&Bound::NegInf, &Bound::PosInf);
    }
    Ok(total)
}

/// True iff every complex root of `p` is real; the zero polynomial counts as
/// real-rooted.
///
/// Uses a single Sturm chain on `p` itself: its last member is
/// `gcd(p, p')`, and the variation count at infinity is unaffected by that
/// common factor.
pub fn all_roots_real(p: &UniPoly) -> bool {
    if p.is_constant() {
        return true;
    }
    let chain = raw_chain(&IntPoly::from_uni(p));
    let distinct = variations(chain.iter().map(|q| q.sign_at_bound(&Bound::NegInf)))
        - variations(chain.iter().map(|q| q.sign_at_bound(&Bound::PosInf)));
    let gcd_degree = chain.last().map(IntPoly::degree).unwrap_or(0);
    distinct == p.degree().unwrap_or(0) - gcd_degree
}

/// Open interval `(lo, hi)` holding exactly one distinct real root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootIsolation {
    pub intervals: Vec<IsolatingInterval>,
    pub exact_roots: Vec<(Rational, usize)>,
}

impl RootIsolation {
    pub fn distinct_count(&self) -> usize {
        self.intervals.len() + self.exact_roots.len()
    }

    /// Upper bound on every real root, if there is one.
    pub fn max_upper(&self) -> Option<Rational> {
        self.intervals
            .iter()
            .map(|iv| iv.hi.clone())
            .chain(self.exact_roots.iter().map(|(r, _)| r.clone()))
            .max()
    }
}

/// Cauchy bound: every root has absolute value below `1 + max |a_i / a_n|`.
pub fn cauchy_bound(p: &UniPoly) -> Result<Rational> {
    let lead = p.leading();
    if lead.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let max = p
        .coeffs()
        .iter()
        .take(p.coeffs().len() - 1)
        .map(|c| (c / &lead).abs())
        .max()
        .unwrap_or_else(Rational::zero);
    Ok(max + Rational::one())
}

/// Isolates every distinct real root in an open interval of width at most
/// `precision`; roots met exactly by a bisection point are reported exactly.
pub fn isolate_real_roots(p: &UniPoly, precision: &Rational) -> Result<RootIsolation> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !precision.is_positive() {
        return Err(Error::precondition("precision must be positive"));
    }
    let sqf = squarefree_part(p)?;
    let mut out = RootIsolation::default();
    if sqf.is_constant() {
        return Ok(out);
    }
    let strata = squarefree_decomposition(p)?;
    let chain = SturmChain::new(&sqf)?;
    let bound = cauchy_bound(&sqf)?;
    let two = int(2);

    let mut found_intervals = Vec::new();
    let mut found_exact = Vec::new();
    // (lo, hi] with root count
    let mut work = vec![(-bound.clone(), bound.clone())];
    while let Some((lo, hi)) = work.pop() {
        let n = chain.count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone()));
        if n == 0 {
            continue;
        }
        if sqf.eval(&hi).is_zero() {
            found_exact.push(hi.clone());
            if n > 1 {
                // the remaining roots lie strictly inside (lo, hi)
                let mid = (&lo + &hi) / &two;
                work.push((lo, mid.clone()));
                work.push((mid, hi));
            }
            continue;
        }
        if n == 1 && &hi - &lo <= *precision {
            found_intervals.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        work.push((lo, mid.clone()));
        work.push((mid, hi));
    }
    found_exact.sort();
    found_exact.dedup();
    found_intervals.sort();

    let multiplicity_in = |lo: &Rational, hi: &Rational| -> Result<usize> {
        for (f, m) in &strata {
            if SturmChain::new(f)?.count(&Bound::Finite(lo.clone()), &Bound::Finite(hi.clone())) == 1 {
                return Ok(*m);
            }
        }
        Err(Error::inconsistent("isolated root not found in any stratum"))
    };
    for r in found_exact {
        let m = strata
            .iter()
            .find(|(f, _)| f.eval(&r).is_zero())
            .map(|(_, m)| *m)
            .ok_or_else(|| Error::inconsistent("exact root not found in any stratum"))?;
        out.exact_roots.push((r, m));
    }
    for (lo, hi) in found_intervals {
        let m = multiplicity_in(&lo, &hi)?;
        out.intervals.push(IsolatingInterval {
            lo,
            hi,
            multiplicity: m,
        });
    }
    Ok(out)
}

/// True iff `p(x) >= 0` for every real `x`.
pub fn is_nonnegative_on_reals(p: &UniPoly) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if p.leading().is_negative() {
        return Ok(false);
    }
    // sign changes happen exactly at real roots of odd multiplicity
    for (f, m) in squarefree_decomposition(p)? {
        if m % 2 == 1 && SturmChain::new(&f)?.count(&Bound::NegInf, &Bound::PosInf) > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_nonpositive_on_reals(p: &UniPoly) -> Result<bool> {
    is_nonnegative_on_reals(&-p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn whole(p: &UniPoly) -> usize {
        sturm_count(p, &Bound::NegInf, &Bound::PosInf).unwrap()
    }

    #[test]
    fn sturm_counts_on_the_line() {
        assert_eq!(whole(&UniPoly::from_ints(&[-3, 0, 1])), 2);
        assert_eq!(whole(&UniPoly::from_ints(&[1, 0, 1])), 0);
        // x^2 (x^2 - 3): three distinct roots
        assert_eq!(whole(&UniPoly::from_ints(&[0, 0, -3, 0, 1])), 3);
        assert!(sturm_count(&UniPoly::zero(), &Bound::NegInf, &Bound::PosInf).is_err());
    }

    #[test]
    fn half_open_interval_semantics() {
        // roots 1, 2
        let p = UniPoly::from_ints(&[2, -3, 1]);
        let f = |a: i64, b: i64| sturm_count(&p, &Bound::Finite(int(a)), &Bound::Finite(int(b))).unwrap();
        assert_eq!(f(1, 2), 1);
        assert_eq!(f(0, 1), 1);
        assert_eq!(f(0, 2), 2);
        assert_eq!(f(2, 5), 0);
    }

    #[test]
    fn squarefree_parts() {
        assert_eq!(squarefree_part(&UniPoly::from_ints(&[0, 0, 1])).unwrap(), UniPoly::x());
        // (x-1)^3 (x+2)
        let p = &UniPoly::from_ints(&[-1, 1]).pow(3) * &UniPoly::from_ints(&[2, 1]);
        assert_eq!(squarefree_part(&p).unwrap(), UniPoly::from_ints(&[-2, 1, 1]));
        let q = UniPoly::from_ints(&[3, 0, 6]);
        assert_eq!(squarefree_part(&q).unwrap(), q.monic());
    }

    #[test]
    fn counts_with_multiplicity() {
        let c = |v: &[i64]| real_root_count_with_multiplicity(&UniPoly::from_ints(v)).unwrap();
        assert_eq!(c(&[0, 0, -3, 0, 1]), 4);
        assert_eq!(c(&[1, 0, 1]), 0);
        let p = &UniPoly::from_ints(&[1, 0, 1]) * &UniPoly::from_ints(&[-5, 1]).pow(3);
        assert_eq!(real_root_count_with_multiplicity(&p).unwrap(), 3);
    }

    #[test]
    fn yun_strata() {
        // (x-1)^3 (x+2) (x^2+1)^2
        let p = &(&UniPoly::from_ints(&[-1, 1]).pow(3) * &UniPoly::from_ints(&[2, 1]))
            * &UniPoly::from_ints(&[1, 0, 1]).pow(2);
        let strata = squarefree_decomposition(&p.scale(&int(7))).unwrap();
        assert_eq!(
            strata,
            vec![
                (UniPoly::from_ints(&[2, 1]), 1),
                (UniPoly::from_ints(&[1, 0, 1]), 2),
                (UniPoly::from_ints(&[-1, 1]), 3),
            ]
        );
    }

    #[test]
    fn isolates_sqrt_two() {
        let p = UniPoly::from_ints(&[-2, 0, 1]);
        let eps = rat(1, 1000);
        let iso = isolate_real_roots(&p, &eps).unwrap();
        assert!(iso.exact_roots.is_empty());
        assert_eq!(iso.intervals.len(), 2);
        for iv in &iso.intervals {
            assert!(&iv.hi - &iv.lo <= eps);
            assert_eq!(iv.multiplicity, 1);
            let (l2, h2) = (&iv.lo * &iv.lo, &iv.hi * &iv.hi);
            assert!((l2 < int(2)) != (h2 < int(2)));
        }
        assert!(iso.intervals[0].hi < int(0));
    }

    #[test]
    fn exact_root_with_multiplicity() {
        let iso = isolate_real_roots(&UniPoly::from_ints(&[0, 0, 1]), &rat(1, 10)).unwrap();
        assert_eq!(iso.exact_roots, vec![(int(0), 2)]);
        assert!(iso.intervals.is_empty());
    }

    #[test]
    fn isolates_the_breaking_value() {
        // b^2 + 4b - 28 has positive root 4*sqrt(2) - 2
        let p = UniPoly::from_ints(&[-28, 4, 1]);
        let iso = isolate_real_roots(&p, &rat(1, 100_000)).unwrap();
        let pos: Vec<_> = iso.intervals.iter().filter(|iv| iv.lo > int(0)).collect();
        assert_eq!(pos.len(), 1);
        assert!(pos[0].lo >= rat(36568, 10000) && pos[0].hi <= rat(36569, 10000));
    }

    #[test]
    fn all_real_fast_path() {
        assert!(all_roots_real(&UniPoly::from_ints(&[0, 0, -3, 0, 1])));
        assert!(!all_roots_real(&UniPoly::from_ints(&[1, 0, 1])));
        let p = &UniPoly::from_ints(&[1, 0, 1]).pow(2) * &UniPoly::from_ints(&[-3, 1]);
        assert!(!all_roots_real(&p));
        assert!(all_roots_real(&UniPoly::from_ints(&[-1, 1]).pow(5)));
    }

    #[test]
    fn nonnegativity() {
        assert!(is_nonnegative_on_reals(&UniPoly::from_ints(&[0, 0, 1])).unwrap());
        assert!(is_nonnegative_on_reals(&UniPoly::from_ints(&[1, -2, 1])).unwrap());
        assert!(!is_nonnegative_on_reals(&UniPoly::from_ints(&[-1, 0, 1])).unwrap());
        assert!(is_nonpositive_on_reals(&UniPoly::from_ints(&[-128, 0, -16])).unwrap());
        assert!(is_nonnegative_on_reals(&UniPoly::zero()).unwrap());
    }
}
