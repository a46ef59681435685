use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::poly::UniPoly;
use crate::rational::{int, Rational};

/// Sparse bivariate polynomial; key `(i, j)` is the monomial `x^i y^j`.
///
/// Zero coefficients are never stored.
#[derive(Clone, Debug)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), Rational>,
    vars: (char, char),
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BiPoly {}

impl Default for BiPoly {
    fn default() -> Self {
        BiPoly::zero()
    }
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
            vars: ('x', 'y'),
        }
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = ((usize, usize), Rational)>,
    {
        let mut p = BiPoly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::from_terms([((0, 0), c)])
    }

    /// Embeds a univariate polynomial in `x`.
    pub fn from_x(p: &UniPoly) -> Self {
        BiPoly::from_terms(p.terms().map(|(i, c)| ((i, 0), c.clone())))
    }

    /// Embeds a univariate polynomial in `y`.
    pub fn from_y(p: &UniPoly) -> Self {
        BiPoly::from_terms(p.terms().map(|(j, c)| ((0, j), c.clone())))
    }

    pub fn with_vars(mut self, x: char, y: char) -> Self {
        self.vars = (x, y);
        self
    }

    pub fn vars(&self) -> (char, char) {
        self.vars
    }

    pub fn add_term(&mut self, key: (usize, usize), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_in_y(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        BiPoly::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c))).with_vars(self.vars.0, self.vars.1)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&(i, j), c)| {
            acc + c * num_traits::pow(x.clone(), i) * num_traits::pow(y.clone(), j)
        })
    }

    pub fn partial_x(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|((i, _), _)| *i > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * int(i as i64))),
        )
        .with_vars(self.vars.0, self.vars.1)
    }

    pub fn partial_y(&self) -> BiPoly {
        BiPoly::from_terms(
            self.terms
                .iter()
                .filter(|((_, j), _)| *j > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * int(j as i64))),
        )
        .with_vars(self.vars.0, self.vars.1)
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn y_coefficient(&self, j: usize) -> UniPoly {
        let max_i = self.terms.keys().map(|&(i, _)| i).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); max_i + 1];
        for (&(i, jj), c) in &self.terms {
            if jj == j {
                coeffs[i] = c.clone();
            }
        }
        UniPoly::new(coeffs).with_var(self.vars.0)
    }

    /// `self(x, q(x))`.
    pub fn restrict_y(&self, q: &UniPoly) -> UniPoly {
        let top = self.degree_in_y().unwrap_or(0);
        let mut powers = Vec::with_capacity(top + 1);
        powers.push(UniPoly::one());
        for j in 1..=top {
            let next = &powers[j - 1] * q;
            powers.push(next);
        }
        let mut acc = UniPoly::zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &powers[j].shift(i).scale(c);
        }
        acc.with_var(self.vars.0)
    }

    /// `self(fx(x), gy(y))`: substitutes a univariate polynomial into each
    /// variable.
    pub fn compose(&self, fx: &UniPoly, gy: &UniPoly) -> BiPoly {
        let mut acc = BiPoly::zero().with_vars(self.vars.0, self.vars.1);
        for (&(i, j), c) in &self.terms {
            let px = BiPoly::from_x(&fx.pow(i as u32));
            let py = BiPoly::from_y(&gy.pow(j as u32));
            acc = &acc + &(&px * &py).scale(c);
        }
        acc
    }

    /// Univariate polynomial in `y` obtained by fixing `x = x0`.
    pub fn specialize_x(&self, x0: &Rational) -> UniPoly {
        let top = self.degree_in_y().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); top + 1];
        for (&(i, j), c) in &self.terms {
            coeffs[j] += c * num_traits::pow(x0.clone(), i);
        }
        UniPoly::new(coeffs).with_var(self.vars.1)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (n, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (v, e) in [(self.vars.0, i), (self.vars.1, j)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero().with_vars(self.vars.0, self.vars.1);
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), a * b);
            }
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-Rational::one())
    }
}
