//! Wronskians, resultants and discriminants.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::Rational;

/// `W[f, g] = f g' - f' g`.
pub fn wronskian(f: &UniPoly, g: &UniPoly) -> UniPoly {
    &(f * &g.derivative()) - &(&f.derivative() * g)
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n), size m + n, with
/// coefficients laid out from the leading term.
pub fn sylvester_matrix(p: &UniPoly, q: &UniPoly) -> Result<Vec<Vec<Rational>>> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    let n = q.degree().ok_or(Error::ZeroPolynomial)?;
    let size = m + n;
    let mut rows = vec![vec![Rational::zero(); size]; size];
    for (i, row) in rows.iter_mut().enumerate().take(n) {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
    }
    for (i, row) in rows.iter_mut().skip(n).enumerate() {
        for (j, c) in q.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
    }
    Ok(rows)
}

/// Determinant by Gaussian elimination over the rationals.
pub fn determinant(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in (col + 1)..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= &factor * src;
            }
        }
    }
    det
}

/// Sylvester resultant. A constant argument gives `c^deg(other)`.
pub fn resultant(p: &UniPoly, q: &UniPoly) -> Result<Rational> {
    let m = p.degree().ok_or(Error::ZeroPolynomial)?;
    let n = q.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 && n == 0 {
        return Ok(Rational::one());
    }
    Ok(determinant(sylvester_matrix(p, q)?))
}

/// `(-1)^(d(d-1)/2) res(p, p') / lc(p)` for `deg p = d >= 1`.
pub fn discriminant(p: &UniPoly) -> Result<Rational> {
    let d = p.degree().ok_or(Error::ZeroPolynomial)?;
    if d == 0 {
        return Err(Error::precondition("discriminant of a constant"));
    }
    let res = resultant(p, &p.derivative())?;
    let signed = if (d * (d - 1) / 2) % 2 == 1 { -res } else { res };
    Ok(signed / p.leading())
}
