//! Invariant suite behind the `selftest` command.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{sigma_closed, sigma_direct};
use crate::diffop::{coeff_at_zero_direct, operator_from_h, DiffOperator, EigenSequence};
use crate::hyperbolicity::{
    bates_yoshida_check, calibrate, fall_interval, fall_operator, fall_quadratic_factor, ms_empirical_check,
    noodd_test, reduced_inequality, reverify_polynomial_witness, z_c, Corpus,
};
use crate::legendre::legendre_poly;
use crate::poly::UniPoly;
use crate::rational::{int, rat, Rational};
use crate::symbol::{line_test, quartic_symbol, symbol_of, LineCriterion, LineGrid};
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> Result<String, String>;

fn fail_unless(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn legendre_ode() -> Result<String, String> {
    let delta = DiffOperator::delta();
    for k in 0..=20 {
        let p = legendre_poly(k);
        fail_unless(delta.apply(&p) == p.scale(&int((k * k + k) as i64)), || {
            format!("k = {k}")
        })?;
        fail_unless(p.eval(&int(1)).is_one(), || format!("P_{k}(1)"))?;
    }
    Ok("k <= 20".into())
}

fn sigma_identity() -> Result<String, String> {
    for m in 0..=8u64 {
        for n in 0..=2 * m {
            let c = sigma_closed(m, n).map_err(|e| e.to_string())?;
            fail_unless(sigma_direct(m, n) == c, || format!("m = {m}, n = {n}"))?;
        }
    }
    Ok("m <= 8".into())
}

fn odd_coefficients_vanish() -> Result<String, String> {
    for c in [&[1][..], &[0, 1], &[0, 0, 1], &[2, -3, 0, 1]] {
        let seq = EigenSequence::from_interp(UniPoly::from_ints(c));
        for m in 0..=10 {
            fail_unless(coeff_at_zero_direct(&seq, 2 * m + 1).is_zero(), || {
                format!("{c:?}, m = {m}")
            })?;
        }
    }
    Ok("4 sequences, m <= 10".into())
}

fn nonreal_count_is_additive() -> Result<String, String> {
    let corpus = [
        UniPoly::from_ints(&[1, 0, 1]),
        UniPoly::from_ints(&[-2, 1]),
        UniPoly::from_ints(&[1, 1, 1]),
        UniPoly::from_ints(&[-1, 0, 1]),
        UniPoly::from_ints(&[5, 0, 0, 1]),
    ];
    for p in &corpus {
        for q in &corpus {
            let pq = p * q;
            fail_unless(pq.degree() > Some(6) || z_c(&pq) == z_c(p) + z_c(q), || {
                format!("{p} times {q}")
            })?;
        }
    }
    Ok(format!("{} pairs", corpus.len() * corpus.len()))
}

fn shift_interval() -> Result<String, String> {
    let mut count = 0;
    for n in 1..=5usize {
        let (lo, hi) = fall_interval(n);
        for (a, expect) in [
            (lo.clone(), true),
            (hi.clone(), true),
            ((&lo + &hi) / int(2), true),
            (&lo - rat(1, 2), false),
            (&hi + rat(1, 2), false),
        ] {
            reduced_inequality(n, &a).map_err(|e| e.to_string())?;
            let (q2, q1, q0) = fall_quadratic_factor(n, &a);
            let got = bates_yoshida_check(&q2, &q1, &q0).map_err(|e| e.to_string())?;
            fail_unless(got == expect, || format!("n = {n}, A = {a}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} samples"))
}

fn factorizations_agree() -> Result<String, String> {
    let mut count = 0;
    for n in 1..=3usize {
        let (lo, hi) = fall_interval(n);
        for a in [
            vec![lo.clone()],
            vec![hi.clone()],
            vec![lo.clone(), hi.clone()],
            vec![int(0), int(0)],
        ] {
            fall_operator(n, &a).map_err(|e| e.to_string())?;
            count += 1;
        }
    }
    Ok(format!("{count} operators"))
}

fn odd_degree_sequences_fail() -> Result<String, String> {
    let cases: [&[Rational]; 4] = [
        &[rat(1, 3), rat(2, 1)],
        &[int(0), int(-1), rat(1, 2), int(1)],
        &[int(1), int(0), int(0), rat(-3, 2), int(0), int(2)],
        &[int(0), int(1), int(1), int(1), int(1), int(1)],
    ];
    for c in cases {
        let p = UniPoly::new(c.to_vec());
        let r = noodd_test(&p).map_err(|e| e.to_string())?;
        fail_unless(r.verdict == Verdict::Fail, || format!("{p}"))?;
    }
    Ok("degrees 1, 3, 5".into())
}

fn witnesses_reverify() -> Result<String, String> {
    let corpus = Corpus {
        max_degree: 4,
        root_grid: (-3..=3).map(int).collect(),
    };
    for c in [[0, 2, 1], [1, 0, 1], [0, 3, 1]] {
        let seq = EigenSequence::from_interp(UniPoly::from_ints(&c));
        let r = ms_empirical_check(&seq, &corpus).map_err(|e| e.to_string())?;
        let w = r.witness.ok_or_else(|| format!("{c:?}: no witness"))?;
        fail_unless(reverify_polynomial_witness(&seq, &w), || format!("{c:?}"))?;
    }
    Ok("3 sequences".into())
}

fn quartic_symbols_match() -> Result<String, String> {
    for (b, c) in [(0, 0), (3, 0), (1, 2), (-2, 5)] {
        quartic_symbol(&int(b), &int(c)).map_err(|e| e.to_string())?;
    }
    Ok("4 parameter pairs".into())
}

fn delta_symbol_passes() -> Result<String, String> {
    let grid = LineGrid {
        slopes: (1..=20).map(|j| rat(j, 2)).collect(),
        intercepts: (-10..=10).map(int).collect(),
    };
    let r = line_test(&symbol_of(&DiffOperator::delta()), &grid, LineCriterion::AllReal).map_err(|e| e.to_string())?;
    fail_unless(r.is_pass(), || format!("{:?}", r.witness))?;
    Ok(format!("{} lines", grid.len()))
}

fn quartic_family_at_c0() -> Result<String, String> {
    let grid = LineGrid::standard();
    for j in -8..=8 {
        let b = rat(j, 4);
        let r = line_test(
            &quartic_symbol(&b, &Rational::zero()).map_err(|e| e.to_string())?,
            &grid,
            LineCriterion::AllReal,
        )
        .map_err(|e| e.to_string())?;
        fail_unless(r.is_pass(), || format!("b = {b} fails"))?;
    }
    for b in 4..=7 {
        let r = line_test(
            &quartic_symbol(&int(b), &Rational::zero()).map_err(|e| e.to_string())?,
            &grid,
            LineCriterion::AllReal,
        )
        .map_err(|e| e.to_string())?;
        fail_unless(r.is_fail(), || format!("b = {b} passes"))?;
    }
    Ok("b in [-2, 2] pass, b in {4..7} fail".into())
}

fn sequences_match_operators() -> Result<String, String> {
    for h in [[0, 1, 1], [2, -3, 1], [0, 0, 1]] {
        let h = UniPoly::from_ints(&h);
        let op = operator_from_h(&h);
        for k in 0..=6usize {
            let lambda = h.eval(&int((k * k + k) as i64));
            let pk = legendre_poly(k);
            fail_unless(op.apply(&pk) == pk.scale(&lambda), || format!("{h}, k = {k}"))?;
        }
    }
    Ok("3 operators, k <= 6".into())
}

fn convention_calibrates() -> Result<String, String> {
    let r = calibrate().map_err(|e| e.to_string())?;
    Ok(format!("{:?} over {} operators", r.convention, r.rows.len()))
}

pub const CHECKS: [(&str, Check); 13] = [
    ("legendre polynomials solve their equation", legendre_ode),
    ("sigma closed form", sigma_identity),
    ("odd coefficients vanish at zero", odd_coefficients_vanish),
    ("nonreal zero count is additive", nonreal_count_is_additive),
    ("Wronskian criterion on shift interval", shift_interval),
    ("shifted-product factorizations agree", factorizations_agree),
    ("odd-degree sequences are ruled out", odd_degree_sequences_fail),
    ("empirical witnesses re-verify", witnesses_reverify),
    ("quartic symbol matches operator", quartic_symbols_match),
    ("delta symbol passes line test", delta_symbol_passes),
    ("quartic family at c = 0", quartic_family_at_c0),
    ("h(delta) acts diagonally", sequences_match_operators),
    ("proper-position convention calibrates", convention_calibrates),
];

pub fn run_selftest() -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|(name, check)| match check() {
            Ok(detail) => CheckResult {
                name,
                passed: true,
                detail,
            },
            Err(detail) => CheckResult {
                name,
                passed: false,
                detail,
            },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        for r in run_selftest() {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
