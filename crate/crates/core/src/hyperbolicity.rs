//! Real-rootedness tests and hyperbolicity-preservation criteria.
//!
//! Everything here is exact. Positive statements are either certificates
//! (the Wronskian criterion for second-order operators, and the family of
//! products of shifted `delta` it certifies) or non-falsification reports
//! from a finite corpus.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::binomial;
use crate::diffop::{
    apply_diagonal, capital_p, decompose_even_odd, extract_operator, s2m_direct, DiffOperator, EigenSequence,
};
use crate::error::{Error, Result};
use crate::legendre::legendre_poly;
use crate::poly::{
    all_roots_real, cauchy_bound, is_nonnegative_on_reals, is_nonpositive_on_reals, isolate_real_roots,
    real_root_count_with_multiplicity, wronskian, UniPoly,
};
use crate::rational::{from_bigint, int, to_fraction_string, Rational, Sign};
use crate::verdict::{VerdictReport, Witness};

/// All zeros real; the zero polynomial counts as hyperbolic.
pub fn is_hyperbolic(p: &UniPoly) -> bool {
    all_roots_real(p)
}

/// Number of nonreal zeros, with multiplicity; zero for the zero polynomial.
pub fn z_c(p: &UniPoly) -> usize {
    match p.degree() {
        None | Some(0) => 0,
        Some(d) => d - real_root_count_with_multiplicity(p).expect("nonzero polynomial"),
    }
}

/// `gamma_k^2 - gamma_{k-1} gamma_{k+1} >= 0` at every interior index.
pub fn turan_check(gamma: &[Rational]) -> Result<VerdictReport> {
    if gamma.len() < 3 {
        return Err(Error::precondition("Turan check needs at least three terms"));
    }
    for k in 1..gamma.len() - 1 {
        let value = &gamma[k] * &gamma[k] - &gamma[k - 1] * &gamma[k + 1];
        if value.is_negative() {
            let detail = format!("gamma_k^2 - gamma_(k-1) gamma_(k+1) = {}", to_fraction_string(&value));
            return Ok(VerdictReport::fail(Witness::Index { index: k, detail }).with_param("terms", gamma.len()));
        }
    }
    Ok(VerdictReport::pass().with_param("terms", gamma.len()))
}

/// Sign of `P(m)` for all sufficiently large `m`.
pub fn eventual_sign(p: &UniPoly) -> Sign {
    Sign::of(&p.leading())
}

fn sign_of_all(values: &[Rational]) -> Option<Sign> {
    let first = Sign::of(values.first()?);
    values.iter().all(|v| Sign::of(v) == first).then_some(first)
}

/// Decides whether an interpolating polynomial is ruled out as a Legendre
/// multiplier sequence by a nonzero odd part.
///
/// Writing `p = h(x^2 + x) + q`, the `h` part contributes nothing to
/// `S_2m(0)` once `m > deg h`, and for `m >= deg q` the `q` part is a
/// positive multiple of `capital_p(q)(m)`. Beyond the largest real zero of
/// that polynomial the sign is constant, which an even function of the
/// Laguerre-Polya class cannot have.
pub fn noodd_test(p: &UniPoly) -> Result<VerdictReport> {
    let (h, q) = decompose_even_odd(p);
    let base = VerdictReport::pass().with_param("h", &h).with_param("q", &q);
    if q.is_zero() {
        return Ok(base);
    }
    let seq_q = EigenSequence::from_interp(q.clone());
    let big_p = capital_p(&seq_q)?;
    let sign = eventual_sign(&big_p);
    if sign == Sign::Zero {
        return Ok(VerdictReport {
            verdict: crate::verdict::Verdict::Inconclusive,
            ..base
        });
    }
    let n = q.degree().unwrap_or(0);
    let past_roots = match isolate_real_roots(&big_p, &Rational::one())?.max_upper() {
        Some(r) if r.is_positive() => (r.floor().to_integer() + 1u32).try_into().unwrap_or(usize::MAX),
        _ => 0,
    };
    let h_order = h.degree().map_or(0, |d| d + 1);
    let tail_start = [h_order, n, (n + 2) / 2, past_roots].into_iter().max().unwrap_or(0);

    let seq = EigenSequence::from_interp(p.clone());
    let last = tail_start.max(20).max(tail_start + 4);
    let sampled: Vec<Rational> = (tail_start..=last).map(|m| s2m_direct(&seq, m)).collect();
    if sign_of_all(&sampled) != Some(sign) {
        return Err(Error::inconsistent(format!(
            "S_2m(0) tail from m = {tail_start} does not keep the sign of capital P"
        )));
    }
    let witness = Witness::SignTail {
        tail_start,
        sign,
        capital_p: big_p,
        sampled,
    };
    Ok(VerdictReport {
        verdict: crate::verdict::Verdict::Fail,
        witness: Some(witness),
        ..base
    })
}

/// Sign a Wronskian must keep for `f << g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WronskianSign {
    NonNegative,
    NonPositive,
}

/// Convention selected by [`calibrate`].
pub const PROPER_POSITION_CONVENTION: WronskianSign = WronskianSign::NonNegative;

/// `f << g` under an explicit sign convention for `W[f, g] = f g' - f' g`.
pub fn proper_position_with(f: &UniPoly, g: &UniPoly, convention: WronskianSign) -> bool {
    if !is_hyperbolic(f) || !is_hyperbolic(g) {
        return false;
    }
    let w = wronskian(f, g);
    let ok = match convention {
        WronskianSign::NonNegative => is_nonnegative_on_reals(&w),
        WronskianSign::NonPositive => is_nonpositive_on_reals(&w),
    };
    ok.expect("wronskian sign test on a nonzero polynomial")
}

pub fn proper_position(f: &UniPoly, g: &UniPoly) -> bool {
    proper_position_with(f, g, PROPER_POSITION_CONVENTION)
}

/// `W[Q0, Q2]^2 - W[Q0, Q1] W[Q1, Q2]`.
pub fn by_wronskian_combination(q2: &UniPoly, q1: &UniPoly, q0: &UniPoly) -> UniPoly {
    let w02 = wronskian(q0, q2);
    let w01 = wronskian(q0, q1);
    let w12 = wronskian(q1, q2);
    &(&w02 * &w02) - &(&w01 * &w12)
}

fn check_by_degrees(q2: &UniPoly, q1: &UniPoly, q0: &UniPoly) -> Result<()> {
    if q2.degree() != Some(2) {
        return Err(Error::DegreeHypothesis(format!("Q2 must have degree 2, got {q2}")));
    }
    if q1.degree().is_some_and(|d| d > 1) {
        return Err(Error::DegreeHypothesis(format!(
            "Q1 must have degree at most 1, got {q1}"
        )));
    }
    if !q0.is_constant() {
        return Err(Error::DegreeHypothesis(format!("Q0 must be constant, got {q0}")));
    }
    Ok(())
}

/// Wronskian criterion for `Q2 D^2 + Q1 D + Q0` under an explicit
/// proper-position convention.
pub fn bates_yoshida_check_with(q2: &UniPoly, q1: &UniPoly, q0: &UniPoly, convention: WronskianSign) -> Result<bool> {
    check_by_degrees(q2, q1, q0)?;
    let inequality = is_nonpositive_on_reals(&by_wronskian_combination(q2, q1, q0))?;
    Ok(inequality && proper_position_with(q0, q1, convention) && proper_position_with(q1, q2, convention))
}

/// True iff `Q2 D^2 + Q1 D + Q0` preserves hyperbolicity by the Wronskian
/// criterion. `Q0` may be the zero constant.
pub fn bates_yoshida_check(q2: &UniPoly, q1: &UniPoly, q0: &UniPoly) -> Result<bool> {
    bates_yoshida_check_with(q2, q1, q0, PROPER_POSITION_CONVENTION)
}

/// Coefficients `(x^2 - 1, 2(n+1)x, n^2 + n - A)` of the second-order
/// factor `D^n (delta - A) = T D^n`.
pub fn fall_quadratic_factor(n: usize, a: &Rational) -> (UniPoly, UniPoly, UniPoly) {
    let nn = int(n as i64);
    (
        UniPoly::from_ints(&[-1, 0, 1]),
        UniPoly::linear(int(2) * (&nn + int(1)), Rational::zero()),
        UniPoly::constant(&nn * &nn + &nn - a),
    )
}

/// `-4(n^2 + n - A) [(A + n + 1) x^2 + (n + 1)^2]`, checked against the
/// Wronskian combination of the quadratic factor.
pub fn reduced_inequality(n: usize, a: &Rational) -> Result<UniPoly> {
    let nn = int(n as i64);
    let c = &nn * &nn + &nn - a;
    let np1 = &nn + int(1);
    let bracket = UniPoly::new(vec![&np1 * &np1, Rational::zero(), a + &np1]);
    let closed = bracket.scale(&(int(-4) * c));
    let (q2, q1, q0) = fall_quadratic_factor(n, a);
    if closed != by_wronskian_combination(&q2, &q1, &q0) {
        return Err(Error::inconsistent(format!(
            "reduced inequality mismatch at n = {n}, A = {a}"
        )));
    }
    Ok(closed)
}

/// The closed interval `[-(n+1), n(n+1)]` of admissible shifts.
pub fn fall_interval(n: usize) -> (Rational, Rational) {
    let n = n as i64;
    (int(-(n + 1)), int(n * (n + 1)))
}

fn check_fall_args(n: usize, a: &[Rational]) -> Result<()> {
    if n == 0 {
        return Err(Error::precondition("n must be positive"));
    }
    if a.is_empty() {
        return Err(Error::precondition("at least one shift A_j is required"));
    }
    Ok(())
}

/// `h(x) = prod_{j<n} (x - j(j+1)) prod_j (x - A_j)`, so that the operator
/// is `h(delta)`.
pub fn fall_h(n: usize, a: &[Rational]) -> UniPoly {
    let roots: Vec<Rational> = (0..n as i64)
        .map(|j| int(j * (j + 1)))
        .chain(a.iter().cloned())
        .collect();
    UniPoly::from_roots(&roots)
}

/// Product of `delta - j(j+1)` for `j < n` and `delta - A_j`, composed
/// left to right.
pub fn fall_operator_direct(n: usize, a: &[Rational]) -> DiffOperator {
    let delta = DiffOperator::delta();
    let shifted = |c: Rational| &delta - &DiffOperator::scalar(c);
    (0..n as i64)
        .map(|j| int(j * (j + 1)))
        .chain(a.iter().cloned())
        .fold(DiffOperator::identity(), |acc, c| acc.compose(&shifted(c)))
}

/// `F_0 F_1 ... F_{n-1} T_1 ... T_N D^n` with first-order factors
/// `F_k = (x^2 - 1) D + 2(k+1) x` and second-order factors
/// `T_j = (x^2 - 1) D^2 + 2(n+1) x D + n^2 + n - A_j`.
pub fn fall_operator_factored(n: usize, a: &[Rational]) -> DiffOperator {
    let first_order = |k: usize| {
        DiffOperator::new(vec![
            UniPoly::from_ints(&[0, 2 * (k as i64 + 1)]),
            UniPoly::from_ints(&[-1, 0, 1]),
        ])
    };
    let second_order = |aj: &Rational| {
        let (q2, q1, q0) = fall_quadratic_factor(n, aj);
        DiffOperator::new(vec![q0, q1, q2])
    };
    let mut op = (0..n).fold(DiffOperator::identity(), |acc, k| acc.compose(&first_order(k)));
    for aj in a {
        op = op.compose(&second_order(aj));
    }
    op.compose(&DiffOperator::derivative_power(n))
}

/// The operator built both ways; a disagreement is an internal error.
pub fn fall_operator(n: usize, a: &[Rational]) -> Result<DiffOperator> {
    check_fall_args(n, a)?;
    let direct = fall_operator_direct(n, a);
    if direct != fall_operator_factored(n, a) {
        return Err(Error::inconsistent(format!("factorizations disagree for n = {n}")));
    }
    Ok(direct)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FallFactorCheck {
    #[serde(with = "crate::rational::fraction")]
    pub a: Rational,
    pub in_interval: bool,
    pub wronskian_criterion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FallCertificate {
    pub n: usize,
    #[serde(with = "crate::rational::fraction")]
    pub interval_lo: Rational,
    #[serde(with = "crate::rational::fraction")]
    pub interval_hi: Rational,
    pub factors: Vec<FallFactorCheck>,
    /// Every second-order factor preserves hyperbolicity, hence so does the
    /// whole product.
    pub certified: bool,
}

/// Checks every second-order factor against both the interval and the
/// Wronskian criterion; the two must agree.
pub fn fall_certificate(n: usize, a: &[Rational]) -> Result<FallCertificate> {
    check_fall_args(n, a)?;
    let (lo, hi) = fall_interval(n);
    let mut factors = Vec::with_capacity(a.len());
    for aj in a {
        let (q2, q1, q0) = fall_quadratic_factor(n, aj);
        let by = bates_yoshida_check(&q2, &q1, &q0)?;
        let in_interval = &lo <= aj && aj <= &hi;
        if by != in_interval {
            return Err(Error::inconsistent(format!(
                "Wronskian criterion and interval disagree at n = {n}, A = {aj}"
            )));
        }
        factors.push(FallFactorCheck {
            a: aj.clone(),
            in_interval,
            wronskian_criterion: by,
        });
    }
    let certified = factors.iter().all(|f| f.wronskian_criterion);
    Ok(FallCertificate {
        n,
        interval_lo: lo,
        interval_hi: hi,
        factors,
        certified,
    })
}

/// One second-order operator with a known expected status.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CalibrationRow {
    pub name: String,
    pub operator: DiffOperator,
    pub expected_preserver: bool,
    /// Nonreal zeros of the operator's image of a hyperbolic probe, when the
    /// case is expected to fail.
    pub counterexample_nonreal_zeros: Option<usize>,
    pub non_negative: bool,
    pub non_positive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CalibrationReport {
    pub convention: WronskianSign,
    pub rows: Vec<CalibrationRow>,
    pub consistent: Vec<WronskianSign>,
}

/// Runs the Wronskian criterion under both sign conventions on operators of
/// known status and checks that the built-in convention is the one that
/// classifies them all correctly.
pub fn calibrate() -> Result<CalibrationReport> {
    let mut cases: Vec<(String, UniPoly, UniPoly, UniPoly, bool)> = Vec::new();
    for n in 1..=3usize {
        let (lo, hi) = fall_interval(n);
        for a in [lo, int(0), hi] {
            let (q2, q1, q0) = fall_quadratic_factor(n, &a);
            cases.push((
                format!("delta factor n={n} A={}", to_fraction_string(&a)),
                q2,
                q1,
                q0,
                true,
            ));
        }
    }
    cases.push((
        "reflected first-order term".into(),
        UniPoly::from_ints(&[-1, 0, 1]),
        UniPoly::from_ints(&[0, -4]),
        UniPoly::from_ints(&[2]),
        false,
    ));
    let (q2, q1, q0) = fall_quadratic_factor(1, &int(3));
    cases.push(("delta factor n=1 A=3".into(), q2, q1, q0, false));

    let probes = Corpus {
        max_degree: 4,
        root_grid: (-3..=3).map(int).collect(),
    }
    .polynomials();
    let mut rows = Vec::with_capacity(cases.len());
    for (name, q2, q1, q0, expected) in cases {
        let operator = DiffOperator::new(vec![q0.clone(), q1.clone(), q2.clone()]);
        let counterexample_nonreal_zeros = if expected {
            None
        } else {
            let found = probes.iter().map(|p| z_c(&operator.apply(p))).find(|&z| z > 0);
            if found.is_none() {
                return Err(Error::inconsistent(format!("no counterexample found for {name}")));
            }
            found
        };
        rows.push(CalibrationRow {
            name,
            operator,
            expected_preserver: expected,
            counterexample_nonreal_zeros,
            non_negative: bates_yoshida_check_with(&q2, &q1, &q0, WronskianSign::NonNegative)?,
            non_positive: bates_yoshida_check_with(&q2, &q1, &q0, WronskianSign::NonPositive)?,
        });
    }
    let consistent: Vec<WronskianSign> = [WronskianSign::NonNegative, WronskianSign::NonPositive]
        .into_iter()
        .filter(|&c| {
            rows.iter().all(|r| {
                let got = match c {
                    WronskianSign::NonNegative => r.non_negative,
                    WronskianSign::NonPositive => r.non_positive,
                };
                got == r.expected_preserver
            })
        })
        .collect();
    if consistent != [PROPER_POSITION_CONVENTION] {
        return Err(Error::inconsistent(format!(
            "calibration selects {consistent:?}, built-in convention is {PROPER_POSITION_CONVENTION:?}"
        )));
    }
    Ok(CalibrationReport {
        convention: PROPER_POSITION_CONVENTION,
        rows,
        consistent,
    })
}

/// Hyperbolic test inputs for [`ms_empirical_check`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub max_degree: usize,
    pub root_grid: Vec<Rational>,
}

impl Default for Corpus {
    /// Degree at most 6, roots in `{-3, ..., 3}`.
    fn default() -> Self {
        Corpus {
            max_degree: 6,
            root_grid: (-3..=3).map(int).collect(),
        }
    }
}

impl Corpus {
    /// Products of linear factors over root multisets (by degree, then
    /// lexicographically), then `P_0..P_d`, then the hyperbolic partial sums
    /// `P_0 + ... + P_j`.
    pub fn polynomials(&self) -> Vec<UniPoly> {
        let mut grid = self.root_grid.clone();
        grid.sort();
        grid.dedup();
        let mut out = Vec::new();
        for d in 0..=self.max_degree {
            let mut idx = vec![0usize; d];
            loop {
                let roots: Vec<Rational> = idx.iter().map(|&i| grid[i].clone()).collect();
                out.push(UniPoly::from_roots(&roots));
                // next nondecreasing index tuple
                let Some(pos) = (0..d).rev().find(|&p| idx[p] + 1 < grid.len()) else {
                    break;
                };
                let v = idx[pos] + 1;
                idx[pos..].iter_mut().for_each(|x| *x = v);
            }
        }
        out.extend((0..=self.max_degree).map(legendre_poly));
        let mut partial = UniPoly::zero();
        for k in 0..=self.max_degree {
            partial = &partial + &legendre_poly(k);
            if is_hyperbolic(&partial) {
                out.push(partial.clone());
            }
        }
        out
    }
}

/// Searches the corpus for a hyperbolic input whose image has nonreal
/// zeros; the first one in corpus order is the witness.
pub fn ms_empirical_check(seq: &EigenSequence, corpus: &Corpus) -> Result<VerdictReport> {
    if corpus.root_grid.is_empty() {
        return Err(Error::precondition("root grid is empty"));
    }
    let images: Vec<UniPoly> = (0..=corpus.max_degree)
        .map(|j| apply_diagonal(seq, &UniPoly::monomial(Rational::one(), j)))
        .collect();
    let inputs = corpus.polynomials();
    let image_of = |p: &UniPoly| {
        p.terms()
            .fold(UniPoly::zero(), |acc, (j, c)| &acc + &images[j].scale(c))
    };
    let found = inputs
        .par_iter()
        .map(|p| (p, image_of(p)))
        .find_map_first(|(p, out)| (!is_hyperbolic(&out)).then(|| (p.clone(), out)));
    let grid: Vec<String> = corpus.root_grid.iter().map(to_fraction_string).collect();
    let report = match found {
        None => VerdictReport::pass(),
        Some((input, output)) => {
            let nonreal_zeros = z_c(&output);
            VerdictReport::fail(Witness::Polynomial {
                input,
                output,
                nonreal_zeros,
            })
        }
    };
    Ok(report
        .with_param("sequence", seq.interp())
        .with_param("max_degree", corpus.max_degree)
        .with_param("root_grid", grid.join(" "))
        .with_param("inputs", inputs.len()))
}

/// Recomputes a polynomial witness through the differential-operator form
/// of the sequence rather than the Legendre expansion.
pub fn reverify_polynomial_witness(seq: &EigenSequence, witness: &Witness) -> bool {
    let Witness::Polynomial {
        input,
        output,
        nonreal_zeros,
    } = witness
    else {
        return false;
    };
    let order = input.degree().unwrap_or(0);
    let image = extract_operator(seq, order).apply(input);
    is_hyperbolic(input) && &image == output && z_c(&image) == *nonreal_zeros && *nonreal_zeros > 0
}

/// Necessary conditions for a classical multiplier sequence: the nonzero
/// terms share one sign, and `sum_k C(n,k) gamma_k x^k` is hyperbolic for
/// every `n <= max_n`.
pub fn classical_ms_necessary(seq: &EigenSequence, max_n: usize) -> Result<VerdictReport> {
    let interp = seq.interp();
    let base = |r: VerdictReport| r.with_param("sequence", interp).with_param("max_n", max_n);
    if interp.is_zero() {
        return Ok(base(VerdictReport::pass()));
    }
    let sign = Sign::of(&interp.leading());
    let reach = cauchy_bound(interp)?.ceil().to_integer();
    let reach: usize = reach.try_into().unwrap_or(usize::MAX).max(max_n);
    for k in 0..=reach {
        let g = seq.gamma(k);
        if Sign::of(&g) == sign.flip() {
            let detail = format!("gamma_{k} = {} opposes the eventual sign", to_fraction_string(&g));
            return Ok(base(VerdictReport::fail(Witness::Index { index: k, detail })));
        }
    }
    for n in 1..=max_n {
        let coeffs: Vec<Rational> = (0..=n)
            .map(|k| from_bigint(binomial(n as u64, k as u64)) * seq.gamma(k))
            .collect();
        let polynomial = UniPoly::new(coeffs);
        if !is_hyperbolic(&polynomial) {
            let nonreal_zeros = z_c(&polynomial);
            return Ok(base(VerdictReport::fail(Witness::Jensen {
                n,
                polynomial,
                nonreal_zeros,
            })));
        }
    }
    Ok(base(VerdictReport::pass()))
}
