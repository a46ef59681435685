//! Symbol curves `sum_k (-1)^k S_k(x) y^k` of finite-order operators, tests
//! of their intersections with lines of positive slope, and scans over the
//! quartic family `h(x) = x^2 + b x + c`.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::diffop::{coeff_at_zero_direct, operator_from_h, DiffOperator, EigenSequence};
use crate::error::{Error, Result};
use crate::hyperbolicity::{
    classical_ms_necessary, fall_certificate, ms_empirical_check, z_c, Corpus, FallCertificate,
};
use crate::poly::{all_roots_real, discriminant, real_root_count_with_multiplicity, BiPoly, UniPoly};
use crate::rational::{int, parse_rational, rat, to_decimal_string, to_fraction_string, Rational, Sign};
use crate::verdict::{Verdict, VerdictReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymbolCurve {
    pub poly: BiPoly,
    pub order: usize,
    pub source: String,
}

/// `sum_k (-1)^k S_k(x) y^k` for `op = sum_k S_k(x) D^k`.
pub fn symbol_of(op: &DiffOperator) -> SymbolCurve {
    let mut poly = BiPoly::zero();
    for (k, s) in op.coeffs().iter().enumerate() {
        let sign = if k % 2 == 1 { -Rational::one() } else { Rational::one() };
        for (i, c) in s.terms() {
            poly.add_term((i, k), c * &sign);
        }
    }
    SymbolCurve {
        poly,
        order: op.order().unwrap_or(0),
        source: "operator".into(),
    }
}

impl SymbolCurve {
    pub fn with_source(mut self, source: impl Into<String>) -> Self {
        self.source = source.into();
        self
    }
}

/// `(-1)^k S_k(0)` for `k <= max_k`, the Taylor coefficients of the symbol
/// along `x = 0`.
pub fn symbol_series_at_x0(seq: &EigenSequence, max_k: usize) -> Vec<Rational> {
    (0..=max_k)
        .map(|k| {
            let v = coeff_at_zero_direct(seq, k);
            if k % 2 == 1 {
                -v
            } else {
                v
            }
        })
        .collect()
}

/// The curve polynomial restricted to `y = s x + t`.
pub fn line_restriction(curve: &SymbolCurve, s: &Rational, t: &Rational) -> Result<UniPoly> {
    if !s.is_positive() {
        return Err(Error::precondition(format!("slope must be positive, got {s}")));
    }
    Ok(curve.poly.restrict_y(&UniPoly::linear(s.clone(), t.clone())))
}

/// Closed arithmetic progression `lo, lo + step, ...` up to `hi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeSpec {
    #[serde(with = "crate::rational::fraction")]
    pub lo: Rational,
    #[serde(with = "crate::rational::fraction")]
    pub hi: Rational,
    #[serde(with = "crate::rational::fraction")]
    pub step: Rational,
}

impl RangeSpec {
    pub fn new(lo: Rational, hi: Rational, step: Rational) -> Result<Self> {
        if !step.is_positive() {
            return Err(Error::precondition("step must be positive"));
        }
        if hi < lo {
            return Err(Error::precondition("range upper end is below its lower end"));
        }
        Ok(RangeSpec { lo, hi, step })
    }

    /// A single point.
    pub fn point(v: Rational) -> Self {
        RangeSpec {
            lo: v.clone(),
            hi: v,
            step: Rational::one(),
        }
    }

    /// Parses `lo:hi` or a single value.
    pub fn parse(text: &str, step: Rational) -> Result<Self> {
        match text.split_once(':') {
            Some((lo, hi)) => RangeSpec::new(parse_rational(lo)?, parse_rational(hi)?, step),
            None => Ok(RangeSpec::point(parse_rational(text)?)),
        }
    }

    pub fn points(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        let mut v = self.lo.clone();
        while v <= self.hi {
            out.push(v.clone());
            v += &self.step;
        }
        out
    }
}

/// Finite sample of lines `y = s x + t`, visited slope-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineGrid {
    pub slopes: Vec<Rational>,
    pub intercepts: Vec<Rational>,
}

impl LineGrid {
    /// `s` in `{j/10 : 1 <= j <= 50}`, `t` in `{j/10 : -50 <= j <= 50}`.
    pub fn standard() -> Self {
        LineGrid {
            slopes: (1..=50).map(|j| rat(j, 10)).collect(),
            intercepts: (-50..=50).map(|j| rat(j, 10)).collect(),
        }
    }

    pub fn from_ranges(slopes: &RangeSpec, intercepts: &RangeSpec) -> Result<Self> {
        let grid = LineGrid {
            slopes: slopes.points(),
            intercepts: intercepts.points(),
        };
        if grid.slopes.iter().any(|s| !s.is_positive()) {
            return Err(Error::precondition("line slopes must be positive"));
        }
        Ok(grid)
    }

    pub fn lines(&self) -> Vec<(Rational, Rational)> {
        self.slopes
            .iter()
            .flat_map(|s| self.intercepts.iter().map(move |t| (s.clone(), t.clone())))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.slopes.len() * self.intercepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn describe(&self) -> String {
        let span = |v: &[Rational]| match (v.first(), v.last()) {
            (Some(a), Some(b)) => format!(
                "{}..{} ({} values)",
                to_fraction_string(a),
                to_fraction_string(b),
                v.len()
            ),
            _ => "empty".to_string(),
        };
        format!("s: {}; t: {}", span(&self.slopes), span(&self.intercepts))
    }
}

/// What a line restriction must satisfy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineCriterion {
    /// Every zero of the restriction is real.
    #[default]
    AllReal,
    /// Exactly `order` real zeros, counted with multiplicity.
    LiteralOrder,
}

enum LineOutcome {
    Pass,
    Degenerate,
    Fail(UniPoly),
}

fn judge_line(curve: &SymbolCurve, s: &Rational, t: &Rational, criterion: LineCriterion) -> LineOutcome {
    let f = curve.poly.restrict_y(&UniPoly::linear(s.clone(), t.clone()));
    if f.is_zero() {
        return LineOutcome::Degenerate;
    }
    let ok = match criterion {
        LineCriterion::AllReal => all_roots_real(&f),
        LineCriterion::LiteralOrder => {
            let real = if f.is_constant() {
                0
            } else {
                real_root_count_with_multiplicity(&f).unwrap_or(0)
            };
            real == curve.order
        }
    };
    if ok {
        LineOutcome::Pass
    } else {
        LineOutcome::Fail(f)
    }
}

/// Checks every line of the grid; the first failing line in grid order is
/// the witness. A line on which the curve polynomial vanishes identically
/// makes the result inconclusive unless some other line fails.
pub fn line_test(curve: &SymbolCurve, grid: &LineGrid, criterion: LineCriterion) -> Result<VerdictReport> {
    if grid.slopes.iter().any(|s| !s.is_positive()) {
        return Err(Error::precondition("line slopes must be positive"));
    }
    let lines = grid.lines();
    let failure = lines
        .par_iter()
        .find_map_first(|(s, t)| match judge_line(curve, s, t, criterion) {
            LineOutcome::Fail(f) => Some((s.clone(), t.clone(), f)),
            _ => None,
        });
    let report = match failure {
        Some((s, t, restriction)) => {
            let nonreal_zeros = z_c(&restriction);
            VerdictReport::fail(Witness::Line {
                s,
                t,
                restriction,
                nonreal_zeros,
            })
        }
        None => {
            let degenerate = lines
                .par_iter()
                .any(|(s, t)| matches!(judge_line(curve, s, t, criterion), LineOutcome::Degenerate));
            if degenerate {
                VerdictReport::inconclusive(None).with_param("degenerate", "identically zero restriction")
            } else {
                VerdictReport::pass()
            }
        }
    };
    Ok(report
        .with_param("curve", &curve.source)
        .with_param("lines", grid.describe())
        .with_param("criterion", format!("{criterion:?}")))
}

/// The quartic-family curve in `(x, w)`:
/// `x^4 w^4 - 2x^2 w^4 + w^4 - 8x^3 w^3 + 8x w^3 + (14 + b) x^2 w^2
///  - (6 + b) w^2 - (4 + 2b) x w + c`,
/// checked against the symbol of `h(delta)` with `h = x^2 + b x + c`.
pub fn quartic_symbol(b: &Rational, c: &Rational) -> Result<SymbolCurve> {
    let terms = [
        ((2, 2), int(14)),
        ((3, 3), int(-8)),
        ((4, 4), int(1)),
        ((2, 4), int(-2)),
        ((0, 2), int(-6)),
        ((1, 3), int(8)),
        ((0, 4), int(1)),
        ((1, 1), int(-4)),
        ((2, 2), b.clone()),
        ((0, 2), -b),
        ((1, 1), int(-2) * b),
        ((0, 0), c.clone()),
    ];
    let poly = BiPoly::from_terms(terms).with_vars('x', 'w');
    let h = UniPoly::new(vec![c.clone(), b.clone(), int(1)]);
    if symbol_of(&operator_from_h(&h)).poly != poly {
        return Err(Error::inconsistent(format!(
            "quartic symbol mismatch at b = {b}, c = {c}"
        )));
    }
    Ok(SymbolCurve {
        poly,
        order: 4,
        source: format!("quartic b={} c={}", to_fraction_string(b), to_fraction_string(c)),
    })
}

fn quartic_passes(b: &Rational, c: &Rational, grid: &LineGrid) -> Result<bool> {
    Ok(line_test(&quartic_symbol(b, c)?, grid, LineCriterion::AllReal)?.is_pass())
}

/// A line failing just above the transition, with the sign of its
/// restriction's discriminant on both sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionLine {
    #[serde(with = "crate::rational::fraction")]
    pub s: Rational,
    #[serde(with = "crate::rational::fraction")]
    pub t: Rational,
    pub restriction_at_hi: UniPoly,
    pub discriminant_sign_lo: Sign,
    pub discriminant_sign_hi: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BreakingPoint {
    #[serde(with = "crate::rational::fraction")]
    pub c: Rational,
    #[serde(with = "crate::rational::fraction")]
    pub lo: Rational,
    #[serde(with = "crate::rational::fraction")]
    pub hi: Rational,
    pub lines: String,
    pub bisections: usize,
    pub transition_line: Option<TransitionLine>,
}

/// Brackets the pass/fail transition in `b` over `[2, 7]` for fixed `c` to
/// width at most `tolerance`.
pub fn breaking_point(c: &Rational, grid: &LineGrid, tolerance: &Rational) -> Result<BreakingPoint> {
    if !tolerance.is_positive() {
        return Err(Error::precondition("tolerance must be positive"));
    }
    let (mut lo, mut hi) = (int(2), int(7));
    let mut out = BreakingPoint {
        c: c.clone(),
        lo: lo.clone(),
        hi: hi.clone(),
        lines: grid.describe(),
        bisections: 0,
        transition_line: None,
    };
    if &(&hi - &lo) <= tolerance {
        return Ok(out);
    }
    if !quartic_passes(&lo, c, grid)? || quartic_passes(&hi, c, grid)? {
        return Err(Error::NoTransition {
            lo: to_fraction_string(&lo),
            hi: to_fraction_string(&hi),
        });
    }
    while &(&hi - &lo) > tolerance {
        let mid = (&lo + &hi) / int(2);
        if quartic_passes(&mid, c, grid)? {
            lo = mid;
        } else {
            hi = mid;
        }
        out.bisections += 1;
    }
    let report = line_test(&quartic_symbol(&hi, c)?, grid, LineCriterion::AllReal)?;
    if let Some(Witness::Line { s, t, restriction, .. }) = report.witness {
        let at_lo = line_restriction(&quartic_symbol(&lo, c)?, &s, &t)?;
        let disc_sign = |p: &UniPoly| -> Result<Sign> {
            if p.is_constant() {
                return Ok(Sign::Zero);
            }
            Ok(Sign::of(&discriminant(p)?))
        };
        out.transition_line = Some(TransitionLine {
            discriminant_sign_lo: disc_sign(&at_lo)?,
            discriminant_sign_hi: disc_sign(&restriction)?,
            s,
            t,
            restriction_at_hi: restriction,
        });
    }
    out.lo = lo;
    out.hi = hi;
    Ok(out)
}

/// The conjectured boundary quintic as a polynomial in `(b, c)`:
/// `b^5 - (c+15) b^4 + 4(c+12) b^3 + 8(c^2+24c+19) b^2
///  - 16(10c^2+101c+33) b - 16(c^3-50c^2-185c+63)`.
pub fn quintic_boundary() -> BiPoly {
    let terms: [((usize, usize), i64); 15] = [
        ((5, 0), 1),
        ((4, 1), -1),
        ((4, 0), -15),
        ((3, 1), 4),
        ((3, 0), 48),
        ((2, 2), 8),
        ((2, 1), 192),
        ((2, 0), 152),
        ((1, 2), -160),
        ((1, 1), -1616),
        ((1, 0), -528),
        ((0, 3), -16),
        ((0, 2), 800),
        ((0, 1), 2960),
        ((0, 0), -1008),
    ];
    BiPoly::from_terms(terms.into_iter().map(|(k, v)| (k, int(v)))).with_vars('b', 'c')
}

/// The quintic boundary at fixed `c`, as a polynomial in `b`.
pub fn quintic_at_c(c: &Rational) -> UniPoly {
    let mut coeffs = vec![Rational::zero(); 6];
    for (&(i, j), v) in quintic_boundary().terms() {
        coeffs[i] += v * num_traits::pow(c.clone(), j);
    }
    UniPoly::new(coeffs).with_var('b')
}

/// `c - ((b + 2)^2 / 8 - 4)`.
pub fn parabola_gap(b: &Rational, c: &Rational) -> Rational {
    let shifted = b + int(2);
    c - (&shifted * &shifted / int(8) - int(4))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellVerdict {
    Pass,
    Fail,
    BoundarySuspect,
}

impl CellVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            CellVerdict::Pass => "pass",
            CellVerdict::Fail => "fail",
            CellVerdict::BoundarySuspect => "boundary-suspect",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanCell {
    #[serde(with = "crate::rational::fraction")]
    pub b: Rational,
    #[serde(with = "crate::rational::fraction")]
    pub c: Rational,
    pub verdict: CellVerdict,
    #[serde(with = "crate::rational::fraction_opt")]
    pub first_fail_s: Option<Rational>,
    #[serde(with = "crate::rational::fraction_opt")]
    pub first_fail_t: Option<Rational>,
    /// Sign of `c - ((b+2)^2/8 - 4)`.
    pub parabola_side: Sign,
    pub quintic_sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegionScan {
    pub b_range: RangeSpec,
    pub c_range: RangeSpec,
    pub lines: String,
    pub cells: Vec<ScanCell>,
}

/// Runs the line test on every `(b, c)` cell, `c`-major.
pub fn region_scan(b_range: &RangeSpec, c_range: &RangeSpec, grid: &LineGrid) -> Result<RegionScan> {
    let points: Vec<(Rational, Rational)> = c_range
        .points()
        .into_iter()
        .flat_map(|c| b_range.points().into_iter().map(move |b| (b, c.clone())))
        .collect();
    let quintic = quintic_boundary();
    let cells = points
        .into_par_iter()
        .map(|(b, c)| -> Result<ScanCell> {
            let report = line_test(&quartic_symbol(&b, &c)?, grid, LineCriterion::AllReal)?;
            let verdict = match report.verdict {
                Verdict::Pass => CellVerdict::Pass,
                Verdict::Fail => CellVerdict::Fail,
                Verdict::Inconclusive => CellVerdict::BoundarySuspect,
            };
            let (first_fail_s, first_fail_t) = match report.witness {
                Some(Witness::Line { s, t, .. }) => (Some(s), Some(t)),
                _ => (None, None),
            };
            Ok(ScanCell {
                parabola_side: Sign::of(&parabola_gap(&b, &c)),
                quintic_sign: Sign::of(&quintic.eval(&b, &c)),
                b,
                c,
                verdict,
                first_fail_s,
                first_fail_t,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RegionScan {
        b_range: b_range.clone(),
        c_range: c_range.clone(),
        lines: grid.describe(),
        cells,
    })
}

impl RegionScan {
    pub const CSV_HEADER: [&'static str; 11] = [
        "b",
        "c",
        "verdict",
        "first_fail_s",
        "first_fail_t",
        "b_exact",
        "c_exact",
        "first_fail_s_exact",
        "first_fail_t_exact",
        "parabola_side",
        "quintic_sign",
    ];

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::inconsistent(format!("csv: {e}"));
        w.write_record(Self::CSV_HEADER).map_err(io)?;
        let dec = |r: &Option<Rational>| r.as_ref().map(|v| to_decimal_string(v, 12)).unwrap_or_default();
        let exact = |r: &Option<Rational>| r.as_ref().map(to_fraction_string).unwrap_or_default();
        for cell in &self.cells {
            w.write_record([
                to_decimal_string(&cell.b, 12),
                to_decimal_string(&cell.c, 12),
                cell.verdict.as_str().to_string(),
                dec(&cell.first_fail_s),
                dec(&cell.first_fail_t),
                to_fraction_string(&cell.b),
                to_fraction_string(&cell.c),
                exact(&cell.first_fail_s),
                exact(&cell.first_fail_t),
                cell.parabola_side.as_str().to_string(),
                cell.quintic_sign.as_str().to_string(),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::inconsistent(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| Error::inconsistent(format!("csv: {e}")))
    }

    /// For each `c` row, the first `b` that fails right after a passing cell.
    pub fn transitions(&self) -> Vec<(Rational, Option<Rational>)> {
        let mut out: Vec<(Rational, Option<Rational>)> = Vec::new();
        let mut prev: Option<&ScanCell> = None;
        for cell in &self.cells {
            if out.last().map(|(c, _)| c) != Some(&cell.c) {
                out.push((cell.c.clone(), None));
                prev = None;
            }
            let row = out.last_mut().expect("row just pushed");
            if row.1.is_none()
                && cell.verdict == CellVerdict::Fail
                && prev.is_some_and(|p| p.verdict == CellVerdict::Pass)
            {
                row.1 = Some(cell.b.clone());
            }
            prev = Some(cell);
        }
        out
    }
}

/// `delta^(n-k) (delta^k - 2^k)`, checked against `h(delta)` for
/// `h(x) = x^(n-k) (x^k - 2^k)`.
pub fn conjecture2_operator(n: usize, k: usize) -> Result<DiffOperator> {
    if k == 0 || k >= n {
        return Err(Error::precondition(format!(
            "need 1 <= k <= n - 1, got n = {n}, k = {k}"
        )));
    }
    let delta = DiffOperator::delta();
    let two_k = num_traits::pow(int(2), k);
    let op = delta
        .pow(n - k)
        .compose(&(&delta.pow(k) - &DiffOperator::scalar(two_k)));
    if op != operator_from_h(&conjecture2_h(n, k)) {
        return Err(Error::inconsistent(format!("operator mismatch at n = {n}, k = {k}")));
    }
    Ok(op)
}

/// `x^(n-k) (x^k - 2^k)`.
pub fn conjecture2_h(n: usize, k: usize) -> UniPoly {
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = int(1);
    coeffs[n - k] = -num_traits::pow(int(2), k);
    UniPoly::new(coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conjecture2Report {
    pub n: usize,
    pub k: usize,
    pub h: UniPoly,
    pub order: usize,
    pub empirical: VerdictReport,
    pub classical: VerdictReport,
    pub lines: VerdictReport,
}

/// Empirical battery for one operator of the family; reports evidence only.
pub fn conjecture2_battery(n: usize, k: usize, corpus: &Corpus, grid: &LineGrid) -> Result<Conjecture2Report> {
    let op = conjecture2_operator(n, k)?;
    let h = conjecture2_h(n, k);
    let seq = EigenSequence::from_h(h.clone());
    let curve = symbol_of(&op).with_source(format!("delta^{}(delta^{k} - {})", n - k, 1u64 << k));
    Ok(Conjecture2Report {
        n,
        k,
        order: op.order().unwrap_or(0),
        empirical: ms_empirical_check(&seq, corpus)?,
        classical: classical_ms_necessary(&seq, 12)?,
        lines: line_test(&curve, grid, LineCriterion::AllReal)?,
        h,
    })
}

/// Evidence for `delta (delta + A)` and `delta (delta - A)` at one `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftProbe {
    #[serde(with = "crate::rational::fraction")]
    pub a: Rational,
    pub plus_lines: VerdictReport,
    pub plus_empirical: VerdictReport,
    pub minus_lines: VerdictReport,
    pub minus_empirical: VerdictReport,
    /// Certificate for `delta (delta - A)` as a first-order member of the
    /// shifted-product family.
    pub minus_certificate: FallCertificate,
}

pub fn shift_probe(a: &Rational, corpus: &Corpus, grid: &LineGrid) -> Result<ShiftProbe> {
    let run = |b: Rational| -> Result<(VerdictReport, VerdictReport)> {
        let h = UniPoly::new(vec![Rational::zero(), b, int(1)]);
        let curve = symbol_of(&operator_from_h(&h));
        Ok((
            line_test(&curve, grid, LineCriterion::AllReal)?,
            ms_empirical_check(&EigenSequence::from_h(h), corpus)?,
        ))
    };
    let (plus_lines, plus_empirical) = run(a.clone())?;
    let (minus_lines, minus_empirical) = run(-a)?;
    Ok(ShiftProbe {
        a: a.clone(),
        plus_lines,
        plus_empirical,
        minus_lines,
        minus_empirical,
        minus_certificate: fall_certificate(1, std::slice::from_ref(a))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_grid() -> LineGrid {
        LineGrid {
            slopes: vec![rat(1, 2), int(1), int(2)],
            intercepts: (-2..=2).map(int).collect(),
        }
    }

    #[test]
    fn symbols_of_simple_operators() {
        let id = symbol_of(&DiffOperator::identity());
        assert_eq!(id.poly, BiPoly::constant(int(1)));
        let d = symbol_of(&DiffOperator::delta());
        let expect = BiPoly::from_terms([((2, 2), int(1)), ((0, 2), int(-1)), ((1, 1), int(-2))]);
        assert_eq!(d.poly, expect);
        assert_eq!(d.order, 2);
    }

    #[test]
    fn restrictions() {
        let d = symbol_of(&DiffOperator::delta());
        assert_eq!(
            line_restriction(&d, &int(1), &int(0)).unwrap(),
            UniPoly::from_ints(&[0, 0, -3, 0, 1])
        );
        assert!(line_restriction(&d, &int(0), &int(0)).is_err());
        let id = symbol_of(&DiffOperator::identity());
        assert_eq!(line_restriction(&id, &int(3), &int(-1)).unwrap(), UniPoly::one());
        let q = quartic_symbol(&int(3), &int(0)).unwrap();
        assert_eq!(line_restriction(&q, &int(1), &int(1)).unwrap().degree(), Some(8));
    }

    #[test]
    fn series_at_zero() {
        let delta = EigenSequence::from_interp(UniPoly::from_ints(&[0, 1, 1]));
        let s = symbol_series_at_x0(&delta, 6);
        assert_eq!(s, vec![int(0), int(0), int(-1), int(0), int(0), int(0), int(0)]);
        let one = EigenSequence::from_interp(UniPoly::one());
        assert_eq!(symbol_series_at_x0(&one, 3), vec![int(1), int(0), int(0), int(0)]);
    }

    #[test]
    fn quartic_printed_terms() {
        let q = quartic_symbol(&int(0), &int(0)).unwrap();
        assert_eq!(q.poly.coeff(4, 4), int(1));
        assert_eq!(q.poly.coeff(0, 2), int(-6));
        let q = quartic_symbol(&int(1), &int(0)).unwrap();
        assert_eq!(q.poly.coeff(1, 1), int(-6));
        assert!(quartic_symbol(&int(1), &int(2)).is_ok());
    }

    #[test]
    fn delta_passes_small_grid() {
        let d = symbol_of(&DiffOperator::delta());
        assert!(line_test(&d, &small_grid(), LineCriterion::AllReal).unwrap().is_pass());
        assert!(line_test(&d, &small_grid(), LineCriterion::LiteralOrder)
            .unwrap()
            .is_fail());
    }

    #[test]
    fn zero_curve_is_never_a_pass() {
        let zero = symbol_of(&DiffOperator::zero());
        let r = line_test(&zero, &small_grid(), LineCriterion::AllReal).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn quintic_at_zero() {
        let q = quintic_at_c(&int(0));
        assert_eq!(q, UniPoly::from_ints(&[-1008, -528, 152, 48, -15, 1]));
    }

    #[test]
    fn parabola() {
        assert_eq!(parabola_gap(&int(2), &int(-2)), int(0));
        assert_eq!(Sign::of(&parabola_gap(&int(0), &int(0))), Sign::Positive);
    }

    #[test]
    fn ranges() {
        let r = RangeSpec::parse("2:3", rat(1, 4)).unwrap();
        assert_eq!(r.points().len(), 5);
        assert_eq!(RangeSpec::parse("5", int(1)).unwrap().points(), vec![int(5)]);
        assert!(RangeSpec::parse("3:2", int(1)).is_err());
        assert!(RangeSpec::new(int(0), int(1), int(0)).is_err());
    }

    #[test]
    fn conjecture2_family() {
        let delta = DiffOperator::delta();
        let op = conjecture2_operator(2, 1).unwrap();
        assert_eq!(op, delta.compose(&(&delta - &DiffOperator::scalar(int(2)))));
        assert_eq!(conjecture2_operator(4, 3).unwrap().order(), Some(8));
        assert!(conjecture2_operator(3, 3).is_err());
        assert!(conjecture2_operator(3, 0).is_err());
    }

    #[test]
    fn trivial_breaking_bracket() {
        let r = breaking_point(&int(0), &small_grid(), &int(5)).unwrap();
        assert_eq!((r.lo, r.hi), (int(2), int(7)));
        assert!(breaking_point(&int(0), &small_grid(), &int(0)).is_err());
    }
}
