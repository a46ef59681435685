use std::fmt::Write as _;

use legendre_ms::combinatorics::{sigma_closed, sigma_direct};
use legendre_ms::diffop::{capital_p, decompose_even_odd, operator_from_h, s2m0_formula, ClosedRoute, EigenSequence};
use legendre_ms::hyperbolicity::{
    calibrate as run_calibration, classical_ms_necessary, eventual_sign, fall_certificate, fall_h, fall_operator,
    ms_empirical_check, noodd_test, Corpus,
};
use legendre_ms::poly::{isolate_real_roots, UniPoly};
use legendre_ms::rational::{parse_rational, rat, to_decimal_string, to_f64, Rational};
use legendre_ms::selftest::run_selftest;
use legendre_ms::symbol::{
    breaking_point, conjecture2_battery, quartic_symbol, region_scan, shift_probe, symbol_of, LineGrid, RangeSpec,
    SymbolCurve,
};
use legendre_ms::{Error, Result, Verdict, VerdictReport, Witness};
use serde::Serialize;
use serde_json::json;

use crate::output::{csv_table, frac, Rendered};

fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

fn nonzero_poly(coeffs: &[Rational]) -> Result<UniPoly> {
    let p = UniPoly::new(coeffs.to_vec());
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(p)
}

/// `standard`, or `s_lo:s_hi:s_step,t_lo:t_hi:t_step`.
pub fn parse_lines(spec: &str) -> Result<LineGrid> {
    if spec == "standard" {
        return Ok(LineGrid::standard());
    }
    let (s, t) = spec
        .split_once(',')
        .ok_or_else(|| precondition(format!("line grid {spec:?} is not `standard` or two ranges")))?;
    let range = |part: &str| -> Result<RangeSpec> {
        let fields: Vec<&str> = part.split(':').collect();
        let [lo, hi, step] = fields[..] else {
            return Err(precondition(format!("range {part:?} must be lo:hi:step")));
        };
        RangeSpec::new(parse_rational(lo)?, parse_rational(hi)?, parse_rational(step)?)
    };
    LineGrid::from_ranges(&range(s)?, &range(t)?)
}

fn parse_root_grid(spec: &str) -> Result<Vec<Rational>> {
    let range = RangeSpec::parse(spec, Rational::from_integer(1.into()))?;
    Ok(range.points())
}

fn verdict_line(name: &str, r: &VerdictReport) -> String {
    let mut line = format!("{name}: {}", r.verdict.as_str());
    match &r.witness {
        Some(Witness::Polynomial {
            input,
            output,
            nonreal_zeros,
        }) => {
            let _ = write!(line, " (input {input} maps to {output}, {nonreal_zeros} nonreal zeros)");
        }
        Some(Witness::Index { index, detail }) => {
            let _ = write!(line, " (index {index}: {detail})");
        }
        Some(Witness::SignTail { tail_start, sign, .. }) => {
            let _ = write!(line, " (S_2m(0) is {} for every m >= {tail_start})", sign.as_str());
        }
        Some(Witness::Line {
            s, t, nonreal_zeros, ..
        }) => {
            let _ = write!(
                line,
                " (line s = {}, t = {} meets the curve in {nonreal_zeros} nonreal points)",
                frac(s),
                frac(t)
            );
        }
        Some(Witness::Jensen {
            n,
            polynomial,
            nonreal_zeros,
        }) => {
            let _ = write!(line, " (n = {n}: {polynomial} has {nonreal_zeros} nonreal zeros)");
        }
        None => {}
    }
    line + "\n"
}

pub fn sigma(m: u64, n: u64, both: bool) -> Result<Rendered> {
    let direct = sigma_direct(m, n);
    let mut text = format!("sigma({m}, {n}) direct: {}\n", frac(&direct));
    let mut value = json!({ "m": m, "n": n, "direct": frac(&direct) });
    if both {
        match sigma_closed(m, n) {
            Ok(closed) => {
                let equal = closed == direct;
                let _ = writeln!(text, "sigma({m}, {n}) closed: {}", frac(&closed));
                text.push_str(if equal { "equal\n" } else { "DIFFERENT\n" });
                value["closed"] = json!(frac(&closed));
                value["equal"] = json!(equal);
                if !equal {
                    return Ok(Rendered::new(&value, text)?.with_status(3));
                }
            }
            Err(e) => {
                let _ = writeln!(text, "sigma({m}, {n}) closed: not available ({e})");
                value["closed"] = serde_json::Value::Null;
                value["closed_error"] = json!(e.to_string());
            }
        }
    }
    Rendered::new(&value, text)
}

pub fn s2m0(coeffs: &[Rational], m_max: usize) -> Result<Rendered> {
    let p = nonzero_poly(coeffs)?;
    let seq = EigenSequence::from_interp(p.clone());
    let mut rows = Vec::new();
    let mut json_rows = Vec::new();
    for m in 0..=m_max {
        let e = s2m0_formula(&seq, m)?;
        let (status, closed) = match &e.closed {
            ClosedRoute::BelowRange => ("below-range", None),
            ClosedRoute::Undefined => ("undefined", None),
            ClosedRoute::Agrees(v) => ("agrees", Some(frac(v))),
            ClosedRoute::BoundaryMismatch(v) => ("boundary-mismatch", Some(frac(v))),
        };
        rows.push(vec![
            m.to_string(),
            frac(&e.direct),
            status.to_string(),
            closed.clone().unwrap_or_default(),
        ]);
        json_rows.push(json!({ "m": m, "direct": frac(&e.direct), "closed_route": status, "closed": closed }));
    }
    let big_p = capital_p(&seq)?;
    let sign = eventual_sign(&big_p);
    let noodd = noodd_test(&p)?;
    let conclusion = match noodd.verdict {
        Verdict::Fail => "not a Legendre MS",
        Verdict::Pass => "odd part vanishes; no obstruction from S_2m(0)",
        Verdict::Inconclusive => "inconclusive",
    };

    let mut text = format!("sequence: p(k) = {}\n", p.clone().with_var('k'));
    let _ = writeln!(text, "{:>4}  {:<28}  {:<18}  closed", "m", "S_2m(0)", "closed route");
    for r in &rows {
        let _ = writeln!(text, "{:>4}  {:<28}  {:<18}  {}", r[0], r[1], r[2], r[3]);
    }
    let _ = writeln!(text, "capital P(m) = {big_p}");
    let _ = writeln!(text, "eventual sign of capital P: {}", sign.as_str());
    text.push_str(&verdict_line("odd-part test", &noodd));
    let _ = writeln!(text, "verdict: {conclusion}");

    let value = json!({
        "sequence": p,
        "rows": json_rows,
        "capital_p": big_p,
        "eventual_sign": sign,
        "noodd": noodd,
        "verdict": conclusion,
    });
    let csv = csv_table(&["m", "direct", "closed_route", "closed"], &rows)?;
    Ok(Rendered::new(&value, text)?.with_csv(csv))
}

pub fn check(coeffs: &[Rational], corpus_degree: usize, grid: &str, jensen_n: usize) -> Result<Rendered> {
    let p = nonzero_poly(coeffs)?;
    let seq = EigenSequence::from_interp(p.clone());
    let (h, q) = decompose_even_odd(&p);
    let corpus = Corpus {
        max_degree: corpus_degree,
        root_grid: parse_root_grid(grid)?,
    };
    let noodd = noodd_test(&p)?;
    let classical = classical_ms_necessary(&seq, jensen_n)?;
    let empirical = ms_empirical_check(&seq, &corpus)?;
    let failed = [&noodd, &classical, &empirical].iter().any(|r| r.is_fail());
    let verdict = if failed { Verdict::Fail } else { Verdict::Pass };
    let summary = if failed {
        "fail: not a Legendre multiplier sequence"
    } else {
        "pass: no counterexample found (necessary conditions only)"
    };

    let mut text = format!("sequence: p(k) = {}\n", p.clone().with_var('k'));
    let _ = writeln!(text, "decomposition: h = {h}, odd part q = {q}");
    text.push_str(&verdict_line("odd-part test", &noodd));
    text.push_str(&verdict_line("classical necessary test", &classical));
    text.push_str(&verdict_line("empirical search", &empirical));
    let _ = writeln!(text, "verdict: {summary}");

    let value = json!({
        "sequence": p,
        "h": h,
        "q": q,
        "odd_part_gate": if q.is_zero() { "pass" } else { "fail" },
        "noodd": noodd,
        "classical": classical,
        "empirical": empirical,
        "verdict": verdict,
    });
    Rendered::new(&value, text)
}

#[derive(Serialize)]
struct SymbolOut<'a> {
    curve: &'a SymbolCurve,
    points: Vec<[f64; 2]>,
}

fn zero_set_points(curve: &SymbolCurve, xs: &[Rational]) -> Result<Vec<[f64; 2]>> {
    let precision = rat(1, 1_000_000_000);
    let mut points = Vec::new();
    for x in xs {
        let in_y = curve.poly.specialize_x(x);
        if in_y.is_constant() {
            continue;
        }
        let iso = isolate_real_roots(&in_y, &precision)?;
        let mut ys: Vec<Rational> = iso.exact_roots.into_iter().map(|(r, _)| r).collect();
        ys.extend(
            iso.intervals
                .into_iter()
                .map(|iv| (iv.lo + iv.hi) / Rational::from_integer(2.into())),
        );
        ys.sort();
        points.extend(ys.iter().map(|y| [to_f64(x), to_f64(y)]));
    }
    Ok(points)
}

pub fn symbol(
    b: Option<&Rational>,
    c: Option<&Rational>,
    from_h: Option<&[Rational]>,
    x_range: &str,
    x_step: &Rational,
) -> Result<Rendered> {
    let curve = match from_h {
        Some(h) => {
            let h = UniPoly::new(h.to_vec());
            symbol_of(&operator_from_h(&h)).with_source(format!("h(delta), h = {h}"))
        }
        None => {
            let zero = Rational::from_integer(0.into());
            quartic_symbol(b.unwrap_or(&zero), c.unwrap_or(&zero))?
        }
    };
    let xs = RangeSpec::parse(x_range, x_step.clone())?.points();
    let points = zero_set_points(&curve, &xs)?;
    let (vx, vy) = curve.poly.vars();
    let mut text = format!(
        "source: {}\norder: {}\ncurve: {} = 0\n",
        curve.source, curve.order, curve.poly
    );
    let _ = writeln!(text, "coefficients of {vy}^j:");
    for j in 0..=curve.poly.degree_in_y().unwrap_or(0) {
        let _ = writeln!(text, "  {vy}^{j}: {}", curve.poly.y_coefficient(j).with_var(vx));
    }
    let _ = writeln!(text, "zero-set points: {} (use --format csv)", points.len());
    let rows: Vec<Vec<String>> = points.iter().map(|[x, y]| vec![x.to_string(), y.to_string()]).collect();
    let csv = csv_table(&["x", "y"], &rows)?;
    Ok(Rendered::new(&SymbolOut { curve: &curve, points }, text)?.with_csv(csv))
}

pub fn breaking(c: &Rational, tol: &Rational, lines: &str) -> Result<Rendered> {
    let grid = parse_lines(lines)?;
    match breaking_point(c, &grid, tol) {
        Ok(r) => {
            let mut text = format!("c = {}\n", frac(&r.c));
            let _ = writeln!(text, "bracket: [{}, {}]", frac(&r.lo), frac(&r.hi));
            let _ = writeln!(
                text,
                "decimal: [{}, {}]",
                to_decimal_string(&r.lo, 12),
                to_decimal_string(&r.hi, 12)
            );
            let _ = writeln!(text, "bisections: {}", r.bisections);
            let _ = writeln!(text, "lines: {}", r.lines);
            if let Some(t) = &r.transition_line {
                let _ = writeln!(
                    text,
                    "failing line at upper end: s = {}, t = {}; restriction discriminant {} below, {} above",
                    frac(&t.s),
                    frac(&t.t),
                    t.discriminant_sign_lo.as_str(),
                    t.discriminant_sign_hi.as_str()
                );
            }
            Rendered::new(&r, text)
        }
        Err(Error::NoTransition { lo, hi }) => {
            let text = format!("c = {}\nno pass/fail transition on [{lo}, {hi}]\n", frac(c));
            let value = json!({ "c": frac(c), "transition": null, "searched": [lo, hi] });
            Rendered::new(&value, text)
        }
        Err(e) => Err(e),
    }
}

pub fn scan(b: &str, c: &str, steps: &str, lines: &str) -> Result<Rendered> {
    let (bs, cs) = steps
        .split_once(',')
        .ok_or_else(|| precondition("--steps must be `b_step,c_step`"))?;
    let b_range = RangeSpec::parse(b, parse_rational(bs)?)?;
    let c_range = RangeSpec::parse(c, parse_rational(cs)?)?;
    let grid = parse_lines(lines)?;
    let result = region_scan(&b_range, &c_range, &grid)?;
    let csv = result.to_csv()?;
    Ok(Rendered::new(&result, csv.clone())?.with_csv(csv))
}

pub fn fall(n: usize, count: usize, shifts: &[Rational]) -> Result<Rendered> {
    if shifts.len() != count {
        return Err(precondition(format!("expected {count} shifts, got {}", shifts.len())));
    }
    let op = fall_operator(n, shifts)?;
    let cert = fall_certificate(n, shifts)?;
    let h = fall_h(n, shifts);
    let mut text = format!("operator: h(delta), h = {h}\norder: {}\n", op.order().unwrap_or(0));
    for (k, s) in op.coeffs().iter().enumerate() {
        let _ = writeln!(text, "  S_{k}(x) = {s}");
    }
    let interval = format!("[{}, {}]", frac(&cert.interval_lo), frac(&cert.interval_hi));
    if cert.certified {
        let _ = writeln!(
            text,
            "certificate: hyperbolicity preserver (every shift lies in {interval})"
        );
    } else {
        let outside: Vec<String> = cert
            .factors
            .iter()
            .filter(|f| !f.in_interval)
            .map(|f| frac(&f.a))
            .collect();
        let _ = writeln!(
            text,
            "certificate: none (shifts {} lie outside {interval})",
            outside.join(", ")
        );
    }
    let value = json!({ "n": n, "h": h, "operator": op, "certificate": cert });
    Rendered::new(&value, text)
}

pub fn conj2(n: usize, k: usize, corpus_degree: usize, lines: &str) -> Result<Rendered> {
    let corpus = Corpus {
        max_degree: corpus_degree,
        ..Corpus::default()
    };
    let grid = parse_lines(lines)?;
    let r = conjecture2_battery(n, k, &corpus, &grid)?;
    let mut text = format!("operator: h(delta), h = {}, order {}\n", r.h, r.order);
    text.push_str(&verdict_line("empirical search", &r.empirical));
    text.push_str(&verdict_line("classical necessary test", &r.classical));
    text.push_str(&verdict_line("line test", &r.lines));
    text.push_str("evidence only; no verdict on hyperbolicity preservation is asserted\n");
    Rendered::new(&r, text)
}

pub fn calibrate(probe: &[Rational], lines: &str) -> Result<Rendered> {
    let report = run_calibration()?;
    let grid = parse_lines(lines)?;
    let corpus = Corpus::default();
    let probes = probe
        .iter()
        .map(|a| shift_probe(a, &corpus, &grid))
        .collect::<Result<Vec<_>>>()?;

    let mut text = format!(
        "proper-position convention: W[f, g] = f g' - f' g is {:?}\n",
        report.convention
    );
    let _ = writeln!(
        text,
        "{:<28} {:>9} {:>13} {:>13}",
        "operator", "expected", "non_negative", "non_positive"
    );
    for r in &report.rows {
        let _ = writeln!(
            text,
            "{:<28} {:>9} {:>13} {:>13}",
            r.name,
            if r.expected_preserver { "HP" } else { "not HP" },
            r.non_negative,
            r.non_positive
        );
    }
    text.push_str("delta (delta + A) versus delta (delta - A):\n");
    for p in &probes {
        let _ = writeln!(
            text,
            "  A = {}: plus lines {}, plus search {}; minus lines {}, minus search {}, minus certified {}",
            frac(&p.a),
            p.plus_lines.verdict.as_str(),
            p.plus_empirical.verdict.as_str(),
            p.minus_lines.verdict.as_str(),
            p.minus_empirical.verdict.as_str(),
            p.minus_certificate.certified
        );
    }
    let value = json!({ "calibration": report, "shift_probes": probes });
    Rendered::new(&value, text)
}

pub fn selftest() -> Result<Rendered> {
    let results = run_selftest();
    let mut text = String::new();
    for r in &results {
        let _ = writeln!(
            text,
            "{} {}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    let _ = writeln!(text, "{} of {} checks pass", results.len() - failed, results.len());
    let status = if failed == 0 { 0 } else { 3 };
    Ok(Rendered::new(&results, text)?.with_status(status))
}
