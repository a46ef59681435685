mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use legendre_ms::rational::parse_rational;
use legendre_ms::{Error, Rational};

use crate::output::Rendered;

/// Exact computations for Legendre-basis multiplier sequences.
///
/// Polynomial coefficients are given constant term first, one rational
/// literal (`p/q`, integer or finite decimal) per argument. A negative
/// fraction such as `-1/3` in a coefficient list must follow `--`.
#[derive(Debug, Parser)]
#[command(name = "legendre-ms", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The alternating sum sigma(m, n), directly and in closed form.
    Sigma {
        m: u64,
        n: u64,
        /// Also evaluate the closed form and compare.
        #[arg(long)]
        both: bool,
    },
    /// S_2m(0) of the operator with eigenvalues p(k), by both routes.
    S2m0 {
        #[arg(required = true, allow_negative_numbers = true, value_parser = rational_arg)]
        coeffs: Vec<Rational>,
        #[arg(long, default_value_t = 6)]
        m_max: usize,
    },
    /// Runs every necessary condition on the sequence p(k).
    Check {
        #[arg(required = true, allow_negative_numbers = true, value_parser = rational_arg)]
        coeffs: Vec<Rational>,
        /// Largest degree of the hyperbolic test inputs.
        #[arg(long, default_value_t = 6)]
        corpus_degree: usize,
        /// Integer root grid `lo:hi` for the test inputs.
        #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
        grid: String,
        /// Largest n for the binomial-transform test.
        #[arg(long, default_value_t = 12)]
        jensen_n: usize,
    },
    /// Symbol curve of h(delta), with a point cloud of its real zero set.
    Symbol {
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg, conflicts_with = "from_h")]
        b: Option<Rational>,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg, conflicts_with = "from_h")]
        c: Option<Rational>,
        /// Coefficients of h, constant term first.
        #[arg(long, num_args = 1.., allow_negative_numbers = true, value_parser = rational_arg)]
        from_h: Option<Vec<Rational>>,
        /// Range of x for the point cloud.
        #[arg(long, default_value = "-3:3", allow_hyphen_values = true)]
        x_range: String,
        #[arg(long, default_value = "1/20", value_parser = rational_arg)]
        x_step: Rational,
    },
    /// Brackets the pass/fail transition in b of the quartic family.
    Break {
        #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = rational_arg)]
        c: Rational,
        #[arg(long, default_value = "1/1000", value_parser = rational_arg)]
        tol: Rational,
        /// `standard` or `s_lo:s_hi:s_step,t_lo:t_hi:t_step`.
        #[arg(long, default_value = "standard", allow_hyphen_values = true)]
        lines: String,
    },
    /// Line test over a (b, c) lattice of the quartic family.
    Scan {
        #[arg(long, default_value = "2:7", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        c: String,
        /// Step sizes `b_step,c_step`.
        #[arg(long, default_value = "1/4,1/4")]
        steps: String,
        #[arg(long, default_value = "standard", allow_hyphen_values = true)]
        lines: String,
    },
    /// Product of shifted delta factors with its certificate.
    Fall {
        n: usize,
        /// Number of shifts that follow.
        count: usize,
        #[arg(allow_negative_numbers = true, value_parser = rational_arg)]
        shifts: Vec<Rational>,
    },
    /// Empirical battery for delta^(n-k) (delta^k - 2^k).
    Conj2 {
        n: usize,
        k: usize,
        #[arg(long, default_value_t = 6)]
        corpus_degree: usize,
        #[arg(long, default_value = "standard", allow_hyphen_values = true)]
        lines: String,
    },
    /// Selects the proper-position sign convention and probes both
    /// parameterizations of delta (delta +- A).
    Calibrate {
        #[arg(long, num_args = 1.., default_values = ["-2", "2", "3", "4"], allow_negative_numbers = true, value_parser = rational_arg)]
        probe: Vec<Rational>,
        #[arg(long, default_value = "standard", allow_hyphen_values = true)]
        lines: String,
    },
    /// Runs the invariant suite.
    Selftest,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InternalConsistency(_) => 3,
        _ => 2,
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("LEGENDRE_HP_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| format!("LEGENDRE_HP_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("LEGENDRE_HP_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn run(cli: &Cli) -> Result<Rendered, Error> {
    use Command::*;
    match &cli.command {
        Sigma { m, n, both } => commands::sigma(*m, *n, *both),
        S2m0 { coeffs, m_max } => commands::s2m0(coeffs, *m_max),
        Check {
            coeffs,
            corpus_degree,
            grid,
            jensen_n,
        } => commands::check(coeffs, *corpus_degree, grid, *jensen_n),
        Symbol {
            b,
            c,
            from_h,
            x_range,
            x_step,
        } => commands::symbol(b.as_ref(), c.as_ref(), from_h.as_deref(), x_range, x_step),
        Break { c, tol, lines } => commands::breaking(c, tol, lines),
        Scan { b, c, steps, lines } => commands::scan(b, c, steps, lines),
        Fall { n, count, shifts } => commands::fall(*n, *count, shifts),
        Conj2 {
            n,
            k,
            corpus_degree,
            lines,
        } => commands::conj2(*n, *k, *corpus_degree, lines),
        Calibrate { probe, lines } => commands::calibrate(probe, lines),
        Selftest => commands::selftest(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let rendered = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let body = match rendered.body(cli.format) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, body.as_bytes()).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{body}");
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(rendered.status)
}
