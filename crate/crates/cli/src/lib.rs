//! Command-line front end for the bi-periodic Jacobsthal toolkit.
//!
//! Exit codes: 0 when every check passed, 1 when a counterexample or method
//! disagreement was found, 2 for usage and domain errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::{self, Write};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use jacobsthal_core::bench::{run_ladder, DEFAULT_LADDER};
use jacobsthal_core::genfunc::{build_ogf, series_coeffs};
use jacobsthal_core::matrix::{recurrence_terms, term_all, Method};
use jacobsthal_core::scalar::{scalar_term, scalar_term_fast};
use jacobsthal_core::verifier::{
    direct_sum, run_grid, sum_t5_closed, sum_t6_printed, sum_weighted_corrected, GridSpec, IdentityId,
    IdentityReport,
};
use jacobsthal_core::{BiParams, Error, Mat2, Rational, SeqKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "jacobsthal", version, about = "Exact bi-periodic Jacobsthal sequences and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one scalar term.
    Term(TermArgs),
    /// Print the matrix term Jₙ.
    Matrix(MatrixArgs),
    /// Run identity suites over a parameter grid.
    Verify(VerifyArgs),
    /// Print the first power-series coefficients of the generating function.
    Series(SeriesArgs),
    /// Compare a partial sum against its closed form.
    Sum(SumArgs),
    /// Time the term methods over a ladder of indices (CSV).
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct Params {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_nonzero)]
    a: Rational,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_nonzero)]
    b: Rational,
}

impl Params {
    fn get(&self) -> BiParams {
        BiParams::new(self.a.clone(), self.b.clone()).expect("nonzero at parse time")
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Jhat,
    Jlucas,
    Fib,
    Lucas,
}

impl From<KindArg> for SeqKind {
    fn from(k: KindArg) -> SeqKind {
        match k {
            KindArg::Jhat => SeqKind::BpJacobsthal,
            KindArg::Jlucas => SeqKind::BpJacobsthalLucas,
            KindArg::Fib => SeqKind::BpFibonacci,
            KindArg::Lucas => SeqKind::BpLucas,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Recurrence,
    Closed,
    Binet,
    Fast,
    All,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Plain,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct TermArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[command(flatten)]
    params: Params,
    /// Index; −1 is accepted for jhat only.
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    /// Use the logarithmic-time method.
    #[arg(long)]
    fast: bool,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[command(flatten)]
    params: Params,
    #[arg(long)]
    n: u64,
    /// `all` computes every method and fails on disagreement.
    #[arg(long, value_enum, default_value = "recurrence")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// `all` or a comma list of suite names.
    #[arg(long, default_value = "all", value_parser = parse_suites)]
    suite: Suites,
    /// `lo..hi` (inclusive, zero skipped) or a comma list of rationals.
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true, value_parser = parse_grid)]
    a: Grid,
    #[arg(long, default_value = "-3..3", allow_hyphen_values = true, value_parser = parse_grid)]
    b: Grid,
    #[arg(long, default_value_t = 128)]
    n_max: u64,
    /// Weights for the weighted-sum suite, comma separated.
    #[arg(long, default_value = "1,2,1/2,3", allow_hyphen_values = true, value_parser = parse_list)]
    x: Grid,
    /// Do not count failures of known misprinted formulas.
    #[arg(long)]
    expect_errata: bool,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args, Debug)]
struct SeriesArgs {
    #[command(flatten)]
    params: Params,
    #[arg(long, default_value_t = 8)]
    count: usize,
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
}

#[derive(Args, Debug)]
struct SumArgs {
    #[command(flatten)]
    params: Params,
    /// Number of summed terms, `Σ_{k<n}`.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    n: u64,
    /// Weight: sums `Jₖ / xᵏ`. Without it the plain sum is used.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_nonzero)]
    x: Option<Rational>,
    /// With `--x`, also print the closed form derived from the generating function.
    #[arg(long)]
    both: bool,
    /// Do not fail on the known misprint of the weighted formula.
    #[arg(long)]
    expect_errata: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_nonzero)]
    a: Rational,
    #[arg(long, default_value = "1", allow_hyphen_values = true, value_parser = parse_nonzero)]
    b: Rational,
    /// Comma list of indices.
    #[arg(long, value_delimiter = ',')]
    ladder: Option<Vec<u64>>,
    #[arg(long, value_delimiter = ',', default_value = "recurrence,fast", value_parser = parse_method)]
    methods: Vec<Method>,
    /// Repetitions per cell; the fastest is reported.
    #[arg(long, default_value_t = 3)]
    reps: usize,
}

#[derive(Clone, Debug)]
struct Grid(Vec<Rational>);

#[derive(Clone, Debug)]
struct Suites(BTreeSet<IdentityId>);

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| e.to_string())
}

fn parse_nonzero(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s)?;
    if r.is_zero() {
        return Err("must be nonzero".into());
    }
    Ok(r)
}

fn parse_list(s: &str) -> Result<Grid, String> {
    let values = s.split(',').map(parse_nonzero).collect::<Result<Vec<_>, _>>()?;
    Ok(Grid(values))
}

fn parse_grid(s: &str) -> Result<Grid, String> {
    let Some((lo, hi)) = s.split_once("..") else {
        return parse_list(s);
    };
    let bound = |t: &str| {
        t.trim()
            .parse::<i64>()
            .map_err(|_| format!("range bound {t:?} is not an integer"))
    };
    let (lo, hi) = (bound(lo)?, bound(hi)?);
    let values: Vec<Rational> = (lo..=hi).filter(|&v| v != 0).map(Rational::from).collect();
    if values.is_empty() {
        return Err(format!("range {s:?} has no nonzero values"));
    }
    Ok(Grid(values))
}

fn parse_suites(s: &str) -> Result<Suites, String> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Suites(IdentityId::ALL.into_iter().collect()));
    }
    let ids = s
        .split(',')
        .map(|t| IdentityId::from_str(t.trim()).map_err(|e| e.to_string()))
        .collect::<Result<BTreeSet<_>, _>>()?;
    Ok(Suites(ids))
}

fn parse_method(s: &str) -> Result<Method, String> {
    Method::from_str(s).map_err(|e| e.to_string())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let result = match cli.command {
        Command::Term(a) => cmd_term(a, out),
        Command::Matrix(a) => cmd_matrix(a, out),
        Command::Verify(a) => cmd_verify(a, out, err),
        Command::Series(a) => cmd_series(a, out),
        Command::Sum(a) => cmd_sum(a, out),
        Command::Bench(a) => cmd_bench(a, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::MethodMismatch { .. } => EXIT_COUNTEREXAMPLE,
                _ => EXIT_USAGE,
            }
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum Failure {
    Core(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

type CmdResult = Result<i32, Failure>;

fn cmd_term(args: TermArgs, out: &mut dyn Write) -> CmdResult {
    let params = args.params.get();
    let kind = SeqKind::from(args.kind);
    let value = match u64::try_from(args.n) {
        Ok(n) if args.fast => scalar_term_fast(kind, &params, n),
        _ => scalar_term(kind, &params, args.n)?,
    };
    writeln!(out, "{value}")?;
    Ok(EXIT_OK)
}

fn matrix_row(m: &Mat2) -> [String; 4] {
    m.entries().map(ToString::to_string)
}

fn cmd_matrix(args: MatrixArgs, out: &mut dyn Write) -> CmdResult {
    let params = args.params.get();
    let m = match args.method {
        MethodArg::All => term_all(&params, args.n)?,
        MethodArg::Recurrence => Method::Recurrence.term(&params, args.n)?,
        MethodArg::Closed => Method::Closed.term(&params, args.n)?,
        MethodArg::Binet => Method::Binet.term(&params, args.n)?,
        MethodArg::Fast => Method::Fast.term(&params, args.n)?,
    };
    match args.format {
        Format::Plain => writeln!(out, "{m}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string(&m).expect("matrix serializes"))?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["n", "e11", "e12", "e21", "e22"])?;
            let [e11, e12, e21, e22] = matrix_row(&m);
            w.write_record([args.n.to_string(), e11, e12, e21, e22])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let spec = GridSpec::new(args.a.0, args.b.0, args.n_max, args.suite.0, args.x.0)?;
    let reports = run_grid(&spec);
    match args.format {
        Format::Plain => {
            for r in &reports {
                writeln!(out, "{r}")?;
            }
        }
        Format::Json => {
            for r in &reports {
                writeln!(out, "{}", r.to_json())?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(IdentityReport::CSV_HEADER)?;
            for r in &reports {
                w.write_record(r.csv_record())?;
            }
            w.flush()?;
        }
    }
    let count = |f: fn(&IdentityReport) -> bool| reports.iter().filter(|r| f(r)).count();
    let errata = count(IdentityReport::is_known_erratum);
    let failed = count(IdentityReport::is_fail);
    let unexpected = if args.expect_errata { failed - errata } else { failed };
    writeln!(
        err,
        "{} reports: {} pass, {} fail ({} known errata), {} skipped",
        reports.len(),
        count(IdentityReport::is_pass),
        failed,
        errata,
        count(IdentityReport::is_skipped),
    )?;
    Ok(if unexpected > 0 { EXIT_COUNTEREXAMPLE } else { EXIT_OK })
}

fn cmd_series(args: SeriesArgs, out: &mut dyn Write) -> CmdResult {
    let params = args.params.get();
    let coeffs = series_coeffs(&build_ogf(&params), args.count);
    match args.format {
        Format::Plain => {
            for c in &coeffs {
                writeln!(out, "{c}")?;
            }
        }
        Format::Json => {
            for (m, c) in coeffs.iter().enumerate() {
                let [e11, e12, e21, e22] = matrix_row(c);
                let obj = serde_json::json!({ "m": m, "e11": e11, "e12": e12, "e21": e21, "e22": e22 });
                writeln!(out, "{obj}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["m", "e11", "e12", "e21", "e22"])?;
            for (m, c) in coeffs.iter().enumerate() {
                let [e11, e12, e21, e22] = matrix_row(c);
                w.write_record([m.to_string(), e11, e12, e21, e22])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "MATCH"
    } else {
        "MISMATCH"
    }
}

fn cmd_sum(args: SumArgs, out: &mut dyn Write) -> CmdResult {
    let params = args.params.get();
    let n = args.n;
    let oracle = direct_sum(&params, args.x.as_ref(), n);
    let js = recurrence_terms(&params, n as usize + 4);
    let (j_n, j_prev) = (&js[n as usize], &js[n as usize - 1]);
    writeln!(out, "oracle:          {oracle}")?;

    let Some(x) = &args.x else {
        let Some(closed) = sum_t5_closed(&params, n, j_n, j_prev) else {
            writeln!(out, "closed-form:     undefined (ab = 1)")?;
            return Ok(EXIT_USAGE);
        };
        let ok = closed == oracle;
        writeln!(out, "closed-form:     {closed}  {}", verdict(ok))?;
        return Ok(if ok { EXIT_OK } else { EXIT_COUNTEREXAMPLE });
    };

    let mut code = EXIT_OK;
    match sum_t6_printed(&params, x, n, j_n, j_prev) {
        None => {
            writeln!(out, "printed-formula: undefined (x^2-(ab+4)x+4 = 0)")?;
            code = EXIT_USAGE;
        }
        Some(printed) => {
            let ok = printed == oracle;
            writeln!(out, "printed-formula: {printed}  {}", verdict(ok))?;
            if !ok && !(args.expect_errata && !x.is_one()) {
                code = EXIT_COUNTEREXAMPLE;
            }
        }
    }
    if args.both {
        let following: [Mat2; 4] = std::array::from_fn(|i| js[n as usize + i].clone());
        match sum_weighted_corrected(&params, x, n, &following) {
            None => writeln!(out, "corrected:       undefined (1-(ab+4)/x^2+4/x^4 = 0)")?,
            Some(c) => {
                let ok = c == oracle;
                writeln!(out, "corrected:       {c}  {}", verdict(ok))?;
                if !ok {
                    code = EXIT_COUNTEREXAMPLE;
                }
            }
        }
    }
    Ok(code)
}

fn cmd_bench(args: BenchArgs, out: &mut dyn Write) -> CmdResult {
    let params = BiParams::new(args.a, args.b)?;
    let ladder = args.ladder.unwrap_or_else(|| DEFAULT_LADDER.to_vec());
    let rows = run_ladder(&params, &ladder, &args.methods, args.reps)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["method", "n", "wall_ms", "term_bits"])?;
    for r in &rows {
        w.write_record([
            r.method.to_string(),
            r.n.to_string(),
            format!("{:.3}", r.wall_ms()),
            r.term_bits.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(EXIT_OK)
}
