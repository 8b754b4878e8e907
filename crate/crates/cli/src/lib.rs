//! Command-line front end: compute constants by any legal method, evaluate
//! the alternating zeta function, and export the Wallis convergence table.

pub mod figure;
pub mod methods;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hpconst::precision::parse_decimal;
use hpconst::zeta::{alt_zeta_deriv_global, alt_zeta_dirichlet, alt_zeta_global, ZetaArgument};
use hpconst::{make_context, Error, HPReal, PrecisionContext};
use thiserror::Error as ThisError;

use methods::{
    lookup, methods_for, Budget, Constant, Truncation, DEFAULT_MAX_TERMS, DEFAULT_TERMS,
};
use report::{printed_difference, render, render_complex, RunReport};

/// Largest accepted `--precision`.
pub const MAX_PRECISION: u32 = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "hpconst",
    version,
    about = "High-precision classical constants"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a constant by a named method and compare with a reference value.
    Compute(ComputeArgs),
    /// Benchmark tables.
    Bench {
        #[command(subcommand)]
        table: BenchTable,
    },
    /// Evaluate the alternating zeta function or its derivative.
    Zeta(ZetaArgs),
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub constant: Constant,
    /// For example `product:sondow`; run with an unknown name to list the choices.
    #[arg(long)]
    pub method: String,
    #[arg(long)]
    pub precision: u32,
    #[arg(long, conflicts_with = "tol")]
    pub terms: Option<u64>,
    #[arg(long)]
    pub tol: Option<String>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    /// Leave the wall-clock time out of the report.
    #[arg(long)]
    pub omit_elapsed: bool,
}

#[derive(Debug, Subcommand)]
pub enum BenchTable {
    /// Wallis partial products and their Euler-transformed counterpart.
    Figure1(Figure1Args),
}

#[derive(Debug, Args)]
pub struct Figure1Args {
    #[arg(long)]
    pub n_max: u64,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    #[arg(long, default_value_t = 40)]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct ZetaArgs {
    /// Complex argument such as `2`, `0.5`, `1+1i`.
    #[arg(long, allow_hyphen_values = true)]
    pub s: String,
    #[arg(long, value_enum)]
    pub method: ZetaMethod,
    #[arg(long, default_value_t = DEFAULT_TERMS)]
    pub terms: u64,
    #[arg(long)]
    pub precision: u32,
    #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
    pub format: ReportFormat,
    #[arg(long)]
    pub omit_elapsed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ZetaMethod {
    Dirichlet,
    Global,
    Derivative,
}

impl ZetaMethod {
    fn name(self) -> &'static str {
        match self {
            ZetaMethod::Dirichlet => "dirichlet",
            ZetaMethod::Global => "global",
            ZetaMethod::Derivative => "derivative",
        }
    }
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(e) => match e {
                Error::PrecisionExhausted { .. } => 3,
                Error::InvalidPrecision { .. }
                | Error::UnknownConstant(_)
                | Error::UnknownKind(_)
                | Error::Domain(_)
                | Error::Parse(_) => 2,
                Error::NonFinite(_) | Error::NotConverged(_) => 1,
            },
            CliError::Io { .. } => 4,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command, returning what it prints on success.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Compute(args) => {
            let report = cmd_compute(args)?;
            Ok(format_report(&report, args.format))
        }
        Command::Zeta(args) => {
            let report = cmd_zeta(args)?;
            Ok(format_report(&report, args.format))
        }
        Command::Bench {
            table: BenchTable::Figure1(args),
        } => {
            cmd_bench_figure1(args)?;
            Ok(String::new())
        }
    }
}

fn format_report(report: &RunReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => report.to_text(),
        ReportFormat::Json => report.to_json(),
    }
}

fn context(precision: u32) -> Result<PrecisionContext, CliError> {
    if precision > MAX_PRECISION {
        return Err(CliError::Usage(format!(
            "precision {precision} exceeds the maximum of {MAX_PRECISION} digits"
        )));
    }
    Ok(make_context(precision, None)?)
}

fn check_terms(n: u64, max: u64) -> Result<(), CliError> {
    if n == 0 || n > max {
        return Err(CliError::Usage(format!(
            "--terms must lie in 1..={max}, got {n}"
        )));
    }
    Ok(())
}

fn elapsed_ms(start: Instant, omit: bool) -> Option<u64> {
    (!omit).then(|| start.elapsed().as_millis() as u64)
}

pub fn cmd_compute(args: &ComputeArgs) -> Result<RunReport, CliError> {
    let entry = lookup(args.constant, &args.method).ok_or_else(|| {
        CliError::Usage(format!(
            "method `{}` is not available for `{}`; choose one of: {}",
            args.method,
            args.constant,
            methods_for(args.constant).join(", ")
        ))
    })?;
    let ctx = context(args.precision)?;
    let (budget, terms, tol) = match (entry.truncation, args.terms, &args.tol) {
        (Truncation::Terms, _, Some(_)) => {
            return Err(CliError::Usage(format!(
                "`{}` takes --terms, not --tol",
                entry.method
            )))
        }
        (Truncation::Tolerance { .. }, Some(_), _) => {
            return Err(CliError::Usage(format!(
                "`{}` takes --tol, not --terms",
                entry.method
            )))
        }
        (Truncation::Terms, n, None) => {
            let n = n.unwrap_or(DEFAULT_TERMS);
            check_terms(n, entry.max_terms)?;
            (Budget::Terms(n), Some(n), None)
        }
        (Truncation::Tolerance { default }, None, tol) => {
            let text = tol.clone().unwrap_or_else(|| format!("{default:e}"));
            let exact = parse_decimal(&text)?;
            (
                Budget::Tolerance(HPReal::from_rational(&exact, &ctx)),
                None,
                Some(text),
            )
        }
    };
    let start = Instant::now();
    let computed = entry.evaluate(&budget, &ctx)?;
    let elapsed = elapsed_ms(start, args.omit_elapsed);
    let value = render(&computed.value);
    let reference = render(&args.constant.reference(&ctx)?);
    let abs_error = printed_difference(&value, &reference)?;
    Ok(RunReport {
        command: "compute",
        constant: Some(args.constant.name().to_string()),
        s: None,
        method: entry.method.to_string(),
        precision: args.precision,
        terms,
        tol,
        value,
        reference: Some(reference),
        abs_error: Some(abs_error),
        error_estimate: computed.error_estimate.as_ref().map(render),
        terms_or_evals: computed.count,
        elapsed_ms: elapsed,
    })
}

/// Closed-form value at `s`, when one is known for the method.
fn zeta_reference(
    s: &ZetaArgument,
    method: ZetaMethod,
    ctx: &PrecisionContext,
) -> Result<Option<HPReal>, CliError> {
    let s = s.s();
    if !s.is_real() {
        return Ok(None);
    }
    let zero = s.re().is_zero();
    let one = s.re() == &HPReal::one(ctx);
    Ok(match method {
        ZetaMethod::Dirichlet | ZetaMethod::Global if zero => Some(HPReal::from_ratio(1, 2, ctx)),
        ZetaMethod::Dirichlet | ZetaMethod::Global if one => Some(Constant::Ln2.reference(ctx)?),
        ZetaMethod::Derivative if zero => Some(Constant::LnPiOver2.reference(ctx)?.mul_pow2(-1)),
        _ => None,
    })
}

pub fn cmd_zeta(args: &ZetaArgs) -> Result<RunReport, CliError> {
    let ctx = context(args.precision)?;
    let s = ZetaArgument::parse(&args.s, &ctx)?;
    let max = match args.method {
        ZetaMethod::Dirichlet => u64::MAX - 1,
        _ => DEFAULT_MAX_TERMS,
    };
    check_terms(args.terms, max)?;
    let start = Instant::now();
    let value = match args.method {
        ZetaMethod::Dirichlet => alt_zeta_dirichlet(&s, args.terms, &ctx)?,
        ZetaMethod::Global => alt_zeta_global(&s, args.terms, &ctx)?,
        ZetaMethod::Derivative => alt_zeta_deriv_global(&s, args.terms, &ctx)?,
    };
    let elapsed = elapsed_ms(start, args.omit_elapsed);
    let reference = zeta_reference(&s, args.method, &ctx)?.map(|r| render(&r));
    let (value, abs_error) = render_complex(&value, reference.as_deref())?;
    Ok(RunReport {
        command: "zeta",
        constant: None,
        s: Some(args.s.clone()),
        method: args.method.name().to_string(),
        precision: args.precision,
        terms: Some(args.terms),
        tol: None,
        value,
        reference,
        abs_error,
        error_estimate: None,
        terms_or_evals: args.terms,
        elapsed_ms: elapsed,
    })
}

pub fn cmd_bench_figure1(args: &Figure1Args) -> Result<(), CliError> {
    if args.n_max == 0 || args.n_max > DEFAULT_MAX_TERMS {
        return Err(CliError::Usage(format!(
            "--n-max must lie in 1..={DEFAULT_MAX_TERMS}, got {}",
            args.n_max
        )));
    }
    let ctx = context(args.precision)?;
    let rows = figure::figure1_rows(args.n_max, &ctx)?;
    let text = match args.format {
        TableFormat::Csv => figure::to_csv(&rows),
        TableFormat::Json => figure::to_json(&rows),
    };
    std::fs::write(&args.out, text).map_err(|source| CliError::Io {
        path: args.out.clone(),
        source,
    })
}
