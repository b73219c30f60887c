use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use wiltonlab::numerics::bernoulli;
use wiltonlab::report::json::{parse_complex, render_line, to_value};
use wiltonlab::report::{self, selftest, Cx, Format, Settings, UsageError};
use wiltonlab::Error;

const EXIT_SELFTEST: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Numerical verification of Wilton-type product formulas.
#[derive(Parser)]
#[command(name = "wiltonlab", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate both sides of the identity at one point.
    Verify(VerifyArgs),
    /// Residuals and verdicts over a (u, v, mode) grid.
    Sweep(SweepArgs),
    /// Run the acceptance checks, one JSON line each.
    Selftest(SelftestArgs),
    /// Coefficient table as CSV n,value.
    Coeffs(CoeffsArgs),
    /// Evaluate a reference L-function.
    Lvalue(LvalueArgs),
    /// Compare moment readings and printed term formulas.
    Adjudicate(AdjudicateArgs),
}

fn cx(s: &str) -> Result<Cx, String> {
    parse_complex(s).map(Cx).map_err(|e| e.to_string())
}

fn cx_list(s: &str) -> Result<Vec<Cx>, String> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(cx).collect()
}

fn u64_list(s: &str) -> Result<Vec<u64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse().map_err(|e| format!("{p:?}: {e}")))
        .collect()
}

fn word_list(s: &str) -> Vec<String> {
    s.split(',').map(str::trim).filter(|p| !p.is_empty()).map(String::from).collect()
}

fn list<T>(s: &Option<String>, f: impl Fn(&str) -> Result<T, String>) -> Result<Option<T>, Failure> {
    s.as_deref().map(f).transpose().map_err(Failure::Usage)
}

#[derive(Args)]
struct Common {
    /// JSON config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Registered instance name, or wilton-classic.
    #[arg(long)]
    instance: Option<String>,
    /// Terms N of each series (square-supported instances: N values of m).
    #[arg(long, visible_alias = "N")]
    terms: Option<usize>,
    /// direct, blockAveraged or auto.
    #[arg(long)]
    strategy: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    /// standard or compensated.
    #[arg(long)]
    precision: Option<String>,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<String>,
    /// json or csv.
    #[arg(long)]
    format: Option<String>,
}

impl Common {
    fn settings(&self) -> Settings {
        Settings {
            instance: self.instance.clone(),
            terms: self.terms,
            strategy: self.strategy.clone(),
            tol: self.tol,
            precision: self.precision.clone(),
            output: self.output.clone(),
            format: self.format.clone(),
            ..Default::default()
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    /// Complex literal such as 2, 0.5-1.5i.
    #[arg(long, allow_hyphen_values = true, value_parser = cx)]
    u: Option<Cx>,
    #[arg(long, allow_hyphen_values = true, value_parser = cx)]
    v: Option<Cx>,
    /// classical, regularized, mellinBarnes or tail.
    #[arg(long)]
    mode: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    common: Common,
    /// Comma-separated complex literals.
    #[arg(long, allow_hyphen_values = true)]
    u_grid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v_grid: Option<String>,
    /// Comma-separated moment modes.
    #[arg(long)]
    modes: Option<String>,
}

#[derive(Args)]
struct SelftestArgs {
    /// Also write the results as a report envelope.
    #[arg(long)]
    output: Option<String>,
    #[arg(long, hide = true)]
    inject_fault: Option<String>,
}

#[derive(Args)]
struct CoeffsArgs {
    /// Family: ones, theta, tau, eisenstein:K, squares:M, ideal-count:D,
    /// character-squares:D, character-squares-weighted:D or an instance name.
    #[arg(long)]
    kind: String,
    #[arg(long)]
    upto: usize,
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct LvalueArgs {
    /// zeta, hurwitz:A, dirichlet:D, dedekind:D, epstein:M, ramanujan,
    /// eisenstein:K or an instance name.
    #[arg(long)]
    series: String,
    #[arg(long, allow_hyphen_values = true, value_parser = cx)]
    s: Cx,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long)]
    output: Option<String>,
}

#[derive(Args)]
struct AdjudicateArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, allow_hyphen_values = true, value_parser = cx)]
    u: Option<Cx>,
    #[arg(long, allow_hyphen_values = true, value_parser = cx)]
    v: Option<Cx>,
    /// Comma-separated series indices (m for square-supported instances).
    #[arg(long)]
    grid: Option<String>,
}

enum Failure {
    Usage(String),
    Domain(String),
    Other(String),
}

impl From<UsageError> for Failure {
    fn from(e: UsageError) -> Self {
        Failure::Usage(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_domain_violation() {
            Failure::Domain(e.to_string())
        } else {
            Failure::Other(e.to_string())
        }
    }
}

fn settings(common: &Common, flags: Settings) -> Result<Settings, Failure> {
    let flags = common.settings().overlay(flags);
    match &common.config {
        None => Ok(flags),
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            Ok(Settings::from_json(&text)?.overlay(flags))
        }
    }
}

fn emit(output: Option<&str>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Other(format!("{path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify(a: &VerifyArgs) -> Result<u8, Failure> {
    let s = settings(&a.common, Settings { u: a.u, v: a.v, mode: a.mode.clone(), ..Default::default() })?;
    let cfg = s.run_config()?;
    let (rep, sums) = report::run_verify(&cfg)?;
    let text = match cfg.format {
        Format::Json => report::verify_envelope(&cfg, &rep, sums)?.render()?,
        Format::Csv => report::verify_csv(&cfg, &rep)?,
    };
    emit(cfg.output.as_deref(), &text)?;
    Ok(0)
}

fn sweep(a: &SweepArgs) -> Result<u8, Failure> {
    let flags = Settings {
        u_grid: list(&a.u_grid, cx_list)?,
        v_grid: list(&a.v_grid, cx_list)?,
        modes: a.modes.as_deref().map(word_list),
        ..Default::default()
    };
    let cfg = settings(&a.common, flags)?.sweep_config()?;
    let (rows, sums) = report::run_sweep(&cfg)?;
    let text = match cfg.format {
        Format::Json => report::sweep_envelope(&cfg, &rows, sums)?.render()?,
        Format::Csv => report::sweep_csv(&rows)?,
    };
    emit(cfg.output.as_deref(), &text)?;
    Ok(0)
}

fn run_selftest(a: &SelftestArgs) -> Result<u8, Failure> {
    match a.inject_fault.as_deref() {
        None => {}
        Some("bernoulli") => bernoulli::inject_fault(true),
        Some(f) => return Err(Failure::Usage(format!("unknown fault {f:?}"))),
    }
    let checks = selftest::run_suite();
    let mut lines = String::new();
    for c in &checks {
        lines.push_str(&render_line(&to_value(c)?));
        lines.push('\n');
    }
    print!("{lines}");
    if let Some(path) = &a.output {
        emit(Some(path), &report::selftest_envelope(&checks)?.render()?)?;
    }
    Ok(if selftest::all_passed(&checks) { 0 } else { EXIT_SELFTEST })
}

fn coeffs(a: &CoeffsArgs) -> Result<u8, Failure> {
    let seq = report::parse_family(&a.kind)?;
    emit(a.output.as_deref(), &report::coeffs_csv(&seq, a.upto)?)?;
    Ok(0)
}

fn lvalue(a: &LvalueArgs) -> Result<u8, Failure> {
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(Failure::Usage(format!("--tol must be positive (got {})", a.tol)));
    }
    emit(a.output.as_deref(), &report::run_lvalue(&a.series, a.s.0, a.tol)?.render()?)?;
    Ok(0)
}

fn adjudicate(a: &AdjudicateArgs) -> Result<u8, Failure> {
    let cfg = settings(&a.common, Settings { u: a.u, v: a.v, grid: list(&a.grid, u64_list)?, ..Default::default() })?
        .adjudicate_config()?;
    let (table, sums) = report::run_adjudicate(&cfg)?;
    let text = match cfg.format {
        Format::Json => report::adjudicate_envelope(&cfg, &table, sums)?.render()?,
        Format::Csv => report::adjudication_csv(&table)?,
    };
    emit(cfg.output.as_deref(), &text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let r = match &cli.cmd {
        Cmd::Verify(a) => verify(a),
        Cmd::Sweep(a) => sweep(a),
        Cmd::Selftest(a) => run_selftest(a),
        Cmd::Coeffs(a) => coeffs(a),
        Cmd::Lvalue(a) => lvalue(a),
        Cmd::Adjudicate(a) => adjudicate(a),
    };
    match r {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("{m}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
