//! Report envelopes, run configuration and the front ends behind each CLI
//! subcommand. Nothing here prints; the binary decides where bytes go.

pub mod json;
pub mod selftest;

use crate::arithmetic::{CoefficientSeq, DirichletCharacter, ImagQuadField, QuadraticForm};
use crate::hecke::lookup;
use crate::lfun_ref::{LKind, LSeriesRef};
use crate::wilton::{
    adjudicate_interpretations, evaluate_identity, evaluate_wilton_classic, AdjudicationTable, EvalOptions,
    IdentityInstance, IdentityReport, MomentMode, Precision, SumStrategy, Verdict, WILTON_CLASSIC,
};
use crate::{Error, Result, C64};
use json::{fmt_f64_csv, to_value};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: &str = "1.0";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const DEFAULT_TERMS_CLASSIC: usize = 4000;
pub const DEFAULT_TERMS: usize = 2000;
pub const DEFAULT_SWEEP_TERMS: usize = 32;
pub const MAX_SWEEP_POINTS: usize = 400;
pub const MAX_COEFFS: usize = 100_000;

/// Problems with the invocation itself (exit 64), as opposed to
/// mathematical domain violations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

fn usage<T>(msg: impl Into<String>) -> std::result::Result<T, UsageError> {
    Err(UsageError(msg.into()))
}

/// RFC 3339 time from SOURCE_DATE_EPOCH, or the Unix epoch when unset so
/// that reports stay byte-reproducible by default.
pub fn timestamp() -> String {
    let secs = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse::<i64>().ok()).unwrap_or(0);
    time::OffsetDateTime::from_unix_timestamp(secs)
        .ok()
        .and_then(|t| t.format(&time::format_description::well_known::Rfc3339).ok())
        .unwrap_or_else(|| "1970-01-01T00:00:00Z".into())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportEnvelope {
    pub schema_version: String,
    pub tool_version: String,
    pub command: String,
    pub timestamp: String,
    pub config: Value,
    pub results: Value,
    /// sha256 of each coefficient table the run read, keyed by table name.
    pub checksums: BTreeMap<String, String>,
}

impl ReportEnvelope {
    pub fn new(command: &str, config: Value, results: Value, checksums: BTreeMap<String, String>) -> Self {
        ReportEnvelope {
            schema_version: SCHEMA_VERSION.into(),
            tool_version: TOOL_VERSION.into(),
            command: command.into(),
            timestamp: timestamp(),
            config,
            results,
            checksums,
        }
    }

    pub fn render(&self) -> Result<String> {
        Ok(json::render_pretty(&to_value(self)?))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Domain(format!("not a report envelope: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl Format {
    pub fn parse(s: &str) -> std::result::Result<Self, UsageError> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => usage(format!("unknown format {s:?} (json or csv)")),
        }
    }
}

/// A complex number that reads "a+bi", bare numbers or {"re","im"}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cx(#[serde(with = "json::cplx")] pub C64);

/// Everything a config file or the flags can set. Field names match the
/// long flag names. Unset fields fall back to the next layer.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Settings {
    pub instance: Option<String>,
    pub u: Option<Cx>,
    pub v: Option<Cx>,
    pub mode: Option<String>,
    #[serde(alias = "N")]
    pub terms: Option<usize>,
    pub strategy: Option<String>,
    pub tol: Option<f64>,
    pub precision: Option<String>,
    pub output: Option<String>,
    pub format: Option<String>,
    pub u_grid: Option<Vec<Cx>>,
    pub v_grid: Option<Vec<Cx>>,
    pub modes: Option<Vec<String>>,
    pub grid: Option<Vec<u64>>,
}

impl Settings {
    pub fn from_json(text: &str) -> std::result::Result<Self, UsageError> {
        serde_json::from_str(text).map_err(|e| UsageError(format!("config file: {e}")))
    }

    /// Fields set in `flags` replace those here.
    pub fn overlay(self, flags: Settings) -> Settings {
        Settings {
            instance: flags.instance.or(self.instance),
            u: flags.u.or(self.u),
            v: flags.v.or(self.v),
            mode: flags.mode.or(self.mode),
            terms: flags.terms.or(self.terms),
            strategy: flags.strategy.or(self.strategy),
            tol: flags.tol.or(self.tol),
            precision: flags.precision.or(self.precision),
            output: flags.output.or(self.output),
            format: flags.format.or(self.format),
            u_grid: flags.u_grid.or(self.u_grid),
            v_grid: flags.v_grid.or(self.v_grid),
            modes: flags.modes.or(self.modes),
            grid: flags.grid.or(self.grid),
        }
    }

    fn instance(&self) -> std::result::Result<String, UsageError> {
        match &self.instance {
            Some(s) if !s.trim().is_empty() => Ok(s.trim().to_string()),
            _ => usage("--instance is required"),
        }
    }

    fn point(&self, which: &str, x: Option<Cx>) -> std::result::Result<C64, UsageError> {
        x.map(|c| c.0).ok_or_else(|| UsageError(format!("--{which} is required")))
    }

    fn common(&self) -> std::result::Result<(SumStrategy, f64, Precision, Format), UsageError> {
        let strategy = match &self.strategy {
            None => SumStrategy::Auto,
            Some(s) => SumStrategy::parse(s).ok_or_else(|| UsageError(format!("unknown strategy {s:?}")))?,
        };
        let tol = self.tol.unwrap_or(1e-6);
        if !(tol > 0.0 && tol.is_finite()) {
            return usage(format!("--tol must be positive (got {tol})"));
        }
        let precision = match self.precision.as_deref() {
            None | Some("standard") => Precision::Standard,
            Some("compensated") => Precision::Compensated,
            Some(p) => return usage(format!("unknown precision {p:?} (standard or compensated)")),
        };
        let format = self.format.as_deref().map(Format::parse).transpose()?.unwrap_or_default();
        Ok((strategy, tol, precision, format))
    }

    fn terms(&self, default: usize) -> std::result::Result<usize, UsageError> {
        match self.terms {
            Some(n) if n < 16 => usage(format!("--terms must be at least 16 (got {n})")),
            Some(n) => Ok(n),
            None => Ok(default),
        }
    }

    pub fn run_config(&self) -> std::result::Result<RunConfig, UsageError> {
        let instance = self.instance()?;
        let classic = is_classic(&instance);
        let mode = match &self.mode {
            None => MomentMode::Regularized,
            Some(m) => MomentMode::parse(m).ok_or_else(|| UsageError(format!("unknown mode {m:?}")))?,
        };
        let (strategy, tol, precision, format) = self.common()?;
        Ok(RunConfig {
            instance,
            u: self.point("u", self.u)?,
            v: self.point("v", self.v)?,
            mode: if classic { MomentMode::Classical } else { mode },
            terms: self.terms(if classic { DEFAULT_TERMS_CLASSIC } else { DEFAULT_TERMS })?,
            strategy,
            tol,
            precision,
            output: self.output.clone(),
            format,
        })
    }

    pub fn sweep_config(&self) -> std::result::Result<SweepConfig, UsageError> {
        let instance = self.instance()?;
        let modes = match &self.modes {
            None => vec![MomentMode::Classical, MomentMode::Regularized, MomentMode::MellinBarnes],
            Some(ms) => ms
                .iter()
                .map(|m| MomentMode::parse(m).ok_or_else(|| UsageError(format!("unknown mode {m:?}"))))
                .collect::<std::result::Result<_, _>>()?,
        };
        let (strategy, tol, precision, format) = self.common()?;
        let grid = |g: &Option<Vec<Cx>>| g.clone().unwrap_or_default();
        Ok(SweepConfig {
            instance,
            u_grid: grid(&self.u_grid),
            v_grid: grid(&self.v_grid),
            modes,
            terms: self.terms(DEFAULT_SWEEP_TERMS)?,
            strategy,
            tol,
            precision,
            output: self.output.clone(),
            format: if self.format.is_some() { format } else { Format::Csv },
        })
    }

    pub fn adjudicate_config(&self) -> std::result::Result<AdjudicateConfig, UsageError> {
        let (_, _, _, format) = self.common()?;
        let grid = self.grid.clone().unwrap_or_else(|| (1..=6).collect());
        if grid.contains(&0) {
            return usage("--grid indices start at 1");
        }
        Ok(AdjudicateConfig {
            instance: self.instance()?,
            u: self.point("u", self.u)?,
            v: self.point("v", self.v)?,
            grid,
            output: self.output.clone(),
            format,
        })
    }
}

fn is_classic(name: &str) -> bool {
    name.trim().eq_ignore_ascii_case(WILTON_CLASSIC) || name.trim().eq_ignore_ascii_case("wilton_classic")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct RunConfig {
    pub instance: String,
    #[serde(with = "json::cplx")]
    pub u: C64,
    #[serde(with = "json::cplx")]
    pub v: C64,
    pub mode: MomentMode,
    pub terms: usize,
    pub strategy: SumStrategy,
    pub tol: f64,
    pub precision: Precision,
    pub output: Option<String>,
    pub format: Format,
}

impl RunConfig {
    pub fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            mode: self.mode,
            n: self.terms,
            strategy: self.strategy,
            tol: self.tol,
            precision: self.precision,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct SweepConfig {
    pub instance: String,
    pub u_grid: Vec<Cx>,
    pub v_grid: Vec<Cx>,
    pub modes: Vec<MomentMode>,
    pub terms: usize,
    pub strategy: SumStrategy,
    pub tol: f64,
    pub precision: Precision,
    pub output: Option<String>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct AdjudicateConfig {
    pub instance: String,
    #[serde(with = "json::cplx")]
    pub u: C64,
    #[serde(with = "json::cplx")]
    pub v: C64,
    pub grid: Vec<u64>,
    pub output: Option<String>,
    pub format: Format,
}

// The config echo leaves out where the output went, so that the same run
// written to two places produces the same bytes.
fn echo<T: Serialize>(cfg: &T) -> Result<Value> {
    let mut v = to_value(cfg)?;
    if let Value::Object(m) = &mut v {
        m.remove("output");
    }
    Ok(v)
}

/// sha256 over "n,re,im\n" lines of the given (index, value) pairs.
pub fn table_checksum(rows: impl IntoIterator<Item = (u64, C64)>) -> String {
    let mut h = Sha256::new();
    for (n, a) in rows {
        h.update(format!("{n},{},{}\n", fmt_f64_csv(a.re), fmt_f64_csv(a.im)).as_bytes());
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Checksums of the coefficient tables an identity run reads: indices up
/// to 2N, or squares m² with m ≤ 2N for square-supported families.
pub fn sequence_checksums(seqs: &[&CoefficientSeq], upto: usize) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for seq in seqs {
        let (key, sum) = if seq.is_square_supported() {
            let rows = (1..=upto as u64).map(|m| (m * m, seq.value_at(m * m)));
            (format!("{}[m^2, m<={upto}]", seq.family()), table_checksum(rows))
        } else {
            let t = seq.table(upto)?;
            (format!("{}[n<={upto}]", seq.family()), table_checksum((1..=upto as u64).map(|n| (n, t[n as usize]))))
        };
        out.insert(key, sum);
    }
    Ok(out)
}

fn instance_checksums(inst: &IdentityInstance, terms: usize) -> Result<BTreeMap<String, String>> {
    let sig = &inst.signature;
    sequence_checksums(&[&sig.alpha_seq, &sig.beta_seq], 2 * terms)
}

fn classic_checksums(terms: usize) -> Result<BTreeMap<String, String>> {
    sequence_checksums(&[&CoefficientSeq::ones()], 2 * terms)
}

fn evaluate(inst: Option<&IdentityInstance>, u: C64, v: C64, opts: &EvalOptions) -> Result<IdentityReport> {
    match inst {
        Some(inst) => evaluate_identity(inst, u, v, opts),
        None => evaluate_wilton_classic(u, v, opts.n),
    }
}

fn resolve(name: &str) -> Result<Option<IdentityInstance>> {
    if is_classic(name) {
        Ok(None)
    } else {
        IdentityInstance::lookup(name).map(Some)
    }
}

/// verify: one identity report and the checksums of the tables it read.
/// Domain violations come back as errors.
pub fn run_verify(cfg: &RunConfig) -> Result<(IdentityReport, BTreeMap<String, String>)> {
    let inst = resolve(&cfg.instance)?;
    let report = evaluate(inst.as_ref(), cfg.u, cfg.v, &cfg.eval_options())?;
    let checksums = match &inst {
        Some(i) => instance_checksums(i, cfg.terms)?,
        None => classic_checksums(cfg.terms)?,
    };
    Ok((report, checksums))
}

pub fn verify_envelope(
    cfg: &RunConfig,
    report: &IdentityReport,
    checksums: BTreeMap<String, String>,
) -> Result<ReportEnvelope> {
    Ok(ReportEnvelope::new("verify", echo(cfg)?, to_value(report)?, checksums))
}

/// The report as a single sweep-format CSV row.
pub fn verify_csv(cfg: &RunConfig, report: &IdentityReport) -> Result<String> {
    sweep_csv(&[sweep_row(&cfg.instance, cfg.u, cfg.v, &cfg.eval_options(), Ok(report.clone()))?])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RowStatus {
    Ok,
    /// The report was produced but some terms failed numerically.
    NumericError,
    /// The point is outside the domain of the identity or of the mode.
    Excluded,
}

impl RowStatus {
    pub fn name(self) -> &'static str {
        match self {
            RowStatus::Ok => "ok",
            RowStatus::NumericError => "numericError",
            RowStatus::Excluded => "excluded",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub instance: String,
    #[serde(with = "json::cplx")]
    pub u: C64,
    #[serde(with = "json::cplx")]
    pub v: C64,
    pub mode: MomentMode,
    #[serde(rename = "N")]
    pub n: usize,
    pub strategy: SumStrategy,
    pub status: RowStatus,
    #[serde(with = "json::cplx::opt")]
    pub lhs: Option<C64>,
    #[serde(with = "json::cplx::opt")]
    pub rhs: Option<C64>,
    pub residual: Option<f64>,
    pub residual_at_2n: Option<f64>,
    pub oscillation: Option<f64>,
    pub verdict: Option<Verdict>,
    pub in_stated_domain: Option<bool>,
    pub message: String,
}

pub const SWEEP_COLUMNS: [&str; 19] = [
    "instance",
    "u_re",
    "u_im",
    "v_re",
    "v_im",
    "mode",
    "N",
    "strategy",
    "status",
    "lhs_re",
    "lhs_im",
    "rhs_re",
    "rhs_im",
    "residual",
    "residual_2n",
    "oscillation",
    "verdict",
    "in_stated_domain",
    "message",
];

/// sweep: rows in (u, v, mode) order. Per-point domain violations become
/// `excluded` rows; only an unknown instance or an oversized grid fails
/// the whole sweep.
pub fn run_sweep(cfg: &SweepConfig) -> Result<(Vec<SweepRow>, BTreeMap<String, String>)> {
    let points = cfg.u_grid.len() * cfg.v_grid.len();
    if points > MAX_SWEEP_POINTS {
        return Err(Error::Precondition(format!("sweep grid has {points} points (limit {MAX_SWEEP_POINTS})")));
    }
    let inst = resolve(&cfg.instance)?;
    let modes = if inst.is_none() { vec![MomentMode::Classical] } else { cfg.modes.clone() };
    let mut rows = Vec::with_capacity(points * modes.len());
    for u in &cfg.u_grid {
        for v in &cfg.v_grid {
            for &mode in &modes {
                let opts =
                    EvalOptions { mode, n: cfg.terms, strategy: cfg.strategy, tol: cfg.tol, precision: cfg.precision };
                let r = evaluate(inst.as_ref(), u.0, v.0, &opts);
                rows.push(sweep_row(&cfg.instance, u.0, v.0, &opts, r)?);
            }
        }
    }
    let checksums = if points == 0 {
        BTreeMap::new()
    } else {
        match &inst {
            Some(i) => instance_checksums(i, cfg.terms)?,
            None => classic_checksums(cfg.terms)?,
        }
    };
    Ok((rows, checksums))
}

fn sweep_row(instance: &str, u: C64, v: C64, opts: &EvalOptions, r: Result<IdentityReport>) -> Result<SweepRow> {
    let mut row = SweepRow {
        instance: instance.to_string(),
        u,
        v,
        mode: opts.mode,
        n: opts.n,
        strategy: opts.strategy,
        status: RowStatus::Ok,
        lhs: None,
        rhs: None,
        residual: None,
        residual_at_2n: None,
        oscillation: None,
        verdict: None,
        in_stated_domain: None,
        message: String::new(),
    };
    match r {
        Ok(rep) => {
            row.status = if rep.errors.is_empty() { RowStatus::Ok } else { RowStatus::NumericError };
            row.strategy = rep.strategy;
            row.lhs = Some(rep.lhs);
            row.rhs = Some(rep.rhs);
            row.residual = Some(rep.residual);
            row.residual_at_2n = Some(rep.tail_diagnostics.residual_at_2n);
            row.oscillation = Some(rep.tail_diagnostics.partial_sum_oscillation);
            row.verdict = Some(rep.convergence_verdict);
            row.in_stated_domain = Some(rep.in_stated_domain);
            row.message = rep.errors.join("; ");
        }
        Err(e) if e.is_domain_violation() && !matches!(e, Error::Unknown(_)) => {
            row.status = RowStatus::Excluded;
            row.message = e.to_string();
        }
        Err(e) => return Err(e),
    }
    Ok(row)
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let io = |e: csv::Error| Error::Domain(format!("csv: {e}"));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Domain(format!("csv: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Domain(format!("csv: {e}")))
}

fn opt_f(x: Option<f64>) -> String {
    x.map(fmt_f64_csv).unwrap_or_default()
}

fn opt_c(z: Option<C64>) -> [String; 2] {
    match z {
        Some(z) => [fmt_f64_csv(z.re), fmt_f64_csv(z.im)],
        None => [String::new(), String::new()],
    }
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String> {
    let body = rows
        .iter()
        .map(|r| {
            let [lr, li] = opt_c(r.lhs);
            let [rr, ri] = opt_c(r.rhs);
            vec![
                r.instance.clone(),
                fmt_f64_csv(r.u.re),
                fmt_f64_csv(r.u.im),
                fmt_f64_csv(r.v.re),
                fmt_f64_csv(r.v.im),
                r.mode.name().to_string(),
                r.n.to_string(),
                r.strategy.name().to_string(),
                r.status.name().to_string(),
                lr,
                li,
                rr,
                ri,
                opt_f(r.residual),
                opt_f(r.residual_at_2n),
                opt_f(r.oscillation),
                r.verdict.map(|v| v.name().to_string()).unwrap_or_default(),
                r.in_stated_domain.map(|b| b.to_string()).unwrap_or_default(),
                r.message.clone(),
            ]
        })
        .collect();
    csv_text(&SWEEP_COLUMNS, body)
}

pub fn sweep_envelope(
    cfg: &SweepConfig,
    rows: &[SweepRow],
    checksums: BTreeMap<String, String>,
) -> Result<ReportEnvelope> {
    Ok(ReportEnvelope::new("sweep", echo(cfg)?, serde_json::json!({ "rows": to_value(&rows)? }), checksums))
}

pub fn run_adjudicate(cfg: &AdjudicateConfig) -> Result<(AdjudicationTable, BTreeMap<String, String>)> {
    let inst = IdentityInstance::lookup(&cfg.instance)?;
    let table = adjudicate_interpretations(&inst, &cfg.grid, cfg.u, cfg.v)?;
    let upto = cfg.grid.iter().copied().max().unwrap_or(1) as usize;
    let sig = &inst.signature;
    Ok((table, sequence_checksums(&[&sig.alpha_seq, &sig.beta_seq], upto)?))
}

pub fn adjudicate_envelope(
    cfg: &AdjudicateConfig,
    table: &AdjudicationTable,
    checksums: BTreeMap<String, String>,
) -> Result<ReportEnvelope> {
    Ok(ReportEnvelope::new("adjudicate", echo(cfg)?, to_value(table)?, checksums))
}

pub const ADJUDICATION_COLUMNS: [&str; 18] = [
    "instance",
    "index",
    "n",
    "x",
    "classical_re",
    "classical_im",
    "regularized_re",
    "regularized_im",
    "mellin_barnes_re",
    "mellin_barnes_im",
    "tail_re",
    "tail_im",
    "consistent",
    "generic_term_re",
    "printed_term_re",
    "d_reading_term_re",
    "printed_rel_diff",
    "d_reading_rel_diff",
];

/// Moment columns and the real parts of the term readings, one row per
/// grid index.
pub fn adjudication_csv(t: &AdjudicationTable) -> Result<String> {
    let re = |z: Option<C64>| z.map(|z| fmt_f64_csv(z.re)).unwrap_or_default();
    let body = t
        .rows
        .iter()
        .map(|r| {
            let mut row = vec![t.instance.clone(), r.index.to_string(), r.n.to_string(), fmt_f64_csv(r.x)];
            for z in [r.classical, r.regularized, r.mellin_barnes, r.tail] {
                row.extend(opt_c(z));
            }
            row.push(r.consistent.to_string());
            row.extend([re(r.generic_term), re(r.printed_term), re(r.d_reading_term)]);
            row.extend([opt_f(r.printed_rel_diff), opt_f(r.d_reading_rel_diff)]);
            row
        })
        .collect();
    csv_text(&ADJUDICATION_COLUMNS, body)
}

fn split_param(kind: &str) -> (String, Option<String>) {
    let k = kind.trim().to_ascii_lowercase().replace('_', "-");
    match k.split_once(':') {
        Some((a, b)) => (a.to_string(), Some(b.to_string())),
        None => (k, None),
    }
}

fn int_param<T: std::str::FromStr>(kind: &str, p: Option<String>) -> Result<T> {
    p.as_deref()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Unknown(format!("{kind:?} needs an integer parameter, e.g. {kind}:4")))
}

/// Coefficient families by name: ones, theta, tau, eisenstein:K,
/// squares:M, ideal-count:D, character-squares:D,
/// character-squares-weighted:D, or a registered instance (its α side).
pub fn parse_family(kind: &str) -> Result<CoefficientSeq> {
    let (name, p) = split_param(kind);
    let seq = match name.as_str() {
        "ones" => CoefficientSeq::ones(),
        "theta" | "theta-squares" => CoefficientSeq::theta_squares(C64::new(0.5, 0.0)),
        "tau" | "ramanujan-tau" => CoefficientSeq::ramanujan_tau(),
        "eisenstein" => {
            let k: u32 = int_param(&name, p)?;
            if k < 4 || k % 2 == 1 || k > 60 {
                return Err(Error::OutOfRange(format!("eisenstein weight {k} (even, 4..=60)")));
            }
            CoefficientSeq::eisenstein(k)
        }
        "squares" | "rep-count" => {
            let m: usize = int_param(&name, p)?;
            if m == 0 || m > 8 {
                return Err(Error::OutOfRange(format!("sum of {m} squares (1..=8)")));
            }
            CoefficientSeq::rep_count(QuadraticForm::sum_of_squares(m))
        }
        "ideal-count" => CoefficientSeq::ideal_count(ImagQuadField::new(int_param(&name, p)?)?),
        "character-squares" | "character-squares-weighted" => {
            let d: i64 = int_param(&name, p)?;
            let chi = DirichletCharacter::from_kronecker(d);
            if !chi.primitive {
                return Err(Error::Domain(format!("kronecker({d}) is not primitive")));
            }
            if name == "character-squares" {
                CoefficientSeq::character_squares(chi)
            } else {
                CoefficientSeq::character_squares_weighted(chi)
            }
        }
        _ => lookup(kind)?.signature.alpha_seq.clone(),
    };
    Ok(seq)
}

fn fmt_complex_cell(z: C64) -> String {
    if z.im == 0.0 {
        fmt_f64_csv(z.re)
    } else {
        let sign = if z.im < 0.0 { '-' } else { '+' };
        format!("{}{sign}{}i", fmt_f64_csv(z.re), fmt_f64_csv(z.im.abs()))
    }
}

/// CSV "n,value" for n = 1..=upto. Integer and rational families are
/// printed exactly, the rest with 17 significant digits.
pub fn coeffs_csv(seq: &CoefficientSeq, upto: usize) -> Result<String> {
    if upto > MAX_COEFFS {
        return Err(Error::OutOfRange(format!("--upto {upto} (limit {MAX_COEFFS})")));
    }
    let table = if seq.is_square_supported() { None } else { Some(seq.table(upto)?) };
    let mut rows = Vec::with_capacity(upto);
    for n in 1..=upto as u64 {
        let value = match seq.exact_at(n) {
            Some(q) if q.is_integer() => q.numer().to_string(),
            Some(q) => format!("{}/{}", q.numer(), q.denom()),
            None => fmt_complex_cell(table.as_ref().map_or_else(|| seq.value_at(n), |t| t[n as usize])),
        };
        rows.push(vec![n.to_string(), value]);
    }
    csv_text(&["n", "value"], rows)
}

/// L-function names: zeta, hurwitz:A, dirichlet:D, dedekind:D, epstein:M
/// (sum of M squares), ramanujan, eisenstein:K, or a registered instance
/// (φ in theorem variables).
pub fn parse_series(kind: &str) -> Result<LSeriesRef> {
    let (name, p) = split_param(kind);
    let kind_of = match name.as_str() {
        "zeta" | "riemann" => LKind::RiemannZeta,
        "hurwitz" => {
            let a: f64 = p
                .as_deref()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Unknown("hurwitz needs a shift, e.g. hurwitz:0.25".into()))?;
            if !(a > 0.0 && a <= 1.0) {
                return Err(Error::OutOfRange(format!("hurwitz shift {a} (need 0 < a <= 1)")));
            }
            LKind::Hurwitz { a }
        }
        "dirichlet" => LKind::DirichletL { chi: DirichletCharacter::from_kronecker(int_param(&name, p)?) },
        "dedekind" => LKind::Dedekind { field: ImagQuadField::new(int_param(&name, p)?)? },
        "epstein" => {
            let m: usize = int_param(&name, p)?;
            if m == 0 || m > 8 {
                return Err(Error::OutOfRange(format!("sum of {m} squares (1..=8)")));
            }
            LKind::Epstein { form: QuadraticForm::sum_of_squares(m) }
        }
        "ramanujan" | "tau" => LKind::RamanujanL,
        "eisenstein" => LKind::EisensteinL { k: int_param(&name, p)? },
        _ => return Ok(lookup(kind)?.signature.phi_ref.clone()),
    };
    Ok(LSeriesRef::plain(kind_of))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LValueReport {
    pub series: String,
    #[serde(with = "json::cplx")]
    pub s: C64,
    /// The argument actually handed to the underlying function.
    #[serde(with = "json::cplx")]
    pub argument: C64,
    #[serde(with = "json::cplx")]
    pub value: C64,
    #[serde(with = "json::real")]
    pub error_estimate: f64,
    pub tol: f64,
    pub within_tol: bool,
    pub domain_note: String,
}

pub fn run_lvalue(series: &str, s: C64, tol: f64) -> Result<ReportEnvelope> {
    let r = parse_series(series)?;
    let v = r.evaluate(s)?;
    let report = LValueReport {
        series: series.to_string(),
        s,
        argument: s * r.scale + r.shift,
        value: v.value,
        error_estimate: v.error_estimate,
        tol,
        within_tol: v.error_estimate <= tol * (1.0 + v.value.norm()),
        domain_note: r.domain_note.clone(),
    };
    let config = serde_json::json!({ "series": series, "s": json::complex_value(s), "tol": tol });
    Ok(ReportEnvelope::new("lvalue", config, to_value(&report)?, BTreeMap::new()))
}

/// The self-test suite as an envelope (for --output), with the τ table it
/// checks.
pub fn selftest_envelope(checks: &[selftest::Check]) -> Result<ReportEnvelope> {
    let tau = CoefficientSeq::ramanujan_tau();
    let checksums = sequence_checksums(&[&tau], 100)?;
    let results = serde_json::json!({ "passed": selftest::all_passed(checks), "checks": to_value(&checks)? });
    Ok(ReportEnvelope::new("selftest", serde_json::json!({}), results, checksums))
}
