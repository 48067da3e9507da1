//! Command-line driver: argument parsing, batch execution and report output.

use std::fmt::Write as _;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use gfano::families::{descriptors, iseries, FamilyKey};
use gfano::mathieu::arithmetic::{arithmetic_table, integral_epsilon_levels};
use gfano::mathieu::frame::{m23_shapes, m24_extra_shapes, s24_extra_shapes, TableEntry};
use gfano::mathieu::{correspondence_report, frobenius_mukai_check};
use gfano::rational::format_rational;
use gfano::verify::{
    default_parameters, sweep_free_shift, verify_all, verify_delta, verify_identity, verify_kachru_vafa,
    IdentityReport,
};

pub const SCHEMA: &str = "gfano-report/1";
pub const DEFAULT_ORDER: usize = 60;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gfano", version, about = "Exact checks of the G-Fano eta-product identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArg,

    /// Family key (Y48_2, Y48_3, Y30, Y28, Y24, Y20, Y12_2, Y12_3, X6) or ALL.
    #[arg(long, global = true)]
    pub family: Option<String>,

    /// Truncation order.
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    pub order: usize,

    /// Shift override.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub s: Option<i64>,

    /// Hauptmodul constant override.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub c: Option<i64>,

    /// Inclusive shift range for `sweep`, e.g. `0..3`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sweep_range: Option<String>,

    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the output to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandArg {
    /// Verify identities and exit non-zero on any failure.
    Verify,
    /// Print I-series coefficients.
    Series,
    /// Print the Mathieu tables and the correspondence table.
    Tables,
    /// Verify a free-shift family over a range of shifts with c = s + 1.
    Sweep,
    /// List the family descriptors.
    Families,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    One(FamilyKey),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: CommandArg,
    pub families: Selection,
    pub order: usize,
    pub s: Option<i64>,
    pub c: Option<i64>,
    pub sweep_range: RangeInclusive<i64>,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single integer.
pub fn parse_range(text: &str) -> anyhow::Result<RangeInclusive<i64>> {
    let parse = |t: &str| t.trim().parse::<i64>().with_context(|| format!("bad range bound `{t}`"));
    let range = match text.split_once("..") {
        Some((lo, hi)) => parse(lo)?..=parse(hi.trim_start_matches('='))?,
        None => {
            let v = parse(text)?;
            v..=v
        }
    };
    if range.is_empty() {
        bail!("empty sweep range `{text}`");
    }
    Ok(range)
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> anyhow::Result<Self> {
        if cli.order < 1 {
            bail!("--order must be at least 1");
        }
        let families = match cli.family.as_deref() {
            None => Selection::All,
            Some(f) if f.eq_ignore_ascii_case("all") => Selection::All,
            Some(f) => Selection::One(f.parse()?),
        };
        let overrides = cli.s.is_some() || cli.c.is_some();
        match cli.command {
            CommandArg::Verify if overrides && families == Selection::All => {
                bail!("--s/--c need a single --family")
            }
            CommandArg::Series if families == Selection::All => bail!("series needs a single --family"),
            CommandArg::Sweep if families == Selection::All => bail!("sweep needs --family Y28 or Y30"),
            CommandArg::Series | CommandArg::Tables | CommandArg::Families if overrides => {
                bail!("--s/--c only apply to verify")
            }
            CommandArg::Sweep if overrides => bail!("sweep takes --sweep-range, not --s/--c"),
            _ => {}
        }
        if cli.sweep_range.is_some() && cli.command != CommandArg::Sweep {
            bail!("--sweep-range only applies to sweep");
        }
        let sweep_range = match cli.sweep_range.as_deref() {
            Some(text) => parse_range(text)?,
            None => 0..=3,
        };
        Ok(RunConfig {
            command: cli.command,
            families,
            order: cli.order,
            s: cli.s,
            c: cli.c,
            sweep_range,
            format: if cli.json { Format::Json } else { Format::Text },
            out: cli.out,
        })
    }
}

struct Outcome {
    json: Value,
    text: String,
    failures: Vec<IdentityReport>,
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(target), Value::Object(extra)) = (&mut v, body) {
        target.extend(extra);
    }
    v
}

fn report_line(r: &IdentityReport) -> String {
    let mut line = format!("{} {} {}", if r.passed() { "PASS" } else { "FAIL" }, r.family, r.identity.as_str());
    if let (Some(s), Some(c)) = (r.s, r.c) {
        let _ = write!(line, " s={s} c={c}");
    }
    if let Some(g) = r.hauptmodul {
        let _ = write!(line, " g={g}");
    }
    if let Some(p) = r.reduced_to {
        let _ = write!(line, " via={p}");
    }
    let _ = write!(line, " order={}", r.order);
    if let Some(m) = &r.first_mismatch {
        let _ = write!(line, " first mismatch at {}: {} != {}", m.index, m.left, m.right);
    }
    line
}

fn reports_outcome(command: &str, order: usize, reports: Vec<IdentityReport>) -> anyhow::Result<Outcome> {
    let failures: Vec<IdentityReport> = reports.iter().filter(|r| !r.passed()).cloned().collect();
    let text = reports.iter().map(|r| report_line(r) + "\n").collect();
    let json = envelope(
        command,
        json!({
            "order": order,
            "reports": serde_json::to_value(&reports)?,
            "status": if failures.is_empty() { "PASS" } else { "FAIL" },
        }),
    );
    Ok(Outcome { json, text, failures })
}

fn run_verify(config: &RunConfig) -> anyhow::Result<Outcome> {
    let order = config.order;
    let reports = match config.families {
        Selection::All => verify_all(order)?,
        Selection::One(key) => {
            let (s0, c0) = default_parameters(key);
            let mut reports = vec![verify_identity(key, config.s.unwrap_or(s0), config.c.unwrap_or(c0), order)?];
            if key == FamilyKey::X6 {
                reports.push(verify_kachru_vafa(order)?);
                reports.push(verify_delta(order)?);
            }
            reports
        }
    };
    reports_outcome("verify", order, reports)
}

fn run_sweep(config: &RunConfig, key: FamilyKey) -> anyhow::Result<Outcome> {
    let reports = sweep_free_shift(key, config.sweep_range.clone(), config.order)?;
    reports_outcome("sweep", config.order, reports)
}

fn run_series(config: &RunConfig, key: FamilyKey) -> anyhow::Result<Outcome> {
    let series = iseries(key, config.order);
    let coeffs: Vec<String> = series.coeffs().iter().map(format_rational).collect();
    let text = format!("{key}: {series}\n");
    let json = envelope(
        "series",
        json!({ "family": key.as_str(), "kind": "iseries", "order": config.order, "coeffs": coeffs }),
    );
    Ok(Outcome { json, text, failures: Vec::new() })
}

fn run_families() -> anyhow::Result<Outcome> {
    let rows: Vec<_> = descriptors().iter().map(|d| d.summary()).collect();
    let mut text = String::from("key    N  degree rho index s     c     g   eta exponent operator reduction\n");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:<6} {:<2} {:<6} {:<3} {:<5} {:<5} {:<5} {:<3} {:<3} {:<8} {:<8} {}",
            r.key.as_str(),
            r.n,
            r.degree,
            r.rho,
            r.index,
            r.shift,
            r.constant,
            r.hauptmodul,
            r.eta,
            r.exponent,
            r.operator.unwrap_or("-"),
            r.reduction.map_or("-", |k| k.as_str()),
        );
    }
    let json = envelope("families", json!({ "families": serde_json::to_value(&rows)? }));
    Ok(Outcome { json, text, failures: Vec::new() })
}

fn shape_lines(title: &str, entries: &[TableEntry], text: &mut String) {
    let _ = writeln!(text, "{title}");
    for e in entries {
        let _ = writeln!(text, "  {:<20} n={:<3} N={:<4} w={}", e.shape.to_string(), e.order, e.level, e.weight);
    }
}

fn run_tables() -> anyhow::Result<Outcome> {
    let m23 = m23_shapes();
    let m24 = m24_extra_shapes();
    let s24 = s24_extra_shapes();
    let arithmetic = arithmetic_table(30);
    let correspondence = correspondence_report();
    let fm = frobenius_mukai_check();

    let mut text = String::new();
    shape_lines("M23 Frame shapes", &m23, &mut text);
    shape_lines("M24 extra Frame shapes", &m24, &mut text);
    shape_lines("S24 extra Frame shapes", &s24, &mut text);
    let _ = writeln!(text, "Correspondence");
    let _ = writeln!(text, "  N   eps  iota(computed/printed) s     c     g    rho rational family");
    for r in &correspondence {
        let _ = writeln!(
            text,
            "  {:<3} {:<4} {:<8} {:<13} {:<5} {:<5} {:<4} {:<3} {:<8} {}",
            r.n,
            r.epsilon,
            r.iota,
            r.iota_printed,
            r.s,
            r.c,
            r.g,
            r.rho,
            r.rational_type,
            r.family.map_or("-", |k| k.as_str()),
        );
    }
    let levels: Vec<String> = integral_epsilon_levels(30).iter().map(u64::to_string).collect();
    let _ = writeln!(text, "Integral epsilon for N <= 30: {}", levels.join(" "));
    let _ = writeln!(text, "Frobenius-Mukai: {:?}", fm.status);

    let json = envelope(
        "tables",
        json!({
            "m23": serde_json::to_value(&m23)?,
            "m24_extra": serde_json::to_value(&m24)?,
            "s24_extra": serde_json::to_value(&s24)?,
            "arithmetic": serde_json::to_value(&arithmetic)?,
            "correspondence": serde_json::to_value(&correspondence)?,
            "frobenius_mukai": serde_json::to_value(&fm)?,
        }),
    );
    Ok(Outcome { json, text, failures: Vec::new() })
}

fn single(config: &RunConfig) -> anyhow::Result<FamilyKey> {
    match config.families {
        Selection::One(key) => Ok(key),
        Selection::All => bail!("a single --family is required"),
    }
}

fn execute(config: &RunConfig) -> anyhow::Result<Outcome> {
    match config.command {
        CommandArg::Verify => run_verify(config),
        CommandArg::Sweep => run_sweep(config, single(config)?),
        CommandArg::Series => run_series(config, single(config)?),
        CommandArg::Families => run_families(),
        CommandArg::Tables => run_tables(),
    }
}

fn render(config: &RunConfig, outcome: &Outcome) -> anyhow::Result<String> {
    Ok(match config.format {
        Format::Json => serde_json::to_string_pretty(&outcome.json)? + "\n",
        Format::Text => outcome.text.clone(),
    })
}

/// Runs a configuration, writing output to `stdout` (or `--out`) and
/// failing reports to `stderr`. Returns the process exit code.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let outcome = match execute(config) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            return EXIT_CONFIG;
        }
    };
    let written = render(config, &outcome).and_then(|text| {
        match &config.out {
            Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?,
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    });
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e:#}");
        return EXIT_CONFIG;
    }
    if outcome.failures.is_empty() {
        return EXIT_PASS;
    }
    for failure in &outcome.failures {
        let line = match config.format {
            Format::Json => serde_json::to_string(failure).unwrap_or_else(|_| report_line(failure)),
            Format::Text => report_line(failure),
        };
        let _ = writeln!(stderr, "{line}");
    }
    EXIT_FAIL
}

/// Parses arguments and runs; clap usage errors also map to exit code 2.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(config) => run(&config, stdout, stderr),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            EXIT_CONFIG
        }
    }
}
