//! The `stratavol` command-line interface.

mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::arith::{decimal_string, fraction_string, parse_rational, PiScalar, Rational};
use crate::characters::CharTableCache;
use crate::coverings::{
    asymptotic_ratio, cover_count_records, CountKind, CoverCountRecord, CoverProfile,
};
use crate::cumulants::{
    c_const, c_simple, elementary_cumulant, volume_with, CumulantKey, StratumSpec, VolumeOptions,
    VolumeResult,
};
use crate::error::{Error, Result};
use crate::npoint::{verify_one_point, EvaluatedPoint};
use crate::shifted::f_top_expansion;
use crate::verify::{Suite, SuiteReport};

pub use config::{Caps, Config};

/// Digits after the decimal point in `--approx` output.
const APPROX_DIGITS: usize = 30;
const APPROX_LABEL: &str = "approx (pi to 50 digits)";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Plain,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum KindArg {
    All,
    NoUnramified,
    Connected,
}

impl From<KindArg> for CountKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::All => CountKind::All,
            KindArg::NoUnramified => CountKind::NoUnramified,
            KindArg::Connected => CountKind::Connected,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "stratavol",
    version,
    about = "Exact volumes of strata of abelian differentials"
)]
struct Cli {
    /// Output format (default: json, or the config file's choice).
    #[arg(long, global = true, value_enum)]
    output: Option<OutputFormat>,
    /// Also print decimal approximations, using pi to 50 digits.
    #[arg(long, global = true)]
    approx: bool,
    /// Size of the worker thread pool.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Volume of the stratum with zero orders MU, e.g. `3,1`.
    Volume {
        mu: String,
        /// For all-simple zeros, also run the general pipeline and compare.
        #[arg(long)]
        cross_check: bool,
    },
    /// Elementary cumulant <<m_1,...,m_n>>, e.g. `4,2`.
    Cumulant { m: String },
    /// Leading constant c(m) of connected covering counts, entries >= 2.
    Cconst { m: String },
    /// Top-weight expansion of f_k in the power sums p_k.
    Fk { k: u32 },
    /// Covering counts for a ramification profile, d = 0..=dmax.
    Covers {
        profile: String,
        #[arg(long)]
        dmax: u32,
        #[arg(long, value_enum, default_value = "all")]
        kind: KindArg,
        /// Shorthand for `--kind connected`.
        #[arg(long)]
        connected: bool,
    },
    /// Partial-sum estimate of c(m) from connected counts up to dmax.
    Ratio {
        profile: String,
        #[arg(long)]
        dmax: u32,
    },
    /// Run a self-check suite, or `all`.
    Verify { suite: String },
    /// c(2,...,2) from the closed form for n = 1..=nmax.
    SimpleTable {
        #[arg(long)]
        nmax: u32,
    },
    /// Check the one-point theta identity at a rational point s.
    NpointCheck {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 30)]
        order: usize,
    },
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    run(std::env::args_os(), &mut stdout.lock())
}

/// Parses `args` (including the program name), runs the command and
/// writes its output to `out`. Diagnostics go to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

struct Ctx {
    format: OutputFormat,
    approx: bool,
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let config = match &cli.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    config.limits()?.install();
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Parse("--threads must be positive".into()));
        }
        // a pool may already exist when running inside a test harness
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let cache = CharTableCache::global();
    let cache_dir = config.cache_dir();
    if let Some(dir) = &cache_dir {
        cache.attach_dir(dir);
    }
    let ctx = Ctx {
        format: cli.output.or(config.output).unwrap_or(OutputFormat::Json),
        approx: cli.approx,
    };

    let text = dispatch(cli.command, &ctx)?;
    out.write_all(text.0.as_bytes())?;
    out.flush()?;

    if cache_dir.is_some() {
        if let Err(e) = cache.persist() {
            eprintln!("warning: could not write character cache: {e}");
        }
    }
    Ok(text.1)
}

fn parse_list(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("expected comma-separated integers, got {s:?}")))
        })
        .collect()
}

fn scalar_json(v: &PiScalar, approx: bool) -> serde_json::Value {
    let mut value = serde_json::to_value(v).expect("scalar serializes");
    if approx {
        value["approx"] = json!(v.approx_decimal(APPROX_DIGITS));
    }
    value
}

fn scalar_plain(label: &str, v: &PiScalar, approx: bool) -> String {
    let mut s = format!("{label} = {v}\n");
    if approx {
        s.push_str(&format!(
            "{label} ~ {} [{APPROX_LABEL}]\n",
            v.approx_decimal(APPROX_DIGITS)
        ));
    }
    s
}

fn scalar_csv_cells(v: &PiScalar, approx: bool) -> String {
    let mut s = format!("{};{};{}", v.coeff().numer(), v.coeff().denom(), v.pi_pow());
    if approx {
        s.push(';');
        s.push_str(&v.approx_decimal(APPROX_DIGITS));
    }
    s
}

fn scalar_csv_header(prefix: &str, approx: bool) -> String {
    let mut s = format!("{prefix}num;den;pi_pow");
    if approx {
        s.push_str(";approx");
    }
    s
}

fn json_line(v: serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string(&v).expect("json serializes"))
}

type Output = (String, i32);

fn dispatch(command: Command, ctx: &Ctx) -> Result<Output> {
    match command {
        Command::Volume { mu, cross_check } => {
            let spec = StratumSpec::new(parse_list(&mu)?)?;
            let v = volume_with(&spec, VolumeOptions { cross_check })?;
            Ok((render_volume(&v, ctx), 0))
        }
        Command::Cumulant { m } => {
            let key: CumulantKey = m.parse()?;
            let v = elementary_cumulant(&key)?;
            Ok((
                render_scalar("m", key.parts(), &key.to_string(), &v, ctx),
                0,
            ))
        }
        Command::Cconst { m } => {
            let profile = CoverProfile::new(parse_list(&m)?)?;
            let v = c_const(&profile)?;
            Ok((
                render_scalar("m", profile.entries(), &format!("c({profile})"), &v, ctx),
                0,
            ))
        }
        Command::Fk { k } => {
            if k == 0 {
                return Err(Error::Domain("k must be positive".into()));
            }
            Ok((render_fk(k, ctx), 0))
        }
        Command::Covers {
            profile,
            dmax,
            kind,
            connected,
        } => {
            let profile: CoverProfile = profile.parse()?;
            let kind = if connected {
                CountKind::Connected
            } else {
                kind.into()
            };
            let records = cover_count_records(&profile, dmax, kind)?;
            Ok((render_covers(&records, ctx), 0))
        }
        Command::Ratio { profile, dmax } => {
            let profile: CoverProfile = profile.parse()?;
            let r = asymptotic_ratio(&profile, dmax)?;
            Ok((render_ratio(&profile, dmax, &r, ctx), 0))
        }
        Command::Verify { suite } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let reports = suites
                .into_iter()
                .map(Suite::run)
                .collect::<Result<Vec<_>>>()?;
            let code = if reports.iter().all(SuiteReport::passed) {
                0
            } else {
                1
            };
            Ok((render_reports(&reports, ctx), code))
        }
        Command::SimpleTable { nmax } => {
            if nmax == 0 {
                return Err(Error::Domain("nmax must be positive".into()));
            }
            let rows = (1..=nmax)
                .map(|n| Ok((n, c_simple(n)?)))
                .collect::<Result<Vec<_>>>()?;
            Ok((render_simple_table(&rows, ctx), 0))
        }
        Command::NpointCheck { s, order } => {
            let s = parse_rational(&s)?;
            let point = EvaluatedPoint::new(s)?;
            let report = verify_one_point(&point, order)?;
            let holds = report.holds();
            let text = match ctx.format {
                OutputFormat::Json => json_line(json!({
                    "s": fraction_string(point.s()),
                    "order": order,
                    "holds": holds,
                    "first_mismatch_eighths": report.first_mismatch(),
                })),
                OutputFormat::Csv => format!(
                    "s;order;holds\n{};{order};{holds}\n",
                    fraction_string(point.s())
                ),
                OutputFormat::Plain => {
                    let status = if holds { "holds" } else { "FAILS" };
                    let mut t = format!(
                        "one-point identity at s = {} through q^{order}: {status}\n",
                        fraction_string(point.s())
                    );
                    if let Some(e) = report.first_mismatch() {
                        t.push_str(&format!("first mismatch at q^({e}/8)\n"));
                    }
                    t
                }
            };
            Ok((text, if holds { 0 } else { 1 }))
        }
    }
}

fn render_volume(v: &VolumeResult, ctx: &Ctx) -> String {
    match ctx.format {
        OutputFormat::Json => {
            let mut value = serde_json::to_value(v).expect("volume serializes");
            if ctx.approx {
                value["c"] = scalar_json(&v.c_const, true);
                value["volume"] = scalar_json(&v.volume, true);
            }
            json_line(value)
        }
        OutputFormat::Csv => {
            let mu: Vec<String> = v.mu.parts().iter().map(u32::to_string).collect();
            format!(
                "mu;genus;dim;{};{};route\n{};{};{};{};{};{}\n",
                scalar_csv_header("c_", ctx.approx),
                scalar_csv_header("volume_", ctx.approx),
                mu.join(","),
                v.genus,
                v.dim,
                scalar_csv_cells(&v.c_const, ctx.approx),
                scalar_csv_cells(&v.volume, ctx.approx),
                v.route
            )
        }
        OutputFormat::Plain => {
            let mut s = format!("stratum H{}\ngenus = {}\ndim = {}\n", v.mu, v.genus, v.dim);
            s.push_str(&scalar_plain("c", &v.c_const, ctx.approx));
            s.push_str(&scalar_plain("volume", &v.volume, ctx.approx));
            s.push_str(&format!("route = {}\n", v.route));
            s
        }
    }
}

fn render_scalar(key_name: &str, key: &[u32], label: &str, v: &PiScalar, ctx: &Ctx) -> String {
    match ctx.format {
        OutputFormat::Json => {
            json_line(json!({ key_name: key, "value": scalar_json(v, ctx.approx) }))
        }
        OutputFormat::Csv => {
            let parts: Vec<String> = key.iter().map(u32::to_string).collect();
            format!(
                "{key_name};{}\n{};{}\n",
                scalar_csv_header("", ctx.approx),
                parts.join(","),
                scalar_csv_cells(v, ctx.approx)
            )
        }
        OutputFormat::Plain => scalar_plain(label, v, ctx.approx),
    }
}

fn render_fk(k: u32, ctx: &Ctx) -> String {
    let e = f_top_expansion(k);
    match ctx.format {
        OutputFormat::Json => {
            let terms: Vec<_> = e
                .terms()
                .map(|(mu, c)| json!({ "mu": mu, "coeff": fraction_string(c) }))
                .collect();
            json_line(json!({ "k": k, "expansion": e.to_string(), "terms": terms }))
        }
        OutputFormat::Csv => {
            let mut s = String::from("mu;coeff\n");
            for (mu, c) in e.terms() {
                let parts: Vec<String> = mu.parts().iter().map(u32::to_string).collect();
                s.push_str(&format!("{};{}\n", parts.join(","), fraction_string(c)));
            }
            s
        }
        OutputFormat::Plain => format!("{e}\n"),
    }
}

fn render_covers(records: &[CoverCountRecord], ctx: &Ctx) -> String {
    match ctx.format {
        OutputFormat::Json => {
            let rows: Vec<_> = records
                .iter()
                .map(|r| {
                    json!({
                        "profile": r.profile.entries(),
                        "d": r.d,
                        "kind": r.kind,
                        "count": r.count_string(),
                    })
                })
                .collect();
            json_line(json!(rows))
        }
        OutputFormat::Csv => {
            let mut s = format!("{}\n", CoverCountRecord::CSV_HEADER);
            for r in records {
                s.push_str(&r.csv_row());
                s.push('\n');
            }
            s
        }
        OutputFormat::Plain => {
            let mut s = String::new();
            for r in records {
                s.push_str(&format!("d = {}: {}", r.d, r.count_string()));
                if ctx.approx {
                    s.push_str(&format!(" ~ {}", decimal_string(&r.count, APPROX_DIGITS)));
                }
                s.push('\n');
            }
            s
        }
    }
}

fn render_ratio(profile: &CoverProfile, dmax: u32, r: &Rational, ctx: &Ctx) -> String {
    let decimal = decimal_string(r, APPROX_DIGITS);
    match ctx.format {
        OutputFormat::Json => json_line(json!({
            "profile": profile.entries(),
            "dmax": dmax,
            "ratio": fraction_string(r),
            "decimal": decimal,
        })),
        OutputFormat::Csv => format!(
            "profile;dmax;ratio\n{profile};{dmax};{}\n",
            fraction_string(r)
        ),
        OutputFormat::Plain => format!("ratio({profile}, D = {dmax}) ~ {decimal}\n"),
    }
}

#[derive(Serialize)]
struct ReportJson<'a> {
    suite: &'a str,
    passed: bool,
    checks: usize,
    failures: &'a [String],
}

fn render_reports(reports: &[SuiteReport], ctx: &Ctx) -> String {
    match ctx.format {
        OutputFormat::Json => {
            let rows: Vec<ReportJson> = reports
                .iter()
                .map(|r| ReportJson {
                    suite: r.name,
                    passed: r.passed(),
                    checks: r.checks,
                    failures: &r.failures,
                })
                .collect();
            json_line(json!(rows))
        }
        OutputFormat::Csv => {
            let mut s = String::from("suite;passed;checks;failed\n");
            for r in reports {
                s.push_str(&format!(
                    "{};{};{};{}\n",
                    r.name,
                    r.passed(),
                    r.checks,
                    r.failures.len()
                ));
            }
            s
        }
        OutputFormat::Plain => reports.iter().map(|r| format!("{r}\n")).collect(),
    }
}

fn render_simple_table(rows: &[(u32, PiScalar)], ctx: &Ctx) -> String {
    match ctx.format {
        OutputFormat::Json => {
            let rows: Vec<_> = rows
                .iter()
                .map(|(n, c)| json!({ "n": n, "c": scalar_json(c, ctx.approx) }))
                .collect();
            json_line(json!(rows))
        }
        OutputFormat::Csv => {
            let mut s = format!("n;{}\n", scalar_csv_header("", ctx.approx));
            for (n, c) in rows {
                s.push_str(&format!("{n};{}\n", scalar_csv_cells(c, ctx.approx)));
            }
            s
        }
        OutputFormat::Plain => rows
            .iter()
            .map(|(n, c)| scalar_plain(&format!("c(2^{n})"), c, ctx.approx))
            .collect(),
    }
}
