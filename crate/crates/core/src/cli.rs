//! Command-line front end. The binary only forwards to [`run`].

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::algebra::gf::{Gf2, Gf2m};
use crate::construct::{construct, ChoiceSpec};
use crate::ec::{mul_n, neg, sub_chord, translated_op, Coeffs, Op, ProjPoint};
use crate::error::Error;
use crate::io::{
    hd_from_json, hd_to_json, parse_point, parse_string_array, point_to_json, point_to_text, reports_to_json,
};
use crate::verify::{run_suite, table_stats, Report, Suite, VerifyOptions};

/// Environment variable that redirects relative output paths.
pub const OUT_DIR_ENV: &str = "ITDER_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_DIGEST: i32 = 3;
pub const EXIT_FAILURE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "itder",
    version,
    about = "Construct and verify iterative derivations on z^2 + z = x^3"
)]
pub struct Cli {
    /// TOML file with default values for any flag.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a derivation table and write it as JSON.
    Construct(ConstructArgs),
    /// Run verification suites on a derivation file.
    Verify(VerifyArgs),
    /// Point arithmetic over GF(2^m).
    Point(PointArgs),
    /// Time construction and verification across orders; CSV output.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    /// Truncation order N.
    #[arg(short = 'n', long)]
    pub order: Option<usize>,
    /// JSON array of fraction strings in `s`, one per block.
    #[arg(long)]
    pub choices: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Derivation file written by `construct`.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Comma separated: iteration, rho, thm51, kernel, torsion, constants, all.
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Seed for randomized spot checks.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct PointArgs {
    #[command(subcommand)]
    pub op: PointOp,
    /// Coefficient field, e.g. `2^2` or `4`.
    #[arg(long, global = true)]
    pub gf: Option<String>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
}

#[derive(Subcommand, Debug)]
pub enum PointOp {
    /// P (+) Q with neutral (0,0).
    Add { p: String, q: String },
    /// P (-) Q with neutral (0,0).
    Sub { p: String, q: String },
    /// (-) P.
    Neg { p: String },
    /// [n] P.
    Mul { n: u64, p: String },
    /// Exit 0 if P lies on the curve, 2 otherwise.
    OnCurve { p: String },
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Comma separated orders.
    #[arg(long)]
    pub orders: Option<String>,
    /// Choice file; defaults to `["s"]`.
    #[arg(long)]
    pub choices: Option<PathBuf>,
    /// CSV file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Values a `--config` file may provide. Command-line flags win.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub order: Option<usize>,
    pub choices: Option<PathBuf>,
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    pub suite: Option<String>,
    pub format: Option<Format>,
    pub seed: Option<u64>,
    pub gf: Option<String>,
    pub orders: Option<String>,
}

/// A failed command: message plus exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::PointNotOnCurve | Error::BasePointNotOnCurve => EXIT_BAD_INPUT,
            Error::DigestMismatch => EXIT_DIGEST,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn bad_input(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_BAD_INPUT,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<i32, Failure>;

/// Parse arguments, run, print diagnostics to stderr and return the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli, stdout) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

fn execute(cli: Cli, stdout: &mut dyn Write) -> CmdResult {
    let cfg = match &cli.config {
        Some(p) => {
            let text = read(p)?;
            toml::from_str(&text).map_err(|e| bad_input(format!("config {}: {e}", p.display())))?
        }
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Construct(a) => cmd_construct(a, cfg, stdout),
        Command::Verify(a) => cmd_verify(a, cfg, stdout),
        Command::Point(a) => cmd_point(a, cfg, stdout),
        Command::Bench(a) => cmd_bench(a, cfg, stdout),
    }
}

fn read(p: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(p).map_err(|e| bad_input(format!("cannot read {}: {e}", p.display())))
}

/// Relative output paths go under `$ITDER_OUT_DIR` when it is set.
pub fn resolve_out(p: &Path) -> PathBuf {
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) if p.is_relative() => Path::new(&dir).join(p),
        _ => p.to_path_buf(),
    }
}

fn emit(out: Option<&Path>, content: &str, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let fail = |e: std::io::Error| Failure {
        code: EXIT_FAILURE,
        message: e.to_string(),
    };
    match out {
        Some(p) => {
            let p = resolve_out(p);
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(fail)?;
            }
            fs::write(&p, content).map_err(fail)
        }
        None => stdout.write_all(content.as_bytes()).map_err(fail),
    }
}

fn load_choices(path: Option<&Path>) -> std::result::Result<Option<ChoiceSpec<Gf2>>, Failure> {
    let Some(p) = path else { return Ok(None) };
    let items =
        parse_string_array(&read(p)?).map_err(|e| bad_input(format!("choice file {}: {e}", p.display())))?;
    Ok(Some(ChoiceSpec::parse(&items)?))
}

fn cmd_construct(a: ConstructArgs, cfg: ConfigFile, stdout: &mut dyn Write) -> CmdResult {
    let n = a
        .order
        .or(cfg.order)
        .ok_or_else(|| bad_input("--order is required"))?;
    if n == 0 {
        return Err(bad_input("--order must be at least 1"));
    }
    let choices = load_choices(a.choices.as_deref().or(cfg.choices.as_deref()))?.unwrap_or_default();
    let hd = construct(n, &choices)?;
    emit(a.out.as_deref().or(cfg.out.as_deref()), &hd_to_json(&hd), stdout)?;
    Ok(EXIT_OK)
}

fn cmd_verify(a: VerifyArgs, cfg: ConfigFile, stdout: &mut dyn Write) -> CmdResult {
    let input = a
        .input
        .or(cfg.input)
        .ok_or_else(|| bad_input("--in is required"))?;
    let hd = hd_from_json(&read(&input)?)?;
    let suites = Suite::parse_list(a.suite.as_deref().or(cfg.suite.as_deref()).unwrap_or("all"))?;
    let opts = VerifyOptions {
        seed: a.seed.or(cfg.seed).unwrap_or(0),
        ..VerifyOptions::default()
    };
    let reports = suites
        .iter()
        .map(|&s| run_suite(&hd, s, &opts))
        .collect::<crate::Result<Vec<Report>>>()?;
    let passed = reports.iter().all(Report::passed);
    let text = match a.format.or(cfg.format).unwrap_or(Format::Text) {
        Format::Json => reports_to_json(&reports),
        Format::Text => {
            let mut s: String = reports.iter().map(|r| r.to_string()).collect();
            s.push_str(if passed {
                "overall: PASS\n"
            } else {
                "overall: FAIL\n"
            });
            s
        }
    };
    emit(a.out.as_deref().or(cfg.out.as_deref()), &text, stdout)?;
    Ok(if passed { EXIT_OK } else { EXIT_SUITE_FAILED })
}

/// Accepts `2^m` or the field size `2^m` written out, for `1 <= m <= 8`.
pub fn parse_gf_degree(s: &str) -> crate::Result<u32> {
    let s = s.trim();
    let m = if let Some(e) = s.strip_prefix("2^") {
        e.parse::<u32>().ok()
    } else {
        s.parse::<u32>()
            .ok()
            .filter(|q| q.is_power_of_two() && *q >= 2)
            .map(u32::trailing_zeros)
    };
    m.filter(|m| (1..=8).contains(m))
        .ok_or_else(|| Error::Parse(format!("unsupported field `{s}`; expected 2^m with 1 <= m <= 8")))
}

fn point_over<const M: u32>(op: &PointOp, format: Format) -> crate::Result<(bool, String)> {
    let r = Coeffs::<Gf2m<M>>::new();
    let pt = |s: &str| -> crate::Result<ProjPoint<Gf2m<M>>> {
        let p = parse_point(s)?;
        if !p.is_on_curve(&r) {
            return Err(Error::PointNotOnCurve);
        }
        Ok(p)
    };
    let result = match op {
        PointOp::OnCurve { p } => {
            let p = parse_point::<Gf2m<M>>(p)?;
            let on = p.is_on_curve(&r);
            let msg = match format {
                Format::Json => format!("{{\"on_curve\":{on}}}\n"),
                Format::Text => format!("{}\n", if on { "on curve" } else { "not on curve" }),
            };
            return Ok((on, msg));
        }
        PointOp::Add { p, q } => translated_op(&r, &pt(p)?, &pt(q)?, Op::Add),
        PointOp::Sub { p, q } => {
            let (p, q) = (pt(p)?, pt(q)?);
            let complete = translated_op(&r, &p, &q, Op::Sub);
            if let (Some(a), Some(b)) = (p.as_affine(), q.as_affine()) {
                if let Ok(d) = sub_chord(&r, a, b) {
                    if ProjPoint::Affine(d) != complete {
                        return Err(Error::Internal(
                            "difference formula disagrees with the complete law".into(),
                        ));
                    }
                }
            }
            complete
        }
        PointOp::Neg { p } => {
            let p = pt(p)?;
            match p.as_affine().map(|a| neg(&r, a)) {
                Some(Ok(n)) => ProjPoint::Affine(n),
                _ => translated_op(&r, &ProjPoint::neutral(&r), &p, Op::Sub),
            }
        }
        PointOp::Mul { n, p } => mul_n(&r, &pt(p)?, *n),
    };
    let msg = match format {
        Format::Json => format!("{}\n", point_to_json(&result)),
        Format::Text => format!("{}\n", point_to_text(&result)),
    };
    Ok((true, msg))
}

/// Run a point operation over GF(2^m). The flag is `false` only for an
/// `on-curve` query on a point off the curve.
pub fn point_calc(m: u32, op: &PointOp, format: Format) -> crate::Result<(bool, String)> {
    match m {
        1 => point_over::<1>(op, format),
        2 => point_over::<2>(op, format),
        3 => point_over::<3>(op, format),
        4 => point_over::<4>(op, format),
        5 => point_over::<5>(op, format),
        6 => point_over::<6>(op, format),
        7 => point_over::<7>(op, format),
        8 => point_over::<8>(op, format),
        _ => Err(Error::Parse(format!("unsupported field degree {m}"))),
    }
}

fn cmd_point(a: PointArgs, cfg: ConfigFile, stdout: &mut dyn Write) -> CmdResult {
    let m = parse_gf_degree(a.gf.as_deref().or(cfg.gf.as_deref()).unwrap_or("2^2"))?;
    let format = a.format.or(cfg.format).unwrap_or(Format::Text);
    let (ok, msg) = point_calc(m, &a.op, format)?;
    emit(None, &msg, stdout)?;
    Ok(if ok { EXIT_OK } else { EXIT_BAD_INPUT })
}

pub const BENCH_HEADER: &str = "order,millis,max_t_deg,max_x_deg,coeffs";

/// One CSV row: construction plus the iteration and commutation suites.
pub fn bench_row(n: usize, choices: &ChoiceSpec<Gf2>) -> crate::Result<String> {
    let start = Instant::now();
    let hd = construct(n, choices)?;
    let opts = VerifyOptions {
        spot_checks: 0,
        ..VerifyOptions::default()
    };
    let ok = run_suite(&hd, Suite::Iteration, &opts)?.passed() && run_suite(&hd, Suite::Rho, &opts)?.passed();
    if !ok {
        return Err(Error::Internal(format!(
            "constructed table fails verification at order {n}"
        )));
    }
    let millis = start.elapsed().as_millis();
    let s = table_stats(&hd);
    Ok(format!(
        "{n},{millis},{},{},{}",
        s.max_t_deg, s.max_x_deg, s.coeffs
    ))
}

fn cmd_bench(a: BenchArgs, cfg: ConfigFile, stdout: &mut dyn Write) -> CmdResult {
    let orders: Vec<usize> = a
        .orders
        .or(cfg.orders)
        .unwrap_or_else(|| "4,8,16".into())
        .split(',')
        .map(|s| s.trim().parse::<usize>().ok().filter(|&n| n > 0))
        .collect::<Option<_>>()
        .ok_or_else(|| bad_input("--orders expects positive integers separated by commas"))?;
    let choices =
        load_choices(a.choices.as_deref().or(cfg.choices.as_deref()))?.unwrap_or_else(ChoiceSpec::sample);
    let mut csv = format!("{BENCH_HEADER}\n");
    for n in orders {
        csv.push_str(&bench_row(n, &choices)?);
        csv.push('\n');
    }
    emit(a.out.as_deref().or(cfg.out.as_deref()), &csv, stdout)?;
    Ok(EXIT_OK)
}
