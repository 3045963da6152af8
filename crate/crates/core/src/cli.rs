//! `lel` command-line front end.
//!
//! Exit codes: 0 success, 2 invalid arguments, 3 criterion inapplicable,
//! 4 numerical failure, 5 self-check failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::asymptotics::{report_large_p_with, report_near_one_with};
use crate::config::{Format, RunConfig};
use crate::cross_sections::CrossSection;
use crate::error::Error;
use crate::lane_emden::{rescale_to_length, solve_unit_with, Exponent};
use crate::selfcheck;
use crate::settings::Settings;
use crate::spectral::{dirichlet_eigs_with, resolved_solution, Potential};
use crate::stability::{cylinder_lambda, phase_diagram_with, StabilityAnalyzer, ThresholdResult, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    InvalidArguments,
    Inapplicable,
    Numerical,
    SelfCheckFailed,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::InvalidArguments => 2,
            ExitStatus::Inapplicable => 3,
            ExitStatus::Numerical => 4,
            ExitStatus::SelfCheckFailed => 5,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "lel", version, about = "Lane-Emden profiles, spectra and stability verdicts in cylinders")]
struct Cli {
    /// Table format (solve, spectrum, phase).
    #[arg(long, global = true, value_enum)]
    format: Option<FormatArg>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[arg(long, global = true)]
    ivp_abs: Option<f64>,
    #[arg(long, global = true)]
    ivp_rel: Option<f64>,
    #[arg(long, global = true)]
    eig_tol: Option<f64>,
    #[arg(long, global = true)]
    marginal_band: Option<f64>,
    #[arg(long, global = true)]
    solution_nodes: Option<usize>,
    #[arg(long, global = true)]
    fd_nodes: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum RegimeArg {
    LargeP,
    NearOne,
}

impl FromStr for RegimeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        <RegimeArg as ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample u_p on [0, L]: CSV t,u,du.
    #[command(allow_negative_numbers = true)]
    Solve(SolveArgs),
    /// First K Dirichlet eigenvalues of the linearized operator: CSV k,alpha.
    #[command(allow_negative_numbers = true)]
    Spectrum(SpectrumArgs),
    /// Stability verdict for one lambda or one cylinder (JSON).
    #[command(allow_negative_numbers = true)]
    Stability(StabilityArgs),
    /// Stability threshold in lambda (JSON).
    #[command(allow_negative_numbers = true)]
    Threshold(PArg),
    /// Verdict grid: CSV p,lambda,verdict,end_slope.
    #[command(allow_negative_numbers = true)]
    Phase(PhaseArgs),
    /// Convergence report for p -> infinity or p -> 1 (JSON).
    #[command(allow_negative_numbers = true)]
    Asymptotics(AsymptoticsArgs),
    /// Run the invariant suite.
    Selfcheck,
}

#[derive(Debug, Args)]
struct PArg {
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long = "L", visible_alias = "l")]
    length: Option<f64>,
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Debug, Args)]
struct StabilityArgs {
    #[arg(long)]
    p: Option<f64>,
    #[arg(long, conflicts_with_all = ["length", "section"])]
    lambda: Option<f64>,
    #[arg(long = "L", visible_alias = "l")]
    length: Option<f64>,
    /// interval:A | rectangle:A,B | disk:R | custom:LAMBDA1
    #[arg(long)]
    section: Option<String>,
}

#[derive(Debug, Args)]
struct PhaseArgs {
    #[arg(long)]
    p_min: Option<f64>,
    #[arg(long)]
    p_max: Option<f64>,
    #[arg(long)]
    p_steps: Option<usize>,
    #[arg(long)]
    lambda_min: Option<f64>,
    #[arg(long)]
    lambda_max: Option<f64>,
    #[arg(long)]
    lambda_steps: Option<usize>,
}

#[derive(Debug, Args)]
struct AsymptoticsArgs {
    #[arg(long, value_enum)]
    regime: Option<RegimeArg>,
    /// Comma-separated exponents.
    #[arg(long, value_delimiter = ',')]
    p_list: Option<Vec<f64>>,
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Usage(s)
    }
}

type Outcome = Result<(String, ExitStatus), Failure>;

/// Flag value, falling back to the config file.
fn pick<T: FromStr>(flag: Option<T>, cfg: &RunConfig, key: &str) -> Result<Option<T>, String> {
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.flag(key),
    }
}

fn require<T: FromStr>(flag: Option<T>, cfg: &RunConfig, key: &str) -> Result<T, String> {
    pick(flag, cfg, key)?.ok_or_else(|| format!("missing required value --{}", key.replace('_', "-")))
}

/// Shortest representation that parses back to the same `f64`; integral
/// values lose their `.0`.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let s = serde_json::to_string(&x).unwrap_or_else(|_| x.to_string());
    match s.strip_suffix(".0") {
        Some(int) => int.to_string(),
        None => s,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn exponent(p: f64) -> Result<Exponent, Failure> {
    Exponent::new(p).map_err(Failure::Lib)
}

fn cmd_solve(args: SolveArgs, cfg: &RunConfig) -> Outcome {
    let p = exponent(require(args.p, cfg, "p")?)?;
    let n = pick(args.n, cfg, "n")?.unwrap_or(cfg.settings.solution_nodes);
    let length = pick(args.length, cfg, "l")?.unwrap_or(1.0);
    let sol = solve_unit_with(p, n, &cfg.settings)?;
    let scaled = rescale_to_length(&sol, length)?;
    let (t, u, du) = (scaled.grid(), scaled.values(), scaled.derivs());
    if u.iter().chain(&du).any(|x| !x.is_finite()) {
        return Err(Failure::Usage(format!(
            "u_p(0) = exp({}) is not representable as f64 for p = {p}",
            sol.log_sup_norm()
        )));
    }
    #[derive(Serialize)]
    struct Row {
        t: f64,
        u: f64,
        du: f64,
    }
    let out = match cfg.format {
        Format::Csv => {
            let mut s = String::from("t,u,du\n");
            for i in 0..t.len() {
                s.push_str(&format!("{},{},{}\n", fmt_num(t[i]), fmt_num(u[i]), fmt_num(du[i])));
            }
            s
        }
        Format::Json => to_json(
            &(0..t.len())
                .map(|i| Row {
                    t: t[i],
                    u: u[i],
                    du: du[i],
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok((out, ExitStatus::Success))
}

fn cmd_spectrum(args: SpectrumArgs, cfg: &RunConfig) -> Outcome {
    let p = exponent(require(args.p, cfg, "p")?)?;
    let k = pick(args.k, cfg, "k")?.unwrap_or(5);
    let (sol, fd_nodes) = resolved_solution(p, &cfg.settings)?;
    let eigs = dirichlet_eigs_with(&Potential::lane_emden(sol), k, fd_nodes, &cfg.settings)?;
    #[derive(Serialize)]
    struct Row {
        k: usize,
        alpha: f64,
    }
    let out = match cfg.format {
        Format::Csv => {
            let mut s = String::from("k,alpha\n");
            for e in &eigs {
                s.push_str(&format!("{},{}\n", e.index, fmt_num(e.eigenvalue)));
            }
            s
        }
        Format::Json => to_json(
            &eigs
                .iter()
                .map(|e| Row {
                    k: e.index,
                    alpha: e.eigenvalue,
                })
                .collect::<Vec<_>>(),
        ),
    };
    Ok((out, ExitStatus::Success))
}

fn cmd_stability(args: StabilityArgs, cfg: &RunConfig) -> Outcome {
    let p = exponent(require(args.p, cfg, "p")?)?;
    let lambda = match pick(args.lambda, cfg, "lambda")? {
        Some(l) if args.length.is_none() && args.section.is_none() => l,
        _ => {
            let length: f64 = require(args.length, cfg, "l")?;
            let section: String = require(args.section, cfg, "section")?;
            let section: CrossSection = section.parse()?;
            cylinder_lambda(length, &section)?
        }
    };
    if !lambda.is_finite() {
        return Err(Failure::Usage(format!("lambda must be finite, got {lambda}")));
    }
    let an = StabilityAnalyzer::with_settings(p, &cfg.settings)?;
    let v = an.classify(lambda)?;
    #[derive(Serialize)]
    struct Out {
        p: f64,
        lambda: f64,
        verdict: Verdict,
        end_slope: Option<f64>,
        margin: f64,
        #[serde(skip_serializing_if = "Option::is_none")]
        explanation: Option<String>,
    }
    let inapplicable = v.verdict == Verdict::CriterionInapplicable;
    let out = Out {
        p: p.get(),
        lambda,
        verdict: v.verdict,
        end_slope: v.end_slope,
        margin: v.margin,
        explanation: inapplicable.then(|| {
            format!(
                "lambda + alpha_1(p) = {} <= 0: zero or a negative value lies in the spectrum, the criterion is not asserted",
                v.margin
            )
        }),
    };
    let status = if inapplicable {
        ExitStatus::Inapplicable
    } else {
        ExitStatus::Success
    };
    Ok((to_json(&out), status))
}

fn cmd_threshold(args: PArg, cfg: &RunConfig) -> Outcome {
    let p = exponent(require(args.p, cfg, "p")?)?;
    let result = StabilityAnalyzer::with_settings(p, &cfg.settings)?.threshold()?;
    #[derive(Serialize)]
    struct Out {
        p: f64,
        #[serde(flatten)]
        result: ThresholdResult,
    }
    Ok((to_json(&Out { p: p.get(), result }), ExitStatus::Success))
}

fn cmd_phase(args: PhaseArgs, cfg: &RunConfig) -> Outcome {
    let p_min: f64 = require(args.p_min, cfg, "p_min")?;
    let p_max: f64 = require(args.p_max, cfg, "p_max")?;
    let p_steps: usize = require(args.p_steps, cfg, "p_steps")?;
    let l_min: f64 = require(args.lambda_min, cfg, "lambda_min")?;
    let l_max: f64 = require(args.lambda_max, cfg, "lambda_max")?;
    let l_steps: usize = require(args.lambda_steps, cfg, "lambda_steps")?;
    if p_steps == 0 || l_steps == 0 {
        return Err(Failure::Usage("step counts must be at least 1".into()));
    }
    let diagram = phase_diagram_with(
        &linspace(p_min, p_max, p_steps),
        &linspace(l_min, l_max, l_steps),
        &cfg.settings,
    )?;
    let out = match cfg.format {
        Format::Csv => {
            let mut s = String::from("p,lambda,verdict,end_slope\n");
            for (i, p) in diagram.p_grid.iter().enumerate() {
                for (j, l) in diagram.lambda_grid.iter().enumerate() {
                    let slope = diagram.end_slopes[i][j].map(fmt_num).unwrap_or_default();
                    s.push_str(&format!("{},{},{},{}\n", fmt_num(*p), fmt_num(*l), diagram.verdicts[i][j], slope));
                }
            }
            s
        }
        Format::Json => to_json(&diagram),
    };
    Ok((out, ExitStatus::Success))
}

fn cmd_asymptotics(args: AsymptoticsArgs, cfg: &RunConfig) -> Outcome {
    let regime: RegimeArg = require(args.regime, cfg, "regime")?;
    let p_list = match args.p_list {
        Some(l) => l,
        None => require::<String>(None, cfg, "p_list")?
            .split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|_| format!("bad p_list entry `{x}`")))
            .collect::<Result<Vec<_>, _>>()?,
    };
    let report = match regime {
        RegimeArg::LargeP => report_large_p_with(&p_list, &cfg.settings)?,
        RegimeArg::NearOne => report_near_one_with(&p_list, &cfg.settings)?,
    };
    Ok((to_json(&report), ExitStatus::Success))
}

fn cmd_selfcheck(cfg: &RunConfig) -> Outcome {
    let checks = selfcheck::run(&cfg.settings);
    let status = if checks.iter().all(|c| c.passed) {
        ExitStatus::Success
    } else {
        ExitStatus::SelfCheckFailed
    };
    Ok((selfcheck::render(&checks), status))
}

fn overlay(cli: &Cli, mut cfg: RunConfig) -> Result<RunConfig, String> {
    let s: &mut Settings = &mut cfg.settings;
    if let Some(v) = cli.ivp_abs {
        s.ivp_abs = v;
    }
    if let Some(v) = cli.ivp_rel {
        s.ivp_rel = v;
    }
    if let Some(v) = cli.eig_tol {
        s.eig_tol = v;
    }
    if let Some(v) = cli.marginal_band {
        s.marginal_band = v;
    }
    if let Some(v) = cli.solution_nodes {
        s.solution_nodes = v;
    }
    if let Some(v) = cli.fd_nodes {
        s.fd_nodes = v;
    }
    s.validate()?;
    if let Some(f) = cli.format {
        cfg.format = match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        };
    }
    if let Some(path) = &cli.output {
        cfg.output = Some(path.clone());
    }
    Ok(cfg)
}

/// Run with an explicit base configuration (normally [`RunConfig::from_env`]).
pub fn run_with_config<I, T>(argv: I, base: RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
                return ExitStatus::Success;
            }
            let _ = err.write_all(rendered.as_bytes());
            return ExitStatus::InvalidArguments;
        }
    };
    let cfg = match overlay(&cli, base) {
        Ok(c) => c,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return ExitStatus::InvalidArguments;
        }
    };
    let outcome = match cli.command {
        Command::Solve(a) => cmd_solve(a, &cfg),
        Command::Spectrum(a) => cmd_spectrum(a, &cfg),
        Command::Stability(a) => cmd_stability(a, &cfg),
        Command::Threshold(a) => cmd_threshold(a, &cfg),
        Command::Phase(a) => cmd_phase(a, &cfg),
        Command::Asymptotics(a) => cmd_asymptotics(a, &cfg),
        Command::Selfcheck => cmd_selfcheck(&cfg),
    };
    match outcome {
        Ok((text, status)) => {
            let written = match &cfg.output {
                Some(path) => std::fs::write(path, text.as_bytes())
                    .map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => status,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    ExitStatus::Numerical
                }
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            ExitStatus::InvalidArguments
        }
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Inapplicable { .. } => ExitStatus::Inapplicable,
                e if e.is_numerical() => ExitStatus::Numerical,
                _ => ExitStatus::InvalidArguments,
            }
        }
    }
}

/// Parse `argv` (including the program name), read `LEL_CONFIG`, dispatch.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::from_env() {
        Ok(cfg) => run_with_config(argv, cfg, out, err),
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            ExitStatus::InvalidArguments
        }
    }
}
