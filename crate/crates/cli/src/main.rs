//! `suq-qes` command-line front end.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use suq_qes::matcher::{MatchOptions, SignB};
use suq_qes::oracle::{DEFAULT_MARGIN, DEFAULT_STEP, DEFAULT_TOLERANCE};
use suq_qes::{Error, PotentialPolynomial};

use commands::{OracleSettings, TableParams};
use config::Config;
use report::{Format, Report};

/// θ is rounded to this many decimals unless `--exact` is given.
const DEFAULT_THETA_DECIMALS: u32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "suq-qes",
    version,
    about = "SU_q(1,1) oscillators and quasi-exactly soluble sextic potentials"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// TOML config file; defaults to $SUQ_QES_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Sign {
    Pos,
    Neg,
}

impl From<Sign> for SignB {
    fn from(s: Sign) -> Self {
        match s {
            Sign::Pos => SignB::Positive,
            Sign::Neg => SignB::Negative,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Source {
    Qes,
    Suq,
    Oracle,
}

#[derive(Args, Debug)]
struct ThetaArgs {
    /// Round θ = Nτ to this many decimals before deriving τ.
    #[arg(long, conflicts_with = "exact")]
    theta_decimals: Option<u32>,
    /// Use the unrounded root.
    #[arg(long)]
    exact: bool,
}

#[derive(Args, Debug)]
struct OracleArgs {
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    margin: Option<f64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Feasible window for θ = Nτ.
    Window {
        #[arg(long, value_enum, default_value_t = Sign::Pos)]
        sign_b: Sign,
    },
    /// Match the WKB-EP series to a QES potential.
    Match {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long = "N")]
        big_n: u32,
        #[arg(long, value_enum, default_value_t = Sign::Pos)]
        sign_b: Sign,
        #[command(flatten)]
        theta: ThetaArgs,
    },
    /// All N in a range that admit a match.
    Scan {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        #[arg(long, value_enum, default_value_t = Sign::Pos)]
        sign_b: Sign,
        #[command(flatten)]
        theta: ThetaArgs,
    },
    /// Energy levels from one of the three sources.
    Levels {
        #[arg(long, value_enum)]
        source: Source,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: Option<f64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 0)]
        r: u32,
        #[arg(long = "A")]
        amplitude: Option<f64>,
        #[arg(long)]
        tau: Option<f64>,
        #[arg(long = "N")]
        big_n: Option<u32>,
        #[arg(long = "E0", allow_negative_numbers = true)]
        e0: Option<f64>,
        /// Comma-separated level indices for `suq`.
        #[arg(long, value_delimiter = ',')]
        indices: Vec<usize>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        vmin: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c2: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c4: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        c6: f64,
        /// Number of levels (oracle) or of consecutive indices (suq).
        #[arg(long)]
        count: Option<usize>,
        /// Box half-width; chosen automatically when absent.
        #[arg(long)]
        half_width: Option<f64>,
        /// Richardson-extrapolate the two grids.
        #[arg(long)]
        refine: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Approximate against exact levels for n = 9, N = 399.
    Table1 {
        #[arg(long, value_enum, default_value_t = TableParams::Published)]
        params: TableParams,
        #[command(flatten)]
        theta: ThetaArgs,
    },
    /// Double-well case where the SU_q(1,1) levels miss the lowest states.
    FailureDemo {
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Attempt the undeformed match for k = 0..=k_max.
    Mpt {
        #[arg(long, default_value_t = 19)]
        k_max: u32,
    },
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

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible { .. } | Error::NoRootInWindow { .. } => 2,
        Error::NoConvergence(_)
        | Error::GridTooCoarse { .. }
        | Error::DegenerateEigenvalue { .. } => 3,
        _ => 1,
    }
}

fn match_options(t: &ThetaArgs, cfg: &Config) -> MatchOptions {
    if t.exact {
        return MatchOptions::exact();
    }
    if let Some(d) = t.theta_decimals {
        return MatchOptions::rounded(d);
    }
    if cfg.matching.exact == Some(true) {
        return MatchOptions::exact();
    }
    MatchOptions::rounded(
        cfg.matching
            .theta_decimals
            .unwrap_or(DEFAULT_THETA_DECIMALS),
    )
}

fn oracle_settings(o: &OracleArgs, cfg: &Config) -> Result<OracleSettings, Failure> {
    let s = OracleSettings {
        step: o.step.or(cfg.oracle.step).unwrap_or(DEFAULT_STEP),
        tolerance: o
            .tolerance
            .or(cfg.oracle.tolerance)
            .unwrap_or(DEFAULT_TOLERANCE),
        margin: o.margin.or(cfg.oracle.margin).unwrap_or(DEFAULT_MARGIN),
    };
    for (name, v) in [
        ("step", s.step),
        ("tolerance", s.tolerance),
        ("margin", s.margin),
    ] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Failure::Usage(format!("{name} must be positive, got {v}")));
        }
    }
    Ok(s)
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn run(cli: Cli) -> Result<Report, Failure> {
    let cfg = Config::load(cli.config.as_deref()).map_err(Failure::Usage)?;
    let report = match cli.command {
        Command::Window { sign_b } => commands::window(sign_b.into()),
        Command::Match {
            n,
            r,
            big_n,
            sign_b,
            theta,
        } => commands::match_cmd(n, r, big_n, sign_b.into(), &match_options(&theta, &cfg))?,
        Command::Scan {
            n,
            r,
            from,
            to,
            sign_b,
            theta,
        } => commands::scan(n, r, sign_b.into(), from, to, &match_options(&theta, &cfg))?,
        Command::Levels {
            source,
            a,
            b,
            n,
            r,
            amplitude,
            tau,
            big_n,
            e0,
            indices,
            vmin,
            c2,
            c4,
            c6,
            count,
            half_width,
            refine,
            oracle,
        } => match source {
            Source::Qes => commands::levels_qes(a, need(b, "b")?, need(n, "n")?, r)?,
            Source::Suq => {
                let indices = match (indices.is_empty(), count) {
                    (false, None) => indices,
                    (true, Some(c)) => (0..c).collect(),
                    _ => {
                        return Err(Failure::Usage(
                            "give exactly one of --indices or --count".into(),
                        ))
                    }
                };
                commands::levels_suq(
                    need(e0, "E0")?,
                    need(amplitude, "A")?,
                    need(tau, "tau")?,
                    need(big_n, "N")?,
                    &indices,
                )?
            }
            Source::Oracle => {
                let poly = PotentialPolynomial::new(vmin, c2, c4, c6);
                let settings = oracle_settings(&oracle, &cfg)?;
                commands::levels_oracle(poly, count.unwrap_or(1), half_width, refine, settings)?
            }
        },
        Command::Table1 { params, theta } => {
            commands::table1(params, &match_options(&theta, &cfg))?
        }
        Command::FailureDemo { oracle } => commands::failure(oracle_settings(&oracle, &cfg)?)?,
        Command::Mpt { k_max } => commands::mpt(k_max),
    };
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
