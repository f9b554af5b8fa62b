//! `mgt`: verify matched pairs and triples of finite groups.
//!
//! Exit codes: 0 all checks pass, 1 usage or parse error, 2 the subgroups do
//! not factorize the group exactly, 3 some check failed.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use matched_groups::factorization::TripleMode;
use matched_groups::group::DEFAULT_MAX_ORDER;
use matched_groups::report::DEFAULT_COUNTEREXAMPLE_CAP;
use matched_groups::survey::{
    run_survey, run_verify_pair, run_verify_triple, SurveyOptions, VerifyOptions,
};
use matched_groups::{Error, VerificationReport};

const EXIT_USAGE: u8 = 1;
const EXIT_NOT_EXACT: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

#[derive(Parser)]
#[command(
    name = "mgt",
    version,
    about = "Exact factorizations, matched pairs and matched triples of finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the JSON report to PATH; with no PATH (or `-`) print it to stdout
    #[arg(long, value_name = "PATH", num_args = 0..=1, default_missing_value = "-")]
    json: Option<PathBuf>,
    /// Counterexamples kept per check
    #[arg(long, value_name = "K", default_value_t = DEFAULT_COUNTEREXAMPLE_CAP)]
    max_counterexamples: usize,
    /// List every check, not only failures
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args)]
struct Limits {
    /// Refuse to build group tables larger than this
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_ORDER)]
    max_group_order: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Strict,
    Relaxed,
}

impl From<Mode> for TripleMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Strict => TripleMode::Strict,
            Mode::Relaxed => TripleMode::Relaxed,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check every pair identity for G = MN
    VerifyPair {
        /// Group spec, e.g. symmetric:3 or product:cyclic:2,cyclic:3
        #[arg(long)]
        group: String,
        /// Generators of M in cycle notation, comma-separated
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        /// Generators of N
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        out: Output,
    },
    /// Check the triple identities and composition for G = MNP
    VerifyTriple {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        n: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long, value_enum, default_value = "strict")]
        mode: Mode,
        #[command(flatten)]
        limits: Limits,
        #[command(flatten)]
        out: Output,
    },
    /// Enumerate and verify every exact pair (and triple) in the catalog
    Survey {
        #[arg(long)]
        max_order: usize,
        /// Also enumerate exact triples
        #[arg(long)]
        triples: bool,
        /// Keep factorizations with a trivial factor
        #[arg(long)]
        include_degenerate: bool,
        #[arg(long, value_enum, default_value = "strict")]
        mode: Mode,
        #[command(flatten)]
        out: Output,
    },
}

fn emit<T: Serialize>(
    out: &Output,
    reports: &[VerificationReport],
    json: &T,
) -> anyhow::Result<()> {
    let text: String = reports
        .iter()
        .map(|r| {
            if out.verbose {
                r.render_detailed()
            } else {
                r.render_text()
            }
        })
        .collect();
    let body = serde_json::to_string_pretty(json)? + "\n";
    let mut stdout = std::io::stdout().lock();
    match out.json.as_deref() {
        Some(p) if p.as_os_str() == "-" => stdout.write_all(body.as_bytes())?,
        Some(p) => {
            std::fs::write(p, body).with_context(|| format!("writing {}", p.display()))?;
            stdout.write_all(text.as_bytes())?;
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    if reports.len() > 1 && out.json.as_deref().is_none_or(|p| p.as_os_str() != "-") {
        let failed = reports.iter().filter(|r| !r.passed()).count();
        writeln!(stdout, "{} subjects, {failed} failed", reports.len())?;
    }
    Ok(())
}

fn verify_options(out: &Output, limits: &Limits) -> VerifyOptions {
    VerifyOptions {
        cap: out.max_counterexamples,
        max_group_order: limits.max_group_order,
    }
}

fn run(cli: Cli) -> Result<ExitCode, (u8, String)> {
    let lib_err = |e: Error| {
        let code = if matches!(e, Error::NotExact(_)) {
            EXIT_NOT_EXACT
        } else {
            EXIT_USAGE
        };
        (code, e.to_string())
    };
    let io_err = |e: anyhow::Error| (EXIT_USAGE, format!("{e:#}"));
    let reports = match cli.command {
        Command::VerifyPair {
            group,
            m,
            n,
            limits,
            out,
        } => {
            let opts = verify_options(&out, &limits);
            let r = run_verify_pair(&group, &m, &n, &opts).map_err(lib_err)?;
            emit(&out, std::slice::from_ref(&r), &r).map_err(io_err)?;
            vec![r]
        }
        Command::VerifyTriple {
            group,
            m,
            n,
            p,
            mode,
            limits,
            out,
        } => {
            let opts = verify_options(&out, &limits);
            let r = run_verify_triple(&group, &m, &n, &p, mode.into(), &opts).map_err(lib_err)?;
            emit(&out, std::slice::from_ref(&r), &r).map_err(io_err)?;
            vec![r]
        }
        Command::Survey {
            max_order,
            triples,
            include_degenerate,
            mode,
            out,
        } => {
            let opts = SurveyOptions {
                triples,
                include_degenerate,
                mode: mode.into(),
                cap: out.max_counterexamples,
            };
            let rs = run_survey(max_order, &opts).map_err(lib_err)?;
            emit(&out, &rs, &rs).map_err(io_err)?;
            rs
        }
    };
    Ok(if reports.iter().all(VerificationReport::passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("mgt: {msg}");
            ExitCode::from(code)
        }
    }
}
