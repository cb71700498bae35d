//! `mstruct`: fixtures, pipelines and checker reports from the command line.
//!
//! Every verb produces a [`Report`]. The report is printed as JSON or text, and
//! the exit status is 0 when every check passes, 1 on a failed check, 2 on bad
//! input and 3 when a bound is exhausted.

mod inputs;
mod verbs;

use clap::{Parser, Subcommand, ValueEnum};
use mstruct_core::report::{Check, Report};
use mstruct_core::Error;
use std::ffi::OsString;
use std::path::PathBuf;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BOUND: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "mstruct", version, about = "Exact m-structures, cobar constructions and their checkers")]
pub struct Cli {
    #[command(subcommand)]
    pub verb: Verb,
    #[command(flatten)]
    pub args: Args,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Args {
    /// Named fixture (see `mstruct fixtures`)
    #[arg(long, global = true, conflicts_with = "input")]
    pub fixture: Option<String>,
    /// JSON input file
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Rank bound
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub rank: Option<u64>,
    /// Degree bound, or the degree of interest for `steenrod` and `kinvariant`
    #[arg(long, global = true)]
    pub degree: Option<u64>,
    /// Write the report here and print the text mirror to stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Operad for `check-operad`
    #[arg(long, global = true, value_enum, default_value_t = Which::Trivial)]
    pub which: Which,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    /// Integral homology of a simplicial set or chain complex
    Homology,
    /// Check the m-structure invariants and homotopy commutativity
    Mstructure,
    /// Check weak coherence, and the coherence identity from rank 3
    Coherence,
    /// Steenrod squares on mod-2 cohomology in the given degree
    Steenrod,
    /// Homology of the cobar construction of a 1-reduced simplicial set
    Cobar,
    /// Acyclicity of the canonical twisted tensor product
    Twisted,
    /// Lift a zig-zag of elementary equivalences and build its cobar row
    ZigzagLift,
    /// k-invariant of a map, from the cone
    Kinvariant,
    /// List fixtures, or dump one
    Fixtures,
    /// Operad identities, Leibniz rule and unit
    CheckOperad,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Trivial,
    Symmetric,
    Endo,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Homology => "homology",
            Verb::Mstructure => "mstructure",
            Verb::Coherence => "coherence",
            Verb::Steenrod => "steenrod",
            Verb::Cobar => "cobar",
            Verb::Twisted => "twisted",
            Verb::ZigzagLift => "zigzag-lift",
            Verb::Kinvariant => "kinvariant",
            Verb::Fixtures => "fixtures",
            Verb::CheckOperad => "check-operad",
        }
    }
}

/// Result of one invocation: exit status and the bytes for each stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: Vec<u8>,
    pub stderr: Vec<u8>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::UnknownLabel(_) | Error::DuplicateLabel(_) => EXIT_PARSE,
        Error::BoundExhausted(_) => EXIT_BOUND,
        _ => EXIT_CHECK_FAILED,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match exit_code(e) {
        EXIT_PARSE => "input",
        EXIT_BOUND => "bound exhausted",
        _ => "check failed",
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string().into_bytes();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: Vec::new() }
            } else {
                Outcome { code: EXIT_PARSE, stdout: Vec::new(), stderr: text }
            };
        }
    };
    if let Err(msg) = configure_threads() {
        return Outcome {
            code: EXIT_PARSE,
            stdout: Vec::new(),
            stderr: format!("error: {msg}\n").into_bytes(),
        };
    }
    execute(cli.verb, &cli.args)
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var("MSTRUCT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("MSTRUCT_THREADS must be a positive integer, got `{v}`"))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Run a parsed command and render its report.
pub fn execute(verb: Verb, args: &Args) -> Outcome {
    let (report, code, err) = match verbs::dispatch(verb, args) {
        Ok(r) => {
            let code = if r.passed() { EXIT_PASS } else { EXIT_CHECK_FAILED };
            (r, code, None)
        }
        Err(e) => {
            let mut r = Report::new(verb.name());
            let mut c = Check::new(error_kind(&e));
            c.fail(e.to_string());
            r.checks.push(c);
            (r, exit_code(&e), Some(e))
        }
    };
    let body = render(&report, args.format);
    let mut stderr = Vec::new();
    if let Some(e) = err {
        stderr.extend(format!("error: {e}\n").into_bytes());
    }
    let stdout = match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &body) {
                stderr.extend(format!("error: cannot write {}: {e}\n", path.display()).into_bytes());
                return Outcome { code: EXIT_PARSE, stdout: Vec::new(), stderr };
            }
            render(&report, Format::Text)
        }
        None => body,
    };
    Outcome { code, stdout, stderr }
}

pub fn render(r: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&r.to_json()).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => r.to_text().into_bytes(),
    }
}
