//! The `llseries` command line: parse JSON documents, run one analysis, and
//! print a single canonical JSON document on standard output.
//!
//! Exit codes: 0 on success, 1 on domain errors (validation failures,
//! violated preconditions) with an `{"error": ...}` document, 2 on
//! malformed input.

use std::io::Read;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::abelmap::{self, DEFAULT_SECTION_BOUND};
use crate::curvemodel::fiber_sample;
use crate::json;
use crate::numfn::DEFAULT_REFINEMENT_BOUND;
use crate::qlinalg::FieldSpec;

#[derive(Parser)]
#[command(
    name = "llseries",
    about = "Exact calculus of linked sequences, level series and their divisor loci",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap for enumerations (candidate refinements, enumerated sections).
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Coefficient field, "Q" or "Fp:<p>", where a command constructs one.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Pretty-print the output document.
    #[arg(long, global = true)]
    pretty: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Report admissibility (and exactness, when admissible) of a numerical function.
    #[command(name = "nf-check")]
    NfCheck { input: String },
    /// The exact refinement of a numerical function at ratio c, split at ell.
    #[command(name = "nf-refine")]
    NfRefine {
        input: String,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        ell: i64,
    },
    /// All admissible refinements of a numerical function at ratio c.
    #[command(name = "nf-refinements")]
    NfRefinements {
        input: String,
        #[arg(long)]
        c: i64,
    },
    /// Fiber dimension of the forgetful map under a refined function.
    #[command(name = "nf-fiberdim")]
    NfFiberdim {
        input: String,
        #[arg(long)]
        c: i64,
    },
    /// Check the linking axioms of a linked sequence.
    #[command(name = "ls-validate")]
    LsValidate { input: String },
    /// Numerical profile of a valid linked sequence.
    #[command(name = "ls-profile")]
    LsProfile { input: String },
    /// Expand a linked sequence to an exact one, with the truncation schedule.
    #[command(name = "ls-expand")]
    LsExpand { input: String },
    /// Check the containment axioms of a level series.
    #[command(name = "series-validate")]
    SeriesValidate { input: String },
    /// Numerical function of a valid level series.
    #[command(name = "series-profile")]
    SeriesProfile { input: String },
    /// Forget a level series down to a divisor level delta.
    #[command(name = "series-forget")]
    SeriesForget {
        input: String,
        #[arg(long)]
        delta: u64,
    },
    /// Sample a lift of a series along a refined numerical function.
    #[command(name = "series-lift")]
    SeriesLift {
        input: String,
        #[arg(long)]
        c: u64,
        #[arg(long)]
        fprime: String,
    },
    /// Enumerate the divisor locus of a series over a prime field.
    #[command(name = "series-divisors")]
    SeriesDivisors { input: String },
    /// Compare the divisor loci of a series and one of its refinements.
    #[command(name = "series-compare")]
    SeriesCompare { coarse: String, refined: String },
}

enum CliError {
    /// Unreadable or schema-violating input: exit code 2.
    Parse(String),
    /// A violated precondition or failed operation: exit code 1.
    Domain(String),
}

impl From<json::JsonError> for CliError {
    fn from(e: json::JsonError) -> Self {
        CliError::Parse(e.to_string())
    }
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn read_document(path: &str) -> Result<Value, CliError> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Parse(format!("cannot read standard input: {}", e)))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {}", path, e)))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("invalid JSON: {}", e)))
}

fn parse_field_flag(text: &str) -> Result<FieldSpec, CliError> {
    if text == "Q" {
        return Ok(FieldSpec::Rationals);
    }
    if let Some(p) = text.strip_prefix("Fp:") {
        let p: u64 = p
            .parse()
            .map_err(|_| CliError::Parse(format!("invalid field {:?}", text)))?;
        return FieldSpec::prime(p).map_err(|e| CliError::Parse(e.to_string()));
    }
    Err(CliError::Parse(format!(
        "invalid field {:?}; use \"Q\" or \"Fp:<p>\"",
        text
    )))
}

fn dispatch(cli: &Cli) -> Result<Value, CliError> {
    if let Some(text) = &cli.field {
        parse_field_flag(text)?; // validated even when a command ignores it
    }
    match &cli.command {
        Command::NfCheck { input } => {
            let f = json::function_from_value(&read_document(input)?)?;
            let report = f.admissibility();
            let mut out = json!({ "admissible": report.admissible });
            if let Some(failure) = report.failure {
                out["first_failure"] = Value::String(failure.to_string());
            } else {
                out["exact"] = Value::Bool(f.is_exact().map_err(domain)?);
            }
            Ok(out)
        }
        Command::NfRefine { input, c, ell } => {
            let f = json::function_from_value(&read_document(input)?)?;
            if *c < 2 {
                return Err(CliError::Domain(format!(
                    "refinement needs a ratio of at least 2, got {}",
                    c
                )));
            }
            let refined = f.refine(*c, *ell).map_err(domain)?;
            Ok(json::function_to_value(&refined))
        }
        Command::NfRefinements { input, c } => {
            let f = json::function_from_value(&read_document(input)?)?;
            if *c < 1 {
                return Err(CliError::Domain("ratio must be positive".to_string()));
            }
            let bound = cli.bound.unwrap_or(DEFAULT_REFINEMENT_BOUND);
            let list = f.enumerate_refinements(*c, bound).map_err(domain)?;
            Ok(json!({
                "count": list.len(),
                "refinements": list.iter().map(json::function_to_value).collect::<Vec<_>>(),
            }))
        }
        Command::NfFiberdim { input, c } => {
            let f = json::function_from_value(&read_document(input)?)?;
            if *c < 1 {
                return Err(CliError::Domain("ratio must be positive".to_string()));
            }
            if let Some(failure) = f.admissibility().failure {
                return Err(CliError::Domain(format!("function is not admissible: {}", failure)));
            }
            Ok(json!({ "dimension": f.fiber_dimension(*c) }))
        }
        Command::LsValidate { input } => {
            let s = json::linked_from_value(&read_document(input)?)?;
            let violations = s.validate();
            Ok(json!({
                "valid": violations.is_empty(),
                "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::LsProfile { input } => {
            let s = json::linked_from_value(&read_document(input)?)?;
            let profile = s.numerical_profile().map_err(domain)?;
            Ok(json::profile_to_value(&profile))
        }
        Command::LsExpand { input } => {
            let s = json::linked_from_value(&read_document(input)?)?;
            let expansion = s.expand_to_exact().map_err(domain)?;
            Ok(json::expansion_to_value(&expansion))
        }
        Command::SeriesValidate { input } => {
            let g = json::series_from_value(&read_document(input)?)?;
            let violations = g.validate();
            Ok(json!({
                "valid": violations.is_empty(),
                "violations": violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            }))
        }
        Command::SeriesProfile { input } => {
            let g = json::series_from_value(&read_document(input)?)?;
            let f = g.profile().map_err(domain)?;
            Ok(json::function_to_value(&f))
        }
        Command::SeriesForget { input, delta } => {
            let g = json::series_from_value(&read_document(input)?)?;
            let forgotten = g.forget(*delta as usize).map_err(domain)?;
            Ok(json::series_to_value(&forgotten))
        }
        Command::SeriesLift { input, c, fprime } => {
            let g = json::series_from_value(&read_document(input)?)?;
            let refined = json::function_from_value(&read_document(fprime)?)?;
            if *c < 1 {
                return Err(CliError::Domain("ratio must be positive".to_string()));
            }
            let lifted = fiber_sample(&g, &refined, *c as usize, cli.seed).map_err(domain)?;
            Ok(json::series_to_value(&lifted))
        }
        Command::SeriesDivisors { input } => {
            let g = json::series_from_value(&read_document(input)?)?;
            let bound = cli.bound.unwrap_or(DEFAULT_SECTION_BOUND);
            let locus = abelmap::enumerate_locus(&g, bound).map_err(domain)?;
            Ok(json::locus_to_value(&locus))
        }
        Command::SeriesCompare { coarse, refined } => {
            let g = json::series_from_value(&read_document(coarse)?)?;
            let g_fine = json::series_from_value(&read_document(refined)?)?;
            let bound = cli.bound.unwrap_or(DEFAULT_SECTION_BOUND);
            let report = abelmap::compare_locus(&g, &g_fine, bound).map_err(domain)?;
            Ok(json::comparison_to_value(&report))
        }
    }
}

/// Run the command line; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message (help and version go to stdout)
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let render = |value: &Value| {
        if cli.pretty {
            json::to_pretty_string(value)
        } else {
            json::to_canonical_string(value)
        }
    };
    match dispatch(&cli) {
        Ok(value) => {
            println!("{}", render(&value));
            0
        }
        Err(CliError::Domain(message)) => {
            println!("{}", render(&json::error_value(&message)));
            1
        }
        Err(CliError::Parse(message)) => {
            println!("{}", render(&json::error_value(&message)));
            2
        }
    }
}
