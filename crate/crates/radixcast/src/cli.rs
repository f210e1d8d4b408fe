//! Command-line front end: `convert`, `explain`, `table`, and `route`.
//!
//! Exit codes: 0 on success, 1 for parse or usage errors, 2 when exact
//! repetend detection gives up past the cycle cap.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::numeral::{FormatStyle, Numeral, Radix};
use crate::route::{convert, plan_route, ConvertError, RouteKind};
use crate::trace::{equivalence_table, render_trace, DEFAULT_TABLE_RADICES};
use crate::value::FractionPolicy;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_POLICY: i32 = 2;

const DEFAULT_TRACE_WIDTH: usize = 72;
pub const WIDTH_ENV_VAR: &str = "RADIXCAST_WIDTH";

#[derive(Parser)]
#[command(name = "radixcast", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConvertArgs {
    /// Numeral literal, or "-" to read it from stdin
    numeral: String,
    /// Target radix (2..=36)
    #[arg(long)]
    to: u32,
    /// Source radix; defaults to the literal's tag or 10
    #[arg(long)]
    from: Option<u32>,
    /// Truncate non-terminating fractions to N digits
    #[arg(long, value_name = "N", conflicts_with = "exact")]
    digits: Option<usize>,
    /// Detect exact repetends (the default)
    #[arg(long)]
    exact: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Convert a numeral to another radix
    Convert(ConvertArgs),
    /// Convert and print the step-by-step procedure trace
    Explain(ConvertArgs),
    /// Print the digit equivalence table
    Table {
        /// Largest row value
        #[arg(long, default_value_t = 15)]
        max: u32,
    },
    /// Print the conversion route between two radices
    Route { from: u32, to: u32 },
}

/// Everything a command invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn fail(code: i32, message: impl Into<String>) -> Outcome {
        let mut stderr = message.into();
        if !stderr.ends_with('\n') {
            stderr.push('\n');
        }
        Outcome {
            stdout: String::new(),
            stderr,
            code,
        }
    }
}

/// Runs one command. `args` excludes the program name; `stdin` is consulted
/// only when the numeral argument is "-".
pub fn run(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("radixcast").chain(args.iter().copied());
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    Outcome::ok(e.to_string())
                }
                _ => Outcome::fail(EXIT_USAGE, e.to_string()),
            }
        }
    };

    match cli.command {
        Command::Convert(args) => match convert_command(&args, stdin) {
            Ok((numeral, _)) => Outcome::ok(format!("{}\n", numeral.format(FormatStyle::Tagged))),
            Err(outcome) => outcome,
        },
        Command::Explain(args) => match convert_command(&args, stdin) {
            Ok((numeral, trace)) => {
                let width = match trace_width() {
                    Ok(w) => w,
                    Err(outcome) => return outcome,
                };
                let rendered = render_trace(&trace, width);
                Outcome::ok(format!(
                    "{}\n\n{}",
                    numeral.format(FormatStyle::Tagged),
                    rendered
                ))
            }
            Err(outcome) => outcome,
        },
        Command::Table { max } => {
            if max < 1 {
                return Outcome::fail(EXIT_USAGE, "--max must be at least 1");
            }
            Outcome::ok(equivalence_table(max, &DEFAULT_TABLE_RADICES).to_string())
        }
        Command::Route { from, to } => route_command(from, to),
    }
}

fn trace_width() -> Result<usize, Outcome> {
    match std::env::var(WIDTH_ENV_VAR) {
        Ok(raw) => raw.trim().parse::<usize>().map(|w| w.max(40)).map_err(|_| {
            Outcome::fail(
                EXIT_USAGE,
                format!("{WIDTH_ENV_VAR} must be a positive integer, got {raw:?}"),
            )
        }),
        Err(_) => Ok(DEFAULT_TRACE_WIDTH),
    }
}

fn convert_command(
    args: &ConvertArgs,
    stdin: &str,
) -> Result<(Numeral, crate::trace::Trace), Outcome> {
    let to = Radix::new(args.to).map_err(|e| Outcome::fail(EXIT_USAGE, e.to_string()))?;
    let from = args
        .from
        .map(Radix::new)
        .transpose()
        .map_err(|e| Outcome::fail(EXIT_USAGE, e.to_string()))?;

    let text = if args.numeral == "-" {
        stdin.trim().to_string()
    } else {
        args.numeral.clone()
    };

    let default = from.unwrap_or(Radix::DECIMAL);
    let parsed = Numeral::parse_with_default(&text, default)
        .map_err(|e| Outcome::fail(EXIT_USAGE, e.to_string()))?;
    if let Some(f) = from {
        if parsed.explicit_radix && parsed.numeral.radix() != f {
            return Err(Outcome::fail(
                EXIT_USAGE,
                format!(
                    "literal radix {} conflicts with --from {}",
                    parsed.numeral.radix(),
                    f
                ),
            ));
        }
    }

    let policy = match args.digits {
        Some(n) if n < 1 => {
            return Err(Outcome::fail(EXIT_USAGE, "--digits must be at least 1"))
        }
        Some(n) => FractionPolicy::truncate(n),
        None => FractionPolicy::exact(),
    };

    match convert(&parsed.numeral, to, policy) {
        Ok((numeral, _, trace)) => Ok((numeral, trace)),
        Err(ConvertError::CycleCap(e)) => Err(Outcome::fail(EXIT_POLICY, e.to_string())),
        Err(ConvertError::Route(e)) => Err(Outcome::fail(EXIT_USAGE, e.to_string())),
    }
}

fn route_command(from: u32, to: u32) -> Outcome {
    let from = match Radix::new(from) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_USAGE, e.to_string()),
    };
    let to = match Radix::new(to) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(EXIT_USAGE, e.to_string()),
    };
    let route = plan_route(from, to);
    if route.kind == RouteKind::Identity {
        return Outcome::ok("no conversion required\n".to_string());
    }
    let mut out = String::new();
    for leg in &route.legs {
        out.push_str(&leg.to_string());
        out.push('\n');
    }
    Outcome::ok(out)
}
