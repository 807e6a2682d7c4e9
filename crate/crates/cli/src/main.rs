mod commands;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use commands::{CmdResult, Failure};
use ringlab_core::verify::VerifyConfig;
use ringlab_core::{Error, SCHEMA};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

/// Exact algebra on finite rings, DVRs and trivial ring extensions.
#[derive(Debug, Parser)]
#[command(name = "ringlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value = "human", global = true)]
    format: Format,
    /// Largest ring order for which every ideal is enumerated.
    #[arg(long, default_value_t = 64, global = true)]
    max_order: usize,
    /// Maximum number of maps computed in a resolution.
    #[arg(long, default_value_t = 8, global = true)]
    max_steps: usize,
    /// Number of random samples drawn by sampled checks.
    #[arg(long, default_value_t = 10_000, global = true)]
    samples: usize,
    #[arg(long, default_value_t = 42, global = true)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structural properties with verified witnesses.
    Props { expr: String },
    /// Every ideal of a finite ring.
    Ideals { expr: String },
    /// The annihilator (0:a).
    Ann { expr: String, elem: String },
    /// Whether A divides B, with a quotient when it does.
    Divides { expr: String, a: String, b: String },
    /// Projective dimension of A/aA.
    Pd { expr: String, elem: String },
    /// A free resolution of a module over a finite ring.
    Resolve { expr: String, module: String },
    /// Decomposes the module presented by a matrix into cyclic summands.
    Warfield {
        expr: String,
        #[arg(long)]
        matrix: String,
    },
    /// Local factors of a finite ring.
    Decompose { expr: String },
    /// Runs a registered check, or "all".
    Verify { id: String },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Props { .. } => "props",
            Command::Ideals { .. } => "ideals",
            Command::Ann { .. } => "ann",
            Command::Divides { .. } => "divides",
            Command::Pd { .. } => "pd",
            Command::Resolve { .. } => "resolve",
            Command::Warfield { .. } => "warfield",
            Command::Decompose { .. } => "decompose",
            Command::Verify { .. } => "verify",
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Capability(_) | Error::Precondition(_) => 3,
        _ => 2,
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Syntax { .. } => "syntax",
        Error::Semantic { .. } => "semantic",
        Error::Capability(_) => "capability",
        Error::Representation(_) => "representation",
        Error::Precondition(_) => "precondition",
        Error::Construction(_) => "construction",
        Error::Usage(_) => "usage",
    }
}

/// The message with a caret line under the offending input span.
fn render_failure(f: &Failure) -> String {
    let mut s = format!("error: {}\n", f.error);
    if let (Some(span), Some((name, src))) = (f.error.span(), &f.input) {
        let pad = src[..span.start.min(src.len())].chars().count();
        let width = src[span.start.min(src.len())..span.end.min(src.len())].chars().count().max(1);
        s += &format!("  {name}: {src}\n  {}{}{}\n", " ".repeat(name.len() + 2), " ".repeat(pad), "^".repeat(width));
    }
    s
}

fn run(cli: &Cli) -> CmdResult {
    let config = VerifyConfig { max_order: cli.max_order, max_steps: cli.max_steps, samples: cli.samples, seed: cli.seed };
    match &cli.command {
        Command::Props { expr } => commands::props(expr, cli.max_order),
        Command::Ideals { expr } => commands::ideals(expr, cli.max_order),
        Command::Ann { expr, elem } => commands::ann(expr, elem),
        Command::Divides { expr, a, b } => commands::divides(expr, a, b),
        Command::Pd { expr, elem } => commands::pd(expr, elem, cli.max_steps),
        Command::Resolve { expr, module } => commands::resolve(expr, module, cli.max_steps),
        Command::Warfield { expr, matrix } => commands::warfield(expr, matrix),
        Command::Decompose { expr } => commands::decompose(expr),
        Command::Verify { id } => commands::verify_cmd(id, &config),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = cli.command.name();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Human => emit(&out.human),
                Format::Json => {
                    let doc = json!({ "schema": SCHEMA, "command": command, "result": out.result, "pass": !out.violation });
                    emit(&(serde_json::to_string_pretty(&doc).unwrap() + "\n"));
                }
            }
            ExitCode::from(if out.violation { 1 } else { 0 })
        }
        Err(f) => {
            match cli.format {
                Format::Human => eprint!("{}", render_failure(&f)),
                Format::Json => {
                    let span = f.error.span().map(|s| json!({ "start": s.start, "end": s.end }));
                    let doc = json!({
                        "schema": SCHEMA,
                        "command": command,
                        "error": {
                            "kind": kind(&f.error),
                            "message": f.error.to_string(),
                            "input": f.input.as_ref().map(|(n, _)| n.clone()),
                            "span": span,
                        },
                    });
                    emit(&(serde_json::to_string_pretty(&doc).unwrap() + "\n"));
                    eprint!("{}", render_failure(&f));
                }
            }
            ExitCode::from(exit_code(&f.error))
        }
    }
}
