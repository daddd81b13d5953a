//! `sgspec` command-line interface.
//!
//! Exit status: 0 on success, 1 when findings or precondition violations
//! were reported, 2 on usage, I/O, parse or validation errors.

use std::io::{IsTerminal, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use sgspec_core::animator::{self, parse_script, Mode};
use sgspec_core::builtin::BuiltinKey;
use sgspec_core::checker::{self, outcome_table};
use sgspec_core::dsl::{self, parse_named, pretty_print};
use sgspec_core::model::{validate, ComponentSpec, SpecDocument};
use sgspec_core::render;

#[derive(Parser)]
#[command(name = "sgspec", version, about = "Parse, check, tabulate, graph and animate .sgs component specifications")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Path to a .sgs document.
    path: Option<PathBuf>,
    /// Use a built-in model: appliance, turbine, solar, storage or all.
    #[arg(long, value_name = "KEY")]
    builtin: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a document, then print it in canonical form.
    Parse {
        #[command(flatten)]
        source: Source,
        /// Print the parsed document as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Report well-formedness errors, unreachable states, sinks and dead operations.
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        json: bool,
    },
    /// Print the success/error outcome table of each operation.
    Table {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "NAME")]
        component: Option<String>,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        /// Shorthand for `--format json`.
        #[arg(long, conflicts_with = "format")]
        json: bool,
    },
    /// Print a component's state diagram as a Graphviz digraph.
    Graph {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "NAME")]
        component: Option<String>,
    },
    /// Run an event script against instances declared in the script.
    Animate {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FILE")]
        script: PathBuf,
        /// Stop at the first precondition violation.
        #[arg(long)]
        strict: bool,
        /// Print the trace as JSON lines.
        #[arg(long)]
        json: bool,
    },
    /// List the built-in models or print one's source.
    Builtin {
        key: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

/// Failure carrying the exit status it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure { code: 2, error }
    }
}

fn color_enabled() -> bool {
    std::env::var_os("SGSPEC_NO_COLOR").is_none() && std::io::stderr().is_terminal()
}

fn report_error(err: &anyhow::Error) {
    let prefix = if color_enabled() { "\x1b[1;31merror\x1b[0m" } else { "error" };
    eprintln!("{prefix}: {err:#}");
}

fn load(source: &Source) -> Result<SpecDocument> {
    let doc = if let Some(key) = &source.builtin {
        let key: BuiltinKey = key.parse()?;
        key.document()
    } else {
        let path = source.path.as_ref().ok_or_else(|| anyhow!("no input given"))?;
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let name = path.display().to_string();
        parse_named(&text, &name).map_err(|errors| parse_failure(&name, &errors))?
    };
    Ok(doc)
}

fn parse_failure(name: &str, errors: &[dsl::ParseError]) -> anyhow::Error {
    let lines: Vec<String> = errors
        .iter()
        .map(|e| format!("{name}:{}:{}: {:?}: {}", e.span.line, e.span.column, e.kind, e.message))
        .collect();
    anyhow!("{} parse error(s)\n{}", errors.len(), lines.join("\n"))
}

fn require_valid(doc: &SpecDocument) -> Result<()> {
    let errors = validate(doc);
    if errors.is_empty() {
        return Ok(());
    }
    let lines: Vec<String> = errors.iter().map(ToString::to_string).collect();
    bail!("{}: {} validation error(s)\n{}", doc.source_name, errors.len(), lines.join("\n"))
}

fn select<'a>(doc: &'a SpecDocument, name: Option<&str>) -> Result<Vec<&'a ComponentSpec>> {
    match name {
        Some(name) => doc
            .component(name)
            .map(|c| vec![c])
            .ok_or_else(|| anyhow!("unknown component `{name}` in {}", doc.source_name)),
        None => Ok(doc.components.iter().collect()),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, Failure> {
    match cli.command {
        Command::Parse { source, json } => {
            let doc = load(&source)?;
            require_valid(&doc)?;
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).map_err(anyhow::Error::from)?)
                    .map_err(anyhow::Error::from)?;
            } else {
                let text = pretty_print(&doc).map_err(anyhow::Error::from)?;
                out.write_all(text.as_bytes()).map_err(anyhow::Error::from)?;
            }
            Ok(0)
        }
        Command::Check { source, json } => {
            let doc = load(&source)?;
            let report = checker::check(&doc);
            if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&report).map_err(anyhow::Error::from)?)
                    .map_err(anyhow::Error::from)?;
            } else {
                out.write_all(render::check_text(&report).as_bytes())
                    .map_err(anyhow::Error::from)?;
            }
            if report.has_errors() {
                Err(Failure {
                    code: 2,
                    error: anyhow!("{} is not well-formed", doc.source_name),
                })
            } else if report.has_findings() {
                Ok(1)
            } else {
                Ok(0)
            }
        }
        Command::Table {
            source,
            component,
            format,
            json,
        } => {
            let doc = load(&source)?;
            require_valid(&doc)?;
            let specs = select(&doc, component.as_deref())?;
            let tables = specs
                .iter()
                .map(|s| outcome_table(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(anyhow::Error::from)?;
            let format = if json { TableFormat::Json } else { format };
            let text = match format {
                TableFormat::Json => {
                    let value = if tables.len() == 1 {
                        serde_json::to_string_pretty(&tables[0])
                    } else {
                        serde_json::to_string_pretty(&tables)
                    };
                    value.map_err(anyhow::Error::from)? + "\n"
                }
                TableFormat::Markdown if tables.len() == 1 => render::table_markdown(&tables[0]),
                TableFormat::Markdown => tables
                    .iter()
                    .map(|t| format!("### {}\n\n{}", t.component, render::table_markdown(t)))
                    .collect::<Vec<_>>()
                    .join("\n"),
                TableFormat::Text => tables.iter().map(render::table_text).collect::<Vec<_>>().join("\n"),
            };
            out.write_all(text.as_bytes()).map_err(anyhow::Error::from)?;
            Ok(0)
        }
        Command::Graph { source, component } => {
            let doc = load(&source)?;
            require_valid(&doc)?;
            let specs = select(&doc, component.as_deref())?;
            let [spec] = specs.as_slice() else {
                return Err(anyhow!(
                    "{} has {} components; choose one with --component",
                    doc.source_name,
                    specs.len()
                )
                .into());
            };
            out.write_all(render::to_dot(spec).as_bytes())
                .map_err(anyhow::Error::from)?;
            Ok(0)
        }
        Command::Animate {
            source,
            script,
            strict,
            json,
        } => {
            let doc = load(&source)?;
            require_valid(&doc)?;
            let text = std::fs::read_to_string(&script)
                .with_context(|| format!("cannot read {}", script.display()))?;
            let parsed = parse_script(&text).with_context(|| format!("in script {}", script.display()))?;
            let mode = if strict { Mode::Strict } else { Mode::Permissive };
            let trace = animator::run(&doc, &parsed, mode)
                .map_err(anyhow::Error::from)
                .with_context(|| format!("in script {}", script.display()))?;
            let rendered = if json {
                trace.to_json_lines()
            } else {
                render::trace_text(&trace)
            };
            out.write_all(rendered.as_bytes()).map_err(anyhow::Error::from)?;
            Ok(if trace.has_violations() { 1 } else { 0 })
        }
        Command::Builtin { key, list } => {
            match (key, list) {
                (Some(key), false) => {
                    let key: BuiltinKey = key.parse().map_err(anyhow::Error::from)?;
                    out.write_all(key.source().as_bytes()).map_err(anyhow::Error::from)?;
                }
                (Some(_), true) => return Err(anyhow!("--list takes no key").into()),
                (None, _) => {
                    for key in BuiltinKey::ALL_KEYS {
                        let names: Vec<String> = key.document().components.into_iter().map(|c| c.name).collect();
                        writeln!(out, "{key}\t{}", names.join(", ")).map_err(anyhow::Error::from)?;
                    }
                }
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(code) => {
            let _ = out.flush();
            ExitCode::from(code)
        }
        Err(failure) => {
            let _ = out.flush();
            report_error(&failure.error);
            ExitCode::from(failure.code)
        }
    }
}
