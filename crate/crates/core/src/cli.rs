//! The `mobius` command line.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on bad usage.

use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arc::{Arc, MarkedStrip};
use crate::enumeration::{
    count_closed_form, count_recurrence, enumerate_triangulations, verify_counts, BRUTE_FORCE_CEILING,
};
use crate::error::{Error, Result};
use crate::flips::{export_graph, flip_graph, GraphFormat};
use crate::quasicluster::{canonical_seed, cluster_census, mutation_walk, Step};
use crate::RationalFunction;

#[derive(Parser, Debug)]
#[command(name = "mobius", version, about = "Triangulations of the Möbius strip with n marked points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the number of triangulations of M_n.
    Count {
        #[arg(long)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Method::Closed)]
        method: Method,
        /// Allow brute force above the default ceiling.
        #[arg(long)]
        force: bool,
    },
    /// Print every triangulation, one JSON object per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List the arcs of M_n.
    Arcs {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the flip graph.
    FlipGraph {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = GraphFormatArg::Dot)]
        format: GraphFormatArg,
    },
    /// Mutate the canonical initial seed along 1-based slot numbers.
    Mutate {
        #[arg(long)]
        n: usize,
        /// Comma-separated slot numbers, e.g. `1,2,1`.
        #[arg(long, default_value = "")]
        seq: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cross-check the counting formulas against each other and brute force.
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
    },
    /// Close the canonical seed under mutation and report what was found.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Method {
    Closed,
    Recurrence,
    Brute,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GraphFormatArg {
    Dot,
    Json,
}

#[derive(Serialize)]
struct VariableJson<'a> {
    text: String,
    num: &'a crate::Poly,
    den: &'a crate::Poly,
}

impl<'a> From<&'a RationalFunction> for VariableJson<'a> {
    fn from(r: &'a RationalFunction) -> Self {
        VariableJson { text: r.to_string(), num: r.numerator(), den: r.denominator() }
    }
}

#[derive(Serialize)]
struct StepJson<'a> {
    step: usize,
    slot: usize,
    removed: Arc,
    added: Arc,
    relation: &'static str,
    variable: VariableJson<'a>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::ModelViolation(_) => 1,
                _ => 2,
            }
        }
    }
}

fn io(e: std::io::Error) -> Error {
    Error::Resource(format!("write failed: {e}"))
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Count { n, method, force } => {
            let value = match method {
                Method::Closed => count_closed_form(n)?,
                Method::Recurrence => count_recurrence(n)?,
                Method::Brute => {
                    let n = usize::try_from(n).map_err(|_| Error::Usage(format!("n must be positive, got {n}")))?;
                    if n > BRUTE_FORCE_CEILING && !force {
                        return Err(Error::Usage(format!("brute force above n = {BRUTE_FORCE_CEILING} needs --force")));
                    }
                    enumerate_triangulations(&MarkedStrip::new(n)?).len().into()
                }
            };
            writeln!(out, "{value}").map_err(io)?;
        }
        Command::Enumerate { n, format } => {
            let strip = MarkedStrip::new(n)?;
            for t in enumerate_triangulations(&strip) {
                match format {
                    Format::Json => writeln!(out, "{}", serde_json::to_string(&t).expect("serializable")),
                    Format::Text => writeln!(out, "{t}"),
                }
                .map_err(io)?;
            }
        }
        Command::Arcs { n, format } => {
            let arcs = MarkedStrip::new(n)?.all_arcs();
            match format {
                Format::Json => writeln!(out, "{}", serde_json::to_string(&arcs).expect("serializable")).map_err(io)?,
                Format::Text => {
                    for a in arcs {
                        writeln!(out, "{a}").map_err(io)?;
                    }
                }
            }
        }
        Command::FlipGraph { n, format } => {
            let g = flip_graph(n)?;
            let f = match format {
                GraphFormatArg::Dot => GraphFormat::Dot,
                GraphFormatArg::Json => GraphFormat::Json,
            };
            out.write_all(&export_graph(&g, f)?).map_err(io)?;
        }
        Command::Mutate { n, seq, format } => mutate_command(n, &seq, format, out)?,
        Command::Verify { max_n } => {
            let report = verify_counts(max_n, BRUTE_FORCE_CEILING.min(max_n))?;
            writeln!(out, "{report}").map_err(io)?;
            return Ok(if report.all_passed() { 0 } else { 1 });
        }
        Command::Census { n, exhaustive } => {
            let r = cluster_census(&MarkedStrip::new(n)?, exhaustive)?;
            writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("serializable")).map_err(io)?;
            let ok = r.all_laurent && r.arc_variable_bijection && r.exchange_graph_matches_flips && r.involutive;
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn parse_seq(seq: &str) -> Result<Vec<Step>> {
    seq.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(pos, s)| match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(Step::Slot(k - 1)),
            _ => Err(Error::Usage(format!("step {}: expected a slot number from 1, got {s:?}", pos + 1))),
        })
        .collect()
}

fn mutate_command(n: usize, seq: &str, format: Format, out: &mut dyn Write) -> Result<()> {
    let steps = parse_seq(seq)?;
    let seed = canonical_seed(&MarkedStrip::new(n)?);
    let walk = mutation_walk(&seed, &steps)?;
    match format {
        Format::Json => {
            let rows: Vec<StepJson> = walk
                .iter()
                .enumerate()
                .map(|(i, m)| StepJson {
                    step: i + 1,
                    slot: m.slot + 1,
                    removed: m.removed,
                    added: m.added,
                    relation: m.relation.kind.name(),
                    variable: (&m.seed.slots()[m.slot].variable).into(),
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&rows).expect("serializable")).map_err(io)?;
        }
        Format::Text => {
            for (k, s) in seed.slots().iter().enumerate() {
                writeln!(out, "x{} = {}", k + 1, s.arc).map_err(io)?;
            }
            for (i, m) in walk.iter().enumerate() {
                writeln!(
                    out,
                    "{}. slot {}: {} -> {} [{}] {}",
                    i + 1,
                    m.slot + 1,
                    m.removed,
                    m.added,
                    m.relation.kind,
                    m.seed.slots()[m.slot].variable
                )
                .map_err(io)?;
            }
        }
    }
    Ok(())
}
