//! `egraphsim` command line: plan, run, export, formulas, swap-dist.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

use crate::accounting::{compare, compare_value, CSV_HEADER};
use crate::analysis::{compute_metrics, GraphMetrics};
use crate::error::Error;
use crate::network::{EgraphSpec, SchmidtPair};
use crate::planner::{execute_plan, Execution, LatticeEmbedding, Topology};
use crate::swap::{average_scp, monte_carlo_scp, swap_outcomes, SampledStream, SwapMode};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    /// 2 for usage errors, 1 for failures while running.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_usage() => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "egraphsim",
    version,
    about = "Entanglement graphs on a 1D quantum network"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the allocation and swap schedule for a topology as JSON.
    Plan(TopologyArgs),
    /// Execute a plan and report the realized graph, cost and metrics.
    Run {
        #[command(flatten)]
        topology: TopologyArgs,
        #[command(flatten)]
        output: OutputArgs,
        #[arg(long, value_enum, default_value_t = ModeArg::Ideal)]
        mode: ModeArg,
    },
    /// Write the realized graph of a topology.
    Export {
        #[command(flatten)]
        topology: TopologyArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate reference vs simulated costs over a size range.
    Formulas(FormulaArgs),
    /// Outcome table for swapping two links with the given lambda2 values.
    SwapDist(SwapDistArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TopologyKind {
    Ring,
    Lattice,
    Complete,
    Random,
    Hierarchical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Ideal,
    Average,
    Sampled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Args)]
struct TopologyArgs {
    #[arg(value_enum)]
    topology: TopologyKind,
    /// Node count (ring, complete, random).
    #[arg(long)]
    nodes: Option<usize>,
    /// Lattice side length.
    #[arg(long)]
    side: Option<usize>,
    #[arg(long, default_value = "rowmajor", value_parser = parse_embedding)]
    embedding: LatticeEmbedding,
    /// Hierarchy depth; the graph has 2^levels + 1 nodes.
    #[arg(long)]
    levels: Option<u32>,
    /// Probability of keeping each link of a random graph.
    #[arg(long)]
    keep: Option<f64>,
    #[arg(long, env = "EGRAPHSIM_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct FormulaArgs {
    #[arg(long, value_enum)]
    topology: TopologyKind,
    /// Inclusive range such as `2..20`.
    #[arg(long, value_parser = parse_range)]
    nodes: Option<(u64, u64)>,
    #[arg(long, value_parser = parse_range)]
    side: Option<(u64, u64)>,
    #[arg(long, value_parser = parse_range)]
    levels: Option<(u64, u64)>,
    #[arg(long, default_value = "rowmajor", value_parser = parse_embedding)]
    embedding: LatticeEmbedding,
    #[arg(long, default_value_t = 1.0)]
    keep: f64,
    #[arg(long, env = "EGRAPHSIM_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct SwapDistArgs {
    /// lambda2 of the first link, in [0, 1/2].
    #[arg(long, allow_hyphen_values = true)]
    a: f64,
    /// lambda2 of the second link, in [0, 1/2].
    #[arg(long, allow_hyphen_values = true)]
    b: f64,
    #[arg(long, default_value_t = 0)]
    samples: u64,
    #[arg(long, env = "EGRAPHSIM_SEED", default_value_t = 0)]
    seed: u64,
}

fn parse_embedding(s: &str) -> Result<LatticeEmbedding, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|e| format!("invalid bound `{t}`: {e}"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (parse(lo)?, parse(hi.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range {s}"));
    }
    Ok((lo, hi))
}

fn required<T>(value: Option<T>, flag: &str, topology: TopologyKind) -> Result<T, CliError> {
    value.ok_or_else(|| {
        CliError::Usage(format!(
            "topology `{}` requires --{flag}",
            topology
                .to_possible_value()
                .map(|v| v.get_name().to_owned())
                .unwrap_or_default()
        ))
    })
}

impl TopologyArgs {
    fn topology(&self) -> Result<Topology, CliError> {
        let kind = self.topology;
        Ok(match kind {
            TopologyKind::Ring => Topology::Ring {
                nodes: required(self.nodes, "nodes", kind)?,
            },
            TopologyKind::Complete => Topology::Complete {
                nodes: required(self.nodes, "nodes", kind)?,
            },
            TopologyKind::Random => Topology::Random {
                nodes: required(self.nodes, "nodes", kind)?,
                keep_prob: required(self.keep, "keep", kind)?,
                seed: self.seed,
            },
            TopologyKind::Lattice => Topology::Lattice {
                side: required(self.side, "side", kind)?,
                embedding: self.embedding,
            },
            TopologyKind::Hierarchical => Topology::Hierarchical {
                levels: required(self.levels, "levels", kind)?,
            },
        })
    }
}

fn fmt12(x: f64) -> String {
    format!("{x:.12}")
}

fn edge_csv(g: &EgraphSpec, out: &mut String) {
    out.push_str("a,b\n");
    for (a, b) in g.edges() {
        let _ = writeln!(out, "{a},{b}");
    }
}

fn dot(g: &EgraphSpec, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "// {c}");
    }
    let _ = writeln!(out, "graph \"{}\" {{", g.name());
    for v in 0..g.num_nodes() {
        let _ = writeln!(out, "  {v};");
    }
    for (a, b) in g.edges() {
        let _ = writeln!(out, "  {a} -- {b};");
    }
    out.push_str("}\n");
    out
}

fn metrics_lines(m: &GraphMetrics) -> Vec<String> {
    let degrees = m
        .degree_histogram
        .iter()
        .map(|(d, c)| format!("{d}:{c}"))
        .collect::<Vec<_>>()
        .join(" ");
    vec![
        format!(
            "metrics: edges={} components={} mean_degree={} clustering={} avg_path_length={}",
            m.edge_count,
            m.num_components,
            fmt12(m.mean_degree),
            fmt12(m.clustering_coefficient),
            fmt12(m.avg_path_length)
        ),
        format!("degrees: {degrees}"),
    ]
}

fn mode_name(mode: ModeArg) -> &'static str {
    match mode {
        ModeArg::Ideal => "ideal",
        ModeArg::Average => "average",
        ModeArg::Sampled => "sampled",
    }
}

fn cmd_plan(args: &TopologyArgs) -> Result<String, CliError> {
    let plan = args.topology()?.plan()?;
    Ok(serde_json::to_string_pretty(&plan)? + "\n")
}

fn execute(args: &TopologyArgs, mode: ModeArg) -> Result<(Topology, Execution), CliError> {
    let topology = args.topology()?;
    let plan = topology.plan()?;
    let mut swap_mode = match mode {
        ModeArg::Ideal => SwapMode::Ideal,
        ModeArg::Average => SwapMode::Average,
        ModeArg::Sampled => SwapMode::sampled(args.seed),
    };
    let execution = execute_plan(&plan, &mut swap_mode)?;
    Ok((topology, execution))
}

fn cmd_run(args: &TopologyArgs, mode: ModeArg, format: Format) -> Result<String, CliError> {
    let (topology, ex) = execute(args, mode)?;
    let report = compare(&topology.label(), &topology.params(), ex.state.ledger())?;
    let metrics = compute_metrics(&ex.egraph);
    let header = format!(
        "egraphsim run seed={} topology={} mode={}",
        args.seed,
        topology.label(),
        mode_name(mode)
    );
    Ok(match format {
        Format::Json => {
            let doc = json!({
                "seed": args.seed,
                "topology": topology.label(),
                "mode": mode_name(mode),
                "egraph": ex.egraph,
                "ledger": ex.state.ledger(),
                "report": report,
                "metrics": metrics,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Dot => {
            let mut comments = vec![header, CSV_HEADER.to_string(), report.csv_row()];
            comments.extend(metrics_lines(&metrics));
            dot(&ex.egraph, &comments)
        }
        Format::Csv => {
            let mut out = format!("# {header}\n{CSV_HEADER}\n{}\n", report.csv_row());
            for line in metrics_lines(&metrics) {
                let _ = writeln!(out, "# {line}");
            }
            edge_csv(&ex.egraph, &mut out);
            out
        }
    })
}

fn cmd_export(args: &TopologyArgs, format: Format) -> Result<String, CliError> {
    let (_, ex) = execute(args, ModeArg::Ideal)?;
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&ex.egraph)? + "\n",
        Format::Dot => dot(
            &ex.egraph,
            &[format!("egraphsim export seed={}", args.seed)],
        ),
        Format::Csv => {
            let mut out = format!("# egraphsim export seed={}\n", args.seed);
            edge_csv(&ex.egraph, &mut out);
            out
        }
    })
}

fn cmd_formulas(args: &FormulaArgs) -> Result<String, CliError> {
    let kind = args.topology;
    let (lo, hi) = match kind {
        TopologyKind::Ring | TopologyKind::Complete | TopologyKind::Random => {
            required(args.nodes, "nodes", kind)?
        }
        TopologyKind::Lattice => required(args.side, "side", kind)?,
        TopologyKind::Hierarchical => required(args.levels, "levels", kind)?,
    };
    let mut out = format!("{CSV_HEADER}\n");
    for size in lo..=hi {
        let topology = match kind {
            TopologyKind::Ring => Topology::Ring {
                nodes: size as usize,
            },
            TopologyKind::Complete => Topology::Complete {
                nodes: size as usize,
            },
            TopologyKind::Random => Topology::Random {
                nodes: size as usize,
                keep_prob: args.keep,
                seed: args.seed,
            },
            TopologyKind::Lattice => Topology::Lattice {
                side: size as usize,
                embedding: args.embedding,
            },
            TopologyKind::Hierarchical => Topology::Hierarchical {
                levels: u32::try_from(size)
                    .map_err(|_| CliError::Usage(format!("level count {size} is too large")))?,
            },
        };
        let ex = execute_plan(&topology.plan()?, &mut SwapMode::Ideal)?;
        let report = compare_value(
            &topology.label(),
            &topology.params(),
            ex.state.ledger().initial_links_created(),
        )?;
        let _ = writeln!(out, "{}", report.csv_row());
    }
    Ok(out)
}

fn cmd_swap_dist(args: &SwapDistArgs) -> Result<String, CliError> {
    let s1 = SchmidtPair::from_lambda2(args.a)?;
    let s2 = SchmidtPair::from_lambda2(args.b)?;
    let mut out = String::from("outcome,probability,lambda1,lambda2,scp\n");
    for o in swap_outcomes(s1, s2) {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            o.label.as_str(),
            fmt12(o.probability),
            fmt12(o.result.lambda1()),
            fmt12(o.result.lambda2()),
            fmt12(o.result.scp())
        );
    }
    let _ = writeln!(out, "# analytic_mean_scp={}", fmt12(average_scp(s1, s2)));
    if args.samples > 0 {
        let mut stream = SampledStream::new(args.seed);
        let (mean, stderr) = monte_carlo_scp(s1, s2, args.samples, stream.rng());
        let _ = writeln!(
            out,
            "# empirical_mean_scp={} stderr={} samples={} seed={}",
            fmt12(mean),
            fmt12(stderr),
            args.samples,
            args.seed
        );
    }
    Ok(out)
}

fn emit(text: &str, path: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs an already-parsed command line, writing results to `stdout` unless an
/// output path was given.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Plan(args) => emit(&cmd_plan(args)?, None, stdout),
        Command::Run {
            topology,
            output,
            mode,
        } => emit(
            &cmd_run(topology, *mode, output.format)?,
            output.output.as_ref(),
            stdout,
        ),
        Command::Export { topology, output } => emit(
            &cmd_export(topology, output.format)?,
            output.output.as_ref(),
            stdout,
        ),
        Command::Formulas(args) => emit(&cmd_formulas(args)?, None, stdout),
        Command::SwapDist(args) => emit(&cmd_swap_dist(args)?, None, stdout),
    }
}

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
