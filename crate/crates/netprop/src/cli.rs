//! Command-line front end. `run` does the work so it can be driven from
//! tests; the binary only maps errors to exit codes.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use netprop_core::bounds::{geometric_tiling, TilingReport};
use netprop_core::exact::{subset_hitting_time, subset_time_distribution};
use netprop_core::graph::{generate, FamilySpec, Generated, Graph, NodeId};
use netprop_core::rng::derive_seed;
use netprop_core::simulate::{SimParams, Simulator};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::io;
use crate::parallel;
use crate::record::{self, AnalysisRecord, Format};

#[derive(Debug, Parser)]
#[command(name = "netprop", version, about = "Propagation time of stochastic spreading on networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a graph as an edge list (plus a layout file for geometric graphs).
    Generate(GenerateArgs),
    /// Exact value, Monte Carlo estimate and bounds for one graph.
    Analyze(AnalyzeArgs),
    /// `analyze` over a list of values of one parameter.
    Sweep(SweepArgs),
    /// Exact expected time, with optional table and survival-curve exports.
    Exact(ExactArgs),
    /// Infected count per step of one replicate.
    Trace(TraceArgs),
    /// Tile occupancy of a random geometric graph next to its measured time.
    Tiling(TilingArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Family {
    Chain,
    Ring,
    Hub,
    Star,
    Complete,
    #[value(alias = "multipartite")]
    CompleteMultipartite,
    BinaryTree,
    Lattice2d,
    Lattice2dShortcuts,
    ErdosRenyi,
    PowerLaw,
    Geometric,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Node count (client count for hub).
    #[arg(long)]
    pub n: Option<usize>,
    /// Star branch count.
    #[arg(long)]
    pub b: Option<usize>,
    /// Star branch depth, or binary tree depth.
    #[arg(long)]
    pub d: Option<usize>,
    /// Lattice side.
    #[arg(long)]
    pub side: Option<usize>,
    /// Comma-separated part sizes for complete multipartite graphs.
    #[arg(long, value_delimiter = ',')]
    pub parts: Option<Vec<usize>>,
    #[arg(long = "edge-prob")]
    pub edge_prob: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long = "kmin", default_value_t = 1)]
    pub k_min: usize,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub shortcuts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

fn required<T: Copy>(value: Option<T>, flag: &str, family: Family) -> Result<T> {
    value.ok_or_else(|| Error::Parameter(format!("--{flag} is required for {family:?}")))
}

impl FamilyArgs {
    pub fn spec(&self) -> Result<FamilySpec> {
        let f = self.family;
        let spec = match f {
            Family::Chain => FamilySpec::Chain { n: required(self.n, "n", f)? },
            Family::Ring => FamilySpec::Ring { n: required(self.n, "n", f)? },
            Family::Hub => FamilySpec::Hub { n_clients: required(self.n, "n", f)? },
            Family::Star => FamilySpec::Star { b: required(self.b, "b", f)?, d: required(self.d, "d", f)? },
            Family::Complete => FamilySpec::Complete { n: required(self.n, "n", f)? },
            Family::CompleteMultipartite => FamilySpec::CompleteMultipartite {
                part_sizes: self.parts.clone().ok_or_else(|| Error::Parameter("--parts is required".into()))?,
            },
            Family::BinaryTree => FamilySpec::BinaryTree { depth: required(self.d, "d", f)? },
            Family::Lattice2d => FamilySpec::Lattice2d { side: required(self.side, "side", f)? },
            Family::Lattice2dShortcuts => FamilySpec::Lattice2dShortcuts {
                side: required(self.side, "side", f)?,
                num_shortcuts: self.shortcuts,
            },
            Family::ErdosRenyi => FamilySpec::ErdosRenyi {
                n: required(self.n, "n", f)?,
                edge_prob: required(self.edge_prob, "edge-prob", f)?,
            },
            Family::PowerLaw => FamilySpec::PowerLaw {
                n: required(self.n, "n", f)?,
                lambda: required(self.lambda, "lambda", f)?,
                k_min: self.k_min,
            },
            Family::Geometric => FamilySpec::Geometric { n: required(self.n, "n", f)?, r: required(self.r, "r", f)? },
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Edge-list path, `-` for stdout.
    #[arg(long, default_value = "graph.txt")]
    pub out: PathBuf,
    /// Layout path for geometric graphs; defaults to `<out>.layout`.
    #[arg(long)]
    pub layout: Option<PathBuf>,
    /// Keep only the largest connected component.
    #[arg(long)]
    pub giant: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 1000)]
    pub reps: u64,
    #[arg(long, default_value_t = 0)]
    pub src: NodeId,
    /// Analyze the largest connected component of a disconnected graph.
    #[arg(long)]
    pub giant: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output path, `-` for stdout.
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepAxis {
    /// The family's size parameter: n, hub clients, star branches, tree depth or lattice side.
    N,
    P,
    R,
    Lambda,
    Shortcuts,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[command(flatten)]
    pub run: RunArgs,
    #[arg(long, value_enum)]
    pub sweep: SweepAxis,
    #[arg(long, value_delimiter = ',', required = true)]
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub src: NodeId,
    /// Write `state_mask,expected_steps` CSV here.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Write `t,tail` CSV here.
    #[arg(long)]
    pub survival: Option<PathBuf>,
    #[arg(long, default_value_t = 200)]
    pub tmax: usize,
}

#[derive(Debug, Clone, Args)]
pub struct TraceArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub src: NodeId,
    #[arg(long, default_value_t = 0)]
    pub replicate: u64,
    #[arg(long)]
    pub giant: bool,
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct TilingArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 200)]
    pub reps: u64,
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
}

/// Tiling report next to the measured propagation time on the giant
/// component, from its lowest-indexed node.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TilingRecord {
    #[serde(flatten)]
    pub tiling: TilingReport,
    pub giant_nodes: usize,
    pub p: f64,
    pub mc_mean: f64,
    pub mc_stderr: f64,
    /// `mc_mean * r * p`: the constant in `time ~ c / (r p)`.
    pub time_constant: f64,
}

fn open_output(path: &Path) -> Result<Box<dyn Write>> {
    if path.as_os_str() == "-" {
        Ok(Box::new(BufWriter::new(std::io::stdout().lock())))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

/// Generated graph, optionally reduced to its giant component, with the
/// source mapped into the reduced indexing.
fn prepare(spec: &FamilySpec, seed: u64, src: NodeId, giant: bool) -> Result<(Graph, NodeId)> {
    let Generated { graph, .. } = generate(spec, seed)?;
    graph.check_node_public(src)?;
    if graph.is_connected() {
        return Ok((graph, src));
    }
    if !giant {
        return Err(netprop_core::Error::Disconnected.into());
    }
    let sub = graph.giant_component();
    let new_src = sub.old_to_new[src].ok_or_else(|| {
        Error::Parameter(format!("source {src} is outside the giant component ({} nodes)", sub.graph.node_count()))
    })?;
    Ok((sub.graph, new_src))
}

trait CheckNode {
    fn check_node_public(&self, v: NodeId) -> Result<()>;
}

impl CheckNode for Graph {
    fn check_node_public(&self, v: NodeId) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::Parameter(format!("source {v} out of range for {} nodes", self.node_count())))
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Generate(args) => cmd_generate(&args),
        Command::Analyze(args) => {
            let record = cmd_analyze(&args)?;
            record::write_records(&[record], args.run.format, true, open_output(&args.run.out)?)
        }
        Command::Sweep(args) => {
            let records = cmd_sweep(&args)?;
            record::write_records(&records, args.run.format, false, open_output(&args.run.out)?)
        }
        Command::Exact(args) => cmd_exact(&args),
        Command::Trace(args) => cmd_trace(&args),
        Command::Tiling(args) => {
            let record = cmd_tiling(&args)?;
            let mut out = open_output(&args.out)?;
            serde_json::to_writer_pretty(&mut out, &record)?;
            writeln!(out)?;
            Ok(())
        }
    }
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<()> {
    let spec = args.family.spec()?;
    let mut generated = generate(&spec, args.family.seed)?;
    if args.giant && !generated.graph.is_connected() {
        let sub = generated.graph.giant_component();
        if let Some(layout) = generated.layout.as_mut() {
            layout.points = sub.new_to_old.iter().map(|&v| layout.points[v]).collect();
        }
        generated.graph = sub.graph;
    }
    let mut out = open_output(&args.out)?;
    io::write_edge_list(&generated.graph, &mut out)?;
    out.flush()?;
    if let Some(layout) = &generated.layout {
        let path = match &args.layout {
            Some(p) => p.clone(),
            None if args.out.as_os_str() == "-" => {
                return Err(Error::Parameter("geometric graphs written to stdout need --layout".into()))
            }
            None => {
                let mut p = args.out.clone().into_os_string();
                p.push(".layout");
                PathBuf::from(p)
            }
        };
        let mut out = open_output(&path)?;
        io::write_layout(layout, &mut out)?;
        out.flush()?;
    }
    Ok(())
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<AnalysisRecord> {
    let spec = args.family.spec()?;
    let (g, src) = prepare(&spec, args.family.seed, args.run.src, args.run.giant)?;
    record::analyze(&spec, &g, src, args.run.p, args.run.reps, args.family.seed)
}

fn as_count(value: f64, axis: SweepAxis) -> Result<usize> {
    if value >= 0.0 && value.fract() == 0.0 && value <= usize::MAX as f64 {
        Ok(value as usize)
    } else {
        Err(Error::Parameter(format!("{axis:?} sweep values must be non-negative integers, got {value}")))
    }
}

/// Apply one sweep value to the family flags and transmission probability.
fn apply_sweep(family: &mut FamilyArgs, p: &mut f64, axis: SweepAxis, value: f64) -> Result<()> {
    match axis {
        SweepAxis::P => *p = value,
        SweepAxis::R => family.r = Some(value),
        SweepAxis::Lambda => family.lambda = Some(value),
        SweepAxis::Shortcuts => family.shortcuts = as_count(value, axis)?,
        SweepAxis::N => {
            let v = Some(as_count(value, axis)?);
            match family.family {
                Family::Star => family.b = v,
                Family::BinaryTree => family.d = v,
                Family::Lattice2d | Family::Lattice2dShortcuts => family.side = v,
                Family::CompleteMultipartite => {
                    return Err(Error::Parameter("n sweeps are not defined for multipartite graphs".into()))
                }
                _ => family.n = v,
            }
        }
    }
    Ok(())
}

/// One record per sweep value, in order. Value `i` uses the seed derived from
/// `(seed, i)` for both the graph and the replicates.
pub fn cmd_sweep(args: &SweepArgs) -> Result<Vec<AnalysisRecord>> {
    args.values
        .iter()
        .enumerate()
        .map(|(i, &value)| {
            let mut family = args.family.clone();
            let mut p = args.run.p;
            apply_sweep(&mut family, &mut p, args.sweep, value)?;
            let seed = derive_seed(args.family.seed, i as u64);
            family.seed = seed;
            let spec = family.spec()?;
            let (g, src) = prepare(&spec, seed, args.run.src, args.run.giant)?;
            record::analyze(&spec, &g, src, p, args.run.reps, seed)
        })
        .collect()
}

pub fn cmd_exact(args: &ExactArgs) -> Result<()> {
    let spec = args.family.spec()?;
    let (g, src) = prepare(&spec, args.family.seed, args.src, false)?;
    let table = subset_hitting_time(&g, src, args.p)?;
    println!("{:?}", table.expected());
    if let Some(path) = &args.table {
        let mut out = open_output(path)?;
        io::write_hitting_table(&table, &mut out)?;
        out.flush()?;
    }
    if let Some(path) = &args.survival {
        let curve = subset_time_distribution(&g, src, args.p, args.tmax)?;
        let mut out = open_output(path)?;
        io::write_survival(&curve, &mut out)?;
        out.flush()?;
    }
    Ok(())
}

pub fn cmd_trace(args: &TraceArgs) -> Result<()> {
    let spec = args.family.spec()?;
    let (g, src) = prepare(&spec, args.family.seed, args.src, args.giant)?;
    let params = SimParams::with_default_cutoff(&g, src, args.p, args.family.seed)?;
    let (_, trace) = Simulator::new(&g, params)?.run_traced(src, args.replicate)?;
    let mut out = open_output(&args.out)?;
    io::write_trace(&trace, &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn cmd_tiling(args: &TilingArgs) -> Result<TilingRecord> {
    let spec = FamilySpec::Geometric { n: args.n, r: args.r };
    let generated = generate(&spec, args.seed)?;
    let layout = generated.layout.as_ref().expect("geometric family has a layout");
    let tiling = geometric_tiling(layout);
    let giant = generated.graph.giant_component().graph;
    if giant.node_count() == 0 {
        return Err(Error::Parameter("empty layout".into()));
    }
    let params = SimParams::with_default_cutoff(&giant, 0, args.p, args.seed)?;
    let estimate = parallel::monte_carlo(&Simulator::new(&giant, params)?, 0, args.reps)?;
    Ok(TilingRecord {
        tiling,
        giant_nodes: giant.node_count(),
        p: args.p,
        mc_mean: estimate.mean,
        mc_stderr: estimate.std_error,
        time_constant: estimate.mean * args.r * args.p,
    })
}
