//! Command-line front end for the attractor library.
//!
//! One command per process. Exit codes: 0 success / valid certificate,
//! 1 invalid certificate or failed verification, 2 usage and input errors,
//! 3 node budget exceeded, 4 internal soundness failure (a solver or
//! converter produced something its own verifier rejects — always a bug).
//!
//! Reports go to stdout; `--format json` switches them to one
//! schema-versioned JSON document. Commands that emit an artifact (an
//! instance, graph, or DIMACS file) print it to stdout unless `-o` redirects
//! it to a file, in which case stdout carries the report instead.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use attractor::cover::DEFAULT_NODE_BUDGET;
use attractor::error::{Error, Result};
use attractor::graph::{graph_from_text, graph_to_text, CoverVerdict, EdgeSelection};
use attractor::reductions::{
    assignment_to_cover, assignment_to_marking, cover_to_assignment, gap_trial,
    marking_to_assignment, sat_to_attractor, sat_to_cec,
};
use attractor::sat::{generate_3b2, Assignment, Cnf3B2};
use attractor::solvers::{min_1_attractor, min_attractor_exact, min_attractor_greedy};
use attractor::substring_graph::{min_2attractor_via_cec, min_sharp2_attractor, SubstringGraph};
use attractor::text::{Instance, Marking, Shape};
use attractor::textio;
use attractor::transforms::{lift_solution, transform, SourcePos};
use attractor::verify::{verify_attractor, Verdict};

const SCHEMA: &str = "attractor-cli/1";

#[derive(Parser)]
#[command(name = "attractor", version, about = "k-attractor toolkit: verify, minimize, transform, reduce")]
struct Cli {
    /// Report format: line-oriented text or one JSON document.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check a marking against an instance.
    Verify(VerifyArgs),
    /// Compute a small or minimum attractor.
    Solve(SolveArgs),
    /// Rewrite an instance into another shape, tracking positions.
    Transform(TransformArgs),
    /// Lift a marking of the transformed instance back to the source.
    Lift(LiftArgs),
    /// 2-substring graphs and colorful edge covers.
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Balanced (3,B2)-SAT: generate, validate, brute-force solve.
    Sat {
        #[command(subcommand)]
        cmd: SatCmd,
    },
    /// Build the hard instances encoding a balanced formula.
    Reduce {
        #[command(subcommand)]
        cmd: ReduceCmd,
    },
    /// Convert certificates across a reduction, both directions.
    Certify {
        #[command(subcommand)]
        cmd: CertifyCmd,
    },
    /// Batch experiments over generated formulas.
    Experiment {
        #[command(subcommand)]
        cmd: ExperimentCmd,
    },
}

/// `--k` accepts a number or `full` (the longest member string's length).
#[derive(Clone, Copy)]
enum KArg {
    Full,
    N(usize),
}

impl KArg {
    fn resolve(self, instance: &Instance) -> usize {
        match self {
            KArg::Full => instance.max_len().max(1),
            KArg::N(n) => n,
        }
    }
}

fn parse_k_arg(s: &str) -> std::result::Result<KArg, String> {
    if s == "full" {
        Ok(KArg::Full)
    } else {
        s.parse::<usize>()
            .map(KArg::N)
            .map_err(|_| format!("expected a number or `full`, got {s:?}"))
    }
}

fn parse_shape_arg(s: &str) -> std::result::Result<Shape, String> {
    s.parse::<Shape>().map_err(|e| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Branch-and-bound exact minimum.
    Exact,
    /// Largest-gain greedy upper bound.
    Greedy,
    /// Closed-form minimum 1-attractor (first occurrence per symbol).
    Min1,
    /// Exact minimum via the 2-substring graph's edge cover (k = 2 only).
    Graph,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("marks").required(true).args(["marking", "marking_file"])))]
struct VerifyArgs {
    /// Instance file (bare one-string-per-line, or structured `shape ...`).
    instance: PathBuf,
    /// Shape of a bare instance file.
    #[arg(long, value_parser = parse_shape_arg)]
    shape: Option<Shape>,
    /// Substring length bound, or `full`.
    #[arg(long, value_parser = parse_k_arg)]
    k: KArg,
    /// Cover only substrings of length exactly k.
    #[arg(long)]
    sharp: bool,
    /// Marking, inline: `2,7,9` (positions) or `1:2,2:4` (set pairs).
    #[arg(long)]
    marking: Option<String>,
    /// Marking read from a file.
    #[arg(long)]
    marking_file: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    instance: PathBuf,
    #[arg(long, value_parser = parse_shape_arg)]
    shape: Option<Shape>,
    #[arg(long, value_parser = parse_k_arg)]
    k: KArg,
    #[arg(long)]
    sharp: bool,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
    /// Branch-and-bound node budget.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Also write the marking to a file.
    #[arg(long)]
    marking_out: Option<PathBuf>,
}

#[derive(Args)]
struct TransformArgs {
    instance: PathBuf,
    /// Shape of a bare instance file.
    #[arg(long, value_parser = parse_shape_arg)]
    from: Option<Shape>,
    /// Target shape.
    #[arg(long, value_parser = parse_shape_arg)]
    via: Shape,
    /// Write the target instance here instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Write the position map sidecar here.
    #[arg(long)]
    provenance: Option<PathBuf>,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("marks").required(true).args(["marking", "marking_file"])))]
struct LiftArgs {
    /// The SOURCE instance file; the transform is recomputed from it.
    instance: PathBuf,
    #[arg(long, value_parser = parse_shape_arg)]
    from: Option<Shape>,
    /// Target shape the marking lives in.
    #[arg(long, value_parser = parse_shape_arg)]
    via: Shape,
    #[arg(long, value_parser = parse_k_arg)]
    k: KArg,
    #[arg(long)]
    sharp: bool,
    /// Marking of the TARGET instance.
    #[arg(long)]
    marking: Option<String>,
    #[arg(long)]
    marking_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Build the 2-substring graph of a string or string set.
    Build {
        instance: PathBuf,
        #[arg(long, value_parser = parse_shape_arg)]
        shape: Option<Shape>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write vertex grams and edge occurrence lists here.
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Exact minimum (colorful) edge cover of an interchange-format graph.
    Solve {
        graph: PathBuf,
        /// Ignore colors: plain edge cover.
        #[arg(long)]
        plain: bool,
        /// Route self-loops through the loop-elimination gadget first.
        #[arg(long)]
        deloop: bool,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Check an edge selection against a graph.
    Verify {
        graph: PathBuf,
        /// Edge indices, e.g. `0,3,5`.
        #[arg(long)]
        cover: String,
        #[arg(long)]
        plain: bool,
    },
    /// Rewrite self-loops through the gadget; emits the loop-free graph.
    Deloop {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum SatCmd {
    /// Generate a random balanced formula (DIMACS out).
    Gen {
        /// Number of variables (positive multiple of 3).
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        seed: u64,
        /// Permit repeated literals inside a clause.
        #[arg(long)]
        allow_duplicate_literals: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the (3,B2) shape. Exit 0 balanced, 1 valid CNF but unbalanced.
    Validate { cnf: PathBuf },
    /// Brute-force satisfiability (or MAX-SAT with --max).
    Solve {
        cnf: PathBuf,
        /// Report the maximum satisfiable clause count instead.
        #[arg(long)]
        max: bool,
    },
}

#[derive(Subcommand)]
enum ReduceCmd {
    /// Formula -> colorful edge cover instance.
    Sat2cec {
        cnf: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Write vertex/edge labels and predicted size here.
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Formula -> 2-attractor instance (string set + stitched string).
    Sat2attr {
        cnf: PathBuf,
        /// Write the string-set instance here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the stitched single-string instance here.
        #[arg(long)]
        stitched_out: Option<PathBuf>,
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CertifyCmd {
    /// Satisfying assignment -> colorful cover of the reduction graph.
    Asg2cover {
        cnf: PathBuf,
        /// Assignment bits, x1 first: `101`.
        #[arg(long)]
        assignment: String,
    },
    /// Valid minimum cover -> satisfying assignment.
    Cover2asg {
        cnf: PathBuf,
        /// Edge indices, e.g. `0,3,5`.
        #[arg(long)]
        cover: String,
    },
    /// Satisfying assignment -> 2-set-attractor marking.
    Asg2marking {
        cnf: PathBuf,
        #[arg(long)]
        assignment: String,
    },
    /// Valid minimum marking -> satisfying assignment.
    Marking2asg {
        cnf: PathBuf,
        /// Set marking pairs, e.g. `1:2,1:4`.
        #[arg(long)]
        marking: String,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// Generate formulas, solve the stitched reduction exactly, and check
    /// the almost-satisfiable interval bounds. CSV out.
    Gap {
        /// Variables per formula (positive multiple of 3).
        #[arg(long)]
        vars: usize,
        #[arg(long)]
        trials: usize,
        /// Seed of the first trial; trial t uses seed + t.
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::InvalidCertificate(_) => 1,
                Error::InvalidParameter(_) | Error::Parse(_) | Error::Io(_) => 2,
                Error::Infeasible(_) => 2,
                Error::BudgetExceeded { .. } => 3,
                Error::Soundness(_) => 4,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Cmd::Verify(a) => cmd_verify(a, cli.format),
        Cmd::Solve(a) => cmd_solve(a, cli.format),
        Cmd::Transform(a) => cmd_transform(a, cli.format),
        Cmd::Lift(a) => cmd_lift(a, cli.format),
        Cmd::Graph { cmd } => match cmd {
            GraphCmd::Build { instance, shape, output, provenance } => {
                cmd_graph_build(instance, *shape, output.as_deref(), provenance.as_deref(), cli.format)
            }
            GraphCmd::Solve { graph, plain, deloop, budget } => {
                cmd_graph_solve(graph, *plain, *deloop, *budget, cli.format)
            }
            GraphCmd::Verify { graph, cover, plain } => {
                cmd_graph_verify(graph, cover, *plain, cli.format)
            }
            GraphCmd::Deloop { graph, output } => {
                cmd_graph_deloop(graph, output.as_deref(), cli.format)
            }
        },
        Cmd::Sat { cmd } => match cmd {
            SatCmd::Gen { vars, seed, allow_duplicate_literals, output } => {
                cmd_sat_gen(*vars, *seed, *allow_duplicate_literals, output.as_deref(), cli.format)
            }
            SatCmd::Validate { cnf } => cmd_sat_validate(cnf, cli.format),
            SatCmd::Solve { cnf, max } => cmd_sat_solve(cnf, *max, cli.format),
        },
        Cmd::Reduce { cmd } => match cmd {
            ReduceCmd::Sat2cec { cnf, output, provenance } => {
                cmd_reduce_cec(cnf, output.as_deref(), provenance.as_deref(), cli.format)
            }
            ReduceCmd::Sat2attr { cnf, output, stitched_out, provenance } => cmd_reduce_attr(
                cnf,
                output.as_deref(),
                stitched_out.as_deref(),
                provenance.as_deref(),
                cli.format,
            ),
        },
        Cmd::Certify { cmd } => cmd_certify(cmd, cli.format),
        Cmd::Experiment { cmd } => match cmd {
            ExperimentCmd::Gap { vars, trials, seed, budget, output } => {
                cmd_experiment_gap(*vars, *trials, *seed, *budget, output.as_deref(), cli.format)
            }
        },
    }
}

fn emit(format: Format, human: String, mut doc: Value) {
    match format {
        Format::Human => print!("{human}"),
        Format::Json => {
            doc["schema"] = json!(SCHEMA);
            println!("{}", serde_json::to_string_pretty(&doc).expect("report serializes"));
        }
    }
}

fn read_marking_arg(
    marking: &Option<String>,
    marking_file: &Option<PathBuf>,
    shape: Shape,
) -> Result<Marking> {
    match (marking, marking_file) {
        (Some(spec), _) => Marking::parse(spec, shape),
        (None, Some(path)) => textio::read_marking(path, shape),
        (None, None) => unreachable!("clap enforces the marking group"),
    }
}

fn read_cnf(path: &Path) -> Result<Cnf3B2> {
    Cnf3B2::from_dimacs(&std::fs::read_to_string(path)?)
}

fn cmd_verify(a: &VerifyArgs, format: Format) -> Result<u8> {
    let inst = textio::read_instance(&a.instance, a.shape)?;
    let marking = read_marking_arg(&a.marking, &a.marking_file, inst.shape())?;
    let k = a.k.resolve(&inst);
    match verify_attractor(&inst, &marking, k, a.sharp)? {
        Verdict::Valid => {
            emit(
                format,
                "valid\n".into(),
                json!({
                    "command": "verify", "verdict": "valid",
                    "k": k, "sharp": a.sharp, "size": marking.len(),
                }),
            );
            Ok(0)
        }
        Verdict::Invalid { witness } => {
            let w = inst.alphabet.render(&witness);
            emit(
                format,
                format!("invalid\nwitness {w}\n"),
                json!({
                    "command": "verify", "verdict": "invalid", "witness": w,
                    "k": k, "sharp": a.sharp, "size": marking.len(),
                }),
            );
            Ok(1)
        }
    }
}

fn cmd_solve(a: &SolveArgs, format: Format) -> Result<u8> {
    let inst = textio::read_instance(&a.instance, a.shape)?;
    let k = a.k.resolve(&inst);
    let (marking, nodes, method_name) = match a.method {
        Method::Exact => {
            let out = min_attractor_exact(&inst, k, a.sharp, a.budget)?;
            (out.marking, out.nodes, "exact")
        }
        Method::Greedy => {
            let out = min_attractor_greedy(&inst, k, a.sharp)?;
            (out.marking, out.nodes, "greedy")
        }
        Method::Min1 => {
            if k != 1 {
                return Err(Error::InvalidParameter(format!(
                    "method min1 needs --k 1, got {k}"
                )));
            }
            (min_1_attractor(&inst), 0, "min1")
        }
        Method::Graph => {
            if k != 2 {
                return Err(Error::InvalidParameter(format!(
                    "method graph needs --k 2, got {k}"
                )));
            }
            let out = if a.sharp {
                min_sharp2_attractor(&inst, a.budget)?
            } else {
                min_2attractor_via_cec(&inst, a.budget)?
            };
            (out.marking, out.nodes, "graph")
        }
    };
    // self-check before emitting, independent of the solver's own checks
    if let Verdict::Invalid { witness } = verify_attractor(&inst, &marking, k, a.sharp)? {
        return Err(Error::Soundness(format!(
            "solver output fails verification: misses {:?}",
            inst.alphabet.render(&witness)
        )));
    }
    if let Some(path) = &a.marking_out {
        textio::write_marking(path, &marking)?;
    }
    emit(
        format,
        format!(
            "size {}\nmarking {}\nmethod {}\nk {}\nsharp {}\nbudget {}\nnodes {}\n",
            marking.len(),
            marking,
            method_name,
            k,
            a.sharp,
            a.budget,
            nodes
        ),
        json!({
            "command": "solve", "size": marking.len(), "marking": marking.to_string(),
            "method": method_name, "k": k, "sharp": a.sharp,
            "budget": a.budget, "nodes": nodes,
        }),
    );
    Ok(0)
}

fn check_declared_shape(inst: &Instance, declared: Option<Shape>) -> Result<()> {
    if let Some(s) = declared {
        if inst.shape() != s {
            return Err(Error::InvalidParameter(format!(
                "file declares shape {}, but --from says {}",
                inst.shape().name(),
                s.name()
            )));
        }
    }
    Ok(())
}

/// Forced (delimiter) positions of a transform target, as a target marking.
fn forced_marking(tr: &attractor::transforms::TransformResult) -> Marking {
    let mut scan = tr.target.positions();
    let mut pairs = Vec::new();
    for sp in &tr.position_map {
        let (x, y) = scan.next().expect("position map matches target scan order");
        if matches!(sp, SourcePos::Forced) {
            pairs.push((x, y));
        }
    }
    match tr.target.shape() {
        Shape::Set => Marking::pairs(pairs),
        _ => Marking::positions(pairs.into_iter().map(|(_, y)| y)),
    }
}

fn transform_provenance(tr: &attractor::transforms::TransformResult) -> String {
    let mut out = format!(
        "transform {} -> {}\noffset {}\n",
        tr.source.shape().name(),
        tr.target.shape().name(),
        tr.size_offset
    );
    for (i, sp) in tr.position_map.iter().enumerate() {
        match sp {
            SourcePos::Forced => out.push_str(&format!("map {} forced\n", i + 1)),
            SourcePos::At(x, y) => out.push_str(&format!("map {} {x}:{y}\n", i + 1)),
        }
    }
    out
}

fn cmd_transform(a: &TransformArgs, format: Format) -> Result<u8> {
    let inst = textio::read_instance(&a.instance, a.from)?;
    check_declared_shape(&inst, a.from)?;
    let tr = transform(&inst, a.via)?;
    let forced = forced_marking(&tr);
    let doc = format!(
        "# transform {} -> {}\n# offset {}\n# forced {}\n{}",
        tr.source.shape().name(),
        tr.target.shape().name(),
        tr.size_offset,
        forced,
        textio::format_instance(&tr.target)
    );
    if let Some(path) = &a.provenance {
        std::fs::write(path, transform_provenance(&tr))?;
    }
    let report = format!(
        "offset {}\nforced {}\ntarget-shape {}\n",
        tr.size_offset,
        forced,
        tr.target.shape().name()
    );
    let jdoc = json!({
        "command": "transform", "offset": tr.size_offset,
        "forced": forced.to_string(), "target_shape": tr.target.shape().name(),
        "instance": doc,
    });
    match &a.output {
        Some(path) => {
            std::fs::write(path, &doc)?;
            emit(format, report, jdoc);
        }
        None => emit(format, doc.clone(), jdoc),
    }
    Ok(0)
}

fn cmd_lift(a: &LiftArgs, format: Format) -> Result<u8> {
    let source = textio::read_instance(&a.instance, a.from)?;
    check_declared_shape(&source, a.from)?;
    let tr = transform(&source, a.via)?;
    let target_marking = read_marking_arg(&a.marking, &a.marking_file, tr.target.shape())?;
    let k = a.k.resolve(&tr.target);
    let lifted = lift_solution(&tr, &target_marking, k, a.sharp)?;
    emit(
        format,
        format!(
            "size {}\nmarking {}\noffset {}\nk {}\nsharp {}\n",
            lifted.len(),
            lifted,
            tr.size_offset,
            k,
            a.sharp
        ),
        json!({
            "command": "lift", "size": lifted.len(), "marking": lifted.to_string(),
            "offset": tr.size_offset, "k": k, "sharp": a.sharp,
        }),
    );
    Ok(0)
}

fn cmd_graph_build(
    instance: &Path,
    shape: Option<Shape>,
    output: Option<&Path>,
    provenance: Option<&Path>,
    format: Format,
) -> Result<u8> {
    let inst = textio::read_instance(instance, shape)?;
    let sg = SubstringGraph::build(&inst)?;
    let doc = format!(
        "# 2-substring graph: {} vertices, {} edges\n{}",
        sg.graph.num_vertices(),
        sg.graph.num_edges(),
        graph_to_text(&sg.graph)
    );
    if let Some(path) = provenance {
        std::fs::write(path, sg.provenance_text(&inst.alphabet))?;
    }
    let report = format!(
        "vertices {}\nedges {}\n",
        sg.graph.num_vertices(),
        sg.graph.num_edges()
    );
    let jdoc = json!({
        "command": "graph build",
        "vertices": sg.graph.num_vertices(), "edges": sg.graph.num_edges(),
        "graph": doc,
    });
    match output {
        Some(path) => {
            std::fs::write(path, &doc)?;
            emit(format, report, jdoc);
        }
        None => emit(format, doc.clone(), jdoc),
    }
    Ok(0)
}

fn cmd_graph_solve(
    graph: &Path,
    plain: bool,
    deloop: bool,
    budget: u64,
    format: Format,
) -> Result<u8> {
    let g = graph_from_text(&std::fs::read_to_string(graph)?)?;
    let colorful = !plain;
    let (sel, nodes) = if deloop {
        if !colorful {
            return Err(Error::InvalidParameter(
                "the loop gadget preserves colorful covers; use it with colorful solves".into(),
            ));
        }
        let d = g.eliminate_self_loops();
        let out = d.graph.min_colorful_cover_exact(budget)?;
        (d.lift_selection(&g, &out.selection)?, out.nodes)
    } else {
        let out = if colorful {
            g.min_colorful_cover_exact(budget)?
        } else {
            g.min_edge_cover_exact(budget)?
        };
        (out.selection, out.nodes)
    };
    match g.verify_cover(&sel, colorful)? {
        CoverVerdict::Valid => {}
        CoverVerdict::Invalid { missing } => {
            return Err(Error::Soundness(format!(
                "solver output fails verification: misses {missing}"
            )))
        }
    }
    emit(
        format,
        format!(
            "size {}\ncover {}\ncolorful {}\nbudget {}\nnodes {}\n",
            sel.len(),
            sel,
            colorful,
            budget,
            nodes
        ),
        json!({
            "command": "graph solve", "size": sel.len(), "cover": sel.to_string(),
            "colorful": colorful, "budget": budget, "nodes": nodes,
        }),
    );
    Ok(0)
}

fn cmd_graph_verify(graph: &Path, cover: &str, plain: bool, format: Format) -> Result<u8> {
    let g = graph_from_text(&std::fs::read_to_string(graph)?)?;
    let sel = EdgeSelection::parse(cover)?;
    match g.verify_cover(&sel, !plain)? {
        CoverVerdict::Valid => {
            emit(
                format,
                "valid\n".into(),
                json!({"command": "graph verify", "verdict": "valid", "size": sel.len()}),
            );
            Ok(0)
        }
        CoverVerdict::Invalid { missing } => {
            emit(
                format,
                format!("invalid\nmissing {missing}\n"),
                json!({
                    "command": "graph verify", "verdict": "invalid",
                    "missing": missing.to_string(), "size": sel.len(),
                }),
            );
            Ok(1)
        }
    }
}

fn cmd_graph_deloop(graph: &Path, output: Option<&Path>, format: Format) -> Result<u8> {
    let g = graph_from_text(&std::fs::read_to_string(graph)?)?;
    let d = g.eliminate_self_loops();
    let mut header = format!("# deloop size-offset {}\n", d.size_offset);
    if let Some(e) = d.gadget_edge {
        header.push_str(&format!("# gadget-edge {e}\n"));
    }
    if let Some((x, y)) = d.gadget_vertices {
        header.push_str(&format!("# gadget-vertices {x} {y}\n"));
    }
    let doc = format!("{header}{}", graph_to_text(&d.graph));
    let report = format!("size-offset {}\n", d.size_offset);
    let jdoc = json!({
        "command": "graph deloop", "size_offset": d.size_offset,
        "gadget_edge": d.gadget_edge, "graph": doc,
    });
    match output {
        Some(path) => {
            std::fs::write(path, &doc)?;
            emit(format, report, jdoc);
        }
        None => emit(format, doc.clone(), jdoc),
    }
    Ok(0)
}

fn cmd_sat_gen(
    vars: usize,
    seed: u64,
    allow_duplicate_literals: bool,
    output: Option<&Path>,
    format: Format,
) -> Result<u8> {
    let f = generate_3b2(vars, seed, allow_duplicate_literals)?;
    let doc = format!(
        "c balanced (3,B2) instance\nc vars {} seed {} allow-duplicate-literals {}\n{}",
        vars,
        seed,
        allow_duplicate_literals,
        f.to_dimacs()
    );
    let report = format!("vars {}\nclauses {}\nseed {}\n", vars, f.num_clauses(), seed);
    let jdoc = json!({
        "command": "sat gen", "vars": vars, "clauses": f.num_clauses(),
        "seed": seed, "dimacs": doc,
    });
    match output {
        Some(path) => {
            std::fs::write(path, &doc)?;
            emit(format, report, jdoc);
        }
        None => emit(format, doc.clone(), jdoc),
    }
    Ok(0)
}

fn cmd_sat_validate(cnf: &Path, format: Format) -> Result<u8> {
    let f = read_cnf(cnf)?;
    let violations = f.validate_3b2();
    if violations.is_empty() {
        emit(
            format,
            format!("balanced\nvars {}\nclauses {}\n", f.num_vars, f.num_clauses()),
            json!({
                "command": "sat validate", "verdict": "balanced",
                "vars": f.num_vars, "clauses": f.num_clauses(),
            }),
        );
        Ok(0)
    } else {
        let mut human = String::from("unbalanced\n");
        for v in &violations {
            human.push_str(&format!("violation {v}\n"));
        }
        let list: Vec<String> = violations.iter().map(|v| v.to_string()).collect();
        emit(
            format,
            human,
            json!({
                "command": "sat validate", "verdict": "unbalanced",
                "violations": list,
            }),
        );
        Ok(1)
    }
}

fn cmd_sat_solve(cnf: &Path, max: bool, format: Format) -> Result<u8> {
    let f = read_cnf(cnf)?;
    if max {
        let (best, asg) = f.max_sat_bruteforce()?;
        emit(
            format,
            format!(
                "maxsat {best}\nunsatisfied {}\nassignment {asg}\n",
                f.num_clauses() - best
            ),
            json!({
                "command": "sat solve", "maxsat": best,
                "unsatisfied": f.num_clauses() - best, "assignment": asg.to_string(),
            }),
        );
        return Ok(0);
    }
    match f.solve_sat_bruteforce()? {
        Some(asg) => emit(
            format,
            format!("sat\nassignment {asg}\n"),
            json!({"command": "sat solve", "verdict": "sat", "assignment": asg.to_string()}),
        ),
        None => emit(
            format,
            "unsat\n".into(),
            json!({"command": "sat solve", "verdict": "unsat"}),
        ),
    }
    Ok(0)
}

fn cmd_reduce_cec(
    cnf: &Path,
    output: Option<&Path>,
    provenance: Option<&Path>,
    format: Format,
) -> Result<u8> {
    let f = read_cnf(cnf)?;
    let art = sat_to_cec(&f)?;
    let doc = format!(
        "# colorful-edge-cover reduction of a (3,B2) formula: n {} m {}\n# predicted-cover {}\n{}",
        f.num_vars,
        f.num_clauses(),
        art.predicted_cover_size,
        graph_to_text(&art.graph)
    );
    if let Some(path) = provenance {
        let mut p = format!("predicted-cover {}\n", art.predicted_cover_size);
        for &v in art.graph.vertices() {
            p.push_str(&format!("vertex {v} {}\n", art.vertex_label(v)));
        }
        for (i, e) in art.graph.edges().iter().enumerate() {
            p.push_str(&format!(
                "edge {i} {} {} color {}\n",
                art.vertex_label(e.u),
                art.vertex_label(e.v),
                e.color
            ));
        }
        std::fs::write(path, p)?;
    }
    let report = format!(
        "vertices {}\nedges {}\ncolors {}\npredicted-cover {}\n",
        art.graph.num_vertices(),
        art.graph.num_edges(),
        art.graph.colors().len(),
        art.predicted_cover_size
    );
    let jdoc = json!({
        "command": "reduce sat2cec",
        "vertices": art.graph.num_vertices(), "edges": art.graph.num_edges(),
        "colors": art.graph.colors().len(),
        "predicted_cover": art.predicted_cover_size, "graph": doc,
    });
    match output {
        Some(path) => {
            std::fs::write(path, &doc)?;
            emit(format, report, jdoc);
        }
        None => emit(format, doc.clone(), jdoc),
    }
    Ok(0)
}

fn cmd_reduce_attr(
    cnf: &Path,
    output: Option<&Path>,
    stitched_out: Option<&Path>,
    provenance: Option<&Path>,
    format: Format,
) -> Result<u8> {
    let f = read_cnf(cnf)?;
    let art = sat_to_attractor(&f)?;
    let set_doc = format!(
        "# 2-attractor reduction of a (3,B2) formula: n {} m {}\n# predicted {}\n{}",
        f.num_vars,
        f.num_clauses(),
        art.predicted_set_size,
        textio::format_instance(&art.set)
    );
    let stitched_doc = format!(
        "# stitched 2-attractor reduction: n {} m {}\n# predicted {}\n{}",
        f.num_vars,
        f.num_clauses(),
        art.predicted_stitched_size,
        textio::format_instance(&art.stitched.target)
    );
    if let Some(path) = stitched_out {
        std::fs::write(path, &stitched_doc)?;
    }
    if let Some(path) = provenance {
        let mut p = format!(
            "predicted-set {}\npredicted-stitched {}\nstitch-offset {}\n",
            art.predicted_set_size, art.predicted_stitched_size, art.stitched.size_offset
        );
        for a in 1..=f.num_vars {
            p.push_str(&format!("string {} positive x{a}\n", art.positive_string(a)));
            p.push_str(&format!("string {} negative x{a}\n", art.negative_string(a)));
        }
        for j in 1..=3 {
            p.push_str(&format!("string {} aux L{j}\n", art.aux_string(j, false)));
            p.push_str(&format!("string {} aux ~L{j}\n", art.aux_string(j, true)));
        }
        std::fs::write(path, p)?;
    }
    let report = format!(
        "strings {}\ntotal-length {}\npredicted-set {}\npredicted-stitched {}\n",
        art.set.num_strings(),
        art.set.total_len(),
        art.predicted_set_size,
        art.predicted_stitched_size
    );
    let jdoc = json!({
        "command": "reduce sat2attr",
        "strings": art.set.num_strings(), "total_length": art.set.total_len(),
        "predicted_set": art.predicted_set_size,
        "predicted_stitched": art.predicted_stitched_size,
        "set": set_doc, "stitched": stitched_doc,
    });
    match output {
        Some(path) => {
            std::fs::write(path, &set_doc)?;
            emit(format, report, jdoc);
        }
        None => emit(format, set_doc.clone(), jdoc),
    }
    Ok(0)
}

fn cmd_certify(cmd: &CertifyCmd, format: Format) -> Result<u8> {
    match cmd {
        CertifyCmd::Asg2cover { cnf, assignment } => {
            let f = read_cnf(cnf)?;
            let art = sat_to_cec(&f)?;
            let asg = Assignment::parse(assignment)?;
            let sel = assignment_to_cover(&art, &asg)?;
            emit(
                format,
                format!("size {}\ncover {}\npredicted {}\n", sel.len(), sel, art.predicted_cover_size),
                json!({
                    "command": "certify asg2cover", "size": sel.len(),
                    "cover": sel.to_string(), "predicted": art.predicted_cover_size,
                }),
            );
        }
        CertifyCmd::Cover2asg { cnf, cover } => {
            let f = read_cnf(cnf)?;
            let art = sat_to_cec(&f)?;
            let sel = EdgeSelection::parse(cover)?;
            let asg = cover_to_assignment(&art, &sel)?;
            emit(
                format,
                format!("assignment {asg}\n"),
                json!({"command": "certify cover2asg", "assignment": asg.to_string()}),
            );
        }
        CertifyCmd::Asg2marking { cnf, assignment } => {
            let f = read_cnf(cnf)?;
            let art = sat_to_attractor(&f)?;
            let asg = Assignment::parse(assignment)?;
            let marking = assignment_to_marking(&art, &asg)?;
            emit(
                format,
                format!(
                    "size {}\nmarking {}\npredicted {}\n",
                    marking.len(),
                    marking,
                    art.predicted_set_size
                ),
                json!({
                    "command": "certify asg2marking", "size": marking.len(),
                    "marking": marking.to_string(), "predicted": art.predicted_set_size,
                }),
            );
        }
        CertifyCmd::Marking2asg { cnf, marking } => {
            let f = read_cnf(cnf)?;
            let art = sat_to_attractor(&f)?;
            let m = Marking::parse(marking, Shape::Set)?;
            let asg = marking_to_assignment(&art, &m)?;
            emit(
                format,
                format!("assignment {asg}\n"),
                json!({"command": "certify marking2asg", "assignment": asg.to_string()}),
            );
        }
    }
    Ok(0)
}

fn cmd_experiment_gap(
    vars: usize,
    trials: usize,
    seed: u64,
    budget: u64,
    output: Option<&Path>,
    format: Format,
) -> Result<u8> {
    if trials == 0 {
        return Err(Error::InvalidParameter("need at least one trial".into()));
    }
    let mut csv = String::from("seed,n,m,sat,u,predicted,exact,lower,upper,within_bounds\n");
    let mut rows_json = Vec::new();
    for t in 0..trials {
        let row = gap_trial(vars, seed + t as u64, budget)?;
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            row.seed,
            row.n,
            row.m,
            row.sat,
            row.u,
            row.predicted,
            row.exact,
            row.lower,
            row.upper,
            row.within_bounds
        ));
        rows_json.push(json!({
            "seed": row.seed, "n": row.n, "m": row.m, "sat": row.sat, "u": row.u,
            "predicted": row.predicted, "exact": row.exact,
            "lower": row.lower, "upper": row.upper, "within_bounds": row.within_bounds,
        }));
    }
    // budget is echoed on stderr so stdout stays pure CSV
    eprintln!("budget {budget}");
    let jdoc = json!({
        "command": "experiment gap", "vars": vars, "trials": trials,
        "seed": seed, "budget": budget, "rows": rows_json, "csv": csv,
    });
    match output {
        Some(path) => {
            std::fs::write(path, &csv)?;
            emit(
                format,
                format!("trials {trials}\nwritten {}\n", path.display()),
                jdoc,
            );
        }
        None => emit(format, csv.clone(), jdoc),
    }
    Ok(0)
}
