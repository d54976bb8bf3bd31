//! `propfact`: command-line workbench for graph property factorisations.
//!
//! Exit status: 0 when every verdict holds, 1 when a refutation was found,
//! 2 for usage or input errors, 3 when a resource cap was hit.

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use propfact_core::config::{OutputFormat, RunConfig};
use propfact_core::decomposition::{
    self as decomp, ind_parts, is_strict, maximal_graphs, p_decomposability, strict_extension, strictness_witness,
    StrictMode,
};
use propfact_core::enumerate::enumerate_graphs;
use propfact_core::graph6::{self, parse_graph};
use propfact_core::partition::{enumerate_partitions, find_partition, is_uniquely_partitionable, Uniqueness};
use propfact_core::property::PropertySpec;
use propfact_core::property::check_closure;
use propfact_core::suite::run_suite;
use propfact_core::upg::build_g_star;
use propfact_core::{verify, Error, Graph, Labeling, Property};
use serde_json::json;

use output::{graph as graph_json, Report};

#[derive(Parser)]
#[command(name = "propfact", version, about = "Graph property factorisation workbench")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Worker threads; 0 uses one per core. Never changes a verdict.
    #[arg(long, default_value_t = 0, global = true)]
    parallelism: usize,
    /// Largest graph order enumerated exhaustively.
    #[arg(long, default_value_t = 10, global = true)]
    order_cap: usize,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Graph utilities: encoding, canonical form, enumeration.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Membership, invariants and closure audits of a property.
    #[command(subcommand)]
    Property(PropertyCmd),
    /// Vertex partitions into members of given properties (generalized colourings).
    #[command(subcommand)]
    Partition(PartitionCmd),
    /// Ind-parts, maximal and strict graphs, P-decompositions.
    #[command(subcommand)]
    Decomp(DecompCmd),
    /// Uniquely partitionable supergraph construction.
    #[command(subcommand)]
    Upg(UpgCmd),
    /// Bounded-order verification of factorisation statements.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Order, edges, canonical graph6 and connectivity of a graph.
    Info {
        #[arg(long)]
        graph: String,
    },
    /// All graphs of a given order up to isomorphism.
    Enum {
        #[arg(long)]
        order: usize,
    },
}

#[derive(Subcommand)]
enum PropertyCmd {
    /// Whether a graph belongs to the property.
    Check {
        #[arg(long)]
        property: PathBuf,
        #[arg(long)]
        graph: String,
    },
    /// Completeness c(P) and the least non-member order f(P).
    Stats {
        #[arg(long)]
        property: PathBuf,
    },
    /// Audits the declared closure flags on all graphs up to the bound.
    Closure {
        #[arg(long)]
        property: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: usize,
    },
}

#[derive(Args)]
struct PartitionArgs {
    #[arg(long)]
    graph: String,
    /// One file per factor, in order.
    #[arg(long = "property", required = true, num_args = 1..)]
    properties: Vec<PathBuf>,
}

#[derive(Subcommand)]
enum PartitionCmd {
    /// First partition found, if any.
    Find(PartitionArgs),
    /// Every partition, in search order.
    Enum(PartitionArgs),
    /// Whether all partitions induce the same unordered partition.
    Unique(PartitionArgs),
}

#[derive(Subcommand)]
enum DecompCmd {
    /// Indecomposable join factors of a graph.
    Indparts {
        #[arg(long)]
        graph: String,
    },
    /// Edge-maximal members of a given order.
    Maximal {
        #[arg(long)]
        property: PathBuf,
        #[arg(long)]
        order: usize,
    },
    /// Strictness of a graph, or a strict member supergraph with --extend.
    Strict {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        property: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Induced)]
        mode: Mode,
        #[arg(long)]
        extend: bool,
    },
    /// Decomposability number of a graph, or of the property when --graph is omitted.
    Decnumber {
        #[arg(long)]
        graph: Option<String>,
        #[arg(long)]
        property: PathBuf,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Hereditary,
    Induced,
}

#[derive(Subcommand)]
enum UpgCmd {
    /// Builds a strict supergraph whose decompositions all extend d0.
    Build {
        #[arg(long)]
        graph: String,
        /// Parts as JSON, e.g. [[0,2],[1]].
        #[arg(long)]
        d0: String,
        #[arg(long)]
        property: PathBuf,
        /// Number of parts; defaults to the part count of d0.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 2)]
        kmax: usize,
        #[arg(long, default_value_t = 3)]
        kcap: usize,
        #[arg(long, default_value_t = 60)]
        ordercap: usize,
    },
}

#[derive(Args)]
struct Bounds {
    #[arg(long, default_value_t = 6)]
    bound: usize,
    #[arg(long, default_value_t = 2)]
    kmax: usize,
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Maximal graphs of a product split as joins of maximal factor graphs.
    #[command(visible_alias = "maximal-joins")]
    Lemma21 {
        /// Factor files.
        #[arg(long = "property", required = true, num_args = 1..)]
        properties: Vec<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Member supergraphs of maximal graphs have no more ind-parts.
    #[command(visible_alias = "supergraph-dc")]
    Gen0 {
        #[arg(long)]
        property: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Respect propagation in the arrow graph over (G, d0).
    Construction1 {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        d0: String,
        #[arg(long)]
        property: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Every factorisation into irreducible factors has the same factors.
    Uft {
        #[arg(long)]
        property: PathBuf,
        /// A candidate factorisation as comma-separated files; repeatable.
        #[arg(long = "factors", required = true)]
        factorizations: Vec<String>,
        /// Extra catalog properties for the irreducibility probe.
        #[arg(long)]
        catalog: Vec<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// A property equals the product of the given factors.
    Factorization {
        #[arg(long)]
        property: PathBuf,
        #[arg(long = "factor", required = true, num_args = 1..)]
        factors: Vec<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Cancellation of a common factor A from A∘B = A∘C.
    Cancellation {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        c: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Runs a whole suite and prints a summary.
    All {
        #[arg(long, value_enum, default_value_t = Suite::Paper)]
        suite: Suite,
        #[command(flatten)]
        bounds: Bounds,
        #[arg(long, default_value_t = 3)]
        kcap: usize,
        #[arg(long, default_value_t = 60)]
        ordercap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.parallelism).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(report) => {
            let text = report.render(cli.global.format);
            let written = match &cli.global.report {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if report.refuted { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_limit() { 3 } else { 2 })
        }
    }
}

fn load(path: &Path) -> Result<Property, Error> {
    PropertySpec::load(path)
}

fn load_all(paths: &[PathBuf]) -> Result<Vec<Property>, Error> {
    paths.iter().map(|p| load(p)).collect()
}

fn labeling(g: &Graph, text: &str) -> Result<Labeling, Error> {
    let parts: Vec<Vec<usize>> =
        serde_json::from_str(text).map_err(|e| Error::Precondition(format!("malformed d0 {text:?}: {e}")))?;
    Labeling::from_vecs(g.clone(), &parts)
}

fn check_bound(bound: usize, cap: usize) -> Result<(), Error> {
    RunConfig { bound, order_cap: cap, ..RunConfig::default() }.validate()
}

fn run(cli: &Cli) -> Result<Report, Error> {
    let cap = cli.global.order_cap;
    match &cli.command {
        Command::Graph(cmd) => graph_cmd(cmd, cap),
        Command::Property(cmd) => property_cmd(cmd, cap),
        Command::Partition(cmd) => partition_cmd(cmd),
        Command::Decomp(cmd) => decomp_cmd(cmd, cap),
        Command::Upg(UpgCmd::Build { graph, d0, property, n, kmax, kcap, ordercap }) => {
            let g = parse_graph(graph)?;
            let d0 = labeling(&g, d0)?;
            let p = load(property)?;
            let n = n.unwrap_or(d0.part_count());
            let cert = build_g_star(&g, &d0, &p, n, *kmax, *kcap, *ordercap)?;
            let mut report = Report::new("upg build", &cert);
            if let Some(r) = &cert.result {
                report.result["result_graph"] = graph_json(&r.graph);
            }
            report.result["decomposition_summary"] = json!(cert.decomposition_summary());
            report.refuted = cert.completed() && !cert.uniqueness_verified && cert.decompositions.is_some();
            Ok(report)
        }
        Command::Verify(cmd) => verify_cmd(cmd, cli, cap),
    }
}

fn graph_cmd(cmd: &GraphCmd, cap: usize) -> Result<Report, Error> {
    match cmd {
        GraphCmd::Info { graph } => {
            let g = parse_graph(graph)?;
            Ok(Report::new(
                "graph info",
                json!({
                    "graph": graph_json(&g),
                    "edges": g.edges(),
                    "canonical": graph6::encode(g.canonical_form().graph()),
                    "components": g.components().len(),
                    "dc": decomp::dc(&g),
                }),
            ))
        }
        GraphCmd::Enum { order } => {
            let graphs = enumerate_graphs(*order, cap)?;
            let list: Vec<String> = graphs.iter().map(graph6::encode).collect();
            let mut r = Report::new("graph enum", json!({ "order": order, "count": list.len(), "graphs": list }));
            r.text = Some(list.iter().map(|s| format!("{s}\n")).collect());
            Ok(r)
        }
    }
}

fn property_cmd(cmd: &PropertyCmd, cap: usize) -> Result<Report, Error> {
    match cmd {
        PropertyCmd::Check { property, graph } => {
            let p = load(property)?;
            let g = parse_graph(graph)?;
            Ok(Report::new(
                "property check",
                json!({ "property": p.to_string(), "graph": graph_json(&g), "member": p.contains(&g) }),
            ))
        }
        PropertyCmd::Stats { property } => {
            let p = load(property)?;
            let c = p.completeness(cap).map(Some).or_else(none_if_limit)?;
            let f = p.min_forbidden_order(cap).map(Some).or_else(none_if_limit)?;
            Ok(Report::new(
                "property stats",
                json!({ "property": p.to_string(), "order_cap": cap, "completeness": c, "min_forbidden_order": f }),
            ))
        }
        PropertyCmd::Closure { property, bound } => {
            check_bound(*bound, cap)?;
            let p = load(property)?;
            let report = check_closure(&p, *bound, cap)?;
            let cert = report.to_certificate();
            let mut r = Report::new("property closure", &report);
            r.refuted = cert.is_refuted();
            Ok(r)
        }
    }
}

/// Caps on invariants are reported as `null` rather than failing the command.
fn none_if_limit(e: Error) -> Result<Option<usize>, Error> {
    if e.is_resource_limit() {
        Ok(None)
    } else {
        Err(e)
    }
}

fn partition_cmd(cmd: &PartitionCmd) -> Result<Report, Error> {
    let (PartitionCmd::Find(a) | PartitionCmd::Enum(a) | PartitionCmd::Unique(a)) = cmd;
    let g = parse_graph(&a.graph)?;
    let props = load_all(&a.properties)?;
    Ok(match cmd {
        PartitionCmd::Find(_) => Report::new("partition find", json!({ "graph": graph_json(&g), "partition": find_partition(&g, &props) })),
        PartitionCmd::Enum(_) => {
            let all: Vec<Labeling> = enumerate_partitions(&g, &props).collect();
            Report::new("partition enum", json!({ "graph": graph_json(&g), "count": all.len(), "partitions": all }))
        }
        PartitionCmd::Unique(_) => {
            let value = match is_uniquely_partitionable(&g, &props) {
                Uniqueness::Unique(l) => json!({ "status": "unique", "partition": l }),
                Uniqueness::NotUnique(a, b) => json!({ "status": "not-unique", "partitions": [a, b] }),
                Uniqueness::NoPartition => json!({ "status": "no-partition" }),
            };
            Report::new("partition unique", json!({ "graph": graph_json(&g), "result": value }))
        }
    })
}

fn decomp_cmd(cmd: &DecompCmd, cap: usize) -> Result<Report, Error> {
    match cmd {
        DecompCmd::Indparts { graph } => {
            let g = parse_graph(graph)?;
            let d = ind_parts(&g);
            let parts: Vec<_> = d.parts.iter().zip(&d.part_sets).map(|(p, s)| json!({ "vertices": s, "graph": graph_json(p) })).collect();
            Ok(Report::new("decomp indparts", json!({ "graph": graph_json(&g), "dc": d.dc(), "parts": parts })))
        }
        DecompCmd::Maximal { property, order } => {
            let p = load(property)?;
            let list: Vec<_> = maximal_graphs(*order, &p, cap)?.iter().map(graph_json).collect();
            Ok(Report::new("decomp maximal", json!({ "property": p.to_string(), "order": order, "count": list.len(), "graphs": list })))
        }
        DecompCmd::Strict { graph, property, mode, extend } => {
            let g = parse_graph(graph)?;
            let p = load(property)?;
            let mode = match mode {
                Mode::Hereditary => StrictMode::Hereditary,
                Mode::Induced => StrictMode::Induced,
            };
            if *extend {
                let h = strict_extension(&g, &p, cap)?;
                return Ok(Report::new("decomp strict", json!({ "graph": graph_json(&g), "strict_extension": graph_json(&h) })));
            }
            let witness = strictness_witness(&g, &p, mode)?;
            Ok(Report::new(
                "decomp strict",
                json!({
                    "graph": graph_json(&g),
                    "mode": mode,
                    "strict": is_strict(&g, &p, mode)?,
                    "witness": witness.as_ref().map(graph_json),
                }),
            ))
        }
        DecompCmd::Decnumber { graph, property, bound, kmax } => {
            let p = load(property)?;
            match graph {
                Some(graph) => {
                    let g = parse_graph(graph)?;
                    let (dec, d) = p_decomposability(&g, &p, *kmax)?;
                    Ok(Report::new(
                        "decomp decnumber",
                        json!({ "graph": graph_json(&g), "k_max": kmax, "dec": dec, "decomposition": d.map(|d| d.labeling) }),
                    ))
                }
                None => {
                    check_bound(*bound, cap)?;
                    let cert = verify::decomposability_estimate(&p, *bound, *kmax, cap)?;
                    Ok(Report::certificates("decomp decnumber", &[cert]))
                }
            }
        }
    }
}

fn verify_cmd(cmd: &VerifyCmd, cli: &Cli, cap: usize) -> Result<Report, Error> {
    let one = |name: &str, cert: Certificate| Ok(Report::certificates(name, &[cert]));
    use propfact_core::Certificate;
    match cmd {
        VerifyCmd::Lemma21 { properties, bounds } => {
            check_bound(bounds.bound, cap)?;
            one("verify lemma21", verify::max_char_check(&load_all(properties)?, bounds.bound, cap)?)
        }
        VerifyCmd::Gen0 { property, bounds } => {
            check_bound(bounds.bound, cap)?;
            one("verify gen0", verify::gen0_check(&load(property)?, bounds.bound, cap)?)
        }
        VerifyCmd::Construction1 { graph, d0, property, bounds } => {
            let g = parse_graph(graph)?;
            let d0 = labeling(&g, d0)?;
            one("verify construction1", verify::construction_one_check(&g, &d0, &load(property)?, bounds.kmax, bounds.bound)?)
        }
        VerifyCmd::Uft { property, factorizations, catalog, bounds } => {
            check_bound(bounds.bound, cap)?;
            let p = load(property)?;
            let fs = factorizations
                .iter()
                .map(|list| list.split(',').map(|f| load(Path::new(f.trim()))).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let mut cat = verify::catalog_properties();
            cat.extend(load_all(catalog)?);
            one("verify uft", verify::unique_factorization_experiment(&p, &fs, &cat, bounds.bound, bounds.kmax, cap)?)
        }
        VerifyCmd::Factorization { property, factors, bounds } => {
            check_bound(bounds.bound, cap)?;
            one("verify factorization", verify::factorization_check(&load(property)?, &load_all(factors)?, bounds.bound, cap)?)
        }
        VerifyCmd::Cancellation { a, b, c, bounds } => {
            check_bound(bounds.bound, cap)?;
            one("verify cancellation", verify::cancellation_check(&load(a)?, &load(b)?, &load(c)?, bounds.bound, cap)?)
        }
        VerifyCmd::All { suite: Suite::Paper, bounds, kcap, ordercap } => {
            let cfg = RunConfig {
                order_cap: cap,
                bound: bounds.bound,
                k_max: bounds.kmax,
                k_cap: *kcap,
                construction_cap: *ordercap,
                parallelism: cli.global.parallelism,
                format: match cli.global.format {
                    Format::Json => OutputFormat::Json,
                    Format::Text => OutputFormat::Text,
                },
            };
            let suite = run_suite(&cfg)?;
            let mut r = Report::new("verify all", &suite);
            r.refuted = suite.summary.refuted > 0;
            r.text = Some(suite.to_text());
            Ok(r)
        }
    }
}
