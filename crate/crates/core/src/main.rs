use clap::{Args, Parser, Subcommand, ValueEnum};
use reconfig::apfree::{self, APSet};
use reconfig::constructions::{self, BuildReport};
use reconfig::engine::DEFAULT_NODE_CAP;
use reconfig::io::{self, Format};
use reconfig::search;
use reconfig::verify::{self, Parity};
use reconfig::{Engine, Error, Graph, IndependentSet, ReconfigRule};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_FAILURE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_CAPPED: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "reconfig", version, about = "Independent-set reconfiguration toolkit")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of configuration-graph nodes to explore.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_CAP)]
    cap: usize,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an extremal graph and its report.
    Construct {
        #[command(subcommand)]
        which: Construction,
        /// Write PREFIX.edges and PREFIX.report.json instead of printing.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
        /// Also measure the distance between the report's endpoints.
        #[arg(long, global = true)]
        measure: bool,
    },
    /// Largest component diameter of R_k(G).
    Diameter {
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "tj")]
        rule: ReconfigRule,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Whether one independent pair can reach another.
    Decide2 {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',')]
        from: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        to: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Algo::Fast)]
        algo: Algo,
        /// Include a shortest transformation when one exists.
        #[arg(long)]
        witness: bool,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Search small graphs for the largest R_k diameter.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "tj")]
        rule: ReconfigRule,
        #[arg(long, conflicts_with = "random")]
        exhaustive: bool,
        /// Number of random candidates.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Run a named structural check.
    Verify {
        #[command(subcommand)]
        check: Check,
    },
    /// 3-AP-free subsets of [1, n].
    Apset {
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = ApMethod::Best)]
        method: ApMethod,
        /// Largest n solved exactly.
        #[arg(long, default_value_t = 40)]
        limit: u64,
    },
}

#[derive(Subcommand)]
enum Construction {
    /// Complement of the path on n vertices (k = 2).
    CompPath {
        #[arg(long)]
        n: usize,
    },
    /// Circulant graph on Z_p minus 0 for a 3-AP-free S (k = 3).
    Circulant {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',')]
        s: Vec<u64>,
    },
    /// Glued circulant components within a vertex budget (k = 3).
    K3 {
        #[arg(long)]
        budget: usize,
    },
    /// Toll-booth extensions of the complement of a path.
    Toll {
        #[arg(long, default_value_t = 4)]
        base: usize,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        #[arg(long, default_value_t = 1)]
        booths: usize,
    },
    /// One triple step on the complement of a path (k = 2 -> 5).
    Triple {
        #[arg(long, default_value_t = 4)]
        base: usize,
        #[arg(long)]
        p: u64,
    },
    /// Any k >= 3 within a vertex budget.
    General {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        budget: usize,
    },
}

#[derive(Args)]
struct GraphArg {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Args)]
struct Endpoints {
    #[arg(long, value_delimiter = ',')]
    from: Vec<usize>,
    #[arg(long, value_delimiter = ',')]
    to: Vec<usize>,
}

#[derive(Subcommand)]
enum Check {
    /// Parity families of a shortest R_3 sequence are (6,3)-free. Uses the
    /// circulant graph for --p/--s, or --graph with --from/--to.
    #[command(name = "63-free")]
    SixThree {
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, value_delimiter = ',')]
        from: Vec<usize>,
        #[arg(long, value_delimiter = ',')]
        to: Vec<usize>,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, value_delimiter = ',')]
        s: Vec<u64>,
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
    },
    /// R_k(G) is a single path.
    ConfigPath {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        k: usize,
    },
    /// Steps of a shortest sequence have distinct intersections.
    UpperBoundMap {
        #[command(flatten)]
        graph: GraphArg,
        #[command(flatten)]
        ends: Endpoints,
    },
    /// Independent sets meeting the junctions of the glued k = 3 graph.
    ClaimInter {
        #[arg(long, default_value_t = 47)]
        budget: usize,
    },
    /// R_3 of the circulant graph is |S| paths of p - 3 triples.
    CirculantStructure {
        #[arg(long)]
        p: u64,
        #[arg(long, value_delimiter = ',')]
        s: Vec<u64>,
    },
    /// Add edges while the largest R_3 diameter is unchanged.
    Saturate {
        #[command(flatten)]
        graph: GraphArg,
        /// Write the saturated graph here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Fast,
    Naive,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ApMethod {
    Best,
    Exact,
    Behrend,
    Sphere,
    Greedy,
    Odd4,
    Odd8,
}

/// Command failure with its exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Capped { .. } => EXIT_CAPPED,
            Error::Io(_) => EXIT_FAILURE,
            _ => EXIT_PRECONDITION,
        };
        Failure { code, msg: e.to_string() }
    }
}

type CmdResult = std::result::Result<u8, Failure>;

fn print(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("json values serialize");
    // a closed reader (e.g. `| head`) is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn load(path: &Path, format: Option<Format>) -> reconfig::Result<Graph> {
    io::read_graph(path, format)
}

fn set(g: &Graph, v: &[usize]) -> reconfig::Result<IndependentSet> {
    IndependentSet::new(g, v.to_vec())
}

fn construct(which: &Construction, out: Option<&Path>, measure: bool, cap: usize) -> CmdResult {
    let (g, report): (Graph, BuildReport) = match *which {
        Construction::CompPath { n } => constructions::complement_path(n)?,
        Construction::Circulant { p, ref s } => constructions::circulant_ap_graph(p, s)?,
        Construction::K3 { budget } => constructions::build_k3_extremal(budget, cap)?,
        Construction::Toll { base, steps, booths } => constructions::iterate_toll(base, steps, booths)?,
        Construction::Triple { base, p } => {
            let (g, r) = constructions::complement_path(base)?;
            constructions::triple_extend(&g, 2, &r.start, &r.target, p, None, cap)?
        }
        Construction::General { k, budget } => constructions::build_general(k, budget, cap)?,
    };
    let mut report_json = serde_json::to_value(&report).expect("report serializes");
    if measure {
        let d = report.measure_distance(&g, cap)?;
        report_json["measured_distance"] = json!(d);
        report_json["claim_holds"] = json!(d.map(|d| report.claim.holds_for(d)));
    }
    match out {
        Some(prefix) => {
            let edges = prefix.with_extension("edges");
            let rep = prefix.with_extension("report.json");
            io::write_graph(&g, &edges, Format::EdgeList)?;
            let text = serde_json::to_string_pretty(&report_json).expect("json values serialize");
            std::fs::write(&rep, text + "\n").map_err(Error::from)?;
            print(&json!({ "graph": edges, "report": rep }));
        }
        None => print(&json!({ "graph": io::to_edge_list_string(&g), "report": report_json })),
    }
    Ok(0)
}

fn decide2(g: &Graph, from: &[usize], to: &[usize], algo: Algo, witness: bool, cap: usize) -> CmdResult {
    let (a, b) = (set(g, from)?, set(g, to)?);
    let mut out = json!({ "from": a, "to": b });
    let mut code = 0;
    let reachable = match algo {
        Algo::Fast => verify::decide_k2_fast(g, &a, &b)?,
        Algo::Naive => verify::decide_k2_naive(g, &a, &b)?,
        Algo::Both => {
            let fast = verify::decide_k2_fast(g, &a, &b)?;
            let naive = verify::decide_k2_naive(g, &a, &b)?;
            out["fast"] = json!(fast);
            out["naive"] = json!(naive);
            out["agree"] = json!(fast == naive);
            if fast != naive {
                code = EXIT_FAILURE;
            }
            naive
        }
    };
    out["reachable"] = json!(reachable);
    if witness {
        out["sequence"] = json!(verify::k2_witness(g, &a, &b, cap)?);
    }
    print(&out);
    Ok(code)
}

fn verdict(check: &str, pass: bool, witness: Value, details: Value) -> CmdResult {
    print(&json!({ "check": check, "pass": pass, "witness": witness, "details": details }));
    Ok(if pass { 0 } else { EXIT_FAILURE })
}

fn run_check(check: &Check, cap: usize) -> CmdResult {
    match check {
        Check::SixThree { graph, from, to, p, s, parity } => {
            let (g, a, b) = match (graph, p) {
                (Some(path), _) => {
                    let g = load(path, None)?;
                    let (a, b) = (set(&g, from)?, set(&g, to)?);
                    (g, a, b)
                }
                (None, Some(p)) => {
                    let (g, r) = constructions::circulant_ap_graph(*p, s)?;
                    (g, r.start, r.target)
                }
                (None, None) => {
                    return Err(Failure { code: EXIT_USAGE, msg: "63-free needs --graph or --p".into() })
                }
            };
            let seq = Engine::new(&g, 3, ReconfigRule::TokenJumping)?
                .with_cap(cap)
                .shortest_sequence(&a, &b)?
                .ok_or_else(|| Error::Precondition(format!("{a} and {b} are not connected in R_3")))?;
            let parities: Vec<Parity> = match parity {
                Some(ParityArg::Even) => vec![Parity::Even],
                Some(ParityArg::Odd) => vec![Parity::Odd],
                None => vec![Parity::Even, Parity::Odd],
            };
            let mut pass = true;
            let mut witness = Value::Null;
            let mut sizes = serde_json::Map::new();
            for par in parities {
                let h = verify::extract_63(&g, &seq, par, cap)?;
                sizes.insert(format!("{par:?}").to_lowercase(), json!(h.len()));
                if let Some(w) = h.find_63_violation() {
                    pass = false;
                    witness = json!(w);
                }
            }
            verdict("63-free", pass, witness, json!({ "steps": seq.steps(), "hyperedges": sizes }))
        }
        Check::ConfigPath { graph, k } => {
            let g = load(&graph.graph, graph.format)?;
            let v = verify::is_config_path(&g, *k, cap)?;
            verdict("config-path", v.is_path, json!(v.reason), json!(v))
        }
        Check::UpperBoundMap { graph, ends } => {
            let g = load(&graph.graph, graph.format)?;
            let (a, b) = (set(&g, &ends.from)?, set(&g, &ends.to)?);
            let seq = Engine::new(&g, a.k(), ReconfigRule::TokenJumping)?
                .with_cap(cap)
                .shortest_sequence(&a, &b)?
                .ok_or_else(|| Error::Precondition(format!("{a} and {b} are not connected")))?;
            let v = verify::verify_upper_bound_mapping(&g, &seq, cap)?;
            verdict("upper-bound-map", v.pass(), json!(v.collision), json!(v))
        }
        Check::ClaimInter { budget } => {
            let (g, r) = constructions::build_k3_extremal(*budget, cap)?;
            let v = constructions::check_claim_inter(&g, 3, &r.junctions, cap)?;
            verdict("claim-inter", v.ok(), json!(v.violations.first()), json!(v))
        }
        Check::CirculantStructure { p, s } => {
            let v = verify::check_circulant_structure(*p, s, cap)?;
            verdict("circulant-structure", v.pass(), json!(v.unexpected.first()), json!(v))
        }
        Check::Saturate { graph, out } => {
            let g = load(&graph.graph, graph.format)?;
            let before = Engine::new(&g, 3, ReconfigRule::TokenJumping)?.with_cap(cap).max_component_diameter()?;
            let h = verify::saturate_to_path(&g, cap)?;
            let v = verify::is_config_path(&h, 3, cap)?;
            let pass = v.is_path && v.diameter == before.diameter;
            if let Some(path) = out {
                io::write_graph(&h, path, Format::EdgeList)?;
            }
            let added = h.edge_count() - g.edge_count();
            verdict(
                "saturate",
                pass,
                json!(io::to_edge_list_string(&h)),
                json!({ "diameter_before": before.diameter, "after": v, "edges_added": added }),
            )
        }
    }
}

fn apset(n: u64, method: ApMethod, limit: u64) -> CmdResult {
    let (s, label, params): (APSet, &str, Value) = match method {
        ApMethod::Best => {
            let (s, m) = apfree::best_available(n, limit);
            (s, "best", json!({ "used": m }))
        }
        ApMethod::Exact => (apfree::max_3ap_free_with_limit(n, limit)?, "exact", Value::Null),
        ApMethod::Behrend => {
            let (s, p) = apfree::behrend_set(n);
            (s, "behrend", json!(p))
        }
        ApMethod::Sphere => {
            let (s, p) = apfree::sphere_set(n);
            (s, "sphere", json!(p))
        }
        ApMethod::Greedy => (apfree::greedy_3ap_free(n), "greedy", Value::Null),
        ApMethod::Odd4 => (apfree::odd_3ap_free(n, 4)?, "odd4", Value::Null),
        ApMethod::Odd8 => (apfree::odd_3ap_free(n, 8)?, "odd8", Value::Null),
    };
    // |S| = n / exp(c sqrt(ln n))
    let fitted_c = (n > 1 && !s.is_empty()).then(|| {
        let ln = (n as f64).ln();
        (n as f64 / s.len() as f64).ln() / ln.sqrt()
    });
    print(&json!({
        "n": n,
        "method": label,
        "size": s.len(),
        "elements": s.elements(),
        "params": params,
        "fitted_c": fitted_c,
    }));
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    let cap = cli.cap;
    match &cli.cmd {
        Cmd::Construct { which, out, measure } => construct(which, out.as_deref(), *measure, cap),
        Cmd::Diameter { graph, k, rule, format } => {
            let g = load(graph, *format)?;
            let report = Engine::new(&g, *k, *rule)?.with_cap(cap).max_component_diameter()?;
            print(&serde_json::to_value(&report).expect("report serializes"));
            Ok(if report.capped { EXIT_CAPPED } else { 0 })
        }
        Cmd::Decide2 { graph, from, to, algo, witness, format } => {
            let g = load(graph, *format)?;
            decide2(&g, from, to, *algo, *witness, cap)
        }
        Cmd::Search { n, k, rule, exhaustive, random } => {
            let result = match (exhaustive, random) {
                (_, Some(t)) => search::search_random(*n, *k, *rule, *t, cli.seed, cap)?,
                _ => search::search_exhaustive(*n, *k, *rule, cap)?,
            };
            print(&serde_json::to_value(&result).expect("result serializes"));
            Ok(0)
        }
        Cmd::Verify { check } => run_check(check, cap),
        Cmd::Apset { n, method, limit } => apset(*n, *method, *limit),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}
