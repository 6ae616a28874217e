use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hitset::catalog::trees;
use hitset::document::{join, Document};
use hitset::generators::{
    gadget_edge_glue, gadget_vertex_glue, gl_random_instance, random_graph, random_uniform_hypergraph,
    serialize_provenance, GLParams,
};
use hitset::io::{parse_graph, serialize_graph, serialize_unweighted};
use hitset::lp::solve_cover_lp;
use hitset::oracle::{exact_min_hitting_set, DEFAULT_CAP};
use hitset::pattern::construct_good_graph;
use hitset::pipeline::parse_solution_vertices;
use hitset::subgraph::build_copy_hypergraph;
use hitset::{
    baseline_solve, classify_pattern, solve, verify_solution, Classification, EnumerationBudget, Error, Pattern,
    Rational, Scalar, WeightedGraph,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_INTERNAL: u8 = 4;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "hitset", version, about = "Approximate and exact minimum-weight H-hitting sets")]
struct Cli {
    /// Maximum number of distinct pattern copies to enumerate.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    budget: usize,
    /// Seed for generators and the benchmark corpus.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Add the decomposition, colouring and rounding trace to `solve` output.
    #[arg(long, global = true)]
    explain: bool,
    /// Largest vertex count handed to the exact solver.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximate minimum-weight hitting set.
    Solve { graph: PathBuf, pattern: PathBuf },
    /// Exact minimum-weight hitting set (branch and bound, at most --cap vertices).
    Exact { graph: PathBuf, pattern: PathBuf },
    /// Classification, rooted decomposition and weighted gadget of a pattern.
    Analyze { pattern: PathBuf },
    /// Instance generators.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Checks that a solution document's vertices hit every copy.
    Verify { graph: PathBuf, pattern: PathBuf, solution: PathBuf },
    /// Baseline versus pipeline over a seeded corpus of random graphs and tree patterns.
    Bench {
        /// Number of corpus instances.
        #[arg(long, default_value_t = 30)]
        instances: usize,
        /// Largest host graph size.
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Glue a pattern copy onto every base edge.
    #[command(alias = "vc-gadget")]
    VcEdgeGadget(GadgetArgs),
    /// Glue a pattern copy onto every base vertex.
    VcVertexGadget(GadgetArgs),
    /// Planted clouds over a random uniform base hypergraph.
    Gl {
        #[arg(long)]
        pattern: PathBuf,
        /// Base vertex count.
        #[arg(long)]
        n: usize,
        /// Base hyperedge count.
        #[arg(long)]
        hyperedges: usize,
        /// Cloud size B.
        #[arg(long)]
        clouds: usize,
        /// Copies per hyperedge are lambda * B.
        #[arg(long, default_value_t = 1)]
        lambda: usize,
    },
    /// Erdős–Rényi graph.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
    },
}

#[derive(Args)]
struct GadgetArgs {
    #[arg(long)]
    base: PathBuf,
    #[arg(long)]
    pattern: PathBuf,
}

enum Failure {
    Lib(Error),
    Io(PathBuf, std::io::Error),
    Invalid,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid) => {
            println!("INVALID");
            ExitCode::from(EXIT_FAILURE)
        }
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(EXIT_FAILURE)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) => EXIT_PARSE,
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                Error::Invariant(_) => EXIT_INTERNAL,
                _ => EXIT_FAILURE,
            })
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let budget = EnumerationBudget::new(cli.budget);
    match &cli.command {
        Command::Solve { graph, pattern } => cmd_solve(cli, &read_graph(graph)?, &read_pattern(pattern)?, budget),
        Command::Exact { graph, pattern } => cmd_exact(&read_graph(graph)?, &read_pattern(pattern)?, cli.cap),
        Command::Analyze { pattern } => cmd_analyze(&read_pattern(pattern)?),
        Command::Gen(g) => cmd_gen(g, cli.seed),
        Command::Verify { graph, pattern, solution } => {
            let g = read_graph(graph)?;
            let h = read_pattern(pattern)?;
            let text = read(solution)?;
            let set = parse_solution_vertices(&text)
                .ok_or_else(|| Error::InvalidInput("solution has no readable 'vertices' field".into()))?;
            if set.iter().any(|&v| v >= g.n()) || !verify_solution(&g.graph, &h, &set) {
                return Err(Failure::Invalid);
            }
            Ok("VALID\n".into())
        }
        Command::Bench { instances, max_n } => cmd_bench(*instances, *max_n, cli.seed, cli.cap, budget),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_graph(path: &Path) -> Result<WeightedGraph, Failure> {
    Ok(parse_graph(&read(path)?).map_err(Error::from)?)
}

fn read_pattern(path: &Path) -> Result<Pattern, Failure> {
    Ok(Pattern::new(read_graph(path)?.graph)?)
}

fn cmd_solve(cli: &Cli, g: &WeightedGraph, h: &Pattern, budget: EnumerationBudget) -> Outcome {
    let mut s = solve(g, h, budget)?;
    if g.n() <= cli.cap {
        let (_, opt) = exact_min_hitting_set(g, h, cli.cap)?;
        s = s.with_optimum(&opt);
    }
    let mut doc = s.to_document();
    if cli.explain {
        s.explain(&mut doc);
    }
    Ok(doc.to_string())
}

fn cmd_exact(g: &WeightedGraph, h: &Pattern, cap: usize) -> Outcome {
    let (set, weight) = exact_min_hitting_set(g, h, cap)?;
    let mut doc = Document::new();
    doc.set("method", "exact").set("vertices", join(&set)).set("weight", weight);
    Ok(doc.to_string())
}

fn cmd_analyze(h: &Pattern) -> Outcome {
    let class = classify_pattern(h);
    let k = h.k() as i64;
    let mut doc = Document::new();
    doc.set("classification", class.name()).set("k", k);
    match &class {
        Classification::SemiSymmetric(d) => {
            let gadget = construct_good_graph::<Rational>(h, d);
            let branches: Vec<String> = d.branches.iter().map(|b| format!("{{{}}}", join(b))).collect();
            let embedding: Vec<String> = d.embedding.iter().map(|(a, b)| format!("{a}->{b}")).collect();
            let weighted = WeightedGraph::new(gadget.graph.clone(), gadget.weights.clone())?;
            doc.set("root", d.root)
                .set("branches", join(branches))
                .set("witness", format!("{} {}", d.witness.0, d.witness.1))
                .set("witness_embedding", join(embedding))
                .set("gadget", serialize_graph(&weighted).trim_end())
                .set("gadget_total_weight", gadget.total_weight())
                .set("gadget_factor", &gadget.factor)
                .set("guaranteed_factor", Rational::from_int(k) - Rational::half());
        }
        _ => {
            doc.set("guaranteed_factor", k);
        }
    }
    Ok(doc.to_string())
}

fn cmd_gen(g: &GenCommand, seed: u64) -> Outcome {
    match g {
        GenCommand::VcEdgeGadget(a) | GenCommand::VcVertexGadget(a) => {
            let base = read_graph(&a.base)?.graph;
            let h = read_pattern(&a.pattern)?;
            let (out, prov) = match g {
                GenCommand::VcEdgeGadget(_) => gadget_edge_glue(&base, &h)?,
                _ => gadget_vertex_glue(&base, &h)?,
            };
            Ok(serialize_unweighted(&out) + &serialize_provenance(&prov))
        }
        GenCommand::Gl { pattern, n, hyperedges, clouds, lambda } => {
            let h = read_pattern(pattern)?;
            let edges = random_uniform_hypergraph(*n, *hyperedges, h.k(), seed)?;
            let params = GLParams { n: *n, hyperedges: edges, clouds: *clouds, lambda: *lambda, seed };
            Ok(gl_random_instance(&h, &params)?.serialize())
        }
        GenCommand::Random { n, p } => Ok(serialize_unweighted(&random_graph(*n, *p, seed)?)),
    }
}

fn ratio(num: &Rational, den: Option<&Rational>) -> String {
    match den {
        Some(d) if *d != Rational::from_int(0) => (num.clone() / d.clone()).to_string(),
        _ => "-".into(),
    }
}

/// One row per corpus instance: tree patterns on 3..=5 vertices over random
/// graphs with `p` in {1/5, 2/5, 3/5}.
fn cmd_bench(instances: usize, max_n: usize, seed: u64, cap: usize, budget: EnumerationBudget) -> Outcome {
    let patterns: Vec<Pattern> =
        (3..=5).flat_map(trees).map(|t| Pattern::new(t).expect("trees are connected")).collect();
    let probabilities = [0.2, 0.4, 0.6];
    let sizes: Vec<usize> = (6..=max_n.max(6)).step_by(2).collect();
    let mut out = String::from("id\tk\tn\tbaseline_weight\tpipeline_weight\texact_opt\ttau_star\tbaseline_ratio\tpipeline_ratio\tbaseline_factor\tpipeline_factor\n");
    for id in 0..instances {
        let h = &patterns[id % patterns.len()];
        let n = sizes[(id / patterns.len()) % sizes.len()];
        let p = probabilities[id % probabilities.len()];
        let graph = random_graph(n, p, seed.wrapping_add(id as u64))?;
        let g: WeightedGraph = WeightedGraph::unit(graph);
        let base = baseline_solve(&g, h, budget)?;
        let pipe = solve(&g, h, budget)?;
        let opt = if n <= cap { Some(exact_min_hitting_set(&g, h, cap)?.1) } else { None };
        let hyper = build_copy_hypergraph(&g.graph, h.graph(), budget)?;
        let tau = solve_cover_lp(&hyper, g.weights())?.0.value;
        let opt_text = opt.as_ref().map_or_else(|| "-".to_string(), |o| o.to_string());
        let _ = writeln!(
            out,
            "{id}\t{}\t{n}\t{}\t{}\t{opt_text}\t{tau}\t{}\t{}\t{}\t{}",
            h.k(),
            base.weight,
            pipe.weight,
            ratio(&base.weight, opt.as_ref()),
            ratio(&pipe.weight, opt.as_ref()),
            base.guaranteed_factor,
            pipe.guaranteed_factor
        );
    }
    Ok(out)
}
