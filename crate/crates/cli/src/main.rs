use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use oddcolor::corpus::{self, Generated};
use oddcolor::discharging::discharge;
use oddcolor::exact::{chi_o_with_witness, exists_odd_k_coloring, SearchConfig};
use oddcolor::minor_closed::odd_color_minor_closed_traced;
use oddcolor::reduction::MIN_K;
use oddcolor::{is_odd_coloring, odd_color_1planar, Coloring, Graph, OnePlaneGraph, Thresholds};

#[derive(Parser)]
#[command(name = "oddcolor", version, about = "Odd colorings of graphs and 1-plane embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a named graph or embedding.
    Gen(GenArgs),
    /// Check an embedding file against the 1-plane invariants.
    Validate { input: PathBuf },
    /// Compute an odd coloring.
    Color(ColorArgs),
    /// Check that a coloring is an odd coloring of a graph.
    Verify { graph: PathBuf, coloring: PathBuf },
    /// Odd chromatic number by exact search.
    Chi(ChiArgs),
    /// Initial and final charges of an embedding with the negativity audit.
    Discharge(DischargeArgs),
    /// Size, degeneracy, and degree and face histograms.
    Stats { input: PathBuf },
}

#[derive(Args)]
struct GenArgs {
    /// Generator name; see --list.
    #[arg(required_unless_present = "list")]
    name: Option<String>,
    /// Positional generator parameters.
    params: Vec<String>,
    /// Seed for random generators (required by them).
    #[arg(long)]
    seed: Option<u64>,
    /// Write to this file instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Emit DOT instead of JSON.
    #[arg(long)]
    dot: bool,
    /// List generators and their parameters.
    #[arg(long)]
    list: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Engine {
    Reduction,
    MinorClosed,
    Exact,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest palette tried by the exact search.
    #[arg(long, default_value_t = 64)]
    max_k: usize,
    /// Search nodes allowed per run.
    #[arg(long)]
    node_limit: Option<u64>,
    /// Worker threads for the exact search.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            max_k: self.max_k,
            node_limit: self.node_limit,
            jobs: self.jobs.max(1),
            ..SearchConfig::default()
        }
    }
}

#[derive(Args)]
struct ColorArgs {
    #[arg(long, value_enum, default_value = "reduction")]
    engine: Engine,
    /// Palette size (reduction: at least 23; exact: search exactly this palette).
    #[arg(long)]
    k: Option<usize>,
    /// Degeneracy bound for the minor-closed engine; the palette is 2d+1.
    #[arg(long)]
    d: Option<usize>,
    #[command(flatten)]
    search: SearchArgs,
    /// Write the coloring to this file instead of stdout.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Write the reduction or contraction trace to this file.
    #[arg(long)]
    trace: Option<PathBuf>,
    input: PathBuf,
}

#[derive(Args)]
struct ChiArgs {
    input: PathBuf,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
struct DischargeArgs {
    input: PathBuf,
    #[arg(long, default_value_t = MIN_K)]
    k: usize,
    /// Largest small odd degree; vertices of degree above it are big.
    #[arg(long, default_value_t = Thresholds::default().odd_max)]
    odd_max: usize,
}

#[derive(Debug, Error)]
enum CliError {
    /// Exit 1: the answer is no.
    #[error("{0}")]
    Negative(String),
    /// Exit 2.
    #[error("{0}")]
    Usage(String),
    /// Exit 3: a result failed its own check.
    #[error("{0}")]
    Internal(String),
    #[error(transparent)]
    Lib(#[from] oddcolor::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        use oddcolor::Error as E;
        match self {
            CliError::Negative(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 3,
            CliError::Lib(e) => match e {
                E::Inconclusive { .. }
                | E::AboveMaxK { .. }
                | E::NotDegenerate { .. }
                | E::HasK4Minor
                | E::PartialColoring(_)
                | E::ColorOutOfRange { .. } => 1,
                E::NoConfigFound(_) | E::ExtensionFailed { .. } | E::ProofStep(_) => 3,
                _ => 2,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

enum Input {
    Graph(Graph),
    Embedding(OnePlaneGraph),
}

impl Input {
    fn load(path: &Path) -> Result<Input> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        let is_embedding = serde_json::from_str::<Value>(&text)
            .map(|v| v.get("rotations").is_some())
            .unwrap_or(false);
        let located = |e: oddcolor::Error| CliError::Usage(format!("{}: {e}", path.display()));
        Ok(if is_embedding {
            Input::Embedding(corpus::embedding_from_str(&text).map_err(located)?)
        } else {
            Input::Graph(corpus::graph_from_str(&text).map_err(located)?)
        })
    }

    fn graph(&self) -> Result<Graph> {
        match self {
            Input::Graph(g) => Ok(g.clone()),
            Input::Embedding(e) => Ok(e.underlying_graph()?),
        }
    }

    fn embedding(self, path: &Path) -> Result<OnePlaneGraph> {
        match self {
            Input::Embedding(e) => Ok(e),
            Input::Graph(_) => Err(CliError::Usage(format!(
                "{}: expected an embedding file",
                path.display()
            ))),
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => {
            stdout(text);
            Ok(())
        }
    }
}

/// A closed pipe on stdout is not an error for a filter-style tool.
fn stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    stdout(&(serde_json::to_string_pretty(v).expect("serializable") + "\n"));
}

fn colors_json(c: &Coloring) -> Result<Value> {
    let colors = c.colors()?;
    Ok(Value::Object(
        colors
            .iter()
            .enumerate()
            .map(|(v, &col)| (v.to_string(), json!(col)))
            .collect(),
    ))
}

fn gen(args: GenArgs) -> Result<()> {
    if args.list {
        for (name, params) in corpus::GENERATORS {
            stdout(&format!("{name} {params}\n"));
        }
        return Ok(());
    }
    let name = args.name.as_deref().expect("required by clap");
    let params: Vec<&str> = args.params.iter().map(String::as_str).collect();
    let generated = corpus::gen(name, &params, args.seed)?;
    let text = match (&generated, args.dot) {
        (Generated::Graph(g), false) => corpus::graph_to_string(g),
        (Generated::Graph(g), true) => corpus::export_graph_dot(g),
        (Generated::Embedding(e), false) => corpus::embedding_to_string(e),
        (Generated::Embedding(e), true) => corpus::export_dot(e),
    };
    emit(args.out.as_deref(), &text)?;
    match &generated {
        Generated::Graph(g) => eprintln!("{name}: {} vertices, {} edges", g.n(), g.edge_count()),
        Generated::Embedding(e) => eprintln!("{name}: {} vertices, {} crossings", e.real_count(), e.crossing_count()),
    }
    Ok(())
}

fn validate(input: &Path) -> Result<()> {
    let e = Input::load(input)?.embedding(input)?;
    let violations = e.validate();
    print_json(&json!({ "valid": violations.is_empty(), "violations": violations }));
    if violations.is_empty() {
        eprintln!(
            "valid 1-plane embedding: {} vertices, {} crossings",
            e.real_count(),
            e.crossing_count()
        );
        Ok(())
    } else {
        Err(CliError::Negative(format!("{} violations", violations.len())))
    }
}

fn write_trace(path: Option<&Path>, trace: Value) -> Result<()> {
    if let Some(p) = path {
        let text = serde_json::to_string_pretty(&trace).expect("serializable") + "\n";
        emit(Some(p), &text)?;
    }
    Ok(())
}

fn color(args: ColorArgs) -> Result<()> {
    let input = Input::load(&args.input)?;
    let (g, c) = match args.engine {
        Engine::Reduction => {
            if args.d.is_some() {
                return Err(CliError::Usage("--d applies to the minor-closed engine".into()));
            }
            let t = Thresholds::with_k(args.k.unwrap_or(MIN_K))?;
            let e = input.embedding(&args.input)?;
            let (c, trace) = odd_color_1planar(&e, &t)?;
            eprintln!("{} reduction steps", trace.steps.len());
            write_trace(
                args.trace.as_deref(),
                serde_json::to_value(&trace).expect("serializable"),
            )?;
            (e.underlying_graph()?, c)
        }
        Engine::MinorClosed => {
            if args.k.is_some() {
                return Err(CliError::Usage("the minor-closed palette is 2d+1; use --d".into()));
            }
            let d = args
                .d
                .ok_or_else(|| CliError::Usage("--engine minor-closed needs --d".into()))?;
            let g = input.graph()?;
            let (c, trace) = odd_color_minor_closed_traced(&g, d)?;
            write_trace(
                args.trace.as_deref(),
                serde_json::to_value(&trace).expect("serializable"),
            )?;
            (g, c)
        }
        Engine::Exact => {
            if args.d.is_some() || args.trace.is_some() {
                return Err(CliError::Usage(
                    "--d and --trace do not apply to the exact engine".into(),
                ));
            }
            let g = input.graph()?;
            let cfg = args.search.config();
            let c = match args.k {
                Some(k) => exists_odd_k_coloring(&g, k, &cfg)?
                    .ok_or_else(|| CliError::Negative(format!("no odd {k}-coloring")))?,
                None => chi_o_with_witness(&g, &cfg)?.1.unwrap_or_else(|| Coloring::new(0, 1)),
            };
            (g, c)
        }
    };
    if !is_odd_coloring(&g, &c)? {
        return Err(CliError::Internal("the computed coloring fails verification".into()));
    }
    emit(args.out.as_deref(), &corpus::coloring_to_string(&c.colors()?))?;
    eprintln!("{} colors used (palette {}), verified odd", c.used_colors(), c.k());
    Ok(())
}

fn verify(graph: &Path, coloring: &Path) -> Result<()> {
    let g = Input::load(graph)?.graph()?;
    let colors =
        corpus::load_coloring(coloring).map_err(|e| CliError::Usage(format!("{}: {e}", coloring.display())))?;
    if colors.len() != g.n() {
        let msg = format!("coloring has {} vertices, graph has {}", colors.len(), g.n());
        print_json(&json!({ "odd": false, "reason": msg }));
        return Err(CliError::Negative(msg));
    }
    let k = colors.iter().copied().max().unwrap_or(1);
    let c = Coloring::from_colors(k, &colors)?;
    let improper: Vec<[usize; 2]> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| colors[u] == colors[v])
        .map(|(u, v)| [u, v])
        .collect();
    let no_odd: Vec<usize> = g
        .vertices()
        .filter(|&v| g.degree(v) > 0 && oddcolor::coloring::odd_status(&g, &c, v).odd_colors.is_empty())
        .collect();
    let odd = is_odd_coloring(&g, &c)?;
    print_json(&json!({
        "odd": odd,
        "colors_used": c.used_colors(),
        "improper_edges": improper,
        "no_odd_color": no_odd,
    }));
    if odd {
        eprintln!("odd coloring with {} colors", c.used_colors());
        Ok(())
    } else {
        Err(CliError::Negative(format!(
            "not an odd coloring: {} improper edges, {} vertices without an odd color",
            improper.len(),
            no_odd.len()
        )))
    }
}

fn chi(args: ChiArgs) -> Result<()> {
    let g = Input::load(&args.input)?.graph()?;
    let (k, witness) = chi_o_with_witness(&g, &args.search.config())?;
    let witness = match witness {
        Some(c) => colors_json(&c)?,
        None => json!({}),
    };
    print_json(&json!({ "chi_o": k, "witness": witness }));
    eprintln!("chi_o = {k}");
    Ok(())
}

fn discharge_cmd(args: DischargeArgs) -> Result<()> {
    let e = Input::load(&args.input)?.embedding(&args.input)?;
    let t = Thresholds {
        k: args.k,
        big: args.odd_max + 1,
        odd_max: args.odd_max,
    };
    t.check()?;
    let (initial, fin, report) = discharge(&e, &t)?;
    print_json(&json!({ "audit": report, "initial": initial, "final": fin }));
    eprintln!(
        "total charge {} before the rules, {} after; {} negative elements, {} unexplained",
        report.initial_total,
        report.final_total,
        report.entries.len(),
        report.unexplained().count()
    );
    Ok(())
}

fn histogram(values: impl IntoIterator<Item = usize>) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for v in values {
        *h.entry(v).or_insert(0) += 1;
    }
    h
}

fn stats(input: &Path) -> Result<()> {
    let loaded = Input::load(input)?;
    let g = loaded.graph()?;
    let mut out = json!({
        "vertices": g.n(),
        "edges": g.edge_count(),
        "connected": g.is_connected(),
        "degeneracy": g.degeneracy(),
        "degree_histogram": histogram(g.vertices().map(|v| g.degree(v))),
    });
    if let Input::Embedding(e) = &loaded {
        let faces = e.faces();
        out["crossings"] = json!(e.crossing_count());
        out["planarization"] = json!({
            "vertices": e.vertex_count(),
            "edges": e.edge_count(),
            "faces": faces.len(),
        });
        out["face_histogram"] = json!(histogram(faces.iter().map(|f| f.len())));
    }
    print_json(&out);
    eprintln!(
        "{} vertices, {} edges, degeneracy {}",
        g.n(),
        g.edge_count(),
        g.degeneracy()
    );
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Validate { input } => validate(&input),
        Command::Color(args) => color(args),
        Command::Verify { graph, coloring } => verify(&graph, &coloring),
        Command::Chi(args) => chi(args),
        Command::Discharge(args) => discharge_cmd(args),
        Command::Stats { input } => stats(&input),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
