//! Command-line front end: structure checks, approximate and exact solvers,
//! the minimality explorer, instance generation, batch statistics, and DOT
//! export. File formats and label conventions live in `sbss::instances`.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::json;

use sbss::connectivity::{
    articulation_points, is_biconnected, is_connected, is_strongly_connected,
    sbc_decomposition, strong_articulation_points,
};
use sbss::exact::{
    exact_2vcss_capped, exact_msbss_capped, exact_msccs_capped, minimalize, minimalize_shuffled,
    DEFAULT_ARC_CAP,
};
use sbss::graph::{ArcSubset, Digraph, VertexId};
use sbss::instances::{emit_dot, emit_edge_list, parse_edge_list, Family, GenSpec};
use sbss::solvers::{approx_msbss, augment_to_biconnected, combine_and_augment, SolveReport};

#[derive(Parser)]
#[command(
    name = "sbss",
    version,
    about = "Small strongly biconnected spanning subgraphs of directed graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Alg {
    /// Out-tree plus in-tree from --root, then augmentation (3-approximation).
    Alg1,
    /// Augment a strongly connected seed (--aux file, or the exact minimum
    /// strongly connected spanning subgraph under --cap).
    Augment,
    /// Union an exact strongly connected subgraph with a 2-vertex-connected
    /// cover of the underlying graph (--aux file, or exact under --cap).
    Combine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Highlight {
    None,
    /// Mark an exact minimum strongly biconnected spanning subgraph.
    Exact,
    /// Mark the 3-approximation output for --root.
    Alg1,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    HamiltonianChords,
    RandomSb,
    Figure1,
}

#[derive(Subcommand)]
enum Command {
    /// Report connectivity structure of an instance
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a solver and print the chosen arcs
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "alg1")]
        alg: Alg,
        /// Root vertex label (1-indexed)
        #[arg(long, default_value_t = 1)]
        root: usize,
        /// Second input: seed arcs for --alg augment, cover edges for --alg combine
        #[arg(long)]
        aux: Option<PathBuf>,
        /// Arc cap for exact sub-solvers
        #[arg(long, default_value_t = DEFAULT_ARC_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Exact optimum sizes: h (strongly biconnected), i (strongly connected),
    /// s (2-vertex-connected cover of the underlying graph)
    Exact {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ARC_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Greedily delete arcs while strong biconnectivity survives
    Minimize {
        #[arg(long)]
        input: PathBuf,
        /// Shuffle the deletion order under this seed (default: descending index)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Generate an instance file
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Vertex count (required unless --family figure1)
        #[arg(long)]
        n: Option<usize>,
        /// Arcs beyond the base Hamiltonian cycle
        #[arg(long, default_value_t = 0)]
        extra: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Batch CSV over a directory of .txt instances
    Stats {
        #[arg(long)]
        input: PathBuf,
        /// Root vertex label (1-indexed) for the approximation
        #[arg(long, default_value_t = 1)]
        root: usize,
        #[arg(long, default_value_t = DEFAULT_ARC_CAP)]
        cap: usize,
    },
    /// DOT export, optionally highlighting a solution
    Export {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "none")]
        highlight: Highlight,
        /// Root vertex label (1-indexed) for --highlight alg1
        #[arg(long, default_value_t = 1)]
        root: usize,
        #[arg(long, default_value_t = DEFAULT_ARC_CAP)]
        cap: usize,
    },
}

fn main() -> ExitCode {
    // die quietly when the read end of a pipe goes away (e.g. `sbss ... | head`)
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Check { input, format } => cmd_check(&input, format),
        Command::Solve {
            input,
            alg,
            root,
            aux,
            cap,
            format,
        } => cmd_solve(&input, alg, root, aux.as_deref(), cap, format),
        Command::Exact { input, cap, format } => cmd_exact(&input, cap, format),
        Command::Minimize {
            input,
            seed,
            format,
        } => cmd_minimize(&input, seed, format),
        Command::Gen {
            family,
            n,
            extra,
            seed,
            out,
        } => cmd_gen(family, n, extra, seed, out.as_deref()),
        Command::Stats { input, root, cap } => cmd_stats(&input, root, cap),
        Command::Export {
            input,
            highlight,
            root,
            cap,
        } => cmd_export(&input, highlight, root, cap),
    }
}

// ---------------------------------------------------------------------------
// Shared plumbing
// ---------------------------------------------------------------------------

/// Library errors speak 0-indexed ids; everything user-facing here speaks
/// 1-indexed labels.
fn describe(e: &sbss::Error) -> String {
    use sbss::Error::*;
    match e {
        NotStronglyConnected => "input is not strongly connected".into(),
        HasArticulationPoint { vertex } => format!(
            "input is not strongly biconnected: articulation point {} in underlying graph",
            vertex.index() + 1
        ),
        NotConnected => "underlying graph is disconnected".into(),
        SeedNotStronglyConnected => "seed subgraph is not strongly connected".into(),
        InstanceTooLarge { size, cap } => {
            format!("instance too large for exact search: {size} arcs exceeds cap {cap} (raise --cap)")
        }
        UnreachableFromRoot { root, vertex } => format!(
            "vertex {} is not reachable from root {}",
            vertex.index() + 1,
            root.index() + 1
        ),
        CannotReachRoot { root, vertex } => format!(
            "root {} is not reachable from vertex {}",
            root.index() + 1,
            vertex.index() + 1
        ),
        MissingUndirectedEdge { u, w } => format!(
            "cover edge {{{}, {}}} has no orientation in the instance",
            u.index() + 1,
            w.index() + 1
        ),
        other => other.to_string(),
    }
}

fn lib<T>(r: sbss::Result<T>) -> Result<T> {
    r.map_err(|e| anyhow!(describe(&e)))
}

fn load(path: &Path) -> Result<Digraph> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let parsed = parse_edge_list(&text)
        .map_err(|e| anyhow!("{}: {e}", path.display()))?;
    for w in &parsed.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(parsed.graph)
}

fn root_id(g: &Digraph, root_label: usize) -> Result<VertexId> {
    if root_label == 0 || root_label > g.n() {
        bail!(
            "root label {root_label} out of range: instance has {} vertices",
            g.n()
        );
    }
    Ok(VertexId::new(root_label - 1))
}

fn label_list(vs: &[VertexId]) -> String {
    if vs.is_empty() {
        return "(none)".into();
    }
    vs.iter()
        .map(|v| (v.index() + 1).to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn label_json(vs: &[VertexId]) -> serde_json::Value {
    json!(vs.iter().map(|v| v.index() + 1).collect::<Vec<_>>())
}

/// Arc pairs of a subset, 1-indexed and sorted by (tail, head).
fn arc_labels(g: &Digraph, subset: &ArcSubset) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = subset
        .iter()
        .map(|i| {
            let (t, h) = g.arc(i).endpoints();
            (t + 1, h + 1)
        })
        .collect();
    pairs.sort_unstable();
    pairs
}

fn pair_lines(pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("{a} {b}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn pair_json(pairs: &[(usize, usize)]) -> serde_json::Value {
    json!(pairs.iter().map(|&(a, b)| vec![a, b]).collect::<Vec<_>>())
}

// ---------------------------------------------------------------------------
// check
// ---------------------------------------------------------------------------

fn cmd_check(input: &Path, format: Format) -> Result<()> {
    let g = load(input)?;
    let strongly_connected = is_strongly_connected(&g);
    let und = g.underlying();
    let underlying_connected = is_connected(&und);
    let underlying_biconnected = is_biconnected(&und);
    let strongly_biconnected = strongly_connected && underlying_biconnected;
    let cut_vertices: Option<Vec<VertexId>> = underlying_connected
        .then(|| articulation_points(&und).expect("connected").articulation_points().to_vec());
    let saps: Option<Vec<VertexId>> = if strongly_connected {
        Some(lib(strong_articulation_points(&g))?)
    } else {
        None
    };
    let parts = sbc_decomposition(&g);

    match format {
        Format::Json => {
            let value = json!({
                "n": g.n(),
                "m": g.m(),
                "strongly_connected": strongly_connected,
                "underlying_connected": underlying_connected,
                "underlying_biconnected": underlying_biconnected,
                "strongly_biconnected": strongly_biconnected,
                "articulation_points": cut_vertices.as_deref().map(label_json),
                "strong_articulation_points": saps.as_deref().map(label_json),
                "sbc_parts": parts.parts().iter().map(|p| label_json(p)).collect::<Vec<_>>(),
            });
            println!("{value}");
        }
        Format::Text => {
            println!("n: {}", g.n());
            println!("m: {}", g.m());
            println!("strongly_connected: {strongly_connected}");
            println!("underlying_connected: {underlying_connected}");
            println!("underlying_biconnected: {underlying_biconnected}");
            println!("strongly_biconnected: {strongly_biconnected}");
            match &cut_vertices {
                Some(vs) => println!("articulation_points: {}", label_list(vs)),
                None => println!("articulation_points: (n/a: underlying graph disconnected)"),
            }
            match &saps {
                Some(vs) => println!("strong_articulation_points: {}", label_list(vs)),
                None => println!("strong_articulation_points: (n/a: not strongly connected)"),
            }
            println!("sbc_parts: {}", parts.part_count());
            for (i, part) in parts.parts().iter().enumerate() {
                println!("  part {}: {}", i + 1, label_list(part));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

fn cmd_solve(
    input: &Path,
    alg: Alg,
    root_label: usize,
    aux: Option<&Path>,
    cap: usize,
    format: Format,
) -> Result<()> {
    let g = load(input)?;
    let (name, report, root_used): (&str, SolveReport, Option<usize>) = match alg {
        Alg::Alg1 => {
            let root = root_id(&g, root_label)?;
            let report = lib(approx_msbss(&g, root))?;
            ("alg1", report, Some(root_label))
        }
        Alg::Augment => {
            let seed = match aux {
                Some(path) => load_seed_arcs(&g, path)?,
                None => lib(exact_msccs_capped(&g, cap))?.witness,
            };
            let report = lib(augment_to_biconnected(&g, &seed))?;
            ("augment", report, None)
        }
        Alg::Combine => {
            let scss = lib(exact_msccs_capped(&g, cap))?.witness;
            let cover = match aux {
                Some(path) => load_cover_edges(&g, path)?,
                None => lib(exact_2vcss_capped(&g.underlying(), cap))?.witness,
            };
            let report = lib(combine_and_augment(&g, &scss, &cover))?;
            ("combine", report, None)
        }
    };

    let bound = 3 * g.n().saturating_sub(1);
    let arcs = arc_labels(&g, &report.solution);
    match format {
        Format::Json => {
            let value = json!({
                "alg": name,
                "n": g.n(),
                "m": g.m(),
                "root": root_used,
                "size": report.size,
                "bound_3n_minus_3": bound,
                "bound_ok": report.bound_3n_minus_3_ok,
                "seed_size": report.seed_size,
                "added_arcs": report.added_arcs,
                "iterations_of_augment": report.iterations_of_augment,
                "strongly_biconnected": true,
                "arcs": pair_json(&arcs),
            });
            println!("{value}");
        }
        Format::Text => {
            println!("alg: {name}");
            println!("n: {}", g.n());
            println!("m: {}", g.m());
            if let Some(r) = root_used {
                println!("root: {r}");
            }
            println!("size: {}", report.size);
            println!("bound_3n_minus_3: {bound}");
            println!("bound_ok: {}", report.bound_3n_minus_3_ok);
            println!("seed_size: {}", report.seed_size);
            println!("added_arcs: {}", report.added_arcs);
            println!("iterations_of_augment: {}", report.iterations_of_augment);
            println!("strongly_biconnected: true");
            println!("arcs:");
            println!("{}", pair_lines(&arcs));
        }
    }
    Ok(())
}

/// Second input for `--alg augment`: an edge list over the same vertex set
/// whose arcs must all exist in the instance.
fn load_seed_arcs(g: &Digraph, path: &Path) -> Result<ArcSubset> {
    let seed_graph = load(path)?;
    if seed_graph.n() != g.n() {
        bail!(
            "{}: seed has {} vertices, instance has {}",
            path.display(),
            seed_graph.n(),
            g.n()
        );
    }
    let mut subset = ArcSubset::empty(g);
    for arc in seed_graph.arcs() {
        match g.arc_index(arc.tail, arc.head) {
            Some(i) => {
                subset.insert(i);
            }
            None => bail!(
                "{}: seed arc {} {} not present in the instance",
                path.display(),
                arc.tail.index() + 1,
                arc.head.index() + 1
            ),
        }
    }
    Ok(subset)
}

/// Second input for `--alg combine`: lines are read as undirected edges.
fn load_cover_edges(g: &Digraph, path: &Path) -> Result<Vec<(VertexId, VertexId)>> {
    let cover_graph = load(path)?;
    if cover_graph.n() != g.n() {
        bail!(
            "{}: cover has {} vertices, instance has {}",
            path.display(),
            cover_graph.n(),
            g.n()
        );
    }
    Ok(cover_graph
        .arcs()
        .iter()
        .map(|a| (a.tail, a.head))
        .collect())
}

// ---------------------------------------------------------------------------
// exact
// ---------------------------------------------------------------------------

fn cmd_exact(input: &Path, cap: usize, format: Format) -> Result<()> {
    let g = load(input)?;
    let h = lib(exact_msbss_capped(&g, cap))?;
    let i = lib(exact_msccs_capped(&g, cap))?;
    let s = lib(exact_2vcss_capped(&g.underlying(), cap))?;

    let witness_h = arc_labels(&g, &h.witness);
    let witness_i = arc_labels(&g, &i.witness);
    let mut witness_s: Vec<(usize, usize)> = s
        .witness
        .iter()
        .map(|&(a, b)| (a.index() + 1, b.index() + 1))
        .collect();
    witness_s.sort_unstable();

    match format {
        Format::Json => {
            let value = json!({
                "n": g.n(),
                "m": g.m(),
                "h": h.optimum_size,
                "i": i.optimum_size,
                "s": s.optimum_size,
                "witness_h": pair_json(&witness_h),
                "witness_i": pair_json(&witness_i),
                "witness_s": pair_json(&witness_s),
                "explored_h": h.subsets_explored,
                "explored_i": i.subsets_explored,
                "explored_s": s.subsets_explored,
            });
            println!("{value}");
        }
        Format::Text => {
            println!("n: {}", g.n());
            println!("m: {}", g.m());
            println!("h: {}", h.optimum_size);
            println!("i: {}", i.optimum_size);
            println!("s: {}", s.optimum_size);
            println!("witness_h:");
            println!("{}", pair_lines(&witness_h));
            println!("witness_i:");
            println!("{}", pair_lines(&witness_i));
            println!("witness_s:");
            println!("{}", pair_lines(&witness_s));
            println!(
                "subsets_explored: {}",
                h.subsets_explored + i.subsets_explored + s.subsets_explored
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// minimize
// ---------------------------------------------------------------------------

fn cmd_minimize(input: &Path, seed: Option<u64>, format: Format) -> Result<()> {
    let g = load(input)?;
    let start = ArcSubset::full(&g);
    let report = lib(match seed {
        Some(s) => minimalize_shuffled(&g, &start, s),
        None => minimalize(&g, &start),
    })?;
    let (num, den) = report.ratio_parts();
    let ratio = report.ratio_to_2n();
    let arcs = arc_labels(&g, &report.minimal_solution);

    match format {
        Format::Json => {
            let value = json!({
                "n": g.n(),
                "m": g.m(),
                "start_size": g.m(),
                "size": report.size,
                "ratio_to_2n": ratio,
                "ratio_num": num,
                "ratio_den": den,
                "arcs": pair_json(&arcs),
            });
            println!("{value}");
        }
        Format::Text => {
            println!("n: {}", g.n());
            println!("m: {}", g.m());
            println!("start_size: {}", g.m());
            println!("size: {}", report.size);
            println!("ratio_to_2n: {ratio} ({num}/{den})");
            println!("arcs:");
            println!("{}", pair_lines(&arcs));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fn cmd_gen(
    family: FamilyArg,
    n: Option<usize>,
    extra: usize,
    seed: u64,
    out: Option<&Path>,
) -> Result<()> {
    let family = match family {
        FamilyArg::HamiltonianChords => Family::HamiltonianChords,
        FamilyArg::RandomSb => Family::RandomSb,
        FamilyArg::Figure1 => Family::Figure1,
    };
    let n = match (family, n) {
        (Family::Figure1, given) => given.unwrap_or(13),
        (_, Some(n)) => n,
        (_, None) => {
            // static usage problem, not a computation failure
            Cli::command()
                .error(
                    ErrorKind::MissingRequiredArgument,
                    "--n is required unless --family figure1",
                )
                .exit();
        }
    };
    let spec = GenSpec {
        family,
        n,
        extra_edges: extra,
        seed,
    };
    let g = lib(spec.generate())?;
    let text = emit_edge_list(&g);
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// stats
// ---------------------------------------------------------------------------

fn cmd_stats(input: &Path, root_label: usize, cap: usize) -> Result<()> {
    let mut paths: Vec<PathBuf> = fs::read_dir(input)
        .with_context(|| format!("cannot read directory {}", input.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "txt"))
        .collect();
    paths.sort();

    println!("instance,n,m,alg1_size,exact_h,ratio");
    for path in &paths {
        let g = load(path)?;
        let root = root_id(&g, root_label)
            .with_context(|| format!("{}", path.display()))?;
        let report = lib(approx_msbss(&g, root))
            .with_context(|| format!("{}", path.display()))?;
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        if g.m() <= cap {
            let h = lib(exact_msbss_capped(&g, cap))
                .with_context(|| format!("{}", path.display()))?;
            let ratio = report.size as f64 / h.optimum_size as f64;
            println!(
                "{name},{},{},{},{},{ratio:.4}",
                g.n(),
                g.m(),
                report.size,
                h.optimum_size
            );
        } else {
            println!("{name},{},{},{},,", g.n(), g.m(), report.size);
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// export
// ---------------------------------------------------------------------------

fn cmd_export(input: &Path, highlight: Highlight, root_label: usize, cap: usize) -> Result<()> {
    let g = load(input)?;
    let subset = match highlight {
        Highlight::None => None,
        Highlight::Exact => Some(lib(exact_msbss_capped(&g, cap))?.witness),
        Highlight::Alg1 => {
            let root = root_id(&g, root_label)?;
            Some(lib(approx_msbss(&g, root))?.solution)
        }
    };
    print!("{}", lib(emit_dot(&g, subset.as_ref()))?);
    Ok(())
}
