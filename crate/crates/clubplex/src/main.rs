//! Command-line front end.
//!
//! Exit codes: 0 success (for `verify`: predicate holds), 1 usage or input
//! error (for `verify`: predicate fails), 2 benchmark completed but some
//! instances could not be read.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use clubplex::bench::{
    read_manifest, read_records_csv, run_benchmark, write_records_csv, BenchProblem, GraphFormat,
};
use clubplex::graph::{generate_planted_core, generate_random_graph, Graph, VertexSet};
use clubplex::ilp::{build_2club_model, build_3club_model, build_plex_model, write_lp};
use clubplex::ordering::x_degeneracy_ordering;
use clubplex::solve::{turing_kernel_solve, MaxOutcome, Variant, VariantConfig};
use clubplex::stats::{
    correlation_table, scatter_data, summary_table, summary_to_csv, AnalysisOptions, Param,
};
use clubplex::verify::CandidateKind;

#[derive(Parser)]
#[command(
    name = "clubplex",
    version,
    about = "Exact maximum clique / s-club / s-plex solvers with Turing kernelization, ILP export, and a benchmark harness"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file to read.
    #[arg(long)]
    input: PathBuf,
    /// Input format.
    #[arg(long, default_value = "edgelist")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the x-degeneracy (and optionally the ordering) of a graph.
    Degeneracy {
        /// Neighborhood radius x.
        #[arg(long)]
        x: usize,
        #[command(flatten)]
        input: InputArgs,
        /// Also print the ordering, one original label per line.
        #[arg(long)]
        ordering: bool,
    },
    /// Check a vertex set against the clique/club/plex predicate.
    Verify {
        /// clique, club, or plex.
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 1)]
        s: usize,
        #[command(flatten)]
        input: InputArgs,
        /// File with one vertex label per line.
        #[arg(long)]
        set: PathBuf,
    },
    /// Solve a maximum clique/club/plex instance exactly.
    Solve {
        #[arg(long)]
        problem: String,
        #[arg(long, default_value_t = 1)]
        s: usize,
        /// notk, full, default, or hint.
        #[arg(long)]
        variant: String,
        /// Kernel radius; defaults to s (or 2 with --plex-d2).
        #[arg(long)]
        x: Option<usize>,
        /// Use the distance-2 kernel for plexes.
        #[arg(long)]
        plex_d2: bool,
        #[command(flatten)]
        input: InputArgs,
        /// Wall-clock budget in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        /// Lower bound for the hint variant.
        #[arg(long)]
        hint_value: Option<usize>,
    },
    /// Write an ILP formulation as an LP file.
    ExportIlp {
        /// plex, 2club, or 3club.
        #[arg(long)]
        problem: String,
        /// Plex parameter s (plex only).
        #[arg(long)]
        s: Option<usize>,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        output: PathBuf,
    },
    /// Run a problems x variants grid over a manifest of instances.
    Bench {
        /// Manifest file: one `<path> <format>` per line.
        #[arg(long)]
        manifest: PathBuf,
        /// Comma-separated problems, e.g. 2club,3club,2plex,3plex-2.
        #[arg(long)]
        problems: String,
        /// Comma-separated variants, e.g. full,default,hint.
        #[arg(long)]
        variants: String,
        /// Per-cell wall-clock limit in seconds.
        #[arg(long)]
        timeout: Option<f64>,
        /// Runtimes at or below this flag the instance (noise floor).
        #[arg(long, default_value_t = 0.05)]
        floor: f64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Correlate parameters with log-runtimes from a results CSV.
    Analyze {
        #[arg(long)]
        results: PathBuf,
        #[arg(long)]
        report: PathBuf,
        /// Gap convention: gap = d_x - solution + offset.
        #[arg(long, default_value_t = 1)]
        gap_offset: i64,
        /// Divide the theorems' polynomial factors out of runtimes first.
        #[arg(long)]
        adjust_polynomial: bool,
        /// Optional mean-runtime summary CSV.
        #[arg(long)]
        summary: Option<PathBuf>,
    },
    /// Extract a two-column scatter CSV from a results CSV.
    Scatter {
        #[arg(long)]
        results: PathBuf,
        /// x parameter: n, m, d_x, gap, solution, runtime.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a seeded instance file.
    Generate {
        /// random (G(n,p)) or planted (path + clique core + bridge).
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Edge probability (random only).
        #[arg(long)]
        p: Option<f64>,
        /// Core size (planted only).
        #[arg(long)]
        core: Option<usize>,
        #[arg(long)]
        seed: u64,
        /// Output format.
        #[arg(long, default_value = "edgelist")]
        format: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful outputs; everything else is a
            // usage error and exits 1.
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn parse_format(name: &str) -> Result<GraphFormat, String> {
    name.parse()
}

fn load_input(args: &InputArgs) -> Result<Graph, String> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| format!("{}: {e}", args.input.display()))?;
    match parse_format(&args.format)? {
        GraphFormat::EdgeList => {
            Graph::parse_edge_list(&text).map_err(|e| format!("{}: {e}", args.input.display()))
        }
        GraphFormat::Dimacs => {
            let (g, warnings) = Graph::parse_dimacs(&text)
                .map_err(|e| format!("{}: {e}", args.input.display()))?;
            for w in warnings {
                eprintln!("warning: {}: {w}", args.input.display());
            }
            Ok(g)
        }
    }
}

fn parse_kind(problem: &str, s: usize) -> Result<CandidateKind, String> {
    if s < 1 {
        return Err("s must be at least 1".into());
    }
    match problem {
        "clique" => Ok(CandidateKind::Clique),
        "club" => Ok(CandidateKind::Club(s)),
        "plex" => Ok(CandidateKind::Plex(s)),
        other => Err(format!("unknown problem '{other}' (expected clique, club, or plex)")),
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Degeneracy { x, input, ordering } => {
            if x < 1 {
                return Err("x must be at least 1".into());
            }
            let g = load_input(&input)?;
            let ord = x_degeneracy_ordering(&g, x);
            println!("{}", ord.d_x);
            if ordering {
                for &v in &ord.order {
                    println!("{}", g.label(v));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            problem,
            s,
            input,
            set,
        } => {
            let kind = parse_kind(&problem, s)?;
            let g = load_input(&input)?;
            let members = read_vertex_set(&set, &g)?;
            if kind.is_satisfied(&g, &members) {
                println!("ok: {} of size {}", kind, members.len());
                Ok(ExitCode::SUCCESS)
            } else {
                println!("not a {} (size {})", kind, members.len());
                Ok(ExitCode::from(1))
            }
        }
        Command::Solve {
            problem,
            s,
            variant,
            x,
            plex_d2,
            input,
            timeout,
            hint_value,
        } => {
            let kind = parse_kind(&problem, s)?;
            let variant: Variant = variant.parse()?;
            let radius = match (x, plex_d2) {
                (Some(x), _) => x,
                (None, true) => 2,
                (None, false) => kind.s(),
            };
            let mut cfg = VariantConfig::new(variant, radius);
            cfg.hint_value = hint_value;
            cfg.deadline = timeout.map(Duration::from_secs_f64);
            let g = load_input(&input)?;
            let outcome = turing_kernel_solve(&g, kind, &cfg).map_err(|e| e.to_string())?;
            print_outcome(&g, &outcome, hint_value);
            Ok(ExitCode::SUCCESS)
        }
        Command::ExportIlp {
            problem,
            s,
            input,
            output,
        } => {
            let g = load_input(&input)?;
            let model = match problem.as_str() {
                "plex" => {
                    let s = s.ok_or("--s is required for the plex formulation")?;
                    if s < 1 {
                        return Err("s must be at least 1".into());
                    }
                    build_plex_model(&g, s)
                }
                "2club" => {
                    if s.is_some() {
                        return Err("--s applies only to the plex formulation".into());
                    }
                    build_2club_model(&g)
                }
                "3club" => {
                    if s.is_some() {
                        return Err("--s applies only to the plex formulation".into());
                    }
                    build_3club_model(&g)
                }
                other => return Err(format!("unknown formulation '{other}'")),
            };
            std::fs::write(&output, write_lp(&model))
                .map_err(|e| format!("{}: {e}", output.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bench {
            manifest,
            problems,
            variants,
            timeout,
            floor,
            out,
        } => {
            let text = std::fs::read_to_string(&manifest)
                .map_err(|e| format!("{}: {e}", manifest.display()))?;
            let base = manifest
                .parent()
                .map(Path::to_path_buf)
                .unwrap_or_else(|| PathBuf::from("."));
            let entries = read_manifest(&text, &base)?;
            let problems = parse_list::<BenchProblem>(&problems)?;
            let variants = parse_list::<Variant>(&variants)?;
            let outcome = run_benchmark(&entries, &problems, &variants, timeout, floor)?;
            std::fs::write(&out, write_records_csv(&outcome.records)?)
                .map_err(|e| format!("{}: {e}", out.display()))?;
            for msg in &outcome.errors {
                eprintln!("instance error: {msg}");
            }
            eprintln!(
                "wrote {} rows to {} ({} instance errors)",
                outcome.records.len(),
                out.display(),
                outcome.errors.len()
            );
            if outcome.errors.is_empty() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(2))
            }
        }
        Command::Analyze {
            results,
            report,
            gap_offset,
            adjust_polynomial,
            summary,
        } => {
            if !(gap_offset == 0 || gap_offset == 1) {
                return Err("--gap-offset must be 0 or 1".into());
            }
            let text = std::fs::read_to_string(&results)
                .map_err(|e| format!("{}: {e}", results.display()))?;
            let records = read_records_csv(&text)?;
            let opts = AnalysisOptions {
                gap_offset,
                adjust_polynomial,
            };
            let table = correlation_table(&records, &opts);
            if table.is_empty() {
                eprintln!("note: every record was filtered out; report contains headers only");
            }
            std::fs::write(&report, table.to_csv())
                .map_err(|e| format!("{}: {e}", report.display()))?;
            if let Some(path) = summary {
                let rows = summary_table(&records);
                std::fs::write(&path, summary_to_csv(&rows))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Scatter { results, x, y, out } => {
            let text = std::fs::read_to_string(&results)
                .map_err(|e| format!("{}: {e}", results.display()))?;
            let records = read_records_csv(&text)?;
            let x: Param = x.parse()?;
            let y: Param = y.parse()?;
            std::fs::write(&out, scatter_data(&records, x, y))
                .map_err(|e| format!("{}: {e}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Generate {
            kind,
            n,
            p,
            core,
            seed,
            format,
            out,
        } => {
            let g = match kind.as_str() {
                "random" => {
                    let p = p.ok_or("--p is required for random graphs")?;
                    if !(0.0..=1.0).contains(&p) {
                        return Err("--p must lie in [0, 1]".into());
                    }
                    generate_random_graph(n, p, seed)
                }
                "planted" => {
                    let core = core.ok_or("--core is required for planted graphs")?;
                    if core < 1 || core > n {
                        return Err("--core must lie in 1..=n".into());
                    }
                    generate_planted_core(n, core, seed)
                }
                other => return Err(format!("unknown generator '{other}'")),
            };
            let text = match parse_format(&format)? {
                GraphFormat::EdgeList => g.to_edge_list(),
                GraphFormat::Dimacs => g.to_dimacs(),
            };
            std::fs::write(&out, text).map_err(|e| format!("{}: {e}", out.display()))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_list<T: std::str::FromStr<Err = String>>(text: &str) -> Result<Vec<T>, String> {
    let items: Vec<T> = text
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    if items.is_empty() {
        return Err("empty list".into());
    }
    Ok(items)
}

fn read_vertex_set(path: &Path, g: &Graph) -> Result<VertexSet, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let index = g.label_index();
    let mut ids = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let label = raw.trim();
        if label.is_empty() || label.starts_with('#') {
            continue;
        }
        match index.get(label) {
            Some(&v) => ids.push(v),
            None => {
                return Err(format!(
                    "{}:{}: unknown vertex label '{label}'",
                    path.display(),
                    lineno + 1
                ))
            }
        }
    }
    Ok(VertexSet::from_unsorted(ids))
}

fn print_outcome(g: &Graph, outcome: &MaxOutcome, hint: Option<usize>) {
    match outcome {
        MaxOutcome::Found(sol) | MaxOutcome::TimedOut(sol) => {
            println!("size {}", sol.size());
            let labels: Vec<String> = sol.members.iter().map(|v| g.label(v)).collect();
            println!("members {}", labels.join(" "));
            let st = &sol.stats;
            println!(
                "oracle_calls={} max_core_size={} branch_nodes={} elapsed={:.6} timed_out={}",
                st.oracle_calls, st.max_core_size, st.branch_nodes, st.elapsed, st.timed_out
            );
        }
        MaxOutcome::BelowBound(st) => {
            match hint {
                Some(h) => println!("no solution of size >= {h}"),
                None => println!("no solution of the requested size"),
            }
            println!(
                "oracle_calls={} max_core_size={} branch_nodes={} elapsed={:.6} timed_out={}",
                st.oracle_calls, st.max_core_size, st.branch_nodes, st.elapsed, st.timed_out
            );
        }
    }
}
