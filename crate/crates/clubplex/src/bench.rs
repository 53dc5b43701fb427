//! Benchmark harness: runs a (problems x variants) grid over a manifest of
//! instances, records one CSV row per cell, and applies the per-instance
//! filtering rule (any timeout or any sub-floor runtime flags every row of
//! that instance; flagged rows stay in the CSV and are excluded from
//! analysis downstream).

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::ordering::x_degeneracy_ordering;
use crate::solve::{turing_kernel_solve, MaxOutcome, Variant, VariantConfig};
use crate::verify::CandidateKind;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

impl GraphFormat {
    pub fn name(&self) -> &'static str {
        match self {
            GraphFormat::EdgeList => "edgelist",
            GraphFormat::Dimacs => "dimacs",
        }
    }
}

impl std::str::FromStr for GraphFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "edgelist" => Ok(GraphFormat::EdgeList),
            "dimacs" => Ok(GraphFormat::Dimacs),
            other => Err(format!("unknown graph format '{other}'")),
        }
    }
}

/// One `<path> <format>` line of a manifest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub format: GraphFormat,
}

/// Parses manifest text; relative paths are resolved against `base_dir`
/// (normally the manifest's own directory). `#` starts a comment line.
pub fn read_manifest(text: &str, base_dir: &Path) -> Result<Vec<ManifestEntry>, String> {
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(format!(
                "manifest line {}: expected '<path> <format>', found {} tokens",
                lineno + 1,
                tokens.len()
            ));
        }
        let format: GraphFormat = tokens[1]
            .parse()
            .map_err(|e| format!("manifest line {}: {e}", lineno + 1))?;
        let mut path = PathBuf::from(tokens[0]);
        if path.is_relative() {
            path = base_dir.join(path);
        }
        entries.push(ManifestEntry { path, format });
    }
    Ok(entries)
}

pub fn load_graph(entry: &ManifestEntry) -> Result<Graph, String> {
    let text = std::fs::read_to_string(&entry.path)
        .map_err(|e| format!("{}: {e}", entry.path.display()))?;
    match entry.format {
        GraphFormat::EdgeList => {
            Graph::parse_edge_list(&text).map_err(|e| format!("{}: {e}", entry.path.display()))
        }
        GraphFormat::Dimacs => Graph::parse_dimacs(&text)
            .map(|(g, _warnings)| g)
            .map_err(|e| format!("{}: {e}", entry.path.display())),
    }
}

/// A problem cell of the grid: the relaxation plus the kernel radius used
/// for its Turing kernelization (and its `d_x` column).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchProblem {
    pub kind: CandidateKind,
    pub x: usize,
}

impl BenchProblem {
    pub fn label(&self) -> String {
        match self.kind {
            CandidateKind::Clique => "clique".into(),
            CandidateKind::Club(s) | CandidateKind::Plex(s) => {
                if self.x == s {
                    format!("{s}{}", self.kind.problem_name())
                } else {
                    format!("{s}{}-{}", self.kind.problem_name(), self.x)
                }
            }
        }
    }
}

impl std::str::FromStr for BenchProblem {
    type Err = String;

    /// Accepts `clique`, `<s>club`, `<s>plex`, and `<s>plex-<x>`
    /// (e.g. `3plex-2` for the distance-2 plex kernel).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        if lower == "clique" {
            return Ok(BenchProblem {
                kind: CandidateKind::Clique,
                x: 1,
            });
        }
        let (spec, x_override) = match lower.split_once('-') {
            Some((head, tail)) => {
                let x: usize = tail
                    .parse()
                    .map_err(|_| format!("bad kernel radius in '{s}'"))?;
                (head.to_string(), Some(x))
            }
            None => (lower.clone(), None),
        };
        let cut = spec
            .find(|c: char| !c.is_ascii_digit())
            .ok_or_else(|| format!("unknown problem '{s}'"))?;
        let (digits, word) = spec.split_at(cut);
        let sval: usize = digits.parse().map_err(|_| format!("missing s in '{s}'"))?;
        if sval < 1 {
            return Err(format!("s must be at least 1 in '{s}'"));
        }
        let kind = match word {
            "club" => CandidateKind::Club(sval),
            "plex" => CandidateKind::Plex(sval),
            other => return Err(format!("unknown problem kind '{other}'")),
        };
        Ok(BenchProblem {
            kind,
            x: x_override.unwrap_or(sval),
        })
    }
}

/// One CSV row. Field order matches the pinned `results.csv` header.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub problem: String,
    pub s: usize,
    pub variant: String,
    pub x: usize,
    pub d_x: usize,
    pub solution: usize,
    pub gap: i64,
    pub runtime_seconds: f64,
    pub timed_out: bool,
    pub filtered: bool,
}

pub const RESULTS_HEADER: &str =
    "instance,n,m,problem,s,variant,x,d_x,solution,gap,runtime_seconds,timed_out,filtered";

#[derive(Debug, Default)]
pub struct BenchOutcome {
    pub records: Vec<BenchRecord>,
    /// One message per instance that could not be read or parsed.
    pub errors: Vec<String>,
}

/// Runs the full grid. `limit` is the per-cell wall-clock budget in
/// seconds; cells at or under `floor` seconds flag their instance, matching
/// the timeout rule. Unreadable instances produce an error row (zeros,
/// `filtered` set) and the run continues.
///
/// Hint cells take their bound from the first completed non-hint cell of
/// the same (instance, problem); per problem, non-hint variants therefore
/// run before hint.
pub fn run_benchmark(
    entries: &[ManifestEntry],
    problems: &[BenchProblem],
    variants: &[Variant],
    limit: Option<f64>,
    floor: f64,
) -> Result<BenchOutcome, String> {
    if variants.contains(&Variant::Hint)
        && !variants.iter().any(|v| *v != Variant::Hint)
    {
        return Err("the hint variant needs a non-hint variant in the grid to supply its bound".into());
    }
    let mut ordered: Vec<Variant> = variants
        .iter()
        .copied()
        .filter(|v| *v != Variant::Hint)
        .collect();
    ordered.extend(variants.iter().copied().filter(|v| *v == Variant::Hint));

    let mut outcome = BenchOutcome::default();
    for entry in entries {
        let instance = entry
            .path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| entry.path.display().to_string());
        let graph = match load_graph(entry) {
            Ok(g) => g,
            Err(msg) => {
                outcome.errors.push(msg);
                outcome.records.push(BenchRecord {
                    instance,
                    n: 0,
                    m: 0,
                    problem: "error".into(),
                    s: 0,
                    variant: "error".into(),
                    x: 0,
                    d_x: 0,
                    solution: 0,
                    gap: 0,
                    runtime_seconds: 0.0,
                    timed_out: false,
                    filtered: true,
                });
                continue;
            }
        };
        let first_row = outcome.records.len();
        let mut flag_instance = false;
        for problem in problems {
            let ord = x_degeneracy_ordering(&graph, problem.x);
            let mut hint_value: Option<usize> = None;
            for &variant in &ordered {
                let mut cfg = VariantConfig::new(variant, problem.x);
                if let Some(secs) = limit {
                    cfg.deadline = Some(Duration::from_secs_f64(secs));
                }
                if variant == Variant::Hint {
                    cfg.hint_value = Some(hint_value.expect("non-hint variants run first"));
                }
                let result = turing_kernel_solve(&graph, problem.kind, &cfg)
                    .map_err(|e| format!("{instance}: {e}"))?;
                let (solution, timed_out, elapsed) = match &result {
                    MaxOutcome::Found(sol) => (sol.size(), false, sol.stats.elapsed),
                    MaxOutcome::TimedOut(sol) => (sol.size(), true, sol.stats.elapsed),
                    // Unreachable with hints taken from real runs; recorded
                    // as an empty answer rather than dropped.
                    MaxOutcome::BelowBound(stats) => (0, stats.timed_out, stats.elapsed),
                };
                if variant != Variant::Hint && hint_value.is_none() {
                    hint_value = Some(solution);
                }
                let runtime_seconds = if timed_out {
                    limit.unwrap_or(elapsed)
                } else {
                    elapsed
                };
                if timed_out || runtime_seconds < floor {
                    flag_instance = true;
                }
                outcome.records.push(BenchRecord {
                    instance: instance.clone(),
                    n: graph.n(),
                    m: graph.m(),
                    problem: problem.kind.problem_name().into(),
                    s: problem.kind.s(),
                    variant: variant.name().into(),
                    x: problem.x,
                    d_x: ord.d_x,
                    solution,
                    gap: ord.d_x as i64 - solution as i64 + 1,
                    runtime_seconds,
                    timed_out,
                    filtered: false,
                });
            }
        }
        if flag_instance {
            for row in &mut outcome.records[first_row..] {
                row.filtered = true;
            }
        }
    }
    Ok(outcome)
}

/// Writes records as CSV with the pinned header.
pub fn write_records_csv(records: &[BenchRecord]) -> Result<String, String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for r in records {
        writer.serialize(r).map_err(|e| e.to_string())?;
    }
    let bytes = writer.into_inner().map_err(|e| e.to_string())?;
    let text = String::from_utf8(bytes).map_err(|e| e.to_string())?;
    if records.is_empty() {
        // serde emits no header for an empty run; pin it explicitly.
        return Ok(format!("{RESULTS_HEADER}\n"));
    }
    Ok(text)
}

pub fn read_records_csv(text: &str) -> Result<Vec<BenchRecord>, String> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    reader
        .deserialize()
        .collect::<Result<Vec<BenchRecord>, _>>()
        .map_err(|e| e.to_string())
}
