//! Exact solvers for maximum clique, s-club, and s-plex on undirected
//! graphs, built around x-degeneracy Turing kernelization and
//! gap-parameterized deletion branching, plus ILP-formulation export and a
//! benchmark harness that correlates measured runtimes with graph
//! parameters.
//!
//! Module map:
//! * [`graph`]: graph type, parsers, serializers, generators.
//! * [`ordering`]: x-degeneracy orderings and their cores `Q_x[v]`.
//! * [`verify`]: certified predicates (clique / s-club / s-plex).
//! * [`solve`]: deletion branching, maximization, and the noTK / full /
//!   default / hint kernel driver.
//! * [`ilp`]: the s-plex, 2-club, and 3-club integer-programming models,
//!   LP-file output, and an assignment evaluator.
//! * [`bench`] and [`stats`]: the experiment pipeline (CSV records,
//!   Pearson/regression tables, scatter extracts).

pub mod bench;
pub mod graph;
pub mod ilp;
pub mod ordering;
pub mod solve;
pub mod stats;
pub mod verify;

pub use graph::{Graph, VertexSet};
pub use ordering::XOrdering;
pub use solve::{MaxOutcome, Solution, SolveStats, Variant, VariantConfig};
pub use verify::CandidateKind;
