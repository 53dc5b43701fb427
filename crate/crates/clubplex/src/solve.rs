//! Exact maximization of cliques, s-clubs, and s-plexes.
//!
//! Three layers:
//! * [`delete_to_target`]: given a budget `l`, decide whether deleting at
//!   most `l` vertices leaves a target set, by branching on a violating pair
//!   (clubs/cliques, factor 2) or a violating vertex plus `s` of its
//!   non-neighbors (plexes, factor s+1).
//! * [`maximum_via_deletion`]: iterative deepening on the deletion budget;
//!   the first budget that succeeds yields the maximum size `n - l`.
//! * [`turing_kernel_solve`]: sweeps the x-degeneracy cores `Q_x[v]` and
//!   maximizes inside each one, in the noTK / full / default / hint variant
//!   configurations.
//!
//! [`brute_force_maximum`] enumerates subsets directly and serves as the
//! independent oracle for everything above.

use std::time::{Duration, Instant};

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Graph, VertexSet};
use crate::ordering::{core, x_degeneracy_ordering};
use crate::verify::CandidateKind;

/// Counters exposed by every solve call.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveStats {
    /// Kernel subproblems actually solved (skipped cores do not count).
    pub oracle_calls: usize,
    /// Largest core handed to the oracle; at most `d_x + 1` for the
    /// kernelized variants. The whole graph counts for noTK.
    pub max_core_size: usize,
    /// Branching-tree nodes over all deletion searches.
    pub branch_nodes: u64,
    /// Wall-clock seconds.
    pub elapsed: f64,
    pub timed_out: bool,
}

/// A certified vertex set together with its solve statistics.
#[derive(Clone, Debug)]
pub struct Solution {
    pub members: VertexSet,
    /// The members passed the matching predicate. Optimality is a separate
    /// claim: it holds exactly when `stats.timed_out` is false.
    pub certified: bool,
    pub stats: SolveStats,
}

impl Solution {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Result of a maximization call.
#[derive(Clone, Debug)]
pub enum MaxOutcome {
    /// Proven maximum of size at least the requested bound.
    Found(Solution),
    /// Proven: no target of the requested size exists.
    BelowBound(SolveStats),
    /// Deadline hit; carries the best certified set found so far.
    TimedOut(Solution),
}

impl MaxOutcome {
    pub fn stats(&self) -> &SolveStats {
        match self {
            MaxOutcome::Found(s) | MaxOutcome::TimedOut(s) => &s.stats,
            MaxOutcome::BelowBound(st) => st,
        }
    }

    /// Size of the reported set, if any.
    pub fn size(&self) -> Option<usize> {
        match self {
            MaxOutcome::Found(s) | MaxOutcome::TimedOut(s) => Some(s.size()),
            MaxOutcome::BelowBound(_) => None,
        }
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            MaxOutcome::Found(s) | MaxOutcome::TimedOut(s) => Some(s),
            MaxOutcome::BelowBound(_) => None,
        }
    }
}

/// The four solver configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Single whole-graph solve, no kernelization.
    NoTk,
    /// Solve every core to optimality independently.
    Full,
    /// Sweep cores in peeling order, carrying best-so-far as a lower bound;
    /// cores smaller than the bound are skipped.
    Default,
    /// Every core gets an externally supplied lower bound.
    Hint,
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::NoTk => "notk",
            Variant::Full => "full",
            Variant::Default => "default",
            Variant::Hint => "hint",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "notk" => Ok(Variant::NoTk),
            "full" => Ok(Variant::Full),
            "default" => Ok(Variant::Default),
            "hint" => Ok(Variant::Hint),
            other => Err(format!("unknown variant '{other}'")),
        }
    }
}

/// Configuration for [`turing_kernel_solve`].
#[derive(Clone, Debug)]
pub struct VariantConfig {
    pub variant: Variant,
    /// Kernel radius: `s` for clubs and plexes, or 2 for the distance-2
    /// plex kernel.
    pub x: usize,
    /// Required iff `variant` is [`Variant::Hint`].
    pub hint_value: Option<usize>,
    /// Wall-clock budget for the whole call.
    pub deadline: Option<Duration>,
}

impl VariantConfig {
    pub fn new(variant: Variant, x: usize) -> Self {
        VariantConfig {
            variant,
            x,
            hint_value: None,
            deadline: None,
        }
    }

    pub fn with_hint(mut self, hint: usize) -> Self {
        self.hint_value = Some(hint);
        self
    }

    pub fn with_deadline(mut self, budget: Duration) -> Self {
        self.deadline = Some(budget);
        self
    }
}

/// The cooperative deadline was exceeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Timeout;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has {n} vertices; brute force refuses n > {limit} unless forced")]
    TooLarge { n: usize, limit: usize },
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(String),
}

const BRUTE_FORCE_LIMIT: usize = 25;

/// Enumerates vertex subsets in decreasing cardinality (lexicographic within
/// each size) and returns the first one passing the predicate, i.e. the
/// lexicographically smallest maximum set. Intended as a test oracle for
/// small graphs; refuses more than 25 vertices unless `force` is set.
pub fn brute_force_maximum(
    g: &Graph,
    kind: CandidateKind,
    force: bool,
) -> Result<Solution, SolveError> {
    validate_kind(kind)?;
    let n = g.n();
    if n > BRUTE_FORCE_LIMIT && !force {
        return Err(SolveError::TooLarge {
            n,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let t0 = Instant::now();
    for k in (0..=n).rev() {
        for combo in (0..n).combinations(k) {
            let set = VertexSet::from_sorted(combo);
            if kind.is_satisfied(g, &set) {
                let stats = SolveStats {
                    elapsed: t0.elapsed().as_secs_f64(),
                    ..SolveStats::default()
                };
                return Ok(Solution {
                    members: set,
                    certified: true,
                    stats,
                });
            }
        }
    }
    unreachable!("the empty set satisfies every predicate")
}

/// Maximum s-plex of size at most `2s - 2`, by direct subset enumeration.
/// Complements the distance-2 plex kernel, which only guarantees solutions
/// of size at least `2s - 1`.
pub fn small_plex_fallback(g: &Graph, s: usize) -> Solution {
    assert!((1..=3).contains(&s), "fallback supports s in 1..=3");
    let kind = CandidateKind::Plex(s);
    let cap = (2 * s - 2).min(g.n());
    let t0 = Instant::now();
    for k in (0..=cap).rev() {
        for combo in (0..g.n()).combinations(k) {
            let set = VertexSet::from_sorted(combo);
            if kind.is_satisfied(g, &set) {
                let stats = SolveStats {
                    elapsed: t0.elapsed().as_secs_f64(),
                    ..SolveStats::default()
                };
                return Solution {
                    members: set,
                    certified: true,
                    stats,
                };
            }
        }
    }
    unreachable!("the empty set is an s-plex")
}

/// Finds a set `D` of at most `budget` vertices whose deletion leaves a
/// target set, or `None` if no such set exists. A missed deadline is
/// reported separately from `None`.
pub fn delete_to_target(
    g: &Graph,
    kind: CandidateKind,
    budget: usize,
    deadline: Option<Instant>,
) -> Result<Option<VertexSet>, Timeout> {
    assert!(kind.s() >= 1, "s must be at least 1");
    let mut stats = SolveStats::default();
    delete_inner(g, kind, budget, deadline, &mut stats)
        .map(|opt| opt.map(VertexSet::from_unsorted))
}

/// Maximum target of size at least `lower_bound`, found by iterative
/// deepening on the deletion budget starting at 0. Succeeding first at
/// budget `l` proves the maximum is exactly `n - l`.
pub fn maximum_via_deletion(
    g: &Graph,
    kind: CandidateKind,
    lower_bound: usize,
    deadline: Option<Instant>,
) -> MaxOutcome {
    assert!(kind.s() >= 1, "s must be at least 1");
    let t0 = Instant::now();
    let mut stats = SolveStats::default();
    let outcome = maximum_inner(g, kind, lower_bound, deadline, &mut stats);
    stats.elapsed = t0.elapsed().as_secs_f64();
    match outcome {
        InnerMax::Found(members) => {
            let set = VertexSet::from_unsorted(members);
            let certified = kind.is_satisfied(g, &set);
            assert!(certified, "solver produced an uncertified set");
            MaxOutcome::Found(Solution {
                members: set,
                certified,
                stats,
            })
        }
        InnerMax::BelowBound => MaxOutcome::BelowBound(stats),
        InnerMax::TimedOut => {
            stats.timed_out = true;
            MaxOutcome::TimedOut(Solution {
                members: VertexSet::empty(),
                certified: true,
                stats,
            })
        }
    }
}

/// Turing-kernel driver: computes an x-degeneracy ordering, extracts each
/// right-neighborhood core `Q_x[v]`, and maximizes inside it according to
/// the configured variant. The distance-2 plex kernel additionally falls
/// back to [`small_plex_fallback`] when the best core answer is below
/// `2s - 1`, the size from which the kernel guarantee applies.
pub fn turing_kernel_solve(
    g: &Graph,
    kind: CandidateKind,
    cfg: &VariantConfig,
) -> Result<MaxOutcome, SolveError> {
    validate_kind(kind)?;
    validate_config(kind, cfg)?;
    let t0 = Instant::now();
    let deadline = cfg.deadline.map(|d| t0 + d);
    let mut stats = SolveStats::default();

    if cfg.variant == Variant::NoTk {
        stats.oracle_calls = 1;
        stats.max_core_size = g.n();
        let outcome = maximum_inner(g, kind, 1, deadline, &mut stats);
        return Ok(match outcome {
            InnerMax::Found(members) => finish(g, kind, members, stats, t0, false),
            // Lower bound 1 is unreachable only on the empty graph, whose
            // maximum is the empty set.
            InnerMax::BelowBound => finish(g, kind, Vec::new(), stats, t0, false),
            InnerMax::TimedOut => finish(g, kind, Vec::new(), stats, t0, true),
        });
    }

    let ord = x_degeneracy_ordering(g, cfg.x);
    let mut best: Option<Vec<usize>> = None;
    let mut best_size = 0usize;
    for &v in &ord.order {
        let q = core(g, &ord, v);
        assert!(
            q.len() <= ord.d_x + 1,
            "kernel bound violated: |Q| = {} > d_x + 1 = {}",
            q.len(),
            ord.d_x + 1
        );
        let bound = match cfg.variant {
            Variant::Full => 1,
            Variant::Default => best_size + 1,
            Variant::Hint => cfg.hint_value.expect("validated"),
            Variant::NoTk => unreachable!(),
        };
        if q.len() < bound {
            continue;
        }
        let (sub, mapping) = g.induced_subgraph(&q).expect("core ids are in range");
        stats.oracle_calls += 1;
        stats.max_core_size = stats.max_core_size.max(q.len());
        match maximum_inner(&sub, kind, bound, deadline, &mut stats) {
            InnerMax::Found(members) => {
                let original: Vec<usize> = members.iter().map(|&i| mapping[i]).collect();
                if original.len() > best_size || best.is_none() {
                    best_size = original.len();
                    best = Some(original);
                }
            }
            InnerMax::BelowBound => {}
            InnerMax::TimedOut => {
                return Ok(finish(g, kind, best.unwrap_or_default(), stats, t0, true));
            }
        }
    }

    // Distance-2 plex kernel: sizes below 2s-1 are outside the guarantee.
    if let CandidateKind::Plex(s) = kind {
        if cfg.x == 2 && best_size < 2 * s - 1 {
            let fb = small_plex_fallback(g, s);
            if fb.size() > best_size {
                best_size = fb.size();
                best = Some(fb.members.as_slice().to_vec());
            }
        }
    }

    if cfg.variant == Variant::Hint {
        let hint = cfg.hint_value.expect("validated");
        if best_size < hint {
            stats.elapsed = t0.elapsed().as_secs_f64();
            return Ok(MaxOutcome::BelowBound(stats));
        }
    }

    Ok(finish(g, kind, best.unwrap_or_default(), stats, t0, false))
}

fn finish(
    g: &Graph,
    kind: CandidateKind,
    members: Vec<usize>,
    mut stats: SolveStats,
    t0: Instant,
    timed_out: bool,
) -> MaxOutcome {
    let set = VertexSet::from_unsorted(members);
    let certified = kind.is_satisfied(g, &set);
    assert!(certified, "solver produced an uncertified set");
    stats.timed_out = timed_out;
    stats.elapsed = t0.elapsed().as_secs_f64();
    let sol = Solution {
        members: set,
        certified,
        stats,
    };
    if timed_out {
        MaxOutcome::TimedOut(sol)
    } else {
        MaxOutcome::Found(sol)
    }
}

fn validate_kind(kind: CandidateKind) -> Result<(), SolveError> {
    if kind.s() < 1 {
        return Err(SolveError::InvalidConfig("s must be at least 1".into()));
    }
    Ok(())
}

fn validate_config(kind: CandidateKind, cfg: &VariantConfig) -> Result<(), SolveError> {
    if cfg.x < 1 {
        return Err(SolveError::InvalidConfig(
            "kernel radius must be at least 1".into(),
        ));
    }
    if cfg.variant == Variant::Hint && cfg.hint_value.is_none() {
        return Err(SolveError::InvalidConfig(
            "hint variant requires a hint value".into(),
        ));
    }
    match kind {
        CandidateKind::Club(s) if cfg.x < s => Err(SolveError::InvalidConfig(format!(
            "club kernel radius {} is below s = {s}",
            cfg.x
        ))),
        CandidateKind::Plex(s) if cfg.x < s && cfg.x != 2 => Err(SolveError::InvalidConfig(
            format!("plex kernel radius {} must be s or 2", cfg.x),
        )),
        _ => Ok(()),
    }
}

enum InnerMax {
    Found(Vec<usize>),
    BelowBound,
    TimedOut,
}

fn maximum_inner(
    g: &Graph,
    kind: CandidateKind,
    lower_bound: usize,
    deadline: Option<Instant>,
    stats: &mut SolveStats,
) -> InnerMax {
    let n = g.n();
    if lower_bound > n {
        return InnerMax::BelowBound;
    }
    for budget in 0..=(n - lower_bound) {
        match delete_inner(g, kind, budget, deadline, stats) {
            Ok(Some(deleted)) => {
                let mut gone = vec![false; n];
                for &v in &deleted {
                    gone[v] = true;
                }
                let members: Vec<usize> = (0..n).filter(|&v| !gone[v]).collect();
                return InnerMax::Found(members);
            }
            Ok(None) => {}
            Err(Timeout) => return InnerMax::TimedOut,
        }
    }
    InnerMax::BelowBound
}

fn delete_inner(
    g: &Graph,
    kind: CandidateKind,
    budget: usize,
    deadline: Option<Instant>,
    stats: &mut SolveStats,
) -> Result<Option<Vec<usize>>, Timeout> {
    let mut ctx = SearchCtx {
        g,
        kind,
        deadline,
        stats,
        dist: vec![None; g.n()],
        touched: Vec::new(),
        queue: std::collections::VecDeque::new(),
    };
    let mut alive = vec![true; g.n()];
    let mut deleted = Vec::new();
    ctx.search(&mut alive, g.n(), budget, &mut deleted)
}

struct SearchCtx<'a> {
    g: &'a Graph,
    kind: CandidateKind,
    deadline: Option<Instant>,
    stats: &'a mut SolveStats,
    dist: Vec<Option<u32>>,
    touched: Vec<usize>,
    queue: std::collections::VecDeque<usize>,
}

enum PlexCheck {
    Feasible,
    Disconnected,
    Violator { vertex: usize, nonadj: Vec<usize> },
}

impl<'a> SearchCtx<'a> {
    fn search(
        &mut self,
        alive: &mut Vec<bool>,
        alive_count: usize,
        budget: usize,
        deleted: &mut Vec<usize>,
    ) -> Result<Option<Vec<usize>>, Timeout> {
        self.stats.branch_nodes += 1;
        if let Some(d) = self.deadline {
            if Instant::now() >= d {
                return Err(Timeout);
            }
        }
        match self.kind {
            CandidateKind::Clique => {
                match self.clique_violation(alive) {
                    None => Ok(Some(deleted.clone())),
                    Some(pair) => self.branch_pair(alive, alive_count, budget, deleted, pair),
                }
            }
            CandidateKind::Club(s) => match self.club_violation(alive, s) {
                None => Ok(Some(deleted.clone())),
                Some(pair) => self.branch_pair(alive, alive_count, budget, deleted, pair),
            },
            CandidateKind::Plex(s) => match self.plex_check(alive, alive_count, s) {
                PlexCheck::Feasible => Ok(Some(deleted.clone())),
                PlexCheck::Disconnected => {
                    self.split_components(alive, alive_count, budget, deleted)
                }
                PlexCheck::Violator { vertex, nonadj } => {
                    if budget == 0 {
                        return Ok(None);
                    }
                    let mut candidates = Vec::with_capacity(nonadj.len() + 1);
                    candidates.push(vertex);
                    candidates.extend(nonadj);
                    for w in candidates {
                        alive[w] = false;
                        deleted.push(w);
                        let r = self.search(alive, alive_count - 1, budget - 1, deleted)?;
                        alive[w] = true;
                        deleted.pop();
                        if r.is_some() {
                            return Ok(r);
                        }
                    }
                    Ok(None)
                }
            },
        }
    }

    fn branch_pair(
        &mut self,
        alive: &mut Vec<bool>,
        alive_count: usize,
        budget: usize,
        deleted: &mut Vec<usize>,
        (u, v): (usize, usize),
    ) -> Result<Option<Vec<usize>>, Timeout> {
        if budget == 0 {
            return Ok(None);
        }
        for w in [u, v] {
            alive[w] = false;
            deleted.push(w);
            let r = self.search(alive, alive_count - 1, budget - 1, deleted)?;
            alive[w] = true;
            deleted.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }

    /// First nonadjacent alive pair in ascending (u, v) order.
    fn clique_violation(&self, alive: &[bool]) -> Option<(usize, usize)> {
        let n = self.g.n();
        for u in 0..n {
            if !alive[u] {
                continue;
            }
            for v in (u + 1)..n {
                if alive[v] && !self.g.has_edge(u, v) {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// The alive pair with maximum induced distance, provided it exceeds s;
    /// unreachable pairs rank above every finite distance, ties go to the
    /// smallest (u, v).
    fn club_violation(&mut self, alive: &[bool], s: usize) -> Option<(usize, usize)> {
        let n = self.g.n();
        let mut best: Option<(u64, usize, usize)> = None;
        for u in 0..n {
            if !alive[u] {
                continue;
            }
            self.bfs_distances(u, alive);
            for v in (u + 1)..n {
                if !alive[v] {
                    continue;
                }
                let rank = match self.dist[v] {
                    Some(d) => d as u64,
                    None => u64::MAX,
                };
                if rank > s as u64 && best.map_or(true, |(r, _, _)| rank > r) {
                    best = Some((rank, u, v));
                }
            }
            self.clear_distances();
        }
        best.map(|(_, u, v)| (u, v))
    }

    fn bfs_distances(&mut self, start: usize, alive: &[bool]) {
        self.queue.clear();
        self.dist[start] = Some(0);
        self.touched.push(start);
        self.queue.push_back(start);
        while let Some(u) = self.queue.pop_front() {
            let du = self.dist[u].expect("queued vertices have distances");
            for &w in self.g.neighbors(u) {
                if alive[w] && self.dist[w].is_none() {
                    self.dist[w] = Some(du + 1);
                    self.touched.push(w);
                    self.queue.push_back(w);
                }
            }
        }
    }

    fn clear_distances(&mut self) {
        for &w in &self.touched {
            self.dist[w] = None;
        }
        self.touched.clear();
    }

    fn plex_check(&mut self, alive: &[bool], alive_count: usize, s: usize) -> PlexCheck {
        let n = self.g.n();
        let mut worst: Option<(usize, usize)> = None; // (miss, vertex)
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            let deg = self.g.neighbors(v).iter().filter(|&&u| alive[u]).count();
            let miss = alive_count - deg;
            if worst.map_or(true, |(m, _)| miss > m) {
                worst = Some((miss, v));
            }
        }
        let Some((miss, vertex)) = worst else {
            return PlexCheck::Feasible; // empty set
        };
        if miss <= s {
            if self.is_connected(alive, alive_count) {
                return PlexCheck::Feasible;
            }
            return PlexCheck::Disconnected;
        }
        let mut nonadj = Vec::with_capacity(s);
        for u in 0..n {
            if alive[u] && u != vertex && !self.g.has_edge(vertex, u) {
                nonadj.push(u);
                if nonadj.len() == s {
                    break;
                }
            }
        }
        debug_assert_eq!(nonadj.len(), s, "violator must have s non-neighbors");
        PlexCheck::Violator { vertex, nonadj }
    }

    fn is_connected(&mut self, alive: &[bool], alive_count: usize) -> bool {
        if alive_count <= 1 {
            return true;
        }
        let start = alive.iter().position(|&a| a).expect("alive_count > 0");
        self.bfs_distances(start, alive);
        let reached = self.touched.len();
        self.clear_distances();
        reached == alive_count
    }

    /// Degree-feasible but disconnected: any target must lie inside a single
    /// connected component, so delete the other components wholesale and
    /// recurse. Components are tried in order of their smallest vertex.
    fn split_components(
        &mut self,
        alive: &mut Vec<bool>,
        alive_count: usize,
        budget: usize,
        deleted: &mut Vec<usize>,
    ) -> Result<Option<Vec<usize>>, Timeout> {
        let comps = self.components(alive);
        for comp in &comps {
            let extra = alive_count - comp.len();
            if extra > budget {
                continue;
            }
            let mut removed = Vec::with_capacity(extra);
            let mut keep = vec![false; self.g.n()];
            for &v in comp {
                keep[v] = true;
            }
            for v in 0..self.g.n() {
                if alive[v] && !keep[v] {
                    removed.push(v);
                }
            }
            for &w in &removed {
                alive[w] = false;
                deleted.push(w);
            }
            let r = self.search(alive, comp.len(), budget - extra, deleted)?;
            for &w in &removed {
                alive[w] = true;
            }
            deleted.truncate(deleted.len() - removed.len());
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }

    fn components(&mut self, alive: &[bool]) -> Vec<Vec<usize>> {
        let n = self.g.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for v in 0..n {
            if !alive[v] || seen[v] {
                continue;
            }
            let mut comp = vec![v];
            let mut stack = vec![v];
            seen[v] = true;
            while let Some(u) = stack.pop() {
                for &w in self.g.neighbors(u) {
                    if alive[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }
}
