//! Ground-truth predicates for cliques, s-clubs, and s-plexes.
//!
//! Every solver output is checked against these before it is reported as
//! certified. Distances for the club predicate are measured inside the
//! induced subgraph, never in the host graph.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// Which relaxation is being solved. A 1-club and a 1-plex are each a
/// clique, so `Club(1)`, `Plex(1)`, and `Clique` accept the same sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CandidateKind {
    Clique,
    Club(usize),
    Plex(usize),
}

impl CandidateKind {
    pub fn s(&self) -> usize {
        match self {
            CandidateKind::Clique => 1,
            CandidateKind::Club(s) | CandidateKind::Plex(s) => *s,
        }
    }

    pub fn problem_name(&self) -> &'static str {
        match self {
            CandidateKind::Clique => "clique",
            CandidateKind::Club(_) => "club",
            CandidateKind::Plex(_) => "plex",
        }
    }

    /// Runs the matching predicate.
    pub fn is_satisfied(&self, g: &Graph, set: &VertexSet) -> bool {
        match self {
            CandidateKind::Clique => is_clique(g, set),
            CandidateKind::Club(s) => is_s_club(g, set, *s),
            CandidateKind::Plex(s) => is_s_plex(g, set, *s),
        }
    }
}

impl std::fmt::Display for CandidateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CandidateKind::Clique => write!(f, "clique"),
            CandidateKind::Club(s) => write!(f, "{s}-club"),
            CandidateKind::Plex(s) => write!(f, "{s}-plex"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("set is not an s-plex for s = {s}")]
    NotAPlex { s: usize },
    #[error("set has {len} vertices, below the 2s-1 = {threshold} threshold")]
    TooSmall { len: usize, threshold: usize },
}

/// True iff every pair in `set` is adjacent. The empty set and singletons
/// are cliques.
pub fn is_clique(g: &Graph, set: &VertexSet) -> bool {
    let ids = set.as_slice();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            if !g.has_edge(u, v) {
                return false;
            }
        }
    }
    true
}

/// True iff the subgraph induced by `set` has diameter at most `s`.
/// A disconnected induced subgraph on two or more vertices is never an
/// s-club; the empty set and singletons are s-clubs for every s.
pub fn is_s_club(g: &Graph, set: &VertexSet, s: usize) -> bool {
    assert!(s >= 1, "s must be at least 1");
    let k = set.len();
    if k <= 1 {
        return true;
    }
    // BFS from every member, restricted to the set, truncated at depth s.
    for u in set.iter() {
        if reachable_within(g, set, u, s) < k {
            return false;
        }
    }
    true
}

/// Number of members of `set` (including `start`) within induced distance
/// `depth_limit` of `start`.
fn reachable_within(g: &Graph, set: &VertexSet, start: usize, depth_limit: usize) -> usize {
    let mut seen = vec![false; g.n()];
    let mut queue = VecDeque::new();
    seen[start] = true;
    queue.push_back((start, 0usize));
    let mut reached = 1;
    while let Some((u, depth)) = queue.pop_front() {
        if depth == depth_limit {
            continue;
        }
        for &w in g.neighbors(u) {
            if !seen[w] && set.contains(w) {
                seen[w] = true;
                reached += 1;
                queue.push_back((w, depth + 1));
            }
        }
    }
    reached
}

/// True iff the induced subgraph is connected and every member `v`
/// satisfies `|set \ N(v)| <= s`. The set difference counts `v` itself.
/// The empty set and singletons are s-plexes for every s.
pub fn is_s_plex(g: &Graph, set: &VertexSet, s: usize) -> bool {
    assert!(s >= 1, "s must be at least 1");
    let k = set.len();
    if k <= 1 {
        return true;
    }
    for v in set.iter() {
        let inside_degree = g.neighbors(v).iter().filter(|&&u| set.contains(u)).count();
        if k - inside_degree > s {
            return false;
        }
    }
    // Connectivity: BFS without a depth bound must reach the whole set.
    let start = set.as_slice()[0];
    reachable_within(g, set, start, k) == k
}

/// Checks the diameter-2 guarantee for s-plexes of size at least 2s-1.
/// Under the stated precondition the answer is always `true`; the function
/// exists as a runtime assertion hook and enumeration-test target.
pub fn plex_diameter_witness(g: &Graph, set: &VertexSet, s: usize) -> Result<bool, WitnessError> {
    assert!(s >= 1, "s must be at least 1");
    if !is_s_plex(g, set, s) {
        return Err(WitnessError::NotAPlex { s });
    }
    let threshold = 2 * s - 1;
    if set.len() < threshold {
        return Err(WitnessError::TooSmall {
            len: set.len(),
            threshold,
        });
    }
    Ok(is_s_club(g, set, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_random_graph;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    fn set(ids: &[usize]) -> VertexSet {
        VertexSet::from_unsorted(ids.to_vec())
    }

    fn subsets(n: usize) -> impl Iterator<Item = VertexSet> {
        (0u32..(1 << n)).map(move |mask| {
            VertexSet::from_unsorted((0..n).filter(|&v| mask & (1 << v) != 0).collect())
        })
    }

    #[test]
    fn clique_examples() {
        let k4 = complete(4);
        assert!(is_clique(&k4, &set(&[0, 2, 3])));
        let p3 = path(3);
        assert!(!is_clique(&p3, &set(&[0, 2])));
        assert!(is_clique(&p3, &VertexSet::empty()));
    }

    #[test]
    fn club_examples() {
        let c5 = cycle(5);
        assert!(is_s_club(&c5, &set(&[0, 1, 2, 3, 4]), 2));
        let p4 = path(4);
        assert!(!is_s_club(&p4, &set(&[0, 1, 2, 3]), 2));
        assert!(is_s_club(&p4, &set(&[0, 1, 2, 3]), 3));
        // Induced distance: vertex 3 is disconnected inside {0,1,3}.
        assert!(!is_s_club(&c5, &set(&[0, 1, 3]), 2));
    }

    #[test]
    fn plex_examples() {
        let mut k4_minus = complete(4);
        k4_minus = {
            let edges: Vec<_> = k4_minus
                .edges()
                .into_iter()
                .filter(|&e| e != (2, 3))
                .collect();
            Graph::from_edges(4, &edges).unwrap()
        };
        assert!(is_s_plex(&k4_minus, &set(&[0, 1, 2, 3]), 2));
        let c5 = cycle(5);
        assert!(!is_s_plex(&c5, &set(&[0, 1, 2, 3, 4]), 2));
        assert!(is_s_plex(&c5, &set(&[0, 1, 2, 3, 4]), 3));
        // An induced P3 of C5 is a 2-plex: both defining conditions hold.
        assert!(is_s_plex(&c5, &set(&[0, 1, 2]), 2));
    }

    #[test]
    fn witness_examples() {
        let k5 = complete(5);
        assert_eq!(plex_diameter_witness(&k5, &set(&[0, 1, 2, 3, 4]), 2), Ok(true));
        let mut edges = complete(4).edges();
        edges.retain(|&e| e != (0, 1));
        let k4_minus = Graph::from_edges(4, &edges).unwrap();
        assert_eq!(
            plex_diameter_witness(&k4_minus, &set(&[0, 1, 2, 3]), 2),
            Ok(true)
        );
        // Precondition violations are reported, not swallowed.
        let c5 = cycle(5);
        assert_eq!(
            plex_diameter_witness(&c5, &set(&[0, 1, 2, 3, 4]), 2),
            Err(WitnessError::NotAPlex { s: 2 })
        );
        assert_eq!(
            plex_diameter_witness(&c5, &set(&[0]), 2),
            Err(WitnessError::TooSmall {
                len: 1,
                threshold: 3
            })
        );
    }

    #[test]
    fn s1_variants_coincide() {
        for seed in 0..10u64 {
            let g = generate_random_graph(8, 0.4, seed);
            for s in subsets(8) {
                let a = is_clique(&g, &s);
                assert_eq!(a, is_s_club(&g, &s, 1));
                assert_eq!(a, is_s_plex(&g, &s, 1));
            }
        }
    }

    #[test]
    fn monotone_in_s() {
        for seed in 0..8u64 {
            let g = generate_random_graph(8, 0.3, seed);
            for s in subsets(8) {
                for k in 1..=3usize {
                    if is_s_club(&g, &s, k) {
                        assert!(is_s_club(&g, &s, k + 1));
                    }
                    if is_s_plex(&g, &s, k) {
                        assert!(is_s_plex(&g, &s, k + 1));
                    }
                }
            }
        }
    }

    #[test]
    fn every_plex_is_a_club() {
        for seed in 0..8u64 {
            let g = generate_random_graph(9, 0.35, seed);
            for s in subsets(9) {
                for k in 2..=3usize {
                    if is_s_plex(&g, &s, k) {
                        assert!(is_s_club(&g, &s, k), "seed {seed} k {k}");
                    }
                }
            }
        }
    }

    #[test]
    fn large_plexes_have_diameter_two() {
        for seed in 0..10u64 {
            let g = generate_random_graph(9, 0.4, seed);
            for sub in subsets(9) {
                for s in 2..=3usize {
                    if sub.len() >= 2 * s - 1 && is_s_plex(&g, &sub, s) {
                        assert_eq!(plex_diameter_witness(&g, &sub, s), Ok(true));
                    }
                }
            }
        }
    }
}
