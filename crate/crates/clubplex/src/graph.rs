//! Simple undirected graphs with contiguous 0-based vertex ids.
//!
//! Covers parsing (edge-list and DIMACS), serialization, induced subgraphs,
//! depth-bounded BFS neighborhoods, and the seeded instance generators used
//! by the benchmark harness. Graphs are immutable after construction and can
//! be shared freely across solver runs.

use std::collections::HashMap;
use std::collections::VecDeque;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// A set of vertex ids, stored sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet {
    ids: Vec<usize>,
}

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet { ids: Vec::new() }
    }

    /// Builds a set from arbitrary ids; sorts and drops duplicates.
    pub fn from_unsorted(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        VertexSet { ids }
    }

    /// `ids` must already be sorted strictly ascending.
    pub fn from_sorted(ids: Vec<usize>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        VertexSet { ids }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.ids.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.ids
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        VertexSet::from_unsorted(iter.into_iter().collect())
    }
}

/// Contract violations when a vertex set and a graph do not match.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id {v} out of range for a graph with {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
}

/// Errors raised while reading graph files.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: expected 2 tokens, found {found}")]
    MalformedEdgeLine { line: usize, found: usize },
    #[error("missing 'p <format> <n> <m>' header line")]
    MissingHeader,
    #[error("line {line}: duplicate 'p' header line")]
    DuplicateHeader { line: usize },
    #[error("line {line}: vertex id {id} outside 1..={n}")]
    IdOutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: malformed token '{token}'")]
    BadToken { line: usize, token: String },
    #[error("line {line}: unrecognized line start '{token}'")]
    UnknownLine { line: usize, token: String },
}

/// An immutable simple undirected graph.
///
/// Neighbor lists are sorted ascending; there are no self-loops or parallel
/// edges, and `m` is always half the total adjacency length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Graph with `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Self-loops and duplicate edges are
    /// dropped silently; out-of-range endpoints are contract errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph {
            adj,
            m: m / 2,
            labels: None,
        })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if v > u {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// The original name of vertex `v`, or its id when the graph was built
    /// programmatically.
    pub fn label(&self, v: usize) -> String {
        match &self.labels {
            Some(ls) => ls[v].clone(),
            None => v.to_string(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.vertices().map(|v| self.label(v)).collect()
    }

    /// Maps each label back to its vertex id.
    pub fn label_index(&self) -> HashMap<String, usize> {
        self.vertices().map(|v| (self.label(v), v)).collect()
    }

    /// Parses whitespace-separated edge-list text. Vertex tokens may be
    /// arbitrary strings and are remapped to dense ids in first-appearance
    /// order; `%` and `#` start comment lines. Self-loops and duplicate
    /// edges are dropped.
    pub fn parse_edge_list(input: &str) -> Result<Self, ParseError> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut labels: Vec<String> = Vec::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('%') || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(ParseError::MalformedEdgeLine {
                    line: lineno + 1,
                    found: tokens.len(),
                });
            }
            let mut ids = [0usize; 2];
            for (slot, tok) in ids.iter_mut().zip(tokens) {
                *slot = match index.get(tok) {
                    Some(&id) => id,
                    None => {
                        let id = labels.len();
                        labels.push(tok.to_string());
                        index.insert(tok.to_string(), id);
                        id
                    }
                };
            }
            edges.push((ids[0], ids[1]));
        }
        let mut g = Graph::from_edges(labels.len(), &edges).expect("ids are dense by construction");
        g.labels = Some(labels);
        Ok(g)
    }

    /// Parses DIMACS text (`c` comments, one `p <fmt> <n> <m>` header, then
    /// 1-based `e u v` lines). Returns the graph plus non-fatal warnings
    /// (currently: declared vs. actual edge-count mismatch).
    pub fn parse_dimacs(input: &str) -> Result<(Self, Vec<String>), ParseError> {
        let mut declared: Option<(usize, usize)> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut edge_lines = 0usize;
        for (lineno, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens[0] {
                "c" => continue,
                "p" => {
                    if declared.is_some() {
                        return Err(ParseError::DuplicateHeader { line: lineno + 1 });
                    }
                    if tokens.len() < 4 {
                        return Err(ParseError::MalformedEdgeLine {
                            line: lineno + 1,
                            found: tokens.len(),
                        });
                    }
                    let n = parse_usize(tokens[2], lineno + 1)?;
                    let m = parse_usize(tokens[3], lineno + 1)?;
                    declared = Some((n, m));
                }
                "e" => {
                    let (n, _) = declared.ok_or(ParseError::MissingHeader)?;
                    if tokens.len() != 3 {
                        return Err(ParseError::MalformedEdgeLine {
                            line: lineno + 1,
                            found: tokens.len(),
                        });
                    }
                    let u = parse_usize(tokens[1], lineno + 1)?;
                    let v = parse_usize(tokens[2], lineno + 1)?;
                    for id in [u, v] {
                        if id < 1 || id > n {
                            return Err(ParseError::IdOutOfRange {
                                line: lineno + 1,
                                id,
                                n,
                            });
                        }
                    }
                    edges.push((u - 1, v - 1));
                    edge_lines += 1;
                }
                other => {
                    return Err(ParseError::UnknownLine {
                        line: lineno + 1,
                        token: other.to_string(),
                    })
                }
            }
        }
        let (n, m_decl) = declared.ok_or(ParseError::MissingHeader)?;
        let mut warnings = Vec::new();
        if edge_lines != m_decl {
            warnings.push(format!(
                "header declares {m_decl} edges but {edge_lines} edge lines were found"
            ));
        }
        let mut g = Graph::from_edges(n, &edges).expect("edge ids validated above");
        g.labels = Some((1..=n).map(|i| i.to_string()).collect());
        Ok((g, warnings))
    }

    /// Serializes as edge-list text with `#` header comments carrying n and m.
    /// Isolated vertices are not representable in this format; use
    /// [`Graph::to_dimacs`] when the exact vertex count must round-trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# n {}\n# m {}\n", self.n(), self.m()));
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.label(u), self.label(v)));
        }
        out
    }

    /// Serializes as DIMACS text (1-based ids).
    pub fn to_dimacs(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("p edge {} {}\n", self.n(), self.m()));
        for (u, v) in self.edges() {
            out.push_str(&format!("e {} {}\n", u + 1, v + 1));
        }
        out
    }

    /// The subgraph induced by `s`, plus the mapping from new ids back to
    /// the ids of `self` (`mapping[new] = old`).
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        let n = self.n();
        for v in s.iter() {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
        }
        let mapping: Vec<usize> = s.as_slice().to_vec();
        let mut new_id = vec![usize::MAX; n];
        for (i, &old) in mapping.iter().enumerate() {
            new_id[old] = i;
        }
        let mut adj = vec![Vec::new(); mapping.len()];
        let mut m = 0;
        for (i, &old) in mapping.iter().enumerate() {
            for &w in &self.adj[old] {
                let j = new_id[w];
                if j != usize::MAX {
                    adj[i].push(j);
                }
            }
            adj[i].sort_unstable();
            m += adj[i].len();
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| mapping.iter().map(|&old| ls[old].clone()).collect());
        Ok((
            Graph {
                adj,
                m: m / 2,
                labels,
            },
            mapping,
        ))
    }

    /// `N_x(v)`: all vertices at distance between 1 and `x` from `v`,
    /// computed by depth-truncated BFS. Excludes `v` itself.
    pub fn bounded_neighborhood(&self, v: usize, x: usize) -> VertexSet {
        assert!(v < self.n(), "vertex {v} out of range");
        assert!(x >= 1, "radius must be at least 1");
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen[v] = true;
        queue.push_back((v, 0usize));
        while let Some((u, depth)) = queue.pop_front() {
            if depth == x {
                continue;
            }
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                    queue.push_back((w, depth + 1));
                }
            }
        }
        VertexSet::from_unsorted(out)
    }

    /// The connected component containing `v` (including `v`).
    pub fn component_of(&self, v: usize) -> VertexSet {
        assert!(v < self.n(), "vertex {v} out of range");
        let mut seen = vec![false; self.n()];
        let mut stack = vec![v];
        seen[v] = true;
        let mut out = vec![v];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    out.push(w);
                    stack.push(w);
                }
            }
        }
        VertexSet::from_unsorted(out)
    }
}

fn parse_usize(token: &str, line: usize) -> Result<usize, ParseError> {
    token.parse().map_err(|_| ParseError::BadToken {
        line,
        token: token.to_string(),
    })
}

/// Erdős–Rényi G(n, p), deterministic for a fixed seed.
pub fn generate_random_graph(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "probability out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("generated ids in range")
}

/// A sparse instance with one planted dense core: a path backbone over the
/// non-core vertices, a clique on `core_size` vertices, and a single bridge
/// edge joining the two. Vertex placement is a seeded permutation.
///
/// The 2-degeneracy of the result stays close to `core_size` (path vertices
/// have tiny 2-neighborhoods), which makes these instances cheap for
/// kernelized solvers while a whole-graph search would have to branch over
/// hundreds of vertices.
pub fn generate_planted_core(n: usize, core_size: usize, seed: u64) -> Graph {
    assert!(core_size >= 1 && core_size <= n, "core size out of range");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
    let path = &perm[..n - core_size];
    let core = &perm[n - core_size..];
    let mut edges = Vec::new();
    for w in path.windows(2) {
        edges.push((w[0], w[1]));
    }
    for i in 0..core.len() {
        for j in (i + 1)..core.len() {
            edges.push((core[i], core[j]));
        }
    }
    if !path.is_empty() {
        let pu = path[rng.gen_range(0..path.len())];
        let cv = core[rng.gen_range(0..core.len())];
        edges.push((pu, cv));
    }
    Graph::from_edges(n, &edges).expect("generated ids in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

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

    #[test]
    fn edge_list_basic() {
        let g = Graph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
    }

    #[test]
    fn edge_list_dedup_and_loops() {
        let g = Graph::parse_edge_list("a b\nb a\na a").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
        assert_eq!(g.label(0), "a");
        assert_eq!(g.label(1), "b");
    }

    #[test]
    fn edge_list_comments_and_blanks() {
        let g = Graph::parse_edge_list("% c\n0 1\n\n2 3").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 2);
    }

    #[test]
    fn edge_list_malformed_line_reports_number() {
        let err = Graph::parse_edge_list("0 1\n2 3 4").unwrap_err();
        assert_eq!(err, ParseError::MalformedEdgeLine { line: 2, found: 3 });
    }

    #[test]
    fn edge_list_empty_input_is_empty_graph() {
        let g = Graph::parse_edge_list("").unwrap();
        assert_eq!(g.n(), 0);
        assert_eq!(g.m(), 0);
    }

    #[test]
    fn dimacs_path() {
        let (g, warnings) = Graph::parse_dimacs("p edge 3 2\ne 1 2\ne 2 3").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(warnings.is_empty());
        assert_eq!(g.label(0), "1");
    }

    #[test]
    fn dimacs_comment_and_k2() {
        let (g, _) = Graph::parse_dimacs("c x\np edge 2 1\ne 1 2").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn dimacs_isolated_vertices() {
        let (g, _) = Graph::parse_dimacs("p edge 4 0").unwrap();
        assert_eq!((g.n(), g.m()), (4, 0));
    }

    #[test]
    fn dimacs_missing_header() {
        assert_eq!(
            Graph::parse_dimacs("e 1 2").unwrap_err(),
            ParseError::MissingHeader
        );
    }

    #[test]
    fn dimacs_id_out_of_range() {
        let err = Graph::parse_dimacs("p edge 2 1\ne 1 3").unwrap_err();
        assert_eq!(
            err,
            ParseError::IdOutOfRange {
                line: 2,
                id: 3,
                n: 2
            }
        );
    }

    #[test]
    fn dimacs_edge_count_mismatch_warns() {
        let (g, warnings) = Graph::parse_dimacs("p edge 3 5\ne 1 2").unwrap();
        assert_eq!(g.m(), 1);
        assert_eq!(warnings.len(), 1);
    }

    #[test]
    fn induced_k4_minus_vertex() {
        let g = complete(4);
        let (sub, map) = g
            .induced_subgraph(&VertexSet::from_unsorted(vec![0, 1, 2]))
            .unwrap();
        assert_eq!((sub.n(), sub.m()), (3, 3));
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn induced_path_endpoints() {
        let g = path(4);
        let (sub, _) = g
            .induced_subgraph(&VertexSet::from_unsorted(vec![0, 3]))
            .unwrap();
        assert_eq!((sub.n(), sub.m()), (2, 0));
    }

    #[test]
    fn induced_c5_prefix_is_path() {
        // Enumerated by hand: C5 edges with both endpoints in {0,1,2} are
        // {0,1} and {1,2}.
        let g = cycle(5);
        let (sub, _) = g
            .induced_subgraph(&VertexSet::from_unsorted(vec![0, 1, 2]))
            .unwrap();
        assert_eq!((sub.n(), sub.m()), (3, 2));
        assert!(sub.has_edge(0, 1) && sub.has_edge(1, 2) && !sub.has_edge(0, 2));
    }

    #[test]
    fn induced_rejects_out_of_range() {
        let g = path(3);
        let err = g
            .induced_subgraph(&VertexSet::from_unsorted(vec![0, 7]))
            .unwrap_err();
        assert_eq!(err, GraphError::VertexOutOfRange { v: 7, n: 3 });
    }

    #[test]
    fn bounded_neighborhood_examples() {
        let p4 = path(4);
        assert_eq!(
            p4.bounded_neighborhood(0, 2),
            VertexSet::from_unsorted(vec![1, 2])
        );
        let c5 = cycle(5);
        assert_eq!(c5.bounded_neighborhood(0, 2).len(), 4);
        for v in p4.vertices() {
            assert_eq!(
                p4.bounded_neighborhood(v, 1).as_slice(),
                p4.neighbors(v),
                "x=1 must equal the adjacency list"
            );
        }
    }

    #[test]
    fn bounded_neighborhood_nesting_and_component() {
        for seed in 0..10u64 {
            let g = generate_random_graph(12, 0.25, seed);
            for v in g.vertices() {
                for x in 1..4 {
                    let a = g.bounded_neighborhood(v, x);
                    let b = g.bounded_neighborhood(v, x + 1);
                    assert!(a.iter().all(|u| b.contains(u)));
                }
                let full = g.bounded_neighborhood(v, g.n().max(1));
                let comp = g.component_of(v);
                assert_eq!(full.len(), comp.len() - 1);
                assert!(full.iter().all(|u| comp.contains(u)));
            }
        }
    }

    #[test]
    fn random_graph_extremes_and_determinism() {
        assert_eq!(generate_random_graph(5, 0.0, 3).m(), 0);
        assert_eq!(generate_random_graph(5, 1.0, 3).m(), 10);
        let a = generate_random_graph(50, 0.5, 42);
        let b = generate_random_graph(50, 0.5, 42);
        assert_eq!(a.edges(), b.edges());
    }

    #[test]
    fn planted_core_contains_clique_and_is_deterministic() {
        let g = generate_planted_core(60, 8, 7);
        assert_eq!(g.n(), 60);
        let h = generate_planted_core(60, 8, 7);
        assert_eq!(g.edges(), h.edges());
        // Some 8 vertices must be pairwise adjacent: find them by degree
        // (core vertices have degree >= 7).
        let core: Vec<usize> = g.vertices().filter(|&v| g.degree(v) >= 7).collect();
        assert!(core.len() >= 8);
    }

    #[test]
    fn induced_full_set_is_identity() {
        let g = generate_random_graph(15, 0.3, 9);
        let all: VertexSet = g.vertices().collect();
        let (sub, map) = g.induced_subgraph(&all).unwrap();
        assert_eq!(sub.edges(), g.edges());
        assert_eq!(map, (0..15).collect::<Vec<_>>());
    }

    proptest! {
        #[test]
        fn edge_list_round_trip(seed in 0u64..500, n in 1usize..20, p in 0.0f64..1.0) {
            let g = generate_random_graph(n, p, seed);
            let text = g.to_edge_list();
            let back = Graph::parse_edge_list(&text).unwrap();
            // Identity on the edge set, stated over unordered label pairs
            // (re-parsing remaps ids in first-appearance order).
            fn label_pairs(g: &Graph) -> Vec<(String, String)> {
                let mut pairs: Vec<(String, String)> = g
                    .edges()
                    .iter()
                    .map(|&(u, v)| {
                        let (a, b) = (g.label(u), g.label(v));
                        if a <= b { (a, b) } else { (b, a) }
                    })
                    .collect();
                pairs.sort();
                pairs
            }
            prop_assert_eq!(label_pairs(&g), label_pairs(&back));
        }

        #[test]
        fn dimacs_round_trip_preserves_n(seed in 0u64..200, n in 0usize..15, p in 0.0f64..1.0) {
            let g = generate_random_graph(n, p, seed);
            let (back, warnings) = Graph::parse_dimacs(&g.to_dimacs()).unwrap();
            prop_assert!(warnings.is_empty());
            prop_assert_eq!(back.n(), g.n());
            prop_assert_eq!(back.edges(), g.edges());
        }
    }
}
