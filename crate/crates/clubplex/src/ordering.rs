//! x-degeneracy values, x-degeneracy orderings, and their right-neighborhood
//! cores.
//!
//! The ordering is produced by peeling: repeatedly delete a remaining vertex
//! whose x-th neighborhood inside the remaining graph is smallest (ties go to
//! the smallest id). The largest neighborhood size seen at deletion time is
//! the x-degeneracy `d_x`; for `x = 1` this is the classic degeneracy.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

/// An x-degeneracy ordering together with its certificate data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XOrdering {
    /// Neighborhood radius the ordering was computed for.
    pub x: usize,
    /// Deletion order (a permutation of all vertex ids).
    pub order: Vec<usize>,
    /// The x-degeneracy: the maximum of `peel_sizes`.
    pub d_x: usize,
    /// `peel_sizes[i]` is the size of `order[i]`'s x-th neighborhood in the
    /// graph induced by `order[i..]`.
    pub peel_sizes: Vec<usize>,
}

/// First inconsistency found by [`verify_ordering`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderingViolation {
    #[error("radius must be at least 1")]
    InvalidRadius,
    #[error("order is not a permutation of the graph's vertices")]
    NotPermutation,
    #[error("peel_sizes length {found} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("position {position}: vertex {vertex} claims peel size {claimed}, recomputed {actual}")]
    PeelSizeMismatch {
        position: usize,
        vertex: usize,
        claimed: usize,
        actual: usize,
    },
    #[error("claimed d_x {claimed} differs from max peel size {actual}")]
    DxMismatch { claimed: usize, actual: usize },
}

/// BFS workspace reused across the peeling rounds.
struct Bfs {
    seen: Vec<bool>,
    touched: Vec<usize>,
    queue: VecDeque<(usize, usize)>,
}

impl Bfs {
    fn new(n: usize) -> Self {
        Bfs {
            seen: vec![false; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    /// Vertices at distance 1..=x from `v` in the subgraph of alive vertices.
    /// `v` itself must be alive and is not reported.
    fn run(&mut self, g: &Graph, v: usize, x: usize, alive: &[bool], out: &mut Vec<usize>) {
        out.clear();
        self.queue.clear();
        self.seen[v] = true;
        self.touched.push(v);
        self.queue.push_back((v, 0));
        while let Some((u, depth)) = self.queue.pop_front() {
            if depth == x {
                continue;
            }
            for &w in g.neighbors(u) {
                if alive[w] && !self.seen[w] {
                    self.seen[w] = true;
                    self.touched.push(w);
                    out.push(w);
                    self.queue.push_back((w, depth + 1));
                }
            }
        }
        for &w in &self.touched {
            self.seen[w] = false;
        }
        self.touched.clear();
    }

    fn count(&mut self, g: &Graph, v: usize, x: usize, alive: &[bool], scratch: &mut Vec<usize>) -> usize {
        self.run(g, v, x, alive, scratch);
        scratch.len()
    }
}

/// Computes an x-degeneracy ordering by min-size peeling.
///
/// After each deletion only the sizes of vertices within distance `x` of the
/// deleted vertex are recomputed; all other x-th neighborhoods are unchanged.
/// [`verify_ordering`] recomputes every size from scratch and is used by the
/// test suite to cross-check this shortcut.
pub fn x_degeneracy_ordering(g: &Graph, x: usize) -> XOrdering {
    assert!(x >= 1, "radius must be at least 1");
    let n = g.n();
    let mut alive = vec![true; n];
    let mut bfs = Bfs::new(n);
    let mut scratch = Vec::new();
    let mut sizes: Vec<usize> = (0..n)
        .map(|v| bfs.count(g, v, x, &alive, &mut scratch))
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut peel_sizes = Vec::with_capacity(n);
    let mut affected = Vec::new();
    for _ in 0..n {
        let mut pick = usize::MAX;
        for v in 0..n {
            if alive[v] && (pick == usize::MAX || sizes[v] < sizes[pick]) {
                pick = v;
            }
        }
        bfs.run(g, pick, x, &alive, &mut affected);
        order.push(pick);
        peel_sizes.push(sizes[pick]);
        alive[pick] = false;
        for i in 0..affected.len() {
            let u = affected[i];
            sizes[u] = bfs.count(g, u, x, &alive, &mut scratch);
        }
    }
    let d_x = peel_sizes.iter().copied().max().unwrap_or(0);
    XOrdering {
        x,
        order,
        d_x,
        peel_sizes,
    }
}

/// `Q_x[v]`: `v` plus its x-th neighborhood inside the subgraph induced by
/// `v` and all vertices that follow it in the ordering. Its size is at most
/// `d_x + 1`.
pub fn core(g: &Graph, ord: &XOrdering, v: usize) -> VertexSet {
    assert!(v < g.n(), "vertex {v} out of range");
    let n = g.n();
    let mut pos = vec![usize::MAX; n];
    for (i, &u) in ord.order.iter().enumerate() {
        pos[u] = i;
    }
    assert!(pos[v] != usize::MAX, "ordering does not cover vertex {v}");
    let alive: Vec<bool> = (0..n).map(|u| pos[u] >= pos[v]).collect();
    let mut bfs = Bfs::new(n);
    let mut reached = Vec::new();
    bfs.run(g, v, ord.x, &alive, &mut reached);
    reached.push(v);
    VertexSet::from_unsorted(reached)
}

/// Recomputes every peel size from scratch and checks the `XOrdering`
/// invariants. Returns the first violation found.
pub fn verify_ordering(g: &Graph, ord: &XOrdering) -> Result<(), OrderingViolation> {
    if ord.x < 1 {
        return Err(OrderingViolation::InvalidRadius);
    }
    let n = g.n();
    if ord.order.len() != n {
        return Err(OrderingViolation::NotPermutation);
    }
    let mut seen = vec![false; n];
    for &v in &ord.order {
        if v >= n || seen[v] {
            return Err(OrderingViolation::NotPermutation);
        }
        seen[v] = true;
    }
    if ord.peel_sizes.len() != n {
        return Err(OrderingViolation::LengthMismatch {
            expected: n,
            found: ord.peel_sizes.len(),
        });
    }
    let mut alive = vec![true; n];
    let mut bfs = Bfs::new(n);
    let mut scratch = Vec::new();
    let mut max_peel = 0;
    for (i, &v) in ord.order.iter().enumerate() {
        let actual = bfs.count(g, v, ord.x, &alive, &mut scratch);
        if actual != ord.peel_sizes[i] {
            return Err(OrderingViolation::PeelSizeMismatch {
                position: i,
                vertex: v,
                claimed: ord.peel_sizes[i],
                actual,
            });
        }
        max_peel = max_peel.max(actual);
        alive[v] = false;
    }
    if ord.d_x != max_peel {
        return Err(OrderingViolation::DxMismatch {
            claimed: ord.d_x,
            actual: max_peel,
        });
    }
    Ok(())
}
