//! Independent reference implementations shared by the integration suites.
//! Everything here recomputes from first principles and never calls into
//! the solver paths it is used to check.

use clubplex::graph::{Graph, VertexSet};

/// Classic degeneracy by min-degree bucket peeling.
pub fn classic_degeneracy(g: &Graph) -> usize {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut best = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertices remain");
        best = best.max(deg[v]);
        alive[v] = false;
        for &u in g.neighbors(v) {
            if alive[u] {
                deg[u] -= 1;
            }
        }
    }
    best
}

/// Size of the x-th neighborhood of `v` inside the subgraph induced by the
/// bitmask `mask` (which must contain `v`).
pub fn x_neighborhood_size_in_mask(g: &Graph, mask: u32, v: usize, x: usize) -> usize {
    let mut seen = 1u32 << v;
    let mut frontier = vec![v];
    let mut count = 0;
    for _ in 0..x {
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                let bit = 1u32 << w;
                if mask & bit != 0 && seen & bit == 0 {
                    seen |= bit;
                    count += 1;
                    next.push(w);
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    count
}

/// Exact minimum over all vertex orderings of the maximum right
/// x-neighborhood size, computed by dynamic programming over subsets:
/// width(S) = min over v in S of max(|N_x of v in G[S]|, width(S without v)).
/// This equals the x-degeneracy by definition.
pub fn min_ordering_width(g: &Graph, x: usize) -> usize {
    let n = g.n();
    assert!(n <= 16, "subset DP supports n <= 16");
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let mut memo = vec![0u32; (full as usize) + 1];
    for mask in 1..=full {
        let mut best = u32::MAX;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let nb = x_neighborhood_size_in_mask(g, mask, v, x) as u32;
            let rest = memo[(mask ^ (1 << v)) as usize];
            best = best.min(nb.max(rest));
        }
        memo[mask as usize] = best;
    }
    memo[full as usize] as usize
}

/// Literal enumeration of every permutation; cross-validates the DP on
/// very small graphs.
pub fn min_ordering_width_factorial(g: &Graph, x: usize) -> usize {
    use itertools::Itertools;
    let n = g.n();
    assert!(n <= 6, "factorial enumeration supports n <= 6");
    if n == 0 {
        return 0;
    }
    (0..n)
        .permutations(n)
        .map(|order| {
            let mut mask: u32 = (1 << n) - 1;
            let mut width = 0;
            for &v in &order {
                width = width.max(x_neighborhood_size_in_mask(g, mask, v, x));
                mask ^= 1 << v;
            }
            width
        })
        .min()
        .expect("at least one ordering")
}

/// All subsets of the vertices of `g` as [`VertexSet`]s (including the
/// empty set). Only for graphs small enough to enumerate.
pub fn all_subsets(g: &Graph) -> impl Iterator<Item = VertexSet> + '_ {
    let n = g.n();
    assert!(n <= 16);
    (0u32..(1 << n)).map(move |mask| {
        VertexSet::from_unsorted((0..n).filter(|&v| mask & (1 << v) != 0).collect())
    })
}
