//! Integer-programming formulations for s-plex, 2-club, and 3-club, with
//! LP-file serialization and a feasibility evaluator.
//!
//! No solver is invoked here: models are built, written to the standard LP
//! text format for external solvers, and checked against fixed 0/1
//! assignments with exact integer arithmetic. The plex formulation encodes
//! only the degree condition, not connectivity.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Clone, Debug, PartialEq)]
pub enum VarDomain {
    Binary,
    Integer { lo: i64, hi: i64 },
    Continuous { lo: f64, hi: f64 },
}

/// What a variable stands for; used by the evaluator's canonical completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarRole {
    /// `x_v`: vertex v is selected.
    Vertex(usize),
    /// `z_e`: both endpoints of edge (a, b) are selected.
    EdgeIndicator(usize, usize),
    /// `y`: cardinality of the selection.
    Cardinality,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IlpVariable {
    pub name: String,
    pub domain: VarDomain,
    pub role: VarRole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl std::fmt::Display for Relation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        })
    }
}

/// `terms` are (coefficient, variable index) pairs; coefficients are exact
/// integers in all three formulations.
#[derive(Clone, Debug, PartialEq)]
pub struct IlpConstraint {
    pub name: String,
    pub terms: Vec<(i64, usize)>,
    pub relation: Relation,
    pub rhs: i64,
}

/// A maximization model over binary/integer/continuous variables.
#[derive(Clone, Debug, PartialEq)]
pub struct IlpModel {
    pub variables: Vec<IlpVariable>,
    /// Maximized linear expression.
    pub objective: Vec<(i64, usize)>,
    pub constraints: Vec<IlpConstraint>,
    vertex_count: usize,
}

impl IlpModel {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Checks the structural invariants (unique names, indices in range).
    pub fn validate(&self) -> Result<(), String> {
        let mut names: Vec<&str> = self.variables.iter().map(|v| v.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err("duplicate variable name".into());
        }
        let n = self.variables.len();
        for (coef, idx) in &self.objective {
            if *idx >= n {
                return Err(format!("objective references variable {idx} of {n}"));
            }
            if *coef == 0 {
                return Err("zero coefficient in objective".into());
            }
        }
        for c in &self.constraints {
            for (_, idx) in &c.terms {
                if *idx >= n {
                    return Err(format!(
                        "constraint {} references variable {idx} of {n}",
                        c.name
                    ));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IlpError {
    #[error("selected vertex {v} out of range for a model over {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
}

/// All-pairs host-graph distances; `None` marks unreachable pairs.
fn host_distances(g: &Graph) -> Vec<Vec<Option<u32>>> {
    let n = g.n();
    let mut all = Vec::with_capacity(n);
    for start in 0..n {
        let mut dist = vec![None; n];
        dist[start] = Some(0u32);
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have distances");
            for &w in g.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        all.push(dist);
    }
    all
}

fn vertex_variables(g: &Graph) -> Vec<IlpVariable> {
    g.vertices()
        .map(|v| IlpVariable {
            name: format!("x{v}"),
            domain: VarDomain::Binary,
            role: VarRole::Vertex(v),
        })
        .collect()
}

/// Straightforward s-plex formulation: binary `x_v`, integer cardinality
/// `y`, one degree constraint per vertex, objective `max y`. O(n)
/// constraints and O(n + m) nonzeros; connectivity is not enforced.
pub fn build_plex_model(g: &Graph, s: usize) -> IlpModel {
    assert!(s >= 1, "s must be at least 1");
    let n = g.n();
    let mut variables = vertex_variables(g);
    let y = variables.len();
    variables.push(IlpVariable {
        name: "y".into(),
        domain: VarDomain::Integer {
            lo: 0,
            hi: n as i64,
        },
        role: VarRole::Cardinality,
    });
    let mut constraints = Vec::with_capacity(n + 1);
    // y = sum of x_v
    let mut card_terms = vec![(1i64, y)];
    card_terms.extend(g.vertices().map(|v| (-1i64, v)));
    constraints.push(IlpConstraint {
        name: "card".into(),
        terms: card_terms,
        relation: Relation::Eq,
        rhs: 0,
    });
    // |V|(1 - x_v) + sum_{u in N(v)} x_u >= y - s, rearranged to constants
    // on the right.
    for v in g.vertices() {
        let mut terms = vec![(-(n as i64), v)];
        terms.extend(g.neighbors(v).iter().map(|&u| (1i64, u)));
        terms.push((-1, y));
        constraints.push(IlpConstraint {
            name: format!("deg_{v}"),
            terms,
            relation: Relation::Ge,
            rhs: -(s as i64) - (n as i64),
        });
    }
    IlpModel {
        variables,
        objective: vec![(1, y)],
        constraints,
        vertex_count: n,
    }
}

/// 2-club formulation over host-graph distances: far pairs exclude each
/// other; distance-2 pairs need a selected common neighbor. Pairs in
/// different components count as far.
pub fn build_2club_model(g: &Graph) -> IlpModel {
    let n = g.n();
    let variables = vertex_variables(g);
    let dist = host_distances(g);
    let mut constraints = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            match dist[u][v] {
                Some(0) | Some(1) => {}
                Some(2) => {
                    let mut terms = vec![(1i64, u), (1i64, v)];
                    for &c in g.neighbors(u) {
                        if g.has_edge(v, c) {
                            terms.push((-1, c));
                        }
                    }
                    constraints.push(IlpConstraint {
                        name: format!("dist2_{u}_{v}"),
                        terms,
                        relation: Relation::Le,
                        rhs: 1,
                    });
                }
                _ => constraints.push(IlpConstraint {
                    name: format!("far_{u}_{v}"),
                    terms: vec![(1, u), (1, v)],
                    relation: Relation::Le,
                    rhs: 1,
                }),
            }
        }
    }
    IlpModel {
        objective: g.vertices().map(|v| (1i64, v)).collect(),
        variables,
        constraints,
        vertex_count: n,
    }
}

/// 3-club neighborhood formulation: distance-2/3 pairs may be certified by
/// a selected common neighbor or a selected edge between their exclusive
/// neighborhoods (`z_e`, continuous in [0, 1], capped by its endpoints).
pub fn build_3club_model(g: &Graph) -> IlpModel {
    let n = g.n();
    let mut variables = vertex_variables(g);
    let edges = g.edges();
    let z_base = variables.len();
    for (j, &(a, b)) in edges.iter().enumerate() {
        variables.push(IlpVariable {
            name: format!("z{j}"),
            domain: VarDomain::Continuous { lo: 0.0, hi: 1.0 },
            role: VarRole::EdgeIndicator(a, b),
        });
    }
    let dist = host_distances(g);
    let mut constraints = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            match dist[u][v] {
                Some(0) | Some(1) => {}
                Some(2) | Some(3) => {
                    let mut terms = vec![(1i64, u), (1i64, v)];
                    for &c in g.neighbors(u) {
                        if g.has_edge(v, c) {
                            terms.push((-1, c));
                        }
                    }
                    // E_uv: edges with one endpoint adjacent only to u and
                    // the other adjacent only to v.
                    for (j, &(a, b)) in edges.iter().enumerate() {
                        let a_side_u = g.has_edge(u, a) && !g.has_edge(v, a);
                        let a_side_v = g.has_edge(v, a) && !g.has_edge(u, a);
                        let b_side_u = g.has_edge(u, b) && !g.has_edge(v, b);
                        let b_side_v = g.has_edge(v, b) && !g.has_edge(u, b);
                        if (a_side_u && b_side_v) || (a_side_v && b_side_u) {
                            terms.push((-1, z_base + j));
                        }
                    }
                    constraints.push(IlpConstraint {
                        name: format!("reach_{u}_{v}"),
                        terms,
                        relation: Relation::Le,
                        rhs: 1,
                    });
                }
                _ => constraints.push(IlpConstraint {
                    name: format!("far_{u}_{v}"),
                    terms: vec![(1, u), (1, v)],
                    relation: Relation::Le,
                    rhs: 1,
                }),
            }
        }
    }
    for (j, &(a, b)) in edges.iter().enumerate() {
        for (tag, endpoint) in [("a", a), ("b", b)] {
            constraints.push(IlpConstraint {
                name: format!("zcap_{j}{tag}"),
                terms: vec![(1, z_base + j), (-1, endpoint)],
                relation: Relation::Le,
                rhs: 0,
            });
        }
    }
    IlpModel {
        objective: g.vertices().map(|v| (1i64, v)).collect(),
        variables,
        constraints,
        vertex_count: n,
    }
}

/// Sets `x_v = 1` exactly for `selected`, completes the auxiliaries
/// canonically (`y` = selection size, `z_e` = min of its endpoints), and
/// reports feasibility plus the objective value.
pub fn evaluate_assignment(m: &IlpModel, selected: &VertexSet) -> Result<(bool, i64), IlpError> {
    for v in selected.iter() {
        if v >= m.vertex_count {
            return Err(IlpError::VertexOutOfRange {
                v,
                n: m.vertex_count,
            });
        }
    }
    let values: Vec<i64> = m
        .variables
        .iter()
        .map(|var| match var.role {
            VarRole::Vertex(v) => i64::from(selected.contains(v)),
            VarRole::Cardinality => selected.len() as i64,
            VarRole::EdgeIndicator(a, b) => {
                i64::from(selected.contains(a) && selected.contains(b))
            }
        })
        .collect();
    let mut feasible = true;
    for c in &m.constraints {
        let lhs: i64 = c.terms.iter().map(|&(coef, idx)| coef * values[idx]).sum();
        let ok = match c.relation {
            Relation::Le => lhs <= c.rhs,
            Relation::Eq => lhs == c.rhs,
            Relation::Ge => lhs >= c.rhs,
        };
        if !ok {
            feasible = false;
            break;
        }
    }
    let objective: i64 = m
        .objective
        .iter()
        .map(|&(coef, idx)| coef * values[idx])
        .sum();
    Ok((feasible, objective))
}

fn push_term(out: &mut String, coef: i64, name: &str, first: bool) {
    debug_assert!(coef != 0);
    if first {
        if coef < 0 {
            out.push_str("- ");
        }
    } else if coef < 0 {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let mag = coef.unsigned_abs();
    if mag != 1 {
        out.push_str(&format!("{mag} "));
    }
    out.push_str(name);
}

fn format_expr(terms: &[(i64, usize)], vars: &[IlpVariable]) -> String {
    let mut out = String::new();
    for (i, &(coef, idx)) in terms.iter().enumerate() {
        push_term(&mut out, coef, &vars[idx].name, i == 0);
    }
    out
}

fn format_bound(value: f64) -> String {
    if value.fract() == 0.0 {
        format!("{}", value as i64)
    } else {
        format!("{value}")
    }
}

/// Serializes to LP text: `Maximize`, `Subject To`, `Bounds`, `Binaries`,
/// `Generals`, `End`. Output is deterministic and byte-stable for a given
/// model; the dialect is pinned by the golden files in the test suite.
pub fn write_lp(m: &IlpModel) -> String {
    let mut out = String::new();
    out.push_str("Maximize\n");
    out.push_str(&format!(" obj: {}\n", format_expr(&m.objective, &m.variables)));
    out.push_str("Subject To\n");
    for c in &m.constraints {
        out.push_str(&format!(
            " {}: {} {} {}\n",
            c.name,
            format_expr(&c.terms, &m.variables),
            c.relation,
            c.rhs
        ));
    }
    let bounded: Vec<&IlpVariable> = m
        .variables
        .iter()
        .filter(|v| !matches!(v.domain, VarDomain::Binary))
        .collect();
    if !bounded.is_empty() {
        out.push_str("Bounds\n");
        for v in &bounded {
            match &v.domain {
                VarDomain::Integer { lo, hi } => {
                    out.push_str(&format!(" {lo} <= {} <= {hi}\n", v.name));
                }
                VarDomain::Continuous { lo, hi } => {
                    out.push_str(&format!(
                        " {} <= {} <= {}\n",
                        format_bound(*lo),
                        v.name,
                        format_bound(*hi)
                    ));
                }
                VarDomain::Binary => unreachable!(),
            }
        }
    }
    let binaries: Vec<&str> = m
        .variables
        .iter()
        .filter(|v| matches!(v.domain, VarDomain::Binary))
        .map(|v| v.name.as_str())
        .collect();
    if !binaries.is_empty() {
        out.push_str("Binaries\n");
        out.push_str(&format!(" {}\n", binaries.join(" ")));
    }
    let generals: Vec<&str> = m
        .variables
        .iter()
        .filter(|v| matches!(v.domain, VarDomain::Integer { .. }))
        .map(|v| v.name.as_str())
        .collect();
    if !generals.is_empty() {
        out.push_str("Generals\n");
        out.push_str(&format!(" {}\n", generals.join(" ")));
    }
    out.push_str("End\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_random_graph;
    use crate::verify::is_s_club;

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

    #[test]
    fn plex_model_sizes() {
        let m = build_plex_model(&complete(3), 2);
        assert_eq!(m.variables.len(), 4);
        assert_eq!(m.constraints.len(), 4);
        assert!(m.validate().is_ok());
    }

    #[test]
    fn plex_model_counting_formulas() {
        // Exact counts: n+1 variables, n+1 constraints, 3n + 2m + 1 nonzeros.
        for seed in 0..6u64 {
            let g = generate_random_graph(9, 0.4, seed);
            let m = build_plex_model(&g, 2);
            assert_eq!(m.variables.len(), g.n() + 1);
            assert_eq!(m.constraints.len(), g.n() + 1);
            let nonzeros: usize = m.constraints.iter().map(|c| c.terms.len()).sum();
            assert_eq!(nonzeros, 3 * g.n() + 2 * g.m() + 1);
        }
    }

    #[test]
    fn plex_evaluation_examples() {
        let p3 = build_plex_model(&path(3), 2);
        assert_eq!(evaluate_assignment(&p3, &set(&[0, 1, 2])), Ok((true, 3)));
        let c5 = build_plex_model(&cycle(5), 2);
        assert_eq!(
            evaluate_assignment(&c5, &set(&[0, 1, 2, 3, 4])),
            Ok((false, 5))
        );
        assert_eq!(evaluate_assignment(&c5, &VertexSet::empty()), Ok((true, 0)));
    }

    #[test]
    fn two_club_evaluation_examples() {
        let m = build_2club_model(&path(4));
        assert_eq!(evaluate_assignment(&m, &set(&[0, 1, 2])), Ok((true, 3)));
        assert_eq!(
            evaluate_assignment(&m, &set(&[0, 1, 2, 3])),
            Ok((false, 4))
        );
        assert_eq!(evaluate_assignment(&m, &VertexSet::empty()), Ok((true, 0)));
    }

    #[test]
    fn two_club_constraint_census_on_p3() {
        let m = build_2club_model(&path(3));
        let dist2 = m.constraints.iter().filter(|c| c.name.starts_with("dist2")).count();
        let far = m.constraints.iter().filter(|c| c.name.starts_with("far")).count();
        assert_eq!((dist2, far), (1, 0));
    }

    #[test]
    fn three_club_exclusive_neighborhood_edges() {
        let m = build_3club_model(&path(4));
        // The P4 pair (0,3) at distance 3 must be certified through the
        // middle edge {1,2}: exactly one z term in its constraint.
        let c = m
            .constraints
            .iter()
            .find(|c| c.name == "reach_0_3")
            .expect("pair constraint present");
        let z_terms: Vec<_> = c
            .terms
            .iter()
            .filter(|&&(_, idx)| matches!(m.variables[idx].role, VarRole::EdgeIndicator(..)))
            .collect();
        assert_eq!(z_terms.len(), 1);
        let (_, idx) = *z_terms[0];
        assert_eq!(m.variables[idx].role, VarRole::EdgeIndicator(1, 2));
    }

    #[test]
    fn three_club_evaluation_examples() {
        let m = build_3club_model(&path(4));
        assert_eq!(
            evaluate_assignment(&m, &set(&[0, 1, 2, 3])),
            Ok((true, 4))
        );
        let m5 = build_3club_model(&path(5));
        assert_eq!(
            evaluate_assignment(&m5, &set(&[0, 1, 2, 3, 4])),
            Ok((false, 5))
        );
    }

    #[test]
    fn evaluation_rejects_out_of_range() {
        let m = build_2club_model(&path(3));
        assert_eq!(
            evaluate_assignment(&m, &set(&[5])),
            Err(IlpError::VertexOutOfRange { v: 5, n: 3 })
        );
    }

    #[test]
    fn write_lp_is_deterministic() {
        let g = generate_random_graph(8, 0.4, 4);
        let m = build_3club_model(&g);
        assert_eq!(write_lp(&m), write_lp(&m));
    }

    #[test]
    fn write_lp_k2_plex_structure() {
        let g = complete(2);
        let text = write_lp(&build_plex_model(&g, 2));
        let eq_lines = text.lines().filter(|l| l.contains(" = ")).count();
        let deg_lines = text.lines().filter(|l| l.trim_start().starts_with("deg_")).count();
        assert_eq!(eq_lines, 1);
        assert_eq!(deg_lines, 2);
    }

    #[test]
    fn formulation_soundness_small_sample() {
        for seed in 0..6u64 {
            let g = generate_random_graph(6, 0.4, seed);
            let m2 = build_2club_model(&g);
            let m3 = build_3club_model(&g);
            let mp = build_plex_model(&g, 2);
            for mask in 0u32..(1 << g.n()) {
                let sel: VertexSet =
                    (0..g.n()).filter(|&v| mask & (1 << v) != 0).collect();
                let (f2, o2) = evaluate_assignment(&m2, &sel).unwrap();
                assert_eq!(f2, is_s_club(&g, &sel, 2), "2club seed {seed} {sel:?}");
                if f2 {
                    assert_eq!(o2 as usize, sel.len());
                }
                let (f3, _) = evaluate_assignment(&m3, &sel).unwrap();
                assert_eq!(f3, is_s_club(&g, &sel, 3), "3club seed {seed} {sel:?}");
                let (fp, _) = evaluate_assignment(&mp, &sel).unwrap();
                let degree_ok = sel.iter().all(|v| {
                    let deg = g.neighbors(v).iter().filter(|&&u| sel.contains(u)).count();
                    sel.len() - deg <= 2
                });
                assert_eq!(fp, degree_ok, "plex seed {seed} {sel:?}");
            }
        }
    }

    /// Minimal LP reader for round-trip checks; understands exactly the
    /// dialect produced by `write_lp`.
    fn parse_lp(text: &str) -> (Vec<(String, String)>, String, Vec<String>) {
        let mut section = String::new();
        let mut vars: Vec<(String, String)> = Vec::new(); // (name, kind)
        let mut objective = String::new();
        let mut constraints = Vec::new();
        for line in text.lines() {
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            if !line.starts_with(' ') {
                section = trimmed.to_string();
                continue;
            }
            match section.as_str() {
                "Maximize" => {
                    objective = trimmed.strip_prefix("obj:").unwrap().trim().to_string();
                }
                "Subject To" => constraints.push(trimmed.to_string()),
                "Bounds" => {
                    let name = trimmed.split_whitespace().nth(2).unwrap().to_string();
                    vars.push((name, "bounded".into()));
                }
                "Binaries" | "Generals" => {
                    for name in trimmed.split_whitespace() {
                        vars.push((name.to_string(), section.clone()));
                    }
                }
                other => panic!("unexpected section {other}"),
            }
        }
        (vars, objective, constraints)
    }

    #[test]
    fn lp_round_trip_reproduces_structure() {
        let g = generate_random_graph(7, 0.45, 2);
        for m in [
            build_plex_model(&g, 2),
            build_2club_model(&g),
            build_3club_model(&g),
        ] {
            let text = write_lp(&m);
            let (vars, objective, constraints) = parse_lp(&text);
            assert_eq!(objective, format_expr(&m.objective, &m.variables));
            assert_eq!(constraints.len(), m.constraints.len());
            for (line, c) in constraints.iter().zip(&m.constraints) {
                let expected = format!(
                    "{}: {} {} {}",
                    c.name,
                    format_expr(&c.terms, &m.variables),
                    c.relation,
                    c.rhs
                );
                assert_eq!(*line, expected);
            }
            // Every variable appears in exactly one declaration section
            // (Bounds for y/z, Binaries for x).
            let mut declared: Vec<&str> = vars.iter().map(|(n, _)| n.as_str()).collect();
            declared.sort_unstable();
            declared.dedup();
            let mut expected: Vec<&str> =
                m.variables.iter().map(|v| v.name.as_str()).collect();
            expected.sort_unstable();
            // y is listed both under Bounds and Generals; dedup handles it.
            assert_eq!(declared, expected);
        }
    }
}
