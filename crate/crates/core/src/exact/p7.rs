//! Trees and forests without a `P7` subgraph.
//!
//! In such a tree every vertex is within distance two of the central edge
//! `xy`, so deleting `x` and `y` leaves a star forest. A rainbow matching uses
//! at most one edge at `x` and one at `y`; enumerating those choices leaves a
//! star-triangle instance per branch.

use super::{evaluate_branches, finish, BannedColorSet, Method, SolveError, SolveOptions, SolveResult};
use crate::analysis::{analyze, central_edge, CentralEdge, StructureReport};
use crate::graph::{ColoredGraph, EdgeId, VertexId};

/// Exact solver for a tree (isolated vertices allowed) with no `P7` subgraph.
pub fn solve_p7_tree(g: &ColoredGraph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    solve_tree_with_report(g, &analyze(g), opts)
}

/// Exact solver for a forest with no `P7` subgraph.
pub fn solve_p7_forest(g: &ColoredGraph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    solve_forest_with_report(g, &analyze(g), opts)
}

pub(super) fn solve_tree_with_report(
    g: &ColoredGraph,
    report: &StructureReport,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    if !report.is_tree_ignoring_isolated() && report.nontrivial_components().count() > 0 {
        return Err(SolveError::NotATree);
    }
    solve_forest_inner(g, report, opts, Method::P7Tree)
}

pub(super) fn solve_forest_with_report(
    g: &ColoredGraph,
    report: &StructureReport,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    solve_forest_inner(g, report, opts, Method::P7Forest)
}

fn check_p7_forest(report: &StructureReport) -> Result<(), SolveError> {
    if !report.is_forest {
        return Err(SolveError::NotAForest);
    }
    if report.is_path_free(7) != Some(true) {
        return Err(SolveError::ContainsPath(7));
    }
    Ok(())
}

fn central_edges(g: &ColoredGraph, report: &StructureReport, min_path: usize) -> Vec<CentralEdge> {
    report
        .components
        .iter()
        .filter(|c| c.longest_path.as_ref().is_some_and(|p| p.len() >= min_path))
        .map(|c| central_edge(g, c.vertices[0]).expect("P4-containing tree component"))
        .collect()
}

/// Branches at one central edge: nothing, any single edge at `x` or `y`
/// (including `xy`), or one edge at each of `x` and `y` with distinct colors.
fn central_choices(g: &ColoredGraph, ce: &CentralEdge) -> Vec<Vec<EdgeId>> {
    let at = |v: VertexId| -> Vec<EdgeId> {
        let mut ids: Vec<EdgeId> = g.neighbors(v).iter().map(|&(_, e)| e).filter(|&e| e != ce.edge).collect();
        ids.sort_unstable();
        ids
    };
    let (ex, ey) = (at(ce.x), at(ce.y));
    let mut singles: Vec<EdgeId> = ex.iter().chain(&ey).copied().chain([ce.edge]).collect();
    singles.sort_unstable();
    let mut out = vec![Vec::new()];
    out.extend(singles.into_iter().map(|e| vec![e]));
    for &a in &ex {
        for &b in &ey {
            if g.edge(a).color != g.edge(b).color {
                out.push(vec![a.min(b), a.max(b)]);
            }
        }
    }
    out
}

/// Rainbow-compatible combinations of one choice per component.
fn product(g: &ColoredGraph, per_component: &[Vec<Vec<EdgeId>>]) -> Vec<Vec<EdgeId>> {
    fn rec(g: &ColoredGraph, per: &[Vec<Vec<EdgeId>>], acc: &mut Vec<EdgeId>, out: &mut Vec<Vec<EdgeId>>) {
        let Some((first, rest)) = per.split_first() else {
            let mut done = acc.clone();
            done.sort_unstable();
            out.push(done);
            return;
        };
        for choice in first {
            if choice.iter().any(|&e| acc.iter().any(|&f| g.edge(f).color == g.edge(e).color)) {
                continue;
            }
            let len = acc.len();
            acc.extend_from_slice(choice);
            rec(g, rest, acc, out);
            acc.truncate(len);
        }
    }
    let mut out = Vec::new();
    rec(g, per_component, &mut Vec::new(), &mut out);
    out
}

fn solve_forest_inner(
    g: &ColoredGraph,
    report: &StructureReport,
    opts: &SolveOptions,
    method: Method,
) -> Result<SolveResult, SolveError> {
    check_p7_forest(report)?;
    let centrals = central_edges(g, report, 4);
    let per: Vec<Vec<Vec<EdgeId>>> = centrals.iter().map(|ce| central_choices(g, ce)).collect();
    let choices = product(g, &per);
    let mut hubs: Vec<VertexId> = centrals.iter().flat_map(|ce| [ce.x, ce.y]).collect();
    hubs.sort_unstable();
    let base: Vec<EdgeId> = (0..g.edge_count())
        .filter(|&e| {
            let edge = g.edge(e);
            hubs.binary_search(&edge.u).is_err() && hubs.binary_search(&edge.v).is_err()
        })
        .collect();
    let ids = evaluate_branches(g, &base, &choices, &BannedColorSet::new(), opts.threads)?;
    Ok(finish(g, ids, method, choices.len()))
}

/// One sub-instance of the `P7`-free to `P6`-free reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchInstance {
    /// Edge subgraph on the original vertex set and color table.
    pub graph: ColoredGraph,
    /// `origin[i]` is the original id of edge `i` of `graph`.
    pub origin: Vec<EdgeId>,
    /// Colors used by `fixed`.
    pub banned: BannedColorSet,
    /// Central edges committed to the matching in this branch.
    pub fixed: Vec<EdgeId>,
}

/// Splits a `P7`-free forest into `P6`-free branches: one per rainbow subset of
/// the central edges of the components that contain a `P6`. The optimum of the
/// input is the best of `|fixed| + optimum(graph, banned)` over the branches.
pub fn reduce_p7_to_p6(g: &ColoredGraph) -> Result<Vec<BranchInstance>, SolveError> {
    let report = analyze(g);
    check_p7_forest(&report)?;
    let central: Vec<EdgeId> = central_edges(g, &report, 6).into_iter().map(|ce| ce.edge).collect();
    let k = central.len();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let fixed: Vec<EdgeId> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| central[i]).collect();
        let banned: BannedColorSet = fixed.iter().map(|&e| g.edge(e).color).collect();
        if banned.len() != fixed.len() {
            continue;
        }
        let (graph, origin) = g.edge_subgraph(|e| {
            let edge = g.edge(e);
            !central.contains(&e) && !fixed.iter().any(|&f| g.edge(f).shares_vertex(edge))
        });
        out.push(BranchInstance { graph, origin, banned, fixed });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::oracle_mrbm;

    fn graph(n: usize, edges: &[(usize, usize, usize)]) -> ColoredGraph {
        ColoredGraph::from_colored_edges(n, edges.iter().copied()).unwrap()
    }

    fn path(colors: &[usize]) -> ColoredGraph {
        graph(colors.len() + 1, &colors.iter().enumerate().map(|(i, &c)| (i, i + 1, c)).collect::<Vec<_>>())
    }

    #[test]
    fn p6_matches_oracle() {
        let g = path(&[0, 1, 2, 0, 1]);
        let r = solve_p7_tree(&g, &SolveOptions::default()).unwrap();
        let o = oracle_mrbm(&g, &BannedColorSet::new(), &SolveOptions::default()).unwrap();
        assert_eq!(r.matching, o.matching);
        assert_eq!(r.method, Method::P7Tree);
    }

    #[test]
    fn branch_count_bound_on_double_star() {
        // x = 0 with leaves 2,3,4 ; y = 1 with leaves 5,6
        let g = graph(7, &[(0, 1, 9), (0, 2, 0), (0, 3, 1), (0, 4, 2), (1, 5, 0), (1, 6, 3)]);
        let r = solve_p7_tree(&g, &SolveOptions::default()).unwrap();
        assert!(r.branch_count <= 4 * 3 + 1);
        assert_eq!(r.size(), 2);
    }

    #[test]
    fn rejects_long_paths_and_cycles() {
        let g = path(&[0, 1, 2, 3, 4, 5]);
        assert_eq!(solve_p7_tree(&g, &SolveOptions::default()), Err(SolveError::ContainsPath(7)));
        let c = graph(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 2), (0, 3, 3)]);
        assert_eq!(solve_p7_forest(&c, &SolveOptions::default()), Err(SolveError::NotAForest));
        let two = graph(8, &[(0, 1, 0), (1, 2, 1), (2, 3, 2), (4, 5, 0), (5, 6, 1), (6, 7, 2)]);
        assert_eq!(solve_p7_tree(&two, &SolveOptions::default()), Err(SolveError::NotATree));
        assert_eq!(solve_p7_forest(&two, &SolveOptions::default()).unwrap().size(), 3);
    }

    #[test]
    fn reduction_branches() {
        // two P6 components sharing the middle color, plus a P3
        let g = graph(
            15,
            &[
                (0, 1, 0),
                (1, 2, 1),
                (2, 3, 7),
                (3, 4, 2),
                (4, 5, 3),
                (6, 7, 4),
                (7, 8, 5),
                (8, 9, 7),
                (9, 10, 6),
                (10, 11, 0),
                (12, 13, 1),
                (13, 14, 2),
            ],
        );
        let branches = reduce_p7_to_p6(&g).unwrap();
        // subsets of two same-colored central edges: {}, {a}, {b}
        assert_eq!(branches.len(), 3);
        let opts = SolveOptions::default();
        let best = branches
            .iter()
            .map(|b| b.fixed.len() + oracle_mrbm(&b.graph, &b.banned, &opts).unwrap().size())
            .max()
            .unwrap();
        let direct = solve_p7_forest(&g, &opts).unwrap().size();
        assert_eq!(best, direct);
        for b in &branches {
            assert_eq!(analyze(&b.graph).is_path_free(6), Some(true));
        }
    }
}
