//! Forests without a `P5` subgraph: every component is a star or a double
//! star. Let `E'` be the edges whose endpoints both have degree at least two
//! (the double-star centers, `k = |E'|`). Each rainbow subset of `E'` leaves a
//! star forest, so the search runs `2^k` star-triangle instances.

use std::collections::HashSet;

use super::{evaluate_branches, finish, BannedColorSet, Method, SolveError, SolveOptions, SolveResult};
use crate::analysis::{analyze, StructureReport};
use crate::graph::{ColoredGraph, EdgeId};

/// Exact FPT solver parameterized by the number of double stars.
///
/// With the kernel enabled, each star of `F - E'` keeps only its lowest edge
/// per color, then only its `2k` lowest such edges. A solution has at most
/// `2k` edges when every component contains a `P4`, so the other solution
/// edges block fewer than `2k` colors and some kept edge can replace any
/// dropped one with a lower id. Components without a `P4` raise the cap by one
/// each.
pub fn solve_p5_forest_fpt(g: &ColoredGraph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    solve_with_report(g, &analyze(g), opts)
}

pub(super) fn solve_with_report(
    g: &ColoredGraph,
    report: &StructureReport,
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    if !report.is_forest {
        return Err(SolveError::NotAForest);
    }
    if report.is_path_free(5) != Some(true) {
        return Err(SolveError::ContainsPath(5));
    }
    let degree = |v| g.degree(v);
    let centers: Vec<EdgeId> =
        (0..g.edge_count()).filter(|&e| degree(g.edge(e).u) >= 2 && degree(g.edge(e).v) >= 2).collect();
    let k = centers.len();
    let mut base: Vec<EdgeId> = (0..g.edge_count()).filter(|e| centers.binary_search(e).is_err()).collect();

    let all_contain_p4 = report.nontrivial_components().all(|c| c.contains_p4());
    if opts.kernel.unwrap_or(all_contain_p4) {
        let stars_without_p4 = report.nontrivial_components().filter(|c| !c.contains_p4()).count();
        base = kernel(g, &base, 2 * k + stars_without_p4);
    }

    let mut choices = Vec::new();
    for mask in 0u64..(1u64 << k) {
        let chosen: Vec<EdgeId> = (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| centers[i]).collect();
        let colors: HashSet<_> = chosen.iter().map(|&e| g.edge(e).color).collect();
        if colors.len() == chosen.len() {
            choices.push(chosen);
        }
    }
    let ids = evaluate_branches(g, &base, &choices, &BannedColorSet::new(), opts.threads)?;
    Ok(finish(g, ids, Method::P5Fpt, choices.len()))
}

/// Per star of the star forest `base`: lowest edge of each color, then the
/// `cap` lowest of those.
fn kernel(g: &ColoredGraph, base: &[EdgeId], cap: usize) -> Vec<EdgeId> {
    use std::collections::HashMap;
    // star key: the endpoint of larger degree in g, lower id on ties
    let key = |e: EdgeId| {
        let edge = g.edge(e);
        if g.degree(edge.v) > g.degree(edge.u) {
            edge.v
        } else {
            edge.u
        }
    };
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut kept: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::new();
    for &e in base {
        let star = key(e);
        if !seen.insert((star, g.edge(e).color)) {
            continue;
        }
        let count = kept.entry(star).or_default();
        if *count < cap {
            *count += 1;
            out.push(e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::oracle_mrbm;

    fn graph(n: usize, edges: &[(usize, usize, usize)]) -> ColoredGraph {
        ColoredGraph::from_colored_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn double_star_with_kernel_matches_oracle() {
        // center 0-1, leaves of 0: 2..6, leaves of 1: 7..11, colors overlapping
        let mut edges = vec![(0, 1, 0)];
        for (i, v) in (2..7).enumerate() {
            edges.push((0, v, i % 3));
        }
        for (i, v) in (7..12).enumerate() {
            edges.push((1, v, (i + 1) % 4));
        }
        let g = graph(12, &edges);
        let opts = SolveOptions::default();
        let o = oracle_mrbm(&g, &BannedColorSet::new(), &opts).unwrap();
        for kernel in [None, Some(true), Some(false)] {
            let r = solve_p5_forest_fpt(&g, &SolveOptions { kernel, ..opts }).unwrap();
            assert_eq!(r.matching, o.matching, "kernel {kernel:?}");
            assert_eq!(r.branch_count, 2);
            assert_eq!(r.method, Method::P5Fpt);
        }
    }

    #[test]
    fn rejects_p5() {
        let g = graph(5, &[(0, 1, 0), (1, 2, 1), (2, 3, 2), (3, 4, 3)]);
        assert_eq!(solve_p5_forest_fpt(&g, &SolveOptions::default()), Err(SolveError::ContainsPath(5)));
    }

    #[test]
    fn kernel_trims_each_star() {
        let g = graph(7, &[(0, 1, 0), (0, 2, 0), (0, 3, 1), (0, 4, 2), (0, 5, 3), (0, 6, 4)]);
        let base: Vec<EdgeId> = (0..6).collect();
        assert_eq!(kernel(&g, &base, 2), vec![0, 2]);
    }
}
