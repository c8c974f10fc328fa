//! Exact maximum rainbow matching.
//!
//! Every solver returns the maximum rainbow matching whose sorted edge ids are
//! lexicographically smallest. Branching solvers keep original edge ids in
//! every residual instance and combine branches with an associative max on
//! `(size, reversed edge-id order)`, so the answer does not depend on the
//! order or the thread count in which branches are evaluated.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::analysis::{analyze, StructureReport};
use crate::graph::{ColorId, ColoredGraph, EdgeId, RainbowMatching, VertexId};
use crate::report::Report;

mod oracle;
mod p5;
mod p7;
mod star_triangle;

pub use oracle::{oracle_mis, oracle_mrbm};
pub use p5::solve_p5_forest_fpt;
pub use p7::{reduce_p7_to_p6, solve_p7_forest, solve_p7_tree, BranchInstance};
pub use star_triangle::solve_star_triangle;

pub const DEFAULT_ORACLE_CAP: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    StarTriangle,
    P7Tree,
    P7Forest,
    P5Fpt,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::StarTriangle => "star-triangle",
            Method::P7Tree => "p7-tree",
            Method::P7Forest => "p7-forest",
            Method::P5Fpt => "p5-fpt",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub matching: RainbowMatching,
    pub method: Method,
    /// Enumeration branches explored (search nodes for the oracle).
    pub branch_count: usize,
    pub certificate_of_optimality: bool,
}

impl SolveResult {
    pub fn size(&self) -> usize {
        self.matching.len()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.push("method", self.method);
        r.push("optimum", self.size());
        r.push("branch_count", self.branch_count);
        r.push("certificate_of_optimality", self.certificate_of_optimality);
        r
    }
}

/// Colors a residual subproblem may not use.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BannedColorSet {
    colors: BTreeSet<ColorId>,
}

impl BannedColorSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, c: ColorId) -> bool {
        self.colors.contains(&c)
    }

    pub fn insert(&mut self, c: ColorId) {
        self.colors.insert(c);
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ColorId> + '_ {
        self.colors.iter().copied()
    }

    /// Rejects color ids outside the graph's color table.
    pub fn check(&self, g: &ColoredGraph) -> Result<(), SolveError> {
        match self.colors.iter().find(|&&c| c >= g.color_count()) {
            Some(&c) => Err(SolveError::UnknownColor(c)),
            None => Ok(()),
        }
    }
}

impl FromIterator<ColorId> for BannedColorSet {
    fn from_iter<I: IntoIterator<Item = ColorId>>(iter: I) -> Self {
        Self { colors: iter.into_iter().collect() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Largest edge count (vertex count for [`oracle_mis`]) the oracles accept.
    pub oracle_cap: usize,
    /// Branch-level worker threads; 1 runs sequentially.
    pub threads: usize,
    /// Per-star kernel of the P5-free solver. `None` enables it exactly when
    /// every non-trivial component contains a `P4`.
    pub kernel: Option<bool>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { oracle_cap: DEFAULT_ORACLE_CAP, threads: 1, kernel: None }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance has {size} edges/vertices, above the oracle cap of {cap}")]
    AboveCap { size: usize, cap: usize },
    #[error("component containing vertex {} contains a P4", .0 + 1)]
    ContainsP4(VertexId),
    #[error("instance is not a forest")]
    NotAForest,
    #[error("instance is not a tree")]
    NotATree,
    #[error("instance contains a P{0} subgraph")]
    ContainsPath(usize),
    #[error("color id {0} is not in the color table")]
    UnknownColor(ColorId),
    #[error("no exact method applies ({edges} edges, oracle cap {cap}); use the local-search approximation instead")]
    NoExactMethod { edges: usize, cap: usize },
    #[error("thread pool: {0}")]
    ThreadPool(String),
}

/// Analyzes `g` and runs the first exact method whose class contains it:
/// star-triangle, P5-free FPT, P7-free tree, P7-free forest, then the oracle.
pub fn solve_auto(g: &ColoredGraph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    let report = analyze(g);
    let none = BannedColorSet::new();
    if report.is_p4_subgraph_free() {
        star_triangle::solve_with_report(g, &none, &report)
    } else if report.is_forest && report.is_path_free(5) == Some(true) {
        p5::solve_with_report(g, &report, opts)
    } else if report.is_tree_ignoring_isolated() && report.is_path_free(7) == Some(true) {
        p7::solve_tree_with_report(g, &report, opts)
    } else if report.is_forest && report.is_path_free(7) == Some(true) {
        p7::solve_forest_with_report(g, &report, opts)
    } else if g.edge_count() <= opts.oracle_cap {
        oracle_mrbm(g, &none, opts)
    } else {
        Err(SolveError::NoExactMethod { edges: g.edge_count(), cap: opts.oracle_cap })
    }
}

/// Which exact method [`solve_auto`] would pick, without solving.
pub fn dispatch_method(report: &StructureReport, opts: &SolveOptions) -> Option<Method> {
    if report.is_p4_subgraph_free() {
        Some(Method::StarTriangle)
    } else if report.is_forest && report.is_path_free(5) == Some(true) {
        Some(Method::P5Fpt)
    } else if report.is_tree_ignoring_isolated() && report.is_path_free(7) == Some(true) {
        Some(Method::P7Tree)
    } else if report.is_forest && report.is_path_free(7) == Some(true) {
        Some(Method::P7Forest)
    } else if report.edge_count <= opts.oracle_cap {
        Some(Method::Oracle)
    } else {
        None
    }
}

/// Orders candidate solutions: larger first, then lexicographically smaller.
fn better(a: Vec<EdgeId>, b: Vec<EdgeId>) -> Vec<EdgeId> {
    if a.len() > b.len() || (a.len() == b.len() && a <= b) {
        a
    } else {
        b
    }
}

/// Solves every branch `fixed ∪ star-triangle(base - edges at fixed endpoints)`
/// and returns the best union together with the number of branches.
fn evaluate_branches(
    g: &ColoredGraph,
    base: &[EdgeId],
    choices: &[Vec<EdgeId>],
    banned: &BannedColorSet,
    threads: usize,
) -> Result<Vec<EdgeId>, SolveError> {
    let run = |choice: &Vec<EdgeId>| -> Result<Vec<EdgeId>, SolveError> {
        let mut ends: Vec<VertexId> = choice.iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect();
        ends.sort_unstable();
        let residual: Vec<EdgeId> = base
            .iter()
            .copied()
            .filter(|&e| {
                let edge = g.edge(e);
                ends.binary_search(&edge.u).is_err() && ends.binary_search(&edge.v).is_err()
            })
            .collect();
        let mut ban = banned.clone();
        for &e in choice {
            ban.insert(g.edge(e).color);
        }
        let mut found = star_triangle::lex_min_on(g, &residual, &ban)?;
        found.extend_from_slice(choice);
        found.sort_unstable();
        debug_assert!(crate::graph::validate_solution(g, &found).map(|v| v.is_ok()).unwrap_or(false));
        Ok(found)
    };
    let fold = |acc: Result<Vec<EdgeId>, SolveError>, next: Result<Vec<EdgeId>, SolveError>| match (acc, next) {
        (Ok(a), Ok(b)) => Ok(better(a, b)),
        (Err(e), _) | (_, Err(e)) => Err(e),
    };
    if threads <= 1 {
        choices.iter().map(run).fold(Ok(Vec::new()), fold)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| SolveError::ThreadPool(e.to_string()))?;
        pool.install(|| choices.par_iter().map(run).reduce(|| Ok(Vec::new()), fold))
    }
}

fn finish(g: &ColoredGraph, ids: Vec<EdgeId>, method: Method, branch_count: usize) -> SolveResult {
    debug_assert!(crate::graph::validate_solution(g, &ids).map(|v| v.is_ok()).unwrap_or(false));
    SolveResult {
        matching: RainbowMatching::from_sorted_unchecked(ids),
        method,
        branch_count,
        certificate_of_optimality: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, usize)]) -> ColoredGraph {
        ColoredGraph::from_colored_edges(n, edges.iter().copied()).unwrap()
    }

    fn cycle(colors: &[usize]) -> ColoredGraph {
        let n = colors.len();
        graph(n, &colors.iter().enumerate().map(|(i, &c)| (i, (i + 1) % n, c)).collect::<Vec<_>>())
    }

    fn path(colors: &[usize]) -> ColoredGraph {
        graph(colors.len() + 1, &colors.iter().enumerate().map(|(i, &c)| (i, i + 1, c)).collect::<Vec<_>>())
    }

    #[test]
    fn dispatch_examples() {
        let opts = SolveOptions::default();
        let c6 = cycle(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(solve_auto(&c6, &opts).unwrap().method, Method::Oracle);
        let p6 = path(&[1, 2, 3, 4, 5]);
        let r = solve_auto(&p6, &opts).unwrap();
        assert_eq!(r.method, Method::P7Tree);
        assert_eq!(r.size(), 3);
        let long = path(&(0..40).collect::<Vec<_>>());
        assert_eq!(solve_auto(&long, &opts), Err(SolveError::NoExactMethod { edges: 40, cap: DEFAULT_ORACLE_CAP }));
        let empty = graph(0, &[]);
        let r = solve_auto(&empty, &opts).unwrap();
        assert!(r.matching.is_empty() && r.certificate_of_optimality);
        let isolated = graph(4, &[]);
        assert!(solve_auto(&isolated, &opts).unwrap().matching.is_empty());
    }

    #[test]
    fn branch_merge_is_order_free() {
        assert_eq!(better(vec![1, 5], vec![2, 3]), vec![1, 5]);
        assert_eq!(better(vec![2, 3], vec![1, 5]), vec![1, 5]);
        assert_eq!(better(vec![9], vec![1, 5]), vec![1, 5]);
        assert_eq!(better(Vec::new(), vec![4]), vec![4]);
    }

    #[test]
    fn banned_set_checks_color_ids() {
        let g = path(&[1, 2]);
        assert!(BannedColorSet::from_iter([1]).check(&g).is_ok());
        assert_eq!(BannedColorSet::from_iter([2]).check(&g), Err(SolveError::UnknownColor(2)));
    }
}
