//! Branch-and-bound oracles for small instances.
//!
//! Both searches include the current element before excluding it and only
//! replace the incumbent on strict improvement, so the first optimum found is
//! the lexicographically smallest one.

use super::{finish, BannedColorSet, Method, SolveError, SolveOptions, SolveResult};
use crate::graph::{ColoredGraph, EdgeId};
use crate::simple::SimpleGraph;

/// Exact maximum rainbow matching by exhaustive search over edges.
pub fn oracle_mrbm(g: &ColoredGraph, banned: &BannedColorSet, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    banned.check(g)?;
    if g.edge_count() > opts.oracle_cap {
        return Err(SolveError::AboveCap { size: g.edge_count(), cap: opts.oracle_cap });
    }
    let mut search = MrbmSearch {
        g,
        used_vertex: vec![false; g.vertex_count()],
        used_color: (0..g.color_count()).map(|c| banned.contains(c)).collect(),
        current: Vec::new(),
        best: Vec::new(),
        nodes: 0,
        stamp_vertex: vec![0; g.vertex_count()],
        stamp_color: vec![0; g.color_count()],
        stamp: 0,
    };
    search.run(0);
    let nodes = search.nodes;
    Ok(finish(g, search.best, Method::Oracle, nodes))
}

struct MrbmSearch<'a> {
    g: &'a ColoredGraph,
    used_vertex: Vec<bool>,
    used_color: Vec<bool>,
    current: Vec<EdgeId>,
    best: Vec<EdgeId>,
    nodes: usize,
    stamp_vertex: Vec<u32>,
    stamp_color: Vec<u32>,
    stamp: u32,
}

impl MrbmSearch<'_> {
    fn feasible(&self, e: EdgeId) -> bool {
        let edge = self.g.edge(e);
        !self.used_vertex[edge.u] && !self.used_vertex[edge.v] && !self.used_color[edge.color]
    }

    /// min(distinct colors, half the distinct endpoints) over remaining feasible edges.
    fn bound(&mut self, from: EdgeId) -> usize {
        self.stamp += 1;
        let (mut colors, mut verts) = (0, 0);
        for e in from..self.g.edge_count() {
            if !self.feasible(e) {
                continue;
            }
            let edge = *self.g.edge(e);
            if self.stamp_color[edge.color] != self.stamp {
                self.stamp_color[edge.color] = self.stamp;
                colors += 1;
            }
            for x in [edge.u, edge.v] {
                if self.stamp_vertex[x] != self.stamp {
                    self.stamp_vertex[x] = self.stamp;
                    verts += 1;
                }
            }
        }
        colors.min(verts / 2)
    }

    fn run(&mut self, from: EdgeId) {
        self.nodes += 1;
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.current.len() + self.bound(from) <= self.best.len() {
            return;
        }
        let Some(e) = (from..self.g.edge_count()).find(|&e| self.feasible(e)) else {
            return;
        };
        let edge = *self.g.edge(e);
        self.used_vertex[edge.u] = true;
        self.used_vertex[edge.v] = true;
        self.used_color[edge.color] = true;
        self.current.push(e);
        self.run(e + 1);
        self.current.pop();
        self.used_vertex[edge.u] = false;
        self.used_vertex[edge.v] = false;
        self.used_color[edge.color] = false;
        self.run(e + 1);
    }
}

/// Lex-min maximum independent set of a simple graph by exhaustive search.
pub fn oracle_mis(g: &SimpleGraph, opts: &SolveOptions) -> Result<Vec<usize>, SolveError> {
    if g.vertex_count() > opts.oracle_cap {
        return Err(SolveError::AboveCap { size: g.vertex_count(), cap: opts.oracle_cap });
    }
    let mut best = Vec::new();
    let mut current = Vec::new();
    let candidates: Vec<usize> = (0..g.vertex_count()).collect();
    mis_rec(g, &candidates, &mut current, &mut best);
    Ok(best)
}

fn mis_rec(g: &SimpleGraph, candidates: &[usize], current: &mut Vec<usize>, best: &mut Vec<usize>) {
    if current.len() > best.len() {
        *best = current.clone();
    }
    if current.len() + candidates.len() <= best.len() {
        return;
    }
    let Some((&v, rest)) = candidates.split_first() else {
        return;
    };
    let kept: Vec<usize> = rest.iter().copied().filter(|&w| !g.adjacent(v, w)).collect();
    current.push(v);
    mis_rec(g, &kept, current, best);
    current.pop();
    mis_rec(g, rest, current, best);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, usize)]) -> ColoredGraph {
        ColoredGraph::from_colored_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn rainbow_c6() {
        let g = graph(6, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 4, 1), (4, 5, 2), (0, 5, 3)]);
        let r = oracle_mrbm(&g, &BannedColorSet::new(), &SolveOptions::default()).unwrap();
        assert_eq!(r.size(), 3);
        assert_eq!(r.method, Method::Oracle);
        assert!(r.branch_count >= 1);
    }

    #[test]
    fn monochromatic_graph_has_optimum_one() {
        let g = graph(6, &[(0, 1, 0), (2, 3, 0), (4, 5, 0)]);
        let r = oracle_mrbm(&g, &BannedColorSet::new(), &SolveOptions::default()).unwrap();
        assert_eq!(r.matching.edge_ids(), &[0]);
        let r = oracle_mrbm(&g, &BannedColorSet::from_iter([0]), &SolveOptions::default()).unwrap();
        assert!(r.matching.is_empty());
    }

    #[test]
    fn lex_min_among_optima() {
        // path 0-1-2-3 colors a,b,a : optimum 1 (edges 0 and 2 share a color)
        let g = graph(4, &[(0, 1, 0), (1, 2, 1), (2, 3, 0)]);
        let r = oracle_mrbm(&g, &BannedColorSet::new(), &SolveOptions::default()).unwrap();
        assert_eq!(r.matching.edge_ids(), &[0]);
    }

    #[test]
    fn cap_is_enforced() {
        let edges: Vec<_> = (0..31).map(|i| (i, i + 1, i)).collect();
        let g = graph(32, &edges);
        let opts = SolveOptions::default();
        assert_eq!(
            oracle_mrbm(&g, &BannedColorSet::new(), &opts).unwrap_err(),
            SolveError::AboveCap { size: 31, cap: 30 }
        );
        let wide = SolveOptions { oracle_cap: 40, ..opts };
        assert_eq!(oracle_mrbm(&g, &BannedColorSet::new(), &wide).unwrap().size(), 16);
    }

    #[test]
    fn mis_on_c5_and_petersen_like() {
        let c5 = SimpleGraph::new(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(oracle_mis(&c5, &SolveOptions::default()).unwrap(), vec![0, 2]);
        let empty = SimpleGraph::new(3, []);
        assert_eq!(oracle_mis(&empty, &SolveOptions::default()).unwrap(), vec![0, 1, 2]);
    }
}
