//! Components that are stars or triangles: a rainbow matching uses at most one
//! edge per component and per color, so it is a matching in the bipartite graph
//! of (component, color) pairs.

use std::collections::{BTreeMap, HashMap};

use super::{finish, BannedColorSet, Method, SolveError, SolveResult};
use crate::analysis::StructureReport;
use crate::bipartite::{hopcroft_karp, lex_min_maximum_matching, BipartiteGraph};
use crate::graph::{ColoredGraph, EdgeId};

/// Exact solver for graphs whose every component is an isolated vertex, a star
/// or a triangle.
pub fn solve_star_triangle(g: &ColoredGraph, banned: &BannedColorSet) -> Result<SolveResult, SolveError> {
    banned.check(g)?;
    let all: Vec<EdgeId> = (0..g.edge_count()).collect();
    let ids = lex_min_on(g, &all, banned)?;
    Ok(finish(g, ids, Method::StarTriangle, 1))
}

pub(super) fn solve_with_report(
    g: &ColoredGraph,
    banned: &BannedColorSet,
    report: &StructureReport,
) -> Result<SolveResult, SolveError> {
    debug_assert!(report.is_p4_subgraph_free());
    solve_star_triangle(g, banned)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[a.max(b)] = a.min(b);
        }
    }
}

/// Lex-min maximum rainbow matching inside the edge subset `edges` (sorted
/// ascending), avoiding `banned` colors. The subset must induce stars and
/// triangles only.
pub(super) fn lex_min_on(
    g: &ColoredGraph,
    edges: &[EdgeId],
    banned: &BannedColorSet,
) -> Result<Vec<EdgeId>, SolveError> {
    debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
    if edges.is_empty() {
        return Ok(Vec::new());
    }
    let mut verts: Vec<usize> = edges.iter().flat_map(|&e| [g.edge(e).u, g.edge(e).v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let local = |v: usize| verts.binary_search(&v).unwrap();
    let mut dsu = Dsu { parent: (0..verts.len()).collect() };
    let mut degree = vec![0usize; verts.len()];
    for &e in edges {
        let (a, b) = (local(g.edge(e).u), local(g.edge(e).v));
        degree[a] += 1;
        degree[b] += 1;
        dsu.union(a, b);
    }

    // per root: (vertices, edges, max degree)
    let mut shape: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
    for (i, &d) in degree.iter().enumerate() {
        let s = shape.entry(dsu.find(i)).or_default();
        s.0 += 1;
        s.1 += d;
        s.2 = s.2.max(d);
    }
    for (&root, &(nv, twice_ne, maxd)) in &shape {
        let ne = twice_ne / 2;
        let star = ne + 1 == nv && maxd == ne;
        let triangle = nv == 3 && ne == 3;
        if !star && !triangle {
            return Err(SolveError::ContainsP4(verts[root]));
        }
    }

    let mut comp_index: HashMap<usize, usize> = HashMap::new();
    let mut color_index: HashMap<usize, usize> = HashMap::new();
    let mut seen = std::collections::HashSet::new();
    let mut pairs = Vec::new();
    let mut pair_edge = Vec::new();
    // edges ascending: the first edge seen for a (component, color) pair is its lowest
    for &e in edges {
        let edge = g.edge(e);
        if banned.contains(edge.color) {
            continue;
        }
        let root = dsu.find(local(edge.u));
        let next = comp_index.len();
        let k = *comp_index.entry(root).or_insert(next);
        let next = color_index.len();
        let c = *color_index.entry(edge.color).or_insert(next);
        if seen.insert((k, c)) {
            pairs.push((k, c));
            pair_edge.push(e);
        }
    }
    let bg = BipartiteGraph::new(comp_index.len(), color_index.len(), pairs);
    let initial = hopcroft_karp(&bg);
    let chosen = lex_min_maximum_matching(&bg, &initial);
    let mut out: Vec<EdgeId> = chosen.into_iter().map(|p| pair_edge[p]).collect();
    out.sort_unstable();
    Ok(out)
}
