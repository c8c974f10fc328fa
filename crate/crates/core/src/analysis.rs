//! Structural analysis of colored graphs: components, forest/path shape,
//! path-subgraph freeness and coloring facts that drive solver dispatch.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

use crate::graph::{ColoredGraph, EdgeId, VertexId};
use crate::report::Report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    IsolatedVertex,
    /// `K_{1,q}` with `q >= 1`; single edges and `P3` are stars.
    Star,
    Triangle,
    /// A path on at least four vertices.
    Path,
    TreeOther,
    Cyclic,
}

impl ComponentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ComponentKind::IsolatedVertex => "isolated-vertex",
            ComponentKind::Star => "star",
            ComponentKind::Triangle => "triangle",
            ComponentKind::Path => "path",
            ComponentKind::TreeOther => "tree-other",
            ComponentKind::Cyclic => "cyclic",
        }
    }

    pub fn is_tree(self) -> bool {
        !matches!(self, ComponentKind::Triangle | ComponentKind::Cyclic)
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentInfo {
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
    pub kind: ComponentKind,
    /// Canonical longest path, present for tree components.
    pub longest_path: Option<Vec<VertexId>>,
}

impl ComponentInfo {
    /// Whether the component contains a path on four vertices.
    pub fn contains_p4(&self) -> bool {
        matches!(self.kind, ComponentKind::Path | ComponentKind::TreeOther | ComponentKind::Cyclic)
    }

    /// Vertex count of a longest path; exact for trees, stars and triangles.
    fn longest_path_len(&self) -> Option<usize> {
        match self.kind {
            ComponentKind::Triangle => Some(3),
            ComponentKind::Cyclic => None,
            _ => self.longest_path.as_ref().map(Vec::len),
        }
    }
}

/// Smallest `l` such that the graph has no `P_l` subgraph.
///
/// Exact for forests and for graphs without a `P4` subgraph. For any other
/// graph only `bound = n + 1` is reported, with `exact = false`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PathFreeness {
    pub bound: usize,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub color_count: usize,
    pub components: Vec<ComponentInfo>,
    pub is_forest: bool,
    pub is_tree: bool,
    pub is_path: bool,
    pub is_linear_forest: bool,
    pub p_subgraph_free_up_to: PathFreeness,
    pub properly_colored: bool,
    pub max_color_multiplicity: usize,
}

impl StructureReport {
    /// `Some(true)` if the graph certainly has no `P_l` subgraph, `Some(false)`
    /// if it certainly has one, `None` when the analysis cannot tell.
    pub fn is_path_free(&self, l: usize) -> Option<bool> {
        let PathFreeness { bound, exact } = self.p_subgraph_free_up_to;
        if exact || l >= bound {
            Some(l >= bound)
        } else if l <= 4 {
            // inexact bounds are only reported for graphs containing a P4
            Some(false)
        } else {
            None
        }
    }

    /// Every component is an isolated vertex, a star or a triangle.
    pub fn is_p4_subgraph_free(&self) -> bool {
        self.components.iter().all(|c| !c.contains_p4())
    }

    pub fn nontrivial_components(&self) -> impl Iterator<Item = &ComponentInfo> {
        self.components.iter().filter(|c| c.kind != ComponentKind::IsolatedVertex)
    }

    /// A forest whose non-trivial part is a single tree (isolated vertices are ignored).
    pub fn is_tree_ignoring_isolated(&self) -> bool {
        self.is_forest && self.nontrivial_components().count() == 1
    }

    pub fn p4_component_count(&self) -> usize {
        self.components.iter().filter(|c| c.contains_p4()).count()
    }

    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.push("vertices", self.vertex_count);
        r.push("edges", self.edge_count);
        r.push("colors", self.color_count);
        r.push("components", self.components.len());
        r.push("is_forest", self.is_forest);
        r.push("is_tree", self.is_tree);
        r.push("is_path", self.is_path);
        r.push("is_linear_forest", self.is_linear_forest);
        r.push("p_subgraph_free_up_to", self.p_subgraph_free_up_to.bound);
        r.push("p_subgraph_free_exact", self.p_subgraph_free_up_to.exact);
        r.push("p4_subgraph_free", self.is_p4_subgraph_free());
        r.push("properly_colored", self.properly_colored);
        r.push("max_color_multiplicity", self.max_color_multiplicity);
        for (i, c) in self.components.iter().enumerate() {
            let mut value = format!("kind={} vertices={}", c.kind, join_one_based(&c.vertices));
            if let Some(p) = &c.longest_path {
                value.push_str(&format!(" longest_path={}", join_one_based(p)));
            }
            r.push(format!("component.{}", i + 1), value);
        }
        r
    }
}

fn join_one_based(vs: &[VertexId]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(",")
}

/// Computes the structure report in `O(n + m)`.
pub fn analyze(g: &ColoredGraph) -> StructureReport {
    let n = g.vertex_count();
    let mut comp_of = vec![usize::MAX; n];
    let mut components = Vec::new();
    for start in 0..n {
        if comp_of[start] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut vertices = vec![start];
        comp_of[start] = id;
        let mut head = 0;
        while head < vertices.len() {
            let v = vertices[head];
            head += 1;
            for &(w, _) in g.neighbors(v) {
                if comp_of[w] == usize::MAX {
                    comp_of[w] = id;
                    vertices.push(w);
                }
            }
        }
        vertices.sort_unstable();
        let mut edges: Vec<EdgeId> = vertices
            .iter()
            .flat_map(|&v| g.neighbors(v).iter().filter(move |&&(w, _)| w > v).map(|&(_, e)| e))
            .collect();
        edges.sort_unstable();
        let kind = classify(g, &vertices, edges.len());
        let longest_path = kind.is_tree().then(|| double_sweep(g, vertices[0]));
        components.push(ComponentInfo { vertices, edges, kind, longest_path });
    }

    let is_forest = components.iter().all(|c| c.kind.is_tree());
    let max_degree = (0..n).map(|v| g.degree(v)).max().unwrap_or(0);
    let is_tree = is_forest && components.len() == 1;
    let is_path = is_tree && max_degree <= 2;
    let is_linear_forest = is_forest && max_degree <= 2;

    let p_subgraph_free_up_to = if is_forest || components.iter().all(|c| !c.contains_p4()) {
        let longest = components.iter().filter_map(ComponentInfo::longest_path_len).max().unwrap_or(0);
        PathFreeness { bound: longest + 1, exact: true }
    } else {
        PathFreeness { bound: n + 1, exact: false }
    };

    let properly_colored = (0..n).all(|v| {
        let mut colors: Vec<_> = g.neighbors(v).iter().map(|&(_, e)| g.edge(e).color).collect();
        colors.sort_unstable();
        colors.windows(2).all(|w| w[0] != w[1])
    });
    let max_color_multiplicity = g.color_multiplicities().into_iter().max().unwrap_or(0);

    StructureReport {
        vertex_count: n,
        edge_count: g.edge_count(),
        color_count: g.color_count(),
        components,
        is_forest,
        is_tree,
        is_path,
        is_linear_forest,
        p_subgraph_free_up_to,
        properly_colored,
        max_color_multiplicity,
    }
}

fn classify(g: &ColoredGraph, vertices: &[VertexId], edge_count: usize) -> ComponentKind {
    let v = vertices.len();
    if v == 1 {
        return ComponentKind::IsolatedVertex;
    }
    if edge_count + 1 == v {
        let max_deg = vertices.iter().map(|&x| g.degree(x)).max().unwrap_or(0);
        if max_deg == edge_count {
            ComponentKind::Star
        } else if max_deg <= 2 {
            ComponentKind::Path
        } else {
            ComponentKind::TreeOther
        }
    } else if v == 3 && edge_count == 3 {
        ComponentKind::Triangle
    } else {
        ComponentKind::Cyclic
    }
}

/// BFS distances from `start` inside its component, plus the farthest vertex
/// (lowest id on ties) and BFS parents.
fn bfs_from(g: &ColoredGraph, start: VertexId) -> (VertexId, Vec<(VertexId, usize, VertexId)>) {
    // (vertex, distance, parent) in visiting order
    let mut order = vec![(start, 0, start)];
    let mut seen = std::collections::HashSet::from([start]);
    let mut queue = VecDeque::from([(start, 0usize)]);
    while let Some((v, d)) = queue.pop_front() {
        for &(w, _) in g.neighbors(v) {
            if seen.insert(w) {
                order.push((w, d + 1, v));
                queue.push_back((w, d + 1));
            }
        }
    }
    let far = order.iter().map(|&(v, d, _)| (std::cmp::Reverse(d), v)).min().map(|(_, v)| v).unwrap();
    (far, order)
}

/// Longest path of a tree component by the double farthest-vertex sweep,
/// started at `lowest`, returned from the second sweep's root to its far end.
fn double_sweep(g: &ColoredGraph, lowest: VertexId) -> Vec<VertexId> {
    let (a, _) = bfs_from(g, lowest);
    let (b, order) = bfs_from(g, a);
    let parent: std::collections::HashMap<VertexId, VertexId> = order.iter().map(|&(v, _, p)| (v, p)).collect();
    let mut path = vec![b];
    let mut cur = b;
    while cur != a {
        cur = parent[&cur];
        path.push(cur);
    }
    path.reverse();
    path
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CentralEdgeError {
    #[error("component of vertex {0} is not a tree")]
    NotATree(VertexId),
    #[error("component of vertex {0} has no P4 (longest path has {1} vertices)")]
    NoP4(VertexId, usize),
}

/// The edge joining the two middle vertices of the canonical longest path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralEdge {
    pub edge: EdgeId,
    pub x: VertexId,
    pub y: VertexId,
    pub longest_path: Vec<VertexId>,
}

/// Central edge of the tree component containing `vertex`.
///
/// For a path `v1..vL` the middle vertices sit at positions `ceil(L/2)` and
/// `ceil(L/2) + 1`. When the tree has no `P7`, every vertex is within distance
/// two of `{x, y}`; this is checked before returning.
pub fn central_edge(g: &ColoredGraph, vertex: VertexId) -> Result<CentralEdge, CentralEdgeError> {
    let (_, order) = bfs_from(g, vertex);
    let lowest = order.iter().map(|&(v, _, _)| v).min().unwrap();
    let edge_count: usize = order.iter().map(|&(v, _, _)| g.degree(v)).sum::<usize>() / 2;
    if edge_count + 1 != order.len() {
        return Err(CentralEdgeError::NotATree(vertex));
    }
    let path = double_sweep(g, lowest);
    let len = path.len();
    if len < 4 {
        return Err(CentralEdgeError::NoP4(vertex, len));
    }
    let i = len.div_ceil(2) - 1;
    let (x, y) = (path[i], path[i + 1]);
    let edge = g.find_edge(x, y).expect("consecutive path vertices are adjacent");
    if len <= 6 {
        let within = |start: VertexId| {
            let (_, dist) = bfs_from(g, start);
            dist.into_iter().map(|(v, d, _)| (v, d)).collect::<std::collections::HashMap<_, _>>()
        };
        let (dx, dy) = (within(x), within(y));
        assert!(
            order.iter().all(|&(v, _, _)| dx[&v].min(dy[&v]) <= 2),
            "P7-free tree with a vertex farther than 2 from its central edge"
        );
    }
    Ok(CentralEdge { edge, x, y, longest_path: path })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize, usize)]) -> ColoredGraph {
        ColoredGraph::from_colored_edges(n, edges.iter().copied()).unwrap()
    }

    fn path_graph(n: usize) -> ColoredGraph {
        graph(n, &(0..n - 1).map(|i| (i, i + 1, i)).collect::<Vec<_>>())
    }

    #[test]
    fn star_k15() {
        let g = graph(6, &(1..6).map(|i| (0, i, i)).collect::<Vec<_>>());
        let r = analyze(&g);
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].kind, ComponentKind::Star);
        assert_eq!(r.components[0].longest_path.as_ref().unwrap().len(), 3);
        assert!(r.is_p4_subgraph_free());
        assert_eq!(r.p_subgraph_free_up_to, PathFreeness { bound: 4, exact: true });
    }

    #[test]
    fn path_on_seven_vertices() {
        let r = analyze(&path_graph(7));
        assert!(r.is_path && r.is_tree && r.is_forest && r.is_linear_forest);
        assert_eq!(r.p_subgraph_free_up_to.bound, 8);
        assert_eq!(r.components[0].kind, ComponentKind::Path);
        assert_eq!(r.is_path_free(8), Some(true));
        assert_eq!(r.is_path_free(7), Some(false));
    }

    #[test]
    fn triangle_is_p4_free() {
        let r = analyze(&graph(3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]));
        assert_eq!(r.components[0].kind, ComponentKind::Triangle);
        assert!(!r.is_forest);
        assert!(r.is_p4_subgraph_free());
        assert_eq!(r.p_subgraph_free_up_to, PathFreeness { bound: 4, exact: true });
    }

    #[test]
    fn cyclic_graph_bound_is_coarse() {
        let c5 = graph(5, &[(0, 1, 0), (1, 2, 1), (2, 3, 0), (3, 4, 1), (0, 4, 2)]);
        let r = analyze(&c5);
        assert_eq!(r.components[0].kind, ComponentKind::Cyclic);
        assert_eq!(r.p_subgraph_free_up_to, PathFreeness { bound: 6, exact: false });
        assert_eq!(r.is_path_free(4), Some(false));
        assert_eq!(r.is_path_free(5), None);
        assert_eq!(r.is_path_free(6), Some(true));
        assert!(r.properly_colored);
    }

    #[test]
    fn coloring_facts() {
        let g = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 2)]);
        let r = analyze(&g);
        assert!(!r.properly_colored);
        assert_eq!(r.max_color_multiplicity, 2);
    }

    #[test]
    fn isolated_vertices_and_empty_graph() {
        let r = analyze(&graph(3, &[(0, 1, 0)]));
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.components[1].kind, ComponentKind::IsolatedVertex);
        assert!(r.is_forest && !r.is_tree && r.is_tree_ignoring_isolated());
        let r = analyze(&graph(0, &[]));
        assert!(r.components.is_empty());
        assert_eq!(r.p_subgraph_free_up_to.bound, 1);
    }

    #[test]
    fn central_edge_of_paths() {
        let p6 = path_graph(6);
        let c = central_edge(&p6, 0).unwrap();
        assert_eq!((c.x.min(c.y), c.x.max(c.y)), (2, 3));
        let p4 = path_graph(4);
        let c = central_edge(&p4, 3).unwrap();
        assert_eq!((c.x.min(c.y), c.x.max(c.y)), (1, 2));
        assert_eq!(central_edge(&path_graph(3), 0), Err(CentralEdgeError::NoP4(0, 3)));
        let tri = graph(3, &[(0, 1, 1), (1, 2, 2), (0, 2, 3)]);
        assert_eq!(central_edge(&tri, 0), Err(CentralEdgeError::NotATree(0)));
    }

    #[test]
    fn central_edge_of_double_star() {
        // centers 0 and 1, leaves 2,3 on 0 and 4,5,6 on 1
        let g = graph(7, &[(0, 1, 0), (0, 2, 1), (0, 3, 2), (1, 4, 3), (1, 5, 4), (1, 6, 5)]);
        let c = central_edge(&g, 5).unwrap();
        assert_eq!((c.x.min(c.y), c.x.max(c.y)), (0, 1));
        assert_eq!(c.longest_path.len(), 4);
    }

    #[test]
    fn report_lines() {
        let text = analyze(&path_graph(4)).to_report().to_string();
        assert!(text.contains("is_path: true\n"));
        assert!(text.contains("component.1: kind=path vertices=1,2,3,4 longest_path="));
    }
}
