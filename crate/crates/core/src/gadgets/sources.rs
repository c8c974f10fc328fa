//! Cubic source graphs: validation and the built-in catalog.

use std::fmt;

use super::GadgetError;
use crate::graph::ColoredGraph;
use crate::simple::SimpleGraph;

pub const CATALOG: [&str; 5] = ["k33", "heawood", "pappus", "moebius-kantor", "desargues"];

/// A 3-regular, triangle-free, bridgeless simple graph.
#[derive(Debug, Clone)]
pub struct CubicSource {
    graph: SimpleGraph,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CubicViolation {
    NotCubic { vertex: usize, degree: usize },
    Triangle([usize; 3]),
    Bridge(usize, usize),
}

impl fmt::Display for CubicViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubicViolation::NotCubic { vertex, degree } => write!(f, "vertex {} has degree {degree}", vertex + 1),
            CubicViolation::Triangle([a, b, c]) => write!(f, "triangle {} {} {}", a + 1, b + 1, c + 1),
            CubicViolation::Bridge(a, b) => write!(f, "bridge {}-{}", a + 1, b + 1),
        }
    }
}

impl CubicSource {
    pub fn new(graph: SimpleGraph) -> Result<Self, GadgetError> {
        let violations = validate_cubic_source(&graph);
        if violations.is_empty() {
            Ok(Self { graph })
        } else {
            Err(GadgetError::InvalidSource(violations))
        }
    }

    /// Reads the underlying simple graph of an instance, ignoring colors.
    pub fn from_colored(g: &ColoredGraph) -> Result<Self, GadgetError> {
        Self::new(SimpleGraph::new(g.vertex_count(), g.edges().iter().map(|e| (e.u, e.v))))
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// The source as an instance with a single color, for writing to disk.
    pub fn to_colored(&self) -> ColoredGraph {
        ColoredGraph::from_labeled_edges(
            self.vertex_count(),
            self.graph.edge_list().into_iter().map(|(a, b)| (a, b, "x")),
        )
        .expect("simple graph")
    }
}

/// All violated source invariants; empty means valid.
pub fn validate_cubic_source(g: &SimpleGraph) -> Vec<CubicViolation> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for v in 0..n {
        if g.degree(v) != 3 {
            out.push(CubicViolation::NotCubic { vertex: v, degree: g.degree(v) });
        }
    }
    for a in 0..n {
        for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
            for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                if g.adjacent(a, c) {
                    out.push(CubicViolation::Triangle([a, b, c]));
                }
            }
        }
    }
    out.extend(bridges(g).into_iter().map(|(a, b)| CubicViolation::Bridge(a, b)));
    if n == 0 {
        out.push(CubicViolation::NotCubic { vertex: 0, degree: 0 });
    }
    out
}

/// Bridges by DFS low-link, iterative.
fn bridges(g: &SimpleGraph) -> Vec<(usize, usize)> {
    let n = g.vertex_count();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut out = Vec::new();
    let mut time = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        disc[root] = time;
        low[root] = time;
        time += 1;
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            let next = g.neighbors(v).get(top.2).copied();
            top.2 += 1;
            match next {
                Some(w) if w == parent => {}
                Some(w) if disc[w] == usize::MAX => {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                }
                Some(w) => low[v] = low[v].min(disc[w]),
                None => {
                    stack.pop();
                    if parent != usize::MAX {
                        low[parent] = low[parent].min(low[v]);
                        if low[v] > disc[parent] {
                            out.push((parent.min(v), parent.max(v)));
                        }
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Cycle `0..n` plus chords `i - (i + shift[i mod len])`, with `n = len * reps`.
fn lcf(shifts: &[i64], reps: usize) -> SimpleGraph {
    let n = shifts.len() * reps;
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    for i in 0..n {
        let j = (i as i64 + shifts[i % shifts.len()]).rem_euclid(n as i64) as usize;
        edges.push((i, j));
    }
    SimpleGraph::new(n, edges)
}

pub fn named_source(name: &str) -> Result<CubicSource, GadgetError> {
    let graph = match name {
        "k33" => SimpleGraph::new(6, (0..3).flat_map(|a| (3..6).map(move |b| (a, b)))),
        "heawood" => lcf(&[5, -5], 7),
        "pappus" => lcf(&[5, 7, -7, 7, -7, -5], 3),
        "moebius-kantor" => lcf(&[5, -5], 8),
        "desargues" => lcf(&[5, -5, 9, -9], 5),
        _ => return Err(GadgetError::UnknownSource(name.to_string())),
    };
    CubicSource::new(graph)
}
