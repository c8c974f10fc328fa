//! The color-line graph: one vertex per edge of the colored graph, two vertices
//! adjacent when the edges share an endpoint or carry the same color.
//!
//! Rainbow matchings of the colored graph are exactly the independent sets of
//! its color-line graph, which lets the independent-set machinery in
//! [`crate::approx`] and [`crate::exact::oracle_mis`] work on rainbow matchings.

use thiserror::Error;

use crate::graph::{ColoredGraph, EdgeId, RainbowMatching};
use crate::report::Report;
use crate::simple::SimpleGraph;

/// Why two color-line vertices are adjacent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Provenance {
    pub incident: bool,
    pub same_color: bool,
}

impl Provenance {
    pub fn any(self) -> bool {
        self.incident || self.same_color
    }
}

#[derive(Debug, Clone)]
pub struct ColorLineGraph<'g> {
    source: &'g ColoredGraph,
    graph: SimpleGraph,
    // row-major m x m, bit 0 = incident, bit 1 = same color
    flags: Vec<u8>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColorLineError {
    #[error("vertices {0} and {1} are adjacent in the color-line graph")]
    NotIndependent(EdgeId, EdgeId),
    #[error("vertex {0} out of range")]
    OutOfRange(EdgeId),
}

/// Builds the color-line graph by scanning all `O(m^2)` edge pairs.
pub fn build_color_line(g: &ColoredGraph) -> ColorLineGraph<'_> {
    let m = g.edge_count();
    let mut flags = vec![0u8; m * m];
    let mut pairs = Vec::new();
    for (i, a) in g.edges().iter().enumerate() {
        for (j, b) in g.edges().iter().enumerate().skip(i + 1) {
            let f = u8::from(a.shares_vertex(b)) | (u8::from(a.color == b.color) << 1);
            if f != 0 {
                flags[i * m + j] = f;
                flags[j * m + i] = f;
                pairs.push((i, j));
            }
        }
    }
    ColorLineGraph { source: g, graph: SimpleGraph::new(m, pairs), flags }
}

impl<'g> ColorLineGraph<'g> {
    pub fn source(&self) -> &'g ColoredGraph {
        self.source
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn provenance(&self, a: EdgeId, b: EdgeId) -> Provenance {
        let f = self.flags[a * self.vertex_count() + b];
        Provenance { incident: f & 1 != 0, same_color: f & 2 != 0 }
    }

    /// Reads an independent set as a rainbow matching of the source graph.
    pub fn lift_independent_set(&self, set: &[usize]) -> Result<RainbowMatching, ColorLineError> {
        let mut ids = set.to_vec();
        ids.sort_unstable();
        ids.dedup();
        if let Some(&bad) = ids.iter().find(|&&v| v >= self.vertex_count()) {
            return Err(ColorLineError::OutOfRange(bad));
        }
        for (i, &a) in ids.iter().enumerate() {
            if let Some(&b) = ids[i + 1..].iter().find(|&&b| self.graph.adjacent(a, b)) {
                return Err(ColorLineError::NotIndependent(a, b));
            }
        }
        Ok(RainbowMatching::new(self.source, ids).expect("independent sets of CL(G) are rainbow matchings"))
    }

    /// Debug dump: one `pair` line per adjacency with its provenance flags.
    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.push("vertices", self.vertex_count());
        r.push("edges", self.graph.edge_count());
        for (a, b) in self.graph.edge_list() {
            let p = self.provenance(a, b);
            let tag = match (p.incident, p.same_color) {
                (true, true) => "incident+same-color",
                (true, false) => "incident",
                _ => "same-color",
            };
            r.push(format!("pair {} {}", a + 1, b + 1), tag);
        }
        r
    }
}

/// `Err` carries a center and four pairwise non-adjacent neighbors.
pub fn check_k14_free(g: &SimpleGraph) -> Result<(), [usize; 5]> {
    for v in 0..g.vertex_count() {
        let nbrs = g.neighbors(v);
        if nbrs.len() < 4 {
            continue;
        }
        let mut chosen = Vec::with_capacity(4);
        if independent_subset(g, nbrs, 4, &mut chosen) {
            return Err([v, chosen[0], chosen[1], chosen[2], chosen[3]]);
        }
    }
    Ok(())
}

fn independent_subset(g: &SimpleGraph, pool: &[usize], need: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == need {
        return true;
    }
    for (i, &c) in pool.iter().enumerate() {
        if pool.len() - i < need - chosen.len() {
            break;
        }
        if chosen.iter().all(|&x| !g.adjacent(x, c)) {
            chosen.push(c);
            if independent_subset(g, &pool[i + 1..], need, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// `Err` carries seven vertices inducing `K7` minus one edge; the first two are
/// the non-adjacent pair.
pub fn check_k7e_free(g: &SimpleGraph) -> Result<(), [usize; 7]> {
    let n = g.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if g.adjacent(u, v) {
                continue;
            }
            let common: Vec<usize> = g.neighbors(u).iter().copied().filter(|&w| g.adjacent(v, w)).collect();
            if common.len() < 5 {
                continue;
            }
            let mut clique = Vec::with_capacity(5);
            if find_clique(g, &common, 5, &mut clique) {
                return Err([u, v, clique[0], clique[1], clique[2], clique[3], clique[4]]);
            }
        }
    }
    Ok(())
}

fn find_clique(g: &SimpleGraph, pool: &[usize], need: usize, clique: &mut Vec<usize>) -> bool {
    if clique.len() == need {
        return true;
    }
    for (i, &c) in pool.iter().enumerate() {
        if pool.len() - i < need - clique.len() {
            break;
        }
        let rest: Vec<usize> = pool[i + 1..].iter().copied().filter(|&w| g.adjacent(c, w)).collect();
        clique.push(c);
        if find_clique(g, &rest, need, clique) {
            return true;
        }
        clique.pop();
    }
    false
}
