//! Uncolored simple graphs: conflict graphs, color-line graphs and cubic sources.

use std::fmt;

/// Undirected simple graph on `0..n` with sorted adjacency lists and an
/// adjacency bit matrix for constant-time pair queries.
#[derive(Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adjacency: Vec<Vec<usize>>,
    words: usize,
    matrix: Vec<u64>,
}

impl fmt::Debug for SimpleGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SimpleGraph").field("n", &self.n).field("edges", &self.edge_list()).finish()
    }
}

impl SimpleGraph {
    /// Builds the graph, ignoring loops and repeated pairs.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut g = Self { n, adjacency: vec![Vec::new(); n], words, matrix: vec![0; words * n] };
        for (a, b) in edges {
            assert!(a < n && b < n, "vertex out of range");
            if a != b && !g.adjacent(a, b) {
                g.set(a, b);
                g.set(b, a);
                g.adjacency[a].push(b);
                g.adjacency[b].push(a);
            }
        }
        for list in &mut g.adjacency {
            list.sort_unstable();
        }
        g
    }

    fn set(&mut self, a: usize, b: usize) {
        self.matrix[a * self.words + b / 64] |= 1 << (b % 64);
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.matrix[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Edges `(a, b)` with `a < b` in lexicographic order.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for &b in &self.adjacency[a] {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &a)| set[i + 1..].iter().all(|&b| a != b && !self.adjacent(a, b)))
    }

    /// Independent and no outside vertex can be added.
    pub fn is_maximal_independent(&self, set: &[usize]) -> bool {
        if !self.is_independent(set) {
            return false;
        }
        let mut inside = vec![false; self.n];
        for &v in set {
            inside[v] = true;
        }
        (0..self.n).all(|v| inside[v] || self.adjacency[v].iter().any(|&w| inside[w]))
    }
}
