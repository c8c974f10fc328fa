//! Maximum matching in general graphs by Edmonds' blossom contraction.

use std::collections::VecDeque;

use crate::simple::SimpleGraph;

const NONE: usize = usize::MAX;

/// Maximum matching as a mate array. Free roots are processed in increasing
/// order and neighbors in adjacency order, so the result is deterministic.
pub fn maximum_matching(g: &SimpleGraph) -> Vec<Option<usize>> {
    let mut s = Search::new(g);
    for root in 0..g.vertex_count() {
        if s.mate[root] == NONE {
            if let Some(end) = s.find_path(root) {
                s.augment(end);
            }
        }
    }
    s.mate.into_iter().map(|m| (m != NONE).then_some(m)).collect()
}

/// Matched pairs `(a, b)` with `a < b`, sorted.
pub fn matching_edges(mate: &[Option<usize>]) -> Vec<(usize, usize)> {
    mate.iter().enumerate().filter_map(|(a, &m)| m.filter(|&b| a < b).map(|b| (a, b))).collect()
}

struct Search<'a> {
    g: &'a SimpleGraph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl<'a> Search<'a> {
    fn new(g: &'a SimpleGraph) -> Self {
        let n = g.vertex_count();
        Self {
            g,
            mate: vec![NONE; n],
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.g.vertex_count()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.blossom[self.base[v]] = true;
            self.blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn find_path(&mut self, root: usize) -> Option<usize> {
        let n = self.g.vertex_count();
        self.used.fill(false);
        self.parent.fill(NONE);
        for i in 0..n {
            self.base[i] = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    let cur = self.lca(v, to);
                    self.blossom.fill(false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}
