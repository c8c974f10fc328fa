//! Maximum bipartite matching.
//!
//! [`hopcroft_karp`] computes a maximum matching with BFS layering and
//! vertex-disjoint shortest augmenting paths. [`lex_min_maximum_matching`]
//! then turns it into the maximum matching whose sorted pair ids are
//! lexicographically smallest, using the classical characterization of edges
//! that belong to some maximum matching: an edge is allowed iff it is matched,
//! lies on an even alternating cycle, or touches a vertex that some maximum
//! matching leaves free.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// Bipartite graph given as a list of `(left, right)` pairs; a pair's index is its id.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    pairs: Vec<(usize, usize)>,
    // (right, pair id) per left vertex, and (left, pair id) per right vertex
    left_adj: Vec<Vec<(usize, usize)>>,
    right_adj: Vec<Vec<(usize, usize)>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, pairs: Vec<(usize, usize)>) -> Self {
        let mut left_adj = vec![Vec::new(); left];
        let mut right_adj = vec![Vec::new(); right];
        for (id, &(l, r)) in pairs.iter().enumerate() {
            left_adj[l].push((r, id));
            right_adj[r].push((l, id));
        }
        Self { left, right, pairs, left_adj, right_adj }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMatching {
    pub left_mate: Vec<Option<usize>>,
    pub right_mate: Vec<Option<usize>>,
}

impl BipartiteMatching {
    pub fn size(&self) -> usize {
        self.left_mate.iter().filter(|m| m.is_some()).count()
    }
}

/// Maximum matching in `O(E sqrt(V))`; the DFS phase is iterative.
pub fn hopcroft_karp(g: &BipartiteGraph) -> BipartiteMatching {
    let mut left_mate = vec![NONE; g.left];
    let mut right_mate = vec![NONE; g.right];
    let mut dist = vec![0usize; g.left];
    let mut iter = vec![0usize; g.left];
    let mut stack: Vec<usize> = Vec::new();
    loop {
        // BFS layering from free left vertices
        let mut queue = VecDeque::new();
        for l in 0..g.left {
            if left_mate[l] == NONE {
                dist[l] = 0;
                queue.push_back(l);
            } else {
                dist[l] = NONE;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &(r, _) in &g.left_adj[l] {
                let next = right_mate[r];
                if next == NONE {
                    found = true;
                } else if dist[next] == NONE {
                    dist[next] = dist[l] + 1;
                    queue.push_back(next);
                }
            }
        }
        if !found {
            break;
        }
        iter.iter_mut().for_each(|i| *i = 0);
        for root in 0..g.left {
            if left_mate[root] != NONE {
                continue;
            }
            stack.clear();
            stack.push(root);
            while let Some(&l) = stack.last() {
                if iter[l] == g.left_adj[l].len() {
                    dist[l] = NONE;
                    stack.pop();
                    continue;
                }
                let (r, _) = g.left_adj[l][iter[l]];
                iter[l] += 1;
                let next = right_mate[r];
                if next == NONE {
                    // augment along the stack: stack[i] takes the right vertex it advanced through
                    for &sl in stack.iter().rev() {
                        let (sr, _) = g.left_adj[sl][iter[sl] - 1];
                        left_mate[sl] = sr;
                        right_mate[sr] = sl;
                    }
                    for &sl in &stack {
                        dist[sl] = NONE;
                    }
                    break;
                } else if dist[next] != NONE && dist[next] == dist[l] + 1 {
                    stack.push(next);
                }
            }
        }
    }
    BipartiteMatching {
        left_mate: left_mate.into_iter().map(|m| (m != NONE).then_some(m)).collect(),
        right_mate: right_mate.into_iter().map(|m| (m != NONE).then_some(m)).collect(),
    }
}

/// Alternating-path structure of the not-yet-frozen part of the graph.
struct Epoch {
    left_freeable: Vec<bool>,
    right_freeable: Vec<bool>,
    scc: Vec<usize>,
}

struct LexState<'a> {
    g: &'a BipartiteGraph,
    left_mate: Vec<usize>,
    right_mate: Vec<usize>,
    frozen_left: Vec<bool>,
    frozen_right: Vec<bool>,
}

impl LexState<'_> {
    fn live_left(&self, l: usize) -> bool {
        !self.frozen_left[l]
    }

    fn live_right(&self, r: usize) -> bool {
        !self.frozen_right[r]
    }

    fn epoch(&self) -> Epoch {
        let g = self.g;
        // left vertices some maximum matching leaves free
        let mut left_freeable = vec![false; g.left];
        let mut queue: VecDeque<usize> =
            (0..g.left).filter(|&l| self.live_left(l) && self.left_mate[l] == NONE).collect();
        for &l in &queue {
            left_freeable[l] = true;
        }
        while let Some(l) = queue.pop_front() {
            for &(r, _) in &g.left_adj[l] {
                if !self.live_right(r) || self.left_mate[l] == r {
                    continue;
                }
                let w = self.right_mate[r];
                if w != NONE && !left_freeable[w] {
                    left_freeable[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut right_freeable = vec![false; g.right];
        let mut queue: VecDeque<usize> =
            (0..g.right).filter(|&r| self.live_right(r) && self.right_mate[r] == NONE).collect();
        for &r in &queue {
            right_freeable[r] = true;
        }
        while let Some(r) = queue.pop_front() {
            for &(l, _) in &g.right_adj[r] {
                if !self.live_left(l) || self.right_mate[r] == l {
                    continue;
                }
                let w = self.left_mate[l];
                if w != NONE && !right_freeable[w] {
                    right_freeable[w] = true;
                    queue.push_back(w);
                }
            }
        }
        Epoch { left_freeable, right_freeable, scc: self.components() }
    }

    /// Successors of matched left `l` in the alternating digraph: the mates of
    /// its live, matched, non-mate right neighbors.
    fn successors(&self, l: usize) -> impl Iterator<Item = usize> + '_ {
        let mate = self.left_mate[l];
        self.g.left_adj[l].iter().filter_map(move |&(r, _)| {
            if r == mate || !self.live_right(r) {
                return None;
            }
            let w = self.right_mate[r];
            (w != NONE).then_some(w)
        })
    }

    /// Iterative Tarjan SCC over live matched left vertices.
    fn components(&self) -> Vec<usize> {
        let n = self.g.left;
        let mut index = vec![NONE; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![NONE; n];
        let mut stack = Vec::new();
        let mut counter = 0;
        let mut next_comp = 0;
        for root in 0..n {
            if index[root] != NONE || !self.live_left(root) || self.left_mate[root] == NONE {
                continue;
            }
            let mut call: Vec<(usize, Vec<usize>, usize)> = Vec::new();
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            call.push((root, self.successors(root).collect(), 0));
            while let Some((v, succ, pos)) = call.last_mut() {
                let v = *v;
                if *pos < succ.len() {
                    let w = succ[*pos];
                    *pos += 1;
                    if index[w] == NONE {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        let s = self.successors(w).collect();
                        call.push((w, s, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some((parent, _, _)) = call.last() {
                        low[*parent] = low[*parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                }
            }
        }
        comp
    }

    fn allowed(&self, epoch: &Epoch, l: usize, r: usize) -> bool {
        let (lm, rm) = (self.left_mate[l], self.right_mate[r]);
        if lm == NONE || rm == NONE {
            return true;
        }
        epoch.left_freeable[l] || epoch.right_freeable[r] || (epoch.scc[l] != NONE && epoch.scc[l] == epoch.scc[rm])
    }

    /// Rearranges the matching (same size) so that it contains `(l, r)`.
    fn realize(&mut self, epoch: &Epoch, l: usize, r: usize) {
        if self.left_mate[l] != NONE && self.right_mate[r] != NONE {
            if epoch.left_freeable[l] {
                self.free_left(l);
            } else if epoch.right_freeable[r] {
                self.free_right(r);
            } else {
                self.rotate_cycle(l, r);
                return;
            }
        }
        if self.left_mate[l] != NONE {
            let old = self.left_mate[l];
            self.right_mate[old] = NONE;
        }
        if self.right_mate[r] != NONE {
            let old = self.right_mate[r];
            self.left_mate[old] = NONE;
        }
        self.left_mate[l] = r;
        self.right_mate[r] = l;
    }

    /// Flips an even alternating path from a free left vertex to `target`.
    fn free_left(&mut self, target: usize) {
        let g = self.g;
        let mut via = vec![NONE; g.left]; // right vertex used to reach each left vertex
        let mut prev = vec![NONE; g.left];
        let mut seen = vec![false; g.left];
        let mut queue: VecDeque<usize> =
            (0..g.left).filter(|&x| self.live_left(x) && self.left_mate[x] == NONE).collect();
        for &x in &queue {
            seen[x] = true;
        }
        while let Some(x) = queue.pop_front() {
            if x == target {
                break;
            }
            for &(r, _) in &g.left_adj[x] {
                if !self.live_right(r) || self.left_mate[x] == r {
                    continue;
                }
                let w = self.right_mate[r];
                if w != NONE && !seen[w] {
                    seen[w] = true;
                    via[w] = r;
                    prev[w] = x;
                    queue.push_back(w);
                }
            }
        }
        assert!(seen[target], "target must be freeable");
        let mut cur = target;
        self.right_mate[self.left_mate[cur]] = NONE;
        self.left_mate[cur] = NONE;
        while prev[cur] != NONE {
            let r = via[cur];
            let p = prev[cur];
            self.left_mate[p] = r;
            self.right_mate[r] = p;
            cur = p;
        }
    }

    fn free_right(&mut self, target: usize) {
        let g = self.g;
        let mut via = vec![NONE; g.right];
        let mut prev = vec![NONE; g.right];
        let mut seen = vec![false; g.right];
        let mut queue: VecDeque<usize> =
            (0..g.right).filter(|&x| self.live_right(x) && self.right_mate[x] == NONE).collect();
        for &x in &queue {
            seen[x] = true;
        }
        while let Some(x) = queue.pop_front() {
            if x == target {
                break;
            }
            for &(l, _) in &g.right_adj[x] {
                if !self.live_left(l) || self.right_mate[x] == l {
                    continue;
                }
                let w = self.left_mate[l];
                if w != NONE && !seen[w] {
                    seen[w] = true;
                    via[w] = l;
                    prev[w] = x;
                    queue.push_back(w);
                }
            }
        }
        assert!(seen[target], "target must be freeable");
        let mut cur = target;
        self.left_mate[self.right_mate[cur]] = NONE;
        self.right_mate[cur] = NONE;
        while prev[cur] != NONE {
            let l = via[cur];
            let p = prev[cur];
            self.right_mate[p] = l;
            self.left_mate[l] = p;
            cur = p;
        }
    }

    /// `l` and the mate of `r` share a strongly connected component; walk from
    /// the mate of `r` back to `l` and shift the matching around the cycle.
    fn rotate_cycle(&mut self, l: usize, r: usize) {
        let start = self.right_mate[r];
        let n = self.g.left;
        let mut prev = vec![NONE; n];
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            if x == l {
                break;
            }
            for w in self.successors(x).collect::<Vec<_>>() {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = x;
                    queue.push_back(w);
                }
            }
        }
        assert!(seen[l], "alternating cycle must exist");
        let mut chain = vec![l];
        while *chain.last().unwrap() != start {
            chain.push(prev[*chain.last().unwrap()]);
        }
        chain.reverse(); // start ... l
        let old: Vec<usize> = chain.iter().map(|&x| self.left_mate[x]).collect();
        for i in 0..chain.len() - 1 {
            let x = chain[i];
            let target = old[i + 1];
            self.left_mate[x] = target;
            self.right_mate[target] = x;
        }
        self.left_mate[l] = r;
        self.right_mate[r] = l;
    }
}

/// The maximum matching whose sorted pair ids are lexicographically smallest,
/// returned as sorted pair ids.
///
/// Pairs are scanned in id order and a pair is kept iff some maximum matching
/// contains it together with everything kept so far. `initial` must be a
/// maximum matching of `g`.
pub fn lex_min_maximum_matching(g: &BipartiteGraph, initial: &BipartiteMatching) -> Vec<usize> {
    let mut st = LexState {
        g,
        left_mate: initial.left_mate.iter().map(|m| m.unwrap_or(NONE)).collect(),
        right_mate: initial.right_mate.iter().map(|m| m.unwrap_or(NONE)).collect(),
        frozen_left: vec![false; g.left],
        frozen_right: vec![false; g.right],
    };
    let mut chosen = Vec::new();
    let mut epoch = st.epoch();
    // Freezing a matched pair only shrinks the live graph, so a stale epoch
    // still answers "not allowed" correctly. Rearranging the matching
    // invalidates it outright.
    let mut shrunk = false;
    let mut invalid = false;
    for (id, &(l, r)) in g.pairs.iter().enumerate() {
        if st.frozen_left[l] || st.frozen_right[r] {
            continue;
        }
        if st.left_mate[l] != r {
            if invalid {
                epoch = st.epoch();
                invalid = false;
                shrunk = false;
            }
            if !st.allowed(&epoch, l, r) {
                continue;
            }
            if shrunk {
                epoch = st.epoch();
                shrunk = false;
                if !st.allowed(&epoch, l, r) {
                    continue;
                }
            }
            st.realize(&epoch, l, r);
            invalid = true;
        }
        st.frozen_left[l] = true;
        st.frozen_right[r] = true;
        chosen.push(id);
        shrunk = true;
    }
    debug_assert_eq!(chosen.len(), initial.size());
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_max(g: &BipartiteGraph) -> (usize, Vec<usize>) {
        let p = g.pairs.len();
        let mut best: (usize, Vec<usize>) = (0, Vec::new());
        for mask in 0u32..(1 << p) {
            let ids: Vec<usize> = (0..p).filter(|i| mask >> i & 1 == 1).collect();
            let ok = ids.iter().enumerate().all(|(i, &a)| {
                ids[i + 1..].iter().all(|&b| g.pairs[a].0 != g.pairs[b].0 && g.pairs[a].1 != g.pairs[b].1)
            });
            if ok && (ids.len() > best.0 || (ids.len() == best.0 && ids < best.1)) {
                best = (ids.len(), ids);
            }
        }
        best
    }

    #[test]
    fn small_cases_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..3000 {
            let left = rng.gen_range(1..6);
            let right = rng.gen_range(1..6);
            let mut pairs = Vec::new();
            for l in 0..left {
                for r in 0..right {
                    if rng.gen_bool(0.45) {
                        pairs.push((l, r));
                    }
                }
            }
            if pairs.len() > 14 {
                pairs.truncate(14);
            }
            // random priority order
            for i in (1..pairs.len()).rev() {
                let j = rng.gen_range(0..=i);
                pairs.swap(i, j);
            }
            let g = BipartiteGraph::new(left, right, pairs);
            let m = hopcroft_karp(&g);
            let (size, lex) = brute_max(&g);
            assert_eq!(m.size(), size);
            assert_eq!(lex_min_maximum_matching(&g, &m), lex, "pairs {:?}", g.pairs);
        }
    }

    #[test]
    fn empty_graph() {
        let g = BipartiteGraph::new(3, 0, Vec::new());
        let m = hopcroft_karp(&g);
        assert_eq!(m.size(), 0);
        assert!(lex_min_maximum_matching(&g, &m).is_empty());
    }

    #[test]
    fn long_augmenting_chain() {
        // left i adjacent to right i and i+1; greedy from the top leaves a long chain
        let n = 20_000;
        let mut pairs = Vec::new();
        for i in 0..n {
            pairs.push((i, i + 1));
            pairs.push((i, i));
        }
        let g = BipartiteGraph::new(n, n + 1, pairs);
        let m = hopcroft_karp(&g);
        assert_eq!(m.size(), n);
        assert_eq!(lex_min_maximum_matching(&g, &m).len(), n);
    }
}
