//! Instance families for testing: exhaustive small forests and seeded random
//! members of each solver class.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::ColoredGraph;

/// Unlabeled trees with `edges` edges as edge lists on `0..=edges`, one per
/// isomorphism class, in a fixed order.
pub fn unlabeled_trees(edges: usize) -> Vec<Vec<(usize, usize)>> {
    let mut level: Vec<Vec<(usize, usize)>> = vec![Vec::new()];
    for k in 1..=edges {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for tree in &level {
            for v in 0..k {
                let mut grown = tree.clone();
                grown.push((v, k));
                if seen.insert(tree_code(k + 1, &grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

/// Canonical form: the smallest rooted parenthesis code over all roots.
fn tree_code(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    fn rooted(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&w| w != parent).map(|&w| rooted(adj, w, v)).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..n).map(|r| rooted(&adj, r, usize::MAX)).min().unwrap_or_default()
}

/// Unlabeled forests without isolated vertices and with `1..=max_edges` edges,
/// as `(vertex_count, edges)`.
pub fn unlabeled_forests(max_edges: usize) -> Vec<(usize, Vec<(usize, usize)>)> {
    // (edge count, tree) for every tree with at least one edge
    let trees: Vec<(usize, Vec<(usize, usize)>)> =
        (1..=max_edges).flat_map(|k| unlabeled_trees(k).into_iter().map(move |t| (k, t))).collect();
    let mut out = Vec::new();
    fn rec(
        trees: &[(usize, Vec<(usize, usize)>)],
        from: usize,
        budget: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<(usize, Vec<(usize, usize)>)>,
    ) {
        if !chosen.is_empty() {
            let mut edges = Vec::new();
            let mut base = 0;
            for &i in chosen.iter() {
                let (k, t) = &trees[i];
                edges.extend(t.iter().map(|&(a, b)| (a + base, b + base)));
                base += k + 1;
            }
            out.push((base, edges));
        }
        for i in from..trees.len() {
            if trees[i].0 <= budget {
                chosen.push(i);
                rec(trees, i, budget - trees[i].0, chosen, out);
                chosen.pop();
            }
        }
    }
    rec(&trees, 0, max_edges, &mut Vec::new(), &mut out);
    out
}

/// Colorings of `m` edges with at most `k` colors up to renaming: restricted
/// growth strings, where each color first appears after all lower ones.
pub fn colorings(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(m: usize, k: usize, cur: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for c in 0..k.min(used + 1) {
            cur.push(c);
            rec(m, k, cur, used.max(c + 1), out);
            cur.pop();
        }
    }
    rec(m, k, &mut Vec::new(), 0, &mut out);
    out
}

/// Every colored forest with `1..=max_edges` edges and at most `max_colors`
/// colors, up to isomorphism of the uncolored forest and renaming of colors.
pub fn exhaustive_forests(max_edges: usize, max_colors: usize) -> impl Iterator<Item = ColoredGraph> {
    unlabeled_forests(max_edges).into_iter().flat_map(move |(n, edges)| {
        colorings(edges.len(), max_colors).into_iter().map(move |colors| {
            let colored = edges.iter().zip(colors).map(|(&(a, b), c)| (a, b, c));
            ColoredGraph::from_colored_edges(n, colored).expect("forest edges are simple")
        })
    })
}

/// Solver classes of the random corpus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Class {
    /// Stars and triangles.
    P4Free,
    P7Tree,
    /// At most four components containing a `P4`.
    P7Forest,
    /// At most six double stars.
    P5Forest,
    /// Arbitrary simple graphs.
    General,
    /// Arbitrary simple graphs, properly colored.
    Proper,
}

impl Class {
    pub const ALL: [Class; 6] =
        [Class::P4Free, Class::P7Tree, Class::P7Forest, Class::P5Forest, Class::General, Class::Proper];

    pub fn as_str(self) -> &'static str {
        match self {
            Class::P4Free => "p4free",
            Class::P7Tree => "p7tree",
            Class::P7Forest => "p7forest",
            Class::P5Forest => "p5forest",
            Class::General => "general",
            Class::Proper => "proper",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Class {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Class::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| format!("unknown class {s:?}"))
    }
}

/// Random member of `class` with at most `max_edges` edges.
pub fn random_instance(rng: &mut impl Rng, class: Class, max_edges: usize) -> ColoredGraph {
    match class {
        Class::P4Free => random_p4_free(rng, max_edges),
        Class::P7Tree => random_p7_tree(rng, max_edges),
        Class::P7Forest => random_p7_forest(rng, max_edges, 4),
        Class::P5Forest => random_p5_forest(rng, max_edges, 6),
        // G(n, p) draws are resampled until they fit the edge budget
        Class::General | Class::Proper => loop {
            let n = rng.gen_range(1..=max_edges.max(1));
            let p = rng.gen_range(0.1..0.6);
            let g = if class == Class::General {
                random_colored_graph(rng, n, p, max_edges)
            } else {
                random_proper_graph(rng, n, p, max_edges)
            };
            if g.edge_count() <= max_edges {
                break g;
            }
        },
    }
}

/// Shuffles vertex ids, adds up to two isolated vertices and draws a palette
/// of between one and `m` colors.
fn finish(rng: &mut impl Rng, n: usize, edges: Vec<(usize, usize)>) -> ColoredGraph {
    let extra = rng.gen_range(0..=2);
    let mut perm: Vec<usize> = (0..n + extra).collect();
    perm.shuffle(rng);
    let palette = rng.gen_range(1..=edges.len().max(1));
    let colored = edges.into_iter().map(|(a, b)| (perm[a], perm[b], rng.gen_range(0..palette)));
    ColoredGraph::from_colored_edges(n + extra, colored.collect::<Vec<_>>()).expect("generated graphs are simple")
}

/// Uniform `G(n, p)` with colors drawn from `0..colors`.
pub fn random_colored_graph(rng: &mut impl Rng, n: usize, p: f64, colors: usize) -> ColoredGraph {
    let colors = colors.max(1);
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b, rng.gen_range(0..colors)));
            }
        }
    }
    ColoredGraph::from_colored_edges(n, edges).expect("simple")
}

/// `G(n, p)` colored properly: each edge takes a random color unused at both
/// ends, and is dropped if none remains.
pub fn random_proper_graph(rng: &mut impl Rng, n: usize, p: f64, colors: usize) -> ColoredGraph {
    let colors = colors.max(1);
    let mut at: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if !rng.gen_bool(p) {
                continue;
            }
            let free: Vec<usize> = (0..colors).filter(|c| !at[a].contains(c) && !at[b].contains(c)).collect();
            if let Some(&c) = free.choose(rng) {
                at[a].insert(c);
                at[b].insert(c);
                edges.push((a, b, c));
            }
        }
    }
    ColoredGraph::from_colored_edges(n, edges).expect("simple")
}

/// Disjoint stars and triangles.
pub fn random_p4_free(rng: &mut impl Rng, max_edges: usize) -> ColoredGraph {
    let target = rng.gen_range(0..=max_edges);
    let mut edges = Vec::new();
    let mut n = 0;
    while edges.len() < target {
        let left = target - edges.len();
        if left >= 3 && rng.gen_bool(0.25) {
            edges.extend([(n, n + 1), (n + 1, n + 2), (n, n + 2)]);
            n += 3;
        } else {
            let k = rng.gen_range(1..=left.min(6));
            edges.extend((1..=k).map(|i| (n, n + i)));
            n += k + 1;
        }
    }
    finish(rng, n, edges)
}

/// Edges of a tree with every vertex within distance two of the edge `0-1`,
/// on vertices `base..`; returns the vertex count.
fn p7_free_tree_edges(rng: &mut impl Rng, edges: usize, base: usize, out: &mut Vec<(usize, usize)>) -> usize {
    out.push((base, base + 1));
    let mut near = vec![base, base + 1];
    let mut n = 2;
    for _ in 1..edges {
        let v = base + n;
        // attach to x or y (making a new near vertex) or to a near vertex
        let &p = if rng.gen_bool(0.5) { &near[rng.gen_range(0..2)] } else { near.choose(rng).unwrap() };
        out.push((p, v));
        if p == base || p == base + 1 {
            near.push(v);
        }
        n += 1;
    }
    n
}

/// A tree without a `P7`.
pub fn random_p7_tree(rng: &mut impl Rng, max_edges: usize) -> ColoredGraph {
    let m = rng.gen_range(1..=max_edges.max(1));
    let mut edges = Vec::new();
    let n = p7_free_tree_edges(rng, m, 0, &mut edges);
    finish(rng, n, edges)
}

/// A forest without a `P7`, with up to `max_p4` components beyond stars.
pub fn random_p7_forest(rng: &mut impl Rng, max_edges: usize, max_p4: usize) -> ColoredGraph {
    let target = rng.gen_range(1..=max_edges.max(1));
    let trees = rng.gen_range(0..=max_p4);
    let mut edges = Vec::new();
    let mut n = 0;
    for _ in 0..trees {
        let left = target.saturating_sub(edges.len());
        if left < 3 {
            break;
        }
        let m = rng.gen_range(3..=left.min(10));
        n += p7_free_tree_edges(rng, m, n, &mut edges);
    }
    while edges.len() < target {
        let k = rng.gen_range(1..=(target - edges.len()).min(4));
        edges.extend((1..=k).map(|i| (n, n + i)));
        n += k + 1;
    }
    finish(rng, n, edges)
}

/// Up to `max_double` double stars plus stars.
pub fn random_p5_forest(rng: &mut impl Rng, max_edges: usize, max_double: usize) -> ColoredGraph {
    let target = rng.gen_range(1..=max_edges.max(1));
    let doubles = rng.gen_range(0..=max_double);
    let mut edges = Vec::new();
    let mut n = 0;
    for _ in 0..doubles {
        let left = target.saturating_sub(edges.len());
        if left < 3 {
            break;
        }
        let m = rng.gen_range(3..=left.min(8));
        let (a, b) = (n, n + 1);
        edges.push((a, b));
        let left_leaves = rng.gen_range(1..m - 1);
        let mut v = n + 2;
        for i in 0..m - 1 {
            edges.push((if i < left_leaves { a } else { b }, v));
            v += 1;
        }
        n = v;
    }
    while edges.len() < target {
        let k = rng.gen_range(1..=(target - edges.len()).min(5));
        edges.extend((1..=k).map(|i| (n, n + i)));
        n += k + 1;
    }
    finish(rng, n, edges)
}
