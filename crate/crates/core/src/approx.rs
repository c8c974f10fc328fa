//! Local-search approximation on the color-line graph.
//!
//! Color-line graphs have no induced `K_{1,4}`, so every maximal independent
//! set is within a factor three of the maximum. Swapping up to `t` solution
//! vertices for `t + 1` outside vertices improves on that as `t` grows.

use crate::color_line::build_color_line;
use crate::graph::{ColoredGraph, RainbowMatching};
use crate::report::Report;
use crate::simple::SimpleGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalSearchConfig {
    /// Largest number of solution vertices removed by one swap; 0 is greedy only.
    pub swap_size: usize,
    /// Bound on swap searches; `None` runs to local optimality.
    pub max_passes: Option<usize>,
}

impl Default for LocalSearchConfig {
    fn default() -> Self {
        Self { swap_size: 2, max_passes: None }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LocalSearchStats {
    /// Swap searches started, including the final unsuccessful one.
    pub passes: usize,
    pub swaps_applied: usize,
    /// Removal sets `A` whose candidate set was built.
    pub candidates_examined: usize,
    pub final_size: usize,
}

/// Scans vertices in increasing order, keeping each one with no kept neighbor.
pub fn greedy_maximal_is(g: &SimpleGraph) -> Vec<usize> {
    let mut blocked = vec![false; g.vertex_count()];
    let mut out = Vec::new();
    for v in 0..g.vertex_count() {
        if !blocked[v] {
            out.push(v);
            for &w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    out
}

/// Greedy start followed by first-improvement swap search.
pub fn local_search_mis(g: &SimpleGraph, cfg: &LocalSearchConfig) -> (Vec<usize>, LocalSearchStats) {
    improve(g, greedy_maximal_is(g), cfg)
}

/// Runs the swap search from an independent set `start`.
///
/// Swaps are tried by increasing `|A|`, then lexicographically in `A`; the
/// added set `B` is the lexicographically first independent `(|A| + 1)`-subset
/// of the vertices whose solution neighbors all lie in `A`. A removal set with
/// a vertex that no candidate touches is skipped: dropping that vertex and one
/// vertex of `B` gives a smaller swap, which would have been found first.
pub fn improve(g: &SimpleGraph, start: Vec<usize>, cfg: &LocalSearchConfig) -> (Vec<usize>, LocalSearchStats) {
    assert!(g.is_independent(&start), "local search needs an independent start");
    let n = g.vertex_count();
    let mut in_s = vec![false; n];
    for &v in &start {
        in_s[v] = true;
    }
    let mut stats = LocalSearchStats::default();
    loop {
        if cfg.max_passes.is_some_and(|cap| stats.passes >= cap) {
            break;
        }
        stats.passes += 1;
        match find_swap(g, &in_s, cfg.swap_size, &mut stats.candidates_examined) {
            Some((remove, add)) => {
                for v in remove {
                    in_s[v] = false;
                }
                for v in add {
                    in_s[v] = true;
                }
                stats.swaps_applied += 1;
            }
            None => break,
        }
    }
    // a pass cap can stop before the size-0 swaps restore maximality
    for v in 0..n {
        if !in_s[v] && g.neighbors(v).iter().all(|&w| !in_s[w]) {
            in_s[v] = true;
        }
    }
    let set: Vec<usize> = (0..n).filter(|&v| in_s[v]).collect();
    stats.final_size = set.len();
    (set, stats)
}

fn find_swap(g: &SimpleGraph, in_s: &[bool], t: usize, examined: &mut usize) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.vertex_count();
    // solution neighbors of outside vertices with at most t of them
    let mut tight: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut free = Vec::new();
    for v in (0..n).filter(|&v| !in_s[v]) {
        let s_nbrs: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| in_s[w]).collect();
        if s_nbrs.is_empty() {
            free.push(v);
        }
        if s_nbrs.len() <= t {
            tight[v] = Some(s_nbrs);
        }
    }
    if let Some(&v) = free.first() {
        *examined += 1;
        return Some((Vec::new(), vec![v]));
    }
    let mut owners: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (v, nb) in tight.iter().enumerate() {
        if let Some(nb) = nb {
            for &w in nb {
                owners[w].push(v);
            }
        }
    }
    for a in 1..=t {
        let pool: Vec<usize> = (0..n)
            .filter(|&w| in_s[w] && owners[w].iter().any(|&v| tight[v].as_ref().is_some_and(|nb| nb.len() <= a)))
            .collect();
        if pool.len() < a {
            continue;
        }
        let mut idx: Vec<usize> = (0..a).collect();
        loop {
            let remove: Vec<usize> = idx.iter().map(|&i| pool[i]).collect();
            *examined += 1;
            let mut cands: Vec<usize> = remove
                .iter()
                .flat_map(|&w| owners[w].iter().copied())
                .filter(|&v| tight[v].as_ref().is_some_and(|nb| nb.iter().all(|x| remove.contains(x))))
                .collect();
            cands.sort_unstable();
            cands.dedup();
            if cands.len() > a {
                let mut chosen = Vec::with_capacity(a + 1);
                if first_independent(g, &cands, a + 1, &mut chosen) {
                    return Some((remove, chosen));
                }
            }
            if !next_combination(&mut idx, pool.len()) {
                break;
            }
        }
    }
    None
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn first_independent(g: &SimpleGraph, pool: &[usize], need: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == need {
        return true;
    }
    for (i, &c) in pool.iter().enumerate() {
        if pool.len() - i < need - chosen.len() {
            break;
        }
        if chosen.iter().all(|&x| !g.adjacent(x, c)) {
            chosen.push(c);
            if first_independent(g, &pool[i + 1..], need, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxResult {
    pub matching: RainbowMatching,
    pub stats: LocalSearchStats,
    pub swap_size: usize,
}

impl ApproxResult {
    /// Proven lower bound on `size / OPT`.
    pub fn floor_ratio(&self) -> (usize, usize) {
        (1, 3)
    }

    /// `OPT <= 3 * size`, from maximality in a `K_{1,4}`-free graph.
    pub fn opt_upper_bound(&self) -> usize {
        3 * self.matching.len()
    }

    pub fn to_report(&self) -> Report {
        let (p, q) = self.floor_ratio();
        let mut r = Report::new();
        r.push("method", "local-search");
        r.push("swap_size", self.swap_size);
        r.push("passes", self.stats.passes);
        r.push("swaps_applied", self.stats.swaps_applied);
        r.push("candidates_examined", self.stats.candidates_examined);
        r.push("final_size", self.stats.final_size);
        r.push("floor_bound", format!("{p}/{q}"));
        r.push("opt_upper_bound", self.opt_upper_bound());
        if self.swap_size >= 2 {
            r.push("observed_ratio", "1/2 on the test corpus");
        }
        r.push("certificate_of_optimality", false);
        r
    }
}

/// Local search on the color-line graph, lifted back to a rainbow matching.
pub fn approx_mrbm(g: &ColoredGraph, cfg: &LocalSearchConfig) -> ApproxResult {
    let cl = build_color_line(g);
    let (set, stats) = local_search_mis(cl.graph(), cfg);
    let matching = cl.lift_independent_set(&set).expect("local search keeps independence");
    ApproxResult { matching, stats, swap_size: cfg.swap_size }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn colored(n: usize, edges: &[(usize, usize, usize)]) -> ColoredGraph {
        ColoredGraph::from_colored_edges(n, edges.iter().copied()).unwrap()
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_maximal_is(&SimpleGraph::new(5, [])), vec![0, 1, 2, 3, 4]);
        let k4 = SimpleGraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(greedy_maximal_is(&k4), vec![0]);
    }

    #[test]
    fn zero_swap_is_greedy() {
        let g = SimpleGraph::new(6, [(0, 1), (0, 2), (3, 4)]);
        let (s, stats) = local_search_mis(&g, &LocalSearchConfig { swap_size: 0, max_passes: None });
        assert_eq!(s, greedy_maximal_is(&g));
        assert_eq!(stats.swaps_applied, 0);
    }

    #[test]
    fn one_two_swap_on_a_star() {
        // greedy takes the center 0; swapping it for leaves 1 and 2 improves
        let g = SimpleGraph::new(3, [(0, 1), (0, 2)]);
        let (s, stats) = local_search_mis(&g, &LocalSearchConfig { swap_size: 1, max_passes: None });
        assert_eq!(s, vec![1, 2]);
        assert_eq!(stats.swaps_applied, 1);
        assert!(g.is_maximal_independent(&s));
    }

    #[test]
    fn c6_reaches_optimum() {
        let g = colored(6, &[(0, 1, 1), (1, 2, 2), (2, 3, 3), (3, 4, 1), (4, 5, 2), (0, 5, 3)]);
        let r = approx_mrbm(&g, &LocalSearchConfig::default());
        assert_eq!(r.matching.len(), 3);
        let single = colored(2, &[(0, 1, 0)]);
        assert_eq!(approx_mrbm(&single, &LocalSearchConfig::default()).matching.edge_ids(), &[0]);
    }

    #[test]
    fn output_is_local_optimum() {
        let g = SimpleGraph::new(7, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (1, 6)]);
        let cfg = LocalSearchConfig::default();
        let (s, _) = local_search_mis(&g, &cfg);
        let (again, stats) = improve(&g, s.clone(), &cfg);
        assert_eq!(again, s);
        assert_eq!(stats.swaps_applied, 0);
    }

    #[test]
    fn pass_cap_still_returns_maximal_set() {
        let g = SimpleGraph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]);
        let (s, stats) = local_search_mis(&g, &LocalSearchConfig { swap_size: 1, max_passes: Some(0) });
        assert_eq!(s, vec![0]);
        assert_eq!(stats.passes, 0);
        assert!(g.is_maximal_independent(&s));
    }
}
