//! The stage constructions. All of them are deterministic: cycles are walked
//! from their lowest vertex toward its lower neighbor, and fresh vertices are
//! numbered in construction order.

use std::collections::HashSet;

use super::blossom::{matching_edges, maximum_matching};
use super::{Claim, CubicSource, Gadget, GadgetCertificate, GadgetError, SourceEntity, SourceKind, Target};
use crate::analysis::analyze;
use crate::graph::{ColoredGraph, EdgeId, VertexId};

/// Perfect matching of a cubic source as sorted vertex pairs.
pub fn find_perfect_matching(src: &CubicSource) -> Result<Vec<(usize, usize)>, GadgetError> {
    let pairs = matching_edges(&maximum_matching(src.graph()));
    let needed = src.vertex_count() / 2;
    if pairs.len() * 2 != src.vertex_count() {
        return Err(GadgetError::NotPerfect { size: pairs.len(), needed });
    }
    Ok(pairs)
}

/// Collects labeled edges and their back-map entries, then canonicalizes.
struct Builder {
    vertices: usize,
    edges: Vec<(VertexId, VertexId, String, SourceEntity)>,
}

impl Builder {
    fn new(vertices: usize) -> Self {
        Self { vertices, edges: Vec::new() }
    }

    fn push(&mut self, a: VertexId, b: VertexId, color: &str, entity: SourceEntity) {
        self.edges.push((a, b, color.to_string(), entity));
    }

    fn build(self) -> (ColoredGraph, Vec<SourceEntity>) {
        let g =
            ColoredGraph::from_labeled_edges(self.vertices, self.edges.iter().map(|(a, b, c, _)| (*a, *b, c.as_str())))
                .expect("generators emit simple graphs");
        let mut map = vec![SourceEntity::Fresh; g.edge_count()];
        for (a, b, _, entity) in &self.edges {
            map[g.find_edge(*a, *b).expect("edge was added")] = *entity;
        }
        (g, map)
    }
}

/// Color labels guaranteed not to occur in `g`.
struct FreshLabels {
    taken: HashSet<String>,
}

impl FreshLabels {
    fn new(g: Option<&ColoredGraph>) -> Self {
        Self { taken: g.map(|g| g.color_names().iter().cloned().collect()).unwrap_or_default() }
    }

    fn get(&mut self, base: String) -> String {
        let mut label = base;
        while self.taken.contains(&label) {
            label.push('\'');
        }
        self.taken.insert(label.clone());
        label
    }
}

/// Cycles of a 2-regular graph given by a neighbor function: each cycle starts
/// at its lowest vertex and steps to the lower of its two neighbors first.
fn cycles_of(n: usize, nbrs: impl Fn(usize) -> [usize; 2]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let [a, b] = nbrs(start);
        let (mut prev, mut cur) = (start, a.min(b));
        while cur != start {
            seen[cur] = true;
            cycle.push(cur);
            let [p, q] = nbrs(cur);
            let next = if p == prev { q } else { p };
            prev = cur;
            cur = next;
        }
        out.push(cycle);
    }
    out
}

/// A cycle's vertices and the edge id of each step.
type Cycle = (Vec<VertexId>, Vec<EdgeId>);

/// Cycles of a colored 2-regular graph, with the edge id of each step
/// (`edges[i]` joins `cycle[i]` and `cycle[i + 1]` cyclically).
fn colored_cycles(h: &ColoredGraph) -> Result<Vec<Cycle>, GadgetError> {
    if let Some(v) = (0..h.vertex_count()).find(|&v| h.degree(v) != 2) {
        return Err(GadgetError::Precondition(format!(
            "input must be a disjoint union of cycles; vertex {} has degree {}",
            v + 1,
            h.degree(v)
        )));
    }
    let cycles = cycles_of(h.vertex_count(), |v| {
        let nb = h.neighbors(v);
        [nb[0].0, nb[1].0]
    });
    Ok(cycles
        .into_iter()
        .map(|cycle| {
            let r = cycle.len();
            let edges = (0..r).map(|i| h.find_edge(cycle[i], cycle[(i + 1) % r]).expect("cycle step")).collect();
            (cycle, edges)
        })
        .collect())
}

fn certificate(
    target: Target,
    kind: SourceKind,
    offset: usize,
    formula: &str,
    claims: Vec<Claim>,
    back_map: Vec<SourceEntity>,
) -> GadgetCertificate {
    GadgetCertificate {
        source: "input".to_string(),
        target,
        source_kind: kind,
        offset: offset as i64,
        formula: formula.to_string(),
        c: None,
        o: None,
        claims,
        back_map,
    }
}

/// Properly colored 2-regular `H` with `CL(H) = G`.
///
/// With `M` a perfect matching of `G`, `G - M` is a union of cycles. Each
/// cycle `g_0 .. g_{r-1}` becomes a cycle of `H` whose `i`-th edge stands for
/// `g_i`; the two edges standing for the ends of an `M` edge share a color.
pub fn to_2regular_pec(src: &CubicSource) -> Result<Gadget, GadgetError> {
    let n = src.vertex_count();
    let matching = find_perfect_matching(src)?;
    let mut mate = vec![0; n];
    let mut color_of = vec![String::new(); n];
    for (k, &(a, b)) in matching.iter().enumerate() {
        mate[a] = b;
        mate[b] = a;
        color_of[a] = format!("m{}", k + 1);
        color_of[b] = format!("m{}", k + 1);
    }
    let g = src.graph();
    let cycles = cycles_of(n, |v| {
        let rest: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w != mate[v]).collect();
        [rest[0], rest[1]]
    });
    let mut b = Builder::new(n);
    let mut base = 0;
    for cycle in &cycles {
        let r = cycle.len();
        for (i, &gv) in cycle.iter().enumerate() {
            b.push(base + i, base + (i + 1) % r, &color_of[gv], SourceEntity::Vertex(gv));
        }
        base += r;
    }
    let (graph, back_map) = b.build();
    let claims = vec![
        Claim::TwoRegular,
        Claim::ProperlyColored,
        Claim::ColorsExactlyTwice,
        Claim::ClIsomorphicToSource,
        Claim::EdgeCount(n),
    ];
    let mut cert = certificate(Target::Pec, SourceKind::CubicMis, 0, "MRBM(H) = MIS(G)", claims, back_map);
    cert.c = Some(cycles.len());
    cert.o = Some(cycles.iter().filter(|c| c.len() % 2 == 1).count());
    Ok(Gadget { graph, certificate: cert })
}

/// Two new vertices and every missing edge, all in one fresh color.
pub fn to_complete(h: &ColoredGraph) -> Result<Gadget, GadgetError> {
    let n = h.vertex_count() + 2;
    let fill = FreshLabels::new(Some(h)).get("fill".into());
    let mut b = Builder::new(n);
    for (e, edge) in h.edges().iter().enumerate() {
        b.push(edge.u, edge.v, h.color_name(edge.color), SourceEntity::Edge(e));
    }
    for u in 0..n {
        for v in u + 1..n {
            if v >= h.vertex_count() || h.find_edge(u, v).is_none() {
                b.push(u, v, &fill, SourceEntity::Fresh);
            }
        }
    }
    let (graph, back_map) = b.build();
    let mut claims = vec![Claim::Complete, Claim::EdgeCount(n * (n - 1) / 2)];
    if n * (n - 1) / 2 - h.edge_count() > 2 && h.color_multiplicities().iter().all(|&k| k <= 2) {
        claims.push(Claim::ColorsAboveTwo(1));
    }
    Ok(Gadget {
        graph,
        certificate: certificate(
            Target::Complete,
            SourceKind::Pec2RegularMrbm,
            1,
            "MRBM(H') = MRBM(H) + 1",
            claims,
            back_map,
        ),
    })
}

/// One properly colored path: every cycle cut at its lowest vertex `v` with a
/// `v`-colored pendant at both ends, consecutive cycles joined by `join`
/// edges, and a `join, tail, join, tail, join` tail at the far end.
pub fn to_path(h: &ColoredGraph) -> Result<Gadget, GadgetError> {
    let cycles = colored_cycles(h)?;
    if cycles.is_empty() {
        return Err(GadgetError::Precondition("input has no cycle".into()));
    }
    let c = cycles.len();
    let mut fresh = FreshLabels::new(Some(h));
    let join = fresh.get("join".into());
    let tail = fresh.get("tail".into());
    let total = h.edge_count() + 3 * c + 4;
    let mut b = Builder::new(total + 1);
    let mut p = 0;
    let mut step = |b: &mut Builder, color: &str, entity: SourceEntity| {
        b.push(p, p + 1, color, entity);
        p += 1;
    };
    for (j, (cycle, edges)) in cycles.iter().enumerate() {
        if j > 0 {
            step(&mut b, &join, SourceEntity::Fresh);
        }
        let v = cycle[0];
        let cut = fresh.get(format!("cut{}", v + 1));
        step(&mut b, &cut, SourceEntity::Vertex(v));
        for &e in edges {
            step(&mut b, h.color_name(h.edge(e).color), SourceEntity::Edge(e));
        }
        step(&mut b, &cut, SourceEntity::Vertex(v));
    }
    for color in [&join, &tail, &join, &tail, &join] {
        step(&mut b, color, SourceEntity::Fresh);
    }
    let (graph, back_map) = b.build();
    let mut claims = vec![Claim::Path, Claim::EdgeCount(total)];
    if analyze(h).properly_colored {
        claims.insert(1, Claim::ProperlyColored);
    }
    let mut cert =
        certificate(Target::Path, SourceKind::Pec2RegularMrbm, c + 2, "MRBM(P) = MRBM(H) + c + 2", claims, back_map);
    cert.c = Some(c);
    Ok(Gadget { graph, certificate: cert })
}

/// One `P4` per edge `vw` of `H`, colored `v`, the color of `vw`, then `w`.
pub fn to_lf_p5(h: &ColoredGraph) -> Result<Gadget, GadgetError> {
    colored_cycles(h)?;
    let mut fresh = FreshLabels::new(Some(h));
    let names: Vec<String> = (0..h.vertex_count()).map(|v| fresh.get(format!("v{}", v + 1))).collect();
    let mut b = Builder::new(4 * h.edge_count());
    for (e, edge) in h.edges().iter().enumerate() {
        let base = 4 * e;
        b.push(base, base + 1, &names[edge.u], SourceEntity::Vertex(edge.u));
        b.push(base + 1, base + 2, h.color_name(edge.color), SourceEntity::Edge(e));
        b.push(base + 2, base + 3, &names[edge.v], SourceEntity::Vertex(edge.v));
    }
    let (graph, back_map) = b.build();
    let mut claims = vec![Claim::LinearForest, Claim::PathFree(5), Claim::ComponentCount(h.edge_count())];
    claims.push(Claim::ProperlyColored);
    if h.color_multiplicities().iter().all(|&k| k <= 2) {
        claims.push(Claim::MaxColorMultiplicity(2));
    }
    Ok(Gadget {
        graph,
        certificate: certificate(
            Target::LfP5,
            SourceKind::Pec2RegularMrbm,
            h.vertex_count(),
            "MRBM(L) = MRBM(H) + |V(H)|",
            claims,
            back_map,
        ),
    })
}

/// Closes every `P4` into a `C4`; the new edge repeats the middle color.
pub fn to_bip_p4(l: &ColoredGraph) -> Result<Gadget, GadgetError> {
    let report = analyze(l);
    let mut b = Builder::new(l.vertex_count());
    for (e, edge) in l.edges().iter().enumerate() {
        b.push(edge.u, edge.v, l.color_name(edge.color), SourceEntity::Edge(e));
    }
    let mut components = 0;
    for comp in report.nontrivial_components() {
        let path =
            comp.longest_path.as_ref().filter(|p| p.len() == 4 && comp.vertices.len() == 4).ok_or_else(|| {
                GadgetError::Precondition(format!("component of vertex {} is not a P4", comp.vertices[0] + 1))
            })?;
        let middle = l.find_edge(path[1], path[2]).expect("path step");
        b.push(path[0], path[3], l.color_name(l.edge(middle).color), SourceEntity::Fresh);
        components += 1;
    }
    let (graph, back_map) = b.build();
    let mut claims = vec![Claim::Bipartite, Claim::InducedP4Free, Claim::ComponentCount(components)];
    if report.properly_colored {
        claims.push(Claim::ProperlyColored);
    }
    if report.max_color_multiplicity <= 2 {
        claims.push(Claim::MaxColorMultiplicity(4));
    }
    Ok(Gadget {
        graph,
        certificate: certificate(Target::BipP4, SourceKind::LinearForestMrbm, 0, "MRBM(B) = MRBM(L)", claims, back_map),
    })
}

/// Cuts every cycle at every other vertex, starting from its lowest one; each
/// cut vertex `v` puts a `v`-colored pendant on both path ends it creates. An
/// odd cycle of length `r` yields `(r - 1) / 2` paths with four edges and one
/// with three.
pub fn to_lf_p6(h: &ColoredGraph) -> Result<Gadget, GadgetError> {
    let cycles = colored_cycles(h)?;
    let odd = cycles.iter().filter(|(c, _)| c.len() % 2 == 1).count();
    let components = (h.edge_count() + odd) / 2;
    let mut fresh = FreshLabels::new(Some(h));
    let mut b = Builder::new(h.edge_count() + 3 * components);
    let mut p = 0;
    for (cycle, edges) in &cycles {
        let r = cycle.len();
        let cuts: Vec<usize> = (0..r).step_by(2).filter(|&i| r % 2 == 1 || i + 1 < r).collect();
        let labels: Vec<String> = cuts.iter().map(|&i| fresh.get(format!("cut{}", cycle[i] + 1))).collect();
        for (k, &from) in cuts.iter().enumerate() {
            let to = cuts.get(k + 1).copied().unwrap_or(r);
            let next_label = &labels[(k + 1) % cuts.len()];
            b.push(p, p + 1, &labels[k], SourceEntity::Vertex(cycle[from]));
            p += 1;
            for &e in &edges[from..to] {
                b.push(p, p + 1, h.color_name(h.edge(e).color), SourceEntity::Edge(e));
                p += 1;
            }
            b.push(p, p + 1, next_label, SourceEntity::Vertex(cycle[to % r]));
            p += 2;
        }
    }
    debug_assert_eq!(p, h.edge_count() + 3 * components);
    let (graph, back_map) = b.build();
    let mut claims = vec![Claim::LinearForest, Claim::PathFree(6), Claim::ComponentCount(components)];
    if analyze(h).properly_colored {
        claims.push(Claim::ProperlyColored);
    }
    if h.color_multiplicities().iter().all(|&k| k <= 2) {
        claims.push(Claim::MaxColorMultiplicity(2));
    }
    let mut cert = certificate(
        Target::LfP6,
        SourceKind::Pec2RegularMrbm,
        components,
        "MRBM(L) = MRBM(H) + (|E(H)| + o) / 2",
        claims,
        back_map,
    );
    cert.c = Some(cycles.len());
    cert.o = Some(odd);
    Ok(Gadget { graph, certificate: cert })
}

/// A hub joined to the central vertex of every path, plus one pendant at the
/// hub; each added edge gets its own fresh color.
pub fn to_tree_p8(l: &ColoredGraph) -> Result<Gadget, GadgetError> {
    let report = analyze(l);
    if !report.is_linear_forest {
        return Err(GadgetError::Precondition("input is not a linear forest".into()));
    }
    if let Some(c) = report.components.iter().find(|c| c.vertices.len() >= 6) {
        return Err(GadgetError::Precondition(format!(
            "component of vertex {} has {} vertices; the tree would contain a P8",
            c.vertices[0] + 1,
            c.vertices.len()
        )));
    }
    let hub = l.vertex_count();
    let mut b = Builder::new(hub + 2);
    for (e, edge) in l.edges().iter().enumerate() {
        b.push(edge.u, edge.v, l.color_name(edge.color), SourceEntity::Edge(e));
    }
    let mut fresh = FreshLabels::new(Some(l));
    for (j, comp) in report.components.iter().enumerate() {
        let path = comp.longest_path.as_ref().expect("forest components carry a path");
        let len = path.len();
        // eccentricity-minimizing positions: one middle, or two for even length
        let center = if len % 2 == 1 { path[len / 2] } else { path[len / 2 - 1].min(path[len / 2]) };
        b.push(center, hub, &fresh.get(format!("hub{}", j + 1)), SourceEntity::Fresh);
    }
    b.push(hub, hub + 1, &fresh.get("pendant".into()), SourceEntity::Fresh);
    let (graph, back_map) = b.build();
    let mut claims = vec![Claim::Tree, Claim::PathFree(8)];
    if report.properly_colored {
        claims.push(Claim::ProperlyColored);
    }
    claims.push(Claim::MaxColorMultiplicity(report.max_color_multiplicity.max(1)));
    Ok(Gadget {
        graph,
        certificate: certificate(
            Target::TreeP8,
            SourceKind::LinearForestMrbm,
            1,
            "MRBM(T) = MRBM(L) + 1",
            claims,
            back_map,
        ),
    })
}
