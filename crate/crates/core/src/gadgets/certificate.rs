//! Checking certificates: structural claims first, then the offset identity
//! with the oracles.

use std::collections::VecDeque;

use super::{Claim, GadgetCertificate, GadgetError, SourceEntity, SourceKind, StageInput, Target};
use crate::analysis::{analyze, StructureReport};
use crate::color_line::build_color_line;
use crate::exact::{oracle_mis, oracle_mrbm, BannedColorSet, SolveOptions};
use crate::graph::ColoredGraph;

/// Optima confirmed by [`verify_certificate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Verified {
    pub source_opt: usize,
    pub output_opt: usize,
}

fn fail(claim: &Claim, detail: impl Into<String>) -> Result<(), GadgetError> {
    Err(GadgetError::ClaimFailed { claim: claim.to_string(), detail: detail.into() })
}

fn is_bipartite(g: &ColoredGraph) -> bool {
    let mut side = vec![None; g.vertex_count()];
    for start in 0..g.vertex_count() {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in g.neighbors(v) {
                match side[w] {
                    None => {
                        side[w] = Some(!side[v].unwrap());
                        queue.push_back(w);
                    }
                    Some(s) if s == side[v].unwrap() => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// An induced `P4` as four vertices in path order, scanning each component.
fn induced_p4(g: &ColoredGraph, report: &StructureReport) -> Option<[usize; 4]> {
    let adj = |a: usize, b: usize| g.find_edge(a, b).is_some();
    for comp in &report.components {
        let vs = &comp.vertices;
        for (i, &a) in vs.iter().enumerate() {
            for (j, &b) in vs.iter().enumerate().skip(i + 1) {
                for (k, &c) in vs.iter().enumerate().skip(j + 1) {
                    for &d in &vs[k + 1..] {
                        let q = [a, b, c, d];
                        let deg: Vec<usize> =
                            q.iter().map(|&x| q.iter().filter(|&&y| y != x && adj(x, y)).count()).collect();
                        let edges: usize = deg.iter().sum::<usize>() / 2;
                        // an induced P4: three edges, degrees 1,1,2,2, connected
                        let mut sorted = deg.clone();
                        sorted.sort_unstable();
                        if edges == 3 && sorted == [1, 1, 2, 2] {
                            let end = q[deg.iter().position(|&d| d == 1).unwrap()];
                            let mut order = vec![end];
                            while order.len() < 4 {
                                let last = *order.last().unwrap();
                                let next = q.iter().copied().find(|&y| !order.contains(&y) && adj(last, y)).unwrap();
                                order.push(next);
                            }
                            return Some([order[0], order[1], order[2], order[3]]);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Checks one structural claim on `output`. `source` is needed only for the
/// color-line isomorphism claim.
pub fn check_claim(
    claim: &Claim,
    output: &ColoredGraph,
    report: &StructureReport,
    cert: &GadgetCertificate,
    source: &StageInput,
) -> Result<(), GadgetError> {
    let mult = output.color_multiplicities();
    match *claim {
        Claim::TwoRegular => {
            if let Some(v) = (0..output.vertex_count()).find(|&v| output.degree(v) != 2) {
                return fail(claim, format!("vertex {} has degree {}", v + 1, output.degree(v)));
            }
        }
        Claim::ProperlyColored => {
            if !report.properly_colored {
                return fail(claim, "two incident edges share a color");
            }
        }
        Claim::ColorsExactlyTwice => {
            if let Some(c) = (0..mult.len()).find(|&c| mult[c] != 2) {
                return fail(claim, format!("color {} used {} times", output.color_name(c), mult[c]));
            }
        }
        Claim::MaxColorMultiplicity(k) => {
            if report.max_color_multiplicity > k {
                return fail(claim, format!("a color is used {} times", report.max_color_multiplicity));
            }
        }
        Claim::ColorsAboveTwo(k) => {
            let found = mult.iter().filter(|&&m| m > 2).count();
            if found != k {
                return fail(claim, format!("{found} colors are used more than twice"));
            }
        }
        Claim::ClIsomorphicToSource => {
            let StageInput::Cubic(src) = source else {
                return fail(claim, "needs a cubic source");
            };
            let mut image = vec![usize::MAX; output.edge_count()];
            let mut hit = vec![false; src.vertex_count()];
            for (e, entity) in cert.back_map.iter().enumerate() {
                match *entity {
                    SourceEntity::Vertex(v) if v < src.vertex_count() && !hit[v] => {
                        hit[v] = true;
                        image[e] = v;
                    }
                    _ => return fail(claim, format!("edge {} does not map to a distinct source vertex", e + 1)),
                }
            }
            if output.edge_count() != src.vertex_count() {
                return fail(claim, "edge count differs from source vertex count");
            }
            let cl = build_color_line(output);
            for a in 0..output.edge_count() {
                for b in a + 1..output.edge_count() {
                    if cl.graph().adjacent(a, b) != src.graph().adjacent(image[a], image[b]) {
                        return fail(claim, format!("edges {} and {} disagree with the source", a + 1, b + 1));
                    }
                }
            }
        }
        Claim::Complete => {
            let n = output.vertex_count();
            if output.edge_count() != n * n.saturating_sub(1) / 2 {
                return fail(claim, format!("{} edges on {n} vertices", output.edge_count()));
            }
        }
        Claim::Path => {
            if !report.is_path {
                return fail(claim, "not a path");
            }
        }
        Claim::LinearForest => {
            if !report.is_linear_forest {
                return fail(claim, "not a linear forest");
            }
        }
        Claim::Tree => {
            if !report.is_tree {
                return fail(claim, "not a tree");
            }
        }
        Claim::Bipartite => {
            if !is_bipartite(output) {
                return fail(claim, "odd cycle present");
            }
        }
        Claim::InducedP4Free => {
            if let Some(q) = induced_p4(output, report) {
                let q: Vec<String> = q.iter().map(|v| (v + 1).to_string()).collect();
                return fail(claim, format!("induced P4 on {}", q.join(" ")));
            }
        }
        Claim::PathFree(l) => {
            if report.is_path_free(l) != Some(true) {
                return fail(claim, format!("P{l}-freeness not established"));
            }
        }
        Claim::EdgeCount(k) => {
            if output.edge_count() != k {
                return fail(claim, format!("{} edges", output.edge_count()));
            }
        }
        Claim::ComponentCount(k) => {
            if report.components.len() != k {
                return fail(claim, format!("{} components", report.components.len()));
            }
        }
    }
    Ok(())
}

fn expected_kind(source: &StageInput, target: Target) -> SourceKind {
    match (source, target) {
        (StageInput::Cubic(_), _) => SourceKind::CubicMis,
        (_, Target::BipP4 | Target::TreeP8) => SourceKind::LinearForestMrbm,
        _ => SourceKind::Pec2RegularMrbm,
    }
}

/// All checks except the optimum identity.
pub fn verify_structure(
    source: &StageInput,
    output: &ColoredGraph,
    cert: &GadgetCertificate,
) -> Result<(), GadgetError> {
    if expected_kind(source, cert.target) != cert.source_kind {
        return Err(GadgetError::KindMismatch { kind: cert.source_kind });
    }
    if cert.back_map.len() != output.edge_count() {
        return Err(GadgetError::BackMap(format!(
            "{} entries for {} output edges",
            cert.back_map.len(),
            output.edge_count()
        )));
    }
    let (vertices, edges) = match source {
        StageInput::Cubic(s) => (s.vertex_count(), s.edge_count()),
        StageInput::Colored(g) => (g.vertex_count(), g.edge_count()),
    };
    for (e, entity) in cert.back_map.iter().enumerate() {
        let ok = match *entity {
            SourceEntity::Vertex(v) => v < vertices,
            SourceEntity::Edge(x) => x < edges,
            SourceEntity::Fresh => true,
        };
        if !ok {
            return Err(GadgetError::BackMap(format!("edge {} maps to missing {entity}", e + 1)));
        }
    }
    // edges standing for input edges keep their color
    if let StageInput::Colored(g) = source {
        for (e, entity) in cert.back_map.iter().enumerate() {
            if let SourceEntity::Edge(x) = *entity {
                if output.color_name(output.edge(e).color) != g.color_name(g.edge(x).color) {
                    return Err(GadgetError::BackMap(format!(
                        "edge {} changed color from input edge {}",
                        e + 1,
                        x + 1
                    )));
                }
            }
        }
    }
    let report = analyze(output);
    for claim in &cert.claims {
        check_claim(claim, output, &report, cert, source)?;
    }
    Ok(())
}

/// Structural checks, then the identity `OPT(output) = OPT(source) + offset`
/// with both optima computed by the oracles.
pub fn verify_certificate(
    source: &StageInput,
    output: &ColoredGraph,
    cert: &GadgetCertificate,
    opts: &SolveOptions,
) -> Result<Verified, GadgetError> {
    verify_structure(source, output, cert)?;
    let none = BannedColorSet::new();
    let source_opt = match source {
        StageInput::Cubic(s) => oracle_mis(s.graph(), opts)?.len(),
        StageInput::Colored(g) => oracle_mrbm(g, &none, opts)?.size(),
    };
    let output_opt = oracle_mrbm(output, &none, opts)?.size();
    if output_opt as i64 != source_opt as i64 + cert.offset {
        return Err(GadgetError::Mismatch { source_opt, output_opt, offset: cert.offset });
    }
    Ok(Verified { source_opt, output_opt })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::build_from_named;

    #[test]
    fn k33_chain_verifies() {
        let opts = SolveOptions::default();
        let mut optima = Vec::new();
        for target in Target::ALL {
            let (input, g) = build_from_named("k33", target).unwrap();
            let v = verify_certificate(&input, &g.graph, &g.certificate, &opts).unwrap();
            optima.push((target.as_str(), v.source_opt, v.output_opt));
        }
        assert_eq!(
            optima,
            vec![
                ("pec", 3, 3),
                ("complete", 3, 4),
                ("path", 3, 6),
                ("lf5", 3, 9),
                ("bip4", 9, 9),
                ("lf6", 3, 6),
                ("tree-p8", 6, 7)
            ]
        );
    }

    #[test]
    fn tampering_is_detected() {
        let (input, g) = build_from_named("k33", Target::Path).unwrap();
        let next = g.graph.color_name(g.graph.edge(1).color).to_string();
        let tampered = g.graph.recolored(0, &next).unwrap();
        let r = verify_certificate(&input, &tampered, &g.certificate, &SolveOptions::default());
        assert!(r.is_err());
        let mut cert = g.certificate.clone();
        cert.offset += 1;
        assert!(matches!(
            verify_certificate(&input, &g.graph, &cert, &SolveOptions::default()),
            Err(GadgetError::Mismatch { .. })
        ));
    }

    #[test]
    fn c4_is_bipartite_and_induced_p4_free() {
        let c4 = ColoredGraph::from_colored_edges(4, [(0, 1, 0), (1, 2, 1), (2, 3, 2), (0, 3, 1)]).unwrap();
        assert!(is_bipartite(&c4));
        assert_eq!(induced_p4(&c4, &analyze(&c4)), None);
        let p4 = ColoredGraph::from_colored_edges(4, [(0, 1, 0), (1, 2, 1), (2, 3, 2)]).unwrap();
        assert_eq!(induced_p4(&p4, &analyze(&p4)), Some([0, 1, 2, 3]));
    }
}
