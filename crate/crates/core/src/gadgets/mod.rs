//! Hardness gadgets: instance transformations from cubic independent set to
//! rainbow matching on restricted classes, each with a certificate of the form
//! `OPT(output) = OPT(input) + offset`.
//!
//! The stages chain as `cubic -> pec`, then `pec -> complete | path | lf5 |
//! lf6`, then `lf5 -> bip4` and `lf6 -> tree-p8`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exact::SolveError;
use crate::graph::{ColoredGraph, EdgeId};
use crate::report::Report;

mod blossom;
mod certificate;
mod generators;
mod sources;

pub use blossom::{matching_edges, maximum_matching};
pub use certificate::{check_claim, verify_certificate, verify_structure, Verified};
pub use generators::{
    find_perfect_matching, to_2regular_pec, to_bip_p4, to_complete, to_lf_p5, to_lf_p6, to_path, to_tree_p8,
};
pub use sources::{named_source, validate_cubic_source, CubicSource, CubicViolation, CATALOG};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GadgetError {
    #[error("unknown source graph {0:?}")]
    UnknownSource(String),
    #[error("unknown target {0:?}")]
    UnknownTarget(String),
    #[error("invalid cubic source: {}", join(.0))]
    InvalidSource(Vec<CubicViolation>),
    #[error("maximum matching has {size} edges, a perfect one needs {needed}")]
    NotPerfect { size: usize, needed: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("claim {claim} failed: {detail}")]
    ClaimFailed { claim: String, detail: String },
    #[error("back map: {0}")]
    BackMap(String),
    #[error("offset mismatch: OPT(source) = {source_opt}, OPT(output) = {output_opt}, offset {offset}")]
    Mismatch { source_opt: usize, output_opt: usize, offset: i64 },
    #[error("certificate kind {kind} does not match the supplied source")]
    KindMismatch { kind: SourceKind },
    #[error("certificate line {line}: {reason}")]
    Certificate { line: usize, reason: String },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

fn join(v: &[CubicViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

/// What the certificate's offset is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceKind {
    CubicMis,
    Pec2RegularMrbm,
    LinearForestMrbm,
}

impl SourceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SourceKind::CubicMis => "cubic-MIS",
            SourceKind::Pec2RegularMrbm => "pec-2regular-MRBM",
            SourceKind::LinearForestMrbm => "linear-forest-MRBM",
        }
    }
}

impl fmt::Display for SourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SourceKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        [SourceKind::CubicMis, SourceKind::Pec2RegularMrbm, SourceKind::LinearForestMrbm]
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown source kind {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Target {
    Pec,
    Complete,
    Path,
    LfP5,
    BipP4,
    LfP6,
    TreeP8,
}

impl Target {
    pub const ALL: [Target; 7] =
        [Target::Pec, Target::Complete, Target::Path, Target::LfP5, Target::BipP4, Target::LfP6, Target::TreeP8];

    pub fn as_str(self) -> &'static str {
        match self {
            Target::Pec => "pec",
            Target::Complete => "complete",
            Target::Path => "path",
            Target::LfP5 => "lf5",
            Target::BipP4 => "bip4",
            Target::LfP6 => "lf6",
            Target::TreeP8 => "tree-p8",
        }
    }

    /// The stage whose output this target consumes; `None` for the cubic source.
    pub fn input_stage(self) -> Option<Target> {
        match self {
            Target::Pec => None,
            Target::Complete | Target::Path | Target::LfP5 | Target::LfP6 => Some(Target::Pec),
            Target::BipP4 => Some(Target::LfP5),
            Target::TreeP8 => Some(Target::LfP6),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Target {
    type Err = GadgetError;
    fn from_str(s: &str) -> Result<Self, GadgetError> {
        Target::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| GadgetError::UnknownTarget(s.to_string()))
    }
}

/// What an output edge stands for in the stage input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SourceEntity {
    Vertex(usize),
    Edge(EdgeId),
    Fresh,
}

impl fmt::Display for SourceEntity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceEntity::Vertex(v) => write!(f, "vertex {}", v + 1),
            SourceEntity::Edge(e) => write!(f, "edge {}", e + 1),
            SourceEntity::Fresh => f.write_str("fresh"),
        }
    }
}

impl FromStr for SourceEntity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let one_based = |t: &str| t.parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1);
        match s.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["fresh"] => Ok(SourceEntity::Fresh),
            ["vertex", x] => one_based(x).map(SourceEntity::Vertex).ok_or_else(|| format!("bad vertex {x:?}")),
            ["edge", x] => one_based(x).map(SourceEntity::Edge).ok_or_else(|| format!("bad edge {x:?}")),
            _ => Err(format!("bad entity {s:?}")),
        }
    }
}

/// A structural property of the output recorded in its certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    TwoRegular,
    ProperlyColored,
    ColorsExactlyTwice,
    MaxColorMultiplicity(usize),
    /// Number of colors used more than twice.
    ColorsAboveTwo(usize),
    ClIsomorphicToSource,
    Complete,
    Path,
    LinearForest,
    Tree,
    Bipartite,
    InducedP4Free,
    /// No `P_l` subgraph.
    PathFree(usize),
    EdgeCount(usize),
    ComponentCount(usize),
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::TwoRegular => f.write_str("2-regular"),
            Claim::ProperlyColored => f.write_str("properly-colored"),
            Claim::ColorsExactlyTwice => f.write_str("colors-exactly-twice"),
            Claim::MaxColorMultiplicity(k) => write!(f, "max-color-multiplicity {k}"),
            Claim::ColorsAboveTwo(k) => write!(f, "colors-above-two {k}"),
            Claim::ClIsomorphicToSource => f.write_str("cl-isomorphic-to-source"),
            Claim::Complete => f.write_str("complete"),
            Claim::Path => f.write_str("path"),
            Claim::LinearForest => f.write_str("linear-forest"),
            Claim::Tree => f.write_str("tree"),
            Claim::Bipartite => f.write_str("bipartite"),
            Claim::InducedP4Free => f.write_str("induced-p4-free"),
            Claim::PathFree(l) => write!(f, "p-free {l}"),
            Claim::EdgeCount(k) => write!(f, "edges {k}"),
            Claim::ComponentCount(k) => write!(f, "components {k}"),
        }
    }
}

impl FromStr for Claim {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let num = |t: &str| t.parse::<usize>().map_err(|_| format!("bad number in claim {s:?}"));
        Ok(match words.as_slice() {
            ["2-regular"] => Claim::TwoRegular,
            ["properly-colored"] => Claim::ProperlyColored,
            ["colors-exactly-twice"] => Claim::ColorsExactlyTwice,
            ["max-color-multiplicity", k] => Claim::MaxColorMultiplicity(num(k)?),
            ["colors-above-two", k] => Claim::ColorsAboveTwo(num(k)?),
            ["cl-isomorphic-to-source"] => Claim::ClIsomorphicToSource,
            ["complete"] => Claim::Complete,
            ["path"] => Claim::Path,
            ["linear-forest"] => Claim::LinearForest,
            ["tree"] => Claim::Tree,
            ["bipartite"] => Claim::Bipartite,
            ["induced-p4-free"] => Claim::InducedP4Free,
            ["p-free", l] => Claim::PathFree(num(l)?),
            ["edges", k] => Claim::EdgeCount(num(k)?),
            ["components", k] => Claim::ComponentCount(num(k)?),
            _ => return Err(format!("unknown claim {s:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetCertificate {
    /// Catalog chain such as `k33:pec:lf6`, or a file path.
    pub source: String,
    pub target: Target,
    pub source_kind: SourceKind,
    pub offset: i64,
    pub formula: String,
    /// Cycle count of the 2-regular input, where it enters the construction.
    pub c: Option<usize>,
    /// Odd cycle count, likewise.
    pub o: Option<usize>,
    pub claims: Vec<Claim>,
    /// Indexed by output edge id.
    pub back_map: Vec<SourceEntity>,
}

impl GadgetCertificate {
    pub fn to_report(&self) -> Report {
        let mut r = Report::new();
        r.push("source", &self.source);
        r.push("kind", self.source_kind);
        r.push("target", self.target);
        r.push("offset", self.offset);
        r.push("formula", &self.formula);
        if let Some(c) = self.c {
            r.push("c", c);
        }
        if let Some(o) = self.o {
            r.push("o", o);
        }
        for claim in &self.claims {
            r.push("claim", claim);
        }
        for (e, entity) in self.back_map.iter().enumerate() {
            r.push(format!("map {}", e + 1), entity);
        }
        r
    }

    pub fn parse(text: &str) -> Result<Self, GadgetError> {
        let bad = |line: usize, reason: String| GadgetError::Certificate { line, reason };
        let report = Report::parse(text).map_err(|line| bad(line, "expected `key: value`".into()))?;
        let (mut source, mut target, mut kind, mut offset, mut formula) = (None, None, None, None, None);
        let (mut c, mut o) = (None, None);
        let mut claims = Vec::new();
        let mut back_map = Vec::new();
        for (i, (k, v)) in report.entries().iter().enumerate() {
            let line = i + 1;
            let num = |v: &str| v.parse::<usize>().map_err(|_| bad(line, format!("bad number {v:?}")));
            match k.as_str() {
                "source" => source = Some(v.clone()),
                "kind" => kind = Some(v.parse::<SourceKind>().map_err(|e| bad(line, e))?),
                "target" => target = Some(v.parse::<Target>().map_err(|e| bad(line, e.to_string()))?),
                "offset" => offset = Some(v.parse::<i64>().map_err(|_| bad(line, format!("bad offset {v:?}")))?),
                "formula" => formula = Some(v.clone()),
                "c" => c = Some(num(v)?),
                "o" => o = Some(num(v)?),
                "claim" => claims.push(v.parse::<Claim>().map_err(|e| bad(line, e))?),
                _ => {
                    let Some(idx) = k.strip_prefix("map ") else {
                        return Err(bad(line, format!("unknown key {k:?}")));
                    };
                    if num(idx)? != back_map.len() + 1 {
                        return Err(bad(line, "map lines must list edges 1, 2, ... in order".into()));
                    }
                    back_map.push(v.parse::<SourceEntity>().map_err(|e| bad(line, e))?);
                }
            }
        }
        let missing = |key: &str| bad(0, format!("missing `{key}`"));
        Ok(Self {
            source: source.ok_or_else(|| missing("source"))?,
            target: target.ok_or_else(|| missing("target"))?,
            source_kind: kind.ok_or_else(|| missing("kind"))?,
            offset: offset.ok_or_else(|| missing("offset"))?,
            formula: formula.ok_or_else(|| missing("formula"))?,
            c,
            o,
            claims,
            back_map,
        })
    }
}

/// Input of a gadget stage.
#[derive(Debug, Clone)]
pub enum StageInput {
    Cubic(CubicSource),
    Colored(ColoredGraph),
}

#[derive(Debug, Clone)]
pub struct Gadget {
    pub graph: ColoredGraph,
    pub certificate: GadgetCertificate,
}

/// Applies one stage to its input.
pub fn apply_stage(target: Target, input: &StageInput) -> Result<Gadget, GadgetError> {
    match (target, input) {
        (Target::Pec, StageInput::Cubic(s)) => to_2regular_pec(s),
        (Target::Pec, StageInput::Colored(_)) => Err(GadgetError::Precondition("pec needs a cubic source".into())),
        (_, StageInput::Cubic(_)) => Err(GadgetError::Precondition(format!("{target} needs a colored input"))),
        (Target::Complete, StageInput::Colored(h)) => to_complete(h),
        (Target::Path, StageInput::Colored(h)) => to_path(h),
        (Target::LfP5, StageInput::Colored(h)) => to_lf_p5(h),
        (Target::BipP4, StageInput::Colored(l)) => to_bip_p4(l),
        (Target::LfP6, StageInput::Colored(h)) => to_lf_p6(h),
        (Target::TreeP8, StageInput::Colored(l)) => to_tree_p8(l),
    }
}

/// Builds `target` from a catalog graph through the stage chain. Returns the
/// stage input along with the output; the certificate names the chain.
pub fn build_from_named(name: &str, target: Target) -> Result<(StageInput, Gadget), GadgetError> {
    let mut input = StageInput::Cubic(named_source(name)?);
    let mut label = name.to_string();
    for stage in stage_path(target) {
        let mut g = apply_stage(stage, &input)?;
        g.certificate.source = label.clone();
        if stage == target {
            return Ok((input, g));
        }
        label = format!("{label}:{stage}");
        input = StageInput::Colored(g.graph);
    }
    unreachable!("stage path ends at the target")
}

/// Stages from the cubic source up to and including `target`.
pub fn stage_path(target: Target) -> Vec<Target> {
    let mut path = vec![target];
    while let Some(prev) = path.last().and_then(|t| t.input_stage()) {
        path.push(prev);
    }
    path.reverse();
    path
}

/// Rebuilds the stage input named by a catalog chain such as `k33:pec:lf5`.
/// Returns `None` when `label` is not a chain (it is then a file path).
pub fn resolve_chain(label: &str) -> Option<Result<StageInput, GadgetError>> {
    let mut parts = label.split(':');
    let name = parts.next()?;
    if !CATALOG.contains(&name) {
        return None;
    }
    let stages: Vec<Target> = match parts.map(str::parse).collect::<Result<_, _>>() {
        Ok(s) => s,
        Err(_) => return None,
    };
    Some((|| {
        let mut input = StageInput::Cubic(named_source(name)?);
        let mut expected = None;
        for stage in stages {
            if stage.input_stage() != expected {
                return Err(GadgetError::Precondition(format!("{stage} cannot follow {expected:?} in {label}")));
            }
            input = StageInput::Colored(apply_stage(stage, &input)?.graph);
            expected = Some(stage);
        }
        Ok(input)
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn certificate_round_trip() {
        let (_, g) = build_from_named("k33", Target::TreeP8).unwrap();
        let text = g.certificate.to_report().to_string();
        assert!(text.starts_with("source: k33:pec:lf6\nkind: linear-forest-MRBM\ntarget: tree-p8\noffset: 1\n"));
        assert_eq!(GadgetCertificate::parse(&text).unwrap(), g.certificate);
        assert!(GadgetCertificate::parse("source: x\n").is_err());
    }

    #[test]
    fn chains_resolve() {
        assert_eq!(stage_path(Target::BipP4), vec![Target::Pec, Target::LfP5, Target::BipP4]);
        let Some(Ok(StageInput::Colored(l))) = resolve_chain("k33:pec:lf5") else { panic!() };
        assert_eq!(l.edge_count(), 18);
        assert!(matches!(resolve_chain("k33"), Some(Ok(StageInput::Cubic(_)))));
        assert!(resolve_chain("some/file.cg").is_none());
        assert!(matches!(resolve_chain("k33:lf5"), Some(Err(_))));
    }

    #[test]
    fn entity_and_claim_syntax() {
        for e in [SourceEntity::Vertex(0), SourceEntity::Edge(4), SourceEntity::Fresh] {
            assert_eq!(e.to_string().parse::<SourceEntity>().unwrap(), e);
        }
        for c in [Claim::PathFree(8), Claim::ColorsAboveTwo(1), Claim::ClIsomorphicToSource] {
            assert_eq!(c.to_string().parse::<Claim>().unwrap(), c);
        }
    }
}
