//! Edge-colored simple graphs, the text instance format and solution checking.
//!
//! Vertices are stored 0-based; the text formats are 1-based. Edges are kept
//! in canonical order, sorted by `(min endpoint, max endpoint)`, and an edge id
//! is the position of the edge in that order. Color labels are interned into
//! dense ids by first occurrence along the canonical edge order, so parsing a
//! serialized graph reproduces it exactly.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;
pub type ColorId = usize;

/// One edge with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub color: ColorId,
}

impl Edge {
    pub fn touches(&self, x: VertexId) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.u == other.u || self.u == other.v || self.v == other.u || self.v == other.v
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: VertexId },
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: VertexId, v: VertexId },
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(EdgeId),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("missing header line `p cgraph <n> <m>`")]
    MissingHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("malformed edge line: {0}")]
    MalformedEdge(String),
    #[error("self-loop at line")]
    SelfLoop,
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {u}-{v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("header announces {expected} edges, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("unknown line type `{0}`")]
    UnknownLine(String),
    #[error("malformed solution: {0}")]
    MalformedSolution(String),
    #[error("edge {u}-{v} with color `{color}` is not in the instance")]
    UnknownEdge { u: usize, v: usize, color: String },
    #[error("input is not valid UTF-8")]
    Encoding,
}

impl ParseError {
    fn new(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }
}

/// A simple undirected graph with a color on every edge.
#[derive(Debug, Clone)]
pub struct ColoredGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    color_names: Vec<String>,
    // (neighbor, edge id), sorted by neighbor
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

impl PartialEq for ColoredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges && self.color_names == other.color_names
    }
}

impl Eq for ColoredGraph {}

impl ColoredGraph {
    /// Builds a graph from labelled edges given in any order and orientation.
    pub fn from_labeled_edges<S: AsRef<str>>(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, S)>,
    ) -> Result<Self, GraphError> {
        let mut raw: Vec<(VertexId, VertexId, String)> = Vec::new();
        for (a, b, label) in edges {
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            for x in [a, b] {
                if x >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n: vertex_count });
                }
            }
            raw.push((a.min(b), a.max(b), label.as_ref().to_string()));
        }
        raw.sort_by_key(|x| (x.0, x.1));
        if let Some(w) = raw.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(GraphError::DuplicateEdge { u: w[0].0, v: w[0].1 });
        }
        let mut ids: HashMap<String, ColorId> = HashMap::new();
        let mut color_names = Vec::new();
        let mut out = Vec::with_capacity(raw.len());
        for (u, v, label) in raw {
            let color = *ids.entry(label.clone()).or_insert_with(|| {
                color_names.push(label);
                color_names.len() - 1
            });
            out.push(Edge { u, v, color });
        }
        Ok(Self::assemble(vertex_count, out, color_names))
    }

    /// Builds a graph from numeric colors, labelled by their decimal value.
    pub fn from_colored_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId, usize)>,
    ) -> Result<Self, GraphError> {
        Self::from_labeled_edges(vertex_count, edges.into_iter().map(|(a, b, c)| (a, b, c.to_string())))
    }

    fn assemble(vertex_count: usize, edges: Vec<Edge>, color_names: Vec<String>) -> Self {
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (id, e) in edges.iter().enumerate() {
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self { vertex_count, edges, color_names, adjacency }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn color_count(&self) -> usize {
        self.color_names.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn color_name(&self, color: ColorId) -> &str {
        &self.color_names[color]
    }

    pub fn color_names(&self) -> &[String] {
        &self.color_names
    }

    pub fn color_id(&self, label: &str) -> Option<ColorId> {
        self.color_names.iter().position(|c| c == label)
    }

    /// `(neighbor, edge id)` pairs sorted by neighbor.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn find_edge(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        if a >= self.vertex_count || b >= self.vertex_count {
            return None;
        }
        self.adjacency[a].binary_search_by_key(&b, |&(w, _)| w).ok().map(|i| self.adjacency[a][i].1)
    }

    /// Number of edges carrying each color id.
    pub fn color_multiplicities(&self) -> Vec<usize> {
        let mut counts = vec![0; self.color_count()];
        for e in &self.edges {
            counts[e.color] += 1;
        }
        counts
    }

    /// The subgraph on the same vertex set and color table keeping the edges
    /// for which `keep` holds, together with the original id of every kept edge.
    /// Kept edges retain their relative order, so ids map monotonically.
    pub fn edge_subgraph(&self, mut keep: impl FnMut(EdgeId) -> bool) -> (ColoredGraph, Vec<EdgeId>) {
        let origin: Vec<EdgeId> = (0..self.edges.len()).filter(|&id| keep(id)).collect();
        let edges = origin.iter().map(|&id| self.edges[id]).collect();
        (Self::assemble(self.vertex_count, edges, self.color_names.clone()), origin)
    }

    /// Same graph with one edge recolored to `label` (test and tampering helper).
    pub fn recolored(&self, id: EdgeId, label: &str) -> Result<ColoredGraph, GraphError> {
        if id >= self.edges.len() {
            return Err(GraphError::EdgeOutOfRange(id));
        }
        Self::from_labeled_edges(
            self.vertex_count,
            self.edges.iter().enumerate().map(|(i, e)| {
                let name = if i == id { label } else { self.color_name(e.color) };
                (e.u, e.v, name.to_string())
            }),
        )
    }
}

/// Parses the line-oriented instance format.
pub fn parse_instance(bytes: &[u8]) -> Result<ColoredGraph, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| ParseError::new(0, ParseErrorKind::Encoding))?;
    let mut header: Option<(usize, usize)> = None;
    let mut raw: Vec<(usize, usize, String, usize)> = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();

    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let mut tokens = line.split_whitespace();
        let Some(tag) = tokens.next() else { continue };
        let rest: Vec<&str> = tokens.collect();
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(ParseError::new(lineno, ParseErrorKind::DuplicateHeader));
                }
                if !raw.is_empty() {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedHeader("header after edge lines".into()),
                    ));
                }
                if rest.len() != 3 || rest[0] != "cgraph" {
                    return Err(ParseError::new(lineno, ParseErrorKind::MalformedHeader(line.trim().to_string())));
                }
                let n = rest[1].parse().map_err(|_| {
                    ParseError::new(lineno, ParseErrorKind::MalformedHeader(format!("bad vertex count `{}`", rest[1])))
                })?;
                let m = rest[2].parse().map_err(|_| {
                    ParseError::new(lineno, ParseErrorKind::MalformedHeader(format!("bad edge count `{}`", rest[2])))
                })?;
                header = Some((n, m));
            }
            "e" => {
                if rest.len() != 3 {
                    return Err(ParseError::new(lineno, ParseErrorKind::MalformedEdge(line.trim().to_string())));
                }
                let parse_vertex = |tok: &str| {
                    tok.parse::<usize>().map_err(|_| {
                        ParseError::new(lineno, ParseErrorKind::MalformedEdge(format!("bad vertex `{tok}`")))
                    })
                };
                let a = parse_vertex(rest[0])?;
                let b = parse_vertex(rest[1])?;
                if a == b {
                    return Err(ParseError::new(lineno, ParseErrorKind::SelfLoop));
                }
                let Some((n, _)) = header else {
                    return Err(ParseError::new(lineno, ParseErrorKind::MissingHeader));
                };
                for x in [a, b] {
                    if x == 0 || x > n {
                        return Err(ParseError::new(lineno, ParseErrorKind::VertexOutOfRange { vertex: x, n }));
                    }
                }
                let key = (a.min(b), a.max(b));
                if seen.insert(key, lineno).is_some() {
                    return Err(ParseError::new(lineno, ParseErrorKind::DuplicateEdge { u: key.0, v: key.1 }));
                }
                raw.push((key.0 - 1, key.1 - 1, rest[2].to_string(), lineno));
            }
            other => return Err(ParseError::new(lineno, ParseErrorKind::UnknownLine(other.to_string()))),
        }
    }
    let last_line = text.lines().count();
    let Some((n, m)) = header else {
        return Err(ParseError::new(last_line.max(1), ParseErrorKind::MissingHeader));
    };
    if raw.len() != m {
        return Err(ParseError::new(last_line, ParseErrorKind::EdgeCountMismatch { expected: m, found: raw.len() }));
    }
    // Every failure mode of the builder has been ruled out line by line above.
    Ok(ColoredGraph::from_labeled_edges(n, raw.into_iter().map(|(u, v, c, _)| (u, v, c))).expect("validated edge list"))
}

/// Serializes into the instance format; no comment lines are emitted.
pub fn serialize_instance(g: &ColoredGraph) -> String {
    let mut out = String::new();
    writeln!(out, "p cgraph {} {}", g.vertex_count(), g.edge_count()).unwrap();
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.u + 1, e.v + 1, g.color_name(e.color)).unwrap();
    }
    out
}

/// A set of edges that is vertex-disjoint and color-distinct, stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RainbowMatching {
    edge_ids: Vec<EdgeId>,
}

impl RainbowMatching {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Checks the invariants against `g`.
    pub fn new(g: &ColoredGraph, edge_ids: impl IntoIterator<Item = EdgeId>) -> Result<Self, SolutionError> {
        let mut ids: Vec<EdgeId> = edge_ids.into_iter().collect();
        ids.sort_unstable();
        ids.dedup();
        match validate_solution(g, &ids)? {
            Verdict::Ok => Ok(Self { edge_ids: ids }),
            Verdict::Violations(v) => Err(SolutionError::NotRainbow(v)),
        }
    }

    pub(crate) fn from_sorted_unchecked(edge_ids: Vec<EdgeId>) -> Self {
        debug_assert!(edge_ids.windows(2).all(|w| w[0] < w[1]));
        Self { edge_ids }
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    SharedVertex,
    SharedColor,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::SharedVertex => "shared-vertex",
            ViolationKind::SharedColor => "shared-color",
        })
    }
}

/// A pair of chosen edges that breaks the rainbow matching conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub first: EdgeId,
    pub second: EdgeId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Violations(Vec<Violation>),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolutionError {
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("not a rainbow matching: {0:?}")]
    NotRainbow(Vec<Violation>),
}

/// Lists every violating pair; one pair can be both shared-vertex and shared-color.
pub fn validate_solution(g: &ColoredGraph, candidate: &[EdgeId]) -> Result<Verdict, SolutionError> {
    if let Some(&bad) = candidate.iter().find(|&&id| id >= g.edge_count()) {
        return Err(SolutionError::EdgeOutOfRange(bad));
    }
    let ids: Vec<EdgeId> = candidate.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let mut violations = Vec::new();
    let mut by_vertex: HashMap<VertexId, Vec<EdgeId>> = HashMap::new();
    let mut by_color: HashMap<ColorId, Vec<EdgeId>> = HashMap::new();
    for &id in &ids {
        let e = g.edge(id);
        by_vertex.entry(e.u).or_default().push(id);
        by_vertex.entry(e.v).or_default().push(id);
        by_color.entry(e.color).or_default().push(id);
    }
    let mut vertex_pairs = BTreeSet::new();
    for list in by_vertex.values() {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                vertex_pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    let mut color_pairs = BTreeSet::new();
    for list in by_color.values() {
        for (i, &a) in list.iter().enumerate() {
            for &b in &list[i + 1..] {
                color_pairs.insert((a.min(b), a.max(b)));
            }
        }
    }
    violations.extend(vertex_pairs.into_iter().map(|(first, second)| Violation {
        kind: ViolationKind::SharedVertex,
        first,
        second,
    }));
    violations.extend(color_pairs.into_iter().map(|(first, second)| Violation {
        kind: ViolationKind::SharedColor,
        first,
        second,
    }));
    violations.sort_by_key(|v| (v.first, v.second, v.kind as u8));
    Ok(if violations.is_empty() { Verdict::Ok } else { Verdict::Violations(violations) })
}

/// Solution format: `s rbm <k>` followed by `m <u> <v> <color>` lines.
pub fn serialize_solution(g: &ColoredGraph, m: &RainbowMatching) -> String {
    let mut out = String::new();
    writeln!(out, "s rbm {}", m.len()).unwrap();
    for &id in m.edge_ids() {
        let e = g.edge(id);
        writeln!(out, "m {} {} {}", e.u + 1, e.v + 1, g.color_name(e.color)).unwrap();
    }
    out
}

/// Reads a solution file against its instance and returns the edge ids it names.
/// The set is not checked for the rainbow property; use [`validate_solution`].
pub fn parse_solution(g: &ColoredGraph, bytes: &[u8]) -> Result<Vec<EdgeId>, ParseError> {
    let text = std::str::from_utf8(bytes).map_err(|_| ParseError::new(0, ParseErrorKind::Encoding))?;
    let mut announced: Option<usize> = None;
    let mut ids = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            [] | ["c", ..] => {}
            ["s", "rbm", k] => {
                if announced.is_some() {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedSolution("duplicate `s` line".into()),
                    ));
                }
                let k = k.parse().map_err(|_| {
                    ParseError::new(lineno, ParseErrorKind::MalformedSolution(format!("bad size `{k}`")))
                })?;
                announced = Some(k);
            }
            ["m", a, b, color] => {
                if announced.is_none() {
                    return Err(ParseError::new(
                        lineno,
                        ParseErrorKind::MalformedSolution("`m` line before `s rbm`".into()),
                    ));
                }
                let (Ok(a), Ok(b)) = (a.parse::<usize>(), b.parse::<usize>()) else {
                    return Err(ParseError::new(lineno, ParseErrorKind::MalformedSolution(line.trim().to_string())));
                };
                let unknown = || ParseErrorKind::UnknownEdge { u: a, v: b, color: color.to_string() };
                if a == 0 || b == 0 {
                    return Err(ParseError::new(lineno, unknown()));
                }
                let id = g.find_edge(a - 1, b - 1).ok_or_else(|| ParseError::new(lineno, unknown()))?;
                if g.color_name(g.edge(id).color) != *color {
                    return Err(ParseError::new(lineno, unknown()));
                }
                ids.push(id);
            }
            _ => {
                return Err(ParseError::new(lineno, ParseErrorKind::MalformedSolution(line.trim().to_string())));
            }
        }
    }
    let Some(k) = announced else {
        return Err(ParseError::new(
            text.lines().count().max(1),
            ParseErrorKind::MalformedSolution("missing `s rbm <k>` line".into()),
        ));
    };
    if k != ids.len() {
        return Err(ParseError::new(
            text.lines().count(),
            ParseErrorKind::MalformedSolution(format!("announced {k} edges, found {}", ids.len())),
        ));
    }
    Ok(ids)
}
