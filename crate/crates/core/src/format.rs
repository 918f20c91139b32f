//! The `lapgraph v1` text format.
//!
//! ```text
//! lapgraph v1
//! d 1
//! vertex v1
//! vertex v2
//! edge r v1 v2 0
//! edge a v1 v1 1
//! edge b v2 v2 1
//! rot v1: r.t a.t a.h
//! rot v2: r.h b.t b.h
//! ```
//!
//! `#` starts a comment. `d` must precede every edge. An edge's voltage is
//! `d` integers, or nothing for all zeros. Any `rot` line makes the file a
//! plane graph, and then every vertex with incident edges needs one.

use std::collections::HashMap;
use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::graph::{FiniteGraph, GraphError, VoltageGraph};
use crate::planar::{dart, dart_edge, dart_end, End, PlanarError, PlaneGraph};

pub const HEADER: &str = "lapgraph v1";
/// Bound on the magnitude of voltage entries.
pub const MAX_VOLTAGE: i64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatErrorKind {
    #[error("missing header {HEADER:?}")]
    MissingHeader,
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("rank {0} not supported; expected 0, 1 or 2")]
    BadRank(i64),
    #[error("rank given twice")]
    DuplicateRank,
    #[error("rank must precede all edges")]
    LateRank,
    #[error("voltage has {got} entries, expected {expected}")]
    VoltageArity { expected: usize, got: usize },
    #[error("voltage entry {0} out of range")]
    VoltageRange(String),
    #[error("edge end {end} belongs to {owner:?}, not {vertex:?}")]
    RotationEnd { end: String, owner: String, vertex: String },
    #[error("rotation for {0:?} given twice")]
    DuplicateRotation(String),
    #[error("vertex {0:?} has incident edges but no rotation")]
    MissingRotation(String),
    #[error(transparent)]
    Planar(#[from] PlanarError),
}

/// A parse error at a 1-based line and column; column 0 means the whole line.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {kind}")]
pub struct FormatError {
    pub line: usize,
    pub col: usize,
    pub kind: FormatErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedGraph {
    Finite(FiniteGraph),
    Voltage(VoltageGraph),
    Plane(PlaneGraph),
}

impl ParsedGraph {
    pub fn finite(&self) -> &FiniteGraph {
        match self {
            ParsedGraph::Finite(g) => g,
            ParsedGraph::Voltage(vg) => vg.base(),
            ParsedGraph::Plane(pg) => pg.graph(),
        }
    }

    /// `None` for files without a `d` line of positive rank.
    pub fn voltage(&self) -> Option<&VoltageGraph> {
        match self {
            ParsedGraph::Finite(_) => None,
            ParsedGraph::Voltage(vg) => Some(vg),
            ParsedGraph::Plane(pg) if pg.voltage_graph().rank() > 0 => Some(pg.voltage_graph()),
            ParsedGraph::Plane(_) => None,
        }
    }

    pub fn plane(&self) -> Option<&PlaneGraph> {
        match self {
            ParsedGraph::Plane(pg) => Some(pg),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            ParsedGraph::Finite(_) => 0,
            ParsedGraph::Voltage(vg) => vg.rank(),
            ParsedGraph::Plane(pg) => pg.voltage_graph().rank(),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token { text: &line[s..i], col: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token { text: &line[s..], col: s + 1 });
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

struct Parser {
    graph: FiniteGraph,
    rank: Option<usize>,
    voltages: Vec<Vec<i64>>,
    rotations: HashMap<usize, (usize, Vec<usize>)>,
    first_rot_line: usize,
}

fn err(line: usize, col: usize, kind: FormatErrorKind) -> FormatError {
    FormatError { line, col, kind }
}

fn graph_err(line: usize, col: usize, e: GraphError) -> FormatError {
    let kind = match e {
        GraphError::DuplicateVertex(v) => FormatErrorKind::DuplicateVertex(v),
        GraphError::DuplicateEdge(v) => FormatErrorKind::DuplicateEdge(v),
        GraphError::UnknownVertex(v) => FormatErrorKind::UnknownVertex(v),
        other => FormatErrorKind::Syntax(other.to_string()),
    };
    err(line, col, kind)
}

impl Parser {
    fn line(&mut self, ln: usize, toks: &[Token]) -> Result<(), FormatError> {
        let kw = &toks[0];
        let syntax = |col, msg: &str| err(ln, col, FormatErrorKind::Syntax(msg.to_string()));
        match kw.text {
            "d" => {
                if toks.len() != 2 {
                    return Err(syntax(kw.col, "expected `d N`"));
                }
                if self.rank.is_some() {
                    return Err(err(ln, kw.col, FormatErrorKind::DuplicateRank));
                }
                if self.graph.num_edges() > 0 {
                    return Err(err(ln, kw.col, FormatErrorKind::LateRank));
                }
                let r: i64 = toks[1].text.parse().map_err(|_| syntax(toks[1].col, "rank must be an integer"))?;
                if !(0..=2).contains(&r) {
                    return Err(err(ln, toks[1].col, FormatErrorKind::BadRank(r)));
                }
                self.rank = Some(r as usize);
            }
            "vertex" => {
                if toks.len() != 2 {
                    return Err(syntax(kw.col, "expected `vertex NAME`"));
                }
                self.graph.add_vertex(toks[1].text).map_err(|e| graph_err(ln, toks[1].col, e))?;
            }
            "edge" => {
                if toks.len() < 4 {
                    return Err(syntax(kw.col, "expected `edge NAME TAIL HEAD [VOLTAGE]`"));
                }
                for t in &toks[2..4] {
                    if self.graph.vertex_index(t.text).is_none() {
                        return Err(err(ln, t.col, FormatErrorKind::UnknownVertex(t.text.to_string())));
                    }
                }
                let rank = self.rank.unwrap_or(0);
                let volt = &toks[4..];
                if !volt.is_empty() && volt.len() != rank {
                    return Err(err(
                        ln,
                        volt[0].col,
                        FormatErrorKind::VoltageArity { expected: rank, got: volt.len() },
                    ));
                }
                let mut v = vec![0i64; rank];
                for (slot, t) in v.iter_mut().zip(volt) {
                    let x: i64 = t.text.parse().map_err(|_| syntax(t.col, "voltage must be an integer"))?;
                    if x.unsigned_abs() > MAX_VOLTAGE as u64 {
                        return Err(err(ln, t.col, FormatErrorKind::VoltageRange(t.text.to_string())));
                    }
                    *slot = x;
                }
                self.graph
                    .add_edge_by_name(toks[1].text, toks[2].text, toks[3].text)
                    .map_err(|e| graph_err(ln, toks[1].col, e))?;
                self.voltages.push(v);
            }
            "rot" => self.rotation(ln, toks)?,
            _ => return Err(syntax(kw.col, &format!("unknown directive {:?}", kw.text))),
        }
        Ok(())
    }

    fn rotation(&mut self, ln: usize, toks: &[Token]) -> Result<(), FormatError> {
        let syntax = |col, msg: &str| err(ln, col, FormatErrorKind::Syntax(msg.to_string()));
        if toks.len() < 2 {
            return Err(syntax(toks[0].col, "expected `rot VERTEX: END ...`"));
        }
        let (name, rest_start) = match toks[1].text.strip_suffix(':') {
            Some(n) => (n, 2),
            None if toks.len() > 2 && toks[2].text == ":" => (toks[1].text, 3),
            None => return Err(syntax(toks[1].col, "expected `:` after the vertex")),
        };
        let v = self
            .graph
            .vertex_index(name)
            .ok_or_else(|| err(ln, toks[1].col, FormatErrorKind::UnknownVertex(name.to_string())))?;
        if self.rotations.contains_key(&v) {
            return Err(err(ln, toks[1].col, FormatErrorKind::DuplicateRotation(name.to_string())));
        }
        let mut darts = Vec::new();
        for t in &toks[rest_start..] {
            let (ename, end) = t
                .text
                .rsplit_once('.')
                .ok_or_else(|| syntax(t.col, "edge end must be NAME.t or NAME.h"))?;
            let end = match end {
                "t" => End::Tail,
                "h" => End::Head,
                _ => return Err(syntax(t.col, "edge end must be NAME.t or NAME.h")),
            };
            let e = self
                .graph
                .edge_index(ename)
                .ok_or_else(|| err(ln, t.col, FormatErrorKind::UnknownEdge(ename.to_string())))?;
            let edge = self.graph.edge(e);
            let owner = if end == End::Tail { edge.tail } else { edge.head };
            if owner != v {
                return Err(err(
                    ln,
                    t.col,
                    FormatErrorKind::RotationEnd {
                        end: t.text.to_string(),
                        owner: self.graph.vertex_name(owner).to_string(),
                        vertex: name.to_string(),
                    },
                ));
            }
            darts.push(dart(e, end));
        }
        if self.rotations.is_empty() {
            self.first_rot_line = ln;
        }
        self.rotations.insert(v, (ln, darts));
        Ok(())
    }

    fn finish(self) -> Result<ParsedGraph, FormatError> {
        let rank = self.rank.unwrap_or(0);
        let vg = VoltageGraph::new(self.graph, rank, self.voltages).map_err(|e| graph_err(0, 0, e))?;
        if self.rotations.is_empty() {
            return Ok(if rank == 0 { ParsedGraph::Finite(vg.base().clone()) } else { ParsedGraph::Voltage(vg) });
        }
        let g = vg.base();
        let mut rotation = Vec::with_capacity(g.num_vertices());
        for v in 0..g.num_vertices() {
            match self.rotations.get(&v) {
                Some((_, d)) => rotation.push(d.clone()),
                None if g.degree(v) == 0 => rotation.push(Vec::new()),
                None => {
                    return Err(err(0, 0, FormatErrorKind::MissingRotation(g.vertex_name(v).to_string())));
                }
            }
        }
        let line = self.first_rot_line;
        PlaneGraph::new(vg, rotation).map(ParsedGraph::Plane).map_err(|e| err(line, 0, e.into()))
    }
}

/// Parses a graph file; `rot` lines yield a plane graph, a positive `d` a
/// voltage graph, otherwise a finite graph.
pub fn parse_graph_file(text: &str) -> Result<ParsedGraph, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, strip_comment(l)));
    let header = lines.by_ref().find(|(_, l)| !l.trim().is_empty());
    match header {
        Some((_, l)) if tokens(l).iter().map(|t| t.text).eq(HEADER.split(' ')) => {}
        Some((ln, _)) => return Err(err(ln, 1, FormatErrorKind::MissingHeader)),
        None => return Err(err(1, 0, FormatErrorKind::MissingHeader)),
    }
    let mut p = Parser {
        graph: FiniteGraph::new(),
        rank: None,
        voltages: Vec::new(),
        rotations: HashMap::new(),
        first_rot_line: 0,
    };
    for (ln, l) in lines {
        let toks = tokens(l);
        if !toks.is_empty() {
            p.line(ln, &toks)?;
        }
    }
    p.finish()
}

/// Canonical text form; parsing it back yields an equal value.
pub fn write_graph(g: &ParsedGraph) -> String {
    let mut out = String::new();
    let base = g.finite();
    let rank = g.rank();
    out.push_str(HEADER);
    out.push('\n');
    if rank > 0 {
        let _ = writeln!(out, "d {rank}");
    }
    for v in base.vertices() {
        let _ = writeln!(out, "vertex {v}");
    }
    for (k, e) in base.edges().iter().enumerate() {
        let _ = write!(out, "edge {} {} {}", e.name, base.vertex_name(e.tail), base.vertex_name(e.head));
        let volts = match g {
            ParsedGraph::Finite(_) => &[][..],
            ParsedGraph::Voltage(vg) => vg.voltage(k),
            ParsedGraph::Plane(pg) => pg.voltage_graph().voltage(k),
        };
        for s in volts {
            let _ = write!(out, " {s}");
        }
        out.push('\n');
    }
    if let ParsedGraph::Plane(pg) = g {
        for v in 0..base.num_vertices() {
            let _ = write!(out, "rot {}:", base.vertex_name(v));
            for &d in pg.rotation(v) {
                let _ = write!(out, " {}.{}", base.edge(dart_edge(d)).name, dart_end(d).token());
            }
            out.push('\n');
        }
    }
    out
}

impl fmt::Display for ParsedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_graph(self))
    }
}
