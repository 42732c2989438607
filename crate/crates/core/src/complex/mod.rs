//! Oriented square complexes: vertices, oriented edges and squares glued
//! along closed cycles of four darts.

mod checks;
mod format;
mod hyperplanes;
mod iso;
mod xn;

pub use checks::{
    canonical_hyperplane_labeling, check_npc, check_special, check_trace_labeling, InterOsculation,
    NpcReport, NpcViolation, Osculation, SpecialnessReport, TlViolation, TraceLabelingReport,
};
pub use format::{complex_to_json, parse_complex, to_dot, write_complex};
pub use hyperplanes::{hyperplanes, Hyperplane, Hyperplanes};
pub use iso::{check_covering, isomorphic, ComplexIso, Respect};
pub use xn::{build_xn, XnComplex};

use crate::parse::ParseError;
use crate::trace::TraceError;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SquareId(pub usize);

/// An edge traversed forwards (src to dst) or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub forward: bool,
}

impl Dart {
    pub fn fwd(e: EdgeId) -> Self {
        Dart { edge: e, forward: true }
    }

    pub fn bwd(e: EdgeId) -> Self {
        Dart { edge: e, forward: false }
    }

    pub fn reversed(self) -> Self {
        Dart { edge: self.edge, forward: !self.forward }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum End {
    Src,
    Dst,
}

/// One end of an edge; the vertices of a link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeEnd {
    pub edge: EdgeId,
    pub end: End,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub name: String,
    pub src: VertexId,
    pub dst: VertexId,
    pub color: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Square {
    pub darts: [Dart; 4],
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("square {square} is not a closed cycle of darts (break after dart {position})")]
    OpenSquare { square: usize, position: usize },
    #[error("orientation is not admissible on square {0}")]
    NotAdmissible(usize),
    #[error(transparent)]
    Trace(#[from] TraceError),
}

/// Source corner of an admissible square: the two out-edges at the
/// source and, for each, the edge leaving its head towards the sink.
/// `far[k]` is opposite to `out[1 - k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceCorner {
    pub vertex: VertexId,
    pub out: [EdgeId; 2],
    pub far: [EdgeId; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
}

impl SquareComplex {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_squares(&self) -> usize {
        self.squares.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len()).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn square_ids(&self) -> impl Iterator<Item = SquareId> {
        (0..self.squares.len()).map(SquareId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.0]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertices.iter().position(|n| n == name).map(VertexId)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.0]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name).map(EdgeId)
    }

    pub fn square(&self, s: SquareId) -> &Square {
        &self.squares[s.0]
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    /// Color if present, otherwise the edge name.
    pub fn label(&self, e: EdgeId) -> &str {
        let e = &self.edges[e.0];
        e.color.as_deref().unwrap_or(&e.name)
    }

    pub fn has_colors(&self) -> bool {
        self.edges.iter().any(|e| e.color.is_some())
    }

    pub fn tail(&self, d: Dart) -> VertexId {
        let e = &self.edges[d.edge.0];
        if d.forward {
            e.src
        } else {
            e.dst
        }
    }

    pub fn head(&self, d: Dart) -> VertexId {
        self.tail(d.reversed())
    }

    pub fn tail_end(d: Dart) -> EdgeEnd {
        EdgeEnd { edge: d.edge, end: if d.forward { End::Src } else { End::Dst } }
    }

    pub fn head_end(d: Dart) -> EdgeEnd {
        Self::tail_end(d.reversed())
    }

    pub fn end_vertex(&self, x: EdgeEnd) -> VertexId {
        let e = &self.edges[x.edge.0];
        match x.end {
            End::Src => e.src,
            End::Dst => e.dst,
        }
    }

    /// Corner `i` sits at the tail of dart `i`, between the head end of
    /// dart `i - 1` and the tail end of dart `i`.
    pub fn corner(&self, s: SquareId, i: usize) -> (VertexId, EdgeEnd, EdgeEnd) {
        let d = &self.squares[s.0].darts;
        let prev = d[(i + 3) % 4];
        (self.tail(d[i]), Self::head_end(prev), Self::tail_end(d[i]))
    }

    /// All edge ends at each vertex.
    pub fn ends_by_vertex(&self) -> Vec<Vec<EdgeEnd>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.src.0].push(EdgeEnd { edge: EdgeId(i), end: End::Src });
            out[e.dst.0].push(EdgeEnd { edge: EdgeId(i), end: End::Dst });
        }
        out
    }

    pub fn out_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_ids().filter(move |&e| self.edges[e.0].src == v)
    }

    /// First square whose orientation is not admissible: opposite darts
    /// must run in opposite directions around the square.
    pub fn inadmissible_square(&self) -> Option<SquareId> {
        self.square_ids().find(|&s| {
            let d = &self.squares[s.0].darts;
            d[0].forward == d[2].forward || d[1].forward == d[3].forward
        })
    }

    pub fn is_admissible(&self) -> bool {
        self.inadmissible_square().is_none()
    }

    pub fn source_corner(&self, s: SquareId) -> Option<SourceCorner> {
        let d = &self.squares[s.0].darts;
        let i = (0..4).find(|&i| d[i].forward && !d[(i + 3) % 4].forward)?;
        let (prev, next, far_a, far_b) = (d[(i + 3) % 4], d[i], d[(i + 1) % 4], d[(i + 2) % 4]);
        if !far_a.forward || far_b.forward {
            return None;
        }
        Some(SourceCorner {
            vertex: self.tail(next),
            out: [next.edge, prev.edge],
            far: [far_a.edge, far_b.edge],
        })
    }

    /// Replaces all colors.
    pub fn with_colors(&self, colors: &[Option<String>]) -> SquareComplex {
        let mut out = self.clone();
        for (e, c) in out.edges.iter_mut().zip(colors) {
            e.color = c.clone();
        }
        out
    }
}

/// Adds a pendant edge `v -> v'` at every vertex. All hairs get one
/// colour not used yet (`h`, `h'`, ...), also in an uncoloured complex,
/// so that they share a label like the hairs of a prefix.
pub fn hair_complex(c: &SquareComplex) -> SquareComplex {
    let mut b = ComplexBuilder::from_complex(c);
    let mut h = String::from("h");
    while c.edge_ids().any(|e| c.label(e) == h) {
        h.push('\'');
    }
    let color = Some(h);
    for v in c.vertex_ids() {
        let name = b.fresh_vertex(&format!("{}'", c.vertex_name(v)));
        let w = b.vertex(&name).expect("fresh name");
        let ename = b.fresh_edge(&format!("hair_{}", c.vertex_name(v)));
        b.edge(&ename, v, w, color.clone()).expect("fresh name");
    }
    b.build()
}

#[derive(Clone, Debug, Default)]
pub struct ComplexBuilder {
    vertices: Vec<String>,
    vindex: HashMap<String, VertexId>,
    edges: Vec<Edge>,
    eindex: HashMap<String, EdgeId>,
    squares: Vec<Square>,
}

impl ComplexBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_complex(c: &SquareComplex) -> Self {
        let mut b = Self::new();
        for v in &c.vertices {
            b.vertex(v).expect("names are unique");
        }
        for e in &c.edges {
            b.edge(&e.name, e.src, e.dst, e.color.clone()).expect("names are unique");
        }
        b.squares = c.squares.clone();
        b
    }

    fn fresh_vertex(&self, base: &str) -> String {
        let mut s = base.to_string();
        while self.vindex.contains_key(&s) {
            s.push('\'');
        }
        s
    }

    fn fresh_edge(&self, base: &str) -> String {
        let mut s = base.to_string();
        while self.eindex.contains_key(&s) {
            s.push('\'');
        }
        s
    }

    pub fn vertex(&mut self, name: &str) -> Result<VertexId, ComplexError> {
        if self.vindex.contains_key(name) {
            return Err(ComplexError::Duplicate(name.to_string()));
        }
        let v = VertexId(self.vertices.len());
        self.vertices.push(name.to_string());
        self.vindex.insert(name.to_string(), v);
        Ok(v)
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId, ComplexError> {
        self.vindex.get(name).copied().ok_or_else(|| ComplexError::UnknownVertex(name.to_string()))
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId, ComplexError> {
        self.eindex.get(name).copied().ok_or_else(|| ComplexError::UnknownEdge(name.to_string()))
    }

    pub fn edge(
        &mut self,
        name: &str,
        src: VertexId,
        dst: VertexId,
        color: Option<String>,
    ) -> Result<EdgeId, ComplexError> {
        if self.eindex.contains_key(name) {
            return Err(ComplexError::Duplicate(name.to_string()));
        }
        let e = EdgeId(self.edges.len());
        self.edges.push(Edge { name: name.to_string(), src, dst, color });
        self.eindex.insert(name.to_string(), e);
        Ok(e)
    }

    pub fn square(&mut self, darts: [Dart; 4]) -> Result<SquareId, ComplexError> {
        let idx = self.squares.len();
        let ends = |d: Dart| {
            let e = &self.edges[d.edge.0];
            if d.forward {
                (e.src, e.dst)
            } else {
                (e.dst, e.src)
            }
        };
        for i in 0..4 {
            if ends(darts[i]).1 != ends(darts[(i + 1) % 4]).0 {
                return Err(ComplexError::OpenSquare { square: idx, position: i });
            }
        }
        self.squares.push(Square { darts });
        Ok(SquareId(idx))
    }

    /// Square from signed edge names such as `["+a", "+b", "-c", "-d"]`.
    pub fn square_named(&mut self, darts: [&str; 4]) -> Result<SquareId, ComplexError> {
        let mut ds = [Dart::fwd(EdgeId(0)); 4];
        for (slot, d) in ds.iter_mut().zip(darts) {
            let (forward, name) = match d.strip_prefix('-') {
                Some(rest) => (false, rest),
                None => (true, d.strip_prefix('+').unwrap_or(d)),
            };
            *slot = Dart { edge: self.edge_id(name)?, forward };
        }
        self.square(ds)
    }

    pub fn build(self) -> SquareComplex {
        SquareComplex { vertices: self.vertices, edges: self.edges, squares: self.squares }
    }
}
