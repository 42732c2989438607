//! Finite prefixes of directed median graphs: the principal filter of a
//! vertex in the universal cover of a square complex, or the domain of
//! firing traces of a net, truncated at a depth bound `K`.
//!
//! Vertices of depth `< K` are *interior*: all of their out-arcs are
//! present. Vertices at depth `K` are boundary vertices.

mod build;
mod lattice;
mod median;

pub use build::{hair_domain, unfold_complex, unfold_net};
pub use lattice::{DomainHyperplane, Lattice};
pub(crate) use lattice::{intersect as lattice_intersect, union as lattice_union};
pub use median::{check_domain_isomorphism, interval, validate_median, DomainMismatch, Interval, MedianReport, MedianViolation};

use crate::complex::{EdgeId, VertexId};
use crate::net::Marking;
use crate::trace::Trace;
use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UnfoldError {
    #[error("orientation is not admissible on square {0}")]
    NotAdmissible(usize),
    #[error("unknown base vertex `{0}`")]
    UnknownBase(String),
    #[error("prefix exceeds the budget of {0} vertices")]
    BudgetExceeded(usize),
}

/// What a prefix vertex maps to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Projection {
    Vertex(VertexId),
    Trace { trace: Trace, marking: Marking },
    None,
}

#[derive(Clone, Debug, Serialize)]
pub struct DomainVertex {
    pub depth: usize,
    pub projection: Projection,
    pub hair: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DomainArc {
    pub src: usize,
    pub dst: usize,
    pub label: usize,
    pub base_edge: Option<EdgeId>,
}

/// `arcs` are source -> a, source -> b, a -> sink, b -> sink.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DomainSquare {
    pub source: usize,
    pub sink: usize,
    pub arcs: [usize; 4],
}

#[derive(Clone, Debug)]
pub struct DomainPrefix {
    depth_bound: usize,
    labels: Vec<String>,
    vertices: Vec<DomainVertex>,
    arcs: Vec<DomainArc>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    squares: Vec<DomainSquare>,
}

impl DomainPrefix {
    pub fn depth_bound(&self) -> usize {
        self.depth_bound
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[DomainVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &DomainVertex {
        &self.vertices[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.vertices[v].depth
    }

    pub fn is_interior(&self, v: usize) -> bool {
        self.vertices[v].depth < self.depth_bound
    }

    pub fn arcs(&self) -> &[DomainArc] {
        &self.arcs
    }

    pub fn arc(&self, a: usize) -> &DomainArc {
        &self.arcs[a]
    }

    pub fn out_arcs(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_arcs(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn squares(&self) -> &[DomainSquare] {
        &self.squares
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_name(&self, l: usize) -> &str {
        &self.labels[l]
    }

    pub fn arc_label(&self, a: usize) -> &str {
        &self.labels[self.arcs[a].label]
    }

    /// Target of the out-arc of `v` with the given label name.
    pub fn successor(&self, v: usize, label: &str) -> Option<usize> {
        self.out[v].iter().find(|&&a| self.arc_label(a) == label).map(|&a| self.arcs[a].dst)
    }

    pub fn level(&self, k: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].depth == k).collect()
    }

    /// Vertex counts per depth `0..=K`.
    pub fn level_sizes(&self) -> Vec<usize> {
        let mut out = vec![0; self.depth_bound + 1];
        for v in &self.vertices {
            out[v.depth] += 1;
        }
        out
    }

    /// Undirected neighbors.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().map(|&a| self.arcs[a].dst).chain(self.inc[v].iter().map(|&a| self.arcs[a].src))
    }

    /// Undirected BFS distances inside the prefix.
    pub fn bfs(&self, from: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices.len()];
        dist[from] = 0;
        let mut q = std::collections::VecDeque::from([from]);
        while let Some(v) = q.pop_front() {
            for w in self.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    q.push_back(w);
                }
            }
        }
        dist
    }

    /// Restriction to vertices of depth at most `k`.
    pub fn truncate(&self, k: usize) -> DomainPrefix {
        let mut b = PrefixBuilder::new(k.min(self.depth_bound), self.labels.clone());
        let mut new_id = vec![usize::MAX; self.vertices.len()];
        for (v, dv) in self.vertices.iter().enumerate() {
            if dv.depth <= k {
                new_id[v] = b.add_vertex(dv.depth, dv.projection.clone(), dv.hair);
            }
        }
        for a in &self.arcs {
            if new_id[a.src] != usize::MAX && new_id[a.dst] != usize::MAX {
                b.add_arc(new_id[a.src], new_id[a.dst], a.label, a.base_edge);
            }
        }
        b.finish()
    }

    pub fn to_dot(&self) -> String {
        use std::fmt::Write;
        let mut s = String::from("digraph prefix {\n  rankdir=LR;\n");
        for (v, dv) in self.vertices.iter().enumerate() {
            let shape = if dv.depth == self.depth_bound { "box" } else { "ellipse" };
            writeln!(s, "  n{v} [label=\"{v}\", shape={shape}];").unwrap();
        }
        for a in &self.arcs {
            writeln!(s, "  n{} -> n{} [label=\"{}\"];", a.src, a.dst, self.labels[a.label]).unwrap();
        }
        s.push_str("}\n");
        s
    }
}

/// Incremental construction; squares are computed by `finish`.
#[derive(Clone, Debug)]
pub struct PrefixBuilder {
    p: DomainPrefix,
    label_index: HashMap<String, usize>,
}

impl PrefixBuilder {
    pub fn new(depth_bound: usize, labels: Vec<String>) -> Self {
        let label_index = labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        PrefixBuilder {
            p: DomainPrefix {
                depth_bound,
                labels,
                vertices: Vec::new(),
                arcs: Vec::new(),
                out: Vec::new(),
                inc: Vec::new(),
                squares: Vec::new(),
            },
            label_index,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.p.vertices.len()
    }

    /// Id of a label name, adding it if new.
    pub fn label(&mut self, name: &str) -> usize {
        if let Some(&l) = self.label_index.get(name) {
            return l;
        }
        let l = self.p.labels.len();
        self.p.labels.push(name.to_string());
        self.label_index.insert(name.to_string(), l);
        l
    }

    pub fn add_vertex(&mut self, depth: usize, projection: Projection, hair: bool) -> usize {
        self.p.vertices.push(DomainVertex { depth, projection, hair });
        self.p.out.push(Vec::new());
        self.p.inc.push(Vec::new());
        self.p.vertices.len() - 1
    }

    pub fn add_arc(&mut self, src: usize, dst: usize, label: usize, base_edge: Option<EdgeId>) -> usize {
        let a = self.p.arcs.len();
        self.p.arcs.push(DomainArc { src, dst, label, base_edge });
        self.p.out[src].push(a);
        self.p.inc[dst].push(a);
        a
    }

    pub fn finish(mut self) -> DomainPrefix {
        let p = &mut self.p;
        let mut squares = Vec::new();
        for u in 0..p.vertices.len() {
            let outs = &p.out[u];
            for (i, &x) in outs.iter().enumerate() {
                for &y in &outs[i + 1..] {
                    let (v1, v2) = (p.arcs[x].dst, p.arcs[y].dst);
                    if v1 == v2 {
                        continue;
                    }
                    for &f in &p.out[v1] {
                        let w = p.arcs[f].dst;
                        if let Some(&g) = p.out[v2].iter().find(|&&g| p.arcs[g].dst == w) {
                            squares.push(DomainSquare { source: u, sink: w, arcs: [x, y, f, g] });
                        }
                    }
                }
            }
        }
        p.squares = squares;
        self.p
    }
}
