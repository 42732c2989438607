use super::{EdgeId, SquareComplex};
use crate::uf::ParityUnionFind;
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hyperplane {
    pub id: usize,
    pub edges: Vec<EdgeId>,
    pub two_sided: bool,
}

/// Classes of edges under the opposite-edge relation of squares.
#[derive(Clone, Debug)]
pub struct Hyperplanes {
    pub planes: Vec<Hyperplane>,
    of_edge: Vec<usize>,
    // edge orientation relative to a transverse orientation of its
    // hyperplane; meaningful for two-sided hyperplanes only
    flip: Vec<bool>,
}

impl Hyperplanes {
    pub fn of(&self, e: EdgeId) -> usize {
        self.of_edge[e.0]
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    /// True when `e` points along the chosen transverse orientation.
    pub fn agrees(&self, e: EdgeId) -> bool {
        !self.flip[e.0]
    }

    /// Pairs `(h, k)`, `h <= k`, of hyperplanes dual to consecutive
    /// edges of some square.
    pub fn crossing_pairs(&self, c: &SquareComplex) -> BTreeSet<(usize, usize)> {
        let mut out = BTreeSet::new();
        for sq in c.squares() {
            for i in 0..4 {
                let (h, k) = (self.of(sq.darts[i].edge), self.of(sq.darts[(i + 1) % 4].edge));
                out.insert((h.min(k), h.max(k)));
            }
        }
        out
    }
}

pub fn hyperplanes(c: &SquareComplex) -> Hyperplanes {
    let mut uf = ParityUnionFind::new(c.num_edges());
    for sq in c.squares() {
        let d = &sq.darts;
        for (x, y) in [(d[0], d[2]), (d[1], d[3])] {
            // opposite darts run against each other when the edges are
            // parallel, so equal directions mean the edges are flipped
            uf.union(x.edge.0, y.edge.0, x.forward == y.forward);
        }
    }
    let mut id_of_root = vec![usize::MAX; c.num_edges()];
    let mut planes: Vec<Hyperplane> = Vec::new();
    let mut of_edge = vec![0; c.num_edges()];
    let mut flip = vec![false; c.num_edges()];
    for e in 0..c.num_edges() {
        let (root, parity) = uf.find(e);
        if id_of_root[root] == usize::MAX {
            id_of_root[root] = planes.len();
            planes.push(Hyperplane { id: planes.len(), edges: Vec::new(), two_sided: !uf.contradicted(root) });
        }
        let h = id_of_root[root];
        planes[h].edges.push(EdgeId(e));
        of_edge[e] = h;
        flip[e] = parity;
    }
    Hyperplanes { planes, of_edge, flip }
}
