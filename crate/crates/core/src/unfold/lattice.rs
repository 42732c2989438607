use super::DomainPrefix;
use crate::complex::EdgeId;
use crate::uf::UnionFind;
use std::collections::HashMap;

#[derive(Clone, Debug)]
pub struct DomainHyperplane {
    pub id: usize,
    /// Dual arcs, the one nearest the root first.
    pub arcs: Vec<usize>,
    /// Depth of the tail of the first arc.
    pub first_depth: usize,
    pub label: usize,
    pub base_edge: Option<EdgeId>,
}

/// Hyperplanes of a prefix and the configuration (set of hyperplanes
/// crossed from the root) of every vertex. The prefix is down-closed, so
/// it is closed under meets and a vertex is determined by its
/// configuration; joins may fall outside the prefix.
#[derive(Clone, Debug)]
pub struct Lattice<'a> {
    pub d: &'a DomainPrefix,
    pub planes: Vec<DomainHyperplane>,
    of_arc: Vec<usize>,
    configs: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl<'a> Lattice<'a> {
    pub fn new(d: &'a DomainPrefix) -> Self {
        let mut uf = UnionFind::new(d.arcs().len());
        for sq in d.squares() {
            uf.union(sq.arcs[0], sq.arcs[3]);
            uf.union(sq.arcs[1], sq.arcs[2]);
        }
        let mut by_root: HashMap<usize, Vec<usize>> = HashMap::new();
        for a in 0..d.arcs().len() {
            by_root.entry(uf.find(a)).or_default().push(a);
        }
        let mut planes: Vec<DomainHyperplane> = by_root
            .into_values()
            .map(|mut arcs| {
                arcs.sort_by_key(|&a| (d.depth(d.arc(a).src), a));
                let first = *d.arc(arcs[0]);
                DomainHyperplane {
                    id: 0,
                    first_depth: d.depth(first.src),
                    label: first.label,
                    base_edge: first.base_edge,
                    arcs,
                }
            })
            .collect();
        planes.sort_by_key(|h| (h.first_depth, h.arcs[0]));
        let mut of_arc = vec![0; d.arcs().len()];
        for (i, h) in planes.iter_mut().enumerate() {
            h.id = i;
            for &a in &h.arcs {
                of_arc[a] = i;
            }
        }

        let mut order: Vec<usize> = (0..d.num_vertices()).collect();
        order.sort_by_key(|&v| d.depth(v));
        let mut configs = vec![Vec::new(); d.num_vertices()];
        for v in order {
            if let Some(&a) = d.in_arcs(v).first() {
                let mut c = configs[d.arc(a).src].clone();
                let h = of_arc[a] as u32;
                if let Err(pos) = c.binary_search(&h) {
                    c.insert(pos, h);
                }
                configs[v] = c;
            }
        }
        let index = configs.iter().enumerate().map(|(v, c)| (c.clone(), v)).collect();
        Lattice { d, planes, of_arc, configs, index }
    }

    pub fn hyperplane_of_arc(&self, a: usize) -> usize {
        self.of_arc[a]
    }

    pub fn config(&self, v: usize) -> &[u32] {
        &self.configs[v]
    }

    pub fn vertex_with(&self, config: &[u32]) -> Option<usize> {
        self.index.get(config).copied()
    }

    /// Dual hyperplane count between two vertices; equals the graph
    /// distance.
    pub fn distance(&self, u: usize, v: usize) -> usize {
        let (a, b) = (&self.configs[u], &self.configs[v]);
        a.len() + b.len() - 2 * intersect(a, b).len()
    }

    pub fn meet(&self, u: usize, v: usize) -> Option<usize> {
        self.vertex_with(&intersect(&self.configs[u], &self.configs[v]))
    }

    /// `None` when the join lies beyond the depth bound.
    pub fn join(&self, u: usize, v: usize) -> Option<usize> {
        self.vertex_with(&union(&self.configs[u], &self.configs[v]))
    }

    pub fn below(&self, u: usize, v: usize) -> bool {
        is_subset(&self.configs[u], &self.configs[v])
    }

    /// Target of the first arc of `h`: the vertex whose configuration is
    /// the causal past of `h` together with `h`.
    pub fn prime_vertex(&self, h: usize) -> usize {
        self.d.arc(self.planes[h].arcs[0]).dst
    }

    /// Problems found when recomputing configurations along every arc.
    pub fn inconsistencies(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.index.len() != self.configs.len() {
            out.push("two vertices share a configuration".to_string());
        }
        for (i, a) in self.d.arcs().iter().enumerate() {
            let h = self.of_arc[i] as u32;
            let (cs, cd) = (&self.configs[a.src], &self.configs[a.dst]);
            if cs.contains(&h) || cd.len() != cs.len() + 1 || !is_subset(cs, cd) || !cd.contains(&h) {
                out.push(format!("arc {i} ({} -> {}) is inconsistent with its hyperplane", a.src, a.dst));
            }
        }
        out
    }
}

pub(crate) fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j, mut out) = (0, 0, Vec::new());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn union(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

pub(crate) fn is_subset(a: &[u32], b: &[u32]) -> bool {
    a.len() <= b.len() && intersect(a, b).len() == a.len()
}
