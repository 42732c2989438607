use super::{DomainPrefix, PrefixBuilder, Projection, UnfoldError};
use crate::complex::{EdgeId, SourceCorner, SquareComplex, VertexId};
use crate::net::NetSystem;
use crate::trace::Trace;
use crate::uf::UnionFind;
use std::collections::HashMap;

/// Depth-`k` prefix of the principal filter of a lift of `base` in the
/// universal cover of `c`, built level by level.
///
/// A vertex at level `k + 1` is a class of pairs (parent at level `k`,
/// out-edge of its projection). Two pairs are identified exactly when
/// they are the far sides of a lifted square whose source sits at level
/// `k - 1`; in a nonpositively curved complex no other identification
/// can ever be forced later.
pub fn unfold_complex(
    c: &SquareComplex,
    base: VertexId,
    k: usize,
    budget: usize,
) -> Result<DomainPrefix, UnfoldError> {
    if let Some(s) = c.inadmissible_square() {
        return Err(UnfoldError::NotAdmissible(s.0));
    }
    if base.0 >= c.num_vertices() {
        return Err(UnfoldError::UnknownBase(base.0.to_string()));
    }
    let mut b = PrefixBuilder::new(k, Vec::new());
    let edge_label: Vec<usize> = c.edge_ids().map(|e| b.label(c.label(e))).collect();
    let mut out_edges: Vec<Vec<EdgeId>> = vec![Vec::new(); c.num_vertices()];
    for e in c.edge_ids() {
        out_edges[c.edge(e).src.0].push(e);
    }
    let mut corners: Vec<Vec<SourceCorner>> = vec![Vec::new(); c.num_vertices()];
    for s in c.square_ids() {
        let sc = c.source_corner(s).expect("admissible squares have a source corner");
        corners[sc.vertex.0].push(sc);
    }

    let proj = |b: &PrefixBuilder, v: usize| match b.p.vertices[v].projection {
        Projection::Vertex(x) => x,
        _ => unreachable!("complex prefixes project to vertices"),
    };
    let root = b.add_vertex(0, Projection::Vertex(base), false);
    let mut child: HashMap<(usize, EdgeId), usize> = HashMap::new();
    let mut prev: Vec<usize> = Vec::new();
    let mut level = vec![root];
    for depth in 0..k {
        let mut cands: Vec<(usize, EdgeId)> = Vec::new();
        let mut cand_index: HashMap<(usize, EdgeId), usize> = HashMap::new();
        for &u in &level {
            for &e in &out_edges[proj(&b, u).0] {
                cand_index.insert((u, e), cands.len());
                cands.push((u, e));
            }
        }
        let mut uf = UnionFind::new(cands.len());
        for &x in &prev {
            for sc in &corners[proj(&b, x).0] {
                let u1 = child[&(x, sc.out[0])];
                let u2 = child[&(x, sc.out[1])];
                uf.union(cand_index[&(u1, sc.far[0])], cand_index[&(u2, sc.far[1])]);
            }
        }
        let mut vertex_of_class: HashMap<usize, usize> = HashMap::new();
        let mut next = Vec::new();
        for (i, &(u, e)) in cands.iter().enumerate() {
            let r = uf.find(i);
            let v = *vertex_of_class.entry(r).or_insert_with(|| {
                next.push(b.num_vertices());
                b.add_vertex(depth + 1, Projection::Vertex(c.edge(e).dst), false)
            });
            debug_assert_eq!(proj(&b, v), c.edge(e).dst);
            b.add_arc(u, v, edge_label[e.0], Some(e));
            child.insert((u, e), v);
        }
        if b.num_vertices() > budget {
            return Err(UnfoldError::BudgetExceeded(budget));
        }
        prev = std::mem::replace(&mut level, next);
    }
    Ok(b.finish())
}

/// Domain of firing traces of length at most `k`: vertices are traces
/// in normal form, with an arc `s -> s·a` for every enabled transition.
pub fn unfold_net(net: &NetSystem, k: usize, budget: usize) -> Result<DomainPrefix, UnfoldError> {
    let alpha = net.alphabet();
    let labels = net.transitions().iter().map(|t| t.name.clone()).collect();
    let mut b = PrefixBuilder::new(k, labels);
    let root = b.add_vertex(0, Projection::Trace { trace: Trace::empty(), marking: net.initial().clone() }, false);
    let mut index: HashMap<Trace, usize> = HashMap::new();
    let mut level = vec![root];
    for depth in 0..k {
        let mut next = Vec::new();
        for &u in &level {
            let Projection::Trace { trace, marking } = b.p.vertices[u].projection.clone() else {
                unreachable!()
            };
            for t in net.transition_ids() {
                let Ok(m) = net.fire(&marking, t) else { continue };
                let s = alpha.extend(&trace, t.letter());
                let v = match index.get(&s) {
                    Some(&v) => v,
                    None => {
                        let v = b.add_vertex(depth + 1, Projection::Trace { trace: s.clone(), marking: m }, false);
                        index.insert(s, v);
                        next.push(v);
                        v
                    }
                };
                b.add_arc(u, v, t.0, None);
            }
        }
        if b.num_vertices() > budget {
            return Err(UnfoldError::BudgetExceeded(budget));
        }
        level = next;
    }
    Ok(b.finish())
}

/// Adds a pendant arc labelled `h` at every interior vertex.
pub fn hair_domain(d: &DomainPrefix) -> DomainPrefix {
    let mut b = PrefixBuilder::new(d.depth_bound(), d.labels().to_vec());
    for v in d.vertices() {
        b.add_vertex(v.depth, v.projection.clone(), v.hair);
    }
    for a in d.arcs() {
        b.add_arc(a.src, a.dst, a.label, a.base_edge);
    }
    let mut name = String::from("h");
    while d.labels().contains(&name) {
        name.push('\'');
    }
    let h = b.label(&name);
    for v in 0..d.num_vertices() {
        if d.is_interior(v) {
            let w = b.add_vertex(d.depth(v) + 1, Projection::None, true);
            b.add_arc(v, w, h, None);
        }
    }
    b.finish()
}
