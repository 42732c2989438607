use super::{ComplexBuilder, Dart, EdgeId, SquareComplex, VertexId};
use crate::net::{MarkingGraph, NetError, NetSystem, TransitionId};
use std::collections::HashMap;

/// The square complex of a net system together with the data it was
/// built from.
#[derive(Clone, Debug)]
pub struct XnComplex {
    pub complex: SquareComplex,
    pub graph: MarkingGraph,
    /// Transition labelling each edge; edge colors carry the same names.
    pub edge_transition: Vec<TransitionId>,
}

impl XnComplex {
    pub fn initial_vertex(&self) -> VertexId {
        VertexId(0)
    }
}

/// Vertices are the markings of the marking graph (`m0` is the initial
/// one), edges its arcs, and there is one square for every marking `m`
/// and every pair of independent transitions both enabled at `m`.
pub fn build_xn(net: &NetSystem, budget: usize) -> Result<XnComplex, NetError> {
    let graph = net.marking_graph(budget)?;
    let mut b = ComplexBuilder::new();
    for v in 0..graph.len() {
        b.vertex(&format!("m{v}")).expect("fresh vertex");
    }
    let mut edge_of = HashMap::new();
    let mut edge_transition = Vec::new();
    for a in &graph.arcs {
        let t = net.transition(a.transition);
        let e = b
            .edge(&format!("{}_m{}", t.name, a.src), VertexId(a.src), VertexId(a.dst), Some(t.name.clone()))
            .expect("fresh edge");
        edge_of.insert((a.src, a.transition), e);
        edge_transition.push(a.transition);
    }
    let e = |m: usize, t: TransitionId| -> EdgeId { edge_of[&(m, t)] };
    for m in 0..graph.len() {
        let enabled: Vec<TransitionId> = graph.out_arcs(m).map(|a| a.transition).collect();
        for (i, &a) in enabled.iter().enumerate() {
            for &bt in &enabled[i + 1..] {
                if !net.independent(a, bt) {
                    continue;
                }
                let m1 = graph.successor(m, a).expect("enabled");
                let m2 = graph.successor(m, bt).expect("enabled");
                b.square([Dart::fwd(e(m, a)), Dart::fwd(e(m1, bt)), Dart::bwd(e(m2, a)), Dart::bwd(e(m, bt))])
                    .expect("independent transitions commute");
            }
        }
    }
    Ok(XnComplex { complex: b.build(), graph, edge_transition })
}
