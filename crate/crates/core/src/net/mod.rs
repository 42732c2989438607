//! 1-safe Petri nets with set-valued markings.

mod format;

pub use format::{net_to_json, parse_net, write_net, ParseError};

use crate::trace::{Letter, TraceAlphabet};
use serde::Serialize;
use std::collections::{BTreeSet, HashMap, VecDeque};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct PlaceId(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TransitionId(pub usize);

impl TransitionId {
    pub fn letter(self) -> Letter {
        Letter(self.0 as u32)
    }
}

pub type Marking = BTreeSet<PlaceId>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub name: String,
    pub pre: BTreeSet<PlaceId>,
    pub post: BTreeSet<PlaceId>,
}

impl Transition {
    /// Places touched by the transition.
    pub fn neighborhood(&self) -> BTreeSet<PlaceId> {
        self.pre.union(&self.post).copied().collect()
    }

    pub fn is_degenerate(&self) -> bool {
        self.pre == self.post
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetSystem {
    places: Vec<String>,
    transitions: Vec<Transition>,
    initial: Marking,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown place `{0}`")]
    UnknownPlace(String),
    #[error("unknown transition `{0}`")]
    UnknownTransition(String),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("transition `{transition}` is not enabled: {reason}")]
    NotEnabled { transition: String, reason: String },
    #[error("transition `{transition}` is not co-enabled: {reason}")]
    NotCoEnabled { transition: String, reason: String },
    #[error("marking graph exceeds the budget of {0} vertices")]
    BudgetExceeded(usize),
}

/// Name-based construction of a net system.
#[derive(Default, Debug, Clone)]
pub struct NetBuilder {
    places: Vec<String>,
    transitions: Vec<(String, Vec<String>, Vec<String>)>,
    initial: Vec<String>,
}

impl NetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn place(mut self, name: &str) -> Self {
        self.places.push(name.to_string());
        self
    }

    pub fn places(mut self, names: &[&str]) -> Self {
        self.places.extend(names.iter().map(|s| s.to_string()));
        self
    }

    pub fn transition(mut self, name: &str, pre: &[&str], post: &[&str]) -> Self {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        self.transitions.push((name.to_string(), v(pre), v(post)));
        self
    }

    pub fn initial(mut self, names: &[&str]) -> Self {
        self.initial = names.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn build(self) -> Result<NetSystem, NetError> {
        NetSystem::from_names(self.places, self.transitions, self.initial)
    }
}

impl NetSystem {
    pub fn from_names(
        places: Vec<String>,
        transitions: Vec<(String, Vec<String>, Vec<String>)>,
        initial: Vec<String>,
    ) -> Result<Self, NetError> {
        let mut index = HashMap::new();
        for (i, p) in places.iter().enumerate() {
            if index.insert(p.clone(), PlaceId(i)).is_some() {
                return Err(NetError::Duplicate(p.clone()));
            }
        }
        let lookup = |names: &[String]| -> Result<BTreeSet<PlaceId>, NetError> {
            names
                .iter()
                .map(|n| index.get(n).copied().ok_or_else(|| NetError::UnknownPlace(n.clone())))
                .collect()
        };
        let mut seen = BTreeSet::new();
        let mut ts = Vec::new();
        for (name, pre, post) in &transitions {
            if index.contains_key(name) || !seen.insert(name.clone()) {
                return Err(NetError::Duplicate(name.clone()));
            }
            ts.push(Transition { name: name.clone(), pre: lookup(pre)?, post: lookup(post)? });
        }
        let initial = lookup(&initial)?;
        Ok(NetSystem { places, transitions: ts, initial })
    }

    pub fn places(&self) -> &[String] {
        &self.places
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn transition(&self, t: TransitionId) -> &Transition {
        &self.transitions[t.0]
    }

    pub fn transition_ids(&self) -> impl Iterator<Item = TransitionId> {
        (0..self.transitions.len()).map(TransitionId)
    }

    pub fn initial(&self) -> &Marking {
        &self.initial
    }

    pub fn place_name(&self, p: PlaceId) -> &str {
        &self.places[p.0]
    }

    pub fn place_id(&self, name: &str) -> Result<PlaceId, NetError> {
        self.places
            .iter()
            .position(|p| p == name)
            .map(PlaceId)
            .ok_or_else(|| NetError::UnknownPlace(name.to_string()))
    }

    pub fn transition_id(&self, name: &str) -> Result<TransitionId, NetError> {
        self.transitions
            .iter()
            .position(|t| t.name == name)
            .map(TransitionId)
            .ok_or_else(|| NetError::UnknownTransition(name.to_string()))
    }

    pub fn marking(&self, names: &[&str]) -> Result<Marking, NetError> {
        names.iter().map(|n| self.place_id(n)).collect()
    }

    pub fn marking_names(&self, m: &Marking) -> Vec<String> {
        m.iter().map(|&p| self.places[p.0].clone()).collect()
    }

    fn names(&self, ps: impl IntoIterator<Item = PlaceId>) -> String {
        ps.into_iter().map(|p| self.places[p.0].as_str()).collect::<Vec<_>>().join(", ")
    }

    pub fn enabled(&self, m: &Marking, t: TransitionId) -> bool {
        let t = &self.transitions[t.0];
        t.pre.is_subset(m) && t.post.difference(&t.pre).all(|p| !m.contains(p))
    }

    pub fn co_enabled(&self, m: &Marking, t: TransitionId) -> bool {
        let t = &self.transitions[t.0];
        t.post.is_subset(m) && t.pre.difference(&t.post).all(|p| !m.contains(p))
    }

    pub fn fire(&self, m: &Marking, t: TransitionId) -> Result<Marking, NetError> {
        let tr = &self.transitions[t.0];
        if !self.enabled(m, t) {
            let missing: Vec<_> = tr.pre.difference(m).copied().collect();
            let reason = if !missing.is_empty() {
                format!("missing tokens in {}", self.names(missing))
            } else {
                let clash = tr.post.difference(&tr.pre).filter(|p| m.contains(p)).copied();
                format!("contact in {}", self.names(clash))
            };
            return Err(NetError::NotEnabled { transition: tr.name.clone(), reason });
        }
        Ok(m.difference(&tr.pre).chain(tr.post.iter()).copied().collect())
    }

    /// Backward firing: undoes `t`.
    pub fn cofire(&self, m: &Marking, t: TransitionId) -> Result<Marking, NetError> {
        let tr = &self.transitions[t.0];
        if !self.co_enabled(m, t) {
            let missing: Vec<_> = tr.post.difference(m).copied().collect();
            let reason = if !missing.is_empty() {
                format!("missing tokens in {}", self.names(missing))
            } else {
                let clash = tr.pre.difference(&tr.post).filter(|p| m.contains(p)).copied();
                format!("contact in {}", self.names(clash))
            };
            return Err(NetError::NotCoEnabled { transition: tr.name.clone(), reason });
        }
        Ok(m.difference(&tr.post).chain(tr.pre.iter()).copied().collect())
    }

    pub fn independent(&self, a: TransitionId, b: TransitionId) -> bool {
        let (ta, tb) = (&self.transitions[a.0], &self.transitions[b.0]);
        a != b && ta.neighborhood().is_disjoint(&tb.neighborhood())
    }

    /// Transitions as letters, independent iff their neighborhoods are disjoint.
    pub fn alphabet(&self) -> TraceAlphabet {
        let mut alpha = TraceAlphabet::new(self.transitions.iter().map(|t| t.name.clone()))
            .expect("transition names are unique");
        for a in self.transition_ids() {
            for b in self.transition_ids().filter(|b| b.0 > a.0) {
                if self.independent(a, b) {
                    alpha.set_independent(a.letter(), b.letter()).expect("distinct letters");
                }
            }
        }
        alpha
    }

    pub fn degenerate_transitions(&self) -> Vec<TransitionId> {
        self.transition_ids().filter(|&t| self.transitions[t.0].is_degenerate()).collect()
    }

    pub fn marking_graph(&self, max_vertices: usize) -> Result<MarkingGraph, NetError> {
        self.marking_graph_with(max_vertices, false)
    }

    /// The component of the initial marking under firing and, unless
    /// `forward_only`, backward firing.
    pub fn marking_graph_with(
        &self,
        max_vertices: usize,
        forward_only: bool,
    ) -> Result<MarkingGraph, NetError> {
        let mut g = MarkingGraph::default();
        let mut queue = VecDeque::new();
        g.intern(self.initial.clone(), &mut queue);
        while let Some(v) = queue.pop_front() {
            let m = g.markings[v].clone();
            for t in self.transition_ids() {
                if let Ok(next) = self.fire(&m, t) {
                    let w = g.intern(next, &mut queue);
                    g.arcs.push(MarkingArc { src: v, transition: t, dst: w });
                }
                if !forward_only {
                    if let Ok(prev) = self.cofire(&m, t) {
                        g.intern(prev, &mut queue);
                    }
                }
            }
            if g.markings.len() > max_vertices {
                return Err(NetError::BudgetExceeded(max_vertices));
            }
        }
        g.index_arcs();
        Ok(g)
    }

    /// Adds a transition; used for terminal transitions such as the
    /// "hair" of a net.
    pub fn with_transition(
        &self,
        name: &str,
        pre: &[PlaceId],
        post: &[PlaceId],
    ) -> Result<NetSystem, NetError> {
        if self.places.iter().any(|p| p == name) || self.transitions.iter().any(|t| t.name == name) {
            return Err(NetError::Duplicate(name.to_string()));
        }
        let mut out = self.clone();
        out.transitions.push(Transition {
            name: name.to_string(),
            pre: pre.iter().copied().collect(),
            post: post.iter().copied().collect(),
        });
        Ok(out)
    }

    fn fresh(&self, base: &str) -> String {
        let taken = |s: &str| {
            self.places.iter().any(|p| p == s) || self.transitions.iter().any(|t| t.name == s)
        };
        let mut name = base.to_string();
        while taken(&name) {
            name.push('\'');
        }
        name
    }
}

/// Adds one test place `p_a` per transition (in both `•a` and `a•`, and
/// initially marked) and a transition `h` consuming all of them.
pub fn hair_net(net: &NetSystem) -> NetSystem {
    let mut out = net.clone();
    let mut hair_pre = BTreeSet::new();
    for (i, t) in net.transitions.iter().enumerate() {
        let name = out.fresh(&format!("p_{}", t.name));
        let p = PlaceId(out.places.len());
        out.places.push(name);
        out.transitions[i].pre.insert(p);
        out.transitions[i].post.insert(p);
        out.initial.insert(p);
        hair_pre.insert(p);
    }
    let h = out.fresh("h");
    out.transitions.push(Transition { name: h, pre: hair_pre, post: BTreeSet::new() });
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MarkingArc {
    pub src: usize,
    pub transition: TransitionId,
    pub dst: usize,
}

/// Vertex 0 is the initial marking; vertices are numbered in BFS order.
#[derive(Clone, Debug, Default)]
pub struct MarkingGraph {
    pub markings: Vec<Marking>,
    pub arcs: Vec<MarkingArc>,
    index: HashMap<Marking, usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl MarkingGraph {
    fn intern(&mut self, m: Marking, queue: &mut VecDeque<usize>) -> usize {
        if let Some(&v) = self.index.get(&m) {
            return v;
        }
        let v = self.markings.len();
        self.index.insert(m.clone(), v);
        self.markings.push(m);
        queue.push_back(v);
        v
    }

    fn index_arcs(&mut self) {
        self.out = vec![Vec::new(); self.markings.len()];
        self.inc = vec![Vec::new(); self.markings.len()];
        for (i, a) in self.arcs.iter().enumerate() {
            self.out[a.src].push(i);
            self.inc[a.dst].push(i);
        }
    }

    pub fn vertex_of(&self, m: &Marking) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = &MarkingArc> {
        self.out[v].iter().map(|&i| &self.arcs[i])
    }

    pub fn in_arcs(&self, v: usize) -> impl Iterator<Item = &MarkingArc> {
        self.inc[v].iter().map(|&i| &self.arcs[i])
    }

    pub fn successor(&self, v: usize, t: TransitionId) -> Option<usize> {
        self.out_arcs(v).find(|a| a.transition == t).map(|a| a.dst)
    }

    pub fn len(&self) -> usize {
        self.markings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markings.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mutex() -> NetSystem {
        NetBuilder::new()
            .places(&["p", "q", "r"])
            .transition("a", &["p"], &["q"])
            .transition("b", &["p"], &["r"])
            .initial(&["p"])
            .build()
            .unwrap()
    }

    #[test]
    fn fire_and_cofire_are_inverse() {
        let n = mutex();
        let a = n.transition_id("a").unwrap();
        let m1 = n.fire(n.initial(), a).unwrap();
        assert_eq!(n.marking_names(&m1), ["q"]);
        assert_eq!(&n.cofire(&m1, a).unwrap(), n.initial());
        assert!(matches!(n.fire(&m1, a), Err(NetError::NotEnabled { .. })));
    }

    #[test]
    fn contact_blocks_firing() {
        let n = NetBuilder::new()
            .places(&["p", "q"])
            .transition("a", &["p"], &["q"])
            .initial(&["p", "q"])
            .build()
            .unwrap();
        let err = n.fire(n.initial(), TransitionId(0)).unwrap_err();
        assert!(err.to_string().contains("contact"));
    }

    #[test]
    fn marking_graph_of_conflict() {
        let g = mutex().marking_graph(100).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.arcs.len(), 2);
    }

    #[test]
    fn cofire_reaches_markings_behind_the_initial_one() {
        let n = NetBuilder::new()
            .places(&["p", "q"])
            .transition("a", &["p"], &["q"])
            .initial(&["q"])
            .build()
            .unwrap();
        assert_eq!(n.marking_graph(10).unwrap().len(), 2);
        assert_eq!(n.marking_graph_with(10, true).unwrap().len(), 1);
    }

    #[test]
    fn budget() {
        assert_eq!(mutex().marking_graph(2).unwrap_err(), NetError::BudgetExceeded(2));
    }

    #[test]
    fn hairing_adds_one_place_per_transition() {
        let n = mutex();
        let h = hair_net(&n);
        assert_eq!(h.places().len(), 3 + 2);
        assert_eq!(h.transitions().len(), 3);
        assert_eq!(h.initial().len(), 3);
        assert!(h.transitions()[2].post.is_empty());
        // a and b stay dependent, h depends on both
        let alpha = h.alphabet();
        assert!(alpha.independent_pairs().is_empty());
    }

    #[test]
    fn builder_rejects_bad_input() {
        let e = NetBuilder::new().place("p").place("p").build().unwrap_err();
        assert_eq!(e, NetError::Duplicate("p".into()));
        let e = NetBuilder::new().transition("a", &["x"], &[]).build().unwrap_err();
        assert_eq!(e, NetError::UnknownPlace("x".into()));
    }
}
