//! Event structures read off a domain prefix: one event per hyperplane.

use crate::trace::{Letter, Trace, TraceAlphabet};
use crate::unfold::{DomainPrefix, Lattice, Projection};
use serde::Serialize;
use std::collections::{BTreeMap, HashSet, VecDeque};

#[derive(Clone, Debug, Serialize)]
pub struct Event {
    pub id: usize,
    pub label: String,
    /// Target of the hyperplane's arc nearest the root; its interval to
    /// the root has a single maximal arc.
    pub prime_vertex: usize,
    pub prime_trace: Option<Trace>,
    /// Size of the causal past including the event itself.
    pub past: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    Equal,
    /// The row event is strictly below the column event.
    Below,
    Above,
    Concurrent,
    Conflict,
    /// Undecided within the depth bound.
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct EventStructurePrefix {
    pub events: Vec<Event>,
    relation: Vec<Relation>,
    // None when undecided within the bound
    minimal_conflict: Vec<Option<bool>>,
    immediate_preds: Vec<Vec<usize>>,
}

impl EventStructurePrefix {
    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn relation(&self, e: usize, f: usize) -> Relation {
        self.relation[e * self.events.len() + f]
    }

    pub fn leq(&self, e: usize, f: usize) -> bool {
        matches!(self.relation(e, f), Relation::Equal | Relation::Below)
    }

    pub fn concurrent(&self, e: usize, f: usize) -> bool {
        self.relation(e, f) == Relation::Concurrent
    }

    pub fn conflict(&self, e: usize, f: usize) -> bool {
        self.relation(e, f) == Relation::Conflict
    }

    pub fn is_exact(&self, e: usize, f: usize) -> bool {
        self.relation(e, f) != Relation::Unknown
    }

    pub fn minimal_conflict(&self, e: usize, f: usize) -> Option<bool> {
        self.minimal_conflict[e * self.events.len() + f]
    }

    /// Events covered by `f` in the causal order.
    pub fn immediate_predecessors(&self, f: usize) -> &[usize] {
        &self.immediate_preds[f]
    }

    pub fn count(&self, r: Relation) -> usize {
        let n = self.events.len();
        (0..n).flat_map(|e| (e + 1..n).map(move |f| (e, f))).filter(|&(e, f)| self.relation(e, f) == r).count()
    }

    /// Problems with the event-structure axioms on exact pairs.
    pub fn axiom_violations(&self) -> Vec<String> {
        let n = self.events.len();
        let mut out = Vec::new();
        for e in 0..n {
            for f in 0..n {
                let r = self.relation(e, f);
                let mirrored = match r {
                    Relation::Below => Relation::Above,
                    Relation::Above => Relation::Below,
                    x => x,
                };
                if self.relation(f, e) != mirrored {
                    out.push(format!("relation of {e} and {f} is not symmetric"));
                }
                if (e == f) != (r == Relation::Equal) {
                    out.push(format!("relation of {e} and {f} confuses equality"));
                }
                if r == Relation::Conflict {
                    // conflict is inherited upwards
                    for g in 0..n {
                        if self.relation(f, g) == Relation::Below
                            && !matches!(self.relation(e, g), Relation::Conflict | Relation::Unknown)
                        {
                            out.push(format!("{e} # {f} <= {g} but not {e} # {g}"));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Extracts events and their relations.
///
/// `e <= f` iff the hyperplane of `e` is crossed on the way to the prime
/// vertex of `f`. Two incomparable events are concurrent iff their prime
/// vertices have a join, and in conflict otherwise; a join has at most
/// `|past(e) ∪ past(f)|` hyperplanes, so the answer is exact when that
/// union fits within the depth bound.
pub fn extract_events(d: &DomainPrefix) -> EventStructurePrefix {
    let lat = Lattice::new(d);
    let k = d.depth_bound();
    let events: Vec<Event> = lat
        .planes
        .iter()
        .map(|h| {
            let p = lat.prime_vertex(h.id);
            Event {
                id: h.id,
                label: d.label_name(h.label).to_string(),
                prime_vertex: p,
                prime_trace: match &d.vertex(p).projection {
                    Projection::Trace { trace, .. } => Some(trace.clone()),
                    _ => None,
                },
                past: lat.config(p).len(),
            }
        })
        .collect();
    let n = events.len();
    let mut relation = vec![Relation::Unknown; n * n];
    let mut minimal = vec![None; n * n];
    let pasts: Vec<&[u32]> = events.iter().map(|e| lat.config(e.prime_vertex)).collect();
    // past without the event itself, as the vertex just before the prime arc
    let before: Vec<usize> = lat.planes.iter().map(|h| d.arc(h.arcs[0]).src).collect();
    for e in 0..n {
        for f in 0..n {
            let idx = e * n + f;
            relation[idx] = if e == f {
                Relation::Equal
            } else if pasts[f].binary_search(&(e as u32)).is_ok() {
                Relation::Below
            } else if pasts[e].binary_search(&(f as u32)).is_ok() {
                Relation::Above
            } else {
                let union = crate::unfold::lattice_union(pasts[e], pasts[f]);
                if lat.vertex_with(&union).is_some() {
                    Relation::Concurrent
                } else if union.len() <= k {
                    Relation::Conflict
                } else {
                    Relation::Unknown
                }
            };
            if relation[idx] == Relation::Conflict {
                let (be, bf) = (before[e], before[f]);
                let base = crate::unfold::lattice_union(lat.config(be), lat.config(bf));
                minimal[idx] = match lat.vertex_with(&base) {
                    Some(v) if d.is_interior(v) => {
                        let has = |h: usize| d.out_arcs(v).iter().any(|&a| lat.hyperplane_of_arc(a) == h);
                        Some(has(e) && has(f))
                    }
                    Some(_) => None,
                    None if base.len() <= k => Some(false),
                    None => None,
                };
            } else if relation[idx] != Relation::Unknown {
                minimal[idx] = Some(false);
            }
        }
    }
    let immediate_preds = before
        .iter()
        .map(|&q| {
            let mut ps: Vec<usize> = d.in_arcs(q).iter().map(|&a| lat.hyperplane_of_arc(a)).collect();
            ps.sort_unstable();
            ps
        })
        .collect();
    EventStructurePrefix { events, relation, minimal_conflict: minimal, immediate_preds }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LesViolation {
    UnknownLabel(String),
    /// Minimal conflict between equally labelled events.
    Les1 { events: [usize; 2] },
    /// Immediate causality or minimal conflict between independent labels.
    Les2 { events: [usize; 2] },
    /// Dependent labels on concurrent events.
    Les3 { events: [usize; 2] },
}

/// Checks the three trace-labeling axioms on exact pairs and returns the
/// first violation.
pub fn check_les(es: &EventStructurePrefix, alphabet: &TraceAlphabet) -> Result<(), LesViolation> {
    let letters: Vec<Letter> = es
        .events
        .iter()
        .map(|e| alphabet.letter(&e.label).map_err(|_| LesViolation::UnknownLabel(e.label.clone())))
        .collect::<Result<_, _>>()?;
    let n = es.len();
    let dependent = |e: usize, f: usize| !alphabet.independent(letters[e], letters[f]);
    for e in 0..n {
        for f in e + 1..n {
            let mu = es.minimal_conflict(e, f) == Some(true);
            if mu && letters[e] == letters[f] {
                return Err(LesViolation::Les1 { events: [e, f] });
            }
            if mu && !dependent(e, f) {
                return Err(LesViolation::Les2 { events: [e, f] });
            }
            if dependent(e, f) && es.concurrent(e, f) {
                return Err(LesViolation::Les3 { events: [e, f] });
            }
        }
    }
    for f in 0..n {
        for &e in es.immediate_predecessors(f) {
            if !dependent(e, f) {
                return Err(LesViolation::Les2 { events: [e, f] });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NiceViolation {
    DuplicateOutLabel { vertex: usize, label: String },
    OppositeLabels { square: usize },
}

/// Determinism (distinct labels on out-arcs) and concurrency (opposite
/// arcs of squares share labels).
pub fn check_nice_labeling(d: &DomainPrefix) -> Result<(), NiceViolation> {
    for v in 0..d.num_vertices() {
        let mut seen = HashSet::new();
        for &a in d.out_arcs(v) {
            if !seen.insert(d.arc(a).label) {
                return Err(NiceViolation::DuplicateOutLabel { vertex: v, label: d.arc_label(a).to_string() });
            }
        }
    }
    for (i, sq) in d.squares().iter().enumerate() {
        let l = |a: usize| d.arc(sq.arcs[a]).label;
        if l(0) != l(3) || l(1) != l(2) {
            return Err(NiceViolation::OppositeLabels { square: i });
        }
    }
    Ok(())
}

/// Canonical form of the labelled out-ball of radius `r` at `v`:
/// vertices named in BFS order, out-arcs visited by label name.
pub fn out_ball_form(d: &DomainPrefix, v: usize, r: usize) -> Vec<(u32, String, u32)> {
    let mut name: BTreeMap<usize, u32> = BTreeMap::from([(v, 0)]);
    let mut dist = BTreeMap::from([(v, 0usize)]);
    let mut q = VecDeque::from([v]);
    let mut arcs = Vec::new();
    while let Some(x) = q.pop_front() {
        if dist[&x] == r {
            continue;
        }
        let mut outs: Vec<usize> = d.out_arcs(x).to_vec();
        outs.sort_by(|&a, &b| d.arc_label(a).cmp(d.arc_label(b)));
        for a in outs {
            let y = d.arc(a).dst;
            if !name.contains_key(&y) {
                name.insert(y, name.len() as u32);
                dist.insert(y, dist[&x] + 1);
                q.push_back(y);
            }
            arcs.push((name[&x], d.arc_label(a).to_string(), name[&y]));
        }
    }
    arcs.sort();
    arcs
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexEstimate {
    pub radius: usize,
    /// Distinct forms among vertices of depth at most `k`, for each `k`
    /// up to `K - r`.
    pub cumulative: Vec<usize>,
    pub total: usize,
}

/// Counts labelled out-balls of radius `r` over all vertices whose ball
/// lies inside the prefix.
pub fn estimate_index(d: &DomainPrefix, r: usize) -> IndexEstimate {
    let top = d.depth_bound().saturating_sub(r);
    let mut seen = HashSet::new();
    let mut cumulative = Vec::new();
    for k in 0..=top {
        for v in d.level(k) {
            seen.insert(out_ball_form(d, v, r));
        }
        cumulative.push(seen.len());
    }
    IndexEstimate { radius: r, total: seen.len(), cumulative }
}

/// Largest number of arcs leaving a vertex: the degree of the event structure.
pub fn degree(d: &DomainPrefix) -> usize {
    (0..d.num_vertices()).map(|v| d.out_arcs(v).len()).max().unwrap_or(0)
}

/// Alphabet on the labels of a prefix in which two labels are
/// independent iff they span a square somewhere in it.
pub fn domain_alphabet(d: &DomainPrefix) -> TraceAlphabet {
    let mut alpha = TraceAlphabet::new(d.labels().to_vec()).expect("prefix labels are distinct");
    for s in d.squares() {
        let (a, b) = (d.arc(s.arcs[0]).label, d.arc(s.arcs[1]).label);
        if a != b {
            alpha.set_independent(Letter(a as u32), Letter(b as u32)).expect("distinct letters");
        }
    }
    alpha
}
