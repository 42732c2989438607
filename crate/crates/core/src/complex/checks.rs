//! Local conditions: nonpositive curvature, specialness and trace labelings.

use super::{hyperplanes, ComplexError, EdgeEnd, EdgeId, End, SquareComplex, SquareId, VertexId};
use crate::trace::{Letter, TraceAlphabet};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NpcViolation {
    /// A corner joins an edge end to itself.
    LinkLoop { vertex: VertexId, square: SquareId },
    /// Two corners join the same pair of edge ends.
    ParallelLinkEdges { vertex: VertexId, squares: [SquareId; 2] },
    LinkTriangle { vertex: VertexId, ends: [EdgeEnd; 3] },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct NpcReport {
    pub violations: Vec<NpcViolation>,
}

impl NpcReport {
    pub fn is_npc(&self) -> bool {
        self.violations.is_empty()
    }
}

fn pair(a: EdgeEnd, b: EdgeEnd) -> (EdgeEnd, EdgeEnd) {
    (a.min(b), a.max(b))
}

/// Corners grouped by vertex: unordered end pair -> squares using it.
fn corners_by_vertex(c: &SquareComplex) -> Vec<BTreeMap<(EdgeEnd, EdgeEnd), Vec<SquareId>>> {
    let mut out = vec![BTreeMap::new(); c.num_vertices()];
    for s in c.square_ids() {
        for i in 0..4 {
            let (v, x, y) = c.corner(s, i);
            out[v.0].entry(pair(x, y)).or_insert_with(Vec::new).push(s);
        }
    }
    out
}

/// Links must be simple graphs without triangles.
pub fn check_npc(c: &SquareComplex) -> NpcReport {
    let mut report = NpcReport::default();
    for (v, corners) in corners_by_vertex(c).into_iter().enumerate() {
        let v = VertexId(v);
        let mut adj: HashMap<EdgeEnd, BTreeSet<EdgeEnd>> = HashMap::new();
        for (&(x, y), squares) in &corners {
            if x == y {
                report.violations.push(NpcViolation::LinkLoop { vertex: v, square: squares[0] });
                continue;
            }
            if squares.len() > 1 {
                report
                    .violations
                    .push(NpcViolation::ParallelLinkEdges { vertex: v, squares: [squares[0], squares[1]] });
            }
            adj.entry(x).or_default().insert(y);
            adj.entry(y).or_default().insert(x);
        }
        for &(x, y) in corners.keys() {
            if x == y {
                continue;
            }
            if let Some(z) = adj[&x].intersection(&adj[&y]).find(|&&z| z > y) {
                report.violations.push(NpcViolation::LinkTriangle { vertex: v, ends: [x, y, *z] });
            }
        }
    }
    report
}

/// Two distinct edge ends at a vertex that are not consecutive in any square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Osculation {
    pub vertex: VertexId,
    pub ends: [EdgeEnd; 2],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InterOsculation {
    pub hyperplanes: (usize, usize),
    pub crossing: SquareId,
    pub osculation: Osculation,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SpecialnessReport {
    pub hyperplane_count: usize,
    pub one_sided: Vec<usize>,
    pub self_intersections: Vec<(usize, SquareId)>,
    pub direct_self_osculations: Vec<(usize, Osculation)>,
    /// Informative only; does not affect specialness.
    pub indirect_self_osculations: Vec<(usize, Osculation)>,
    pub inter_osculations: Vec<InterOsculation>,
}

impl SpecialnessReport {
    pub fn is_special(&self) -> bool {
        self.one_sided.is_empty()
            && self.self_intersections.is_empty()
            && self.direct_self_osculations.is_empty()
            && self.inter_osculations.is_empty()
    }

    /// A human-readable reason for failure, if any.
    pub fn witness(&self, c: &SquareComplex) -> Option<String> {
        let end = |x: EdgeEnd| {
            let dir = if x.end == End::Src { "out" } else { "in" };
            format!("{}({dir})", c.edge(x.edge).name)
        };
        if let Some(h) = self.one_sided.first() {
            return Some(format!("hyperplane {h} is one-sided"));
        }
        if let Some((h, s)) = self.self_intersections.first() {
            return Some(format!("hyperplane {h} self-intersects in square {}", s.0));
        }
        if let Some((h, o)) = self.direct_self_osculations.first() {
            return Some(format!(
                "hyperplane {h} directly self-osculates at {} via {} and {}",
                c.vertex_name(o.vertex),
                end(o.ends[0]),
                end(o.ends[1])
            ));
        }
        self.inter_osculations.first().map(|io| {
            format!(
                "hyperplanes {} and {} cross in square {} and osculate at {} via {} and {}",
                io.hyperplanes.0,
                io.hyperplanes.1,
                io.crossing.0,
                c.vertex_name(io.osculation.vertex),
                end(io.osculation.ends[0]),
                end(io.osculation.ends[1])
            )
        })
    }
}

/// Hyperplane pathologies. Direct and indirect self-osculation are
/// told apart with each hyperplane's own transverse orientation, so the
/// stored edge orientation plays no role.
pub fn check_special(c: &SquareComplex) -> SpecialnessReport {
    let hp = hyperplanes(c);
    let mut r = SpecialnessReport { hyperplane_count: hp.len(), ..Default::default() };
    r.one_sided = hp.planes.iter().filter(|h| !h.two_sided).map(|h| h.id).collect();

    let mut crossing: BTreeMap<(usize, usize), SquareId> = BTreeMap::new();
    for s in c.square_ids() {
        let d = &c.square(s).darts;
        let mut hit = false;
        for i in 0..4 {
            let (h, k) = (hp.of(d[i].edge), hp.of(d[(i + 1) % 4].edge));
            if h == k {
                hit = true;
            } else {
                crossing.entry((h.min(k), h.max(k))).or_insert(s);
            }
        }
        if hit {
            r.self_intersections.push((hp.of(d[0].edge).min(hp.of(d[1].edge)), s));
        }
    }

    let corners = corners_by_vertex(c);
    let mut seen_pairs = BTreeSet::new();
    for (v, ends) in c.ends_by_vertex().into_iter().enumerate() {
        for (i, &x) in ends.iter().enumerate() {
            for &y in &ends[i + 1..] {
                if corners[v].contains_key(&pair(x, y)) {
                    continue;
                }
                let osc = Osculation { vertex: VertexId(v), ends: [x, y] };
                let (h, k) = (hp.of(x.edge), hp.of(y.edge));
                if h == k {
                    if !hp.planes[h].two_sided {
                        continue;
                    }
                    // does each end point away from v along the hyperplane's orientation?
                    let away = |z: EdgeEnd| (z.end == End::Src) == hp.agrees(z.edge);
                    if away(x) == away(y) {
                        r.direct_self_osculations.push((h, osc));
                    } else {
                        r.indirect_self_osculations.push((h, osc));
                    }
                } else {
                    let key = (h.min(k), h.max(k));
                    if let Some(&sq) = crossing.get(&key) {
                        if seen_pairs.insert(key) {
                            r.inter_osculations.push(InterOsculation {
                                hyperplanes: key,
                                crossing: sq,
                                osculation: osc,
                            });
                        }
                    }
                }
            }
        }
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TlViolation {
    /// Opposite edges of a square carry different labels.
    OppositeLabels { square: SquareId, edges: [EdgeId; 2] },
    /// Two edges leaving the same vertex share a label.
    SameOutLabel { vertex: VertexId, edges: [EdgeId; 2] },
    /// Two edges entering the same vertex share a label.
    SameInLabel { vertex: VertexId, edges: [EdgeId; 2] },
    /// Incident ends whose labels are independent exactly when they do
    /// not span a square corner (or the converse).
    Independence { vertex: VertexId, ends: [EdgeEnd; 2], independent: bool },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TraceLabelingReport {
    pub violations: Vec<TlViolation>,
}

impl TraceLabelingReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the edge labels (colors, or names when uncolored) against a
/// trace alphabet: opposite edges agree, labels at a vertex are
/// deterministic in each direction, and two incident ends carry
/// independent labels exactly when they are consecutive in a square.
pub fn check_trace_labeling(
    c: &SquareComplex,
    alphabet: &TraceAlphabet,
) -> Result<TraceLabelingReport, ComplexError> {
    let labels: Vec<Letter> =
        c.edge_ids().map(|e| alphabet.letter(c.label(e))).collect::<Result<_, _>>()?;
    let mut r = TraceLabelingReport::default();
    for s in c.square_ids() {
        let d = &c.square(s).darts;
        for (x, y) in [(d[0].edge, d[2].edge), (d[1].edge, d[3].edge)] {
            if labels[x.0] != labels[y.0] {
                r.violations.push(TlViolation::OppositeLabels { square: s, edges: [x, y] });
            }
        }
    }
    let corners = corners_by_vertex(c);
    for (v, ends) in c.ends_by_vertex().into_iter().enumerate() {
        let vertex = VertexId(v);
        for (i, &x) in ends.iter().enumerate() {
            for &y in &ends[i + 1..] {
                let (a, b) = (labels[x.edge.0], labels[y.edge.0]);
                if x.end == y.end && a == b && x.edge != y.edge {
                    let edges = [x.edge, y.edge];
                    r.violations.push(if x.end == End::Src {
                        TlViolation::SameOutLabel { vertex, edges }
                    } else {
                        TlViolation::SameInLabel { vertex, edges }
                    });
                }
                let independent = alphabet.independent(a, b);
                if independent != corners[v].contains_key(&pair(x, y)) {
                    r.violations.push(TlViolation::Independence { vertex, ends: [x, y], independent });
                }
            }
        }
    }
    Ok(r)
}

/// Colors every edge by its hyperplane (`H0`, `H1`, ...) and returns the
/// alphabet in which two hyperplanes are independent iff they cross.
pub fn canonical_hyperplane_labeling(c: &SquareComplex) -> (SquareComplex, TraceAlphabet) {
    let hp = hyperplanes(c);
    let names: Vec<String> = (0..hp.len()).map(|h| format!("H{h}")).collect();
    let mut alpha = TraceAlphabet::new(names.clone()).expect("distinct names");
    for (h, k) in hp.crossing_pairs(c) {
        if h != k {
            alpha.set_independent(Letter(h as u32), Letter(k as u32)).expect("distinct letters");
        }
    }
    let colors: Vec<Option<String>> = c.edge_ids().map(|e| Some(names[hp.of(e)].clone())).collect();
    (c.with_colors(&colors), alpha)
}
