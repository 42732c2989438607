//! Sanity checks on prefixes: isomorphism, intervals and the median
//! graph conditions that can be decided inside a finite prefix.

use super::lattice::{intersect, is_subset, union};
use super::{DomainPrefix, Lattice};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::{HashMap, VecDeque};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainMismatch {
    pub vertex: usize,
    pub reason: String,
}

/// Label-preserving isomorphism of rooted prefixes. Labels are compared
/// by name and the map is forced by following labelled out-arcs from
/// the roots.
pub fn check_domain_isomorphism(d1: &DomainPrefix, d2: &DomainPrefix) -> Result<Vec<usize>, DomainMismatch> {
    let fail = |vertex, reason: String| Err(DomainMismatch { vertex, reason });
    if d1.depth_bound() != d2.depth_bound() {
        return fail(0, format!("depth bounds {} and {}", d1.depth_bound(), d2.depth_bound()));
    }
    if d1.num_vertices() != d2.num_vertices() || d1.arcs().len() != d2.arcs().len() {
        return fail(
            0,
            format!(
                "sizes differ: {}/{} vertices, {}/{} arcs",
                d1.num_vertices(),
                d2.num_vertices(),
                d1.arcs().len(),
                d2.arcs().len()
            ),
        );
    }
    let mut map = vec![usize::MAX; d1.num_vertices()];
    let mut used = vec![false; d2.num_vertices()];
    map[0] = 0;
    used[0] = true;
    let mut q = VecDeque::from([0]);
    while let Some(v) = q.pop_front() {
        let w = map[v];
        if d1.out_arcs(v).len() != d2.out_arcs(w).len() {
            return fail(v, format!("out-degree {} against {}", d1.out_arcs(v).len(), d2.out_arcs(w).len()));
        }
        for &a in d1.out_arcs(v) {
            let label = d1.arc_label(a);
            let Some(w2) = d2.successor(w, label) else {
                return fail(v, format!("no `{label}` arc on the other side"));
            };
            let v2 = d1.arc(a).dst;
            if map[v2] == usize::MAX {
                if used[w2] {
                    return fail(v2, "two vertices map to one".to_string());
                }
                map[v2] = w2;
                used[w2] = true;
                q.push_back(v2);
            } else if map[v2] != w2 {
                return fail(v2, format!("`{label}` arcs disagree"));
            }
        }
    }
    if let Some(v) = map.iter().position(|&w| w == usize::MAX) {
        return fail(v, "unreachable from the root".to_string());
    }
    Ok(map)
}

#[derive(Clone, Debug, Serialize)]
pub struct Interval {
    pub vertices: Vec<usize>,
    /// False when part of the interval may lie beyond the depth bound.
    pub exact: bool,
}

/// Vertices on geodesics from `u` to `v` inside the prefix. Exact when
/// the join of the endpoints is within the depth bound, since every
/// interval vertex lies between their meet and their join.
pub fn interval(d: &DomainPrefix, u: usize, v: usize) -> Interval {
    let du = d.bfs(u);
    let dv = d.bfs(v);
    let duv = du[v];
    let vertices = (0..d.num_vertices()).filter(|&w| du[w].saturating_add(dv[w]) == duv).collect();
    let lat = Lattice::new(d);
    let exact = union(lat.config(u), lat.config(v)).len() <= d.depth_bound();
    Interval { vertices, exact }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum MedianViolation {
    /// Two vertices with a common successor but no common predecessor.
    Quadrangle { a: usize, b: usize, sink: usize },
    /// More than two common neighbors.
    K23 { a: usize, b: usize },
    /// Three pairwise commuting arcs whose cube does not close.
    Cube { source: usize },
    /// A triple with several medians, or none although one must exist.
    Median { triple: [usize; 3], found: usize },
    /// Graph distance disagrees with the hyperplane count, or a
    /// geodesic crosses a hyperplane twice.
    Geodesic { a: usize, b: usize },
    /// The geodesic interval differs from the vertices between meet and join.
    Interval { a: usize, b: usize },
    /// A directed path that is not a geodesic.
    DirectedPath { a: usize, b: usize },
    Configuration(String),
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct MedianReport {
    pub quadrangles_checked: usize,
    pub cubes_checked: usize,
    pub triples_checked: usize,
    pub pairs_checked: usize,
    pub violations: Vec<MedianViolation>,
}

impl MedianReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the quadrangle, K2,3 and cube conditions everywhere, plus
/// median uniqueness and geodesic hyperplane crossing on `samples`
/// random triples (seeded).
pub fn validate_median(d: &DomainPrefix, samples: usize, seed: u64) -> MedianReport {
    let mut r = MedianReport::default();
    let lat = Lattice::new(d);
    r.violations.extend(lat.inconsistencies().into_iter().map(MedianViolation::Configuration));

    // quadrangle: in-neighbors of a common successor share a predecessor
    for w in 0..d.num_vertices() {
        let ins: Vec<usize> = d.in_arcs(w).iter().map(|&a| d.arc(a).src).collect();
        for (i, &a) in ins.iter().enumerate() {
            for &b in &ins[i + 1..] {
                r.quadrangles_checked += 1;
                let pa: Vec<usize> = d.in_arcs(a).iter().map(|&x| d.arc(x).src).collect();
                if !d.in_arcs(b).iter().any(|&x| pa.contains(&d.arc(x).src)) {
                    r.violations.push(MedianViolation::Quadrangle { a, b, sink: w });
                }
            }
        }
    }

    // K2,3: count common neighbors over vertex pairs at distance two
    for v in 0..d.num_vertices() {
        let mut common: HashMap<usize, usize> = HashMap::new();
        for x in d.neighbors(v) {
            for y in d.neighbors(x) {
                if y > v {
                    *common.entry(y).or_insert(0) += 1;
                }
            }
        }
        for (y, n) in common {
            if n > 2 {
                r.violations.push(MedianViolation::K23 { a: v, b: y });
            }
        }
    }

    // cube: three pairwise square-spanning out-arcs close up one level later
    let sink_of = |x: usize, y: usize| -> Option<usize> {
        d.out_arcs(x).iter().map(|&a| d.arc(a).dst).find(|w| d.out_arcs(y).iter().any(|&b| d.arc(b).dst == *w))
    };
    for u in 0..d.num_vertices() {
        if d.depth(u) + 3 > d.depth_bound() {
            continue;
        }
        let succ: Vec<usize> = d.out_arcs(u).iter().map(|&a| d.arc(a).dst).collect();
        for i in 0..succ.len() {
            for j in i + 1..succ.len() {
                for k in j + 1..succ.len() {
                    let (a, b, c) = (succ[i], succ[j], succ[k]);
                    let (Some(ab), Some(ac), Some(bc)) = (sink_of(a, b), sink_of(a, c), sink_of(b, c)) else {
                        continue;
                    };
                    r.cubes_checked += 1;
                    let top = sink_of(ab, ac).filter(|&t| d.out_arcs(bc).iter().any(|&x| d.arc(x).dst == t));
                    if top.is_none() {
                        r.violations.push(MedianViolation::Cube { source: u });
                    }
                }
            }
        }
    }

    // sampled triples: unique medians, distances equal hyperplane counts
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let verts: Vec<usize> = (0..d.num_vertices()).collect();
    for _ in 0..samples {
        let t: Vec<usize> = (0..3).map(|_| *verts.choose(&mut rng).expect("non-empty prefix")).collect();
        let dist: Vec<Vec<usize>> = t.iter().map(|&x| d.bfs(x)).collect();
        r.triples_checked += 1;
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            r.pairs_checked += 1;
            if dist[i][t[j]] != lat.distance(t[i], t[j]) {
                r.violations.push(MedianViolation::Geodesic { a: t[i], b: t[j] });
            }
            if !geodesic_crosses_once(d, &lat, &dist[i], t[i], t[j]) {
                r.violations.push(MedianViolation::Geodesic { a: t[i], b: t[j] });
            }
            let (a, b) = (t[i], t[j]);
            if union(lat.config(a), lat.config(b)).len() <= d.depth_bound() {
                let meet = intersect(lat.config(a), lat.config(b));
                let join = union(lat.config(a), lat.config(b));
                let between = |w: usize| is_subset(&meet, lat.config(w)) && is_subset(lat.config(w), &join);
                let on_geodesic = |w: usize| dist[i][w].saturating_add(dist[j][w]) == dist[i][b];
                if (0..d.num_vertices()).any(|w| between(w) != on_geodesic(w)) {
                    r.violations.push(MedianViolation::Interval { a, b });
                }
            }
            // every directed path from x up to y has length depth(y) - depth(x)
            for (x, y) in [(i, j), (j, i)] {
                if lat.below(t[x], t[y]) && d.depth(t[y]) - d.depth(t[x]) != dist[x][t[y]] {
                    r.violations.push(MedianViolation::DirectedPath { a: t[x], b: t[y] });
                }
            }
        }
        // a random directed walk up from the first vertex is a geodesic
        let mut y = t[0];
        while let Some(&a) = d.out_arcs(y).choose(&mut rng) {
            y = d.arc(a).dst;
        }
        if dist[0][y] != d.depth(y) - d.depth(t[0]) {
            r.violations.push(MedianViolation::DirectedPath { a: t[0], b: y });
        }
        let on = |i: usize, j: usize, m: usize| dist[i][m] + dist[j][m] == dist[i][t[j]];
        let found = (0..d.num_vertices()).filter(|&m| on(0, 1, m) && on(0, 2, m) && on(1, 2, m)).count();
        // the median's configuration is the majority vote of the three
        let (c0, c1, c2) = (lat.config(t[0]), lat.config(t[1]), lat.config(t[2]));
        let all = union(&union(c0, c1), c2);
        let majority = all
            .iter()
            .filter(|h| [c0, c1, c2].iter().filter(|c| c.binary_search(h).is_ok()).count() >= 2)
            .count();
        let inside = majority <= d.depth_bound();
        if found > 1 || (inside && found != 1) {
            r.violations.push(MedianViolation::Median { triple: [t[0], t[1], t[2]], found });
        }
    }
    r
}

/// Walks one BFS geodesic back from `b` to `a` and checks that no
/// hyperplane is crossed twice.
fn geodesic_crosses_once(d: &DomainPrefix, lat: &Lattice, dist_a: &[usize], a: usize, b: usize) -> bool {
    let mut seen = std::collections::HashSet::new();
    let mut v = b;
    while v != a {
        let step = d
            .out_arcs(v)
            .iter()
            .map(|&x| (x, d.arc(x).dst))
            .chain(d.in_arcs(v).iter().map(|&x| (x, d.arc(x).src)))
            .find(|&(_, w)| dist_a[w] + 1 == dist_a[v]);
        let Some((arc, w)) = step else { return false };
        if !seen.insert(lat.hyperplane_of_arc(arc)) {
            return false;
        }
        v = w;
    }
    true
}
