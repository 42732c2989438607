//! Structural diagnostics on domain prefixes: clusters of spheres and
//! their diameters, end types, grids, crossing-graph bicliques, and the
//! plane domain of Badouel, Darondeau and Raoult.
//!
//! Every growth statement these functions support is evidence over the
//! computed range only; reports carry the levels and exactness flags.

mod bdr;
mod grid;

pub use bdr::{bdr_generate, bdr_steps};
pub use grid::{
    biclique_thinness, flat_grid_max, isometric_grid_search, Biclique, DirectedGrid, GridReport, IsometricGrid,
};

use crate::uf::UnionFind;
use crate::unfold::{lattice_intersect, DomainPrefix, Lattice};
use serde::Serialize;
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyzeError {
    #[error("level {level} needs depth {needed}, prefix has {bound}")]
    InsufficientDepth { level: usize, needed: usize, bound: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct Cluster {
    pub level: usize,
    /// Vertices at depth `level + 1` of one far component.
    pub frontier: Vec<usize>,
    pub end_component_id: usize,
    /// The component reaches the depth bound, so it might merge with
    /// another one beyond the prefix.
    pub touches_bound: bool,
}

/// Clusters of level `k`: components of the vertices deeper than `k`,
/// each cut down to its vertices at depth `k + 1`. Empty when `k + 1`
/// exceeds the depth bound.
pub fn clusters(d: &DomainPrefix, k: usize) -> Vec<Cluster> {
    if k + 1 > d.depth_bound() {
        return Vec::new();
    }
    let n = d.num_vertices();
    let mut uf = UnionFind::new(n);
    for a in d.arcs() {
        if d.depth(a.src) > k {
            uf.union(a.src, a.dst);
        }
    }
    let mut id_of_root: HashMap<usize, usize> = HashMap::new();
    let mut out: Vec<Cluster> = Vec::new();
    for v in 0..n {
        if d.depth(v) != k + 1 {
            continue;
        }
        let r = uf.find(v);
        let id = *id_of_root.entry(r).or_insert_with(|| {
            out.push(Cluster { level: k, frontier: Vec::new(), end_component_id: out.len(), touches_bound: false });
            out.len() - 1
        });
        out[id].frontier.push(v);
    }
    for v in 0..n {
        if d.depth(v) == d.depth_bound() && d.depth(v) > k {
            if let Some(&id) = id_of_root.get(&uf.find(v)) {
                out[id].touches_bound = true;
            }
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LevelReport {
    pub k: usize,
    pub clusters: usize,
    pub sizes: Vec<usize>,
    pub diameters: Vec<usize>,
    pub max_diameter: usize,
    /// Cluster membership cannot change beyond the prefix and every
    /// diameter is exact rather than a lower bound.
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClusterReport {
    pub depth_bound: usize,
    pub levels: Vec<LevelReport>,
}

impl ClusterReport {
    pub fn level(&self, k: usize) -> Option<&LevelReport> {
        self.levels.iter().find(|l| l.k == k)
    }

    /// Max diameters strictly increase over `range` and are all exact.
    pub fn strictly_increasing(&self, range: std::ops::RangeInclusive<usize>) -> bool {
        let ds: Vec<&LevelReport> = range.filter_map(|k| self.level(k)).collect();
        ds.iter().all(|l| l.exact) && ds.windows(2).all(|w| w[0].max_diameter < w[1].max_diameter)
    }
}

// exhaustive pairwise comparison above this many pairs is skipped
const PAIR_LIMIT: usize = 100_000_000;

/// Diameter of a set of same-depth vertices, measured by hyperplane
/// counts. Returns the value and whether it is exact.
fn frontier_diameter(lat: &Lattice, f: &[usize]) -> (usize, bool) {
    if f.len() < 2 {
        return (0, true);
    }
    let dist = |x: usize, y: usize| lat.distance(x, y);
    let upper = 2 * lat.config(f[0]).len();
    let mut best = 0;
    let mut x = f[0];
    // a few farthest-point sweeps usually hit the upper bound at once
    for _ in 0..4 {
        let (y, dy) = f.iter().map(|&y| (y, dist(x, y))).max_by_key(|&(y, dy)| (dy, std::cmp::Reverse(y))).unwrap();
        if dy <= best && best > 0 {
            break;
        }
        best = best.max(dy);
        if best == upper {
            return (best, true);
        }
        x = y;
    }
    if f.len().saturating_mul(f.len()) > PAIR_LIMIT {
        return (best, false);
    }
    for (i, &x) in f.iter().enumerate() {
        for &y in &f[i + 1..] {
            best = best.max(dist(x, y));
        }
    }
    (best, true)
}

/// Per level `k < K`: clusters, their frontier diameters and the maximum.
///
/// A level is exact when at most one of its components reaches the
/// bound: components that stay inside are complete, and two components
/// could only merge through vertices beyond the bound. A small diameter
/// alone says nothing about such merges.
pub fn cluster_diameters(d: &DomainPrefix) -> ClusterReport {
    let lat = Lattice::new(d);
    cluster_diameters_with(d, &lat)
}

pub fn cluster_diameters_with(d: &DomainPrefix, lat: &Lattice) -> ClusterReport {
    let k_max = d.depth_bound();
    let mut levels = Vec::new();
    for k in 0..k_max {
        let cs = clusters(d, k);
        let mut exact = true;
        let mut diameters = Vec::new();
        for c in &cs {
            let (diam, ok) = frontier_diameter(lat, &c.frontier);
            exact &= ok;
            diameters.push(diam);
        }
        let max_diameter = diameters.iter().copied().max().unwrap_or(0);
        let touching = cs.iter().filter(|c| c.touches_bound).count();
        exact &= touching <= 1;
        levels.push(LevelReport {
            k,
            clusters: cs.len(),
            sizes: cs.iter().map(|c| c.frontier.len()).collect(),
            diameters,
            max_diameter,
            exact,
        });
    }
    ClusterReport { depth_bound: k_max, levels }
}

/// Canonical form of a recent past: vertex flags (is a frontier point)
/// and arcs, in label-driven BFS order from the meet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct EndForm {
    pub frontier: Vec<bool>,
    pub arcs: Vec<(u32, String, u32)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EndType {
    pub cluster: usize,
    pub meet: usize,
    pub frontier_size: usize,
    pub past_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EndTypeCensus {
    pub level: usize,
    /// Distinct recent-past forms among the clusters of this level.
    pub count: usize,
    /// One cluster per distinct form.
    pub representatives: Vec<EndType>,
    #[serde(skip)]
    pub forms: Vec<EndForm>,
}

/// Recent past of a cluster: the union of the intervals from the meet
/// of its frontier to each frontier point, as a labelled digraph.
fn recent_past(d: &DomainPrefix, lat: &Lattice, c: &Cluster) -> (usize, EndForm) {
    let mut meet: Vec<u32> = lat.config(c.frontier[0]).to_vec();
    for &x in &c.frontier[1..] {
        meet = lattice_intersect(&meet, lat.config(x));
    }
    let m = lat.vertex_with(&meet).expect("prefixes are closed under meets");
    let above_m = |y: usize| lattice_intersect(&meet, lat.config(y)).len() == meet.len();
    let mut inside: HashSet<usize> = c.frontier.iter().copied().collect();
    let mut q: VecDeque<usize> = c.frontier.iter().copied().collect();
    while let Some(y) = q.pop_front() {
        for &a in d.in_arcs(y) {
            let x = d.arc(a).src;
            if !inside.contains(&x) && above_m(x) {
                inside.insert(x);
                q.push_back(x);
            }
        }
    }
    let frontier: HashSet<usize> = c.frontier.iter().copied().collect();
    let mut name: HashMap<usize, u32> = HashMap::from([(m, 0)]);
    let mut flags = vec![frontier.contains(&m)];
    let mut arcs = Vec::new();
    let mut q = VecDeque::from([m]);
    while let Some(x) = q.pop_front() {
        let mut outs: Vec<usize> = d.out_arcs(x).iter().copied().filter(|&a| inside.contains(&d.arc(a).dst)).collect();
        outs.sort_by(|&a, &b| d.arc_label(a).cmp(d.arc_label(b)));
        for a in outs {
            let y = d.arc(a).dst;
            let ny = *name.entry(y).or_insert_with(|| {
                flags.push(frontier.contains(&y));
                q.push_back(y);
                flags.len() as u32 - 1
            });
            arcs.push((name[&x], d.arc_label(a).to_string(), ny));
        }
    }
    arcs.sort();
    (m, EndForm { frontier: flags, arcs })
}

/// Number of distinct recent-past forms among the clusters of level `k`.
pub fn end_type_census(d: &DomainPrefix, k: usize) -> Result<EndTypeCensus, AnalyzeError> {
    let lat = Lattice::new(d);
    end_type_census_with(d, &lat, k)
}

pub fn end_type_census_with(d: &DomainPrefix, lat: &Lattice, k: usize) -> Result<EndTypeCensus, AnalyzeError> {
    if k + 1 > d.depth_bound() {
        return Err(AnalyzeError::InsufficientDepth { level: k, needed: k + 1, bound: d.depth_bound() });
    }
    let mut forms: Vec<EndForm> = Vec::new();
    let mut representatives = Vec::new();
    for c in clusters(d, k) {
        let (m, form) = recent_past(d, lat, &c);
        if !forms.contains(&form) {
            representatives.push(EndType {
                cluster: c.end_component_id,
                meet: m,
                frontier_size: c.frontier.len(),
                past_size: form.frontier.len(),
            });
            forms.push(form);
        }
    }
    Ok(EndTypeCensus { level: k, count: forms.len(), representatives, forms })
}

#[derive(Clone, Debug, Serialize)]
pub struct EndTypeLevel {
    pub k: usize,
    pub count: usize,
    /// Distinct forms over all levels up to `k`.
    pub cumulative: usize,
}

/// Census over a range of levels. Forms from different levels are
/// compared too, since context-freeness asks for finitely many classes
/// overall; a cumulative count that keeps growing is the evidence.
pub fn end_type_series(
    d: &DomainPrefix,
    lat: &Lattice,
    levels: std::ops::RangeInclusive<usize>,
) -> Result<Vec<EndTypeLevel>, AnalyzeError> {
    let mut seen: HashSet<EndForm> = HashSet::new();
    let mut out = Vec::new();
    for k in levels {
        let c = end_type_census_with(d, lat, k)?;
        seen.extend(c.forms);
        out.push(EndTypeLevel { k, count: c.count, cumulative: seen.len() });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    /// Levels for the end-type census.
    pub end_type_levels: std::ops::RangeInclusive<usize>,
    /// Grid sizes (squares per side) to search isometrically.
    pub isometric_sizes: Vec<usize>,
    pub biclique_max: usize,
}

impl AnalyzeOptions {
    pub fn for_depth(k: usize) -> Self {
        AnalyzeOptions {
            end_type_levels: 0..=k.saturating_sub(1).min(8),
            isometric_sizes: vec![2, 3, 4, 5],
            biclique_max: 6,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub depth_bound: usize,
    pub vertices: usize,
    pub levels: Vec<LevelReport>,
    pub grids: GridReport,
    pub bicliques: Biclique,
    pub end_types: Vec<EndTypeLevel>,
}

pub fn analyze(d: &DomainPrefix, opts: &AnalyzeOptions) -> Result<AnalysisReport, AnalyzeError> {
    let lat = Lattice::new(d);
    let levels = cluster_diameters_with(d, &lat).levels;
    let mut grids = flat_grid_max(d);
    for &n in &opts.isometric_sizes {
        grids.isometric.push((n, isometric_grid_search(d, &lat, n)));
    }
    let bicliques = biclique_thinness(d, &lat, opts.biclique_max);
    let end_types = end_type_series(d, &lat, opts.end_type_levels.clone())?;
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        depth_bound: d.depth_bound(),
        vertices: d.num_vertices(),
        levels,
        grids,
        bicliques,
        end_types,
    })
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        writeln!(s, "prefix: depth {}, {} vertices", self.depth_bound, self.vertices).unwrap();
        writeln!(s, "level  clusters  max diameter  exact").unwrap();
        for l in &self.levels {
            writeln!(s, "{:>5}  {:>8}  {:>12}  {}", l.k, l.clusters, l.max_diameter, yes(l.exact)).unwrap();
        }
        let g = &self.grids;
        writeln!(s, "flat grids: max min side {} (long side {})", g.max_min_side, g.max_long_side).unwrap();
        for (n, found) in &g.isometric {
            writeln!(s, "isometric {n}x{n} grid: {}", if found.is_some() { "found" } else { "not found" }).unwrap();
        }
        writeln!(s, "largest crossing biclique: K{{{0},{0}}}", self.bicliques.size).unwrap();
        for e in &self.end_types {
            writeln!(s, "end types at level {}: {} (cumulative {})", e.k, e.count, e.cumulative).unwrap();
        }
        s
    }
}

pub(crate) fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
