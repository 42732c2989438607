//! Isomorphism search and covering checks.

use super::{Dart, EdgeEnd, EdgeId, SquareComplex, SquareId, VertexId};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap, VecDeque};

/// Which structure an isomorphism must preserve.
#[derive(Clone, Copy, Debug, Default)]
pub struct Respect {
    pub colors: bool,
    pub orientation: bool,
    pub basepoints: Option<(VertexId, VertexId)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexIso {
    pub vertex_map: Vec<VertexId>,
    pub edge_map: Vec<EdgeId>,
    /// Set for edges whose image runs against them.
    pub edge_reversed: Vec<bool>,
    pub square_map: Vec<SquareId>,
}

type SquareKey = [(usize, bool); 4];

/// Canonical form of a dart cycle up to rotation and reversal.
fn square_key(darts: [Dart; 4]) -> SquareKey {
    let fwd: [(usize, bool); 4] = darts.map(|d| (d.edge.0, d.forward));
    let mut rev = fwd;
    rev.reverse();
    let rev = rev.map(|(e, f)| (e, !f));
    let mut best = fwd;
    for cyc in [fwd, rev] {
        for r in 0..4 {
            let mut k = cyc;
            k.rotate_left(r);
            best = best.min(k);
        }
    }
    best
}

struct Side<'a> {
    c: &'a SquareComplex,
    sig: Vec<Vec<u64>>,
    // unordered vertex pair -> incident edges
    between: HashMap<(usize, usize), Vec<EdgeId>>,
}

impl<'a> Side<'a> {
    fn new(c: &'a SquareComplex, r: &Respect, colors: &mut HashMap<String, u64>) -> Self {
        let mut sig = vec![Vec::new(); c.num_vertices()];
        let mut between: HashMap<(usize, usize), Vec<EdgeId>> = HashMap::new();
        for e in c.edge_ids() {
            let ed = c.edge(e);
            let col = if r.colors {
                let n = colors.len() as u64;
                *colors.entry(c.label(e).to_string()).or_insert(n) + 1
            } else {
                0
            };
            let looped = (ed.src == ed.dst) as u64;
            let (o, i) = if r.orientation { (1, 2) } else { (1, 1) };
            sig[ed.src.0].push(col * 8 + o + 4 * looped);
            sig[ed.dst.0].push(col * 8 + i + 4 * looped);
            let (a, b) = (ed.src.0.min(ed.dst.0), ed.src.0.max(ed.dst.0));
            between.entry((a, b)).or_default().push(e);
        }
        for s in c.square_ids() {
            for i in 0..4 {
                sig[c.corner(s, i).0 .0].push(u64::MAX);
            }
        }
        for s in &mut sig {
            s.sort_unstable();
        }
        Side { c, sig, between }
    }

    fn edges_between(&self, a: VertexId, b: VertexId) -> &[EdgeId] {
        self.between.get(&(a.0.min(b.0), a.0.max(b.0))).map_or(&[], |v| v.as_slice())
    }
}

struct Search<'a> {
    s1: Side<'a>,
    s2: Side<'a>,
    r: Respect,
    order: Vec<VertexId>,
    vmap: Vec<Option<VertexId>>,
    vused: Vec<bool>,
    emap: Vec<Option<(EdgeId, bool)>>,
    eused: Vec<bool>,
    squares_of_edge: Vec<Vec<SquareId>>,
    cap: HashMap<SquareKey, usize>,
    used: HashMap<SquareKey, usize>,
}

impl<'a> Search<'a> {
    /// Profile of the edges between two vertices, comparable across sides.
    fn bucket(&self, side: &Side, a: VertexId, b: VertexId) -> Vec<(String, u8)> {
        let mut out: Vec<(String, u8)> = side
            .edges_between(a, b)
            .iter()
            .map(|&e| {
                let ed = side.c.edge(e);
                let dir = if !self.r.orientation || ed.src == ed.dst {
                    0
                } else if ed.src == a {
                    1
                } else {
                    2
                };
                let col = if self.r.colors { side.c.label(e).to_string() } else { String::new() };
                (col, dir)
            })
            .collect();
        out.sort();
        out
    }

    fn vertices(&mut self, k: usize) -> bool {
        if k == self.order.len() {
            return self.edges(0);
        }
        let v = self.order[k];
        let candidates: Vec<VertexId> = match (k, self.r.basepoints) {
            (0, Some((b1, b2))) if b1 == v => vec![b2],
            _ => self.s2.c.vertex_ids().collect(),
        };
        for w in candidates {
            if self.vused[w.0] || self.s1.sig[v.0] != self.s2.sig[w.0] {
                continue;
            }
            self.vmap[v.0] = Some(w);
            let consistent = self.order[..=k].iter().all(|&u| {
                let fu = self.vmap[u.0].unwrap();
                self.bucket(&self.s1, v, u) == self.bucket(&self.s2, w, fu)
            });
            if consistent {
                self.vused[w.0] = true;
                if self.vertices(k + 1) {
                    return true;
                }
                self.vused[w.0] = false;
            }
            self.vmap[v.0] = None;
        }
        false
    }

    fn image_key(&self, s: SquareId) -> Option<SquareKey> {
        let darts = self.s1.c.square(s).darts;
        let mut out = darts;
        for (o, d) in out.iter_mut().zip(darts) {
            let (e, rev) = self.emap[d.edge.0]?;
            *o = Dart { edge: e, forward: d.forward != rev };
        }
        Some(square_key(out))
    }

    fn edges(&mut self, i: usize) -> bool {
        let c1 = self.s1.c;
        if i == c1.num_edges() {
            return true;
        }
        let e = EdgeId(i);
        let ed = c1.edge(e);
        let (fs, fd) = (self.vmap[ed.src.0].unwrap(), self.vmap[ed.dst.0].unwrap());
        let mut options = Vec::new();
        for &f in self.s2.edges_between(fs, fd) {
            let fe = self.s2.c.edge(f);
            if self.eused[f.0] || (self.r.colors && c1.label(e) != self.s2.c.label(f)) {
                continue;
            }
            if fe.src == fs && fe.dst == fd {
                options.push((f, false));
            }
            if !self.r.orientation && fe.src == fd && fe.dst == fs {
                options.push((f, true));
            }
        }
        for (f, rev) in options {
            self.emap[i] = Some((f, rev));
            self.eused[f.0] = true;
            let mut added: Vec<SquareKey> = Vec::new();
            let mut ok = true;
            for &s in &self.squares_of_edge[i] {
                let Some(key) = self.image_key(s) else { continue };
                // count a square once, when its last edge is placed
                let last = c1.square(s).darts.iter().map(|d| d.edge.0).max() == Some(i);
                if !last {
                    continue;
                }
                let u = self.used.entry(key).or_insert(0);
                *u += 1;
                added.push(key);
                if *u > self.cap.get(&key).copied().unwrap_or(0) {
                    ok = false;
                    break;
                }
            }
            if ok && self.edges(i + 1) {
                return true;
            }
            for key in added {
                *self.used.get_mut(&key).unwrap() -= 1;
            }
            self.eused[f.0] = false;
            self.emap[i] = None;
        }
        false
    }
}

/// Searches for an isomorphism of square complexes: bijections on
/// vertices, edges and squares preserving incidence (and, as requested,
/// colors, orientation and a pair of base vertices).
pub fn isomorphic(c1: &SquareComplex, c2: &SquareComplex, respect: Respect) -> Option<ComplexIso> {
    if (c1.num_vertices(), c1.num_edges(), c1.num_squares())
        != (c2.num_vertices(), c2.num_edges(), c2.num_squares())
    {
        return None;
    }
    let mut colors = HashMap::new();
    let s1 = Side::new(c1, &respect, &mut colors);
    let s2 = Side::new(c2, &respect, &mut colors);

    // BFS order over the 1-skeleton keeps partial maps connected
    let start = respect.basepoints.map_or(0, |(b, _)| b.0);
    let mut adj = vec![Vec::new(); c1.num_vertices()];
    for ed in c1.edges() {
        adj[ed.src.0].push(ed.dst.0);
        adj[ed.dst.0].push(ed.src.0);
    }
    let mut order = Vec::new();
    let mut seen = vec![false; c1.num_vertices()];
    for root in std::iter::once(start).chain(0..c1.num_vertices()) {
        if root >= seen.len() || seen[root] {
            continue;
        }
        seen[root] = true;
        let mut q = VecDeque::from([root]);
        while let Some(v) = q.pop_front() {
            order.push(VertexId(v));
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }

    let mut squares_of_edge = vec![Vec::new(); c1.num_edges()];
    for s in c1.square_ids() {
        for d in c1.square(s).darts {
            if !squares_of_edge[d.edge.0].contains(&s) {
                squares_of_edge[d.edge.0].push(s);
            }
        }
    }
    let mut cap = HashMap::new();
    let mut by_key: BTreeMap<SquareKey, Vec<SquareId>> = BTreeMap::new();
    for s in c2.square_ids() {
        let k = square_key(c2.square(s).darts);
        *cap.entry(k).or_insert(0) += 1;
        by_key.entry(k).or_default().push(s);
    }

    let mut search = Search {
        s1,
        s2,
        r: respect,
        order,
        vmap: vec![None; c1.num_vertices()],
        vused: vec![false; c2.num_vertices()],
        emap: vec![None; c1.num_edges()],
        eused: vec![false; c2.num_edges()],
        squares_of_edge,
        cap,
        used: HashMap::new(),
    };
    if !search.vertices(0) {
        return None;
    }
    let mut square_map = Vec::new();
    let mut next: HashMap<SquareKey, usize> = HashMap::new();
    for s in c1.square_ids() {
        let key = search.image_key(s).expect("all edges mapped");
        let i = next.entry(key).or_insert(0);
        square_map.push(by_key[&key][*i]);
        *i += 1;
    }
    Some(ComplexIso {
        vertex_map: search.vmap.iter().map(|v| v.unwrap()).collect(),
        edge_map: search.emap.iter().map(|e| e.unwrap().0).collect(),
        edge_reversed: search.emap.iter().map(|e| e.unwrap().1).collect(),
        square_map,
    })
}

/// Checks that an orientation-preserving edge map is a covering map:
/// at every vertex it must induce an isomorphism of links. Returns the
/// induced vertex map.
pub fn check_covering(
    cover: &SquareComplex,
    base: &SquareComplex,
    edge_map: &[EdgeId],
) -> Result<Vec<VertexId>, String> {
    let mut vmap: Vec<Option<VertexId>> = vec![None; cover.num_vertices()];
    for e in cover.edge_ids() {
        let (ed, fe) = (cover.edge(e), base.edge(edge_map[e.0]));
        for (v, w) in [(ed.src, fe.src), (ed.dst, fe.dst)] {
            match vmap[v.0] {
                Some(x) if x != w => {
                    return Err(format!("vertex {} has two images", cover.vertex_name(v)))
                }
                _ => vmap[v.0] = Some(w),
            }
        }
    }
    let vmap: Vec<VertexId> = vmap
        .iter()
        .enumerate()
        .map(|(v, w)| w.ok_or_else(|| format!("isolated vertex {}", cover.vertex_name(VertexId(v)))))
        .collect::<Result<_, _>>()?;
    let map_end = |x: EdgeEnd| EdgeEnd { edge: edge_map[x.edge.0], end: x.end };
    let ends_c = cover.ends_by_vertex();
    let ends_b = base.ends_by_vertex();
    let corner_lists = |c: &SquareComplex| {
        let mut out = vec![Vec::new(); c.num_vertices()];
        for s in c.square_ids() {
            for i in 0..4 {
                let (v, x, y) = c.corner(s, i);
                out[v.0].push((x.min(y), x.max(y)));
            }
        }
        out
    };
    let (cc, cb) = (corner_lists(cover), corner_lists(base));
    for v in cover.vertex_ids() {
        let w = vmap[v.0];
        let mut img: Vec<EdgeEnd> = ends_c[v.0].iter().map(|&x| map_end(x)).collect();
        let mut want = ends_b[w.0].clone();
        img.sort();
        want.sort();
        if img != want {
            return Err(format!("edge ends at {} do not map bijectively", cover.vertex_name(v)));
        }
        let mut img: Vec<_> = cc[v.0]
            .iter()
            .map(|&(x, y)| {
                let (a, b) = (map_end(x), map_end(y));
                (a.min(b), a.max(b))
            })
            .collect();
        let mut want = cb[w.0].clone();
        img.sort();
        want.sort();
        if img != want {
            return Err(format!("corners at {} do not map bijectively", cover.vertex_name(v)));
        }
    }
    Ok(vmap)
}
