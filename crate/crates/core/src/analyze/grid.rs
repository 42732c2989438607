use crate::unfold::{DomainPrefix, Lattice};
use serde::Serialize;
use std::collections::{HashMap, HashSet};

/// Directed grid with source `cols[0][0]`: `cols[i][j]` is the vertex
/// `i` steps along the x ray and `j` steps along the y ray. Sizes count
/// squares per side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectedGrid {
    pub source: usize,
    pub cols: Vec<Vec<usize>>,
}

impl DirectedGrid {
    pub fn p(&self) -> usize {
        self.cols.len() - 1
    }

    pub fn q(&self) -> usize {
        self.cols[0].len() - 1
    }

    pub fn x_ray(&self) -> Vec<usize> {
        self.cols.iter().map(|c| c[0]).collect()
    }

    pub fn y_ray(&self) -> Vec<usize> {
        self.cols[0].clone()
    }

    pub fn to_dot(&self, d: &DomainPrefix) -> String {
        grid_dot(d, &self.cols)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsometricGrid {
    pub n: usize,
    /// Gate of the root in the grid; the grid is directed away from it.
    pub gate: usize,
    /// Columns left of the gate and rows below it.
    pub split: (usize, usize),
    /// `cols[i][j]` at grid position `(i - split.0, j - split.1)`.
    pub cols: Vec<Vec<usize>>,
}

impl IsometricGrid {
    pub fn to_dot(&self, d: &DomainPrefix) -> String {
        grid_dot(d, &self.cols)
    }
}

fn grid_dot(d: &DomainPrefix, cols: &[Vec<usize>]) -> String {
    use std::fmt::Write;
    let mut s = String::from("digraph grid {\n");
    let on: HashSet<usize> = cols.iter().flatten().copied().collect();
    for (i, c) in cols.iter().enumerate() {
        for (j, &v) in c.iter().enumerate() {
            writeln!(s, "  n{v} [label=\"{v}\", pos=\"{i},{j}!\"];").unwrap();
        }
    }
    for &v in &on {
        for &a in d.out_arcs(v) {
            let w = d.arc(a).dst;
            if on.contains(&w) {
                writeln!(s, "  n{v} -> n{w} [label=\"{}\"];", d.arc_label(a)).unwrap();
            }
        }
    }
    s.push_str("}\n");
    s
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct GridReport {
    /// Largest `min(p, q)` over flat directed grids.
    pub max_min_side: usize,
    /// Largest `max(p, q)` among grids reaching `max_min_side`.
    pub max_long_side: usize,
    pub witness: Option<DirectedGrid>,
    pub grids_examined: usize,
    /// Requested isometric sizes and what was found.
    pub isometric: Vec<(usize, Option<IsometricGrid>)>,
}

fn successors(d: &DomainPrefix, v: usize) -> impl Iterator<Item = usize> + '_ {
    d.out_arcs(v).iter().map(move |&a| d.arc(a).dst)
}

/// Sink of the square spanned by `a` and `b` over a common predecessor.
fn close(d: &DomainPrefix, a: usize, b: usize) -> Option<usize> {
    successors(d, a).find(|&w| successors(d, b).any(|x| x == w))
}

/// `a -> b -> c` is locally convex: `b` is the only common neighbor.
fn convex(d: &DomainPrefix, a: usize, c: usize) -> bool {
    successors(d, a).filter(|&b| successors(d, b).any(|x| x == c)).count() == 1
}

/// Enumerates directed grids with the given source. Each grid is built
/// from a two-column ladder grown upwards, then widened column by
/// column; every new vertex is forced as the sink of a square.
struct GridWalk<'a, F: FnMut(&[Vec<usize>])> {
    d: &'a DomainPrefix,
    flat: bool,
    max_side: usize,
    visit: F,
}

impl<F: FnMut(&[Vec<usize>])> GridWalk<'_, F> {
    fn run(&mut self, v: usize) {
        let outs: Vec<usize> = successors(self.d, v).collect();
        for &x in &outs {
            for &y in &outs {
                if x == y {
                    continue;
                }
                if let Some(s) = close(self.d, x, y) {
                    let mut cols = vec![vec![v, y], vec![x, s]];
                    self.ladder(&mut cols);
                }
            }
        }
    }

    fn ladder(&mut self, cols: &mut Vec<Vec<usize>>) {
        (self.visit)(cols);
        self.widen(cols);
        let q = cols[0].len() - 1;
        if q >= self.max_side {
            return;
        }
        let (top0, top1) = (cols[0][q], cols[1][q]);
        let ups: Vec<usize> = successors(self.d, top0).filter(|&y| y != top1).collect();
        for y in ups {
            let Some(s) = close(self.d, top1, y) else { continue };
            if self.flat && !(convex(self.d, cols[0][q - 1], y) && convex(self.d, cols[1][q - 1], s)) {
                continue;
            }
            cols[0].push(y);
            cols[1].push(s);
            self.ladder(cols);
            cols[0].pop();
            cols[1].pop();
        }
    }

    fn widen(&mut self, cols: &mut Vec<Vec<usize>>) {
        let p = cols.len() - 1;
        if p >= self.max_side {
            return;
        }
        let q = cols[0].len() - 1;
        let last = cols[p].clone();
        let rights: Vec<usize> = successors(self.d, last[0]).filter(|&w| w != last[1]).collect();
        'next: for w in rights {
            let mut col = vec![w];
            for j in 1..=q {
                match close(self.d, col[j - 1], last[j]) {
                    Some(s) if j == q || s != last[j + 1] => col.push(s),
                    _ => continue 'next,
                }
            }
            if self.flat {
                let prev = &cols[p - 1];
                if (0..=q).any(|j| !convex(self.d, prev[j], col[j])) {
                    continue;
                }
                if (1..q).any(|j| !convex(self.d, col[j - 1], col[j + 1])) {
                    continue;
                }
            }
            cols.push(col);
            (self.visit)(cols);
            self.widen(cols);
            cols.pop();
        }
    }
}

/// Largest flat directed grid over all interior sources. A grid is flat
/// when every vertex pair at distance two has no common neighbor outside
/// the grid, which for directed grids means all rows and columns are
/// locally convex.
pub fn flat_grid_max(d: &DomainPrefix) -> GridReport {
    let mut r = GridReport::default();
    for v in 0..d.num_vertices() {
        if d.depth(v) + 2 > d.depth_bound() {
            continue;
        }
        let mut best: Option<(usize, usize, Vec<Vec<usize>>)> = None;
        let mut count = 0;
        let mut walk = GridWalk {
            d,
            flat: true,
            max_side: usize::MAX,
            visit: |cols: &[Vec<usize>]| {
                count += 1;
                let (p, q) = (cols.len() - 1, cols[0].len() - 1);
                let key = (p.min(q), p.max(q));
                if best.as_ref().is_none_or(|b| (b.0, b.1) < key) {
                    best = Some((key.0, key.1, cols.to_vec()));
                }
            },
        };
        walk.run(v);
        r.grids_examined += count;
        if let Some((m, l, cols)) = best {
            if (m, l) > (r.max_min_side, r.max_long_side) || r.witness.is_none() {
                r.max_min_side = m;
                r.max_long_side = l;
                r.witness = Some(DirectedGrid { source: v, cols });
            }
        }
    }
    r
}

/// Searches for an isometric `n x n` grid (squares per side). The gate
/// of the root in such a grid is its unique source, so the grid is four
/// directed quadrants glued along rays from the gate; quadrants are
/// enumerated from every gate and combined, and the result is checked
/// for isometry with hyperplane distances.
pub fn isometric_grid_search(d: &DomainPrefix, lat: &Lattice, n: usize) -> Option<IsometricGrid> {
    if n == 0 {
        return None;
    }
    for v in 0..d.num_vertices() {
        if d.depth(v) + n > d.depth_bound() {
            continue;
        }
        let mut quads: HashMap<(Vec<usize>, Vec<usize>), Vec<Vec<usize>>> = HashMap::new();
        let mut walk = GridWalk {
            d,
            flat: false,
            max_side: n,
            visit: |cols: &[Vec<usize>]| {
                let x = cols.iter().map(|c| c[0]).collect();
                quads.insert((x, cols[0].clone()), cols.to_vec());
            },
        };
        walk.run(v);
        if let Some(g) = glue(d, lat, v, n, &quads) {
            return Some(g);
        }
    }
    None
}

type Quads = HashMap<(Vec<usize>, Vec<usize>), Vec<Vec<usize>>>;

fn glue(_d: &DomainPrefix, lat: &Lattice, v: usize, n: usize, quads: &Quads) -> Option<IsometricGrid> {
    let mut by_len: HashMap<(usize, usize), Vec<&(Vec<usize>, Vec<usize>)>> = HashMap::new();
    for k in quads.keys() {
        by_len.entry((k.0.len() - 1, k.1.len() - 1)).or_default().push(k);
    }
    let empty = vec![v];
    // by symmetry the largest quadrant is the upper right one
    for p1 in 0..=n / 2 {
        for q1 in 0..=n / 2 {
            let (p2, q2) = (n - p1, n - q1);
            for (right, up) in by_len.get(&(p2, q2)).into_iter().flatten() {
                let lefts: Vec<&Vec<usize>> = if p1 == 0 {
                    vec![&empty]
                } else {
                    by_len
                        .get(&(p1, q2))
                        .into_iter()
                        .flatten()
                        .filter(|(l, u)| u == up && l[1] != right[1])
                        .map(|(l, _)| l)
                        .collect()
                };
                let downs: Vec<&Vec<usize>> = if q1 == 0 {
                    vec![&empty]
                } else {
                    by_len
                        .get(&(p2, q1))
                        .into_iter()
                        .flatten()
                        .filter(|(r, dn)| r == right && dn[1] != up[1])
                        .map(|(_, dn)| dn)
                        .collect()
                };
                for left in &lefts {
                    for down in &downs {
                        let quad = |x: &Vec<usize>, y: &Vec<usize>| -> Option<Vec<Vec<usize>>> {
                            if x.len() == 1 {
                                Some(vec![y.clone()])
                            } else if y.len() == 1 {
                                Some(x.iter().map(|&a| vec![a]).collect())
                            } else {
                                quads.get(&(x.clone(), y.clone())).cloned()
                            }
                        };
                        let (Some(q_ur), Some(q_ul), Some(q_dl), Some(q_dr)) =
                            (quad(right, up), quad(left, up), quad(left, down), quad(right, down))
                        else {
                            continue;
                        };
                        let mut cols = vec![vec![usize::MAX; n + 1]; n + 1];
                        for (i, col) in cols.iter_mut().enumerate() {
                            for (j, slot) in col.iter_mut().enumerate() {
                                let (x, y) = (i as isize - p1 as isize, j as isize - q1 as isize);
                                let (ax, ay) = (x.unsigned_abs(), y.unsigned_abs());
                                *slot = match (x >= 0, y >= 0) {
                                    (true, true) => q_ur[ax][ay],
                                    (false, true) => q_ul[ax][ay],
                                    (false, false) => q_dl[ax][ay],
                                    (true, false) => q_dr[ax][ay],
                                };
                            }
                        }
                        if is_isometric(lat, &cols) {
                            return Some(IsometricGrid { n, gate: v, split: (p1, q1), cols });
                        }
                    }
                }
            }
        }
    }
    None
}

fn is_isometric(lat: &Lattice, cols: &[Vec<usize>]) -> bool {
    let cells: Vec<(usize, usize, usize)> =
        cols.iter().enumerate().flat_map(|(i, c)| c.iter().enumerate().map(move |(j, &v)| (i, j, v))).collect();
    cells.iter().enumerate().all(|(k, &(i, j, v))| {
        cells[k + 1..].iter().all(|&(i2, j2, w)| lat.distance(v, w) == i.abs_diff(i2) + j.abs_diff(j2))
    })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Biclique {
    /// Largest `m` with a complete bipartite `K{m,m}` in the crossing graph.
    pub size: usize,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Largest balanced biclique, up to `n` per side, in the crossing graph
/// of the prefix hyperplanes (two hyperplanes are adjacent when a square
/// of the prefix has both as sides).
pub fn biclique_thinness(d: &DomainPrefix, lat: &Lattice, n: usize) -> Biclique {
    let h = lat.planes.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); h];
    for sq in d.squares() {
        let (a, b) = (lat.hyperplane_of_arc(sq.arcs[0]), lat.hyperplane_of_arc(sq.arcs[1]));
        adj[a].push(b);
        adj[b].push(a);
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    let mut best = Biclique::default();
    for m in 1..=n {
        match find_biclique(&adj, m) {
            Some((left, right)) => best = Biclique { size: m, left, right },
            None => break,
        }
    }
    best
}

fn find_biclique(adj: &[Vec<usize>], m: usize) -> Option<(Vec<usize>, Vec<usize>)> {
    // vertices of degree below m can never take part
    let mut alive: Vec<bool> = adj.iter().map(|l| l.len() >= m).collect();
    loop {
        let mut changed = false;
        for v in 0..adj.len() {
            if alive[v] && adj[v].iter().filter(|&&w| alive[w]).count() < m {
                alive[v] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for a in 0..adj.len() {
        if !alive[a] {
            continue;
        }
        let common: Vec<usize> = adj[a].iter().copied().filter(|&w| alive[w]).collect();
        if let Some(found) = extend(adj, &alive, m, vec![a], common) {
            return Some(found);
        }
    }
    None
}

fn extend(
    adj: &[Vec<usize>],
    alive: &[bool],
    m: usize,
    left: Vec<usize>,
    common: Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    if common.len() < m {
        return None;
    }
    if left.len() == m {
        return Some((left, common[..m].to_vec()));
    }
    let last = *left.last().unwrap();
    // candidates share a neighbor with the current left side
    let mut cands: Vec<usize> =
        common.iter().flat_map(|&b| adj[b].iter().copied()).filter(|&c| c > last && alive[c]).collect();
    cands.sort_unstable();
    cands.dedup();
    for c in cands {
        let next: Vec<usize> = common.iter().copied().filter(|w| adj[c].binary_search(w).is_ok()).collect();
        if next.len() >= m {
            let mut l = left.clone();
            l.push(c);
            if let Some(found) = extend(adj, alive, m, l, next) {
                return Some(found);
            }
        }
    }
    None
}
