//! The acceptance suite: ten end-to-end checks of the library against
//! exact counts, independent constructions and brute-force oracles.

use crate::analyze::{
    bdr_generate, cluster_diameters_with, clusters, end_type_series, flat_grid_max, isometric_grid_search,
};
use crate::complex::{build_xn, check_npc, check_special, check_trace_labeling, hair_complex, isomorphic, Respect};
use crate::data;
use crate::events::{check_les, extract_events, Relation};
use crate::net::{NetBuilder, NetSystem};
use crate::oracle::{self, TraceOracle};
use crate::unfold::{check_domain_isomorphism, unfold_complex, unfold_net, validate_median, DomainPrefix, Lattice};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::{Duration, Instant};

/// Max cluster diameters of Z on levels 3..=10 at depth 12.
pub const Z_GOLDEN_DIAMETERS: [usize; 8] = [8, 10, 12, 14, 16, 18, 20, 22];

pub const CRITERIA: [&str; 10] = [
    "X_N* cell counts",
    "specialness verdicts",
    "isomorphisms Z' = X_N* and hairings",
    "net and complex unfoldings agree",
    "median property suite",
    "event bijections and trace oracle",
    "labeling axioms",
    "Z diagnostics",
    "BDR structure",
    "trace engine against brute force",
];

#[derive(Clone, Debug)]
pub struct SelftestOptions {
    pub seed: u64,
    pub budget: usize,
    pub random_nets: usize,
    pub random_alphabets: usize,
}

impl Default for SelftestOptions {
    fn default() -> Self {
        SelftestOptions { seed: 1, budget: 2_000_000, random_nets: 24, random_alphabets: 120 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(serialize_with = "secs")]
    pub elapsed: Duration,
}

fn secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        format!("[{verdict}] {:>2}. {} ({:.2}s): {}", self.id, self.name, self.elapsed.as_secs_f64(), self.detail)
    }
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs one criterion, numbered from 1.
pub fn run(id: usize, opts: &SelftestOptions) -> CriterionResult {
    let t = Instant::now();
    let outcome = match id {
        1 => xn_counts(),
        2 => specialness(),
        3 => isomorphisms(),
        4 => unfolding_equivalence(opts),
        5 => median_suite(opts),
        6 => event_bijections(opts),
        7 => labeling_axioms(opts),
        8 => z_diagnostics(opts),
        9 => bdr_structure(),
        10 => trace_engine(opts),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult { id, name: CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("?"), passed, detail, elapsed: t.elapsed() }
}

pub fn run_all(opts: &SelftestOptions) -> Vec<CriterionResult> {
    (1..=CRITERIA.len()).map(|id| run(id, opts)).collect()
}

/// The shipped nets plus `opts.random_nets` random ones, all named.
pub fn test_nets(opts: &SelftestOptions) -> Vec<(String, NetSystem)> {
    let mut out = vec![
        ("nstar".to_string(), data::nstar()),
        ("grid".to_string(), data::grid_net()),
        ("ray".to_string(), data::ray_net()),
        ("tree".to_string(), data::tree_net()),
        ("conflict".to_string(), data::conflict_net()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    for i in 0..opts.random_nets {
        out.push((format!("random{i}"), oracle::random_net(&mut rng, 5, 5)));
    }
    out
}

const DEPTH: usize = 6;

fn xn_counts() -> Outcome {
    let t = Instant::now();
    let xn = build_xn(&data::nstar(), 1000).map_err(|e| e.to_string())?;
    let c = &xn.complex;
    let counts = (c.num_vertices(), c.num_edges(), c.num_squares());
    let elapsed = t.elapsed();
    ensure(counts == (8, 32, 24), || format!("got {counts:?}"))?;
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok("8 vertices, 32 edges, 24 squares".into())
}

fn specialness() -> Outcome {
    let xn = build_xn(&data::nstar(), 1000).map_err(|e| e.to_string())?.complex;
    let (z, zp) = (data::z(), data::zprime());
    ensure(check_special(&xn).is_special(), || "X_N* is not special".into())?;
    ensure(check_special(&zp).is_special(), || "Z' is not special".into())?;
    let rz = check_special(&z);
    ensure(!rz.is_special(), || "Z is special".into())?;
    let witness = rz.witness(&z).ok_or("Z fails without a witness")?;
    ensure(check_npc(&z).is_npc(), || "Z is not NPC".into())?;
    Ok(format!("X_N* and Z' special, Z NPC but not special: {witness}"))
}

fn isomorphisms() -> Outcome {
    let xn = build_xn(&data::nstar(), 1000).map_err(|e| e.to_string())?;
    let zp = data::zprime();
    let oriented = Respect { colors: false, orientation: true, basepoints: None };
    let iso = isomorphic(&zp, &xn.complex, oriented).ok_or("Z' and X_N* are not isomorphic")?;
    let dot = build_xn(&data::nstar_haired(), 1000).map_err(|e| e.to_string())?;
    let haired = hair_complex(&xn.complex);
    let rooted = Respect { colors: true, orientation: true, basepoints: Some((dot.initial_vertex(), xn.initial_vertex())) };
    let hiso = isomorphic(&dot.complex, &haired, rooted).ok_or("X of the haired net is not hair(X_N*)")?;
    let v = |c: &crate::complex::SquareComplex, i: crate::complex::VertexId| c.vertex_name(i).to_string();
    Ok(format!(
        "Z' -> X_N* maps {} -> {}; haired: {} -> {} ({} vertices)",
        v(&zp, crate::complex::VertexId(0)),
        v(&xn.complex, iso.vertex_map[0]),
        v(&dot.complex, dot.initial_vertex()),
        v(&haired, hiso.vertex_map[dot.initial_vertex().0]),
        dot.complex.num_vertices()
    ))
}

fn both_unfoldings(net: &NetSystem, budget: usize) -> Result<(DomainPrefix, DomainPrefix), String> {
    let xn = build_xn(net, budget).map_err(|e| e.to_string())?;
    let a = unfold_net(net, DEPTH, budget).map_err(|e| e.to_string())?;
    let b = unfold_complex(&xn.complex, xn.initial_vertex(), DEPTH, budget).map_err(|e| e.to_string())?;
    Ok((a, b))
}

fn unfolding_equivalence(opts: &SelftestOptions) -> Outcome {
    let nets = test_nets(opts);
    let mut vertices = 0;
    for (name, net) in &nets {
        let (a, b) = both_unfoldings(net, opts.budget).map_err(|e| format!("{name}: {e}"))?;
        check_domain_isomorphism(&a, &b).map_err(|m| format!("{name}: vertex {}: {}", m.vertex, m.reason))?;
        vertices += a.num_vertices();
    }
    Ok(format!("{} nets isomorphic at depth {DEPTH} ({vertices} vertices in all)", nets.len()))
}

fn median_suite(opts: &SelftestOptions) -> Outcome {
    let mut prefixes: Vec<(String, DomainPrefix)> = Vec::new();
    for (name, net) in test_nets(opts) {
        let (a, b) = both_unfoldings(&net, opts.budget).map_err(|e| format!("{name}: {e}"))?;
        prefixes.push((format!("{name} (net)"), a));
        prefixes.push((format!("{name} (complex)"), b));
    }
    // three independent token cycles: the only source of 3-cubes here
    let cube = NetBuilder::new()
        .places(&["p0", "q0", "p1", "q1", "p2", "q2"])
        .transition("a0", &["p0"], &["q0"])
        .transition("b0", &["q0"], &["p0"])
        .transition("a1", &["p1"], &["q1"])
        .transition("b1", &["q1"], &["p1"])
        .transition("a2", &["p2"], &["q2"])
        .transition("b2", &["q2"], &["p2"])
        .initial(&["p0", "p1", "p2"])
        .build()
        .map_err(|e| e.to_string())?;
    let (a, b) = both_unfoldings(&cube, opts.budget)?;
    prefixes.push(("cube (net)".into(), a));
    prefixes.push(("cube (complex)".into(), b));
    let z = unfold_complex(&data::z(), crate::complex::VertexId(0), 8, opts.budget).map_err(|e| e.to_string())?;
    prefixes.push(("z".into(), z));
    prefixes.push(("bdr".into(), bdr_generate(8)));
    let (mut quads, mut cubes, mut triples) = (0, 0, 0);
    for (name, d) in &prefixes {
        let r = validate_median(d, 200, opts.seed);
        ensure(r.is_ok(), || format!("{name}: {:?}", r.violations.first()))?;
        quads += r.quadrangles_checked;
        cubes += r.cubes_checked;
        triples += r.triples_checked;
    }
    Ok(format!("{} prefixes: {quads} quadrangles, {cubes} cubes, {triples} sampled triples", prefixes.len()))
}

fn event_bijections(opts: &SelftestOptions) -> Outcome {
    let net = data::nstar();
    let alpha = net.alphabet();
    let d = unfold_net(&net, DEPTH, opts.budget).map_err(|e| e.to_string())?;
    let lat = Lattice::new(&d);
    let es = extract_events(&d);
    let prime_vertices = (0..d.num_vertices()).filter(|&v| d.in_arcs(v).len() == 1).count();
    let primes = oracle::prime_firing_traces(&net, DEPTH);
    let sizes = (es.len(), lat.planes.len(), prime_vertices, primes.len());
    ensure(sizes.0 == sizes.1 && sizes.1 == sizes.2 && sizes.2 == sizes.3, || format!("sizes differ: {sizes:?}"))?;
    // event by event: prime vertex, its trace, and the oracle's prime trace
    for e in &es.events {
        ensure(d.in_arcs(e.prime_vertex).len() == 1, || format!("event {} has a non-prime vertex", e.id))?;
        let t = e.prime_trace.as_ref().ok_or("net vertex without a trace")?;
        ensure(primes.contains(t.word()), || format!("event {} trace {:?} is not a prime firing trace", e.id, alpha.render(t)))?;
        ensure(d.label_name(d.arc(lat.planes[e.id].arcs[0]).label) == e.label, || format!("event {} label", e.id))?;
    }
    let mut checked = 0usize;
    for e in 0..es.len() {
        for f in 0..es.len() {
            let r = es.relation(e, f);
            if r == Relation::Unknown {
                continue;
            }
            let (te, tf) = (es.events[e].prime_trace.as_ref().unwrap(), es.events[f].prime_trace.as_ref().unwrap());
            let leq = alpha.is_prefix(te, tf);
            let compatible = alpha.join(te, tf).is_some_and(|j| oracle::fires(&net, j.word()));
            let ok = match r {
                Relation::Equal => e == f && leq,
                Relation::Below => leq && e != f,
                Relation::Above => alpha.is_prefix(tf, te) && e != f,
                Relation::Concurrent => compatible && !leq && !alpha.is_prefix(tf, te),
                Relation::Conflict => !compatible,
                Relation::Unknown => unreachable!(),
            };
            ensure(ok, || format!("events {e}, {f}: geometry says {r:?}"))?;
            checked += 1;
        }
    }
    Ok(format!("{} events, hyperplanes, prime vertices and prime traces; {checked} exact pairs agree", es.len()))
}

fn labeling_axioms(opts: &SelftestOptions) -> Outcome {
    let nets = test_nets(opts);
    let mut events = 0;
    for (name, net) in &nets {
        let alpha = net.alphabet();
        let xn = build_xn(net, opts.budget).map_err(|e| format!("{name}: {e}"))?;
        let tl = check_trace_labeling(&xn.complex, &alpha).map_err(|e| format!("{name}: {e}"))?;
        ensure(tl.is_ok(), || format!("{name}: {:?}", tl.violations.first()))?;
        let d = unfold_net(net, DEPTH, opts.budget).map_err(|e| format!("{name}: {e}"))?;
        let es = extract_events(&d);
        check_les(&es, &alpha).map_err(|v| format!("{name}: {v:?}"))?;
        events += es.len();
    }
    Ok(format!("TL on {} complexes, LES on {events} events", nets.len()))
}

fn z_diagnostics(opts: &SelftestOptions) -> Outcome {
    let k = 12;
    let d = unfold_complex(&data::z(), crate::complex::VertexId(0), k, opts.budget.max(2_000_000))
        .map_err(|e| e.to_string())?;
    let lat = Lattice::new(&d);
    let flat = flat_grid_max(&d);
    ensure(flat.max_min_side <= 2, || format!("flat grid with both sides {}", flat.max_min_side))?;
    ensure(isometric_grid_search(&d, &lat, 5).is_none(), || "isometric 5x5 grid found".into())?;
    let cr = cluster_diameters_with(&d, &lat);
    ensure(cr.strictly_increasing(3..=10), || "cluster diameters do not strictly increase on levels 3..10".into())?;
    let diam: Vec<usize> = (3..=10).map(|l| cr.levels[l].max_diameter).collect();
    ensure(diam == Z_GOLDEN_DIAMETERS, || format!("diameters {diam:?} differ from the frozen values"))?;
    let types = end_type_series(&d, &lat, 0..=8).map_err(|e| e.to_string())?;
    let cumulative: Vec<usize> = types.iter().map(|l| l.cumulative).collect();
    ensure(cumulative.first() != cumulative.last(), || format!("end types constant: {cumulative:?}"))?;
    Ok(format!(
        "flat min side {}, no isometric 5x5, diameters {diam:?}, end types {cumulative:?}",
        flat.max_min_side
    ))
}

fn bdr_structure() -> Outcome {
    let k = 10;
    let d = bdr_generate(k);
    let lat = Lattice::new(&d);
    let sizes = d.level_sizes();
    // the frontier of level K - 1 lies on the bound, where nothing connects
    for l in 0..k - 1 {
        let cs = clusters(&d, l);
        ensure(cs.len() == 1, || format!("level {l} has {} clusters", cs.len()))?;
        ensure(cs[0].frontier.len() == sizes[l + 1], || format!("level {l}: cluster is not the whole sphere"))?;
    }
    let cr = cluster_diameters_with(&d, &lat);
    ensure(cr.strictly_increasing(0..=k - 2), || "sphere diameters do not strictly increase".into())?;
    ensure(isometric_grid_search(&d, &lat, 3).is_none(), || "isometric 3x3 grid found".into())?;
    let mut sources = vec![0usize; d.num_vertices()];
    for s in d.squares() {
        sources[s.source] += 1;
    }
    let inner = (0..d.num_vertices()).filter(|&v| d.depth(v) + 2 <= k);
    for v in inner {
        ensure(sources[v] == 2, || format!("vertex {v} is the source of {} squares", sources[v]))?;
    }
    let diam: Vec<usize> = cr.levels[..k - 1].iter().map(|l| l.max_diameter).collect();
    Ok(format!("one cluster per level, diameters {diam:?}, no isometric 3x3, two squares per inner vertex"))
}

fn trace_engine(opts: &SelftestOptions) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut classes = 0;
    for i in 0..opts.random_alphabets {
        let n = rng.gen_range(1..=4);
        let alpha = oracle::random_alphabet(&mut rng, n, 0.5);
        let o = TraceOracle::new(&alpha, 6);
        let bad = o.disagreements();
        ensure(bad.is_empty(), || format!("alphabet {i} ({:?}): {}", alpha.independent_pairs(), bad[0]))?;
        classes += o.num_classes();
    }
    Ok(format!("{} alphabets, {classes} trace classes, no disagreement", opts.random_alphabets))
}
