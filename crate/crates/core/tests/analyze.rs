use netcube::analyze::{
    analyze, bdr_generate, bdr_steps, cluster_diameters, clusters, end_type_census, end_type_series,
    flat_grid_max, isometric_grid_search, AnalyzeError, AnalyzeOptions,
};
use netcube::complex::VertexId;
use netcube::data;
use netcube::oracle::random_net;
use netcube::unfold::{unfold_complex, unfold_net, DomainPrefix, Lattice};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

fn exact_diameters(d: &DomainPrefix) -> Vec<usize> {
    cluster_diameters(d).levels.iter().filter(|l| l.exact).map(|l| l.max_diameter).collect()
}

#[test]
fn quadrant_clusters_grow_linearly() {
    let d = unfold_net(&data::grid_net(), 8, 10_000).unwrap();
    let report = cluster_diameters(&d);
    for l in report.levels.iter().filter(|l| l.exact) {
        assert_eq!(l.clusters, 1);
        assert_eq!(l.max_diameter, 2 * (l.k + 1));
    }
    assert!(report.strictly_increasing(0..=6));
    assert_eq!(flat_grid_max(&d).max_min_side, 4);
}

#[test]
fn ray_clusters_are_points() {
    let d = unfold_net(&data::ray_net(), 8, 100).unwrap();
    let ds = exact_diameters(&d);
    assert!(!ds.is_empty());
    assert!(ds.iter().all(|&x| x == 0));
}

#[test]
fn tree_has_one_end_type() {
    let d = unfold_net(&data::tree_net(), 5, 100_000).unwrap();
    let lat = Lattice::new(&d);
    let series = end_type_series(&d, &lat, 0..=4).unwrap();
    assert!(series.iter().all(|l| l.count == 1 && l.cumulative == 1));
    assert!(exact_diameters(&d).iter().all(|&x| x == 0));
}

#[test]
fn census_needs_depth() {
    let d = unfold_net(&data::ray_net(), 3, 100).unwrap();
    assert!(matches!(end_type_census(&d, 3), Err(AnalyzeError::InsufficientDepth { .. })));
    assert!(clusters(&d, 3).is_empty());
}

#[test]
fn z_prefix() {
    let z = data::z();
    let d = unfold_complex(&z, VertexId(0), 9, 2_000_000).unwrap();
    let report = cluster_diameters(&d);
    for k in 0..=7 {
        let l = report.level(k).unwrap();
        assert_eq!((l.clusters, l.max_diameter, l.exact), (1, 2 * (k + 1), true), "level {k}");
    }
    let lat = Lattice::new(&d);
    let series = end_type_series(&d, &lat, 0..=6).unwrap();
    assert_eq!(series.iter().map(|l| l.cumulative).collect::<Vec<_>>(), [1, 2, 3, 4, 5, 6, 7]);
    assert_eq!(flat_grid_max(&d).max_min_side, 2);
    assert!(isometric_grid_search(&d, &lat, 3).is_some());
}

#[test]
fn bdr_has_one_cluster_per_level() {
    let d = bdr_generate(10);
    let report = cluster_diameters(&d);
    for k in 0..=8 {
        let l = report.level(k).unwrap();
        assert_eq!(l.clusters, 1);
        assert_eq!(l.max_diameter, 2 * (k + 1));
    }
    let lat = Lattice::new(&d);
    assert!(isometric_grid_search(&d, &lat, 2).is_some());
    assert!(isometric_grid_search(&d, &lat, 3).is_none());
    // every inner vertex is the source of exactly two squares
    for v in (0..d.num_vertices()).filter(|&v| d.depth(v) + 2 <= 10) {
        assert_eq!(d.squares().iter().filter(|s| s.source == v).count(), 2, "vertex {v}");
    }
}

#[test]
fn bdr_steps_lack_the_last_middles() {
    assert_eq!(bdr_steps(1).arcs().len(), 2);
    assert_eq!(bdr_generate(1).arcs().len(), 3);
    // levels above the last one agree
    let (a, b) = (bdr_steps(4).level_sizes(), bdr_generate(4).level_sizes());
    assert_eq!(a[..4], b[..4]);
    assert!(a[4] < b[4]);
}

#[test]
fn report_serializes() {
    let d = unfold_net(&data::grid_net(), 5, 10_000).unwrap();
    let r = analyze(&d, &AnalyzeOptions::for_depth(5)).unwrap();
    let j = serde_json::to_value(&r).unwrap();
    assert_eq!(j["schema_version"], 1);
    assert!(r.to_text().starts_with("prefix: depth 5"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn clusters_partition_the_next_level(seed in any::<u64>()) {
        let net = random_net(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5);
        let d = unfold_net(&net, 5, 200_000).unwrap();
        for k in 0..5 {
            let cs = clusters(&d, k);
            let mut seen = HashSet::new();
            for c in &cs {
                prop_assert_eq!(c.level, k);
                for &v in &c.frontier {
                    prop_assert!(seen.insert(v), "vertex {} in two clusters", v);
                    prop_assert_eq!(d.depth(v), k + 1);
                }
            }
            prop_assert_eq!(seen.len(), d.level(k + 1).len());
        }
    }

    #[test]
    fn isometric_grids_contain_flat_quadrants(seed in any::<u64>()) {
        let net = random_net(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5);
        let d = unfold_net(&net, 6, 200_000).unwrap();
        let lat = Lattice::new(&d);
        let flat = flat_grid_max(&d).max_min_side;
        for n in 1..=3 {
            if isometric_grid_search(&d, &lat, n).is_some() {
                prop_assert!(flat >= n.div_ceil(2), "n = {}, flat = {}", n, flat);
            }
        }
    }
}
