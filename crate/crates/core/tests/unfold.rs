use netcube::analyze::bdr_generate;
use netcube::complex::{build_xn, parse_complex};
use netcube::data;
use netcube::oracle::{firing_traces, random_net};
use netcube::unfold::{
    check_domain_isomorphism, hair_domain, interval, unfold_complex, unfold_net, validate_median, Lattice,
    Projection, UnfoldError,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

#[test]
fn quadrant_and_ray_sizes() {
    let k = 6;
    let grid = unfold_net(&data::grid_net(), k, 10_000).unwrap();
    assert_eq!(grid.num_vertices(), (k + 1) * (k + 2) / 2);
    assert_eq!(grid.level_sizes(), (1..=k + 1).collect::<Vec<_>>());
    let ray = unfold_net(&data::ray_net(), k, 10_000).unwrap();
    assert_eq!(ray.level_sizes(), vec![1; k + 1]);
    let tree = unfold_net(&data::tree_net(), 3, 10_000).unwrap();
    assert_eq!(tree.level_sizes(), [1, 4, 16, 64]);
    assert!(tree.squares().is_empty());
}

#[test]
fn torus_unfolds_to_the_quadrant() {
    let torus = parse_complex("vertex v\nedge a v v\nedge b v v\nsquare +a +b -a -b\n").unwrap();
    let d = unfold_complex(&torus, torus.vertex_id("v").unwrap(), 5, 10_000).unwrap();
    let grid = unfold_net(&data::grid_net(), 5, 10_000).unwrap();
    assert_eq!(d.num_vertices(), grid.num_vertices());
    assert_eq!(d.squares().len(), grid.squares().len());
}

#[test]
fn errors() {
    assert!(matches!(unfold_net(&data::tree_net(), 8, 1000), Err(UnfoldError::BudgetExceeded(1000))));
    // a directed 4-cycle has no source corner
    let bad = parse_complex(
        "vertex u\nvertex v\nvertex w\nvertex x\n\
         edge a u v\nedge b v w\nedge c w x\nedge d x u\nsquare +a +b +c +d\n",
    )
    .unwrap();
    assert!(matches!(
        unfold_complex(&bad, bad.vertex_id("u").unwrap(), 3, 1000),
        Err(UnfoldError::NotAdmissible(0))
    ));
}

#[test]
fn hair_domain_adds_one_arc_per_interior_vertex() {
    let d = unfold_net(&data::nstar(), 4, 100_000).unwrap();
    let h = hair_domain(&d);
    let interior = (0..d.num_vertices()).filter(|&v| d.is_interior(v)).count();
    assert_eq!(h.num_vertices(), d.num_vertices() + interior);
    assert_eq!(h.arcs().len(), d.arcs().len() + interior);
    assert!(h.labels().iter().any(|l| l == "h"));
}

#[test]
fn bdr_prefix_is_median() {
    let d = bdr_generate(9);
    let r = validate_median(&d, 500, 3);
    assert!(r.is_ok(), "{:?}", r.violations);
    assert!(r.quadrangles_checked > 0);
}

#[test]
fn nstar_distances_and_intervals_match_the_lattice() {
    let d = unfold_net(&data::nstar(), 6, 100_000).unwrap();
    let lat = Lattice::new(&d);
    assert!(lat.inconsistencies().is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let (u, v) = (rng.gen_range(0..d.num_vertices()), rng.gen_range(0..d.num_vertices()));
        assert_eq!(d.bfs(u)[v], lat.distance(u, v));
        let i = interval(&d, u, v);
        assert!(i.vertices.contains(&u) && i.vertices.contains(&v));
        let m = lat.meet(u, v).unwrap();
        assert!(lat.below(m, u) && lat.below(m, v));
        if i.exact {
            // every geodesic vertex lies above the meet
            assert!(i.vertices.iter().all(|&w| lat.below(m, w)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn net_and_complex_unfoldings_agree(seed in any::<u64>()) {
        let net = random_net(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5);
        let xn = build_xn(&net, 10_000).unwrap();
        let a = unfold_net(&net, 5, 200_000).unwrap();
        let b = unfold_complex(&xn.complex, xn.initial_vertex(), 5, 200_000).unwrap();
        prop_assert!(check_domain_isomorphism(&a, &b).is_ok());
    }

    #[test]
    fn net_prefix_vertices_are_the_firing_traces(seed in any::<u64>()) {
        let net = random_net(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5);
        let d = unfold_net(&net, 4, 200_000).unwrap();
        let traces: BTreeSet<Vec<_>> = d
            .vertices()
            .iter()
            .map(|v| match &v.projection {
                Projection::Trace { trace, .. } => trace.word().to_vec(),
                p => panic!("unexpected projection {p:?}"),
            })
            .collect();
        prop_assert_eq!(traces.len(), d.num_vertices());
        prop_assert_eq!(traces, firing_traces(&net, 4));
    }

    #[test]
    fn random_prefixes_are_median(seed in any::<u64>()) {
        let net = random_net(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5);
        let d = unfold_net(&net, 5, 200_000).unwrap();
        let r = validate_median(&d, 100, seed);
        prop_assert!(r.is_ok(), "{:?}", r.violations);
    }
}
