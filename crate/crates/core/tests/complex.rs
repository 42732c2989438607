use netcube::complex::{
    build_xn, check_covering, check_npc, check_special, check_trace_labeling, hair_complex, isomorphic,
    parse_complex, write_complex, ComplexError, Respect, VertexId,
};
use netcube::data;
use netcube::net::hair_net;
use netcube::oracle::random_net;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TORUS: &str = "vertex v\nedge a v v\nedge b v v\nsquare +a +b -a -b\n";

#[test]
fn z_is_npc_but_not_special() {
    let z = data::z();
    assert!(check_npc(&z).is_npc());
    let r = check_special(&z);
    assert!(!r.is_special());
    assert!(r.witness(&z).unwrap().contains("directly self-osculates at v"));
}

#[test]
fn zprime_is_a_special_cover_of_z() {
    let (zp, z) = (data::zprime(), data::z());
    assert!(check_npc(&zp).is_npc());
    assert!(check_special(&zp).is_special());
    // edge colours name the image edge
    let edge_map: Vec<_> = zp.edge_ids().map(|e| z.edge_id(zp.label(e)).unwrap()).collect();
    let vmap = check_covering(&zp, &z, &edge_map).unwrap();
    assert!(vmap.iter().all(|&v| v == VertexId(0)));
    assert_eq!(zp.num_vertices(), 8);
}

#[test]
fn zprime_is_the_nstar_complex() {
    let xn = build_xn(&data::nstar(), 1000).unwrap();
    let respect = Respect { colors: false, orientation: true, basepoints: None };
    assert!(isomorphic(&data::zprime(), &xn.complex, respect).is_some());
    assert!(isomorphic(&data::z(), &xn.complex, respect).is_none());
}

#[test]
fn torus_is_special() {
    let t = parse_complex(TORUS).unwrap();
    assert!(check_npc(&t).is_npc());
    assert!(check_special(&t).is_special());
}

#[test]
fn doubled_square_is_not_npc() {
    let text = "vertex u\nvertex v\nvertex w\nvertex x\n\
                edge a u v\nedge b u w\nedge c v x\nedge d w x\n\
                square +a +c -d -b\nsquare +a +c -d -b\n";
    assert!(!check_npc(&parse_complex(text).unwrap()).is_npc());
}

#[test]
fn malformed_complexes() {
    let open = "vertex u\nvertex v\nedge a u v\nedge b u v\nsquare +a +b -a -b\n";
    assert!(matches!(parse_complex(open), Err(ComplexError::OpenSquare { .. })));
    match parse_complex("edge a u v\n") {
        Err(ComplexError::Parse(e)) => assert_eq!((e.line, e.col, e.msg.as_str()), (1, 8, "unknown vertex `u`")),
        r => panic!("unexpected {r:?}"),
    }
    match parse_complex("vertex v\nedge a v\n") {
        Err(ComplexError::Parse(e)) => assert_eq!(e.line, 2),
        r => panic!("unexpected {r:?}"),
    }
}

#[test]
fn text_format_round_trips() {
    for c in [data::z(), data::zprime(), parse_complex(TORUS).unwrap()] {
        let again = parse_complex(&write_complex(&c)).unwrap();
        assert_eq!(write_complex(&again), write_complex(&c));
    }
}

#[test]
fn hairing_twice_adds_one_pendant_per_vertex_each_time() {
    let z = data::zprime();
    let once = hair_complex(&z);
    let twice = hair_complex(&once);
    assert_eq!(once.num_vertices(), 2 * z.num_vertices());
    assert_eq!(once.num_edges(), z.num_edges() + z.num_vertices());
    assert_eq!(twice.num_vertices(), 2 * once.num_vertices());
    assert_eq!(twice.num_edges(), once.num_edges() + once.num_vertices());
    assert_eq!(twice.num_squares(), z.num_squares());
    // every vertex of the input gets exactly one new out-edge
    for v in once.vertex_ids() {
        assert_eq!(twice.out_edges(v).count(), once.out_edges(v).count() + 1);
    }
    // the hairs of each round share one fresh colour
    let new: std::collections::BTreeSet<_> =
        twice.edge_ids().skip(once.num_edges()).map(|e| twice.label(e).to_string()).collect();
    assert_eq!(new.into_iter().collect::<Vec<_>>(), ["h'"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn net_complexes_are_trace_labelled_and_npc(seed in any::<u64>()) {
        let net = random_net(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5);
        let xn = build_xn(&net, 10_000).unwrap();
        prop_assert!(xn.complex.is_admissible());
        prop_assert!(check_npc(&xn.complex).is_npc());
        prop_assert!(check_trace_labeling(&xn.complex, &net.alphabet()).unwrap().is_ok());
    }

    #[test]
    fn haired_net_complex_is_haired_complex(seed in any::<u64>()) {
        let net = random_net(&mut ChaCha8Rng::seed_from_u64(seed), 5, 4);
        let xn = build_xn(&net, 10_000).unwrap();
        let xh = build_xn(&hair_net(&net), 10_000).unwrap();
        let v0 = xn.initial_vertex();
        let respect = Respect { colors: true, orientation: true, basepoints: Some((xh.initial_vertex(), v0)) };
        prop_assert!(isomorphic(&xh.complex, &hair_complex(&xn.complex), respect).is_some());
    }
}
