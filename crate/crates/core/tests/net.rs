use netcube::complex::build_xn;
use netcube::data;
use netcube::net::{hair_net, net_to_json, parse_net, write_net, NetBuilder, NetError, TransitionId};
use netcube::oracle::random_net;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn text_format_round_trips() {
    for (name, kind, text) in data::EXAMPLES {
        if *kind != data::Kind::Net {
            continue;
        }
        let net = parse_net(text).unwrap();
        let again = parse_net(&write_net(&net)).unwrap();
        assert_eq!(write_net(&net), write_net(&again), "{name}");
        let json = net_to_json(&net).to_string();
        assert_eq!(write_net(&parse_net(&json).unwrap()), write_net(&net), "{name} via json");
    }
}

#[test]
fn parse_errors_carry_positions() {
    let err = parse_net("place p\ntransition a pre {p} post {q}\n").unwrap_err();
    assert!(matches!(err, NetError::UnknownPlace(ref p) if p == "q"), "{err}");
    match parse_net("place p\ntransition a pre p\n").unwrap_err() {
        NetError::Parse(e) => assert_eq!(e.line, 2),
        e => panic!("unexpected {e}"),
    }
    assert!(matches!(parse_net("place p\nplace p\n"), Err(NetError::Duplicate(_))));
}

#[test]
fn firing_respects_contact() {
    // b would put a second token on q
    let net = NetBuilder::new()
        .places(&["p", "q"])
        .transition("b", &["p"], &["q"])
        .initial(&["p", "q"])
        .build()
        .unwrap();
    let t = net.transition_id("b").unwrap();
    assert!(!net.enabled(net.initial(), t));
    let err = net.fire(net.initial(), t).unwrap_err();
    assert!(err.to_string().contains("contact in q"), "{err}");
}

#[test]
fn conflict_net_has_dependent_transitions() {
    let net = data::conflict_net();
    let (a, b) = (net.transition_id("a").unwrap(), net.transition_id("b").unwrap());
    assert!(!net.independent(a, b));
    let grid = data::grid_net();
    assert!(grid.independent(TransitionId(0), TransitionId(1)));
    assert!(!grid.independent(TransitionId(0), TransitionId(0)));
}

#[test]
fn nstar_complex_counts() {
    let xn = build_xn(&data::nstar(), 1000).unwrap();
    assert_eq!(
        (xn.complex.num_vertices(), xn.complex.num_edges(), xn.complex.num_squares()),
        (8, 32, 24)
    );
}

#[test]
fn marking_graph_budget() {
    assert!(matches!(data::nstar().marking_graph(3), Err(NetError::BudgetExceeded(3))));
}

#[test]
fn hairing_twice_adds_a_layer_each_time() {
    let net = data::nstar();
    let once = hair_net(&net);
    let twice = hair_net(&once);
    let (p, t) = (net.places().len(), net.transitions().len());
    assert_eq!(once.places().len(), p + t);
    assert_eq!(once.transitions().len(), t + 1);
    // the second hairing also tests the first hair transition
    assert_eq!(twice.places().len(), p + t + (t + 1));
    assert_eq!(twice.transitions().len(), t + 2);
    let names: std::collections::BTreeSet<_> = twice.transitions().iter().map(|t| t.name.clone()).collect();
    assert_eq!(names.len(), t + 2, "fresh names");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cofire_undoes_fire(seed in any::<u64>()) {
        let net = random_net(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5);
        let g = net.marking_graph(10_000).unwrap();
        for arc in &g.arcs {
            let m = &g.markings[arc.src];
            let m2 = net.fire(m, arc.transition).unwrap();
            prop_assert_eq!(&m2, &g.markings[arc.dst]);
            prop_assert_eq!(&net.cofire(&m2, arc.transition).unwrap(), m);
        }
    }

    #[test]
    fn hair_transition_is_enabled_everywhere(seed in any::<u64>()) {
        let net = hair_net(&random_net(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5));
        let h = TransitionId(net.transitions().len() - 1);
        let g = net.marking_graph(10_000).unwrap();
        // markings where h has fired have no hair tokens and are dead ends
        for m in &g.markings {
            let dead = g.out_arcs(g.vertex_of(m).unwrap()).next().is_none();
            prop_assert!(net.enabled(m, h) || dead);
        }
    }
}
