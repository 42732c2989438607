use netcube::analyze::bdr_generate;
use netcube::data;
use netcube::events::{
    check_les, check_nice_labeling, estimate_index, extract_events, EventStructurePrefix, LesViolation,
    NiceViolation, Relation,
};
use netcube::oracle::random_net;
use netcube::trace::TraceAlphabet;
use netcube::unfold::{unfold_net, Lattice, PrefixBuilder, Projection};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn minimal_conflicts(es: &EventStructurePrefix) -> usize {
    let n = es.len();
    (0..n).flat_map(|e| (e + 1..n).map(move |f| (e, f))).filter(|&(e, f)| es.minimal_conflict(e, f) == Some(true)).count()
}

#[test]
fn conflict_net_has_two_events_in_minimal_conflict() {
    let es = extract_events(&unfold_net(&data::conflict_net(), 3, 1000).unwrap());
    assert_eq!(es.len(), 2);
    assert_eq!(es.relation(0, 1), Relation::Conflict);
    assert_eq!(minimal_conflicts(&es), 1);
    assert!(check_les(&es, &data::conflict_net().alphabet()).is_ok());
}

#[test]
fn quadrant_events_never_conflict() {
    let k = 5;
    let es = extract_events(&unfold_net(&data::grid_net(), k, 10_000).unwrap());
    // one event per arc out of each axis vertex
    assert_eq!(es.len(), 2 * k);
    assert_eq!(es.count(Relation::Conflict), 0);
    for e in 0..es.len() {
        for f in 0..es.len() {
            if es.relation(e, f) == Relation::Concurrent {
                assert_ne!(es.events[e].label, es.events[f].label);
            }
        }
    }
    assert!(es.count(Relation::Concurrent) > 0);
    assert!(es.axiom_violations().is_empty());
}

#[test]
fn ray_events_form_a_chain() {
    let es = extract_events(&unfold_net(&data::ray_net(), 6, 100).unwrap());
    assert_eq!(es.len(), 6);
    assert_eq!(es.count(Relation::Below), 15);
    assert_eq!(es.immediate_predecessors(3), [2]);
}

#[test]
fn wrong_alphabet_breaks_the_labelling() {
    let es = extract_events(&unfold_net(&data::conflict_net(), 3, 1000).unwrap());
    // a and b declared independent although they compete for a token
    let alpha = TraceAlphabet::with_independence(["a", "b"], [("a", "b")]).unwrap();
    assert_eq!(check_les(&es, &alpha), Err(LesViolation::Les2 { events: [0, 1] }));
    let grid = extract_events(&unfold_net(&data::grid_net(), 3, 1000).unwrap());
    let all_dependent = TraceAlphabet::new(["a", "b"]).unwrap();
    assert!(matches!(check_les(&grid, &all_dependent), Err(LesViolation::Les3 { .. })));
    let missing = TraceAlphabet::new(["a"]).unwrap();
    assert!(matches!(check_les(&grid, &missing), Err(LesViolation::UnknownLabel(_))));
}

#[test]
fn nice_labelling_failures() {
    let mut b = PrefixBuilder::new(1, vec!["a".into()]);
    let r = b.add_vertex(0, Projection::None, false);
    for _ in 0..2 {
        let v = b.add_vertex(1, Projection::None, false);
        b.add_arc(r, v, 0, None);
    }
    assert_eq!(
        check_nice_labeling(&b.finish()),
        Err(NiceViolation::DuplicateOutLabel { vertex: 0, label: "a".into() })
    );
    assert!(check_nice_labeling(&unfold_net(&data::nstar(), 5, 100_000).unwrap()).is_ok());
}

#[test]
fn bdr_has_forty_ball_types() {
    let d = bdr_generate(14);
    assert!(check_nice_labeling(&d).is_ok());
    let est = estimate_index(&d, 2);
    assert_eq!(est.total, 40);
    assert_eq!(&est.cumulative[..7], [1, 4, 11, 21, 30, 37, 40]);
    assert_eq!(*est.cumulative.last().unwrap(), 40);
}

#[test]
fn nstar_events_are_exact_near_the_root() {
    let d = unfold_net(&data::nstar(), 6, 100_000).unwrap();
    let es = extract_events(&d);
    assert_eq!(es.len(), Lattice::new(&d).planes.len());
    assert!(es.axiom_violations().is_empty());
    assert!(check_les(&es, &data::nstar().alphabet()).is_ok());
    // two events with pasts of total size at most the bound are decided
    for e in 0..es.len() {
        for f in 0..es.len() {
            if es.events[e].past + es.events[f].past <= 6 {
                assert!(es.is_exact(e, f), "{e} {f}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn events_match_prime_traces(seed in any::<u64>()) {
        let net = random_net(&mut ChaCha8Rng::seed_from_u64(seed), 5, 5);
        let alpha = net.alphabet();
        let d = unfold_net(&net, 5, 200_000).unwrap();
        let es = extract_events(&d);
        // events are the vertices with a single in-arc
        let primes = (0..d.num_vertices()).filter(|&v| d.in_arcs(v).len() == 1).count();
        prop_assert_eq!(es.len(), primes);
        for e in &es.events {
            let t = e.prime_trace.as_ref().unwrap();
            prop_assert!(alpha.is_prime(t));
            prop_assert_eq!(t.len(), e.past);
        }
        for e in 0..es.len() {
            for f in 0..es.len() {
                let (te, tf) = (es.events[e].prime_trace.as_ref().unwrap(), es.events[f].prime_trace.as_ref().unwrap());
                match es.relation(e, f) {
                    Relation::Below => prop_assert!(alpha.is_prefix(te, tf) && te != tf),
                    Relation::Concurrent => prop_assert!(alpha.join(te, tf).is_some()),
                    _ => {}
                }
            }
        }
        prop_assert!(es.axiom_violations().is_empty());
        prop_assert!(check_les(&es, &alpha).is_ok());
    }
}
