use netcube::oracle::{brute_is_prime, brute_normal_form, random_alphabet, swap_closure, TraceOracle};
use netcube::trace::{Letter, TraceAlphabet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn abc() -> TraceAlphabet {
    // a and b commute, c depends on both
    TraceAlphabet::with_independence(["a", "b", "c"], [("a", "b")]).unwrap()
}

fn setup(seed: u64, n: usize, raw: &[u8]) -> (TraceAlphabet, Vec<Letter>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alpha = random_alphabet(&mut rng, n, 0.5);
    let w = raw.iter().map(|&x| Letter(x as u32 % n as u32)).collect();
    (alpha, w)
}

#[test]
fn normal_form_sorts_commuting_letters() {
    let a = abc();
    let t = a.normalize_names(&["b", "a", "c", "b"]).unwrap();
    assert_eq!(a.render(&t), ["a", "b", "c", "b"]);
    assert!(a.equivalent(&a.parse_word(&["b", "a"]).unwrap(), &a.parse_word(&["a", "b"]).unwrap()).unwrap());
    assert!(!a.equivalent(&a.parse_word(&["a", "c"]).unwrap(), &a.parse_word(&["c", "a"]).unwrap()).unwrap());
}

#[test]
fn unknown_letters_are_rejected() {
    let a = abc();
    assert!(a.normalize_names(&["a", "z"]).is_err());
    assert!(TraceAlphabet::new(["a", "a"]).is_err());
}

#[test]
fn primes_have_one_maximal_occurrence() {
    let a = abc();
    let ab = a.normalize_names(&["a", "b"]).unwrap();
    let abc = a.normalize_names(&["a", "b", "c"]).unwrap();
    assert!(!a.is_prime(&ab));
    assert!(a.is_prime(&abc));
    assert!(a.is_prime(&a.normalize_names(&["b"]).unwrap()));
}

#[test]
fn join_of_incompatible_traces_is_none() {
    let a = abc();
    let ac = a.normalize_names(&["a", "c"]).unwrap();
    let bc = a.normalize_names(&["b", "c"]).unwrap();
    // each c has seen a different past
    assert_eq!(a.join(&ac, &bc), None);
    let x = a.normalize_names(&["a"]).unwrap();
    let y = a.normalize_names(&["b"]).unwrap();
    assert_eq!(a.render(&a.join(&x, &y).unwrap()), ["a", "b"]);
}

#[test]
fn oracle_agrees_on_small_alphabets() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=4 {
        for _ in 0..6 {
            let alpha = random_alphabet(&mut rng, n, 0.5);
            let o = TraceOracle::new(&alpha, 5);
            assert_eq!(o.disagreements(), Vec::<String>::new());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalize_matches_brute_force(seed in any::<u64>(), n in 1usize..5, raw in prop::collection::vec(any::<u8>(), 0..7)) {
        let (alpha, w) = setup(seed, n, &raw);
        let t = alpha.normalize(&w).unwrap();
        prop_assert_eq!(t.word(), &brute_normal_form(&alpha, &w)[..]);
        prop_assert_eq!(alpha.normalize(t.word()).unwrap(), t.clone());
        prop_assert!(swap_closure(&alpha, &w).contains(t.word()));
        prop_assert_eq!(alpha.is_prime(&t), !w.is_empty() && brute_is_prime(&alpha, &w));
    }

    #[test]
    fn prefixes_and_joins(seed in any::<u64>(), n in 1usize..5, raw in prop::collection::vec(any::<u8>(), 0..7), cut in 0usize..7) {
        let (alpha, w) = setup(seed, n, &raw);
        let cut = cut.min(w.len());
        let t = alpha.normalize(&w).unwrap();
        let p = alpha.normalize(&w[..cut]).unwrap();
        prop_assert!(alpha.is_prefix(&p, &t));
        prop_assert_eq!(alpha.join(&p, &t), Some(t.clone()));
        prop_assert_eq!(alpha.join(&t, &p), Some(t.clone()));
        let q = alpha.normalize(&w[cut..]).unwrap();
        prop_assert_eq!(alpha.join(&p, &q), alpha.join(&q, &p));
        if let Some(j) = alpha.join(&p, &q) {
            prop_assert!(alpha.is_prefix(&p, &j) && alpha.is_prefix(&q, &j));
        }
        for pp in alpha.prime_prefixes(&t) {
            prop_assert!(alpha.is_prime(&pp));
            prop_assert!(alpha.is_prefix(&pp, &t));
        }
    }
}
