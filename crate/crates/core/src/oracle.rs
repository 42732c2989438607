//! Brute-force reference implementations. They enumerate words, firing
//! sequences and swap closures outright, so they only scale to tiny
//! inputs; their job is to cross-check the real algorithms.

use crate::net::{NetSystem, TransitionId};
use crate::trace::{Letter, Trace, TraceAlphabet};
use crate::uf::UnionFind;
use rand::Rng;
use std::collections::{BTreeSet, HashMap};

/// Every word equivalent to `w`, by repeatedly swapping adjacent
/// independent letters.
pub fn swap_closure(alpha: &TraceAlphabet, w: &[Letter]) -> BTreeSet<Vec<Letter>> {
    let mut seen = BTreeSet::from([w.to_vec()]);
    let mut stack = vec![w.to_vec()];
    while let Some(u) = stack.pop() {
        for i in 0..u.len().saturating_sub(1) {
            if alpha.independent(u[i], u[i + 1]) {
                let mut v = u.clone();
                v.swap(i, i + 1);
                if seen.insert(v.clone()) {
                    stack.push(v);
                }
            }
        }
    }
    seen
}

/// Least word of the swap closure.
pub fn brute_normal_form(alpha: &TraceAlphabet, w: &[Letter]) -> Vec<Letter> {
    swap_closure(alpha, w).into_iter().next().expect("closure contains w")
}

/// Prime iff all words of the class end with the same letter.
pub fn brute_is_prime(alpha: &TraceAlphabet, w: &[Letter]) -> bool {
    let last: BTreeSet<Letter> = swap_closure(alpha, w).iter().filter_map(|u| u.last().copied()).collect();
    last.len() == 1
}

type Bits = Vec<u64>;

fn bit(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

/// All traces of length at most `max_len`, with the prefix order
/// computed from literal word prefixes.
pub struct TraceOracle<'a> {
    alpha: &'a TraceAlphabet,
    max_len: usize,
    words: Vec<Vec<Letter>>,
    word_index: HashMap<Vec<Letter>, usize>,
    class_of: Vec<usize>,
    /// Least word of each class.
    normal: Vec<Vec<Letter>>,
    /// Classes below (prefixes of) each class, itself included.
    down: Vec<Bits>,
    up: Vec<Bits>,
}

impl<'a> TraceOracle<'a> {
    pub fn new(alpha: &'a TraceAlphabet, max_len: usize) -> Self {
        let letters: Vec<Letter> = alpha.letters().collect();
        let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &layer {
                for &a in &letters {
                    let mut v: Vec<Letter> = w.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        let word_index: HashMap<Vec<Letter>, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let mut uf = UnionFind::new(words.len());
        for (i, w) in words.iter().enumerate() {
            for j in 0..w.len().saturating_sub(1) {
                if alpha.independent(w[j], w[j + 1]) {
                    let mut v = w.clone();
                    v.swap(j, j + 1);
                    uf.union(i, word_index[&v]);
                }
            }
        }
        let mut root_class = HashMap::new();
        let mut class_of = vec![0; words.len()];
        let mut normal: Vec<Vec<Letter>> = Vec::new();
        for i in 0..words.len() {
            let r = uf.find(i);
            let c = *root_class.entry(r).or_insert_with(|| {
                normal.push(words[i].clone());
                normal.len() - 1
            });
            class_of[i] = c;
            if words[i] < normal[c] {
                normal[c] = words[i].clone();
            }
        }
        let n = normal.len();
        let blank: Bits = vec![0; n.div_ceil(64)];
        let mut down = vec![blank.clone(); n];
        let mut up = vec![blank; n];
        for (i, w) in words.iter().enumerate() {
            let c = class_of[i];
            for l in 0..=w.len() {
                let p = class_of[word_index[&w[..l]]];
                set_bit(&mut down[c], p);
                set_bit(&mut up[p], c);
            }
        }
        TraceOracle { alpha, max_len, words, word_index, class_of, normal, down, up }
    }

    pub fn num_classes(&self) -> usize {
        self.normal.len()
    }

    pub fn words(&self) -> &[Vec<Letter>] {
        &self.words
    }

    pub fn class(&self, w: &[Letter]) -> usize {
        self.class_of[self.word_index[w]]
    }

    pub fn normal(&self, c: usize) -> &[Letter] {
        &self.normal[c]
    }

    pub fn is_prefix(&self, c1: usize, c2: usize) -> bool {
        bit(&self.down[c2], c1)
    }

    /// Least common upper bound, searched among classes of length at most
    /// `max_len`; only meaningful when the two lengths sum to at most
    /// `max_len`.
    pub fn join(&self, c1: usize, c2: usize) -> Option<usize> {
        let common: Bits = self.up[c1].iter().zip(&self.up[c2]).map(|(x, y)| x & y).collect();
        // classes are numbered by length, so the first common one is shortest
        let least = common.iter().enumerate().find(|(_, &w)| w != 0).map(|(i, w)| 64 * i + w.trailing_zeros() as usize)?;
        common.iter().zip(&self.up[least]).all(|(c, u)| c & !u == 0).then_some(least)
    }

    /// Runs every trace operation of `alpha` against the enumeration and
    /// describes each disagreement.
    pub fn disagreements(&self) -> Vec<String> {
        let a = self.alpha;
        let mut out = Vec::new();
        let show = |w: &[Letter]| a.render(&a.normalize(w).expect("alphabet letters"));
        let trace = |c: usize| a.normalize(&self.normal[c]).expect("alphabet letters");
        for w in &self.words {
            let t = a.normalize(w).expect("alphabet letters");
            if t.word() != self.normal(self.class(w)) {
                out.push(format!("normalize {w:?} gave {:?}", show(w)));
            }
            let nf = self.normal(self.class(w));
            if !a.equivalent(w, nf).expect("alphabet letters") {
                out.push(format!("{w:?} not equivalent to its normal form"));
            }
        }
        // equivalence on short pairs, including inequivalent ones
        let short: Vec<&Vec<Letter>> = self.words.iter().filter(|w| w.len() <= 3).collect();
        for u in &short {
            for v in &short {
                let same = self.class(u) == self.class(v);
                if a.equivalent(u, v).expect("alphabet letters") != same {
                    out.push(format!("equivalent({u:?}, {v:?}) != {same}"));
                }
            }
        }
        let traces: Vec<Trace> = (0..self.num_classes()).map(trace).collect();
        for c in 0..self.num_classes() {
            let w = &self.normal[c];
            let prime = !w.is_empty() && brute_is_prime(a, w);
            if a.is_prime(&traces[c]) != prime {
                out.push(format!("is_prime({w:?}) != {prime}"));
            }
        }
        let half = self.max_len / 2;
        let len = |c: usize| self.normal[c].len();
        for c1 in 0..self.num_classes() {
            for c2 in 0..self.num_classes() {
                if len(c1) > half && len(c1) + len(c2) > self.max_len {
                    // classes are numbered by length: nothing further for c1
                    break;
                }
                if len(c1) <= half && a.is_prefix(&traces[c1], &traces[c2]) != self.is_prefix(c1, c2) {
                    out.push(format!("is_prefix({:?}, {:?})", self.normal[c1], self.normal[c2]));
                }
                if len(c1) + len(c2) <= self.max_len {
                    let got = a.join(&traces[c1], &traces[c2]);
                    let want = self.join(c1, c2).map(|c| traces[c].clone());
                    if got != want {
                        out.push(format!("join({:?}, {:?})", self.normal[c1], self.normal[c2]));
                    }
                }
            }
        }
        out
    }
}

/// Letters `l0, l1, ...`, each pair independent with probability `p`.
pub fn random_alphabet<R: Rng>(rng: &mut R, letters: usize, p: f64) -> TraceAlphabet {
    let names: Vec<String> = (0..letters).map(|i| format!("l{i}")).collect();
    let mut alpha = TraceAlphabet::new(names).expect("distinct names");
    for i in 0..letters {
        for j in i + 1..letters {
            if rng.gen_bool(p) {
                alpha.set_independent(Letter(i as u32), Letter(j as u32)).expect("distinct letters");
            }
        }
    }
    alpha
}

/// A net with up to the given numbers of places and transitions. Pre-
/// and post-sets are random subsets; transitions whose two sets agree
/// (which could fire forever without changing anything) are redrawn, and
/// so are nets that cannot fire four times in a row.
pub fn random_net<R: Rng>(rng: &mut R, max_places: usize, max_transitions: usize) -> NetSystem {
    loop {
        let net = draw_net(rng, max_places, max_transitions);
        if firing_traces(&net, 4).iter().any(|w| w.len() == 4) {
            return net;
        }
    }
}

fn draw_net<R: Rng>(rng: &mut R, max_places: usize, max_transitions: usize) -> NetSystem {
    let np = rng.gen_range(1..=max_places);
    let nt = rng.gen_range(1..=max_transitions);
    let places: Vec<String> = (0..np).map(|i| format!("p{i}")).collect();
    let subset = |rng: &mut R| -> Vec<String> { places.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect() };
    let mut transitions = Vec::new();
    for i in 0..nt {
        let (pre, post) = loop {
            let (pre, post) = (subset(rng), subset(rng));
            if pre != post {
                break (pre, post);
            }
        };
        transitions.push((format!("t{i}"), pre, post));
    }
    let initial = subset(rng);
    NetSystem::from_names(places, transitions, initial).expect("generated names are distinct")
}

/// Every firing sequence of length at most `k`, as brute-force normal
/// words (least word of the swap closure).
pub fn firing_traces(net: &NetSystem, k: usize) -> BTreeSet<Vec<Letter>> {
    let alpha = net.alphabet();
    let mut out = BTreeSet::new();
    let mut stack = vec![(net.initial().clone(), Vec::<Letter>::new())];
    while let Some((m, w)) = stack.pop() {
        out.insert(brute_normal_form(&alpha, &w));
        if w.len() == k {
            continue;
        }
        for t in net.transition_ids() {
            if let Ok(m2) = net.fire(&m, t) {
                let mut w2 = w.clone();
                w2.push(t.letter());
                stack.push((m2, w2));
            }
        }
    }
    out
}

/// The prime ones among `firing_traces`.
pub fn prime_firing_traces(net: &NetSystem, k: usize) -> BTreeSet<Vec<Letter>> {
    let alpha = net.alphabet();
    firing_traces(net, k).into_iter().filter(|w| !w.is_empty() && brute_is_prime(&alpha, w)).collect()
}

/// Whether the word can be fired from the initial marking.
pub fn fires(net: &NetSystem, w: &[Letter]) -> bool {
    let mut m = net.initial().clone();
    for &a in w {
        match net.fire(&m, TransitionId(a.index())) {
            Ok(m2) => m = m2,
            Err(_) => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_commuting_pair() {
        let a = TraceAlphabet::with_independence(["a", "b", "c"], [("a", "b")]).unwrap();
        let w = a.parse_word(&["b", "a", "c"]).unwrap();
        assert_eq!(swap_closure(&a, &w).len(), 2);
        assert_eq!(brute_normal_form(&a, &w), a.parse_word(&["a", "b", "c"]).unwrap());
        assert!(brute_is_prime(&a, &w));
        assert!(!brute_is_prime(&a, &w[..2]));
    }

    #[test]
    fn oracle_counts_classes() {
        // free commutative monoid on two letters: one class per multiset
        let a = TraceAlphabet::with_independence(["a", "b"], [("a", "b")]).unwrap();
        let o = TraceOracle::new(&a, 3);
        assert_eq!(o.num_classes(), 1 + 2 + 3 + 4);
        assert!(o.disagreements().is_empty());
    }
}
