//! Mazurkiewicz traces over a finite alphabet with a symmetric,
//! irreflexive independence relation.
//!
//! Traces are kept in lexicographic normal form: the least word of the
//! class, letters ordered by their index in the alphabet.

use serde::Serialize;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TraceError {
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("letter index {0} is outside the alphabet")]
    LetterOutOfRange(u32),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("independence must be irreflexive but `{0}` is independent of itself")]
    Reflexive(String),
}

#[derive(Clone, Debug)]
pub struct TraceAlphabet {
    names: Vec<String>,
    index: HashMap<String, Letter>,
    indep: Vec<bool>,
}

/// A trace in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Trace {
    word: Vec<Letter>,
}

impl Trace {
    pub fn empty() -> Self {
        Trace { word: Vec::new() }
    }

    /// The normal word.
    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

impl TraceAlphabet {
    /// Alphabet with every pair of letters dependent.
    pub fn new<S: Into<String>>(letters: impl IntoIterator<Item = S>) -> Result<Self, TraceError> {
        let names: Vec<String> = letters.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), Letter(i as u32)).is_some() {
                return Err(TraceError::DuplicateLetter(n.clone()));
            }
        }
        let n = names.len();
        Ok(TraceAlphabet { names, index, indep: vec![false; n * n] })
    }

    pub fn with_independence<S, A, B>(
        letters: impl IntoIterator<Item = S>,
        pairs: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self, TraceError>
    where
        S: Into<String>,
        A: AsRef<str>,
        B: AsRef<str>,
    {
        let mut alpha = Self::new(letters)?;
        for (a, b) in pairs {
            let a = alpha.letter(a.as_ref())?;
            let b = alpha.letter(b.as_ref())?;
            alpha.set_independent(a, b)?;
        }
        Ok(alpha)
    }

    /// Declares `a` and `b` independent (symmetrically).
    pub fn set_independent(&mut self, a: Letter, b: Letter) -> Result<(), TraceError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(TraceError::Reflexive(self.names[a.index()].clone()));
        }
        let n = self.names.len();
        self.indep[a.index() * n + b.index()] = true;
        self.indep[b.index() * n + a.index()] = true;
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len() as u32).map(Letter)
    }

    pub fn letter(&self, name: &str) -> Result<Letter, TraceError> {
        self.index.get(name).copied().ok_or_else(|| TraceError::UnknownLetter(name.to_string()))
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a.index()]
    }

    pub fn independent(&self, a: Letter, b: Letter) -> bool {
        self.indep[a.index() * self.names.len() + b.index()]
    }

    /// Independent pairs `(a, b)` with `a < b`.
    pub fn independent_pairs(&self) -> Vec<(Letter, Letter)> {
        let mut out = Vec::new();
        for a in self.letters() {
            for b in self.letters().filter(|&b| b > a) {
                if self.independent(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn check(&self, a: Letter) -> Result<(), TraceError> {
        if a.index() < self.names.len() {
            Ok(())
        } else {
            Err(TraceError::LetterOutOfRange(a.0))
        }
    }

    pub fn parse_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<Letter>, TraceError> {
        names.iter().map(|n| self.letter(n.as_ref())).collect()
    }

    /// Letters of a trace, rendered by name.
    pub fn render(&self, t: &Trace) -> Vec<String> {
        t.word.iter().map(|&a| self.names[a.index()].clone()).collect()
    }

    pub fn normalize(&self, word: &[Letter]) -> Result<Trace, TraceError> {
        for &a in word {
            self.check(a)?;
        }
        Ok(self.normalize_unchecked(word))
    }

    pub fn normalize_names<S: AsRef<str>>(&self, names: &[S]) -> Result<Trace, TraceError> {
        Ok(self.normalize_unchecked(&self.parse_word(names)?))
    }

    fn normalize_unchecked(&self, word: &[Letter]) -> Trace {
        let mut rest: Vec<Letter> = word.to_vec();
        let mut out = Vec::with_capacity(rest.len());
        while !rest.is_empty() {
            // smallest letter among the minimal occurrences
            let mut best: Option<usize> = None;
            for i in 0..rest.len() {
                let a = rest[i];
                if best.is_some_and(|b| rest[b] <= a) {
                    continue;
                }
                if rest[..i].iter().all(|&b| self.independent(a, b)) {
                    best = Some(i);
                }
            }
            let i = best.expect("a non-empty word has a minimal letter");
            out.push(rest.remove(i));
        }
        Trace { word: out }
    }

    /// Appends a letter and renormalizes.
    pub fn extend(&self, t: &Trace, a: Letter) -> Trace {
        let mut w = t.word.clone();
        w.push(a);
        self.normalize_unchecked(&w)
    }

    pub fn equivalent(&self, w1: &[Letter], w2: &[Letter]) -> Result<bool, TraceError> {
        Ok(self.normalize(w1)? == self.normalize(w2)?)
    }

    /// Occurrence indices with no dependent occurrence after them.
    fn maximal_occurrences(&self, w: &[Letter]) -> Vec<usize> {
        (0..w.len())
            .filter(|&i| w[i + 1..].iter().all(|&b| self.independent(w[i], b)))
            .collect()
    }

    /// A trace is prime when it has exactly one maximal occurrence.
    pub fn is_prime(&self, t: &Trace) -> bool {
        self.maximal_occurrences(&t.word).len() == 1
    }

    /// Removes the first occurrence of `a` from `r` if `a` is a minimal
    /// letter of `r`. Reports whether `a` occurs at all.
    fn cancel(&self, r: &mut Vec<Letter>, a: Letter) -> Cancel {
        match r.iter().position(|&b| b == a) {
            None => Cancel::Absent,
            Some(i) if r[..i].iter().all(|&b| self.independent(a, b)) => {
                r.remove(i);
                Cancel::Done
            }
            Some(_) => Cancel::Blocked,
        }
    }

    pub fn is_prefix(&self, t1: &Trace, t2: &Trace) -> bool {
        let mut r = t2.word.clone();
        t1.word.iter().all(|&a| self.cancel(&mut r, a) == Cancel::Done)
    }

    /// Least upper bound in the prefix order, `None` if there is no
    /// common upper bound.
    pub fn join(&self, t1: &Trace, t2: &Trace) -> Option<Trace> {
        let mut r = t1.word.clone();
        let mut extra = Vec::new();
        for &a in &t2.word {
            match self.cancel(&mut r, a) {
                Cancel::Done => {}
                Cancel::Absent if r.iter().all(|&b| self.independent(a, b)) => extra.push(a),
                _ => return None,
            }
        }
        let mut w = t1.word.clone();
        w.extend(extra);
        Some(self.normalize_unchecked(&w))
    }

    /// The causal past of each occurrence, one prime trace per occurrence.
    pub fn prime_prefixes(&self, t: &Trace) -> Vec<Trace> {
        let w = &t.word;
        (0..w.len())
            .map(|i| {
                let mut keep = vec![false; w.len()];
                keep[i] = true;
                for j in (0..i).rev() {
                    keep[j] = (j + 1..=i).any(|k| keep[k] && !self.independent(w[j], w[k]));
                }
                let sub: Vec<Letter> = (0..=i).filter(|&j| keep[j]).map(|j| w[j]).collect();
                self.normalize_unchecked(&sub)
            })
            .collect()
    }
}

#[derive(PartialEq, Eq)]
enum Cancel {
    Done,
    Absent,
    Blocked,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> TraceAlphabet {
        TraceAlphabet::with_independence(["a", "b", "c"], [("a", "b")]).unwrap()
    }

    #[test]
    fn normal_form_is_lexicographic() {
        let s = abc();
        let t = s.normalize_names(&["b", "a", "c"]).unwrap();
        assert_eq!(s.render(&t), ["a", "b", "c"]);
        let t = s.normalize_names(&["c", "b", "a"]).unwrap();
        assert_eq!(s.render(&t), ["c", "a", "b"]);
    }

    #[test]
    fn join_of_independent_letters() {
        let s = abc();
        let a = s.normalize_names(&["a"]).unwrap();
        let b = s.normalize_names(&["b"]).unwrap();
        let c = s.normalize_names(&["c"]).unwrap();
        assert_eq!(s.render(&s.join(&a, &b).unwrap()), ["a", "b"]);
        assert_eq!(s.join(&a, &c), None);
    }

    #[test]
    fn prime() {
        let s = abc();
        assert!(!s.is_prime(&s.normalize_names(&["a", "b"]).unwrap()));
        assert!(s.is_prime(&s.normalize_names(&["a", "b", "c"]).unwrap()));
        assert!(!s.is_prime(&Trace::empty()));
    }

    #[test]
    fn bad_input() {
        let s = abc();
        assert_eq!(s.normalize_names(&["z"]), Err(TraceError::UnknownLetter("z".into())));
        assert_eq!(s.normalize(&[Letter(7)]), Err(TraceError::LetterOutOfRange(7)));
        assert!(TraceAlphabet::with_independence(["a"], [("a", "a")]).is_err());
    }
}
