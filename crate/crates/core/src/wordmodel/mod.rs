//! Regular languages and ultimately periodic ω-languages over a small
//! alphabet, as a second instance of the algebra contracts and as an oracle
//! for identities.
//!
//! A [`RegularLang`] is kept as a trimmed, minimal, complete DFA; every
//! operation rebuilds that form. A [`LassoLang`] is a finite union of
//! `U·V^ω` with `ε ∉ V`.

mod lasso;
mod regex;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::matrix::{OmegaAlgebra, StarSemiring};

pub use lasso::{lasso_action, lasso_equal_bounded, lasso_member, omega_power, BoundedVerdict, LassoLang};
pub use regex::parse_regex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("alphabets differ: {left:?} vs {right:?}")]
    AlphabetMismatch { left: String, right: String },
    #[error("the ω-power base contains the empty word")]
    EpsilonInOmegaBase,
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),
    #[error("regex syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("the period of a lasso word must be nonempty")]
    EmptyPeriod,
    #[error("alphabet must be a nonempty set of distinct lowercase letters, got {0:?}")]
    BadAlphabet(String),
}

/// A complete DFA; state 0 is the start.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Dfa {
    next: Vec<Vec<usize>>,
    accept: Vec<bool>,
}

impl Dfa {
    fn len(&self) -> usize {
        self.accept.len()
    }

    fn run(&self, from: usize, word: &[usize]) -> usize {
        word.iter().fold(from, |s, &a| self.next[s][a])
    }

    /// Restrict to reachable states and merge equivalent ones.
    fn minimize(&self, letters: usize) -> Dfa {
        let mut order = vec![0];
        let mut index = HashMap::from([(0usize, 0usize)]);
        let mut k = 0;
        while k < order.len() {
            let s = order[k];
            for a in 0..letters {
                let t = self.next[s][a];
                if !index.contains_key(&t) {
                    index.insert(t, order.len());
                    order.push(t);
                }
            }
            k += 1;
        }
        let mut class: Vec<usize> = order.iter().map(|&s| usize::from(self.accept[s])).collect();
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let refined: Vec<usize> = order
                .iter()
                .enumerate()
                .map(|(i, &s)| {
                    let sig = (0..letters).map(|a| class[index[&self.next[s][a]]]).collect();
                    let fresh = ids.len();
                    *ids.entry((class[i], sig)).or_insert(fresh)
                })
                .collect();
            let before = class.iter().collect::<BTreeSet<_>>().len();
            let stable = ids.len() == before;
            class = refined;
            if stable {
                break;
            }
        }
        let count = class.iter().max().map_or(0, |m| m + 1);
        let mut next = vec![Vec::new(); count];
        let mut accept = vec![false; count];
        for (i, &s) in order.iter().enumerate() {
            let c = class[i];
            if next[c].is_empty() {
                next[c] = (0..letters).map(|a| class[index[&self.next[s][a]]]).collect();
                accept[c] = self.accept[s];
            }
        }
        Dfa { next, accept }.renumber(letters)
    }

    /// Breadth-first numbering from the start, so equal minimal DFAs are
    /// identical.
    fn renumber(&self, letters: usize) -> Dfa {
        let mut order = vec![0];
        let mut index = HashMap::from([(0usize, 0usize)]);
        let mut k = 0;
        while k < order.len() {
            for a in 0..letters {
                let t = self.next[order[k]][a];
                if !index.contains_key(&t) {
                    index.insert(t, order.len());
                    order.push(t);
                }
            }
            k += 1;
        }
        Dfa {
            next: order.iter().map(|&s| self.next[s].iter().map(|t| index[t]).collect()).collect(),
            accept: order.iter().map(|&s| self.accept[s]).collect(),
        }
    }
}

/// An ε-free NFA used only as an intermediate for concatenation and star.
struct Nfa {
    start: BTreeSet<usize>,
    next: Vec<Vec<BTreeSet<usize>>>,
    accept: Vec<bool>,
}

impl Nfa {
    fn determinize(&self, letters: usize) -> Dfa {
        let mut sets = vec![self.start.clone()];
        let mut index = HashMap::from([(self.start.clone(), 0usize)]);
        let mut next = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(letters);
            for a in 0..letters {
                let target: BTreeSet<usize> = sets[i].iter().flat_map(|&s| self.next[s][a].iter().copied()).collect();
                let j = *index.entry(target.clone()).or_insert_with(|| {
                    sets.push(target);
                    queue.push_back(sets.len() - 1);
                    sets.len() - 1
                });
                row.push(j);
            }
            if next.len() <= i {
                next.resize(i + 1, Vec::new());
            }
            next[i] = row;
        }
        let accept = sets.iter().map(|set| set.iter().any(|&s| self.accept[s])).collect();
        Dfa { next, accept }.minimize(letters)
    }
}

/// A regular language over a fixed alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct RegularLang {
    alphabet: Vec<char>,
    dfa: Dfa,
}

fn check_alphabet(letters: &str) -> Result<Vec<char>, WordError> {
    let chars: Vec<char> = letters.chars().collect();
    let set: BTreeSet<char> = chars.iter().copied().collect();
    if chars.is_empty() || set.len() != chars.len() || !chars.iter().all(char::is_ascii_lowercase) {
        return Err(WordError::BadAlphabet(letters.to_string()));
    }
    Ok(set.into_iter().collect())
}

impl RegularLang {
    fn with(alphabet: &[char], dfa: Dfa) -> Self {
        RegularLang { alphabet: alphabet.to_vec(), dfa: dfa.minimize(alphabet.len()) }
    }

    fn sink(alphabet: &[char], accept_start: bool) -> Dfa {
        let k = alphabet.len();
        Dfa { next: vec![vec![1; k], vec![1; k]], accept: vec![accept_start, false] }
    }

    /// `∅` over `letters` (e.g. `"ab"`).
    pub fn empty(letters: &str) -> Result<Self, WordError> {
        let alphabet = check_alphabet(letters)?;
        let dfa = Self::sink(&alphabet, false);
        Ok(Self::with(&alphabet, dfa))
    }

    /// `{ε}` over `letters`.
    pub fn epsilon(letters: &str) -> Result<Self, WordError> {
        let alphabet = check_alphabet(letters)?;
        let dfa = Self::sink(&alphabet, true);
        Ok(Self::with(&alphabet, dfa))
    }

    /// `{c}` over `letters`.
    pub fn letter(letters: &str, c: char) -> Result<Self, WordError> {
        let alphabet = check_alphabet(letters)?;
        let a = alphabet.iter().position(|&x| x == c).ok_or(WordError::UnknownLetter(c))?;
        let k = alphabet.len();
        let mut next = vec![vec![2; k], vec![2; k], vec![2; k]];
        next[0][a] = 1;
        Ok(Self::with(&alphabet, Dfa { next, accept: vec![false, true, false] }))
    }

    pub fn parse(regex: &str, letters: &str) -> Result<Self, WordError> {
        parse_regex(regex, letters)
    }

    pub fn alphabet(&self) -> String {
        self.alphabet.iter().collect()
    }

    /// Number of states of the minimal complete DFA.
    pub fn state_count(&self) -> usize {
        self.dfa.len()
    }

    fn same_alphabet(&self, other: &Self) -> Result<(), WordError> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(WordError::AlphabetMismatch { left: self.alphabet(), right: other.alphabet() })
        }
    }

    fn encode(&self, word: &str) -> Result<Vec<usize>, WordError> {
        word.chars()
            .map(|c| self.alphabet.iter().position(|&x| x == c).ok_or(WordError::UnknownLetter(c)))
            .collect()
    }

    fn letters(&self) -> usize {
        self.alphabet.len()
    }

    pub fn accepts(&self, word: &str) -> Result<bool, WordError> {
        let w = self.encode(word)?;
        Ok(self.dfa.accept[self.dfa.run(0, &w)])
    }

    pub fn contains_epsilon(&self) -> bool {
        self.dfa.accept[0]
    }

    pub fn is_empty(&self) -> bool {
        !self.dfa.accept.iter().any(|&b| b)
    }

    fn product(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Result<Self, WordError> {
        self.same_alphabet(other)?;
        let k = self.letters();
        let mut pairs = vec![(0usize, 0usize)];
        let mut index = HashMap::from([((0usize, 0usize), 0usize)]);
        let mut next = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (p, q) = pairs[i];
            let row = (0..k)
                .map(|a| {
                    let t = (self.dfa.next[p][a], other.dfa.next[q][a]);
                    *index.entry(t).or_insert_with(|| {
                        pairs.push(t);
                        pairs.len() - 1
                    })
                })
                .collect();
            next.push(row);
            i += 1;
        }
        let accept = pairs.iter().map(|&(p, q)| keep(self.dfa.accept[p], other.dfa.accept[q])).collect();
        Ok(Self::with(&self.alphabet, Dfa { next, accept }))
    }

    pub fn union(&self, other: &Self) -> Result<Self, WordError> {
        self.product(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self, WordError> {
        self.product(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Result<Self, WordError> {
        self.product(other, |a, b| a && !b)
    }

    /// `L ∖ {ε}`.
    pub fn without_epsilon(&self) -> Self {
        let eps = Self::with(&self.alphabet, Self::sink(&self.alphabet, true));
        self.difference(&eps).expect("same alphabet")
    }

    pub fn concat(&self, other: &Self) -> Result<Self, WordError> {
        self.same_alphabet(other)?;
        let k = self.letters();
        let (n1, n2) = (self.dfa.len(), other.dfa.len());
        // States 0..n1 run `self`, n1.. run `other`.
        let mut next = vec![vec![BTreeSet::new(); k]; n1 + n2];
        for s in 0..n1 {
            for a in 0..k {
                let t = self.dfa.next[s][a];
                next[s][a].insert(t);
                if self.dfa.accept[t] {
                    next[s][a].insert(n1);
                }
            }
        }
        for s in 0..n2 {
            for a in 0..k {
                next[n1 + s][a].insert(n1 + other.dfa.next[s][a]);
            }
        }
        let mut start = BTreeSet::from([0]);
        if self.contains_epsilon() {
            start.insert(n1);
        }
        let accept = (0..n1).map(|_| false).chain(other.dfa.accept.iter().copied()).collect();
        let dfa = Nfa { start, next, accept }.determinize(k);
        Ok(RegularLang { alphabet: self.alphabet.clone(), dfa })
    }

    pub fn star(&self) -> Self {
        let k = self.letters();
        let n = self.dfa.len();
        // State n is a fresh accepting start; finishing a word may restart.
        let mut next = vec![vec![BTreeSet::new(); k]; n + 1];
        for s in 0..n {
            for a in 0..k {
                let t = self.dfa.next[s][a];
                next[s][a].insert(t);
                if self.dfa.accept[t] {
                    next[s][a].insert(0);
                }
            }
        }
        next[n] = next[0].clone();
        let mut accept = self.dfa.accept.clone();
        accept.push(true);
        let dfa = Nfa { start: BTreeSet::from([n]), next, accept }.determinize(k);
        RegularLang { alphabet: self.alphabet.clone(), dfa }
    }

    /// Every accepted word of length at most `max_len`, shortest first and
    /// lexicographic within a length.
    pub fn words_up_to(&self, max_len: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut layer: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
        for len in 0..=max_len {
            for (w, s) in &layer {
                if self.dfa.accept[*s] {
                    out.push(w.iter().map(|&a| self.alphabet[a]).collect());
                }
            }
            if len == max_len {
                break;
            }
            layer = layer
                .iter()
                .flat_map(|(w, s)| {
                    (0..self.letters()).map(move |a| {
                        let mut w2 = w.clone();
                        w2.push(a);
                        (w2, self.dfa.next[*s][a])
                    })
                })
                .collect();
        }
        out
    }
}

/// Exact equality by a breadth-first walk of the product automaton.
pub fn lang_equal(l1: &RegularLang, l2: &RegularLang) -> Result<bool, WordError> {
    l1.same_alphabet(l2)?;
    let mut seen = BTreeSet::from([(0usize, 0usize)]);
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    while let Some((p, q)) = queue.pop_front() {
        if l1.dfa.accept[p] != l2.dfa.accept[q] {
            return Ok(false);
        }
        for a in 0..l1.letters() {
            let t = (l1.dfa.next[p][a], l2.dfa.next[q][a]);
            if seen.insert(t) {
                queue.push_back(t);
            }
        }
    }
    Ok(true)
}

impl fmt::Debug for RegularLang {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sample = self.words_up_to(3);
        write!(f, "RegularLang({} states over {}, up to length 3: {:?})", self.dfa.len(), self.alphabet(), sample)
    }
}

/// Languages over a fixed alphabet as a star semiring acting on lasso
/// languages. Lasso equality is checked on ultimately periodic words up to
/// `bound`, and the ω-power of a language means that of its nonempty words.
#[derive(Clone, Debug)]
pub struct LanguageAlgebra {
    letters: String,
    bound: usize,
}

impl LanguageAlgebra {
    pub fn new(letters: &str, bound: usize) -> Result<Self, WordError> {
        check_alphabet(letters)?;
        Ok(LanguageAlgebra { letters: letters.to_string(), bound })
    }

    pub fn letters(&self) -> &str {
        &self.letters
    }

    pub fn bound(&self) -> usize {
        self.bound
    }
}

impl StarSemiring for LanguageAlgebra {
    type Elem = RegularLang;

    fn zero(&self) -> RegularLang {
        RegularLang::empty(&self.letters).expect("checked alphabet")
    }

    fn one(&self) -> RegularLang {
        RegularLang::epsilon(&self.letters).expect("checked alphabet")
    }

    fn join(&self, a: &RegularLang, b: &RegularLang) -> RegularLang {
        a.union(b).expect("languages of one algebra share the alphabet")
    }

    fn mul(&self, a: &RegularLang, b: &RegularLang) -> RegularLang {
        a.concat(b).expect("languages of one algebra share the alphabet")
    }

    fn star(&self, a: &RegularLang) -> RegularLang {
        a.star()
    }

    fn equal(&self, a: &RegularLang, b: &RegularLang) -> bool {
        lang_equal(a, b).expect("languages of one algebra share the alphabet")
    }
}

impl OmegaAlgebra for LanguageAlgebra {
    type Vector = LassoLang;

    fn vzero(&self) -> LassoLang {
        LassoLang::empty(&self.letters)
    }

    fn vjoin(&self, a: &LassoLang, b: &LassoLang) -> LassoLang {
        a.union(b)
    }

    fn act(&self, s: &RegularLang, v: &LassoLang) -> LassoLang {
        lasso_action(s, v).expect("languages of one algebra share the alphabet")
    }

    fn omega(&self, s: &RegularLang) -> LassoLang {
        omega_power(&s.without_epsilon()).expect("the empty word was removed")
    }

    fn vequal(&self, a: &LassoLang, b: &LassoLang) -> bool {
        matches!(lasso_equal_bounded(a, b, self.bound), Ok(BoundedVerdict::EqualUpTo(_)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(s: &str) -> RegularLang {
        RegularLang::parse(s, "ab").unwrap()
    }

    #[test]
    fn construction_examples() {
        let a_star = re("a*");
        assert_eq!(a_star.words_up_to(3), vec!["", "a", "aa", "aaa"]);
        assert_eq!(re("a").concat(&re("b")).unwrap().words_up_to(4), vec!["ab"]);
        let l = re("ab|b*");
        assert!(lang_equal(&RegularLang::empty("ab").unwrap().union(&l).unwrap(), &l).unwrap());
        assert!(re("0").is_empty());
        assert_eq!(re("1").words_up_to(2), vec![""]);
    }

    #[test]
    fn equality_examples() {
        assert!(lang_equal(&re("(a|b)*"), &re("(a*b)*a*")).unwrap());
        assert!(lang_equal(&re("(ab)*a"), &re("a(ba)*")).unwrap());
        assert!(!lang_equal(&re("a*"), &re("b*")).unwrap());
        let abc = RegularLang::parse("a", "abc").unwrap();
        assert!(matches!(lang_equal(&re("a"), &abc), Err(WordError::AlphabetMismatch { .. })));
        assert!(re("a").union(&abc).is_err());
    }

    #[test]
    fn minimal_forms_are_identical() {
        assert_eq!(re("(a|b)*"), re("(a*b)*a*"));
        assert_eq!(re("(a|b)*").state_count(), 1);
        assert_eq!(re("a|b").without_epsilon(), re("a|b"));
        assert_eq!(re("1|a").without_epsilon(), re("a"));
    }

    #[test]
    fn star_handles_epsilon_and_empty() {
        assert_eq!(re("0").star(), re("1"));
        assert_eq!(re("1").star(), re("1"));
        assert_eq!(re("(1|a)*"), re("a*"));
        assert!(re("(ab)*").accepts("abab").unwrap());
        assert!(!re("(ab)*").accepts("aba").unwrap());
        assert_eq!(re("a").accepts("c"), Err(WordError::UnknownLetter('c')));
    }
}
