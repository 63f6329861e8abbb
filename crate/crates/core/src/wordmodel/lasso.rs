//! Finite unions of `U·V^ω` and membership of ultimately periodic words.

use std::fmt;

use super::{check_alphabet, RegularLang, WordError};

/// `⋃ Uᵢ·Vᵢ^ω` with no `Vᵢ` containing `ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LassoLang {
    letters: String,
    parts: Vec<(RegularLang, RegularLang)>,
}

impl LassoLang {
    pub fn new(letters: &str, parts: Vec<(RegularLang, RegularLang)>) -> Result<Self, WordError> {
        let alphabet: String = check_alphabet(letters)?.into_iter().collect();
        for (u, v) in &parts {
            for l in [u, v] {
                if l.alphabet() != alphabet {
                    return Err(WordError::AlphabetMismatch { left: alphabet, right: l.alphabet() });
                }
            }
            if v.contains_epsilon() {
                return Err(WordError::EpsilonInOmegaBase);
            }
        }
        Ok(LassoLang { letters: alphabet, parts })
    }

    pub fn empty(letters: &str) -> Self {
        LassoLang { letters: letters.to_string(), parts: Vec::new() }
    }

    pub fn letters(&self) -> &str {
        &self.letters
    }

    pub fn parts(&self) -> &[(RegularLang, RegularLang)] {
        &self.parts
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        LassoLang { letters: self.letters.clone(), parts }
    }
}

/// `L^ω` as the single pair `({ε}, L)`.
pub fn omega_power(l: &RegularLang) -> Result<LassoLang, WordError> {
    let eps = RegularLang::epsilon(&l.alphabet())?;
    LassoLang::new(&l.alphabet(), vec![(eps, l.clone())])
}

/// `L·W`: `L` is prepended to every prefix language of `W`.
pub fn lasso_action(l: &RegularLang, w: &LassoLang) -> Result<LassoLang, WordError> {
    let parts = w.parts.iter().map(|(u, v)| Ok((l.concat(u)?, v.clone()))).collect::<Result<Vec<_>, WordError>>()?;
    LassoLang::new(&l.alphabet(), parts)
}

/// The ultimately periodic word `u·v^ω` with positions folded onto
/// `0..|u|+|v|`.
struct Lasso {
    letters: Vec<usize>,
    loop_start: usize,
}

impl Lasso {
    fn new(lang: &RegularLang, u: &str, v: &str) -> Result<Self, WordError> {
        if v.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        let mut letters = lang.encode(u)?;
        letters.extend(lang.encode(v)?);
        Ok(Lasso { letters, loop_start: u.len() })
    }

    fn len(&self) -> usize {
        self.letters.len()
    }

    fn step(&self, c: usize) -> usize {
        if c + 1 < self.len() {
            c + 1
        } else {
            self.loop_start
        }
    }

    /// Folded positions `c` such that `lang` accepts the factor read from
    /// `from` up to `c` (a nonempty factor when `nonempty`).
    fn accepting_ends(&self, lang: &RegularLang, from: usize, nonempty: bool) -> Vec<bool> {
        let n = self.len();
        let states = lang.dfa.len();
        let mut seen = vec![false; n * states];
        let mut ends = vec![false; n];
        let mut stack = Vec::new();
        if !nonempty {
            seen[from * states] = true;
            stack.push((from, 0usize));
        } else {
            let q = lang.dfa.next[0][self.letters[from]];
            let c = self.step(from);
            seen[c * states + q] = true;
            stack.push((c, q));
        }
        while let Some((c, q)) = stack.pop() {
            if lang.dfa.accept[q] {
                ends[c] = true;
            }
            let t = (self.step(c), lang.dfa.next[q][self.letters[c]]);
            if !seen[t.0 * states + t.1] {
                seen[t.0 * states + t.1] = true;
                stack.push(t);
            }
        }
        ends
    }

    fn in_part(&self, u: &RegularLang, v: &RegularLang) -> bool {
        let n = self.len();
        let starts = self.accepting_ends(u, 0, false);
        let edges: Vec<Vec<bool>> = (0..n).map(|c| self.accepting_ends(v, c, true)).collect();
        let mut reach = starts.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&c| starts[c]).collect();
        while let Some(c) = stack.pop() {
            for d in 0..n {
                if edges[c][d] && !reach[d] {
                    reach[d] = true;
                    stack.push(d);
                }
            }
        }
        // An infinite factorization exists iff a reachable position lies on a cycle.
        (0..n).filter(|&c| reach[c]).any(|c| {
            let mut seen = vec![false; n];
            let mut stack = vec![c];
            while let Some(x) = stack.pop() {
                for d in 0..n {
                    if edges[x][d] {
                        if d == c {
                            return true;
                        }
                        if !seen[d] {
                            seen[d] = true;
                            stack.push(d);
                        }
                    }
                }
            }
            false
        })
    }
}

/// Is `u·v^ω` in `l`?
pub fn lasso_member(u: &str, v: &str, l: &LassoLang) -> Result<bool, WordError> {
    let Some((first, _)) = l.parts.first() else {
        for c in u.chars().chain(v.chars()) {
            if !l.letters.contains(c) {
                return Err(WordError::UnknownLetter(c));
            }
        }
        return if v.is_empty() { Err(WordError::EmptyPeriod) } else { Ok(false) };
    };
    let word = Lasso::new(first, u, v)?;
    Ok(l.parts.iter().any(|(pu, pv)| word.in_part(pu, pv)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedVerdict {
    /// Agreement on every `u·v^ω` with `|u| <= B` and `1 <= |v| <= B`.
    EqualUpTo(usize),
    /// A word in exactly one of the two languages.
    Counterexample { prefix: String, period: String },
}

impl fmt::Display for BoundedVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundedVerdict::EqualUpTo(b) => write!(f, "Equal-up-to-{b}"),
            BoundedVerdict::Counterexample { prefix, period } => write!(f, "counterexample {prefix}({period})^ω"),
        }
    }
}

fn words(letters: &[char], len: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..len {
        out = out.iter().flat_map(|w| letters.iter().map(move |c| format!("{w}{c}"))).collect();
    }
    out
}

fn is_primitive(w: &str) -> bool {
    let n = w.len();
    (1..n).filter(|d| n % d == 0).all(|d| w[..d].repeat(n / d) != w)
}

/// Compare two lasso languages on all ultimately periodic words with prefix
/// and period of length at most `bound`.
///
/// Non-primitive periods and prefixes ending in the period's last letter
/// denote words already covered by shorter descriptions and are skipped.
pub fn lasso_equal_bounded(l1: &LassoLang, l2: &LassoLang, bound: usize) -> Result<BoundedVerdict, WordError> {
    if l1.letters != l2.letters {
        return Err(WordError::AlphabetMismatch { left: l1.letters.clone(), right: l2.letters.clone() });
    }
    let letters: Vec<char> = l1.letters.chars().collect();
    for vlen in 1..=bound {
        for v in words(&letters, vlen).into_iter().filter(|v| is_primitive(v)) {
            for ulen in 0..=bound {
                for u in words(&letters, ulen) {
                    if u.chars().last().is_some_and(|c| v.ends_with(c)) {
                        continue;
                    }
                    if lasso_member(&u, &v, l1)? != lasso_member(&u, &v, l2)? {
                        return Ok(BoundedVerdict::Counterexample { prefix: u, period: v });
                    }
                }
            }
        }
    }
    Ok(BoundedVerdict::EqualUpTo(bound))
}
