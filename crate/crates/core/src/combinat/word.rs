//! Words over the letters `1, …, s, 1ᵗ, …, sᵗ` and their equivalences.
//!
//! Letters are ordered by label, with `j` before `jᵗ`; words compare
//! lexicographically. Canonical forms under the transpose (`t`), cyclic
//! (`c`) and combined (`ct`) equivalences are the least members of the class.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Something with an involutive transpose. Sequences of such elements are
/// transposed by reversing and flipping every element.
pub trait Transposable: Clone + Ord {
    fn flipped(&self) -> Self;
}

pub fn transpose_seq<T: Transposable>(seq: &[T]) -> Vec<T> {
    seq.iter().rev().map(Transposable::flipped).collect()
}

pub fn least_rotation<T: Ord + Clone>(seq: &[T]) -> Vec<T> {
    let n = seq.len();
    (0..n.max(1))
        .map(|k| {
            seq[k.min(n)..]
                .iter()
                .chain(&seq[..k.min(n)])
                .cloned()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

pub fn canon_t_seq<T: Transposable>(seq: &[T]) -> Vec<T> {
    let tr = transpose_seq(seq);
    if tr.as_slice() < seq {
        tr
    } else {
        seq.to_vec()
    }
}

pub fn canon_ct_seq<T: Transposable>(seq: &[T]) -> Vec<T> {
    least_rotation(seq).min(least_rotation(&transpose_seq(seq)))
}

/// The equivalence used to canonicalize words.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Equivalence {
    T,
    C,
    Ct,
}

/// A matrix label, possibly transposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub label: u32,
    pub transposed: bool,
}

impl Letter {
    pub fn new(label: u32) -> Self {
        Letter {
            label,
            transposed: false,
        }
    }

    pub fn t(label: u32) -> Self {
        Letter {
            label,
            transposed: true,
        }
    }
}

impl Transposable for Letter {
    fn flipped(&self) -> Self {
        Letter {
            label: self.label,
            transposed: !self.transposed,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.transposed {
            write!(f, "{}^t", self.label)
        } else {
            write!(f, "{}", self.label)
        }
    }
}

/// A nonempty word in letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::Precondition("words are nonempty".into()));
        }
        Ok(Word(letters))
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    pub fn transpose(&self) -> Word {
        Word(transpose_seq(&self.0))
    }

    /// Occurrences of `label`, transposed or not.
    pub fn degree(&self, label: u32) -> usize {
        self.0.iter().filter(|l| l.label == label).count()
    }

    /// Occurrences of the untransposed letter `label`.
    pub fn degree_plain(&self, label: u32) -> usize {
        self.0
            .iter()
            .filter(|l| l.label == label && !l.transposed)
            .count()
    }

    /// The shortest `u` with `self = u^k`, and `k`.
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.0.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (d..n).all(|i| self.0[i] == self.0[i - d]) {
                return (Word(self.0[..d].to_vec()), n / d);
            }
        }
        unreachable!("a word is its own first power")
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive_root().1 == 1
    }

    pub fn canon_t(&self) -> Word {
        Word(canon_t_seq(&self.0))
    }

    pub fn canon_c(&self) -> Word {
        Word(least_rotation(&self.0))
    }

    pub fn canon_ct(&self) -> Word {
        Word(canon_ct_seq(&self.0))
    }

    pub fn canon(&self, mode: Equivalence) -> Word {
        match mode {
            Equivalence::T => self.canon_t(),
            Equivalence::C => self.canon_c(),
            Equivalence::Ct => self.canon_ct(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `1·2^t·1`; `.` is accepted in place of `·`.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split(['·', '.'])
            .map(|tok| {
                let tok = tok.trim();
                let (num, transposed) = match tok.strip_suffix("^t") {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                let label: u32 = num
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad letter {tok:?}")))?;
                if label == 0 {
                    return Err(Error::Parse("labels start at 1".into()));
                }
                Ok(Letter { label, transposed })
            })
            .collect::<Result<Vec<_>>>()?;
        Word::new(letters)
    }
}

impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A multiset of words, keyed by canonical representative under `mode`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WordMultiset {
    mode: Equivalence,
    counts: BTreeMap<Word, usize>,
}

impl WordMultiset {
    pub fn new(mode: Equivalence) -> Self {
        WordMultiset {
            mode,
            counts: BTreeMap::new(),
        }
    }

    pub fn from_words<'a, I: IntoIterator<Item = &'a Word>>(mode: Equivalence, words: I) -> Self {
        let mut ms = Self::new(mode);
        for w in words {
            ms.insert(w);
        }
        ms
    }

    pub fn mode(&self) -> Equivalence {
        self.mode
    }

    pub fn insert(&mut self, w: &Word) {
        self.insert_many(w, 1);
    }

    pub fn insert_many(&mut self, w: &Word, k: usize) {
        if k > 0 {
            *self.counts.entry(w.canon(self.mode)).or_insert(0) += k;
        }
    }

    pub fn count(&self, w: &Word) -> usize {
        self.counts.get(&w.canon(self.mode)).copied().unwrap_or(0)
    }

    /// Distinct canonical words with multiplicities, ascending.
    pub fn entries(&self) -> impl Iterator<Item = (&Word, usize)> {
        self.counts.iter().map(|(w, &k)| (w, k))
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Removes one occurrence per element of `other`; missing elements are
    /// ignored.
    pub fn minus(&self, other: &WordMultiset) -> Result<WordMultiset> {
        if self.mode != other.mode {
            return Err(Error::ModeMismatch(self.mode, other.mode));
        }
        let mut out = self.clone();
        for (w, k) in other.entries() {
            if let Some(c) = out.counts.get_mut(w) {
                *c = c.saturating_sub(k);
                if *c == 0 {
                    out.counts.remove(w);
                }
            }
        }
        Ok(out)
    }
}

pub fn multiset_equal(a: &WordMultiset, b: &WordMultiset) -> Result<bool> {
    if a.mode != b.mode {
        return Err(Error::ModeMismatch(a.mode, b.mode));
    }
    Ok(a.counts == b.counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Every word of length 1..=max over labels 1..=2, transposes included.
    fn all_words(max: usize) -> Vec<Word> {
        let alphabet = [Letter::new(1), Letter::t(1), Letter::new(2), Letter::t(2)];
        let mut out = Vec::new();
        let mut layer: Vec<Vec<Letter>> = vec![vec![]];
        for _ in 0..max {
            layer = layer
                .iter()
                .flat_map(|p| {
                    alphabet
                        .iter()
                        .map(move |l| p.iter().copied().chain([*l]).collect())
                })
                .collect();
            out.extend(layer.iter().map(|v: &Vec<Letter>| Word(v.clone())));
        }
        out
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(w("1·2^t·1").to_string(), "1·2^t·1");
        assert_eq!(w("1.2^t"), w("1·2^t"));
        assert!("".parse::<Word>().is_err());
        assert!("0".parse::<Word>().is_err());
        assert!("1·x".parse::<Word>().is_err());
    }

    #[test]
    fn primitivity() {
        assert!(w("1·2").is_primitive());
        assert!(!w("1·2·1·2").is_primitive());
        assert!(w("1·2·1").is_primitive());
        assert_eq!(w("1·1·1").primitive_root(), (w("1"), 3));
        assert_eq!(w("1·2^t·1·2^t").primitive_root(), (w("1·2^t"), 2));
    }

    #[test]
    fn canonical_forms() {
        // Candidates 1·2ᵗ, 2ᵗ·1, 2·1ᵗ, 1ᵗ·2.
        assert_eq!(w("1·2^t").canon_ct(), w("1·2^t"));
        assert_eq!(w("2·1^t").canon_ct(), w("1·2^t"));
        assert_eq!(w("2^t·1^t").canon_t(), w("1·2"));
        assert_eq!(w("2·1").canon_c(), w("1·2"));
        assert_eq!(w("2·1").canon_t(), w("1^t·2^t"));
    }

    #[test]
    fn transpose_is_an_involution() {
        for word in all_words(4) {
            assert_eq!(word.transpose().transpose(), word);
        }
    }

    fn ct_orbit(word: &Word) -> Vec<Word> {
        let mut out = Vec::new();
        for base in [word.clone(), word.transpose()] {
            for k in 0..base.len() {
                let mut v = base.0.clone();
                v.rotate_left(k);
                out.push(Word(v));
            }
        }
        out
    }

    #[test]
    fn ct_canon_separates_orbits() {
        let words = all_words(3);
        for a in &words {
            let orbit = ct_orbit(a);
            for b in &words {
                let related = orbit.contains(b);
                assert_eq!(related, a.canon_ct() == b.canon_ct(), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn multisets() {
        let a = WordMultiset::from_words(Equivalence::T, &[w("1·2^t"), w("3^t·4"), w("5·6")]);
        let b = WordMultiset::from_words(Equivalence::T, &[w("2·1^t")]);
        let expected = WordMultiset::from_words(Equivalence::T, &[w("4^t·3"), w("5·6")]);
        assert!(multiset_equal(&a.minus(&b).unwrap(), &expected).unwrap());

        let word = w("1·2^t·2");
        let single = WordMultiset::from_words(Equivalence::T, [&word]);
        let single_t = WordMultiset::from_words(Equivalence::T, [&word.transpose()]);
        assert!(multiset_equal(&single, &single_t).unwrap());

        let rot = WordMultiset::from_words(Equivalence::C, &[w("1·2"), w("2·1")]);
        assert_eq!(rot.entries().collect::<Vec<_>>(), vec![(&w("1·2"), 2)]);

        assert!(matches!(
            multiset_equal(&a, &rot),
            Err(Error::ModeMismatch(..))
        ));
    }
}
