//! Words over the two-letter alphabet `{a, b}`.
//!
//! A word indexes a standard module; its rank is the number of `a` letters.
//! Every word factors uniquely as `b^{g0} a b^{g1} ... a b^{gr}`, and the
//! exponent list `(g0, ..., gr)` is its gap decomposition.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// One of the two letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// The free letter `a`.
    A,
    /// The constrained letter `b`.
    B,
}

impl Letter {
    /// The other letter.
    pub fn swap(self) -> Letter {
        match self {
            Letter::A => Letter::B,
            Letter::B => Letter::A,
        }
    }

    /// The lowercase character for this letter.
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }
}

/// A finite, possibly empty, sequence of letters.
///
/// Ordering is plain lexicographic order with `a < b`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    /// The empty word.
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// Builds a word from its letters.
    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word(letters)
    }

    /// `letter` repeated `n` times.
    pub fn repeat(letter: Letter, n: usize) -> Word {
        Word(vec![letter; n])
    }

    /// The letters of the word.
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Number of letters.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the empty word.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of `a` letters.
    pub fn rank(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::A).count()
    }

    /// The exponents `(g0, ..., gr)` with `self = b^{g0} a b^{g1} ... a b^{gr}`.
    pub fn gap_decomposition(&self) -> Vec<usize> {
        let mut gaps = vec![0];
        for &l in &self.0 {
            match l {
                Letter::A => gaps.push(0),
                Letter::B => *gaps.last_mut().expect("gaps is never empty") += 1,
            }
        }
        gaps
    }

    /// Reassembles `b^{g0} a b^{g1} ... a b^{gr}`; an empty slice gives the empty word.
    pub fn from_gaps(gaps: &[usize]) -> Word {
        let mut letters = Vec::new();
        for (i, &g) in gaps.iter().enumerate() {
            if i > 0 {
                letters.push(Letter::A);
            }
            letters.extend(std::iter::repeat_n(Letter::B, g));
        }
        Word(letters)
    }

    /// Letterwise swap `a <-> b`.
    pub fn conjugate(&self) -> Word {
        Word(self.0.iter().map(|l| l.swap()).collect())
    }

    /// The word read backwards.
    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// `self` followed by `other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `self` followed by one more letter.
    pub fn push(&self, letter: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    /// The first letter, if any.
    pub fn first(&self) -> Option<Letter> {
        self.0.first().copied()
    }

    /// The last letter, if any.
    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// The word without its first letter (empty stays empty).
    pub fn tail(&self) -> Word {
        Word(self.0.iter().skip(1).copied().collect())
    }

    /// The word without its last letter (empty stays empty).
    pub fn init(&self) -> Word {
        let n = self.0.len().saturating_sub(1);
        Word(self.0[..n].to_vec())
    }

    /// Splits off the maximal trailing block of `a`: returns `(mu, n)` with
    /// `self = mu a^n` and `mu` empty or ending in `b`.
    pub fn split_trailing_a(&self) -> (Word, usize) {
        let n = self.0.iter().rev().take_while(|&&l| l == Letter::A).count();
        (Word(self.0[..self.0.len() - n].to_vec()), n)
    }

    /// Splits off the maximal leading block of `a`: returns `(n, x)` with
    /// `self = a^n x` and `x` empty or starting with `b`.
    pub fn split_leading_a(&self) -> (usize, Word) {
        let n = self.0.iter().take_while(|&&l| l == Letter::A).count();
        (n, Word(self.0[n..].to_vec()))
    }

    /// All words of length exactly `len`, in lexicographic order.
    pub fn all_of_length(len: usize) -> Vec<Word> {
        (0..1usize << len)
            .map(|bits| {
                Word(
                    (0..len)
                        .map(|i| {
                            if bits >> (len - 1 - i) & 1 == 0 {
                                Letter::A
                            } else {
                                Letter::B
                            }
                        })
                        .collect(),
                )
            })
            .collect()
    }

    /// All words of length at most `max_len`, shortest first, then lexicographic.
    pub fn all_up_to(max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(Word::all_of_length).collect()
    }

    /// Compact form with runs written as powers, e.g. `ab^2a`; empty word is `1`.
    pub fn to_power_string(&self) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == l {
                j += 1;
            }
            out.push(l.as_char());
            if j - i > 1 {
                out.push('^');
                out.push_str(&(j - i).to_string());
            }
            i = j;
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseError;

    /// Accepts `/[ab]*/`; the single character `1` denotes the empty word.
    fn from_str(s: &str) -> Result<Word, ParseError> {
        if s == "1" {
            return Ok(Word::empty());
        }
        s.chars()
            .enumerate()
            .map(|(i, c)| match c {
                'a' => Ok(Letter::A),
                'b' => Ok(Letter::B),
                other => Err(ParseError::new(i, format!("unexpected character '{other}' in word"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Word, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for parsing a literal word in code and tests; panics on bad input.
pub fn w(s: &str) -> Word {
    s.parse().expect("literal word")
}
