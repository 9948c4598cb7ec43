//! The Grothendieck ring as the free non-commutative polynomial ring `Z{a,b}`.
//!
//! Elements are finite integer combinations of words. Every operator below is
//! defined on basis words and extended linearly.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ncseries::bigint_json;

use crate::word::{Letter, Word};

/// Binomial coefficient with the conventions `C(n, n) = 1` for every integer `n`
/// and `C(n, k) = 0` whenever `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k == n {
        return BigInt::one();
    }
    if k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// An integer linear combination of words with no zero coefficients stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct KElement {
    coeffs: BTreeMap<Word, BigInt>,
}

impl KElement {
    /// The zero element.
    pub fn zero() -> KElement {
        KElement::default()
    }

    /// The unit, i.e. the empty word.
    pub fn one() -> KElement {
        KElement::word(Word::empty())
    }

    /// A single basis word with coefficient one.
    pub fn word(w: Word) -> KElement {
        KElement::term(BigInt::one(), w)
    }

    /// `c * w`.
    pub fn term(c: impl Into<BigInt>, w: Word) -> KElement {
        let mut x = KElement::zero();
        x.add_term(c.into(), w);
        x
    }

    /// An integer multiple of the unit.
    pub fn integer(c: impl Into<BigInt>) -> KElement {
        KElement::term(c, Word::empty())
    }

    /// Builds an element from `(coefficient, word)` pairs, merging repeats.
    pub fn from_terms<I, C>(terms: I) -> KElement
    where
        I: IntoIterator<Item = (C, Word)>,
        C: Into<BigInt>,
    {
        let mut x = KElement::zero();
        for (c, w) in terms {
            x.add_term(c.into(), w);
        }
        x
    }

    /// Adds `c * w` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, c: BigInt, w: Word) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// True for the zero element.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of words with nonzero coefficient.
    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Iterates over `(word, coefficient)` in lexicographic word order.
    pub fn iter(&self) -> impl Iterator<Item = (&Word, &BigInt)> {
        self.coeffs.iter()
    }

    /// Terms in canonical print order: rank descending, then length
    /// descending, then lexicographic.
    pub fn canonical_terms(&self) -> Vec<(&Word, &BigInt)> {
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|(u, _), (v, _)| (v.rank(), v.len()).cmp(&(u.rank(), u.len())).then_with(|| u.cmp(v)));
        terms
    }

    /// The coefficient of `w`.
    pub fn coefficient(&self, w: &Word) -> BigInt {
        self.coeffs.get(w).cloned().unwrap_or_default()
    }

    /// Coefficientwise sum.
    pub fn add(&self, other: &KElement) -> KElement {
        let mut out = self.clone();
        for (w, c) in &other.coeffs {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    /// `n * self`.
    pub fn scale(&self, n: &BigInt) -> KElement {
        if n.is_zero() {
            return KElement::zero();
        }
        KElement {
            coeffs: self.coeffs.iter().map(|(w, c)| (w.clone(), c * n)).collect(),
        }
    }

    /// Ring product: bilinear extension of concatenation.
    pub fn mul(&self, other: &KElement) -> KElement {
        let mut out = KElement::zero();
        for (u, c) in &self.coeffs {
            for (v, d) in &other.coeffs {
                out.add_term(c * d, u.concat(v));
            }
        }
        out
    }

    /// `self^n` in the ring; `self^0 = 1`.
    pub fn pow(&self, n: u32) -> KElement {
        let mut acc = KElement::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Applies a basis map `word -> element` linearly.
    pub fn map_linear<F>(&self, f: F) -> KElement
    where
        F: Fn(&Word) -> KElement,
    {
        let mut out = KElement::zero();
        for (w, c) in &self.coeffs {
            for (v, d) in &f(w).coeffs {
                out.add_term(c * d, v.clone());
            }
        }
        out
    }

    /// Word reversal on the basis.
    pub fn transpose(&self) -> KElement {
        self.map_linear(|w| KElement::word(w.reverse()))
    }

    /// `mu a -> mu`, other words to zero.
    pub fn psi(&self) -> KElement {
        self.map_linear(|w| match w.last() {
            Some(Letter::A) => KElement::word(w.init()),
            _ => KElement::zero(),
        })
    }

    /// `w -> w a`.
    pub fn gamma(&self) -> KElement {
        self.map_linear(|w| KElement::word(w.push(Letter::A)))
    }

    /// `mu a^n -> sum_{i=0..n} mu a^i` with `mu` empty or ending in `b`.
    pub fn xi(&self) -> KElement {
        self.map_linear(|w| {
            let (mu, n) = w.split_trailing_a();
            trailing_block_sum(&mu, n + 1)
        })
    }

    /// `mu a^n -> sum_{i<n} mu a^i`.
    pub fn xires(&self) -> KElement {
        self.map_linear(|w| {
            let (mu, n) = w.split_trailing_a();
            trailing_block_sum(&mu, n)
        })
    }

    /// Same class as [`KElement::xires`].
    pub fn xicor(&self) -> KElement {
        self.xires()
    }

    /// `1 -> 0`, `a mu -> a mu + mu`, `b mu -> mu`.
    pub fn sigma(&self) -> KElement {
        self.map_linear(|w| match w.first() {
            None => KElement::zero(),
            Some(Letter::A) => KElement::word(w.clone()).add(&KElement::word(w.tail())),
            Some(Letter::B) => KElement::word(w.tail()),
        })
    }

    /// `w -> (-1)^{len w} conjugate(w)`; the ring map `a -> -b`, `b -> -a`.
    pub fn dual(&self) -> KElement {
        self.map_linear(|w| {
            let sign = if w.len() % 2 == 0 { 1 } else { -1 };
            KElement::term(sign, w.conjugate())
        })
    }

    /// Keeps the words starting with `a`.
    pub fn pi(&self) -> KElement {
        self.map_linear(|w| match w.first() {
            Some(Letter::A) => KElement::word(w.clone()),
            _ => KElement::zero(),
        })
    }

    /// `transpose . xi . psi . transpose`.
    pub fn kappa(&self) -> KElement {
        self.transpose().psi().xi().transpose()
    }

    /// Strips a leading `a`, other words to zero.
    pub fn beta_a(&self) -> KElement {
        self.map_linear(|w| match w.first() {
            Some(Letter::A) => KElement::word(w.tail()),
            _ => KElement::zero(),
        })
    }

    /// Strips a leading `b`, other words to zero.
    pub fn beta_b(&self) -> KElement {
        self.map_linear(|w| match w.first() {
            Some(Letter::B) => KElement::word(w.tail()),
            _ => KElement::zero(),
        })
    }

    /// Applies `beta` for each letter of `word`, first letter first.
    pub fn beta_word(&self, word: &Word) -> KElement {
        word.letters().iter().fold(self.clone(), |acc, l| match l {
            Letter::A => acc.beta_a(),
            Letter::B => acc.beta_b(),
        })
    }

    /// Largest rank with a nonzero coefficient; `None` for zero.
    pub fn max_rank(&self) -> Option<usize> {
        self.coeffs.keys().map(Word::rank).max()
    }

    /// Largest word length with a nonzero coefficient; `None` for zero.
    pub fn max_len(&self) -> Option<usize> {
        self.coeffs.keys().map(Word::len).max()
    }
}

fn trailing_block_sum(mu: &Word, count: usize) -> KElement {
    let mut out = KElement::zero();
    let mut cur = mu.clone();
    for _ in 0..count {
        out.add_term(BigInt::one(), cur.clone());
        cur = cur.push(Letter::A);
    }
    out
}

/// Class of the injective envelope of the standard module of `lambda`:
/// `J(g0) a J(g1) ... a J(gr)` over the gap decomposition.
pub fn injective_class(lambda: &Word) -> KElement {
    let a = KElement::word(Word::repeat(Letter::A, 1));
    lambda
        .gap_decomposition()
        .iter()
        .enumerate()
        .fold(KElement::one(), |acc, (i, &g)| {
            let acc = if i > 0 { acc.mul(&a) } else { acc };
            acc.mul(&finite_injective_class(g))
        })
}

/// `J(0) = 1`, `J(n) = sum_{i<n} C(n-1, i) b^{i+1}`.
pub fn finite_injective_class(n: usize) -> KElement {
    if n == 0 {
        return KElement::one();
    }
    KElement::from_terms((0..n).map(|i| (binomial(n as i64 - 1, i as i64), Word::repeat(Letter::B, i + 1))))
}

/// Local cohomology of a standard class: `lambda` when `s >= rank`, else zero.
pub fn std_local_cohomology(lambda: &Word, s: i64) -> KElement {
    if s >= lambda.rank() as i64 {
        KElement::word(lambda.clone())
    } else {
        KElement::zero()
    }
}

/// Saturation of a standard class: `lambda` when `s < rank`, else zero.
pub fn std_saturation(lambda: &Word, s: i64) -> KElement {
    if s < lambda.rank() as i64 {
        KElement::word(lambda.clone())
    } else {
        KElement::zero()
    }
}

impl fmt::Display for KElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = c.abs();
            if w.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", w.to_power_string())?;
            } else {
                write!(f, "{abs}*{}", w.to_power_string())?;
            }
        }
        Ok(())
    }
}

/// JSON form: an object from words (`"1"` for the empty word) to integers.
impl Serialize for KElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serde_json::Map::new();
        for (w, c) in self.canonical_terms() {
            let key = if w.is_empty() { "1".to_string() } else { w.to_string() };
            map.insert(key, bigint_json::to_value(c));
        }
        serde_json::Value::Object(map).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for KElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let map = serde_json::Map::deserialize(deserializer)?;
        let mut out = KElement::zero();
        for (key, value) in &map {
            let word: Word = key.parse().map_err(D::Error::custom)?;
            let c = bigint_json::from_value(value).map_err(D::Error::custom)?;
            out.add_term(c, word);
        }
        Ok(out)
    }
}

impl From<Word> for KElement {
    fn from(w: Word) -> KElement {
        KElement::word(w)
    }
}

impl Add for &KElement {
    type Output = KElement;
    fn add(self, rhs: &KElement) -> KElement {
        KElement::add(self, rhs)
    }
}

impl Sub for &KElement {
    type Output = KElement;
    fn sub(self, rhs: &KElement) -> KElement {
        KElement::add(self, &rhs.scale(&BigInt::from(-1)))
    }
}

impl Mul for &KElement {
    type Output = KElement;
    fn mul(self, rhs: &KElement) -> KElement {
        KElement::mul(self, rhs)
    }
}

impl Neg for &KElement {
    type Output = KElement;
    fn neg(self) -> KElement {
        self.scale(&BigInt::from(-1))
    }
}
