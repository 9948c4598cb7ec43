//! Rational non-commutative series of the shape
//! `sum f0(b) a f1(b) a ... a fk(b)` where each `fi` is a rational function of
//! `b` with denominator `(1-b)^dm (1+b)^dp`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::kgroup::KElement;
use crate::poly;
use crate::word::Word;

/// `numerator / ((1-b)^dm (1+b)^dp)`, kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalFactor {
    num: Vec<BigInt>,
    dm: u32,
    dp: u32,
}

impl RationalFactor {
    /// Builds and normalizes `num / ((1-b)^dm (1+b)^dp)`; `num` is low degree first.
    pub fn new(num: Vec<BigInt>, dm: u32, dp: u32) -> RationalFactor {
        let mut num = num;
        poly::trim(&mut num);
        let mut f = RationalFactor { num, dm, dp };
        f.normalize();
        f
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(num: &[i64], dm: u32, dp: u32) -> RationalFactor {
        RationalFactor::new(num.iter().map(|&c| BigInt::from(c)).collect(), dm, dp)
    }

    /// Builds a factor from an arbitrary denominator, failing unless it is
    /// `c (1-b)^m (1+b)^e` with `c = 1`.
    pub fn from_fraction(num: Vec<BigInt>, den: Vec<BigInt>) -> Result<RationalFactor> {
        let mut den = den;
        poly::trim(&mut den);
        if den.is_empty() {
            return Err(Error::InvalidFactor("zero denominator".into()));
        }
        let mut m = 0;
        let mut e = 0;
        let one = BigInt::one();
        let minus_one = -BigInt::one();
        while den.len() > 1 && poly::eval(&den, &one).is_zero() {
            den = poly::scale(&poly::div_linear(&den, &one), &minus_one);
            m += 1;
        }
        while den.len() > 1 && poly::eval(&den, &minus_one).is_zero() {
            den = poly::div_linear(&den, &minus_one);
            e += 1;
        }
        if den.len() != 1 || !den[0].is_one() {
            return Err(Error::InvalidFactor(format!(
                "denominator {} is not a product of (1-b) and (1+b)",
                poly::to_string(&den, 'b')
            )));
        }
        Ok(RationalFactor::new(num, m, e))
    }

    /// The constant `c`.
    pub fn constant(c: impl Into<BigInt>) -> RationalFactor {
        RationalFactor::new(vec![c.into()], 0, 0)
    }

    /// The constant one.
    pub fn one() -> RationalFactor {
        RationalFactor::constant(1)
    }

    /// The zero function.
    pub fn zero() -> RationalFactor {
        RationalFactor::new(Vec::new(), 0, 0)
    }

    /// The monomial `b^n`.
    pub fn b_pow(n: usize) -> RationalFactor {
        let mut num = vec![BigInt::zero(); n + 1];
        num[n] = BigInt::one();
        RationalFactor::new(num, 0, 0)
    }

    /// Numerator coefficients, low degree first.
    pub fn numerator(&self) -> &[BigInt] {
        &self.num
    }

    /// Exponent of `(1-b)` in the denominator.
    pub fn dm(&self) -> u32 {
        self.dm
    }

    /// Exponent of `(1+b)` in the denominator.
    pub fn dp(&self) -> u32 {
        self.dp
    }

    /// True for the zero function.
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    fn normalize(&mut self) {
        if self.num.is_empty() {
            self.dm = 0;
            self.dp = 0;
            return;
        }
        let one = BigInt::one();
        let minus_one = -BigInt::one();
        while self.dm > 0 && poly::eval(&self.num, &one).is_zero() {
            // p / (1 - b) = -(p / (b - 1))
            self.num = poly::scale(&poly::div_linear(&self.num, &one), &minus_one);
            self.dm -= 1;
        }
        while self.dp > 0 && poly::eval(&self.num, &minus_one).is_zero() {
            self.num = poly::div_linear(&self.num, &minus_one);
            self.dp -= 1;
        }
    }

    /// Product of two factors.
    pub fn mul(&self, other: &RationalFactor) -> RationalFactor {
        RationalFactor::new(poly::mul(&self.num, &other.num), self.dm + other.dm, self.dp + other.dp)
    }

    /// Sum of two factors.
    pub fn add(&self, other: &RationalFactor) -> RationalFactor {
        let m = self.dm.max(other.dm);
        let e = self.dp.max(other.dp);
        let lift = |f: &RationalFactor| poly::mul(&f.num, &poly::denominator(m - f.dm, e - f.dp));
        RationalFactor::new(poly::add(&lift(self), &lift(other)), m, e)
    }

    /// `c * self`.
    pub fn scale(&self, c: &BigInt) -> RationalFactor {
        RationalFactor::new(poly::scale(&self.num, c), self.dm, self.dp)
    }

    /// The power series coefficients of indices `0..=upto`.
    pub fn series(&self, upto: usize) -> Vec<BigInt> {
        let inv = poly::inverse_series(&poly::denominator(self.dm, self.dp), upto);
        (0..=upto)
            .map(|c| {
                self.num
                    .iter()
                    .enumerate()
                    .take(c + 1)
                    .fold(BigInt::zero(), |acc, (j, p)| acc + p * &inv[c - j])
            })
            .collect()
    }

    /// The coefficient of `b^c` in the power series expansion.
    pub fn coeff(&self, c: usize) -> BigInt {
        self.series(c).pop().unwrap_or_default()
    }

    /// Order of the pole at `1`.
    pub fn pole_order_at_one(&self) -> u32 {
        self.dm
    }

    /// Numerator degree plus both denominator exponents, or `0` for zero.
    pub fn complexity(&self) -> usize {
        poly::degree(&self.num).unwrap_or(0) + self.dm as usize + self.dp as usize
    }

    /// Printed in the variable `var`, e.g. `b^2/(1-b)` or `(1+b)/(1-b)^2/(1+b)`.
    pub fn to_string_in(&self, var: char) -> String {
        let num = poly::to_string(&self.num, var);
        if self.dm == 0 && self.dp == 0 {
            return num;
        }
        let mut out = if poly::has_several_terms(&self.num) {
            format!("({num})")
        } else {
            num
        };
        for (exp, sign) in [(self.dm, '-'), (self.dp, '+')] {
            match exp {
                0 => {}
                1 => out.push_str(&format!("/(1{sign}{var})")),
                _ => out.push_str(&format!("/(1{sign}{var})^{exp}")),
            }
        }
        out
    }
}

impl fmt::Display for RationalFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in('b'))
    }
}

/// JSON helpers writing integers as numbers when they fit in `i64` and as
/// decimal strings otherwise.
pub(crate) mod bigint_json {
    use super::*;

    pub fn to_value(c: &BigInt) -> serde_json::Value {
        match c.to_i64() {
            Some(v) => serde_json::Value::from(v),
            None => serde_json::Value::from(c.to_string()),
        }
    }

    pub fn from_value(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| format!("non-integer number {n}")),
            serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
            other => Err(format!("expected integer, got {other}")),
        }
    }
}

impl Serialize for RationalFactor {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!({
            "num": self.num.iter().map(bigint_json::to_value).collect::<Vec<_>>(),
            "dm": self.dm,
            "dp": self.dp,
        })
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalFactor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: Vec<serde_json::Value>,
            dm: u32,
            dp: u32,
        }
        let raw = Raw::deserialize(deserializer)?;
        let num = raw
            .num
            .iter()
            .map(bigint_json::from_value)
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(D::Error::custom)?;
        Ok(RationalFactor::new(num, raw.dm, raw.dp))
    }
}

/// `f0 a f1 a ... a fk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NCTerm {
    factors: Vec<RationalFactor>,
}

impl NCTerm {
    /// Builds a term; `factors` must be non-empty.
    pub fn new(factors: Vec<RationalFactor>) -> NCTerm {
        assert!(!factors.is_empty(), "a term has at least one factor");
        NCTerm { factors }
    }

    /// The factors `f0, ..., fk`.
    pub fn factors(&self) -> &[RationalFactor] {
        &self.factors
    }

    /// Number of `a` letters, `k`.
    pub fn a_count(&self) -> usize {
        self.factors.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.factors.iter().any(RationalFactor::is_zero)
    }

    /// The coefficient of the word with gap decomposition `gaps`.
    pub fn gap_coefficient(&self, gaps: &[usize]) -> BigInt {
        if gaps.len() != self.factors.len() {
            return BigInt::zero();
        }
        let mut acc = BigInt::one();
        for (f, &c) in self.factors.iter().zip(gaps) {
            acc *= f.coeff(c);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }
}

impl fmt::Display for NCTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|g| format!("({g})")).collect();
        write!(f, "{}", parts.join("a"))
    }
}

/// A finite sum of [`NCTerm`]s.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NCSeries {
    terms: Vec<NCTerm>,
}

impl NCSeries {
    /// The zero series.
    pub fn zero() -> NCSeries {
        NCSeries::default()
    }

    /// The series `1`.
    pub fn one() -> NCSeries {
        NCSeries::from_term(NCTerm::new(vec![RationalFactor::one()]))
    }

    /// A single term.
    pub fn from_term(term: NCTerm) -> NCSeries {
        let mut s = NCSeries::zero();
        s.push_term(term);
        s
    }

    /// A single term given by its factors.
    pub fn from_factors(factors: Vec<RationalFactor>) -> NCSeries {
        NCSeries::from_term(NCTerm::new(factors))
    }

    /// The polynomial series of a finite combination of words.
    pub fn from_kelement(x: &KElement) -> NCSeries {
        let mut s = NCSeries::zero();
        for (w, c) in x.iter() {
            let mut factors: Vec<RationalFactor> =
                w.gap_decomposition().into_iter().map(RationalFactor::b_pow).collect();
            factors[0] = factors[0].scale(c);
            s.push_term(NCTerm::new(factors));
        }
        s
    }

    /// The terms as stored.
    pub fn terms(&self) -> &[NCTerm] {
        &self.terms
    }

    /// True when no terms are stored; a series can be zero without being empty.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a term, merging with a stored term that differs in at most one slot.
    fn push_term(&mut self, term: NCTerm) {
        if term.is_zero() {
            return;
        }
        for idx in 0..self.terms.len() {
            let other = &self.terms[idx];
            if other.factors.len() != term.factors.len() {
                continue;
            }
            let diffs: Vec<usize> = (0..term.factors.len())
                .filter(|&i| other.factors[i] != term.factors[i])
                .collect();
            let slot = match diffs.as_slice() {
                [] => 0,
                [i] => *i,
                _ => continue,
            };
            let merged = other.factors[slot].add(&term.factors[slot]);
            if merged.is_zero() {
                self.terms.remove(idx);
            } else {
                self.terms[idx].factors[slot] = merged;
            }
            return;
        }
        self.terms.push(term);
    }

    /// `self + other`.
    pub fn add(&self, other: &NCSeries) -> NCSeries {
        let mut out = self.clone();
        for t in &other.terms {
            out.push_term(t.clone());
        }
        out
    }

    /// `n * self`.
    pub fn scale(&self, n: &BigInt) -> NCSeries {
        let mut out = NCSeries::zero();
        for t in &self.terms {
            let mut t = t.clone();
            t.factors[0] = t.factors[0].scale(n);
            out.push_term(t);
        }
        out
    }

    /// `a * self`.
    pub fn left_mul_a(&self) -> NCSeries {
        self.map_terms(|t| {
            let mut factors = vec![RationalFactor::one()];
            factors.extend(t.factors.iter().cloned());
            NCTerm::new(factors)
        })
    }

    /// `self * a`.
    pub fn right_mul_a(&self) -> NCSeries {
        self.map_terms(|t| {
            let mut factors = t.factors.clone();
            factors.push(RationalFactor::one());
            NCTerm::new(factors)
        })
    }

    /// `f * self`.
    pub fn left_mul_rf(&self, f: &RationalFactor) -> NCSeries {
        self.map_terms(|t| {
            let mut t = t.clone();
            t.factors[0] = f.mul(&t.factors[0]);
            t
        })
    }

    /// `self * f`.
    pub fn right_mul_rf(&self, f: &RationalFactor) -> NCSeries {
        self.map_terms(|t| {
            let mut t = t.clone();
            let last = t.factors.len() - 1;
            t.factors[last] = t.factors[last].mul(f);
            t
        })
    }

    /// Product of two series.
    pub fn mul(&self, other: &NCSeries) -> NCSeries {
        let mut out = NCSeries::zero();
        for s in &self.terms {
            for t in &other.terms {
                let mut factors = s.factors.clone();
                let last = factors.pop().expect("non-empty term");
                factors.push(last.mul(&t.factors[0]));
                factors.extend(t.factors[1..].iter().cloned());
                out.push_term(NCTerm::new(factors));
            }
        }
        out
    }

    fn map_terms<F: Fn(&NCTerm) -> NCTerm>(&self, f: F) -> NCSeries {
        let mut out = NCSeries::zero();
        for t in &self.terms {
            out.push_term(f(t));
        }
        out
    }

    /// The coefficient of `w`.
    pub fn word_coefficient(&self, w: &Word) -> BigInt {
        self.gap_coefficient(&w.gap_decomposition())
    }

    /// The coefficient of the word with gap decomposition `gaps`.
    pub fn gap_coefficient(&self, gaps: &[usize]) -> BigInt {
        self.terms
            .iter()
            .map(|t| t.gap_coefficient(gaps))
            .fold(BigInt::zero(), |acc, c| acc + c)
    }

    /// All nonzero coefficients of words of length at most `max_len`.
    pub fn expand(&self, max_len: usize) -> BTreeMap<Word, BigInt> {
        let mut out = BTreeMap::new();
        let mut by_count: BTreeMap<usize, Vec<&NCTerm>> = BTreeMap::new();
        for t in &self.terms {
            by_count.entry(t.a_count()).or_default().push(t);
        }
        for (k, terms) in by_count {
            if k > max_len {
                continue;
            }
            // Per-slot series tables up to the largest gap a word of this length allows.
            let room = max_len - k;
            let tables: Vec<Vec<Vec<BigInt>>> = terms
                .iter()
                .map(|t| t.factors.iter().map(|f| f.series(room)).collect())
                .collect();
            for gaps in gap_tuples(k + 1, room) {
                let mut total = BigInt::zero();
                for table in &tables {
                    let mut acc = BigInt::one();
                    for (slot, &c) in gaps.iter().enumerate() {
                        acc *= &table[slot][c];
                        if acc.is_zero() {
                            break;
                        }
                    }
                    total += acc;
                }
                if !total.is_zero() {
                    out.insert(Word::from_gaps(&gaps), total);
                }
            }
        }
        out
    }

    /// Exact semantic equality of the two series as power series.
    pub fn equals(&self, other: &NCSeries) -> bool {
        let diff = self.add(&other.scale(&BigInt::from(-1)));
        let mut by_count: BTreeMap<usize, Vec<&NCTerm>> = BTreeMap::new();
        for t in self.terms.iter().chain(other.terms.iter()) {
            by_count.entry(t.a_count()).or_default().push(t);
        }
        let global = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .flat_map(|t| t.factors.iter())
            .map(RationalFactor::complexity)
            .max()
            .unwrap_or(0)
            + 1;
        for (k, terms) in by_count {
            let bounds: Vec<usize> = (0..=k)
                .map(|slot| slot_bound(terms.iter().map(|t| &t.factors[slot])).max(global))
                .collect();
            let diff_terms: Vec<&NCTerm> = diff.terms.iter().filter(|t| t.a_count() == k).collect();
            let tables: Vec<Vec<Vec<BigInt>>> = diff_terms
                .iter()
                .map(|t| t.factors.iter().zip(&bounds).map(|(f, &b)| f.series(b)).collect())
                .collect();
            for gaps in box_tuples(&bounds) {
                let mut total = BigInt::zero();
                for table in &tables {
                    let mut acc = BigInt::one();
                    for (slot, &c) in gaps.iter().enumerate() {
                        acc *= &table[slot][c];
                    }
                    total += acc;
                }
                if !total.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Sum of `f0` over the terms without `a`; the Hilbert series in `t = b`.
    pub fn hilbert_specialize(&self) -> RationalFactor {
        self.terms
            .iter()
            .filter(|t| t.a_count() == 0)
            .fold(RationalFactor::zero(), |acc, t| acc.add(&t.factors[0]))
    }
}

/// A bound `N` such that every factor in the list lies in the space
/// `{q / ((1-b)^M (1+b)^E) : deg q <= N}` spanned by the list; such functions are
/// determined by their coefficients of index `0..=N`.
fn slot_bound<'a, I: Iterator<Item = &'a RationalFactor>>(factors: I) -> usize {
    let mut m = 0i64;
    let mut e = 0i64;
    let mut excess = 0i64;
    for f in factors {
        m = m.max(f.dm as i64);
        e = e.max(f.dp as i64);
        let deg = poly::degree(&f.num).unwrap_or(0) as i64;
        excess = excess.max(deg - f.dm as i64 - f.dp as i64);
    }
    (excess + m + e).max(0) as usize
}

/// All tuples of `len` non-negative integers with sum at most `room`.
fn gap_tuples(len: usize, room: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(len: usize, room: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for c in 0..=room {
            cur.push(c);
            rec(len, room - c, cur, out);
            cur.pop();
        }
    }
    rec(len, room, &mut cur, &mut out);
    out
}

/// All tuples `(c0, ..., ck)` with `ci <= bounds[i]`.
fn box_tuples(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..=b).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

impl fmt::Display for NCSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(NCTerm::to_string).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Coefficient of `b^c` in the expansion of `f`.
pub fn rf_coeff(f: &RationalFactor, c: usize) -> BigInt {
    f.coeff(c)
}

/// Order of the pole of `f` at `1`.
pub fn pole_order_at_one(f: &RationalFactor) -> u32 {
    f.pole_order_at_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::w;
    use proptest::prelude::*;

    fn rf(num: &[i64], dm: u32, dp: u32) -> RationalFactor {
        RationalFactor::from_i64(num, dm, dp)
    }

    /// Independent coefficient oracle: binomial convolution of the two
    /// denominator expansions.
    fn coeff_oracle(num: &[i64], dm: u32, dp: u32, c: usize) -> BigInt {
        let neg = |m: u32, i: usize| -> BigInt {
            if m == 0 {
                BigInt::from(i64::from(i == 0))
            } else {
                crate::kgroup::binomial(i as i64 + m as i64 - 1, m as i64 - 1)
            }
        };
        let mut total = BigInt::zero();
        for (j, &p) in num.iter().enumerate() {
            if j > c {
                break;
            }
            let rest = c - j;
            for i in 0..=rest {
                let sign = if (rest - i).is_multiple_of(2) { 1 } else { -1 };
                total += BigInt::from(p) * neg(dm, i) * neg(dp, rest - i) * sign;
            }
        }
        total
    }

    #[test]
    fn rf_coeff_examples() {
        assert_eq!(rf_coeff(&rf(&[1], 1, 0), 5), BigInt::from(1));
        assert_eq!(rf_coeff(&rf(&[0, 1], 0, 1), 3), BigInt::from(1));
        assert_eq!(rf_coeff(&rf(&[1], 2, 0), 4), BigInt::from(5));
    }

    #[test]
    fn normalization() {
        let f = rf(&[1, -1], 2, 0);
        assert_eq!(f, rf(&[1], 1, 0));
        assert_eq!(pole_order_at_one(&f), 1);
        let g = rf(&[0, 1, 1], 1, 1);
        assert_eq!(g, rf(&[0, 1], 1, 0));
        assert_eq!(pole_order_at_one(&rf(&[0, 0, 0, 1], 0, 0)), 0);
        assert_eq!(pole_order_at_one(&rf(&[0, 0, 0, 1], 2, 0)), 2);
        assert_eq!(pole_order_at_one(&RationalFactor::zero()), 0);
    }

    #[test]
    fn from_fraction_rejects_other_denominators() {
        let den: Vec<BigInt> = [1, -1, -1].iter().map(|&c| BigInt::from(c)).collect();
        assert!(RationalFactor::from_fraction(vec![BigInt::one()], den).is_err());
        let den: Vec<BigInt> = [1, 0, -1].iter().map(|&c| BigInt::from(c)).collect();
        let f = RationalFactor::from_fraction(vec![BigInt::one()], den).unwrap();
        assert_eq!(f, rf(&[1], 1, 1));
    }

    #[test]
    fn series_ops_examples() {
        let a = NCSeries::one().left_mul_a();
        assert_eq!(a.terms().len(), 1);
        assert_eq!(a.terms()[0].factors(), &[RationalFactor::one(), RationalFactor::one()]);
        assert!(NCSeries::one()
            .left_mul_rf(&RationalFactor::b_pow(1))
            .equals(&NCSeries::from_kelement(&KElement::word(w("b")))));
        let two_a = a.add(&a);
        assert!(two_a.equals(&a.scale(&BigInt::from(2))));
    }

    #[test]
    fn word_coefficient_examples() {
        assert_eq!(NCSeries::one().word_coefficient(&w("")), BigInt::one());
        assert_eq!(NCSeries::one().word_coefficient(&w("b")), BigInt::zero());
        let s = NCSeries::from_factors(vec![rf(&[1], 0, 0), rf(&[0, 0, 1], 1, 0)]);
        assert_eq!(s.word_coefficient(&w("ab")), BigInt::zero());
        assert_eq!(s.word_coefficient(&w("abbb")), BigInt::one());
    }

    #[test]
    fn expand_examples() {
        assert!(NCSeries::zero().expand(5).is_empty());
        let fb = NCSeries::from_factors(vec![rf(&[0, 1], 0, 1)]);
        let e = fb.expand(3);
        assert_eq!(e.len(), 3);
        assert_eq!(e[&w("b")], BigInt::from(1));
        assert_eq!(e[&w("bb")], BigInt::from(-1));
        assert_eq!(e[&w("bbb")], BigInt::from(1));
    }

    #[test]
    fn equals_examples() {
        let one_term = NCSeries::from_factors(vec![rf(&[0, 1], 1, 0)]);
        let unnormalized = NCSeries::from_factors(vec![RationalFactor {
            num: [0, 1, 2, 1].iter().map(|&c| BigInt::from(c)).collect(),
            dm: 1,
            dp: 2,
        }]);
        assert!(one_term.equals(&unnormalized));
        let a = NCSeries::from_kelement(&KElement::word(w("a")));
        let b = NCSeries::from_kelement(&KElement::word(w("b")));
        assert!(!a.equals(&b));
    }

    #[test]
    fn equals_catches_late_disagreement() {
        // b^5 and the degree-5 truncation of 1/(1-b)^5 differ first at index 6..
        let f = NCSeries::from_factors(vec![rf(&[1], 5, 0)]);
        let trunc: Vec<i64> = f.terms()[0].factors()[0]
            .series(5)
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        let g = NCSeries::from_factors(vec![rf(&trunc, 0, 0)]);
        assert!(!f.equals(&g));
        // Two terms whose difference only shows at index 2*5.
        let p = NCSeries::from_factors(vec![rf(&[0, 0, 0, 0, 0, 1], 0, 0)]);
        let q = NCSeries::from_factors(vec![rf(&[1], 5, 0)]);
        assert!(!p.equals(&q));
        assert!(p.add(&q).equals(&q.add(&p)));
    }

    #[test]
    fn hilbert_specialize_examples() {
        let s = NCSeries::from_factors(vec![rf(&[0, 0, 0, 1], 2, 0)]);
        assert_eq!(s.hilbert_specialize(), rf(&[0, 0, 0, 1], 2, 0));
        let a = NCSeries::from_kelement(&KElement::word(w("a")));
        assert!(a.hilbert_specialize().is_zero());
    }

    #[test]
    fn display_forms() {
        let s = NCSeries::from_factors(vec![rf(&[1], 0, 0), rf(&[0, 0, 1], 1, 0)])
            .add(&NCSeries::from_factors(vec![rf(&[0, 0, 0, 1], 2, 0)]));
        assert_eq!(s.to_string(), "(1)a(b^2/(1-b)) + (b^3/(1-b)^2)");
        assert_eq!(rf(&[1, 2], 2, 1).to_string(), "(1+2*b)/(1-b)^2/(1+b)");
        assert_eq!(NCSeries::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let s = NCSeries::from_factors(vec![rf(&[1, 2], 1, 0), rf(&[0, 1], 0, 1)]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(
            text,
            r#"{"terms":[{"factors":[{"dm":1,"dp":0,"num":[1,2]},{"dm":0,"dp":1,"num":[0,1]}]}]}"#
        );
        let back: NCSeries = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }

    fn arb_rf() -> impl Strategy<Value = RationalFactor> {
        (prop::collection::vec(-3i64..=3, 0..4), 0u32..3, 0u32..3).prop_map(|(num, dm, dp)| rf(&num, dm, dp))
    }

    fn arb_series() -> impl Strategy<Value = NCSeries> {
        prop::collection::vec(prop::collection::vec(arb_rf(), 1..3), 0..3).prop_map(|terms| {
            terms
                .into_iter()
                .fold(NCSeries::zero(), |acc, fs| acc.add(&NCSeries::from_factors(fs)))
        })
    }

    proptest! {
        #[test]
        fn coeff_matches_binomial_oracle(num in prop::collection::vec(-4i64..=4, 0..5),
                                         dm in 0u32..4, dp in 0u32..4, c in 0usize..20) {
            prop_assert_eq!(rf(&num, dm, dp).coeff(c), coeff_oracle(&num, dm, dp, c));
        }

        #[test]
        fn coeff_is_additive_and_multiplicative(f in arb_rf(), g in arb_rf()) {
            let sf = f.series(20);
            let sg = g.series(20);
            let sum = f.add(&g).series(20);
            let prod = f.mul(&g).series(20);
            for c in 0..=20 {
                prop_assert_eq!(&sum[c], &(&sf[c] + &sg[c]));
                let conv = (0..=c).fold(BigInt::zero(), |acc, i| acc + &sf[i] * &sg[c - i]);
                prop_assert_eq!(&prod[c], &conv);
            }
        }

        #[test]
        fn expand_agrees_with_word_coefficient(s in arb_series()) {
            let e = s.expand(5);
            for word in Word::all_up_to(5) {
                let c = s.word_coefficient(&word);
                prop_assert_eq!(e.get(&word).cloned().unwrap_or_default(), c);
            }
        }

        #[test]
        fn equals_is_refuted_by_differing_coefficients(s in arb_series(), t in arb_series()) {
            let differs = Word::all_up_to(6)
                .iter()
                .any(|w| s.word_coefficient(w) != t.word_coefficient(w));
            if differs {
                prop_assert!(!s.equals(&t));
            }
            prop_assert!(s.equals(&s));
            prop_assert_eq!(s.equals(&t), t.equals(&s));
            prop_assert!(s.add(&t).equals(&t.add(&s)));
        }
    }
}
