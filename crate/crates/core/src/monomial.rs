//! Monomials of a principal module and their polynomial exponents.
//!
//! The basis vector `e_{i_1,…,i_r}` of the principal module of rank `r`
//! corresponds to the monomial `x_1^{i_1-1} x_2^{i_2-i_1-1} ⋯ x_r^{i_r-i_{r-1}-1}`,
//! and monomial submodules correspond to monomial ideals.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// A strictly increasing tuple of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct MonomialTuple(Vec<u64>);

/// Exponents of a monomial in `r` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u64>);

impl MonomialTuple {
    /// Validates a tuple.
    pub fn new(entries: Vec<u64>) -> Result<MonomialTuple> {
        let increasing = entries.windows(2).all(|p| p[0] < p[1]);
        if entries.first().is_some_and(|&x| x == 0) || !increasing {
            return Err(Error::InvalidTuple(entries));
        }
        Ok(MonomialTuple(entries))
    }

    /// The entries `i_1 < ⋯ < i_r`.
    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    /// Number of entries `r`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether `r = 0`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree `i_r`, or zero for the empty tuple.
    pub fn degree(&self) -> u64 {
        self.0.last().copied().unwrap_or(0)
    }

    /// `α_i` increments every entry `>= i`.
    pub fn alpha(&self, i: u64) -> MonomialTuple {
        MonomialTuple(self.0.iter().map(|&x| if x >= i { x + 1 } else { x }).collect())
    }

    /// Lexicographic order comparing the last entries first.
    pub fn cmp_last_first(&self, other: &MonomialTuple) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl TryFrom<Vec<u64>> for MonomialTuple {
    type Error = Error;

    fn try_from(v: Vec<u64>) -> Result<MonomialTuple> {
        MonomialTuple::new(v)
    }
}

impl From<MonomialTuple> for Vec<u64> {
    fn from(t: MonomialTuple) -> Vec<u64> {
        t.0
    }
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn parse_list(s: &str) -> std::result::Result<Vec<u64>, ParseError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        let value = part.trim().parse::<u64>().map_err(|_| {
            ParseError::new(
                offset,
                format!("expected a non-negative integer, found {:?}", part.trim()),
            )
        })?;
        out.push(value);
        offset += part.len() + 1;
    }
    Ok(out)
}

impl fmt::Display for MonomialTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl FromStr for ExponentVector {
    type Err = ParseError;

    /// Parses `1,0,1`.
    fn from_str(s: &str) -> std::result::Result<ExponentVector, ParseError> {
        parse_list(s).map(ExponentVector)
    }
}

/// Parses a tuple written `2,3,5`.
pub fn parse_tuple(s: &str) -> std::result::Result<std::result::Result<MonomialTuple, Error>, ParseError> {
    parse_list(s).map(MonomialTuple::new)
}

/// `(i_1 - 1, i_2 - i_1 - 1, …, i_r - i_{r-1} - 1)`.
pub fn tuple_to_exponents(t: &MonomialTuple) -> ExponentVector {
    let mut prev = 0;
    ExponentVector(
        t.0.iter()
            .map(|&x| {
                let e = x - prev - 1;
                prev = x;
                e
            })
            .collect(),
    )
}

/// Inverse of [`tuple_to_exponents`].
pub fn exponents_to_tuple(e: &ExponentVector) -> MonomialTuple {
    let mut prev = 0;
    MonomialTuple(
        e.0.iter()
            .map(|&x| {
                prev += x + 1;
                prev
            })
            .collect(),
    )
}

fn check_lengths<'a>(tuples: impl IntoIterator<Item = &'a MonomialTuple>) -> Result<Option<usize>> {
    let mut r = None;
    for t in tuples {
        match r {
            None => r = Some(t.len()),
            Some(len) if len != t.len() => return Err(Error::MixedLengths(len, t.len())),
            Some(_) => {}
        }
    }
    Ok(r)
}

fn divides(g: &ExponentVector, t: &ExponentVector) -> bool {
    g.0.iter().zip(&t.0).all(|(a, b)| a <= b)
}

/// Whether `t` lies in the submodule generated by `gens`.
pub fn submodule_member(gens: &[MonomialTuple], t: &MonomialTuple) -> Result<bool> {
    check_lengths(gens.iter().chain(std::iter::once(t)))?;
    let te = tuple_to_exponents(t);
    Ok(gens.iter().any(|g| divides(&tuple_to_exponents(g), &te)))
}

/// The largest tuple with nonzero coefficient, comparing last entries first.
pub fn initial_tuple(v: &[(BigRational, MonomialTuple)]) -> Result<MonomialTuple> {
    check_lengths(v.iter().map(|(_, t)| t))?;
    let mut combined: BTreeMap<&MonomialTuple, BigRational> = BTreeMap::new();
    for (c, t) in v {
        *combined.entry(t).or_insert_with(BigRational::zero) += c;
    }
    combined
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(t, _)| t)
        .max_by(|a, b| a.cmp_last_first(b))
        .cloned()
        .ok_or(Error::ZeroInput)
}

fn same_submodule(a: &[MonomialTuple], b: &[MonomialTuple]) -> Result<bool> {
    for g in a {
        if !submodule_member(b, g)? {
            return Ok(false);
        }
    }
    for g in b {
        if !submodule_member(a, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest index `k` such that every later set generates the same submodule
/// as set `k`, confirmed by at least one later set; `None` otherwise.
pub fn chain_stabilizes(chain: &[Vec<MonomialTuple>]) -> Result<Option<usize>> {
    check_lengths(chain.iter().flatten())?;
    if chain.len() < 2 {
        return Ok(None);
    }
    let last = chain.len() - 1;
    let mut k = last;
    while k > 0 && same_submodule(&chain[k - 1], &chain[last])? {
        k -= 1;
    }
    Ok((k < last).then_some(k))
}
