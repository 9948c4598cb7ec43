//! Exact sparse linear algebra over the rationals.
//!
//! Ranks are computed by fraction-free elimination: every vector is scaled to
//! a primitive integer vector, and eliminating a leading entry replaces `v` by
//! `p_c v - v_c p` followed by division by the content.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar.
pub type Q = BigRational;

/// Sparse vector: `(index, value)` pairs sorted by index, no zero values.
pub type SparseVec = Vec<(usize, Q)>;

/// Integer sparse vector used inside elimination.
type IntVec = Vec<(usize, BigInt)>;

/// Builds a sparse vector from unsorted entries, summing repeats and dropping zeros.
pub fn sparse_from_entries(entries: impl IntoIterator<Item = (usize, Q)>) -> SparseVec {
    let mut map: std::collections::BTreeMap<usize, Q> = std::collections::BTreeMap::new();
    for (i, v) in entries {
        *map.entry(i).or_insert_with(Q::zero) += v;
    }
    map.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// `a + c * b` for sparse vectors.
pub fn axpy(a: &SparseVec, c: &Q, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = c * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A sparse matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    /// The zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix {
            rows,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from its columns; panics if an index is out of range.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec>) -> SparseMatrix {
        for col in &columns {
            assert!(col.iter().all(|(i, _)| *i < rows), "row index out of range");
        }
        SparseMatrix { rows, columns }
    }

    /// Builds a matrix from dense rows.
    pub fn from_dense(rows: &[Vec<Q>], cols: usize) -> SparseMatrix {
        let columns = (0..cols)
            .map(|c| {
                rows.iter()
                    .enumerate()
                    .filter(|(_, row)| !row[c].is_zero())
                    .map(|(r, row)| (r, row[c].clone()))
                    .collect()
            })
            .collect();
        SparseMatrix {
            rows: rows.len(),
            columns,
        }
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Column `c`.
    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    /// All columns.
    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    /// Dense row-major copy.
    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.cols()]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for (r, v) in col {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    /// `self * v`.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (c, x) in v {
            out = axpy(&out, x, &self.columns[*c]);
        }
        out
    }

    /// `self * other`.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        rank_of(self.columns.iter())
    }
}

fn to_primitive_int(v: &SparseVec) -> IntVec {
    if v.is_empty() {
        return Vec::new();
    }
    let lcm = v.iter().fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let ints: IntVec = v.iter().map(|(i, x)| (*i, x.numer() * (&lcm / x.denom()))).collect();
    make_primitive(ints)
}

fn make_primitive(v: IntVec) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    let mut v = v;
    if !g.is_one() && !g.is_zero() {
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
    }
    if v.first().is_some_and(|(_, x)| x.is_negative()) {
        for (_, x) in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

/// `p * v - q * w` on integer sparse vectors.
fn combine(p: &BigInt, v: &IntVec, q: &BigInt, w: &IntVec) -> IntVec {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j >= w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push((v[i].0, p * &v[i].1));
            i += 1;
        } else if i >= v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, -(q * &w[j].1)));
            j += 1;
        } else {
            let x = p * &v[i].1 - q * &w[j].1;
            if !x.is_zero() {
                out.push((v[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incremental row echelon form for rank and independence queries.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    pivots: HashMap<usize, IntVec>,
}

impl Echelon {
    /// An empty echelon structure.
    pub fn new() -> Echelon {
        Echelon::default()
    }

    /// Current rank.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds `v`; returns true when it was independent of the vectors so far.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut cur = to_primitive_int(v);
        while let Some((lead, lead_val)) = cur.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => {
                    let p_val = &p[0].1;
                    let g = p_val.gcd(&lead_val);
                    let reduced = combine(&(p_val / &g), &cur, &(&lead_val / &g), p);
                    cur = make_primitive(reduced);
                }
                None => {
                    self.pivots.insert(lead, cur);
                    return true;
                }
            }
        }
        false
    }

    /// Whether `v` lies in the span, without inserting it.
    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut copy = self.clone();
        !copy.insert(v)
    }
}

/// Rank of a family of sparse vectors.
pub fn rank_of<'a, I: IntoIterator<Item = &'a SparseVec>>(vectors: I) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Indices of standard basis vectors of `0..dim` completing the span of
/// `vectors` to the whole space.
pub fn complement_basis<'a, I: IntoIterator<Item = &'a SparseVec>>(vectors: I, dim: usize) -> Vec<usize> {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    (0..dim).filter(|&i| e.insert(&vec![(i, Q::one())])).collect()
}

/// A basis of the null space of the matrix with the given dense rows and
/// `cols` columns, by exact Gauss-Jordan elimination.
pub fn nullspace(rows: &[Vec<Q>], cols: usize) -> Vec<SparseVec> {
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let is_pivot: Vec<bool> = (0..cols).map(|c| pivot_cols.contains(&c)).collect();
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut entries = vec![(free, Q::one())];
            for (row, &pc) in pivot_cols.iter().enumerate() {
                let v = -m[row][free].clone();
                if !v.is_zero() {
                    entries.push((pc, v));
                }
            }
            sparse_from_entries(entries)
        })
        .collect()
}

/// Parses a rational written as `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Q::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Rank over the prime field `F_p`, used as an independent cross-check.
pub fn rank_mod_p(vectors: &[SparseVec], p: u64) -> usize {
    let reduce = |x: &Q| -> Option<u64> {
        let pb = BigInt::from(p);
        let n = x.numer().mod_floor(&pb);
        let d = x.denom().mod_floor(&pb);
        if d.is_zero() {
            return None;
        }
        let n: u64 = n.try_into().ok()?;
        let d: u64 = d.try_into().ok()?;
        Some(n * pow_mod(d, p - 2, p) % p)
    };
    let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
    for v in vectors {
        let mut cur: Vec<(usize, u64)> = v
            .iter()
            .filter_map(|(i, x)| reduce(x).map(|r| (*i, r)))
            .filter(|(_, r)| *r != 0)
            .collect();
        while let Some(&(lead, lv)) = cur.first() {
            match pivots.get(&lead) {
                Some(pv) => {
                    // pivots are normalized to leading coefficient one
                    let mut map: std::collections::BTreeMap<usize, u64> = cur.iter().copied().collect();
                    for &(i, x) in pv {
                        let e = map.entry(i).or_insert(0);
                        *e = (*e + p - lv * x % p) % p;
                    }
                    cur = map.into_iter().filter(|(_, x)| *x != 0).collect();
                }
                None => {
                    let inv = pow_mod(lv, p - 2, p);
                    let normed = cur.iter().map(|&(i, x)| (i, x * inv % p)).collect();
                    pivots.insert(lead, normed);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}
