//! Explicit truncated graded modules over exact rationals.
//!
//! A [`TruncatedModule`] stores the pieces `M_0, …, M_D` and, for each degree
//! `n < D` and each `1 <= i <= n`, the matrix of `α_i : M_n → M_{n+1}`. The
//! generators `α_i` with `i > n` act as the identity on `M_n` and are not
//! stored. Constructions, functors and homological computations built on this
//! type serve as a brute-force oracle for the symbolic layer.

pub mod homological;
pub mod linalg;

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::word::{Letter, Word};
use linalg::{parse_rational, sparse_from_entries, SparseMatrix, SparseVec, Q};

pub use homological::{
    canonical_grading_pieces, hom_dim, hom_dim_bruteforce, koszul_betti, saturation_rank, t_functor, xi_truncated,
    BettiTable, GradingPieces, HomDim, XiDims,
};

/// A graded module truncated at degree `D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedModule {
    d: usize,
    dims: Vec<usize>,
    alpha: Vec<Vec<SparseMatrix>>,
}

impl TruncatedModule {
    /// Builds a module from its dimensions and action matrices, checking shapes.
    ///
    /// `alpha[n][i - 1]` is the matrix of `α_i` on `M_n` for `n < D`, `1 <= i <= n`.
    pub fn new(d: usize, dims: Vec<usize>, alpha: Vec<Vec<SparseMatrix>>) -> Result<TruncatedModule> {
        let m = TruncatedModule { d, dims, alpha };
        let problems = m.shape_violations();
        if problems.is_empty() {
            Ok(m)
        } else {
            Err(Error::InvalidModule(problems.join("; ")))
        }
    }

    /// Builds a module from a closure giving the image of each basis vector,
    /// `act(n, i, b)` for basis index `b` of `M_n`.
    pub fn from_action<F>(d: usize, dims: Vec<usize>, mut act: F) -> TruncatedModule
    where
        F: FnMut(usize, usize, usize) -> SparseVec,
    {
        let alpha = (0..d)
            .map(|n| {
                (1..=n)
                    .map(|i| {
                        let cols = (0..dims[n]).map(|b| act(n, i, b)).collect();
                        SparseMatrix::from_columns(dims[n + 1], cols)
                    })
                    .collect()
            })
            .collect();
        TruncatedModule { d, dims, alpha }
    }

    /// The zero module truncated at `d`.
    pub fn zero(d: usize) -> TruncatedModule {
        TruncatedModule::from_action(d, vec![0; d + 1], |_, _, _| Vec::new())
    }

    /// Truncation degree `D`.
    pub fn degree(&self) -> usize {
        self.d
    }

    /// Dimensions `dim M_0, …, dim M_D`.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Dimension of `M_n`, zero beyond the truncation.
    pub fn dim(&self, n: usize) -> usize {
        self.dims.get(n).copied().unwrap_or(0)
    }

    /// Sum of all dimensions.
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Matrix of `α_i` on `M_n`, for `1 <= i <= n < D`.
    pub fn alpha(&self, n: usize, i: usize) -> &SparseMatrix {
        assert!(i >= 1 && i <= n && n < self.d, "α_{i} on degree {n} is not stored");
        &self.alpha[n][i - 1]
    }

    /// `α_i x` for `x ∈ M_n`.
    pub fn act(&self, n: usize, i: usize, x: &SparseVec) -> SparseVec {
        self.alpha(n, i).apply(x)
    }

    /// Whether every piece is zero.
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&x| x == 0)
    }

    fn shape_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.dims.len() != self.d + 1 {
            out.push(format!("expected {} dimensions, found {}", self.d + 1, self.dims.len()));
            return out;
        }
        if self.alpha.len() != self.d {
            out.push(format!(
                "expected action data for {} degrees, found {}",
                self.d,
                self.alpha.len()
            ));
            return out;
        }
        for (n, mats) in self.alpha.iter().enumerate() {
            if mats.len() != n {
                out.push(format!("degree {n}: expected {n} matrices, found {}", mats.len()));
                continue;
            }
            for (k, m) in mats.iter().enumerate() {
                if m.rows() != self.dims[n + 1] || m.cols() != self.dims[n] {
                    out.push(format!(
                        "α_{} on degree {n}: shape {}x{}, expected {}x{}",
                        k + 1,
                        m.rows(),
                        m.cols(),
                        self.dims[n + 1],
                        self.dims[n]
                    ));
                }
            }
        }
        out
    }

    /// Keeps the degrees `0..=d` of a module truncated at `D >= d`.
    pub fn truncate(&self, d: usize) -> Result<TruncatedModule> {
        if d > self.d {
            return Err(Error::ExceedsDegree {
                value: d,
                degree: self.d,
            });
        }
        Ok(TruncatedModule {
            d,
            dims: self.dims[..=d].to_vec(),
            alpha: self.alpha[..d].to_vec(),
        })
    }

    /// The submodule `M_+` of all positive degrees.
    pub fn positive_part(&self) -> TruncatedModule {
        let mut dims = self.dims.clone();
        dims[0] = 0;
        TruncatedModule {
            d: self.d,
            dims,
            alpha: self.alpha.clone(),
        }
    }
}

impl fmt::Display for TruncatedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dims.iter().map(usize::to_string).collect();
        write!(f, "D={} dims=({})", self.d, dims.join(","))
    }
}

/// The admissible tuples of `λ` ending at `n`, in the basis order of [`std_module`].
pub fn admissible_tuples(lambda: &[Letter], n: usize) -> Vec<Vec<usize>> {
    fn go(lambda: &[Letter], n: usize, prev: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let p = cur.len();
        if p == lambda.len() {
            if prev == n {
                out.push(cur.clone());
            }
            return;
        }
        let remaining = lambda.len() - p;
        let candidates: Vec<usize> = match lambda[p] {
            Letter::B => vec![prev + 1],
            Letter::A => (prev + 1..=n).collect(),
        };
        for c in candidates {
            // the later entries need room to stay strictly increasing
            if c + remaining - 1 > n {
                continue;
            }
            cur.push(c);
            go(lambda, n, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, n, 0, &mut Vec::new(), &mut out);
    out
}

fn is_admissible(lambda: &[Letter], t: &[usize]) -> bool {
    let mut prev = 0;
    for (letter, &x) in lambda.iter().zip(t) {
        if x <= prev || (*letter == Letter::B && x != prev + 1) {
            return false;
        }
        prev = x;
    }
    true
}

/// Applies `α_i` to a tuple: every entry `>= i` is incremented.
pub fn alpha_tuple(i: usize, t: &[usize]) -> Vec<usize> {
    t.iter().map(|&x| if x >= i { x + 1 } else { x }).collect()
}

/// Writes a tuple of the principal module as `α_k t'`, returning `(k, t')`;
/// `None` for the generator `(1, …, r)`.
pub fn decompose_tuple(t: &[usize]) -> Option<(usize, Vec<usize>)> {
    let mut prev = 0;
    let mut p = None;
    for (idx, &x) in t.iter().enumerate() {
        if x - 1 > prev {
            p = Some(idx);
        }
        prev = x;
    }
    let p = p?;
    let ip = t[p];
    let reduced = t.iter().map(|&x| if x >= ip { x - 1 } else { x }).collect();
    Some((ip - 1, reduced))
}

/// The standard module of `λ` truncated at `d`, on the basis of admissible tuples.
pub fn std_module(lambda: &Word, d: usize) -> TruncatedModule {
    let letters = lambda.letters();
    let bases: Vec<Vec<Vec<usize>>> = (0..=d).map(|n| admissible_tuples(letters, n)).collect();
    let index: Vec<HashMap<&Vec<usize>, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(k, t)| (t, k)).collect())
        .collect();
    let dims = bases.iter().map(Vec::len).collect();
    TruncatedModule::from_action(d, dims, |n, i, b| {
        let image = alpha_tuple(i, &bases[n][b]);
        if is_admissible(letters, &image) {
            vec![(index[n + 1][&image], Q::one())]
        } else {
            Vec::new()
        }
    })
}

/// The simple module `B^n` truncated at `d`.
pub fn simple(n: usize, d: usize) -> Result<TruncatedModule> {
    if n > d {
        return Err(Error::ExceedsDegree { value: n, degree: d });
    }
    Ok(std_module(&Word::repeat(Letter::B, n), d))
}

/// The principal module `A^r` truncated at `d`.
pub fn principal(r: usize, d: usize) -> Result<TruncatedModule> {
    if r > d {
        return Err(Error::ExceedsDegree { value: r, degree: d });
    }
    Ok(std_module(&Word::repeat(Letter::A, r), d))
}

/// The trivial module, one-dimensional in degree zero.
pub fn trivial(d: usize) -> TruncatedModule {
    std_module(&Word::empty(), d)
}

fn check_same_degree(m: &TruncatedModule, n: &TruncatedModule) -> Result<()> {
    if m.d != n.d {
        return Err(Error::DegreeMismatch(m.d, n.d));
    }
    Ok(())
}

/// Direct sum, with the basis of `M_n` before that of `N_n`.
pub fn direct_sum(m: &TruncatedModule, n: &TruncatedModule) -> Result<TruncatedModule> {
    check_same_degree(m, n)?;
    let dims = m.dims.iter().zip(&n.dims).map(|(x, y)| x + y).collect();
    Ok(TruncatedModule::from_action(m.d, dims, |deg, i, b| {
        if b < m.dims[deg] {
            m.alpha(deg, i).column(b).clone()
        } else {
            let off = m.dims[deg + 1];
            n.alpha(deg, i)
                .column(b - m.dims[deg])
                .iter()
                .map(|(r, v)| (r + off, v.clone()))
                .collect()
        }
    }))
}

/// Layout of `(M ⊙ N)_n = ⊕_{i+j=n} M_i ⊗ N_j`: block offsets indexed by `i`.
fn concat_offsets(m: &TruncatedModule, nm: &TruncatedModule, n: usize) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(n + 2);
    let mut acc = 0;
    for i in 0..=n {
        offsets.push(acc);
        acc += m.dims[i] * nm.dims[n - i];
    }
    offsets.push(acc);
    offsets
}

/// The concatenation product `M ⊙ N`.
pub fn concat(m: &TruncatedModule, n: &TruncatedModule) -> Result<TruncatedModule> {
    check_same_degree(m, n)?;
    let d = m.d;
    let offsets: Vec<Vec<usize>> = (0..=d).map(|deg| concat_offsets(m, n, deg)).collect();
    let dims = offsets.iter().map(|o| *o.last().unwrap()).collect();
    Ok(TruncatedModule::from_action(d, dims, |deg, k, b| {
        let o = &offsets[deg];
        let i = (0..=deg).rfind(|&i| o[i] <= b && b < o[i + 1]).unwrap();
        let j = deg - i;
        let local = b - o[i];
        let (x, y) = (local / n.dims[j], local % n.dims[j]);
        if k <= i {
            let target = offsets[deg + 1][i + 1];
            let width = n.dims[j];
            m.alpha(i, k)
                .column(x)
                .iter()
                .map(|(r, v)| (target + r * width + y, v.clone()))
                .collect()
        } else {
            let target = offsets[deg + 1][i];
            let width = n.dims[j + 1];
            n.alpha(j, k - i)
                .column(y)
                .iter()
                .map(|(r, v)| (target + x * width + r, v.clone()))
                .collect()
        }
    }))
}

/// The shift `Σ(M)`, with `Σ(M)_n = M_{n+1}` and truncation degree `D - 1`.
pub fn shift(m: &TruncatedModule) -> Result<TruncatedModule> {
    if m.d == 0 {
        return Err(Error::DegreeTooSmall(1));
    }
    let dims = m.dims[1..].to_vec();
    Ok(TruncatedModule::from_action(m.d - 1, dims, |n, i, b| {
        m.alpha(n + 1, i + 1).column(b).clone()
    }))
}

/// The shift of the underlying smooth module: `Σ(M) ⊕ M_0`, with `M_0`
/// placed in degree zero with trivial action.
pub fn smooth_shift(m: &TruncatedModule) -> Result<TruncatedModule> {
    let graded = shift(m)?;
    let d = graded.degree();
    let mut fixed = TruncatedModule::zero(d);
    fixed.dims[0] = m.dim(0);
    direct_sum(&graded, &fixed)
}

/// The transpose, where `α_i` on degree `n` becomes `α_{n+1-i}`.
pub fn transpose(m: &TruncatedModule) -> TruncatedModule {
    TruncatedModule::from_action(m.d, m.dims.clone(), |n, i, b| m.alpha(n, n + 1 - i).column(b).clone())
}

/// Coinduction: degree `n` is `[M_n]_0 ⊕ [M_{n-1}]_1`.
pub fn coinduction(m: &TruncatedModule) -> TruncatedModule {
    let d = m.d;
    let lower = |n: usize| if n == 0 { 0 } else { m.dims[n - 1] };
    let dims = (0..=d).map(|n| m.dims[n] + lower(n)).collect();
    TruncatedModule::from_action(d, dims, |n, i, b| {
        let off_next = m.dims[n + 1];
        if b < m.dims[n] {
            let mut image = m.alpha(n, i).column(b).clone();
            if i == 1 {
                image.push((off_next + b, Q::one()));
            }
            image
        } else if i == 1 {
            Vec::new()
        } else {
            let x = b - m.dims[n];
            m.alpha(n - 1, i - 1)
                .column(x)
                .iter()
                .map(|(r, v)| (off_next + r, v.clone()))
                .collect()
        }
    })
}

/// Induction: `{x}_k` for `x ∈ M_n` sits in degree `n + k + 1`.
pub fn induction(m: &TruncatedModule) -> TruncatedModule {
    let d = m.d;
    // degree q holds the blocks k = 0..q, each a copy of M_{q-1-k}
    let offsets: Vec<Vec<usize>> = (0..=d)
        .map(|q| {
            let mut acc = 0;
            let mut o = vec![0];
            for k in 0..q {
                acc += m.dims[q - 1 - k];
                o.push(acc);
            }
            o
        })
        .collect();
    let dims = offsets.iter().map(|o| *o.last().unwrap()).collect();
    TruncatedModule::from_action(d, dims, |q, i, b| {
        let o = &offsets[q];
        let k = (0..q).find(|&k| o[k] <= b && b < o[k + 1]).unwrap();
        let x = b - o[k];
        let n = q - 1 - k;
        if i <= k + 1 {
            vec![(offsets[q + 1][k + 1] + x, Q::one())]
        } else {
            let base = offsets[q + 1][k];
            m.alpha(n, i - k - 1)
                .column(x)
                .iter()
                .map(|(r, v)| (base + r, v.clone()))
                .collect()
        }
    })
}

/// The finite-length injective `J^n`: trivial for `n = 0`, otherwise the
/// `(n-1)`-fold coinduction of `B^1`.
pub fn finite_injective(n: usize, d: usize) -> TruncatedModule {
    if n == 0 {
        return trivial(d);
    }
    if d == 0 {
        return TruncatedModule::zero(0);
    }
    let mut m = std_module(&Word::repeat(Letter::B, 1), d);
    for _ in 1..n {
        m = coinduction(&m);
    }
    m
}

/// The injective module `I^λ = J^{g_0} ⊙ A^1 ⊙ J^{g_1} ⊙ ⋯ ⊙ A^1 ⊙ J^{g_r}`.
pub fn injective_module(lambda: &Word, d: usize) -> TruncatedModule {
    let gaps = lambda.gap_decomposition();
    let a1 = std_module(&Word::repeat(Letter::A, 1), d);
    let mut acc = finite_injective(gaps[0], d);
    for &g in &gaps[1..] {
        acc = concat(&acc, &a1).expect("same truncation");
        acc = concat(&acc, &finite_injective(g, d)).expect("same truncation");
    }
    acc
}

/// Checks shapes and the relations `α_j α_i = α_i α_{j-1}` for `i < j`.
pub fn verify_module(m: &TruncatedModule) -> Vec<String> {
    let mut out = m.shape_violations();
    if !out.is_empty() {
        return out;
    }
    for n in 0..m.d.saturating_sub(1) {
        for i in 1..=n {
            for j in i + 1..=n + 1 {
                let lhs = m.alpha(n + 1, j).compose(m.alpha(n, i));
                let rhs = m.alpha(n + 1, i).compose(m.alpha(n, j - 1));
                if lhs != rhs {
                    out.push(format!("degree {n}: α_{j}α_{i} differs from α_{i}α_{}", j - 1));
                }
            }
        }
    }
    out
}

/// Parses a module description such as `std:aba`, `prin:3`, `simple:2`,
/// `inj:ab`, `J:3` or `trivial`.
pub fn from_spec(spec: &str, d: usize) -> Result<TruncatedModule> {
    let bad = || Error::InvalidModule(format!("unrecognized module spec {spec:?}"));
    let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let word = |s: &str| -> Result<Word> { s.parse::<Word>().map_err(|_| bad()) };
    let number = |s: &str| -> Result<usize> { s.parse::<usize>().map_err(|_| bad()) };
    match kind {
        "std" => Ok(std_module(&word(arg)?, d)),
        "inj" => Ok(injective_module(&word(arg)?, d)),
        "prin" => principal(number(arg)?, d),
        "simple" => simple(number(arg)?, d),
        "J" => Ok(finite_injective(number(arg)?, d)),
        "trivial" if arg.is_empty() => Ok(trivial(d)),
        "zero" if arg.is_empty() => Ok(TruncatedModule::zero(d)),
        _ => Err(bad()),
    }
}

/// JSON form `{"D", "dims", "alpha": {"n,i": rows of rational strings}}`.
pub fn to_json(m: &TruncatedModule) -> Value {
    let mut alpha = Map::new();
    for n in 0..m.d {
        for i in 1..=n {
            let rows: Vec<Vec<String>> = m
                .alpha(n, i)
                .to_dense()
                .iter()
                .map(|row| row.iter().map(|x| x.to_string()).collect())
                .collect();
            alpha.insert(format!("{n},{i}"), json!(rows));
        }
    }
    json!({ "D": m.d, "dims": m.dims, "alpha": alpha })
}

/// Reads the JSON form written by [`to_json`]. Missing matrices are zero.
pub fn from_json(v: &Value) -> Result<TruncatedModule> {
    let bad = |msg: &str| Error::InvalidModule(msg.to_string());
    let d = v.get("D").and_then(Value::as_u64).ok_or_else(|| bad("missing D"))? as usize;
    let dims: Vec<usize> = v
        .get("dims")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing dims"))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(|| bad("bad dimension")))
        .collect::<Result<_>>()?;
    if dims.len() != d + 1 {
        return Err(bad("dims must have D+1 entries"));
    }
    let empty = Map::new();
    let alpha_json = match v.get("alpha") {
        Some(Value::Object(map)) => map,
        None => &empty,
        Some(_) => return Err(bad("alpha must be an object")),
    };
    for key in alpha_json.keys() {
        let ok = key.split_once(',').and_then(|(n, i)| {
            let (n, i) = (n.trim().parse::<usize>().ok()?, i.trim().parse::<usize>().ok()?);
            (i >= 1 && i <= n && n < d).then_some(())
        });
        if ok.is_none() {
            return Err(bad(&format!("unexpected action key {key:?}")));
        }
    }
    let mut alpha = Vec::with_capacity(d);
    for n in 0..d {
        let mut mats = Vec::with_capacity(n);
        for i in 1..=n {
            let Some(rows) = alpha_json.get(&format!("{n},{i}")) else {
                mats.push(SparseMatrix::zeros(dims[n + 1], dims[n]));
                continue;
            };
            let rows = rows.as_array().ok_or_else(|| bad("matrix must be a list of rows"))?;
            if rows.len() != dims[n + 1] {
                return Err(bad(&format!(
                    "matrix {n},{i} has {} rows, expected {}",
                    rows.len(),
                    dims[n + 1]
                )));
            }
            let mut dense = Vec::with_capacity(rows.len());
            for row in rows {
                let row = row.as_array().ok_or_else(|| bad("row must be a list"))?;
                if row.len() != dims[n] {
                    return Err(bad(&format!(
                        "matrix {n},{i} row has {} entries, expected {}",
                        row.len(),
                        dims[n]
                    )));
                }
                let parsed = row
                    .iter()
                    .map(|x| {
                        match x {
                            Value::String(s) => parse_rational(s),
                            Value::Number(num) => num.as_i64().map(|k| Q::from_integer(k.into())),
                            _ => None,
                        }
                        .ok_or_else(|| bad("entries must be rationals"))
                    })
                    .collect::<Result<Vec<Q>>>()?;
                dense.push(parsed);
            }
            mats.push(SparseMatrix::from_dense(&dense, dims[n]));
        }
        alpha.push(mats);
    }
    TruncatedModule::new(d, dims, alpha)
}

/// Builds a sparse vector from integer entries.
pub fn int_vec(entries: &[(usize, i64)]) -> SparseVec {
    sparse_from_entries(entries.iter().map(|&(i, v)| (i, Q::from_integer(v.into()))))
}

/// Whether a sparse vector is zero.
pub fn vec_is_zero(v: &SparseVec) -> bool {
    v.iter().all(|(_, x)| x.is_zero())
}
