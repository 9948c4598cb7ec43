//! Hom dimensions, coinvariants, the Koszul complex and Betti tables of
//! truncated modules.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;

use super::linalg::{complement_basis, nullspace, sparse_from_entries, Echelon, SparseMatrix, SparseVec, Q};
use super::{alpha_tuple, decompose_tuple, TruncatedModule};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

/// Dimension of a truncated Hom space with its reliability flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomDim {
    /// Dimension of the space of truncated module maps.
    pub dim: usize,
    /// Whether the truncation degree reaches the generator plus relation degree of the source.
    pub reliable: bool,
    /// Largest degree of a minimal generator of the source.
    pub generator_degree: Option<usize>,
    /// Largest degree of a minimal relation of the source within the truncation.
    pub relation_degree: Option<usize>,
}

/// Dimensions of a truncation `τ^{<r}(M)` and of its graded pieces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradingPieces {
    /// Total dimension of the quotient.
    pub total: usize,
    /// Piece in each degree `0..=D`.
    pub pieces: Vec<usize>,
    /// Largest degree at which the pieces are certified.
    pub reliable_degree: usize,
}

/// Dimensions of the completion of a truncated module.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XiDims {
    /// Dimension in each degree `0..D`.
    pub dims: Vec<usize>,
    /// Largest degree at which the dimensions are certified.
    pub reliable_degree: usize,
}

/// Betti numbers `β_{i,j} = dim H^{-j}(K(M))_{i+j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// Nonzero entries keyed by `(i, j)`.
    pub entries: BTreeMap<(usize, usize), usize>,
    /// Largest `i + j` covered by the table.
    pub reliable_degree: usize,
}

impl BettiTable {
    /// `β_{i,j}`, zero when absent.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Rows `i` with a nonzero entry.
    pub fn nonzero_rows(&self) -> Vec<usize> {
        let mut rows: Vec<usize> = self.entries.keys().map(|&(i, _)| i).collect();
        rows.dedup();
        rows
    }
}

/// Unit vectors of `M_n` completing `Σ_{k<n} α_k M_{n-1}`, per degree.
fn generators(m: &TruncatedModule) -> Vec<Vec<usize>> {
    (0..=m.degree())
        .map(|n| {
            let images: Vec<SparseVec> = if n == 0 {
                Vec::new()
            } else {
                (1..n)
                    .flat_map(|k| m.alpha(n - 1, k).columns().iter().cloned())
                    .collect()
            };
            complement_basis(&images, m.dim(n))
        })
        .collect()
}

/// Dimension of `M_n / Σ_{k<n} α_k M_{n-1}` for each `n <= D`.
pub fn t_functor(m: &TruncatedModule) -> Vec<usize> {
    generators(m).iter().map(Vec::len).collect()
}

/// A presentation of a truncated module by a sum of principal modules.
struct Presentation {
    /// Generator degree and basis index in that degree.
    gens: Vec<(usize, usize)>,
    /// Basis of `P_n` as `(generator, tuple)`.
    basis: Vec<Vec<(usize, Vec<usize>)>>,
    /// New relations as `(degree, vector in P_n)`.
    relations: Vec<(usize, SparseVec)>,
}

fn principal_tuples(r: usize, n: usize) -> Vec<Vec<usize>> {
    let word = Word::repeat(Letter::A, r);
    super::admissible_tuples(word.letters(), n)
}

fn presentation(m: &TruncatedModule) -> Presentation {
    let d = m.degree();
    let gens: Vec<(usize, usize)> = generators(m)
        .into_iter()
        .enumerate()
        .flat_map(|(n, idx)| idx.into_iter().map(move |b| (n, b)))
        .collect();
    let mut basis: Vec<Vec<(usize, Vec<usize>)>> = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let mut b = Vec::new();
        for (j, &(dj, _)) in gens.iter().enumerate() {
            if dj <= n {
                for t in principal_tuples(dj, n) {
                    b.push((j, t));
                }
            }
        }
        basis.push(b);
    }
    let index: Vec<HashMap<(usize, Vec<usize>), usize>> = basis
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(k, key)| (key, k)).collect())
        .collect();

    let mut images: HashMap<(usize, Vec<usize>), SparseVec> = HashMap::new();
    let mut relations = Vec::new();
    let mut prev_kernel: Vec<SparseVec> = Vec::new();
    for n in 0..=d {
        let mut cols = Vec::with_capacity(basis[n].len());
        for (j, t) in &basis[n] {
            let v = match decompose_tuple(t) {
                None => vec![(gens[*j].1, Q::one())],
                Some((k, t_prev)) => m.act(n - 1, k, &images[&(*j, t_prev)]),
            };
            images.insert((*j, t.clone()), v.clone());
            cols.push(v);
        }
        let phi = SparseMatrix::from_columns(m.dim(n), cols);
        let kernel = nullspace(&phi.to_dense(), basis[n].len());
        let mut ech = Echelon::new();
        if n > 0 {
            for kv in &prev_kernel {
                for k in 1..n {
                    let moved = sparse_from_entries(kv.iter().map(|(c, x)| {
                        let (j, t) = &basis[n - 1][*c];
                        (index[n][&(*j, alpha_tuple(k, t))], x.clone())
                    }));
                    ech.insert(&moved);
                }
            }
        }
        for kv in &kernel {
            if ech.insert(kv) {
                relations.push((n, kv.clone()));
            }
        }
        prev_kernel = kernel;
    }
    Presentation { gens, basis, relations }
}

/// Applies the chain of `α`'s producing the principal tuple `t` to `N_{|t|}`.
fn chain_matrix(n_mod: &TruncatedModule, t: &[usize], cache: &mut HashMap<Vec<usize>, SparseMatrix>) -> SparseMatrix {
    if let Some(m) = cache.get(t) {
        return m.clone();
    }
    let out = match decompose_tuple(t) {
        None => {
            let dim = n_mod.dim(t.len());
            SparseMatrix::from_columns(dim, (0..dim).map(|b| vec![(b, Q::one())]).collect())
        }
        Some((k, prev)) => {
            let inner = chain_matrix(n_mod, &prev, cache);
            let deg = prev.last().copied().unwrap_or(0);
            n_mod.alpha(deg, k).compose(&inner)
        }
    };
    cache.insert(t.to_vec(), out.clone());
    out
}

/// Dimension of the space of truncated maps `M → N`, computed from a
/// presentation of `M`.
pub fn hom_dim(m: &TruncatedModule, n: &TruncatedModule) -> Result<HomDim> {
    if m.degree() != n.degree() {
        return Err(Error::DegreeMismatch(m.degree(), n.degree()));
    }
    let pres = presentation(m);
    let mut offsets = Vec::with_capacity(pres.gens.len() + 1);
    let mut unknowns = 0;
    for &(dj, _) in &pres.gens {
        offsets.push(unknowns);
        unknowns += n.dim(dj);
    }
    let mut columns: Vec<Vec<(usize, Q)>> = vec![Vec::new(); unknowns];
    let mut row_offset = 0;
    let mut cache = HashMap::new();
    for (deg, kv) in &pres.relations {
        for (c, coeff) in kv {
            let (j, t) = &pres.basis[*deg][*c];
            let s = chain_matrix(n, t, &mut cache);
            for b in 0..s.cols() {
                for (r, x) in s.column(b) {
                    columns[offsets[*j] + b].push((row_offset + r, coeff * x));
                }
            }
        }
        row_offset += n.dim(*deg);
    }
    let mut ech = Echelon::new();
    for col in &columns {
        ech.insert(&sparse_from_entries(col.iter().cloned()));
    }
    let generator_degree = pres.gens.iter().map(|g| g.0).max();
    let relation_degree = pres.relations.iter().map(|r| r.0).max();
    let reliable = m.degree() >= generator_degree.unwrap_or(0) + relation_degree.unwrap_or(0);
    Ok(HomDim {
        dim: unknowns - ech.rank(),
        reliable,
        generator_degree,
        relation_degree,
    })
}

/// Dimension of the space of truncated maps `M → N` by solving for every
/// matrix entry of `f_0, …, f_D` directly.
pub fn hom_dim_bruteforce(m: &TruncatedModule, n: &TruncatedModule) -> Result<usize> {
    if m.degree() != n.degree() {
        return Err(Error::DegreeMismatch(m.degree(), n.degree()));
    }
    let d = m.degree();
    let mut offsets = Vec::with_capacity(d + 1);
    let mut unknowns = 0;
    for deg in 0..=d {
        offsets.push(unknowns);
        unknowns += m.dim(deg) * n.dim(deg);
    }
    // f_deg[r][c] sits at offsets[deg] + r * dim M_deg + c
    let var = |deg: usize, r: usize, c: usize| offsets[deg] + r * m.dim(deg) + c;
    let mut ech = Echelon::new();
    for deg in 0..d {
        for i in 1..=deg {
            let am = m.alpha(deg, i).to_dense();
            let an = n.alpha(deg, i).to_dense();
            for c in 0..m.dim(deg) {
                for (r2, an_row) in an.iter().enumerate() {
                    let mut entries = Vec::new();
                    for (c2, row) in am.iter().enumerate() {
                        if !row[c].is_zero() {
                            entries.push((var(deg + 1, r2, c2), row[c].clone()));
                        }
                    }
                    for (r, x) in an_row.iter().enumerate() {
                        if !x.is_zero() {
                            entries.push((var(deg, r, c), -x.clone()));
                        }
                    }
                    ech.insert(&sparse_from_entries(entries));
                }
            }
        }
    }
    Ok(unknowns - ech.rank())
}

/// Dimensions `c_k` of `τ^{<k}(M)` for `k = 0..=D`, with `c_0 = 0`.
fn coinvariant_dims(m: &TruncatedModule) -> Vec<usize> {
    let d = m.degree();
    let mut offsets = Vec::with_capacity(d + 1);
    let mut total = 0;
    for n in 0..=d {
        offsets.push(total);
        total += m.dim(n);
    }
    let mut c = vec![0; d + 1];
    if d > 0 {
        c[d] = total;
    }
    let mut ech = Echelon::new();
    for k in (1..d).rev() {
        for n in k..d {
            for x in 0..m.dim(n) {
                let mut entries: Vec<(usize, Q)> = m
                    .alpha(n, k)
                    .column(x)
                    .iter()
                    .map(|(r, v)| (offsets[n + 1] + r, v.clone()))
                    .collect();
                entries.push((offsets[n] + x, -Q::one()));
                ech.insert(&sparse_from_entries(entries));
            }
        }
        c[k] = total - ech.rank();
    }
    c
}

fn max_generator_degree(m: &TruncatedModule) -> usize {
    t_functor(m)
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(n, _)| n)
        .max()
        .unwrap_or(0)
}

fn coinvariant_reliable_degree(m: &TruncatedModule) -> usize {
    m.degree().saturating_sub(max_generator_degree(m) + 1)
}

/// Dimensions of `τ^{<r}(M)` and of its canonical graded pieces.
pub fn canonical_grading_pieces(m: &TruncatedModule, r: usize) -> Result<GradingPieces> {
    let d = m.degree();
    if r > d {
        return Err(Error::ExceedsDegree { value: r, degree: d });
    }
    let c = coinvariant_dims(m);
    let pieces = (0..=d).map(|n| if n < r { c[n + 1] - c[n] } else { 0 }).collect();
    Ok(GradingPieces {
        total: c[r],
        pieces,
        reliable_degree: coinvariant_reliable_degree(m),
    })
}

/// Dimensions of the completion in degrees `0..D`.
pub fn xi_truncated(m: &TruncatedModule) -> XiDims {
    let c = coinvariant_dims(m);
    let dims = (0..m.degree()).map(|n| c[n + 1] - c[n]).collect();
    XiDims {
        dims,
        reliable_degree: coinvariant_reliable_degree(m),
    }
}

/// Rank of `α_{D-1} ∘ ⋯ ∘ α_n : M_n → M_D`.
pub fn saturation_rank(m: &TruncatedModule, n: usize) -> Result<usize> {
    let d = m.degree();
    if n == 0 || n >= d {
        return Err(Error::DegreeOutOfRange { value: n, lo: 1, hi: d });
    }
    let mut cols: Vec<SparseVec> = (0..m.dim(n)).map(|b| vec![(b, Q::one())]).collect();
    for k in n..d {
        cols = cols.iter().map(|v| m.act(k, k, v)).collect();
    }
    Ok(super::linalg::rank_of(&cols))
}

/// Size-`m` subsets of `{1, …, top}` in lexicographic order.
fn subsets(top: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, top: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in start..=top {
            if top - x + 1 < m - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, top, m, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, top, m, &mut Vec::new(), &mut out);
    out
}

/// The Koszul differential `K^{-m}_n → K^{-(m-1)}_n` for `m >= 1`.
pub fn koszul_differential(module: &TruncatedModule, n: usize, m: usize) -> SparseMatrix {
    assert!(m >= 1 && m < n, "differential out of range");
    let top = n - 1;
    let src_sets = subsets(top, m);
    let dst_sets = subsets(top, m - 1);
    let dst_index: HashMap<&Vec<usize>, usize> = dst_sets.iter().enumerate().map(|(k, s)| (s, k)).collect();
    let src_dim = module.dim(n - m);
    let dst_dim = module.dim(n - m + 1);
    let mut cols = Vec::with_capacity(src_sets.len() * src_dim);
    for s in &src_sets {
        for x in 0..src_dim {
            let mut entries = Vec::new();
            for (pos, &a) in s.iter().enumerate() {
                let j = pos + 1;
                let sign = if j % 2 == 1 { Q::one() } else { -Q::one() };
                let mut rest = s.clone();
                rest.remove(pos);
                let base = dst_index[&rest] * dst_dim;
                for (r, v) in module.alpha(n - m, a - j + 1).column(x) {
                    entries.push((base + r, &sign * v));
                }
            }
            cols.push(sparse_from_entries(entries));
        }
    }
    SparseMatrix::from_columns(dst_sets.len() * dst_dim, cols)
}

fn koszul_term_dim(module: &TruncatedModule, n: usize, m: usize) -> usize {
    if m > 0 && m >= n {
        return 0;
    }
    subsets(n.saturating_sub(1), m).len() * module.dim(n - m)
}

/// `dim H^{-m}(K(M))_n`, indexed `[n][m]` for `n <= D`.
pub fn koszul_homology(module: &TruncatedModule) -> Vec<Vec<usize>> {
    (0..=module.degree())
        .map(|n| {
            let max_m = n.saturating_sub(1);
            let ranks: Vec<usize> = (0..=max_m + 1)
                .map(|m| {
                    if m == 0 || m > max_m {
                        0
                    } else {
                        koszul_differential(module, n, m).rank()
                    }
                })
                .collect();
            (0..=max_m)
                .map(|m| koszul_term_dim(module, n, m) - ranks[m] - ranks[m + 1])
                .collect()
        })
        .collect()
}

/// Betti table from Koszul homology, covering `i + j <= D - 1`.
pub fn koszul_betti(module: &TruncatedModule) -> BettiTable {
    let reliable_degree = module.degree().saturating_sub(1);
    let homology = koszul_homology(module);
    let mut entries = BTreeMap::new();
    for (n, row) in homology.iter().enumerate().take(reliable_degree + 1) {
        for (j, &h) in row.iter().enumerate() {
            if h > 0 {
                entries.insert((n - j, j), h);
            }
        }
    }
    BettiTable {
        entries,
        reliable_degree,
    }
}
