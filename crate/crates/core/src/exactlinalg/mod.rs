//! Sparse exact linear algebra: reduced row echelon forms, kernels,
//! subspace arithmetic, and truncated inverses of matrix power series.

mod series;
mod sparse;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactfield::Field;

pub use series::{series_inverse, TruncSeriesMat};
pub use sparse::{axpy, dot, scale, Accumulator, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("ambient dimensions differ ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("matrix is not square ({0}x{1})")]
    NonSquare(usize, usize),
    #[error("vector length {got} does not match {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("malformed sparse row: {0}")]
    MalformedRow(String),
}

/// Tuning knobs for row reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RrefOptions {
    /// ℚ matrices with more columns than this are reduced fraction-free.
    pub fraction_free_threshold: usize,
}

impl Default for RrefOptions {
    fn default() -> Self {
        RrefOptions { fraction_free_threshold: 200 }
    }
}

/// Row-major sparse matrix; rows hold `(column, value)` pairs sorted by
/// column with no stored zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMat<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
}

impl<F: Field> SparseMat<F> {
    pub fn zero(field: F, nrows: usize, ncols: usize) -> Self {
        SparseMat { field, ncols, rows: vec![Vec::new(); nrows] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let rows = (0..n).map(|i| vec![(i, field.one())]).collect();
        SparseMat { field, ncols: n, rows }
    }

    pub fn from_rows(field: F, ncols: usize, rows: Vec<SparseVec<F::Elem>>) -> Result<Self, LinAlgError> {
        for (i, r) in rows.iter().enumerate() {
            let sorted = r.windows(2).all(|w| w[0].0 < w[1].0);
            let in_range = r.last().is_none_or(|(c, _)| *c < ncols);
            let no_zeros = r.iter().all(|(_, v)| !field.is_zero(v));
            if !(sorted && in_range && no_zeros) {
                return Err(LinAlgError::MalformedRow(format!("row {i}")));
            }
        }
        Ok(SparseMat { field, ncols, rows })
    }

    pub fn from_dense(field: F, dense: &[Vec<F::Elem>]) -> Self {
        let ncols = dense.first().map_or(0, Vec::len);
        let rows = dense
            .iter()
            .map(|r| {
                assert_eq!(r.len(), ncols, "ragged dense matrix");
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !field.is_zero(v))
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        SparseMat { field, ncols, rows }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> F::Elem {
        sparse::get(&self.rows[r], c).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<F::Elem>> {
        (0..self.nrows()).map(|r| (0..self.ncols).map(|c| self.get(r, c)).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); self.ncols];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                cols[*c].push((r, v.clone()));
            }
        }
        SparseMat { field: self.field.clone(), ncols: self.rows.len(), rows: cols }
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &SparseVec<F::Elem>) -> Result<SparseVec<F::Elem>, LinAlgError> {
        if let Some((c, _)) = v.last() {
            if *c >= self.ncols {
                return Err(LinAlgError::LengthMismatch { expected: self.ncols, got: c + 1 });
            }
        }
        Ok(self
            .rows
            .iter()
            .enumerate()
            .filter_map(|(r, row)| {
                let d = dot(&self.field, row, v);
                (!self.field.is_zero(&d)).then_some((r, d))
            })
            .collect())
    }

    /// Debug dump as `row col value` triplets, one per line.
    pub fn to_triplet_text(&self) -> String {
        let mut out = format!("% {} {} {}\n", self.nrows(), self.ncols, self.nnz());
        for (r, row) in self.rows.iter().enumerate() {
            for (c, v) in row {
                let _ = writeln!(out, "{r} {c} {}", self.field.format(v));
            }
        }
        out
    }
}

/// A subspace of `F^ambient` held as the canonical reduced row echelon basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ambient: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| vec![(i, field.one())]).collect();
        Subspace { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary vectors.
    pub fn span(field: F, ambient: usize, vectors: Vec<SparseVec<F::Elem>>) -> Self {
        rref_rows(&field, ambient, vectors, &RrefOptions::default())
    }

    /// Reassemble a subspace from stored rref data, checking that it really
    /// is in reduced row echelon form.
    pub fn from_rref(field: F, ambient: usize, pivots: Vec<usize>, rows: Vec<SparseVec<F::Elem>>) -> Result<Self, LinAlgError> {
        let bad = |m: &str| Err(LinAlgError::MalformedRow(m.to_string()));
        if pivots.len() != rows.len() || !pivots.windows(2).all(|w| w[0] < w[1]) {
            return bad("pivot list");
        }
        for (p, r) in pivots.iter().zip(&rows) {
            let sorted = r.windows(2).all(|w| w[0].0 < w[1].0);
            if !sorted || r.last().is_none_or(|(c, _)| *c >= ambient) || r.iter().any(|(_, v)| field.is_zero(v)) {
                return bad("row entries");
            }
            if r[0].0 != *p || !field.is_one(&r[0].1) {
                return bad("leading entry");
            }
            if pivots.iter().any(|q| q != p && sparse::get(r, *q).is_some()) {
                return bad("pivot column not cleared");
            }
        }
        Ok(Subspace { field, ambient, rows, pivots })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Remainder of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut v = v.clone();
        for (p, row) in self.pivots.iter().zip(&self.rows) {
            if let Some(c) = sparse::get(&v, *p).cloned() {
                v = axpy(&self.field, &v, &self.field.neg(&c), row);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce(v).is_empty()
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.check_ambient(other)?;
        let rows = self.rows.iter().chain(&other.rows).cloned().collect();
        Ok(rref_rows(&self.field, self.ambient, rows, &RrefOptions::default()))
    }

    pub fn contains_space(&self, other: &Self) -> Result<bool, LinAlgError> {
        self.check_ambient(other)?;
        Ok(other.rows.iter().all(|r| self.contains(r)))
    }

    /// Exact equality; canonical forms make this a plain comparison.
    pub fn equals(&self, other: &Self) -> Result<bool, LinAlgError> {
        self.check_ambient(other)?;
        Ok(self.pivots == other.pivots && self.rows == other.rows)
    }

    pub fn to_matrix(&self) -> SparseMat<F> {
        SparseMat { field: self.field.clone(), ncols: self.ambient, rows: self.rows.clone() }
    }
}

/// Subspace operation selector for [`subspace_op`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Contains,
    Equal,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SubspaceOpResult<F: Field> {
    Space(Subspace<F>),
    Bool(bool),
}

pub fn subspace_op<F: Field>(a: &Subspace<F>, b: &Subspace<F>, op: SubspaceOp) -> Result<SubspaceOpResult<F>, LinAlgError> {
    Ok(match op {
        SubspaceOp::Sum => SubspaceOpResult::Space(a.sum(b)?),
        SubspaceOp::Contains => SubspaceOpResult::Bool(a.contains_space(b)?),
        SubspaceOp::Equal => SubspaceOpResult::Bool(a.equals(b)?),
    })
}

/// Row space of `m` in canonical reduced row echelon form, with its rank.
pub fn rref<F: Field>(m: &SparseMat<F>) -> (usize, Subspace<F>) {
    rref_with(m, &RrefOptions::default())
}

pub fn rref_with<F: Field>(m: &SparseMat<F>, opts: &RrefOptions) -> (usize, Subspace<F>) {
    let s = rref_rows(&m.field, m.ncols, m.rows.clone(), opts);
    (s.dim(), s)
}

pub fn rank<F: Field>(m: &SparseMat<F>) -> usize {
    rref(m).0
}

/// Null space `{v : M v = 0}`.
pub fn kernel<F: Field>(m: &SparseMat<F>) -> Subspace<F> {
    let (_, rs) = rref(m);
    let f = &m.field;
    let mut is_pivot = vec![false; m.ncols];
    for &p in &rs.pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::new();
    for free in (0..m.ncols).filter(|c| !is_pivot[*c]) {
        let mut v: SparseVec<F::Elem> = vec![(free, f.one())];
        for (p, row) in rs.pivots.iter().zip(&rs.rows) {
            if let Some(c) = sparse::get(row, free) {
                v.push((*p, f.neg(c)));
            }
        }
        v.sort_by_key(|(c, _)| *c);
        vectors.push(v);
    }
    rref_rows(f, m.ncols, vectors, &RrefOptions::default())
}

/// Canonical rref of a list of sparse rows.
///
/// Columns are eliminated left to right; at each step the pivot row is the
/// candidate with the fewest nonzeros, ties going to the earliest row.
pub fn rref_rows<F: Field>(field: &F, ncols: usize, rows: Vec<SparseVec<F::Elem>>, opts: &RrefOptions) -> Subspace<F> {
    let pivot_rows = match field.fraction_free_rref(ncols, &rows, opts.fraction_free_threshold) {
        Some(done) => done,
        None => rref_field(field, rows),
    };
    let (pivots, rows) = pivot_rows.into_iter().unzip();
    Subspace { field: field.clone(), ambient: ncols, rows, pivots }
}

fn leading(v: &[(usize, impl Sized)]) -> Option<usize> {
    v.first().map(|(c, _)| *c)
}

fn choose_pivot<E>(active: &[SparseVec<E>]) -> Option<(usize, usize)> {
    let col = active.iter().filter_map(|r| leading(r)).min()?;
    let idx = active
        .iter()
        .enumerate()
        .filter(|(_, r)| leading(r) == Some(col))
        .min_by_key(|(i, r)| (r.len(), *i))
        .map(|(i, _)| i)?;
    Some((col, idx))
}

fn rref_field<F: Field>(f: &F, rows: Vec<SparseVec<F::Elem>>) -> Vec<(usize, SparseVec<F::Elem>)> {
    let mut active: Vec<_> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut done: Vec<(usize, SparseVec<F::Elem>)> = Vec::new();
    while let Some((col, idx)) = choose_pivot(&active) {
        let row = active.remove(idx);
        let inv = f.inv(&row[0].1).expect("leading entry is nonzero");
        let prow = scale(f, &row, &inv);
        for r in active.iter_mut().chain(done.iter_mut().map(|(_, r)| r)) {
            if let Some(c) = sparse::get(r, col).cloned() {
                *r = axpy(f, r, &f.neg(&c), &prow);
            }
        }
        active.retain(|r| !r.is_empty());
        done.push((col, prow));
    }
    done.sort_by_key(|(c, _)| *c);
    done
}

/// Fraction-free Gauss–Jordan elimination over ℤ for rational matrices.
///
/// Rows are scaled to primitive integer vectors and kept primitive after
/// every combination; the pivot rows are normalized to a leading one only
/// at the end, so the output is the same canonical rref as the field path.
pub(crate) fn fraction_free_rref(rows: &[SparseVec<BigRational>]) -> Vec<(usize, SparseVec<BigRational>)> {
    let mut active: Vec<Vec<(usize, BigInt)>> =
        rows.iter().filter(|r| !r.is_empty()).map(|r| primitive_integer_row(r)).collect();
    let mut done: Vec<(usize, Vec<(usize, BigInt)>)> = Vec::new();
    while let Some((col, idx)) = choose_pivot(&active) {
        let prow = active.remove(idx);
        let p = prow[0].1.clone();
        for r in active.iter_mut().chain(done.iter_mut().map(|(_, r)| r)) {
            if let Some(c) = sparse::get(r, col).cloned() {
                let g = p.gcd(&c);
                let (a, b) = (&p / &g, &c / &g);
                *r = int_combination(r, &a, &prow, &b);
                make_primitive(r);
            }
        }
        active.retain(|r| !r.is_empty());
        done.push((col, prow));
    }
    done.sort_by_key(|(c, _)| *c);
    done.into_iter()
        .map(|(c, r)| {
            let lead = r[0].1.clone();
            let row = r.into_iter().map(|(j, v)| (j, BigRational::new(v, lead.clone()))).collect();
            (c, row)
        })
        .collect()
}

fn primitive_integer_row(r: &[(usize, BigRational)]) -> Vec<(usize, BigInt)> {
    let lcm = r.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut out: Vec<(usize, BigInt)> = r.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(r: &mut [(usize, BigInt)]) {
    let g = r.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in r.iter_mut() {
            *v /= &g;
        }
    }
    if r.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in r.iter_mut() {
            *v = -&*v;
        }
    }
}

/// `a·x − b·y` on sparse integer rows.
fn int_combination(x: &[(usize, BigInt)], a: &BigInt, y: &[(usize, BigInt)], b: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let ci = x.get(i).map_or(usize::MAX, |t| t.0);
        let cj = y.get(j).map_or(usize::MAX, |t| t.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, a * &x[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(b * &y[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, a * &x[i - 1].1 - b * &y[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// Inverse of a dense square matrix, `None` when singular.
pub fn invert_dense<F: Field>(f: &F, m: &[Vec<F::Elem>]) -> Result<Option<Vec<Vec<F::Elem>>>, LinAlgError> {
    let n = m.len();
    if let Some(r) = m.iter().find(|r| r.len() != n) {
        return Err(LinAlgError::NonSquare(n, r.len()));
    }
    let rows: Vec<SparseVec<F::Elem>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v: SparseVec<F::Elem> =
                r.iter().enumerate().filter(|(_, x)| !f.is_zero(x)).map(|(c, x)| (c, x.clone())).collect();
            v.push((n + i, f.one()));
            v
        })
        .collect();
    let s = rref_rows(f, 2 * n, rows, &RrefOptions::default());
    if s.pivots() != (0..n).collect::<Vec<_>>().as_slice() {
        return Ok(None);
    }
    let inv = s
        .rows()
        .iter()
        .map(|r| {
            let mut out = vec![f.zero(); n];
            for (c, v) in r.iter().filter(|(c, _)| *c >= n) {
                out[c - n] = v.clone();
            }
            out
        })
        .collect();
    Ok(Some(inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn dense_q(rows: &[&[i64]]) -> SparseMat<Rationals> {
        let d: Vec<Vec<BigRational>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        SparseMat::from_dense(Rationals, &d)
    }

    #[test]
    fn rref_zero_and_identity() {
        assert_eq!(rank(&SparseMat::zero(Rationals, 3, 4)), 0);
        assert_eq!(rank(&SparseMat::identity(Rationals, 4)), 4);
    }

    #[test]
    fn rref_dependent_rows() {
        let (r, s) = rref(&dense_q(&[&[1, 2, 3], &[2, 4, 6]]));
        assert_eq!(r, 1);
        assert_eq!(s.rows()[0], vec![(0, q(1)), (1, q(2)), (2, q(3))]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&SparseMat::identity(Rationals, 3)).dim(), 0);
        assert_eq!(kernel(&SparseMat::zero(Rationals, 2, 5)).dim(), 5);
        let k = kernel(&dense_q(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert_eq!(k.rows()[0], vec![(0, q(1)), (1, q(-1))]);
    }

    #[test]
    fn subspace_examples() {
        let a = Subspace::span(Rationals, 2, vec![vec![(0, q(1))]]);
        let b = Subspace::span(Rationals, 2, vec![vec![(1, q(1))]]);
        assert!(a.sum(&a).unwrap().equals(&a).unwrap());
        assert!(a.sum(&b).unwrap().is_full());
        let line = Subspace::span(Rationals, 3, vec![vec![(0, q(1)), (1, q(2)), (2, q(3))]]);
        assert!(line.contains(&vec![(0, q(2)), (1, q(4)), (2, q(6))]));
        assert!(!line.contains(&vec![(0, q(2))]));
        assert_eq!(a.sum(&line), Err(LinAlgError::AmbientMismatch(2, 3)));
        assert!(matches!(
            subspace_op(&a, &b, SubspaceOp::Contains).unwrap(),
            SubspaceOpResult::Bool(false)
        ));
    }

    #[test]
    fn fraction_free_matches_field_path() {
        let m = dense_q(&[&[2, 4, -6, 1], &[3, 1, 0, 5], &[5, 5, -6, 6], &[0, 7, 9, -2]]);
        let plain = rref_with(&m, &RrefOptions { fraction_free_threshold: usize::MAX });
        let ff = rref_with(&m, &RrefOptions { fraction_free_threshold: 0 });
        assert_eq!(plain, ff);
        assert_eq!(plain.0, 3);
    }

    #[test]
    fn inverse_dense() {
        let m = vec![vec![q(0), q(1)], vec![q(1), q(1)]];
        let inv = invert_dense(&Rationals, &m).unwrap().unwrap();
        assert_eq!(inv, vec![vec![q(-1), q(1)], vec![q(1), q(0)]]);
        assert!(invert_dense(&Rationals, &[vec![q(1), q(2)], vec![q(2), q(4)]]).unwrap().is_none());
    }

    #[test]
    fn prime_field_rank_drop() {
        // det = 5: full rank over ℚ and F_3, rank 1 over F_5
        let rows = [[1i64, 2], [3, 11]];
        for (p, expected) in [(3u64, 2usize), (5, 1)] {
            let f = PrimeField::new(p).unwrap();
            let d: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| f.from_int(x)).collect()).collect();
            assert_eq!(rank(&SparseMat::from_dense(f, &d)), expected);
        }
    }

    #[test]
    fn triplet_dump() {
        let m = dense_q(&[&[0, 1], &[-2, 0]]);
        assert_eq!(m.to_triplet_text(), "% 2 2 2\n0 1 1\n1 0 -2\n");
    }
}
