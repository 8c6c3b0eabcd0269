//! Degreewise construction of the generalized preprojective algebra
//! `Π = T_{R⊕S}(M⊕N)/I` of a Frobenius pair.
//!
//! `Π_d` is computed as `(Π_{d−1}·1_R ⊗ M ⊕ Π_{d−1}·1_S ⊗ N)` modulo the
//! images of `Π_{d−2}·r1` and `Π_{d−2}·r2·S`. Every basis element of `Π_d`
//! is a column `(parent, generator)` of that tensor product, so it is a
//! canonical word: its parent's word followed by `f b_j` or `e`.

mod cache;
mod element;
mod hilbert;
mod words;

use thiserror::Error;

use crate::exactfield::Field;
use crate::exactlinalg::{rref_rows, Accumulator, RrefOptions, SparseVec, Subspace};
use crate::frobalg::{FrobError, FrobeniusPair};

pub use cache::{Cache, CacheStatus};
pub use element::PiElement;
pub use hilbert::{resolution_identity_check, resolution_residuals};
pub use words::CanonicalWord;


/// Default build degree.
pub const DEFAULT_MAX_DEGREE: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PreprojError {
    #[error("degree {degree} exceeds the build degree {max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("unknown letter at {0:?}")]
    UnknownLetter(String),
    #[error("ill-formed word expression {0:?}")]
    IllFormed(String),
    #[error("elements belong to different degrees or algebras")]
    Mismatch,
    #[error("{0}")]
    Unsupported(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Frob(#[from] FrobError),
}

/// Which of the idempotents `1_R`, `1_S` acts nontrivially on a side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    R,
    S,
}

/// Degree-one generator appended to a parent word: `f·b_j` or `e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    F(usize),
    E,
}

/// Degree-zero basis element: `a = 1_R` or a basis element `b_i` of S.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    A,
    B(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Node {
    Root(Root),
    Child { parent: usize, gen: Gen },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisElem {
    pub node: Node,
    pub left: Side,
    pub right: Side,
}

#[derive(Debug, Clone)]
struct Level<F: Field> {
    basis: Vec<BasisElem>,
    /// First column of each parent in the tensor product (degree ≥ 1).
    col_start: Vec<usize>,
    /// Image of every tensor column in `Π_d` coordinates.
    image: Vec<SparseVec<F::Elem>>,
    /// Reduced relation space inside the tensor columns.
    relations: Subspace<F>,
    /// `right_s[i][w]` = basis element `w` times `b_i`.
    right_s: Vec<Vec<SparseVec<F::Elem>>>,
}

/// `Π_d` for `d ≤ max_degree`, with the operators needed for products.
#[derive(Debug, Clone)]
pub struct GradedAlgebra<F: Field> {
    pair: FrobeniusPair<F>,
    levels: Vec<Level<F>>,
}

impl<F: Field> GradedAlgebra<F> {
    pub fn build(pair: &FrobeniusPair<F>, max_degree: usize) -> Self {
        Self::build_with(pair, max_degree, &RrefOptions::default())
    }

    pub fn build_with(pair: &FrobeniusPair<F>, max_degree: usize, opts: &RrefOptions) -> Self {
        Self::build_from(pair, max_degree, |g, _d, cols, rows| rref_rows(g.field(), cols, rows, opts))
            .expect("fresh reductions are consistent")
    }

    /// Shared build loop; `reduce` supplies the relation space of each
    /// degree (computed, or loaded from a cache).
    fn build_from(
        pair: &FrobeniusPair<F>,
        max_degree: usize,
        mut reduce: impl FnMut(&Self, usize, usize, Vec<SparseVec<F::Elem>>) -> Subspace<F>,
    ) -> Result<Self, PreprojError> {
        let mut g = GradedAlgebra { pair: pair.clone(), levels: vec![level_zero(pair)] };
        for d in 1..=max_degree {
            let (col_start, cols) = g.columns(d);
            let rows = if d >= 2 { g.relation_rows(d, &col_start, cols.len()) } else { Vec::new() };
            let relations = reduce(&g, d, cols.len(), rows);
            if relations.ambient() != cols.len() {
                return Err(PreprojError::Cache(format!("degree {d}: ambient mismatch")));
            }
            let level = g.quotient_level(d, col_start, cols, relations)?;
            g.levels.push(level);
        }
        Ok(g)
    }

    pub fn pair(&self) -> &FrobeniusPair<F> {
        &self.pair
    }

    pub fn field(&self) -> &F {
        self.pair.field()
    }

    /// Rank `n` of S.
    pub fn rank_s(&self) -> usize {
        self.pair.rank()
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn check_degree(&self, d: usize) -> Result<(), PreprojError> {
        if d > self.max_degree() {
            return Err(PreprojError::DegreeOutOfRange { degree: d, max: self.max_degree() });
        }
        Ok(())
    }

    pub fn dim(&self, d: usize) -> Result<usize, PreprojError> {
        self.check_degree(d)?;
        Ok(self.levels[d].basis.len())
    }

    pub fn basis(&self, d: usize) -> Result<&[BasisElem], PreprojError> {
        self.check_degree(d)?;
        Ok(&self.levels[d].basis)
    }

    /// Dimensions of `1_R·Π_d` and `1_S·Π_d`.
    pub fn split_dims(&self, d: usize) -> Result<(usize, usize), PreprojError> {
        let b = self.basis(d)?;
        let r = b.iter().filter(|e| e.left == Side::R).count();
        Ok((r, b.len() - r))
    }

    /// Reduced relation space of degree `d` (empty below degree 2).
    pub fn relations(&self, d: usize) -> Result<&Subspace<F>, PreprojError> {
        self.check_degree(d)?;
        Ok(&self.levels[d].relations)
    }

    /// Tensor columns of degree `d`: for each basis element of `Π_{d−1}`,
    /// `n` columns `f b_j` if its right side is R, one column `e` otherwise.
    fn columns(&self, d: usize) -> (Vec<usize>, Vec<(usize, Gen)>) {
        let n = self.rank_s();
        let prev = &self.levels[d - 1];
        let mut col_start = Vec::with_capacity(prev.basis.len());
        let mut cols = Vec::new();
        for (x, b) in prev.basis.iter().enumerate() {
            col_start.push(cols.len());
            match b.right {
                Side::R => cols.extend((0..n).map(|j| (x, Gen::F(j)))),
                Side::S => cols.push((x, Gen::E)),
            }
        }
        (col_start, cols)
    }

    /// Generators of the degree-`d` relations, in tensor-column coordinates.
    fn relation_rows(&self, d: usize, col_start: &[usize], ncols: usize) -> Vec<SparseVec<F::Elem>> {
        let f = self.field();
        let n = self.rank_s();
        let unit = self.pair.algebra().unit();
        let pp = &self.levels[d - 2];
        let prev_dim = self.levels[d - 1].basis.len();
        let prev = &self.levels[d - 1];
        let mut rows = Vec::new();
        for (x, bx) in pp.basis.iter().enumerate() {
            match bx.right {
                // x · f·1_S · e
                Side::R => {
                    let mut fx = Accumulator::new(f, prev_dim);
                    for (j, uj) in unit.iter().enumerate() {
                        fx.add_scaled(uj, &prev.image[self.levels[d - 1].col_start[x] + j]);
                    }
                    let fx = fx.finish();
                    let mut row: SparseVec<F::Elem> = fx.iter().map(|(y, c)| (col_start[*y], c.clone())).collect();
                    row.sort_by_key(|(c, _)| *c);
                    rows.push(row);
                }
                // x · Σ_i e_i e f f_i · b_s
                Side::S => {
                    let mut xe: Vec<SparseVec<F::Elem>> = Vec::with_capacity(n);
                    for ei in self.pair.dual_left() {
                        let mut acc = Accumulator::new(f, pp.basis.len());
                        for (k, c) in ei.iter().enumerate() {
                            acc.add_scaled(c, &pp.right_s[k][x]);
                        }
                        // then · e
                        let xei = acc.finish();
                        let mut acc = Accumulator::new(f, prev_dim);
                        for (y, c) in &xei {
                            acc.add_scaled(c, &prev.image[prev.col_start[*y]]);
                        }
                        xe.push(acc.finish());
                    }
                    for s in 0..n {
                        let mut bs = vec![f.zero(); n];
                        bs[s] = f.one();
                        let mut acc = Accumulator::new(f, ncols);
                        for (i, fi) in self.pair.dual_right().iter().enumerate() {
                            let fis = self.pair.algebra().algebra_mul(fi, &bs).expect("rank-n vectors");
                            for (z, c) in &xe[i] {
                                let cs: SparseVec<F::Elem> = fis
                                    .iter()
                                    .enumerate()
                                    .filter(|(_, v)| !f.is_zero(v))
                                    .map(|(k, v)| (col_start[*z] + k, f.mul(c, v)))
                                    .collect();
                                acc.add_scaled(&f.one(), &cs);
                            }
                        }
                        rows.push(acc.finish());
                    }
                }
            }
        }
        rows
    }

    fn quotient_level(
        &self,
        d: usize,
        col_start: Vec<usize>,
        cols: Vec<(usize, Gen)>,
        relations: Subspace<F>,
    ) -> Result<Level<F>, PreprojError> {
        let f = self.field();
        let n = self.rank_s();
        let prev = &self.levels[d - 1];
        let mut is_pivot = vec![false; cols.len()];
        for (p, row) in relations.pivots().iter().zip(relations.rows()) {
            if *p >= cols.len() || is_pivot[*p] || row.first().map(|(c, v)| (*c, f.is_one(v))) != Some((*p, true)) {
                return Err(PreprojError::Cache(format!("degree {d}: relation space is not reduced")));
            }
            is_pivot[*p] = true;
        }
        let mut basis_index = vec![usize::MAX; cols.len()];
        let mut basis = Vec::new();
        for (c, &(parent, gen)) in cols.iter().enumerate() {
            if !is_pivot[c] {
                basis_index[c] = basis.len();
                let right = match gen {
                    Gen::F(_) => Side::S,
                    Gen::E => Side::R,
                };
                basis.push(BasisElem { node: Node::Child { parent, gen }, left: prev.basis[parent].left, right });
            }
        }
        let mut image: Vec<SparseVec<F::Elem>> =
            (0..cols.len()).map(|c| if is_pivot[c] { Vec::new() } else { vec![(basis_index[c], f.one())] }).collect();
        for (p, row) in relations.pivots().iter().zip(relations.rows()) {
            let mut v = Vec::with_capacity(row.len() - 1);
            for (c, val) in &row[1..] {
                if is_pivot[*c] {
                    return Err(PreprojError::Cache(format!("degree {d}: relation space is not reduced")));
                }
                v.push((basis_index[*c], f.neg(val)));
            }
            image[*p] = v;
        }
        // right S-action: (p, f b_j)·b_i = Σ_k c_ji^k (p, f b_k)
        let alg = self.pair.algebra();
        let right_s = (0..n)
            .map(|i| {
                basis
                    .iter()
                    .map(|b| match b.node {
                        Node::Child { parent, gen: Gen::F(j) } => {
                            let mut acc = Accumulator::new(f, basis.len());
                            for (k, c) in alg.product(j, i) {
                                acc.add_scaled(c, &image[col_start[parent] + k]);
                            }
                            acc.finish()
                        }
                        _ => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        Ok(Level { basis, col_start, image, relations, right_s })
    }

    // ---- operators on coordinate vectors ----

    /// `v·a`: keep the components whose right side is R.
    fn op_right_a(&self, d: usize, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let b = &self.levels[d].basis;
        v.iter().filter(|(x, _)| b[*x].right == Side::R).cloned().collect()
    }

    /// `v·b_i`.
    fn op_right_s(&self, d: usize, v: &SparseVec<F::Elem>, i: usize) -> SparseVec<F::Elem> {
        let lvl = &self.levels[d];
        let mut acc = Accumulator::new(self.field(), lvl.basis.len());
        for (x, c) in v {
            acc.add_scaled(c, &lvl.right_s[i][*x]);
        }
        acc.finish()
    }

    /// `v·g` for a degree-one generator, landing in degree `d + 1`.
    fn op_right_gen(&self, d: usize, v: &SparseVec<F::Elem>, gen: Gen) -> SparseVec<F::Elem> {
        let lvl = &self.levels[d];
        let next = &self.levels[d + 1];
        let mut acc = Accumulator::new(self.field(), next.basis.len());
        for (x, c) in v {
            let col = match (lvl.basis[*x].right, gen) {
                (Side::R, Gen::F(j)) => next.col_start[*x] + j,
                (Side::S, Gen::E) => next.col_start[*x],
                _ => continue,
            };
            acc.add_scaled(c, &next.image[col]);
        }
        acc.finish()
    }

    /// `x·w` for every basis element `w` of `Π_q`, with `x ∈ Π_p`.
    fn left_mul_all(&self, p: usize, x: &SparseVec<F::Elem>, q: usize) -> Vec<SparseVec<F::Elem>> {
        let mut cur: Vec<SparseVec<F::Elem>> = self.levels[0]
            .basis
            .iter()
            .map(|b| match b.node {
                Node::Root(Root::A) => self.op_right_a(p, x),
                Node::Root(Root::B(i)) => self.op_right_s(p, x, i),
                Node::Child { .. } => unreachable!("degree-zero basis"),
            })
            .collect();
        for k in 1..=q {
            cur = self.levels[k]
                .basis
                .iter()
                .map(|b| match b.node {
                    Node::Child { parent, gen } => self.op_right_gen(p + k - 1, &cur[parent], gen),
                    Node::Root(_) => unreachable!("positive degree"),
                })
                .collect();
        }
        cur
    }
}

fn level_zero<F: Field>(pair: &FrobeniusPair<F>) -> Level<F> {
    let f = pair.field();
    let n = pair.rank();
    let mut basis = vec![BasisElem { node: Node::Root(Root::A), left: Side::R, right: Side::R }];
    basis.extend((0..n).map(|i| BasisElem { node: Node::Root(Root::B(i)), left: Side::S, right: Side::S }));
    let alg = pair.algebra();
    let right_s = (0..n)
        .map(|i| {
            let mut col = vec![Vec::new()];
            col.extend((0..n).map(|j| alg.product(j, i).iter().map(|(k, c)| (k + 1, c.clone())).collect()));
            col
        })
        .collect();
    let image = Vec::new();
    Level { basis, col_start: Vec::new(), image, relations: Subspace::zero(f.clone(), 0), right_s }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals};
    use crate::frobalg::{catalog, CATALOG_NAMES};

    fn expected(d: usize) -> usize {
        if d.is_multiple_of(2) {
            5 * (d + 1)
        } else {
            4 * (d + 1)
        }
    }

    #[test]
    fn low_degrees() {
        let p = catalog(&Rationals, "bikwad").unwrap().into_pair("bikwad").unwrap();
        let g = GradedAlgebra::build(&p, 7);
        assert_eq!(g.dim(0).unwrap(), 5);
        assert_eq!(g.dim(1).unwrap(), 8);
        assert_eq!(g.dim(2).unwrap(), 15);
        assert_eq!(g.dim(7).unwrap(), 32);
        assert_eq!(g.split_dims(0).unwrap(), (1, 4));
        assert_eq!(g.split_dims(2).unwrap(), (3, 12));
        assert_eq!(g.split_dims(3).unwrap(), (8, 8));
        assert_eq!(g.dim(8), Err(PreprojError::DegreeOutOfRange { degree: 8, max: 7 }));
    }

    #[test]
    fn bikwad_degree_two_tensor_and_relations() {
        // 4 columns f·b·e and 16 columns b·e·f·b′; 5 independent relations
        let p = catalog(&Rationals, "bikwad").unwrap().into_pair("bikwad").unwrap();
        let g = GradedAlgebra::build(&p, 2);
        assert_eq!(g.relations(2).unwrap().ambient(), 20);
        assert_eq!(g.relations(2).unwrap().dim(), 5);
    }

    #[test]
    fn dimension_law_small_primes() {
        for q in [2u64, 3] {
            let fp = PrimeField::new(q).unwrap();
            for name in CATALOG_NAMES {
                let p = catalog(&fp, name).unwrap().into_pair(name).unwrap();
                let g = GradedAlgebra::build(&p, 6);
                for d in 0..=6 {
                    assert_eq!(g.dim(d).unwrap(), expected(d), "{name} F_{q} d={d}");
                }
            }
        }
    }
}
