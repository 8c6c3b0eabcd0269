//! Commutative algebras given by structure constants, Frobenius functionals
//! with their Gram matrices and dual bases, the rank-4 catalog and its
//! deformation families.

mod catalog;
mod classify;
mod deform;
mod json;

use thiserror::Error;

use crate::exactfield::{Field, FieldError, PrimeField, Rationals, RationalFunctions};
use crate::exactlinalg::{invert_dense, rref_rows, LinAlgError, RrefOptions, SparseVec};

pub use catalog::{
    catalog, direct_sum, dual_numbers_pair_split, poly_quotient, CatalogEntry, CATALOG_NAMES, REJECT_NAMES,
};
pub use classify::{is_frobenius, FrobeniusVerdict};
pub use deform::{deformation, DeformationFamily, FAMILY_COUNT};
pub use json::{AlgebraFile, AnyPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrobError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("vector of length {got}, algebra has rank {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("structure constant table is malformed: {0}")]
    MalformedTable(String),
    #[error("invalid basis name {0:?}")]
    InvalidName(String),
    #[error("b_{0}·b_{1} ≠ b_{1}·b_{0}")]
    NotCommutative(usize, usize),
    #[error("algebra has no unit")]
    NoUnit,
    #[error("(b_{0}·b_{1})·b_{2} ≠ b_{0}·(b_{1}·b_{2})")]
    NotAssociative(usize, usize, usize),
    #[error("Gram matrix of λ is singular: λ is not a Frobenius functional")]
    SingularGram,
    #[error("Gram matrix degenerates at the specialization point")]
    GramDegenerate,
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error("{0:?} is not Frobenius and has no functional")]
    RejectHasNoPair(String),
    #[error("no deformation family {0} (expected 1..6)")]
    BadFamily(u32),
    #[error("invalid algebra file: {0}")]
    Json(String),
}

/// Letters reserved by the word syntax of the preprojective algebra.
pub const RESERVED_NAMES: [&str; 4] = ["a", "b", "e", "f"];

fn check_name(name: &str) -> Result<(), FrobError> {
    let ok = !name.is_empty()
        && !RESERVED_NAMES.contains(&name)
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !name.starts_with(|c: char| c.is_ascii_digit() && name != "1");
    if ok {
        Ok(())
    } else {
        Err(FrobError::InvalidName(name.to_string()))
    }
}

/// A finite-dimensional commutative unital algebra `b_i·b_j = Σ_k c_ij^k b_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommAlgebra<F: Field> {
    field: F,
    names: Vec<String>,
    table: Vec<Vec<SparseVec<F::Elem>>>,
    unit: Vec<F::Elem>,
}

impl<F: Field> CommAlgebra<F> {
    /// Validate names, commutativity, existence of a unit and associativity.
    pub fn new(field: F, names: Vec<String>, table: Vec<Vec<SparseVec<F::Elem>>>) -> Result<Self, FrobError> {
        let n = names.len();
        if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(FrobError::MalformedTable(format!("expected a {n}×{n} table")));
        }
        for (i, name) in names.iter().enumerate() {
            check_name(name)?;
            if names[..i].contains(name) {
                return Err(FrobError::InvalidName(name.clone()));
            }
        }
        for row in &table {
            for v in row {
                let sorted = v.windows(2).all(|w| w[0].0 < w[1].0);
                if !sorted || v.iter().any(|(k, c)| *k >= n || field.is_zero(c)) {
                    return Err(FrobError::MalformedTable("bad product vector".into()));
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if table[i][j] != table[j][i] {
                    return Err(FrobError::NotCommutative(i, j));
                }
            }
        }
        let unit = find_unit(&field, &table).ok_or(FrobError::NoUnit)?;
        let alg = CommAlgebra { field, names, table, unit };
        alg.check_associative()?;
        Ok(alg)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// `b_i·b_j` as a sparse coordinate vector.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec<F::Elem> {
        &self.table[i][j]
    }

    pub fn table(&self) -> &[Vec<SparseVec<F::Elem>>] {
        &self.table
    }

    /// Coordinates of the unit.
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }

    pub fn algebra_mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Result<Vec<F::Elem>, FrobError> {
        let n = self.rank();
        for v in [x, y] {
            if v.len() != n {
                return Err(FrobError::LengthMismatch { expected: n, got: v.len() });
            }
        }
        let f = &self.field;
        let mut out = vec![f.zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !f.is_zero(v)) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !f.is_zero(v)) {
                let c = f.mul(xi, yj);
                for (k, v) in &self.table[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, v));
                }
            }
        }
        Ok(out)
    }

    fn basis_vec(&self, i: usize) -> Vec<F::Elem> {
        let mut v = vec![self.field.zero(); self.rank()];
        v[i] = self.field.one();
        v
    }

    fn check_associative(&self) -> Result<(), FrobError> {
        let n = self.rank();
        let dense = |v: &SparseVec<F::Elem>| {
            let mut d = vec![self.field.zero(); n];
            for (k, c) in v {
                d[*k] = c.clone();
            }
            d
        };
        for i in 0..n {
            for j in 0..n {
                let ij = dense(&self.table[i][j]);
                for k in 0..n {
                    let left = self.algebra_mul(&ij, &self.basis_vec(k))?;
                    let right = self.algebra_mul(&self.basis_vec(i), &dense(&self.table[j][k]))?;
                    if left != right {
                        return Err(FrobError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Apply `f` to every structure constant, landing in another field.
    pub fn map_field<G: Field>(
        &self,
        target: G,
        f: impl Fn(&F::Elem) -> Result<G::Elem, FrobError>,
    ) -> Result<CommAlgebra<G>, FrobError> {
        let mut table = Vec::with_capacity(self.rank());
        for row in &self.table {
            let mut new_row = Vec::with_capacity(row.len());
            for v in row {
                let mut nv = Vec::new();
                for (k, c) in v {
                    let m = f(c)?;
                    if !target.is_zero(&m) {
                        nv.push((*k, m));
                    }
                }
                new_row.push(nv);
            }
            table.push(new_row);
        }
        CommAlgebra::new(target, self.names.clone(), table)
    }
}

/// Solve `Σ_i u_i c_ij^k = δ_jk` for a unique `u`.
fn find_unit<F: Field>(f: &F, table: &[Vec<SparseVec<F::Elem>>]) -> Option<Vec<F::Elem>> {
    let n = table.len();
    let mut rows = Vec::with_capacity(n * n);
    for j in 0..n {
        for k in 0..n {
            let mut row: SparseVec<F::Elem> = Vec::new();
            for (i, r) in table.iter().enumerate() {
                if let Some((_, c)) = r[j].iter().find(|(kk, _)| *kk == k) {
                    row.push((i, c.clone()));
                }
            }
            if j == k {
                row.push((n, f.one()));
            }
            rows.push(row);
        }
    }
    let s = rref_rows(f, n + 1, rows, &RrefOptions::default());
    if s.pivots() != (0..n).collect::<Vec<_>>().as_slice() {
        return None;
    }
    Some(
        s.rows()
            .iter()
            .map(|r| r.iter().find(|(c, _)| *c == n).map_or_else(|| f.zero(), |(_, v)| v.clone()))
            .collect(),
    )
}

/// A commutative algebra with a Frobenius functional `λ`, its Gram matrix
/// `Θ_ij = λ(b_i b_j)` and dual bases `e_i = b_i`, `f_i = Σ_l (Θ⁻¹)_il b_l`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusPair<F: Field> {
    algebra: CommAlgebra<F>,
    lambda: Vec<F::Elem>,
    gram: Vec<Vec<F::Elem>>,
    dual_left: Vec<Vec<F::Elem>>,
    dual_right: Vec<Vec<F::Elem>>,
}

impl<F: Field> FrobeniusPair<F> {
    pub fn make(algebra: CommAlgebra<F>, lambda: Vec<F::Elem>) -> Result<Self, FrobError> {
        let n = algebra.rank();
        if lambda.len() != n {
            return Err(FrobError::LengthMismatch { expected: n, got: lambda.len() });
        }
        let gram = gram_matrix(&algebra, &lambda);
        let inv = invert_dense(algebra.field(), &gram)?.ok_or(FrobError::SingularGram)?;
        let dual_left = (0..n).map(|i| algebra.basis_vec(i)).collect();
        Ok(FrobeniusPair { algebra, lambda, gram, dual_left, dual_right: inv })
    }

    pub fn algebra(&self) -> &CommAlgebra<F> {
        &self.algebra
    }

    pub fn field(&self) -> &F {
        self.algebra.field()
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    pub fn lambda(&self) -> &[F::Elem] {
        &self.lambda
    }

    pub fn gram(&self) -> &[Vec<F::Elem>] {
        &self.gram
    }

    /// `(e_i)` as coordinate vectors.
    pub fn dual_left(&self) -> &[Vec<F::Elem>] {
        &self.dual_left
    }

    /// `(f_i)` as coordinate vectors.
    pub fn dual_right(&self) -> &[Vec<F::Elem>] {
        &self.dual_right
    }

    pub fn apply_lambda(&self, x: &[F::Elem]) -> F::Elem {
        let f = self.field();
        x.iter().zip(&self.lambda).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
    }

    /// Recompute `λ(e_i f_j)` and compare with `δ_ij`.
    pub fn duality_holds(&self) -> bool {
        let f = self.field();
        self.dual_left.iter().enumerate().all(|(i, e)| {
            self.dual_right.iter().enumerate().all(|(j, fj)| {
                let v = self.apply_lambda(&self.algebra.algebra_mul(e, fj).expect("rank-n vectors"));
                if i == j {
                    f.is_one(&v)
                } else {
                    f.is_zero(&v)
                }
            })
        })
    }

    /// Map structure constants and `λ` into another field and rebuild the
    /// dual bases there.
    pub fn map_field<G: Field>(
        &self,
        target: G,
        f: impl Fn(&F::Elem) -> Result<G::Elem, FrobError>,
    ) -> Result<FrobeniusPair<G>, FrobError> {
        let algebra = self.algebra.map_field(target, &f)?;
        let lambda = self.lambda.iter().map(&f).collect::<Result<Vec<_>, _>>()?;
        FrobeniusPair::make(algebra, lambda).map_err(|e| match e {
            FrobError::SingularGram => FrobError::GramDegenerate,
            other => other,
        })
    }
}

fn gram_matrix<F: Field>(a: &CommAlgebra<F>, lambda: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let f = a.field();
    let n = a.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| a.product(i, j).iter().fold(f.zero(), |acc, (k, c)| f.add(&acc, &f.mul(c, &lambda[*k]))))
                .collect()
        })
        .collect()
}

/// Specialize a pair over ℚ(u) at `u = c`.
pub fn specialize_pair(
    p: &FrobeniusPair<RationalFunctions>,
    c: &num_rational::BigRational,
) -> Result<FrobeniusPair<Rationals>, FrobError> {
    p.map_field(Rationals, |x| Ok(x.eval(c)?))
}

/// Reduce a pair over ℚ modulo a prime.
pub fn reduce_pair(p: &FrobeniusPair<Rationals>, prime: u64) -> Result<FrobeniusPair<PrimeField>, FrobError> {
    let fp = PrimeField::new(prime)?;
    p.map_field(fp, |x| Ok(fp.from_rational(x)?))
}
