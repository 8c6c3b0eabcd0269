//! Truncated inverse of the matrix power series `I − t·C + t²·I`.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{LinAlgError, SparseMat};
use crate::exactfield::Rationals;

/// Coefficients `W_0..W_D` of a square matrix power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeriesMat {
    size: usize,
    terms: Vec<Vec<Vec<BigRational>>>,
}

impl TruncSeriesMat {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn term(&self, d: usize) -> &[Vec<BigRational>] {
        &self.terms[d]
    }

    pub fn terms(&self) -> &[Vec<Vec<BigRational>>] {
        &self.terms
    }

    /// Sum of all entries of `W_d`.
    pub fn total(&self, d: usize) -> BigRational {
        self.terms[d].iter().flatten().sum()
    }

    /// Sum of column `c` of `W_d`.
    pub fn column_sum(&self, d: usize, c: usize) -> BigRational {
        self.terms[d].iter().map(|r| &r[c]).sum()
    }

    /// Whether `W_d = C·W_{d−1} − W_{d−2}` (with `W_{−1} = 0`, `W_0 = I`)
    /// holds at every stored order.
    pub fn satisfies_recurrence(&self, c: &[Vec<BigRational>]) -> bool {
        let m = self.size;
        let id = identity(m);
        if self.terms[0] != id {
            return false;
        }
        let zero = vec![vec![BigRational::zero(); m]; m];
        (1..self.terms.len()).all(|d| {
            let prev2 = if d >= 2 { &self.terms[d - 2] } else { &zero };
            self.terms[d] == sub(&mul(c, &self.terms[d - 1]), prev2)
        })
    }
}

fn identity(m: usize) -> Vec<Vec<BigRational>> {
    (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect()
}

fn mul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let m = a.len();
    (0..m)
        .map(|i| (0..m).map(|j| (0..m).map(|k| &a[i][k] * &b[k][j]).sum()).collect())
        .collect()
}

fn sub(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect()).collect()
}

/// `W(t) = (I − t·C + t²·I)^{-1}` truncated at order `order`.
pub fn series_inverse(c: &SparseMat<Rationals>, order: usize) -> Result<TruncSeriesMat, LinAlgError> {
    if c.nrows() != c.ncols() {
        return Err(LinAlgError::NonSquare(c.nrows(), c.ncols()));
    }
    let m = c.nrows();
    let cd = c.to_dense();
    let mut terms = vec![identity(m)];
    if order >= 1 {
        terms.push(cd.clone());
    }
    for d in 2..=order {
        let next = sub(&mul(&cd, &terms[d - 1]), &terms[d - 2]);
        terms.push(next);
    }
    Ok(TruncSeriesMat { size: m, terms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(n: usize) -> SparseMat<Rationals> {
        let mut d = vec![vec![BigRational::zero(); n + 1]; n + 1];
        for i in 1..=n {
            d[0][i] = BigRational::one();
            d[i][0] = BigRational::one();
        }
        SparseMat::from_dense(Rationals, &d)
    }

    #[test]
    fn low_orders() {
        let c = star(4);
        let w = series_inverse(&c, 5).unwrap();
        assert_eq!(w.order(), 5);
        assert_eq!(w.term(0), identity(5).as_slice());
        assert_eq!(w.term(1), c.to_dense().as_slice());
        assert!(w.satisfies_recurrence(&c.to_dense()));
    }

    #[test]
    fn star_totals() {
        let w = series_inverse(&star(4), 4).unwrap();
        let totals: Vec<BigRational> = (0..=4).map(|d| w.total(d)).collect();
        let expect: Vec<BigRational> = [5, 8, 15, 16, 25].iter().map(|&x| BigRational::from_integer(x.into())).collect();
        assert_eq!(totals, expect);
    }

    #[test]
    fn non_square_rejected() {
        let c = SparseMat::zero(Rationals, 2, 3);
        assert_eq!(series_inverse(&c, 2), Err(LinAlgError::NonSquare(2, 3)));
    }
}
