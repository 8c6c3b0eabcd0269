//! Homogeneous elements of `Π` and their arithmetic.

use super::{Gen, GradedAlgebra, Node, PreprojError, Root};
use crate::exactfield::Field;
use crate::exactlinalg::{axpy, scale, Accumulator, SparseVec};

/// A homogeneous element: coordinates over the basis of `Π_degree`.
#[derive(Debug, Clone)]
pub struct PiElement<F: Field> {
    degree: usize,
    coeffs: SparseVec<F::Elem>,
}

impl<F: Field> PartialEq for PiElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.coeffs == other.coeffs
    }
}

impl<F: Field> PiElement<F> {
    pub(crate) fn from_parts(degree: usize, coeffs: SparseVec<F::Elem>) -> Self {
        PiElement { degree, coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        PiElement { degree, coeffs: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &SparseVec<F::Elem> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> GradedAlgebra<F> {
    /// Wrap a coordinate vector, checking it fits `Π_d`.
    pub fn element(&self, degree: usize, coeffs: SparseVec<F::Elem>) -> Result<PiElement<F>, PreprojError> {
        let dim = self.dim(degree)?;
        let f = self.field();
        let ok = coeffs.windows(2).all(|w| w[0].0 < w[1].0)
            && coeffs.last().is_none_or(|(c, _)| *c < dim)
            && coeffs.iter().all(|(_, v)| !f.is_zero(v));
        if !ok {
            return Err(PreprojError::Mismatch);
        }
        Ok(PiElement { degree, coeffs })
    }

    pub fn basis_element(&self, degree: usize, idx: usize) -> Result<PiElement<F>, PreprojError> {
        self.element(degree, vec![(idx, self.field().one())])
    }

    /// `a = 1_R`.
    pub fn idem_r(&self) -> PiElement<F> {
        PiElement { degree: 0, coeffs: vec![(0, self.field().one())] }
    }

    /// The element of `S ⊂ Π_0` with the given coordinates.
    pub fn s_element(&self, s: &[F::Elem]) -> PiElement<F> {
        let f = self.field();
        let coeffs = s.iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(i, c)| (i + 1, c.clone())).collect();
        PiElement { degree: 0, coeffs }
    }

    /// `1_S`.
    pub fn idem_s(&self) -> PiElement<F> {
        self.s_element(self.pair.algebra().unit())
    }

    /// `e`, the class of `1_S ∈ N`.
    pub fn gen_e(&self) -> PiElement<F> {
        let lvl = &self.levels[1];
        let mut acc = Accumulator::new(self.field(), lvl.basis.len());
        for (j, u) in self.pair.algebra().unit().iter().enumerate() {
            acc.add_scaled(u, &lvl.image[lvl.col_start[1 + j]]);
        }
        PiElement { degree: 1, coeffs: acc.finish() }
    }

    /// `f`, the class of `1_S ∈ M`.
    pub fn gen_f(&self) -> PiElement<F> {
        let lvl = &self.levels[1];
        let mut acc = Accumulator::new(self.field(), lvl.basis.len());
        for (j, u) in self.pair.algebra().unit().iter().enumerate() {
            acc.add_scaled(u, &lvl.image[lvl.col_start[0] + j]);
        }
        PiElement { degree: 1, coeffs: acc.finish() }
    }

    /// The degree-0 and degree-1 generators `a, b_i, f·b_j, b_i·e`, named.
    pub fn generators(&self) -> Vec<(String, PiElement<F>)> {
        let names = self.pair.algebra().names();
        let n = self.rank_s();
        let mut out = vec![("a".to_string(), self.idem_r())];
        out.extend((0..n).map(|i| (names[i].clone(), PiElement { degree: 0, coeffs: vec![(i + 1, self.field().one())] })));
        let lvl = &self.levels[1];
        out.extend((0..n).map(|j| (format!("f{}", names[j]), PiElement { degree: 1, coeffs: lvl.image[j].clone() })));
        out.extend(
            (0..n).map(|i| (format!("{}e", names[i]), PiElement { degree: 1, coeffs: lvl.image[lvl.col_start[1 + i]].clone() })),
        );
        out
    }

    fn same_degree(&self, x: &PiElement<F>, y: &PiElement<F>) -> Result<(), PreprojError> {
        if x.degree != y.degree {
            return Err(PreprojError::Mismatch);
        }
        self.check_degree(x.degree)
    }

    pub fn add(&self, x: &PiElement<F>, y: &PiElement<F>) -> Result<PiElement<F>, PreprojError> {
        self.same_degree(x, y)?;
        Ok(PiElement { degree: x.degree, coeffs: axpy(self.field(), &x.coeffs, &self.field().one(), &y.coeffs) })
    }

    pub fn sub(&self, x: &PiElement<F>, y: &PiElement<F>) -> Result<PiElement<F>, PreprojError> {
        self.same_degree(x, y)?;
        let f = self.field();
        Ok(PiElement { degree: x.degree, coeffs: axpy(f, &x.coeffs, &f.neg(&f.one()), &y.coeffs) })
    }

    pub fn scale(&self, c: &F::Elem, x: &PiElement<F>) -> PiElement<F> {
        PiElement { degree: x.degree, coeffs: scale(self.field(), &x.coeffs, c) }
    }

    pub fn neg(&self, x: &PiElement<F>) -> PiElement<F> {
        self.scale(&self.field().neg(&self.field().one()), x)
    }

    /// The product `x·y`.
    pub fn multiply(&self, x: &PiElement<F>, y: &PiElement<F>) -> Result<PiElement<F>, PreprojError> {
        self.check_degree(x.degree)?;
        self.check_degree(y.degree)?;
        let d = x.degree + y.degree;
        self.check_degree(d)?;
        if x.is_zero() || y.is_zero() {
            return Ok(PiElement::zero(d));
        }
        let images = self.left_mul_all(x.degree, &x.coeffs, y.degree);
        let mut acc = Accumulator::new(self.field(), self.levels[d].basis.len());
        for (w, c) in &y.coeffs {
            acc.add_scaled(c, &images[*w]);
        }
        Ok(PiElement { degree: d, coeffs: acc.finish() })
    }

    /// Product of a sequence of elements, left to right.
    pub fn product(&self, xs: &[PiElement<F>]) -> Result<PiElement<F>, PreprojError> {
        let mut it = xs.iter();
        let first = it.next().ok_or_else(|| PreprojError::IllFormed(String::new()))?.clone();
        it.try_fold(first, |acc, x| self.multiply(&acc, x))
    }

    /// `x·y − y·x`.
    pub fn commutator(&self, x: &PiElement<F>, y: &PiElement<F>) -> Result<PiElement<F>, PreprojError> {
        self.sub(&self.multiply(x, y)?, &self.multiply(y, x)?)
    }

    /// Columns of left multiplication by `x`: `x·w` for each basis `w` of `Π_q`.
    pub fn left_multiplication(&self, x: &PiElement<F>, q: usize) -> Result<Vec<SparseVec<F::Elem>>, PreprojError> {
        self.check_degree(x.degree + q)?;
        Ok(self.left_mul_all(x.degree, &x.coeffs, q))
    }

    /// Columns of right multiplication by a generator (as produced by
    /// [`generators`](Self::generators), by index) on `Π_q`.
    pub fn right_generator_multiplication(&self, which: usize, q: usize) -> Result<Vec<SparseVec<F::Elem>>, PreprojError> {
        let n = self.rank_s();
        let shift = if which > n { 1 } else { 0 };
        self.check_degree(q + shift)?;
        let f = self.field();
        Ok((0..self.levels[q].basis.len())
            .map(|w| {
                let v = vec![(w, f.one())];
                match which {
                    0 => self.op_right_a(q, &v),
                    i if i <= n => self.op_right_s(q, &v, i - 1),
                    j if j <= 2 * n => self.op_right_gen(q, &v, Gen::F(j - n - 1)),
                    i => self.op_right_gen(q, &self.op_right_s(q, &v, i - 2 * n - 1), Gen::E),
                }
            })
            .collect())
    }

    /// Sign of each basis element under the automorphism that negates the
    /// S-basis elements flagged in `negate` (`σ` acts letter by letter on
    /// canonical words).
    pub fn basis_signs(&self, negate: &[bool]) -> Vec<Vec<bool>> {
        let mut out: Vec<Vec<bool>> = Vec::with_capacity(self.levels.len());
        for (d, lvl) in self.levels.iter().enumerate() {
            let signs = lvl
                .basis
                .iter()
                .map(|b| match b.node {
                    Node::Root(Root::A) => false,
                    Node::Root(Root::B(i)) => negate[i],
                    Node::Child { parent, gen: Gen::F(j) } => out[d - 1][parent] ^ negate[j],
                    Node::Child { parent, gen: Gen::E } => out[d - 1][parent],
                })
                .collect();
            out.push(signs);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::Rationals;
    use crate::frobalg::catalog;

    fn bikwad(d: usize) -> GradedAlgebra<Rationals> {
        GradedAlgebra::build(&catalog(&Rationals, "bikwad").unwrap().into_pair("bikwad").unwrap(), d)
    }

    #[test]
    fn idempotents_and_generators() {
        let g = bikwad(3);
        let a = g.idem_r();
        let b = g.idem_s();
        assert_eq!(g.multiply(&a, &a).unwrap(), a);
        assert_eq!(g.multiply(&b, &b).unwrap(), b);
        assert!(g.multiply(&a, &b).unwrap().is_zero());
        let (e, f) = (g.gen_e(), g.gen_f());
        assert_eq!(g.multiply(&e, &a).unwrap(), e);
        assert_eq!(g.multiply(&a, &f).unwrap(), f);
        assert!(g.multiply(&a, &e).unwrap().is_zero());
        assert!(g.multiply(&f, &a).unwrap().is_zero());
        assert!(g.multiply(&f, &e).unwrap().is_zero());
        assert!(g.multiply(&e, &e).unwrap().is_zero());
        assert!(g.multiply(&f, &f).unwrap().is_zero());
        assert_eq!(g.generators().len(), 13);
    }

    #[test]
    fn unit_decomposition() {
        let g = bikwad(4);
        let one_r = g.idem_r();
        let one_s = g.idem_s();
        for d in 0..=4 {
            for w in 0..g.dim(d).unwrap() {
                let x = g.basis_element(d, w).unwrap();
                let sum = g.add(&g.multiply(&one_r, &x).unwrap(), &g.multiply(&one_s, &x).unwrap()).unwrap();
                assert_eq!(sum, x);
            }
        }
    }

    #[test]
    fn right_generators_agree_with_multiply() {
        let g = bikwad(4);
        let gens = g.generators();
        for (k, (_, gen)) in gens.iter().enumerate() {
            let cols = g.right_generator_multiplication(k, 2).unwrap();
            for (w, col) in cols.iter().enumerate() {
                let x = g.basis_element(2, w).unwrap();
                assert_eq!(&g.multiply(&x, gen).unwrap().coeffs, col);
            }
        }
    }
}
