//! Sparse vectors as sorted `(index, value)` lists without stored zeros.

use crate::exactfield::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

pub(crate) fn get<E>(v: &[(usize, E)], idx: usize) -> Option<&E> {
    v.binary_search_by_key(&idx, |(c, _)| *c).ok().map(|i| &v[i].1)
}

/// `y + a·x`.
pub fn axpy<F: Field>(f: &F, y: &[(usize, F::Elem)], a: &F::Elem, x: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    if f.is_zero(a) {
        return y.to_vec();
    }
    let mut out = Vec::with_capacity(y.len() + x.len());
    let (mut i, mut j) = (0, 0);
    while i < y.len() || j < x.len() {
        let ci = y.get(i).map_or(usize::MAX, |t| t.0);
        let cj = x.get(j).map_or(usize::MAX, |t| t.0);
        if ci < cj {
            out.push(y[i].clone());
            i += 1;
        } else if cj < ci {
            let v = f.mul(a, &x[j].1);
            if !f.is_zero(&v) {
                out.push((cj, v));
            }
            j += 1;
        } else {
            let v = f.add(&y[i].1, &f.mul(a, &x[j].1));
            if !f.is_zero(&v) {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale<F: Field>(f: &F, x: &[(usize, F::Elem)], a: &F::Elem) -> SparseVec<F::Elem> {
    x.iter()
        .map(|(c, v)| (*c, f.mul(a, v)))
        .filter(|(_, v)| !f.is_zero(v))
        .collect()
}

pub fn dot<F: Field>(f: &F, x: &[(usize, F::Elem)], y: &[(usize, F::Elem)]) -> F::Elem {
    let mut acc = f.zero();
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc = f.add(&acc, &f.mul(&x[i].1, &y[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Dense accumulator for long linear combinations of sparse vectors.
pub struct Accumulator<'a, F: Field> {
    field: &'a F,
    dense: Vec<F::Elem>,
}

impl<'a, F: Field> Accumulator<'a, F> {
    pub fn new(field: &'a F, dim: usize) -> Self {
        Accumulator { field, dense: vec![field.zero(); dim] }
    }

    pub fn add_scaled(&mut self, a: &F::Elem, x: &[(usize, F::Elem)]) {
        if self.field.is_zero(a) {
            return;
        }
        let one = self.field.is_one(a);
        for (c, v) in x {
            let term = if one { v.clone() } else { self.field.mul(a, v) };
            self.dense[*c] = self.field.add(&self.dense[*c], &term);
        }
    }

    pub fn finish(self) -> SparseVec<F::Elem> {
        let f = self.field;
        self.dense.into_iter().enumerate().filter(|(_, v)| !f.is_zero(v)).collect()
    }
}
