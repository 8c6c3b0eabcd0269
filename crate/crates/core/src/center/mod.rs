//! The center of `Π`, normalizing elements, and generation checks.

mod deform;
mod explicit;
mod sigma;

use crate::exactfield::Field;
use crate::exactlinalg::{kernel, SparseMat, SparseVec, Subspace};
use crate::preproj::{GradedAlgebra, PiElement, PreprojError};

pub use deform::{center_deformation_compare, DeformationRow};
pub use explicit::{apply_sign, bikwad_elements, mu3_check, normalizing_check, sign_automorphism, zeta_dimension_check, BikwadElements, ZetaRow};
pub use sigma::{sigma_surjectivity_check, SigmaRow};

/// `dim Z_d` for rank-4 pairs: `d/4 + 1`, `(d−2)/4`, or 0.
pub fn expected_center_dim(d: usize) -> usize {
    match d % 4 {
        0 => d / 4 + 1,
        2 => (d - 2) / 4,
        _ => 0,
    }
}

/// Homogeneous central elements of one degree.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterBasis<F: Field> {
    pub degree: usize,
    pub space: Subspace<F>,
}

impl<F: Field> CenterBasis<F> {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn elements<'a>(&'a self, g: &'a GradedAlgebra<F>) -> impl Iterator<Item = PiElement<F>> + 'a {
        self.space.rows().iter().map(move |r| g.element(self.degree, r.clone()).expect("kernel vectors fit Π_d"))
    }
}

/// Columns `w ↦ w·g − g·w` for every generator, stacked into one vector
/// per basis element of `Π_d`.
fn commutator_columns<F: Field>(g: &GradedAlgebra<F>, d: usize) -> Result<(usize, Vec<SparseVec<F::Elem>>), PreprojError> {
    let f = g.field();
    let dim = g.dim(d)?;
    let mut cols: Vec<SparseVec<F::Elem>> = vec![Vec::new(); dim];
    let mut offset = 0;
    for (k, (_, gen)) in g.generators().iter().enumerate() {
        let right = g.right_generator_multiplication(k, d)?;
        let left = g.left_multiplication(gen, d)?;
        for w in 0..dim {
            let diff = crate::exactlinalg::axpy(f, &right[w], &f.neg(&f.one()), &left[w]);
            cols[w].extend(diff.into_iter().map(|(c, v)| (offset + c, v)));
        }
        offset += g.dim(d + gen.degree())?;
    }
    Ok((offset, cols))
}

/// `Z_d`: the kernel of the commutator map with `a, b_i, f b_j, b_i e`.
pub fn center_degree<F: Field>(g: &GradedAlgebra<F>, d: usize) -> Result<CenterBasis<F>, PreprojError> {
    g.dim(d + 1)?;
    let (rows, cols) = commutator_columns(g, d)?;
    let m = SparseMat::from_rows(g.field().clone(), rows, cols).expect("well-formed columns").transpose();
    Ok(CenterBasis { degree: d, space: kernel(&m) })
}

/// `dim Z_d` for every `d ≤ max`, computed in parallel.
pub fn center_dims<F: Field>(g: &GradedAlgebra<F>, max: usize) -> Result<Vec<usize>, PreprojError> {
    let degrees: Vec<usize> = (0..=max).collect();
    crate::par::par_map(&degrees, |d| center_degree(g, *d).map(|z| z.dim())).into_iter().collect()
}

/// Whether `x` commutes with all degree-0 and degree-1 generators.
pub fn is_central<F: Field>(g: &GradedAlgebra<F>, x: &PiElement<F>) -> Result<bool, PreprojError> {
    g.dim(x.degree() + 1)?;
    for (_, gen) in g.generators() {
        if !g.commutator(x, &gen)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
