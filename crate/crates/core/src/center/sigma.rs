//! Degreewise surjectivity of `k[Z_4] ⊗ Π_{≤6} → Π`.

use super::center_degree;
use crate::exactfield::Field;
use crate::exactlinalg::Subspace;
use crate::preproj::{CanonicalWord, Gen, GradedAlgebra, PreprojError, Root};

/// Size of the image against the size of `Π_d`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct SigmaRow {
    pub degree: usize,
    pub image_dim: usize,
    pub pi_dim: usize,
}

impl SigmaRow {
    pub fn pass(&self) -> bool {
        self.image_dim == self.pi_dim
    }
}

/// Every canonical word of degree `d`, whether or not it is a basis word.
pub fn canonical_words(n: usize, d: usize) -> Vec<CanonicalWord> {
    let mut out = Vec::new();
    let roots = std::iter::once(Root::A).chain((0..n).map(Root::B));
    for root in roots {
        let mut partial = vec![(Vec::new(), matches!(root, Root::A))];
        for _ in 0..d {
            partial = partial
                .into_iter()
                .flat_map(|(gens, right_is_r): (Vec<Gen>, bool)| {
                    let next: Vec<Gen> = if right_is_r { (0..n).map(Gen::F).collect() } else { vec![Gen::E] };
                    next.into_iter().map(move |g| {
                        let mut w = gens.clone();
                        w.push(g);
                        (w, !right_is_r)
                    })
                })
                .collect();
        }
        out.extend(partial.into_iter().map(|(gens, _)| CanonicalWord { root, gens }));
    }
    out
}

/// `Im_d` for `d ≤ max`: spanned by the images of all words of
/// `{e,f}`-length `d` when `d ≤ 6`, and by `Z_4 · Im_{d−4}` beyond.
pub fn sigma_surjectivity_check<F: Field>(g: &GradedAlgebra<F>, max: usize) -> Result<Vec<SigmaRow>, PreprojError> {
    g.check_degree(max)?;
    let z4: Vec<_> = center_degree(g, 4)?.elements(g).collect();
    let mut images: Vec<Subspace<F>> = Vec::with_capacity(max + 1);
    let mut rows = Vec::with_capacity(max + 1);
    for d in 0..=max {
        let mut vecs = Vec::new();
        if d <= 6 {
            for w in canonical_words(g.rank_s(), d) {
                vecs.push(g.eval_word(&w)?.coeffs().clone());
            }
        } else {
            for z in &z4 {
                for r in images[d - 4].rows() {
                    vecs.push(g.multiply(z, &g.element(d - 4, r.clone())?)?.coeffs().clone());
                }
            }
        }
        let im = Subspace::span(g.field().clone(), g.dim(d)?, vecs);
        rows.push(SigmaRow { degree: d, image_dim: im.dim(), pi_dim: g.dim(d)? });
        images.push(im);
    }
    Ok(rows)
}
