//! Explicit normalizing and central elements of the `k[s,t]/(s²,t²)` pair,
//! and the sign automorphisms they are normalizing for.

use std::collections::HashMap;

use super::center_degree;
use crate::exactfield::Field;
use crate::exactlinalg::Subspace;
use crate::preproj::{GradedAlgebra, PiElement, PreprojError};

/// `u, v` (degree 2), `A, B` (degree 4) and `C` (degree 6).
#[derive(Debug, Clone)]
pub struct BikwadElements<F: Field> {
    pub u: PiElement<F>,
    pub v: PiElement<F>,
    pub a: PiElement<F>,
    pub b: PiElement<F>,
    pub c: PiElement<F>,
}

/// Requires S-basis letters `s` and `t` and a build degree of at least 6.
pub fn bikwad_elements<F: Field>(g: &GradedAlgebra<F>) -> Result<BikwadElements<F>, PreprojError> {
    let alg = g.pair().algebra();
    if alg.index_of("s").is_none() || alg.index_of("t").is_none() {
        return Err(PreprojError::Unsupported("needs S-basis letters s and t".into()));
    }
    let p = |s: &str| g.parse_element(s);
    Ok(BikwadElements {
        u: p("sef + efs + fse")?,
        v: p("tef + eft + fte")?,
        a: p("sefsef + efsefs + fsefse")?,
        b: p("teftef + efteft + ftefte")?,
        c: p("sefsteftef + efsefsteft + fsefstefte")?,
    })
}

/// The S-automorphism negating the basis letter `letter` and fixing every
/// other indecomposable basis element, as a mask of negated S-basis
/// elements. It must be an algebra automorphism with `λ∘σ = ±λ`.
pub fn sign_automorphism<F: Field>(g: &GradedAlgebra<F>, letter: &str) -> Result<Vec<bool>, PreprojError> {
    let unsupported = |why: &str| PreprojError::Unsupported(format!("sign automorphism for {letter}: {why}"));
    let alg = g.pair().algebra();
    let f = g.field();
    let n = alg.rank();
    let target = alg.index_of(letter).ok_or_else(|| PreprojError::UnknownLetter(letter.to_string()))?;
    let unit = alg.unit();
    let unit_idx = (0..n)
        .find(|&i| unit.iter().enumerate().all(|(j, c)| if j == i { f.is_one(c) } else { f.is_zero(c) }))
        .ok_or_else(|| unsupported("unit is not a basis element"))?;
    if target == unit_idx {
        return Err(unsupported("cannot negate the unit"));
    }
    let hit = |i: usize, j: usize, k: usize| alg.product(i, j).iter().any(|(c, v)| *c == k && !f.is_zero(v));
    let mut sign: Vec<Option<bool>> = vec![None; n];
    sign[unit_idx] = Some(false);
    for k in (0..n).filter(|&k| k != unit_idx) {
        let decomposable = (0..n).any(|i| i != unit_idx && (0..n).any(|j| j != unit_idx && hit(i, j, k)));
        if !decomposable {
            sign[k] = Some(k == target);
        }
    }
    if sign[target] != Some(true) {
        return Err(unsupported("letter is not indecomposable"));
    }
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if let (Some(x), Some(y)) = (sign[i], sign[j]) {
                    for (k, v) in alg.product(i, j) {
                        if !f.is_zero(v) && sign[*k].is_none() {
                            sign[*k] = Some(x ^ y);
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let sign: Vec<bool> = sign.into_iter().collect::<Option<_>>().ok_or_else(|| unsupported("signs not determined"))?;
    for i in 0..n {
        for j in 0..n {
            if alg.product(i, j).iter().any(|(k, v)| !f.is_zero(v) && sign[*k] != sign[i] ^ sign[j]) {
                return Err(unsupported("not an algebra automorphism"));
            }
        }
    }
    let lam = g.pair().lambda();
    let mut support = (0..n).filter(|&k| !f.is_zero(&lam[k])).map(|k| sign[k]);
    let first = support.next();
    if support.any(|s| Some(s) != first) {
        return Err(unsupported("λ∘σ ≠ ±λ"));
    }
    Ok(sign)
}

/// `σ(x)` for the sign automorphism with the given negation mask.
pub fn apply_sign<F: Field>(g: &GradedAlgebra<F>, negate: &[bool], x: &PiElement<F>) -> Result<PiElement<F>, PreprojError> {
    let signs = g.basis_signs(negate);
    let f = g.field();
    let row = signs.get(x.degree()).ok_or(PreprojError::DegreeOutOfRange { degree: x.degree(), max: g.max_degree() })?;
    let coeffs = x.coeffs().iter().map(|(i, c)| (*i, if row[*i] { f.neg(c) } else { c.clone() })).collect();
    g.element(x.degree(), coeffs)
}

/// Whether `x·g = σ(g)·x` for all 13 generators `g`, where `σ` negates
/// `sign_letter`.
pub fn normalizing_check<F: Field>(g: &GradedAlgebra<F>, x: &PiElement<F>, sign_letter: &str) -> Result<bool, PreprojError> {
    let negate = sign_automorphism(g, sign_letter)?;
    g.check_degree(x.degree() + 1)?;
    for (_, gen) in g.generators() {
        let lhs = g.multiply(x, &gen)?;
        let rhs = g.multiply(&apply_sign(g, &negate, &gen)?, x)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One degree of the `ζ`-subalgebra comparison.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ZetaRow {
    pub degree: usize,
    pub monomials: Vec<String>,
    pub span_dim: usize,
    pub center_dim: usize,
    pub contained: bool,
}

impl ZetaRow {
    pub fn pass(&self) -> bool {
        self.contained && self.span_dim == self.center_dim
    }
}

/// `C·C = 0`, and for each `d ≤ max` the monomials `A^i B^j C^ε` span
/// exactly `Z_d`. Needs a build degree of at least `max(12, max + 1)`.
pub fn zeta_dimension_check<F: Field>(g: &GradedAlgebra<F>, max: usize) -> Result<(bool, Vec<ZetaRow>), PreprojError> {
    g.check_degree(12.max(max + 1))?;
    let el = bikwad_elements(g)?;
    let c_squared_zero = g.multiply(&el.c, &el.c)?.is_zero();
    let mut powers: HashMap<(usize, usize), PiElement<F>> = HashMap::new();
    let mut ab = |i: usize, j: usize| -> Result<PiElement<F>, PreprojError> {
        if let Some(x) = powers.get(&(i, j)) {
            return Ok(x.clone());
        }
        let mut x = g.add(&g.idem_r(), &g.idem_s())?;
        for _ in 0..i {
            x = g.multiply(&x, &el.a)?;
        }
        for _ in 0..j {
            x = g.multiply(&x, &el.b)?;
        }
        powers.insert((i, j), x.clone());
        Ok(x)
    };
    let mut rows = Vec::new();
    for d in 0..=max {
        let mut names = Vec::new();
        let mut vecs = Vec::new();
        for eps in 0..=1usize {
            let rest = match d.checked_sub(6 * eps) {
                Some(r) if r % 4 == 0 => r / 4,
                _ => continue,
            };
            for i in (0..=rest).rev() {
                let j = rest - i;
                let mut m = ab(i, j)?;
                if eps == 1 {
                    m = g.multiply(&m, &el.c)?;
                }
                names.push(monomial_name(i, j, eps));
                vecs.push(m.coeffs().clone());
            }
        }
        let span = Subspace::span(g.field().clone(), g.dim(d)?, vecs);
        let z = center_degree(g, d)?;
        rows.push(ZetaRow {
            degree: d,
            monomials: names,
            span_dim: span.dim(),
            center_dim: z.dim(),
            contained: span.rows().iter().all(|r| z.space.contains(r)),
        });
    }
    Ok((c_squared_zero, rows))
}

fn monomial_name(i: usize, j: usize, eps: usize) -> String {
    let pow = |x: &str, k: usize| match k {
        0 => String::new(),
        1 => x.to_string(),
        k => format!("{x}^{k}"),
    };
    let s = [pow("A", i), pow("B", j), pow("C", eps)].concat();
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// `(dim span{u·x, v·x : x ∈ Π_1}, dim Π_3)`.
pub fn mu3_check<F: Field>(g: &GradedAlgebra<F>) -> Result<(usize, usize), PreprojError> {
    g.check_degree(6)?;
    let el = bikwad_elements(g)?;
    let mut vecs = g.left_multiplication(&el.u, 1)?;
    vecs.extend(g.left_multiplication(&el.v, 1)?);
    let span = Subspace::span(g.field().clone(), g.dim(3)?, vecs);
    Ok((span.dim(), g.dim(3)?))
}
