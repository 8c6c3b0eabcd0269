//! Standard presentations of the rank-4 commutative Frobenius algebras and
//! of the four non-Frobenius rank-4 algebras used as negative controls.

use super::{CommAlgebra, FrobError, FrobeniusPair};
use crate::exactfield::Field;
use crate::exactlinalg::SparseVec;

pub const CATALOG_NAMES: [&str; 6] = ["split4", "dual-numbers-pair", "two-dual-numbers", "t3-plus-k", "t4", "bikwad"];

pub const REJECT_NAMES: [&str; 4] = ["reject-sq-plus-k", "reject-s2-st-t3", "reject-max-sq-3", "reject-s2t2-st"];

#[derive(Debug, Clone, PartialEq)]
pub enum CatalogEntry<F: Field> {
    Pair(FrobeniusPair<F>),
    Reject(CommAlgebra<F>),
}

impl<F: Field> CatalogEntry<F> {
    pub fn algebra(&self) -> &CommAlgebra<F> {
        match self {
            CatalogEntry::Pair(p) => p.algebra(),
            CatalogEntry::Reject(a) => a,
        }
    }

    pub fn into_pair(self, name: &str) -> Result<FrobeniusPair<F>, FrobError> {
        match self {
            CatalogEntry::Pair(p) => Ok(p),
            CatalogEntry::Reject(_) => Err(FrobError::RejectHasNoPair(name.to_string())),
        }
    }
}

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

/// Table from integer products `b_i·b_j = Σ c·b_k`.
fn int_table<F: Field>(f: &F, n: usize, prod: impl Fn(usize, usize) -> Vec<(usize, i64)>) -> Vec<Vec<SparseVec<F::Elem>>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut v: SparseVec<F::Elem> =
                        prod(i, j).into_iter().map(|(k, c)| (k, f.from_int(c))).filter(|(_, c)| !f.is_zero(c)).collect();
                    v.sort_by_key(|(k, _)| *k);
                    v
                })
                .collect()
        })
        .collect()
}

/// Monomial algebra with basis exponent vectors; products outside the
/// basis vanish.
fn monomial_algebra<F: Field>(f: &F, ns: &[&str], exps: &[&[u32]]) -> Result<CommAlgebra<F>, FrobError> {
    let table = int_table(f, exps.len(), |i, j| {
        let e: Vec<u32> = exps[i].iter().zip(exps[j]).map(|(a, b)| a + b).collect();
        exps.iter().position(|x| *x == e.as_slice()).map(|k| vec![(k, 1)]).unwrap_or_default()
    });
    CommAlgebra::new(f.clone(), names(ns), table)
}

/// `k[t]/(g)` for monic `g` (coefficients low degree first, leading 1
/// included) in the monomial basis `1, t, …, t^{n−1}`.
pub fn poly_quotient<F: Field>(f: &F, g: &[F::Elem], ns: Vec<String>) -> Result<CommAlgebra<F>, FrobError> {
    let n = g.len() - 1;
    if n == 0 || !f.is_one(&g[n]) || ns.len() != n {
        return Err(FrobError::MalformedTable("g must be monic of degree = rank".into()));
    }
    // powers t^0 .. t^{2n−2} as dense vectors
    let mut powers: Vec<Vec<F::Elem>> = Vec::new();
    for m in 0..=(2 * n - 2) {
        if m < n {
            let mut v = vec![f.zero(); n];
            v[m] = f.one();
            powers.push(v);
        } else {
            let prev = &powers[m - 1];
            let top = prev[n - 1].clone();
            let mut v = vec![f.zero(); n];
            for k in 1..n {
                v[k] = prev[k - 1].clone();
            }
            for (k, vk) in v.iter_mut().enumerate() {
                *vk = f.sub(vk, &f.mul(&top, &g[k]));
            }
            powers.push(v);
        }
    }
    let table = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    powers[i + j].iter().enumerate().filter(|(_, c)| !f.is_zero(c)).map(|(k, c)| (k, c.clone())).collect()
                })
                .collect()
        })
        .collect();
    CommAlgebra::new(f.clone(), ns, table)
}

/// Direct product of two algebras; basis is the concatenation.
pub fn direct_sum<F: Field>(a: &CommAlgebra<F>, b: &CommAlgebra<F>, ns: Vec<String>) -> Result<CommAlgebra<F>, FrobError> {
    let (n, m) = (a.rank(), b.rank());
    let mut table = vec![vec![Vec::new(); n + m]; n + m];
    for i in 0..n {
        for j in 0..n {
            table[i][j] = a.product(i, j).clone();
        }
    }
    for i in 0..m {
        for j in 0..m {
            table[n + i][n + j] = b.product(i, j).iter().map(|(k, c)| (n + k, c.clone())).collect();
        }
    }
    CommAlgebra::new(a.field().clone(), ns, table)
}

fn field_line<F: Field>(f: &F, name: &str) -> Result<CommAlgebra<F>, FrobError> {
    CommAlgebra::new(f.clone(), vec![name.to_string()], vec![vec![vec![(0, f.one())]]])
}

fn monic_from_ints<F: Field>(f: &F, coeffs: &[i64]) -> Vec<F::Elem> {
    coeffs.iter().map(|&c| f.from_int(c)).collect()
}

fn int_vec<F: Field>(f: &F, v: &[i64]) -> Vec<F::Elem> {
    v.iter().map(|&c| f.from_int(c)).collect()
}

const MONOMIAL_NAMES: [&str; 4] = ["1", "t", "t2", "t3"];

/// `k[t]/(t²) ⊕ k ⊕ k` presented as a direct sum, basis `i1, t, i2, i3`
/// with `λ = (0, 1, 1, 1)`. This is the presentation used in characteristic 2,
/// where `t²(t²−1)` has a repeated factor.
pub fn dual_numbers_pair_split<F: Field>(f: &F) -> Result<FrobeniusPair<F>, FrobError> {
    let dual = poly_quotient(f, &monic_from_ints(f, &[0, 0, 1]), names(&["i1", "t"]))?;
    let two = direct_sum(&field_line(f, "i2")?, &field_line(f, "i3")?, names(&["i2", "i3"]))?;
    let alg = direct_sum(&dual, &two, names(&["i1", "t", "i2", "i3"]))?;
    FrobeniusPair::make(alg, int_vec(f, &[0, 1, 1, 1]))
}

/// Look up a catalog algebra by name over `f`.
///
/// The `k[t]/(g)` algebras use the monomial basis and the top-coefficient
/// functional; `split4` uses orthogonal idempotents with `λ` the coordinate
/// sum; `bikwad` uses `1, s, t, st` with `λ` the `st`-coefficient.
pub fn catalog<F: Field>(f: &F, name: &str) -> Result<CatalogEntry<F>, FrobError> {
    let top = || int_vec(f, &[0, 0, 0, 1]);
    let quotient = |g: &[i64]| -> Result<CatalogEntry<F>, FrobError> {
        let alg = poly_quotient(f, &monic_from_ints(f, g), names(&MONOMIAL_NAMES))?;
        Ok(CatalogEntry::Pair(FrobeniusPair::make(alg, top())?))
    };
    match name {
        "split4" => {
            let table = int_table(f, 4, |i, j| if i == j { vec![(i, 1)] } else { vec![] });
            let alg = CommAlgebra::new(f.clone(), names(&["p1", "p2", "p3", "p4"]), table)?;
            Ok(CatalogEntry::Pair(FrobeniusPair::make(alg, int_vec(f, &[1, 1, 1, 1]))?))
        }
        "dual-numbers-pair" if f.characteristic() == 2 => Ok(CatalogEntry::Pair(dual_numbers_pair_split(f)?)),
        // t²(t²−1) = t⁴ − t²
        "dual-numbers-pair" => quotient(&[0, 0, -1, 0, 1]),
        // t²(t−1)² = t⁴ − 2t³ + t²
        "two-dual-numbers" => quotient(&[0, 0, 1, -2, 1]),
        // t³(t−1) = t⁴ − t³
        "t3-plus-k" => quotient(&[0, 0, 0, -1, 1]),
        "t4" => quotient(&[0, 0, 0, 0, 1]),
        "bikwad" => {
            let alg = monomial_algebra(f, &["1", "s", "t", "st"], &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])?;
            Ok(CatalogEntry::Pair(FrobeniusPair::make(alg, top())?))
        }
        "reject-sq-plus-k" => {
            let local = monomial_algebra(f, &["i1", "s", "t"], &[&[0, 0], &[1, 0], &[0, 1]])?;
            let alg = direct_sum(&local, &field_line(f, "i2")?, names(&["i1", "s", "t", "i2"]))?;
            Ok(CatalogEntry::Reject(alg))
        }
        "reject-s2-st-t3" => Ok(CatalogEntry::Reject(monomial_algebra(
            f,
            &["1", "s", "t", "t2"],
            &[&[0, 0], &[1, 0], &[0, 1], &[0, 2]],
        )?)),
        "reject-max-sq-3" => Ok(CatalogEntry::Reject(monomial_algebra(
            f,
            &["1", "s", "t", "w"],
            &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]],
        )?)),
        // k[s,t]/(s²+t², st): basis 1, s, t, s2 with t² = −s2
        "reject-s2t2-st" => {
            let table = int_table(f, 4, |i, j| match (i.min(j), i.max(j)) {
                (0, k) => vec![(k, 1)],
                (1, 1) => vec![(3, 1)],
                (2, 2) => vec![(3, -1)],
                _ => vec![],
            });
            Ok(CatalogEntry::Reject(CommAlgebra::new(f.clone(), names(&["1", "s", "t", "s2"]), table)?))
        }
        other => Err(FrobError::UnknownName(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::{PrimeField, Rationals};

    #[test]
    fn every_entry_builds_over_small_fields() {
        for p in [2u64, 3, 5, 7] {
            let f = PrimeField::new(p).unwrap();
            for name in CATALOG_NAMES {
                let CatalogEntry::Pair(pair) = catalog(&f, name).unwrap() else { panic!("{name}") };
                assert!(pair.duality_holds(), "{name} over F_{p}");
                assert_eq!(pair.rank(), 4);
            }
            for name in REJECT_NAMES {
                assert!(matches!(catalog(&f, name).unwrap(), CatalogEntry::Reject(_)));
            }
        }
    }

    #[test]
    fn gram_symmetric_and_dual() {
        for name in CATALOG_NAMES {
            let p = catalog(&Rationals, name).unwrap().into_pair(name).unwrap();
            let g = p.gram();
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(g[i][j], g[j][i]);
                }
            }
            assert!(p.duality_holds());
        }
    }

    #[test]
    fn split4_idempotents() {
        let p = catalog(&Rationals, "split4").unwrap().into_pair("split4").unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect: SparseVec<_> = if i == j { vec![(i, Rationals.one())] } else { vec![] };
                assert_eq!(p.algebra().product(i, j), &expect);
            }
        }
    }

    #[test]
    fn t4_basis_and_products() {
        let p = catalog(&Rationals, "t4").unwrap().into_pair("t4").unwrap();
        assert_eq!(p.algebra().names(), &names(&MONOMIAL_NAMES)[..]);
        assert_eq!(p.algebra().product(1, 2), &vec![(3, Rationals.one())]);
        assert!(p.algebra().product(2, 2).is_empty());
    }

    #[test]
    fn unknown_name() {
        assert_eq!(catalog(&Rationals, "nope").unwrap_err(), FrobError::UnknownName("nope".into()));
    }
}
