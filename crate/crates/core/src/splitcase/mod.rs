//! The split case `S = k^n`: star-quiver Hilbert series and the binary
//! dihedral invariants of `k[x, y]`, both independent of the engine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::center::center_degree;
use crate::exactfield::{MultiPoly, Rationals};
use crate::exactlinalg::{rank, series_inverse, SparseMat, TruncSeriesMat};
use crate::preproj::{GradedAlgebra, PreprojError};

/// The doubled star quiver with one central vertex (index 0) and `n` arms.
#[derive(Debug, Clone, PartialEq)]
pub struct StarQuiver {
    n: usize,
    adjacency: SparseMat<Rationals>,
}

impl StarQuiver {
    pub fn new(n: usize) -> Self {
        let mut rows = vec![Vec::new(); n + 1];
        rows[0] = (1..=n).map(|i| (i, BigRational::one())).collect();
        for row in rows.iter_mut().skip(1) {
            row.push((0, BigRational::one()));
        }
        let adjacency = SparseMat::from_rows(Rationals, n + 1, rows).expect("star adjacency");
        StarQuiver { n, adjacency }
    }

    pub fn arms(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &SparseMat<Rationals> {
        &self.adjacency
    }
}

/// `W_0..W_max` of `W(t) = (1 − tC + t²)^{-1}` for the star with `n` arms.
pub fn quiver_hilbert(n: usize, max: usize) -> TruncSeriesMat {
    series_inverse(StarQuiver::new(n).adjacency(), max).expect("adjacency is square")
}

fn to_usize(q: &BigRational) -> usize {
    assert!(q.is_integer(), "series coefficients are integers");
    q.to_integer().to_usize().expect("nonnegative")
}

/// Total coefficients `Σ_{ij} (W_d)_{ij}`.
pub fn quiver_totals(n: usize, max: usize) -> Vec<usize> {
    let w = quiver_hilbert(n, max);
    (0..=max).map(|d| to_usize(&w.total(d))).collect()
}

/// Exponent pairs `(m, n)` of a monomial orbit with `m ≥ n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub m: u32,
    pub n: u32,
}

/// The binary dihedral invariants of one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantSlice {
    pub degree: u32,
    pub orbits: Vec<Orbit>,
}

/// Whether `x^m y^n` carries the phase of the invariants under the
/// diagonal generator (`ξ^{m+3n} = 1`).
fn phase_ok(m: u32, n: u32) -> bool {
    (m + 3 * n).is_multiple_of(4)
}

/// The symmetrization `x^m y^n + (−1)^m x^n y^m`, forced by
/// `c_{n,m} = (−1)^m c_{m,n}`, or `None` when the conditions force zero.
pub fn symmetrize(m: u32, n: u32) -> Option<MultiPoly> {
    if !(phase_ok(m, n) && phase_ok(n, m)) {
        return None;
    }
    // applying the swap condition twice gives c = (−1)^{m+n} c
    if (m + n) % 2 == 1 {
        return None;
    }
    let one = BigRational::one();
    if m == n {
        return m.is_multiple_of(2).then(|| MultiPoly::monomial(vec![m, n], one));
    }
    let sign = if m.is_multiple_of(2) { one.clone() } else { -one.clone() };
    let mut p = MultiPoly::monomial(vec![m, n], one);
    p.add_term(vec![n, m], sign);
    Some(p)
}

pub fn invariant_slice(d: u32) -> InvariantSlice {
    let orbits = (0..=d / 2).map(|n| Orbit { m: d - n, n }).filter(|o| symmetrize(o.m, o.n).is_some()).collect();
    InvariantSlice { degree: d, orbits }
}

pub fn invariant_dims(max: u32) -> Vec<usize> {
    (0..=max).map(|d| invariant_slice(d).orbits.len()).collect()
}

/// Whether `P` satisfies both coefficient conditions.
pub fn is_invariant(p: &MultiPoly) -> bool {
    p.terms().all(|(e, c)| {
        let (m, n) = (e[0], e[1]);
        let swapped = p.coeff(&[n, m]);
        let sign = if m % 2 == 0 { c.clone() } else { -c.clone() };
        phase_ok(m, n) && swapped == sign
    })
}

/// `A = x⁴ + y⁴`, `B = x²y²`, `C = x⁵y − xy⁵`.
pub fn invariant_generators() -> [MultiPoly; 3] {
    let mono = |m, n, c: i64| MultiPoly::monomial(vec![m, n], BigRational::from_integer(BigInt::from(c)));
    [&mono(4, 0, 1) + &mono(0, 4, 1), mono(2, 2, 1), &mono(5, 1, 1) - &mono(1, 5, 1)]
}

/// `C² − B(A² − 4B²)`; zero as a polynomial.
pub fn invariant_relation() -> MultiPoly {
    let [a, b, c] = invariant_generators();
    let four = MultiPoly::constant(2, BigRational::from_integer(BigInt::from(4)));
    let inner = &(&a * &a) - &(&four * &(&b * &b));
    &(&c * &c) - &(&b * &inner)
}

pub fn invariant_relation_check() -> bool {
    invariant_relation().is_zero()
}

/// Number of monomials `AⁱBʲCᵏ` of degree `d` and the rank of their
/// expansions in `k[x, y]`. Equal iff there is no relation in degree `d`.
pub fn generator_monomial_rank(d: u32) -> (usize, usize) {
    let [a, b, c] = invariant_generators();
    let mut polys = Vec::new();
    for k in 0..=d / 6 {
        let rest = d - 6 * k;
        if !rest.is_multiple_of(4) {
            continue;
        }
        for i in 0..=rest / 4 {
            let j = rest / 4 - i;
            polys.push(&(&a.pow(i) * &b.pow(j)) * &c.pow(k));
        }
    }
    let rows = polys
        .iter()
        .map(|p| {
            let mut row: Vec<(usize, BigRational)> = p.terms().map(|(e, c)| (e[1] as usize, c.clone())).collect();
            row.sort_by_key(|(i, _)| *i);
            row
        })
        .collect();
    let m = SparseMat::from_rows(Rationals, d as usize + 1, rows).expect("monomials of degree d");
    (polys.len(), rank(&m))
}

/// One line of the split-case comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitRow {
    pub degree: usize,
    pub quiver_total: usize,
    pub engine_dim: usize,
    pub quiver_r_part: usize,
    pub engine_r_part: usize,
    pub invariant_dim: usize,
    pub center_dim: Option<usize>,
}

impl SplitRow {
    pub fn quiver_matches(&self) -> bool {
        self.quiver_total == self.engine_dim && self.quiver_r_part == self.engine_r_part
    }

    pub fn invariants_match(&self) -> bool {
        self.center_dim.is_none_or(|z| z == self.invariant_dim)
    }

    pub fn pass(&self) -> bool {
        self.quiver_matches() && self.invariants_match()
    }
}

/// Compare quiver series, invariant counts and engine data of a built
/// split pair (`S = k⁴`) for `d ≤ max`. Center dims are filled in where
/// the build degree allows (`d + 1 ≤ D`).
pub fn split_comparison(g: &GradedAlgebra<Rationals>, max: usize) -> Result<Vec<SplitRow>, PreprojError> {
    g.check_degree(max)?;
    let w = quiver_hilbert(g.rank_s(), max);
    let inv = invariant_dims(max as u32);
    (0..=max)
        .map(|d| {
            Ok(SplitRow {
                degree: d,
                quiver_total: to_usize(&w.total(d)),
                engine_dim: g.dim(d)?,
                quiver_r_part: to_usize(&w.column_sum(d, 0)),
                engine_r_part: g.split_dims(d)?.0,
                invariant_dim: inv[d],
                center_dim: if d < g.max_degree() { Some(center_degree(g, d)?.dim()) } else { None },
            })
        })
        .collect()
}

/// Quiver totals and `1_R`-parts against the engine, `d ≤ max`.
pub fn quiver_vs_engine(g: &GradedAlgebra<Rationals>, max: usize) -> Result<bool, PreprojError> {
    Ok(split_comparison(g, max)?.iter().all(SplitRow::quiver_matches))
}

/// Invariant counts against `dim Z_d`, `d ≤ max` (needs `max + 1 ≤ D`).
pub fn cross_check_center(g: &GradedAlgebra<Rationals>, max: usize) -> Result<bool, PreprojError> {
    g.check_degree(max + 1)?;
    Ok(split_comparison(g, max)?.iter().all(SplitRow::invariants_match))
}

pub fn split_csv(rows: &[SplitRow]) -> String {
    let mut out = String::from("degree,quiver_total,engine_dim,invariant_dim,center_dim\n");
    for r in rows {
        let z = r.center_dim.map(|z| z.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{},{}\n", r.degree, r.quiver_total, r.engine_dim, r.invariant_dim, z));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::UniPoly;
    use crate::frobalg::catalog;

    /// Coefficients of `(5 + 8t + 5t²)/(1 − t²)²` by long division.
    fn closed_form(max: usize) -> Vec<usize> {
        let num = UniPoly::from_ints(&[5, 8, 5]);
        let den = UniPoly::from_ints(&[1, 0, -2, 0, 1]);
        let mut rem: Vec<BigRational> = (0..=max).map(|i| num.coeff(i)).collect();
        let mut out = Vec::new();
        for d in 0..=max {
            let q = rem[d].clone();
            for k in 0..=4 {
                if d + k <= max {
                    rem[d + k] -= &q * den.coeff(k);
                }
            }
            out.push(to_usize(&q));
        }
        out
    }

    #[test]
    fn star_shape() {
        let q = StarQuiver::new(4);
        let a = q.adjacency();
        assert_eq!(a.transpose(), *a);
        assert_eq!(a.rows()[0].len(), 4);
        assert!(a.rows()[1..].iter().all(|r| r.len() == 1 && r[0].0 == 0));
    }

    #[test]
    fn totals_match_closed_form() {
        let t = quiver_totals(4, 24);
        assert_eq!(&t[..5], &[5, 8, 15, 16, 25]);
        assert_eq!(t, closed_form(24));
        for (d, x) in t.iter().enumerate() {
            assert_eq!(*x, if d % 2 == 0 { 5 * (d + 1) } else { 4 * (d + 1) });
        }
        let w = quiver_hilbert(4, 24);
        for d in 0..=24 {
            let m = w.term(d);
            assert!((0..5).all(|i| (0..5).all(|j| m[i][j] == m[j][i])));
            if d % 2 == 0 {
                assert_eq!(to_usize(&w.column_sum(d, 0)), d + 1);
            }
        }
        assert_eq!(w.term(0), quiver_hilbert(4, 0).term(0));
    }

    #[test]
    fn invariant_counts() {
        let dims = invariant_dims(24);
        assert_eq!(&dims[..13], &[1, 0, 0, 0, 2, 0, 1, 0, 3, 0, 2, 0, 4]);
        for (d, x) in dims.iter().enumerate() {
            assert_eq!(*x, crate::center::expected_center_dim(d));
        }
        assert_eq!(invariant_slice(4).orbits, vec![Orbit { m: 4, n: 0 }, Orbit { m: 2, n: 2 }]);
        assert_eq!(invariant_slice(6).orbits, vec![Orbit { m: 5, n: 1 }]);
    }

    #[test]
    fn generators_and_relation() {
        assert!(invariant_relation_check());
        for p in invariant_generators() {
            assert!(is_invariant(&p));
        }
        let xy = MultiPoly::monomial(vec![1, 1], BigRational::one());
        assert!(!is_invariant(&xy));
        assert!(symmetrize(1, 1).is_none());
        for d in 0..=10 {
            let (count, r) = generator_monomial_rank(d);
            assert_eq!(count, r, "degree {d}");
            assert_eq!(r, invariant_dims(10)[d as usize]);
        }
        assert_eq!(generator_monomial_rank(12), (5, 4));
    }

    #[test]
    fn split4_against_engine() {
        let p = catalog(&Rationals, "split4").unwrap().into_pair("split4").unwrap();
        let g = GradedAlgebra::build(&p, 11);
        let rows = split_comparison(&g, 10).unwrap();
        assert!(rows.iter().all(SplitRow::pass), "{rows:?}");
        assert_eq!((rows[2].quiver_total, rows[2].engine_dim, rows[2].engine_r_part), (15, 15, 3));
        assert_eq!(rows[5].engine_dim, 24);
        assert!(cross_check_center(&g, 10).unwrap());
        assert!(split_csv(&rows).starts_with("degree,quiver_total,engine_dim,invariant_dim,center_dim\n0,5,5,1,1\n"));
    }
}
