//! One-parameter deformations between catalog algebras, over ℚ(u).

use num_rational::BigRational;
use num_traits::Zero;

use super::catalog::{catalog, direct_sum, dual_numbers_pair_split, poly_quotient};
use super::{specialize_pair, CommAlgebra, FrobError, FrobeniusPair};
use crate::exactfield::{Field, RatFunc, RationalFunctions, Rationals, UniPoly};

pub const FAMILY_COUNT: u32 = 6;

/// A family `D` over ℚ(u) whose fiber at `u = 0` is `special` and whose
/// generic fiber is `generic`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformationFamily {
    pub number: u32,
    pub char2: bool,
    pub special: &'static str,
    pub generic: &'static str,
    /// The defining polynomial `g(t)` for the `k[t]/(g)` families.
    pub g: Option<Vec<RatFunc>>,
    pub pair: FrobeniusPair<RationalFunctions>,
}

/// Multiply polynomials in t with ℚ(u) coefficients (low degree first).
fn tmul(a: &[RatFunc], b: &[RatFunc]) -> Vec<RatFunc> {
    let mut out = vec![RatFunc::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// `t − c(u)`, with `c` given by its coefficients in u.
fn linear(c: &[i64]) -> Vec<RatFunc> {
    vec![RatFunc::from_poly(UniPoly::from_ints(c)).neg(), RatFunc::one()]
}

fn product(factors: &[Vec<RatFunc>]) -> Vec<RatFunc> {
    factors.iter().skip(1).fold(factors[0].clone(), |acc, f| tmul(&acc, f))
}

fn names(ns: &[&str]) -> Vec<String> {
    ns.iter().map(|s| s.to_string()).collect()
}

fn top_lambda() -> Vec<RatFunc> {
    let f = RationalFunctions;
    vec![f.zero(), f.zero(), f.zero(), f.one()]
}

/// Family `n` (1..6). `char2` selects the alternative presentation of
/// family 6, `t(t−u) ⊕ k ⊕ k`, which stays separable in characteristic 2.
pub fn deformation(n: u32, char2: bool) -> Result<DeformationFamily, FrobError> {
    let f = RationalFunctions;
    let t = linear(&[0]);
    let t_u = linear(&[0, 1]);
    let t_1 = linear(&[1]);
    let (special, generic) = match n {
        1 => ("bikwad", "t4"),
        2 => ("t4", "two-dual-numbers"),
        3 => ("t4", "t3-plus-k"),
        4 => ("two-dual-numbers", "dual-numbers-pair"),
        5 => ("t3-plus-k", "dual-numbers-pair"),
        6 => ("dual-numbers-pair", "split4"),
        other => return Err(FrobError::BadFamily(other)),
    };
    let char2 = char2 && n == 6;
    if n == 1 {
        // R[s,t]/(us − t², s², t⁴) in the basis 1, s, t, st
        let u = RatFunc::u();
        let one = RatFunc::one();
        let mut table = vec![vec![Vec::new(); 4]; 4];
        for k in 0..4 {
            table[0][k] = vec![(k, one.clone())];
            table[k][0] = vec![(k, one.clone())];
        }
        table[1][2] = vec![(3, one.clone())];
        table[2][1] = vec![(3, one)];
        table[2][2] = vec![(1, u)];
        let alg = CommAlgebra::new(f, names(&["1", "s", "t", "st"]), table)?;
        let pair = FrobeniusPair::make(alg, top_lambda())?;
        return Ok(DeformationFamily { number: 1, char2: false, special, generic, g: None, pair });
    }
    if char2 {
        let tt = poly_quotient(&f, &tmul(&t, &t_u), names(&["i1", "t"]))?;
        let line = |nm: &str| CommAlgebra::new(f, vec![nm.to_string()], vec![vec![vec![(0, f.one())]]]);
        let two = direct_sum(&line("i2")?, &line("i3")?, names(&["i2", "i3"]))?;
        let alg = direct_sum(&tt, &two, names(&["i1", "t", "i2", "i3"]))?;
        let lambda = vec![f.zero(), f.one(), f.one(), f.one()];
        let pair = FrobeniusPair::make(alg, lambda)?;
        return Ok(DeformationFamily { number: 6, char2: true, special, generic, g: None, pair });
    }
    let g = match n {
        2 => product(&[t.clone(), t.clone(), t_u.clone(), t_u]),
        3 => product(&[t.clone(), t.clone(), t.clone(), t_u]),
        4 => product(&[t_1.clone(), t_1, t, t_u]),
        5 => product(&[t.clone(), t, t_1, t_u]),
        _ => {
            // (t² − u²)(t² − 1)
            let t2_u2 = tmul(&linear(&[0, 1]), &linear(&[0, -1]));
            tmul(&t2_u2, &tmul(&linear(&[1]), &linear(&[-1])))
        }
    };
    let alg = poly_quotient(&f, &g, names(&["1", "t", "t2", "t3"]))?;
    let pair = FrobeniusPair::make(alg, top_lambda())?;
    Ok(DeformationFamily { number: n, char2: false, special, generic, g: Some(g), pair })
}

impl DeformationFamily {
    /// The fiber at `u = 0`, over ℚ.
    pub fn special_fiber(&self) -> Result<FrobeniusPair<Rationals>, FrobError> {
        specialize_pair(&self.pair, &BigRational::zero())
    }

    /// The catalog presentation the special fiber is compared against.
    pub fn special_target(&self) -> Result<FrobeniusPair<Rationals>, FrobError> {
        if self.char2 {
            dual_numbers_pair_split(&Rationals)
        } else {
            catalog(&Rationals, self.special)?.into_pair(self.special)
        }
    }

    /// Structure constants of the `u = 0` fiber equal those of the catalog
    /// presentation, basis element by basis element.
    pub fn special_fiber_matches(&self) -> Result<bool, FrobError> {
        let fiber = self.special_fiber()?;
        let target = self.special_target()?;
        Ok(fiber.algebra().table() == target.algebra().table())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn family_3_polynomial() {
        let fam = deformation(3, false).unwrap();
        // t³(t − u) = t⁴ − u t³
        let g = fam.g.unwrap();
        assert_eq!(g[4], RatFunc::one());
        assert_eq!(g[3], RatFunc::u().neg());
        assert!(g[..3].iter().all(RatFunc::is_zero));
    }

    #[test]
    fn family_6_polynomial() {
        // (t² − u²)(t² − 1) = t⁴ − (1 + u²) t² + u²
        let g = deformation(6, false).unwrap().g.unwrap();
        let u2 = RatFunc::u().mul(&RatFunc::u());
        assert_eq!(g[0], u2);
        assert_eq!(g[2], u2.add(&RatFunc::one()).neg());
        assert!(g[1].is_zero() && g[3].is_zero());
    }

    #[test]
    fn every_special_fiber_matches() {
        for n in 1..=FAMILY_COUNT {
            let fam = deformation(n, false).unwrap();
            assert_eq!(fam.pair.rank(), 4);
            assert!(fam.special_fiber_matches().unwrap(), "family {n}");
        }
        assert!(deformation(6, true).unwrap().special_fiber_matches().unwrap());
    }

    #[test]
    fn family_3_at_one_splits() {
        // at u = 1, t³(t−1): the idempotent t³ satisfies (t³)² = t⁶ = t³
        let fam = deformation(3, false).unwrap();
        let p = specialize_pair(&fam.pair, &q(1)).unwrap();
        let t3 = vec![q(0), q(0), q(0), q(1)];
        assert_eq!(p.algebra().algebra_mul(&t3, &t3).unwrap(), t3);
        // CRT: ℚ[t]/(t³(t−1)) ≅ ℚ[t]/(t³) ⊕ ℚ, so t·(1 − t³) is nilpotent of order 3
        let n = vec![q(0), q(1), q(0), q(-1)];
        let n2 = p.algebra().algebra_mul(&n, &n).unwrap();
        assert_ne!(n2, vec![q(0); 4]);
        assert_eq!(p.algebra().algebra_mul(&n2, &n).unwrap(), vec![q(0); 4]);
    }

    #[test]
    fn bad_family() {
        assert_eq!(deformation(7, false).unwrap_err(), FrobError::BadFamily(7));
    }
}
