//! Existence of a Frobenius functional: `det Θ(λ)` for a generic `λ`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use num_traits::Zero;
use rand::{Rng, SeedableRng};

use super::CommAlgebra;
use crate::exactfield::{MultiPoly, Rationals};
use crate::exactlinalg::{rank, SparseMat};

/// Largest rank for which the generic determinant is expanded exactly.
const EXACT_MAX_RANK: usize = 6;
const SAMPLES: usize = 50;
const SAMPLE_SEED: u64 = 0x5eed_f20b;

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusVerdict {
    pub is_frobenius: bool,
    /// A functional with invertible Gram matrix, when one was found.
    pub witness: Option<Vec<BigRational>>,
    /// `false` when the verdict rests on random sampling (rank > 6): a
    /// negative answer then only means no sample succeeded.
    pub exact: bool,
    /// `det Θ(λ)` as a polynomial in the coordinates of `λ` (exact path only).
    pub determinant: Option<MultiPoly>,
}

/// Generic Gram matrix: entry `(i, j)` is `Σ_k c_ij^k λ_k`.
fn generic_gram(a: &CommAlgebra<Rationals>) -> Vec<Vec<MultiPoly>> {
    let n = a.rank();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut p = MultiPoly::zero(n);
                    for (k, c) in a.product(i, j) {
                        let mut e = vec![0; n];
                        e[*k] = 1;
                        p.add_term(e, c.clone());
                    }
                    p
                })
                .collect()
        })
        .collect()
}

/// Laplace expansion along rows, memoized over the set of used columns.
fn determinant(m: &[Vec<MultiPoly>], nvars: usize) -> MultiPoly {
    let n = m.len();
    // dp[mask] = det of the last |mask| rows restricted to the columns in mask
    let mut dp: Vec<Option<MultiPoly>> = vec![None; 1 << n];
    dp[0] = Some(MultiPoly::constant(nvars, BigRational::from_integer(1.into())));
    for mask in 1usize..(1 << n) {
        let size = mask.count_ones() as usize;
        let row = n - size;
        let mut acc = MultiPoly::zero(nvars);
        for (pos, col) in (0..n).filter(|c| mask & (1 << c) != 0).enumerate() {
            let entry = &m[row][col];
            if entry.is_zero() {
                continue;
            }
            let minor = dp[mask & !(1 << col)].as_ref().unwrap();
            let term = entry * minor;
            acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        dp[mask] = Some(acc);
    }
    dp.pop().flatten().unwrap()
}

fn gram_at(a: &CommAlgebra<Rationals>, lambda: &[BigRational]) -> SparseMat<Rationals> {
    let n = a.rank();
    let dense: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| a.product(i, j).iter().map(|(k, c)| c * &lambda[*k]).sum()).collect())
        .collect();
    SparseMat::from_dense(Rationals, &dense)
}

/// Small integer vectors in order of increasing max-norm, then lexicographic.
fn small_points(n: usize, bound: i64) -> impl Iterator<Item = Vec<BigRational>> {
    (1..=bound).flat_map(move |b| {
        let width = (2 * b + 1) as u64;
        (0..width.pow(n as u32)).filter_map(move |mut code| {
            let mut v = Vec::with_capacity(n);
            for _ in 0..n {
                v.push((code % width) as i64 - b);
                code /= width;
            }
            v.iter().any(|x| x.abs() == b).then(|| v.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
        })
    })
}

/// Decide whether some `λ` has an invertible Gram matrix.
pub fn is_frobenius(a: &CommAlgebra<Rationals>) -> FrobeniusVerdict {
    let n = a.rank();
    if n <= EXACT_MAX_RANK {
        let det = determinant(&generic_gram(a), n);
        if det.is_zero() {
            return FrobeniusVerdict { is_frobenius: false, witness: None, exact: true, determinant: Some(det) };
        }
        // a nonzero polynomial of degree n has a non-root in {−n..n}^n
        let witness = small_points(n, n as i64).find(|p| !det.eval(p).is_zero());
        debug_assert!(witness.is_some());
        return FrobeniusVerdict { is_frobenius: true, witness, exact: true, determinant: Some(det) };
    }
    let mut rng = StdRng::seed_from_u64(SAMPLE_SEED);
    let witness = (0..SAMPLES)
        .map(|_| (0..n).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-10i64..=10)))).collect::<Vec<_>>())
        .find(|l| rank(&gram_at(a, l)) == n);
    FrobeniusVerdict { is_frobenius: witness.is_some(), witness, exact: false, determinant: None }
}
