//! Hilbert-series identities of the standard resolution of the simples.

use super::{GradedAlgebra, PreprojError};
use crate::exactfield::Field;

/// Residuals of
///
/// `h_{d−2}(1_RΠ) − h_{d−1}(1_SΠ) + h_d(1_RΠ) − δ_{d0}` and
/// `h_{d−2}(1_SΠ) − n·h_{d−1}(1_RΠ) + h_d(1_SΠ) − n·δ_{d0}`
///
/// for every `d ≤ max`, where `h_d(1_XΠ)` is the dimension of `1_X·Π_d` and
/// `n` the rank of S. Both vanish when the resolution is exact.
pub fn resolution_residuals<F: Field>(g: &GradedAlgebra<F>, max: usize) -> Result<Vec<(i64, i64)>, PreprojError> {
    let n = g.rank_s() as i64;
    let h = |d: i64| -> Result<(i64, i64), PreprojError> {
        if d < 0 {
            return Ok((0, 0));
        }
        let (r, s) = g.split_dims(d as usize)?;
        Ok((r as i64, s as i64))
    };
    (0..=max as i64)
        .map(|d| {
            let (r2, s2) = h(d - 2)?;
            let (r1, s1) = h(d - 1)?;
            let (r0, s0) = h(d)?;
            let delta = i64::from(d == 0);
            Ok((r2 - s1 + r0 - delta, s2 - n * r1 + s0 - n * delta))
        })
        .collect()
}

pub fn resolution_identity_check<F: Field>(g: &GradedAlgebra<F>, max: usize) -> Result<bool, PreprojError> {
    Ok(resolution_residuals(g, max)?.iter().all(|r| *r == (0, 0)))
}
