//! Center ranks on the two fibers of a deformation family.

use super::center_degree;
use crate::frobalg::deformation;
use crate::preproj::{GradedAlgebra, PreprojError};

/// Dimensions of `Π_d` and `Z_d` over the fiber `u = 0` (over ℚ) and the
/// generic fiber (over ℚ(u)).
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DeformationRow {
    pub degree: usize,
    pub pi_special: usize,
    pub pi_generic: usize,
    pub center_special: usize,
    pub center_generic: usize,
}

impl DeformationRow {
    /// Upper semicontinuity: the special fiber is never smaller.
    pub fn semicontinuous(&self) -> bool {
        self.pi_special >= self.pi_generic && self.center_special >= self.center_generic
    }

    pub fn equal(&self) -> bool {
        self.pi_special == self.pi_generic && self.center_special == self.center_generic
    }
}

pub fn center_deformation_compare(family: u32, char2: bool, max: usize) -> Result<Vec<DeformationRow>, PreprojError> {
    let fam = deformation(family, char2)?;
    let special = GradedAlgebra::build(&fam.special_fiber()?, max + 1);
    let generic = GradedAlgebra::build(&fam.pair, max + 1);
    (0..=max)
        .map(|d| {
            Ok(DeformationRow {
                degree: d,
                pi_special: special.dim(d)?,
                pi_generic: generic.dim(d)?,
                center_special: center_degree(&special, d)?.dim(),
                center_generic: center_degree(&generic, d)?.dim(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_one_and_six() {
        let rows = center_deformation_compare(1, false, 4).unwrap();
        assert_eq!((rows[4].center_special, rows[4].center_generic), (2, 2));
        assert_eq!((rows[3].center_special, rows[3].center_generic), (0, 0));
        assert!(rows.iter().all(|r| r.semicontinuous() && r.equal()));
        let rows = center_deformation_compare(6, false, 6).unwrap();
        assert_eq!((rows[6].center_special, rows[6].center_generic), (1, 1));
    }
}
