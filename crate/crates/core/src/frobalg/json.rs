//! The JSON algebra format and a field-erased pair for runtime dispatch.

use serde::{Deserialize, Serialize};

use super::{catalog, CommAlgebra, FrobError, FrobeniusPair};
use crate::exactfield::{Field, FieldDescriptor, PrimeField, Rationals, RationalFunctions, Scalar};

/// On-disk algebra description. `constants` lists, for every pair
/// `i ≤ j` in row-major order, the nonzero coordinates `[k, "c"]` of
/// `b_i·b_j`; indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub field: String,
    pub basis: Vec<String>,
    pub constants: Vec<Vec<(usize, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<String>>,
}

impl AlgebraFile {
    pub fn from_algebra<F: Field>(a: &CommAlgebra<F>, lambda: Option<&[F::Elem]>) -> Self {
        let f = a.field();
        let n = a.rank();
        let mut constants = Vec::with_capacity(n * (n + 1) / 2);
        for i in 0..n {
            for j in i..n {
                constants.push(a.product(i, j).iter().map(|(k, c)| (*k, f.format(c))).collect());
            }
        }
        AlgebraFile {
            field: f.descriptor().to_string(),
            basis: a.names().to_vec(),
            constants,
            lambda: lambda.map(|l| l.iter().map(|c| f.format(c)).collect()),
        }
    }

    pub fn from_pair<F: Field>(p: &FrobeniusPair<F>) -> Self {
        Self::from_algebra(p.algebra(), Some(p.lambda()))
    }

    pub fn parse(text: &str) -> Result<Self, FrobError> {
        serde_json::from_str(text).map_err(|e| FrobError::Json(e.to_string()))
    }

    /// Canonical text: pretty-printed with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data serializes");
        s.push('\n');
        s
    }

    pub fn descriptor(&self) -> Result<FieldDescriptor, FrobError> {
        Ok(self.field.parse()?)
    }

    /// Build the algebra over `target`; scalars are read in the file's own
    /// field and then mapped (e.g. ℚ → F_p by reduction).
    pub fn to_algebra<F: Field>(&self, target: &F) -> Result<(CommAlgebra<F>, Option<Vec<F::Elem>>), FrobError> {
        let desc = self.descriptor()?;
        let conv = |s: &str| -> Result<F::Elem, FrobError> { Ok(target.from_scalar(&Scalar::parse(s, desc)?)?) };
        let n = self.basis.len();
        if self.constants.len() != n * (n + 1) / 2 {
            return Err(FrobError::Json(format!("expected {} constant lists, got {}", n * (n + 1) / 2, self.constants.len())));
        }
        let mut table = vec![vec![Vec::new(); n]; n];
        let mut it = self.constants.iter();
        for i in 0..n {
            for j in i..n {
                let mut v = Vec::new();
                for (k, c) in it.next().unwrap() {
                    if *k >= n {
                        return Err(FrobError::Json(format!("basis index {k} out of range")));
                    }
                    let c = conv(c)?;
                    if !target.is_zero(&c) {
                        v.push((*k, c));
                    }
                }
                v.sort_by_key(|(k, _)| *k);
                if v.windows(2).any(|w| w[0].0 == w[1].0) {
                    return Err(FrobError::Json(format!("repeated index in product ({i}, {j})")));
                }
                table[j][i] = v.clone();
                table[i][j] = v;
            }
        }
        let alg = CommAlgebra::new(target.clone(), self.basis.clone(), table)?;
        let lambda = match &self.lambda {
            Some(l) => Some(l.iter().map(|s| conv(s)).collect::<Result<Vec<_>, _>>()?),
            None => None,
        };
        Ok((alg, lambda))
    }

    pub fn to_pair<F: Field>(&self, target: &F) -> Result<FrobeniusPair<F>, FrobError> {
        let (alg, lambda) = self.to_algebra(target)?;
        FrobeniusPair::make(alg, lambda.ok_or_else(|| FrobError::Json("missing \"lambda\"".into()))?)
    }
}

/// A Frobenius pair over a field chosen at runtime.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyPair {
    Q(FrobeniusPair<Rationals>),
    Fp(FrobeniusPair<PrimeField>),
    QU(FrobeniusPair<RationalFunctions>),
}

/// Run `$body` with `$p` bound to the typed pair inside an [`AnyPair`].
#[macro_export]
macro_rules! with_pair {
    ($any:expr, $p:ident => $body:expr) => {
        match $any {
            $crate::frobalg::AnyPair::Q($p) => $body,
            $crate::frobalg::AnyPair::Fp($p) => $body,
            $crate::frobalg::AnyPair::QU($p) => $body,
        }
    };
}

impl AnyPair {
    pub fn descriptor(&self) -> FieldDescriptor {
        with_pair!(self, p => p.field().descriptor())
    }

    pub fn catalog(name: &str, field: FieldDescriptor) -> Result<Self, FrobError> {
        Ok(match field {
            FieldDescriptor::Q => AnyPair::Q(catalog(&Rationals, name)?.into_pair(name)?),
            FieldDescriptor::Fp(p) => {
                let f = PrimeField::new(p as u64)?;
                AnyPair::Fp(catalog(&f, name)?.into_pair(name)?)
            }
            FieldDescriptor::QU => AnyPair::QU(catalog(&RationalFunctions, name)?.into_pair(name)?),
        })
    }

    /// Load from a file description, optionally moving to another field.
    pub fn from_file(file: &AlgebraFile, field: Option<FieldDescriptor>) -> Result<Self, FrobError> {
        Ok(match field.unwrap_or(file.descriptor()?) {
            FieldDescriptor::Q => AnyPair::Q(file.to_pair(&Rationals)?),
            FieldDescriptor::Fp(p) => AnyPair::Fp(file.to_pair(&PrimeField::new(p as u64)?)?),
            FieldDescriptor::QU => AnyPair::QU(file.to_pair(&RationalFunctions)?),
        })
    }

    pub fn to_file(&self) -> AlgebraFile {
        with_pair!(self, p => AlgebraFile::from_pair(p))
    }
}
