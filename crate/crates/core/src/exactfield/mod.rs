//! Exact ground fields: ℚ, prime fields F_p and the rational function field ℚ(u).
//!
//! The heavy computations are generic over [`Field`], a small context trait
//! whose implementors carry whatever runtime data the field needs (the
//! modulus for F_p). The dynamically tagged [`Scalar`] is used at the edges
//! (file formats, command line) where the field is only known at runtime.

mod poly;
mod scalar;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactlinalg::SparseVec;

pub use poly::{MultiPoly, RatFunc, UniPoly};
pub use scalar::{parse_ratfunc, reduce_mod_p, scalar_arith, specialize_u, ArithOp, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields ({0} vs {1})")]
    MixedFieldTags(String, String),
    #[error("pole at u = {0}")]
    PoleAt(String),
    #[error("denominator divisible by p = {0}")]
    DenominatorDivisibleByP(u32),
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// Field descriptor as used on the command line and in JSON files:
/// `q`, `fp:<p>` or `qu`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Q,
    Fp(u32),
    QU,
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Q => f.write_str("q"),
            FieldDescriptor::Fp(p) => write!(f, "fp:{p}"),
            FieldDescriptor::QU => f.write_str("qu"),
        }
    }
}

impl FromStr for FieldDescriptor {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "q" => Ok(FieldDescriptor::Q),
            "qu" => Ok(FieldDescriptor::QU),
            other => {
                let p = other
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| FieldError::Parse(s.to_string()))?;
                Ok(FieldDescriptor::Fp(PrimeField::new(p)?.modulus()))
            }
        }
    }
}

/// Arithmetic context for an exact field.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync;

    fn descriptor(&self) -> FieldDescriptor;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, FieldError>;
    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem, FieldError>;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;

    fn from_int(&self, v: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(v)))
            .expect("integers embed in every supported field")
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b).ok_or(FieldError::DivisionByZero)?))
    }

    /// Parse a scalar string in this field's textual convention.
    fn parse(&self, s: &str) -> Result<Self::Elem, FieldError> {
        self.from_scalar(&Scalar::parse(s, self.descriptor())?)
    }

    fn format(&self, a: &Self::Elem) -> String {
        self.to_scalar(a).to_string()
    }

    /// Field-specific row reduction hook; `None` selects the generic path.
    fn fraction_free_rref(
        &self,
        _ncols: usize,
        _rows: &[SparseVec<Self::Elem>],
        _threshold: usize,
    ) -> Option<Vec<(usize, SparseVec<Self::Elem>)>> {
        None
    }
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Q
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, FieldError> {
        Ok(q.clone())
    }
    fn from_scalar(&self, s: &Scalar) -> Result<BigRational, FieldError> {
        match s {
            Scalar::Rational(q) => Ok(q.clone()),
            Scalar::RationalFunction(r) => r
                .as_constant()
                .ok_or_else(|| FieldError::MixedFieldTags("qu".into(), "q".into())),
            other => Err(FieldError::MixedFieldTags(other.tag().to_string(), "q".into())),
        }
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn fraction_free_rref(
        &self,
        ncols: usize,
        rows: &[SparseVec<BigRational>],
        threshold: usize,
    ) -> Option<Vec<(usize, SparseVec<BigRational>)>> {
        (ncols > threshold).then(|| crate::exactlinalg::fraction_free_rref(rows))
    }
}

/// The prime field F_p with p < 2^31, elements stored as reduced residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub const MAX_MODULUS: u64 = 1 << 31;

    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !(2..Self::MAX_MODULUS).contains(&p) || !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p: p as u32 })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn reduce_int(&self, v: &BigInt) -> u32 {
        v.mod_floor(&BigInt::from(self.p)).to_u32().unwrap()
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inverse(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i64) as u32)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 4 {
        return n >= 2;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Fp(self.p)
    }
    fn characteristic(&self) -> u64 {
        self.p as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    fn add(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + *b as u64) % self.p as u64) as u32
    }
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 + self.p as u64 - *b as u64) % self.p as u64) as u32
    }
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        self.inverse(*a)
    }
    fn from_rational(&self, q: &BigRational) -> Result<u32, FieldError> {
        let den = self.reduce_int(q.denom());
        let inv = self.inverse(den).ok_or(FieldError::DenominatorDivisibleByP(self.p))?;
        Ok(self.mul(&self.reduce_int(q.numer()), &inv))
    }
    fn from_scalar(&self, s: &Scalar) -> Result<u32, FieldError> {
        match s {
            Scalar::Modular { value, p } if *p == self.p => Ok(*value),
            Scalar::Rational(q) => self.from_rational(q),
            other => Err(FieldError::MixedFieldTags(
                other.tag().to_string(),
                self.descriptor().to_string(),
            )),
        }
    }
    fn to_scalar(&self, a: &u32) -> Scalar {
        Scalar::Modular { value: *a, p: self.p }
    }
}

/// ℚ(u), the fraction field of ℚ[u].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RationalFunctions;

impl Field for RationalFunctions {
    type Elem = RatFunc;

    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::QU
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn zero(&self) -> RatFunc {
        RatFunc::zero()
    }
    fn one(&self) -> RatFunc {
        RatFunc::one()
    }
    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.add(b)
    }
    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.sub(b)
    }
    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        a.mul(b)
    }
    fn neg(&self, a: &RatFunc) -> RatFunc {
        a.neg()
    }
    fn inv(&self, a: &RatFunc) -> Option<RatFunc> {
        a.inv()
    }
    fn from_rational(&self, q: &BigRational) -> Result<RatFunc, FieldError> {
        Ok(RatFunc::constant(q.clone()))
    }
    fn from_scalar(&self, s: &Scalar) -> Result<RatFunc, FieldError> {
        match s {
            Scalar::RationalFunction(r) => Ok(r.clone()),
            Scalar::Rational(q) => Ok(RatFunc::constant(q.clone())),
            other => Err(FieldError::MixedFieldTags(other.tag().to_string(), "qu".into())),
        }
    }
    fn to_scalar(&self, a: &RatFunc) -> Scalar {
        Scalar::RationalFunction(a.clone())
    }
}

/// Lowest-terms check used by tests and debug assertions.
pub fn is_canonical_rational(q: &BigRational) -> bool {
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Brute-force modular inverse, independent of the Euclidean routine.
    fn brute_inverse(a: u32, p: u32) -> u32 {
        (1..p).find(|x| (a as u64 * *x as u64) % p as u64 == 1).unwrap()
    }

    #[test]
    fn descriptor_round_trip() {
        for s in ["q", "qu", "fp:7", "fp:2147483647"] {
            assert_eq!(s.parse::<FieldDescriptor>().unwrap().to_string(), s);
        }
        assert!("fp:8".parse::<FieldDescriptor>().is_err());
        assert!("fp:2147483659".parse::<FieldDescriptor>().is_err());
        assert!("r".parse::<FieldDescriptor>().is_err());
    }

    #[test]
    fn fp_inverse_matches_brute_force() {
        for p in [2u32, 3, 5, 7, 11, 101] {
            let f = PrimeField::new(p as u64).unwrap();
            for a in 1..p {
                assert_eq!(f.inverse(a).unwrap(), brute_inverse(a, p));
            }
        }
    }

    #[test]
    fn three_fifths_in_f7() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(brute_inverse(5, 7), 3);
        assert_eq!(f.div(&3, &5).unwrap(), 2);
        assert_eq!(f.from_rational(&q(3, 5)).unwrap(), 2);
    }

    #[test]
    fn rational_inverse() {
        assert_eq!(Rationals.div(&Rationals.one(), &q(2, 3)).unwrap(), q(3, 2));
        assert_eq!(Rationals.div(&q(1, 1), &q(0, 1)), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn canonical_rationals() {
        assert!(is_canonical_rational(&q(6, -4)));
        assert_eq!(q(6, -4), q(-3, 2));
    }
}
