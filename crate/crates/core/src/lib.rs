//! Exact computations with generalized preprojective algebras of
//! commutative Frobenius algebras.

pub mod center;
pub mod exactfield;
pub mod exactlinalg;
pub mod frobalg;
mod par;
pub mod preproj;
pub mod splitcase;
pub mod verify;
