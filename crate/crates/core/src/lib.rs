//! Exact operator calculus for the centrally extended conformal Galilei
//! algebras at half-integer `ℓ`.
//!
//! The engine is generic over the coefficient ring ([`scalar::Scalar`]);
//! everything downstream of it works with [`CScalar`], Laurent polynomials
//! in the central charge `c` over arbitrary-precision rationals.

pub mod algebra;
pub mod enlarged;
pub mod error;
pub mod json;
pub mod laurent;
pub mod linsolve;
pub mod onshell;
pub mod realizations;
pub mod scalar;
pub mod spectrum;
pub mod transform;
pub mod verify;
pub mod weyl;

pub use error::{Error, Result};
pub use scalar::HalfInt;

pub type Rational = num_rational::BigRational;
pub type CScalar = laurent::Laurent<Rational>;
pub type WeylOp = weyl::Operator<CScalar>;
pub type GaussFunc = weyl::GaussFunc<CScalar>;
