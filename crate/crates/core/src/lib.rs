//! Polynomial algebra over the quaternions and octonions.
//!
//! The crate covers element arithmetic ([`algebra`]), one-sided polynomials
//! ([`polynomial`]), root enumeration and classification ([`roots`]),
//! Jacobian analysis ([`jacobian`]) and topological degree by signed preimage
//! counting ([`degree`]). [`verify`] bundles the numerical property suites
//! exposed by the CLI.

pub mod algebra;
pub mod degree;
pub mod error;
pub mod jacobian;
pub mod matrix;
pub mod parse;
pub mod polynomial;
pub mod roots;
pub mod sample;
pub mod tolerance;
pub mod verify;

pub use algebra::{AlgebraKind, Element};
pub use error::{Error, ParseError, Result};
pub use matrix::RealMatrix;
pub use polynomial::{OrdinaryPolynomial, RealPolynomial, Side};
