//! Exact computer algebra for relative weak normalization and Lipschitz
//! saturation of finitely presented algebras.
//!
//! The crate is generic over the coefficient field: everything is written
//! against the [`field::Field`] trait, with the rationals and runtime prime
//! fields as the two instantiations. Concrete aliases for the common case
//! live at the crate root.

pub mod algebra;
pub mod diagram;
pub mod error;
pub mod field;
pub mod groebner;
pub mod ideal;
pub mod linprog;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod poly;
pub mod saturation;

pub use error::{Error, Result};
pub use field::{Field, FieldSpec, PrimeField, Rationals};
pub use monomial::Monomial;
pub use order::MonomialOrder;
pub use parse::poly_parse;
pub use poly::{Poly, PolyRing};

/// Polynomials over the rationals.
pub type QPoly = Poly<Rationals>;
/// Polynomial rings over the rationals.
pub type QPolyRing = PolyRing<Rationals>;
/// Ideals over the rationals.
pub type QIdeal = ideal::Ideal<Rationals>;
/// Polynomials over a prime field.
pub type FpPoly = Poly<PrimeField>;
/// Polynomial rings over a prime field.
pub type FpPolyRing = PolyRing<PrimeField>;
/// Ideals over a prime field.
pub type FpIdeal = ideal::Ideal<PrimeField>;
