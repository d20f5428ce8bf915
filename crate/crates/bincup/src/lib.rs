//! Exact-arithmetic toolkit for binomial cup-one differential graded algebras.
//!
//! The crate covers the algebra that connects Steenrod cup-one products with
//! binomial (integer-valued polynomial) operations:
//!
//! - [`intpoly`]: the free binomial ring of integer-valued polynomials in the
//!   zeta basis, over `Z` and over prime fields `Z_p`;
//! - [`delta`]: semi-simplicial sets with validated face maps and builders for
//!   the standard test complexes (torus, `S^1 \cup_p e^2`, presentation
//!   2-complexes, ...);
//! - [`exactla`]: Smith normal form, exact linear solving, and cohomology
//!   presentations over `Z` and `Z_p`;
//! - [`cochain`]: simplicial cochain algebras with cup, cup-one, circ, zeta
//!   operations, Bockstein, and a property-based identity verifier;
//! - [`freedga`]: the free binomial cup-one DGA on a variable set, with its
//!   differential and universal maps into any cup-one DGA target;
//! - [`ncforms`]: non-commutative differential forms on polynomial algebras
//!   with the tensor-algebra cup-one product;
//! - [`massey`]: ordinary, repeated, and restricted Massey products, and the
//!   homotopy-type discrimination they afford.

pub mod cochain;
pub mod delta;
pub mod exactla;
pub mod freedga;
pub mod intpoly;
pub mod massey;
pub mod ncforms;
pub mod ring;
pub mod sampling;

pub use ring::Ring;
