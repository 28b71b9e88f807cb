//! Exact-arithmetic toolkit for the invariant algebras attached to a pair of
//! adjoint copies of a simple Lie algebra (the CDSW setup) and for the affine
//! Weyl / abelian-ideal combinatorics that predicts their structure.
//!
//! Everything is computed over the integers or rationals; no floats anywhere.
//! The crate is organized bottom-up:
//!
//! * [`cartan`]: root systems for all nine simple families, Chevalley bases
//!   with integer structure constants, the normalized invariant form, dual
//!   Coxeter numbers, exponents, Weyl dimension formula.
//! * [`exterior`]: the bigraded exterior algebra on two copies of the Lie
//!   algebra, with bitmask monomials and the maps that generate the defining
//!   ideals.
//! * [`quotient`]: weight-blocked fraction-free elimination producing the
//!   quotient algebras, their invariant dimensions, and the order of vanishing
//!   of the canonical S element.
//! * [`affweyl`]: the affine Weyl group acting on alcoves and affine weights;
//!   enumeration of the alcoves inside the doubled fundamental alcove.
//! * [`abelian`]: abelian ideals of the Borel and their bijection with the
//!   doubled-alcove elements.
//! * [`loop_cocycle`]: residue-pairing cocycles on the loop algebra.
//! * [`verify`]: named check suites producing machine-readable reports.

pub mod abelian;
pub mod affweyl;
pub mod cartan;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod loop_cocycle;
pub mod quotient;
pub mod rat;
pub mod report;
pub mod verify;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
