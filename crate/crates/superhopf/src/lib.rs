//! Exact computations with towers of graded superalgebras: nilCoxeter and wreath product
//! towers, their Grothendieck groups viewed as twisted Hopf algebras in duality, and the
//! twisted Heisenberg double acting on its Fock space.
//!
//! All arithmetic is exact. Scalars of algebras and modules are rationals; graded dimensions,
//! pairings and Grothendieck coefficients live in [`ground_ring::GroundElem`].

pub mod algebra_file;
pub mod error;
pub mod frobenius;
pub mod ground_ring;
pub mod grothendieck;
pub mod heisenberg;
pub mod linalg;
pub mod module;
pub mod perm;
pub mod report;
pub mod suites;
pub mod superalgebra;
pub mod towers;

pub use error::{Error, Result};
pub use ground_ring::{GroundElem, Mode, TwistScalar};

/// Exact rational scalar.
pub type Q = num_rational::BigRational;
