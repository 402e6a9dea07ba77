//! Exact computations with connections on finite complexes of free modules
//! over finite bidifferential graded-commutative algebras: Atiyah cocycles,
//! the L∞ lifting of the semiregularity map, and its action on obstructions.

pub mod bga;
pub mod error;
pub mod fixtures;
pub mod connection;
pub mod deformation;
pub mod graded;
pub mod grid;
pub mod homcomplex;
pub mod lincomb;
pub mod linfty;
pub mod model;
pub mod linalg;
pub mod random;
pub mod rational;
pub mod report;
pub mod suites;

pub use error::Error;
pub use rational::Rational;
