//! Exact Galois descent for representations of finite groups over cyclotomic fields.

pub mod catalog;
pub mod character;
pub mod cyclotomic;
pub mod descent;
mod dixon;
pub mod error;
pub mod galois;
pub mod group;
pub mod hilbert;
pub mod io;
pub mod irrep;
pub mod matrix;
pub mod rational;
pub mod rep;

pub use character::Character;
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use galois::{GaloisAutomorphism, Subfield};
pub use group::FiniteGroup;
pub use rational::Rational;
pub use matrix::Matrix;
pub use rep::Representation;
