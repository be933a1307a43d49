//! Homomorphism counts of oriented paths, cycles and trees in tournaments,
//! and the machinery for deciding which of them satisfy the Sidorenko-type
//! inequalities `h ≥ n^v/2^e` (TS) or `h ≤ n^v/2^e` (TAS).
//!
//! The crate is organised bottom-up:
//!
//! * [`pattern`] and [`tournament`] hold the two sides of a count,
//! * [`hom`] and [`signed`] compute exact counts,
//! * [`classify`] and [`spectral`] decide local behaviour,
//! * [`construct`], [`trees`], [`stochastic`] and [`search`] build and test
//!   explicit examples.

pub mod classify;
pub mod construct;
pub mod error;
pub mod hom;
pub mod matrix;
pub mod pattern;
pub mod scalar;
pub mod search;
pub mod signed;
pub mod spectral;
pub mod stochastic;
pub mod tournament;
pub mod trees;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use pattern::{Digraph, Dir, Orientation, OrientedCycle, Pattern, Tree};
pub use scalar::{Rational, Scalar};
pub use tournament::{SkewMatrix, Tournament, WeightedTournament};

/// Serialises an exact rational as `"p/q"` (or an integer string).
pub fn serde_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&scalar::rational_string(r))
}
