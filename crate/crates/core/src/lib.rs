//! Combinatorial properties and first Čech cohomology of primitive
//! substitution tiling spaces.
//!
//! The crate works on substitutions over small alphabets, given in a short
//! text encoding (`"b.ba"` is the Fibonacci substitution `a ↦ b, b ↦ ba`).
//! It computes the substitution matrix and its Perron–Frobenius data, the
//! admitted words and complexity function, return words and recognisability,
//! the Barge–Diamond and (modified) Anderson–Putnam complexes, and the first
//! cohomology of the tiling space by three independent routes.

pub mod cohomology;
pub mod complexes;
pub mod error;
pub mod exact;
pub mod io;
pub mod language;
pub mod matrix;
pub mod recognisability;
pub mod spectral;
pub mod substitution;
pub mod word;

pub use error::{Error, Result};
pub use matrix::IntegerMatrix;
pub use substitution::Substitution;
pub use word::{Letter, Word};
