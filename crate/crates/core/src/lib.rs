//! Exact efficiency analysis for reciprocal (pairwise-comparison) matrices.
//!
//! A positive weight vector `w` is efficient for a reciprocal matrix `A` when
//! no other vector approximates `A` entrywise at least as well with one strict
//! improvement. This crate decides efficiency through the dominance digraph,
//! decomposes the efficient set into polyhedral cones indexed by Hamiltonian
//! cycles with product below 1, and specializes the decomposition to column
//! perturbed consistent matrices. All arithmetic is exact over the rationals.

pub mod cli;
pub mod cones;
pub mod cycle;
pub mod decompose;
pub mod error;
pub mod fixtures;
pub mod generate;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod perturbed;
pub mod rank;
pub mod rational;
pub mod reversals;

pub use cycle::HamiltonianCycle;
pub use error::{Error, Result};
pub use matrix::{MonomialTransform, ReciprocalMatrix, WeightVector};
pub use rational::Rational;
