//! Exact enumeration of k-ary words and permutations by their black-white
//! cell capacity.
//!
//! A word over the positive integers is drawn as a bargraph and its cells
//! are colored like a chessboard, black in the southwest corner. The pair
//! (black cells, white cells) is the word's capacity. This crate computes
//! the joint distribution of that pair exactly: per-word statistics
//! ([`bargraph`]), the enumerating polynomials and balanced-word counts for
//! k-ary words ([`kary`]) and permutations ([`perm`]), the generating
//! functions behind them ([`algebra`]), the special-function identities
//! that close the formulas ([`special`]), and floating-point asymptotics
//! with empirical convergence checks ([`asym`]).
//!
//! All counting is done in exact arithmetic (`num-bigint`,
//! `num-rational`); floats appear only in [`asym`].

pub mod algebra;
pub mod asym;
pub mod bargraph;
pub mod error;
pub mod kary;
pub mod perm;
pub mod special;

pub use algebra::poly::BivariatePoly;
pub use algebra::series::RationalSeries;
pub use bargraph::{CellCount, Word};
pub use error::{Error, Result};

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
