//! Exact algebraic deformation theory over ℚ.
//!
//! Hochschild cohomology and the Gerstenhaber bracket of finite-dimensional
//! associative algebras, truncated formal deformations with obstruction and
//! gauge computations, and L∞ / A∞ structures with their bar-coalgebra
//! coderivations, Maurer-Cartan series and weak morphisms.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod deformations;
pub mod error;
pub mod graded;
pub mod hochschild;
pub mod homotopy;
pub mod linalg;
pub mod rational;

pub use error::{Error, Result};
pub use linalg::{quotient_basis, solve_particular, QuotientBasis, RatMatrix, SubspaceBasis};
pub use rational::{ParseRationalError, Rational};
