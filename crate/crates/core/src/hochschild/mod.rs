//! The Hochschild complex `C^n(A, A) = Lin(A^{⊗n}, A)` of a finite-dimensional
//! algebra, its cohomology and the Gerstenhaber bracket.

mod algebra;
mod cochain;
mod complex;

pub use algebra::AlgebraStructure;
pub use cochain::{
    bracket_square_test, circ_i, gerstenhaber_bracket, gerstenhaber_composition, Cochain,
};
pub use complex::{
    coboundary_matrix, cocycles_and_coboundaries, cohomology, hochschild_differential,
    solve_coboundary, CohomologyReport,
};

#[allow(unused_imports)]
pub(crate) use algebra::unit;

#[cfg(test)]
pub(crate) mod testing;
