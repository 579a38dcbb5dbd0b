//! Shared generators for tests.

use alloc::vec::Vec;

use rand::Rng;

use crate::linalg::RatMatrix;
use crate::rational::Rational;

use super::{AlgebraStructure, Cochain};

/// Associative algebras of dimension at most 3.
pub fn associative_fixtures() -> Vec<AlgebraStructure> {
    alloc::vec![
        AlgebraStructure::zero(1),
        AlgebraStructure::truncated_polynomial(1),
        AlgebraStructure::zero(2),
        AlgebraStructure::dual_numbers(),
        AlgebraStructure::left_unit_extension(),
        AlgebraStructure::split_pair(),
        AlgebraStructure::truncated_polynomial(3),
        AlgebraStructure::upper_triangular(),
    ]
}

pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

/// Sparse-ish random cochain.
pub fn random_cochain<R: Rng>(rng: &mut R, arity: usize, dim: usize) -> Cochain {
    let density = rng.gen_range(0.2..0.8);
    Cochain::from_fn(arity, dim, |_, _| {
        if rng.gen_bool(density) {
            small_rational(rng)
        } else {
            Rational::zero()
        }
    })
}

pub fn random_invertible<R: Rng>(rng: &mut R, d: usize) -> RatMatrix {
    loop {
        let rows = (0..d)
            .map(|_| {
                (0..d)
                    .map(|_| Rational::from_integer(rng.gen_range(-2..=2)))
                    .collect()
            })
            .collect();
        let m = RatMatrix::from_rows(rows);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A fixture of the requested dimension in a random basis.
pub fn random_associative<R: Rng>(rng: &mut R, max_dim: usize) -> AlgebraStructure {
    let pool: Vec<AlgebraStructure> = associative_fixtures()
        .into_iter()
        .filter(|a| a.dim() <= max_dim)
        .collect();
    let a = &pool[rng.gen_range(0..pool.len())];
    let p = random_invertible(rng, a.dim());
    a.change_basis(&p).expect("invertible change of basis")
}

/// A random multiplication table; about half are associative by construction.
pub fn random_table<R: Rng>(rng: &mut R, max_dim: usize) -> AlgebraStructure {
    if rng.gen_bool(0.5) {
        return random_associative(rng, max_dim);
    }
    let d = rng.gen_range(1..=max_dim);
    let density = rng.gen_range(0.1..0.6);
    AlgebraStructure::from_fn(d, |_, _, _| {
        if rng.gen_bool(density) {
            Rational::from_integer(rng.gen_range(-1..=1))
        } else {
            Rational::zero()
        }
    })
}
