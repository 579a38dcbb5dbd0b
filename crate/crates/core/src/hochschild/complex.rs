use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{quotient_basis, QuotientBasis, RatMatrix, SubspaceBasis};
use crate::rational::Rational;

use super::cochain::{decode, encode, pow};
use super::{AlgebraStructure, Cochain};

fn sign(e: usize) -> Rational {
    Rational::from_sign(if e.is_multiple_of(2) { 1 } else { -1 })
}

/// `δf(a₀,…,aₙ) = (−1)^{n+1} a₀ f(a₁,…,aₙ) + f(a₀,…,a_{n−1}) aₙ
///   + Σ_{i<n} (−1)^{i+n} f(a₀,…,a_i a_{i+1},…,aₙ)`.
///
/// For `n = 0` this reads `δm(a) = m a − a m`.
pub fn hochschild_differential(a: &AlgebraStructure, f: &Cochain) -> Result<Cochain> {
    let d = a.dim();
    if f.dim() != d {
        return Err(Error::DimMismatch {
            expected: d,
            found: f.dim(),
        });
    }
    let n = f.arity();
    let tail = pow(d, n);
    let mut out = Cochain::zero(n + 1, d);
    let mut digits = vec![0; n + 1];
    let mut merged = vec![0; n];
    let mut slot = vec![Rational::zero(); d];
    let outer = sign(n + 1);
    for t in 0..pow(d, n + 1) {
        decode(t, d, &mut digits);
        slot.iter_mut().for_each(|x| *x = Rational::zero());
        // a₀ f(a₁…aₙ)
        for (j, c) in f
            .value_at(t % tail)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
        {
            let c = c * &outer;
            for (s, g) in slot.iter_mut().zip(a.product(digits[0], j)) {
                if !g.is_zero() {
                    *s += &(&c * g);
                }
            }
        }
        // f(a₀…a_{n−1}) aₙ
        for (j, c) in f
            .value_at(t / d)
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
        {
            for (s, g) in slot.iter_mut().zip(a.product(j, digits[n])) {
                if !g.is_zero() {
                    *s += &(c * g);
                }
            }
        }
        for i in 0..n {
            let sg = sign(i + n);
            merged[..i].copy_from_slice(&digits[..i]);
            merged[i + 1..].copy_from_slice(&digits[i + 2..]);
            for (k, g) in a.product(digits[i], digits[i + 1]).iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                merged[i] = k;
                let c = g * &sg;
                for (s, x) in slot.iter_mut().zip(f.value(&merged)) {
                    if !x.is_zero() {
                        *s += &(&c * x);
                    }
                }
            }
        }
        for (j, s) in slot.iter_mut().enumerate() {
            if !s.is_zero() {
                out.set(&digits, j, core::mem::take(s));
            }
        }
    }
    Ok(out)
}

/// Matrix of `δ : C^n → C^{n+1}` in the coefficient bases.
///
/// Assembled column by column from the basis cochain `E_{(i),j}`, touching
/// only entries the formula can reach.
pub fn coboundary_matrix(a: &AlgebraStructure, n: usize) -> RatMatrix {
    let d = a.dim();
    let cols = pow(d, n + 1);
    let mut m = RatMatrix::zeros(pow(d, n + 2), cols);
    let mut tuple = vec![0; n];
    let mut row_digits = vec![0; n + 2];
    let outer = sign(n + 1);
    for col in 0..cols {
        let j = col % d;
        decode(col / d, d, &mut tuple);
        for x in 0..d {
            // a₀ = x, (a₁…aₙ) = tuple, output r
            row_digits[0] = x;
            row_digits[1..n + 1].copy_from_slice(&tuple);
            for (r, g) in a
                .product(x, j)
                .iter()
                .enumerate()
                .filter(|(_, g)| !g.is_zero())
            {
                row_digits[n + 1] = r;
                m.add_to(encode(&row_digits, d), col, &(g * &outer));
            }
            // (a₀…a_{n−1}) = tuple, aₙ = x
            row_digits[..n].copy_from_slice(&tuple);
            row_digits[n] = x;
            for (r, g) in a
                .product(j, x)
                .iter()
                .enumerate()
                .filter(|(_, g)| !g.is_zero())
            {
                row_digits[n + 1] = r;
                m.add_to(encode(&row_digits, d), col, g);
            }
        }
        for i in 0..n {
            let sg = sign(i + n);
            row_digits[..i].copy_from_slice(&tuple[..i]);
            row_digits[i + 2..n + 1].copy_from_slice(&tuple[i + 1..]);
            row_digits[n + 1] = j;
            for p in 0..d {
                for q in 0..d {
                    let g = a.gamma(p, q, tuple[i]);
                    if g.is_zero() {
                        continue;
                    }
                    row_digits[i] = p;
                    row_digits[i + 1] = q;
                    m.add_to(encode(&row_digits, d), col, &(g * &sg));
                }
            }
        }
    }
    m
}

/// `H^n(A, A)` with representatives and a class-coordinate map.
#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub degree: usize,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub betti: usize,
    pub representatives: Vec<Cochain>,
    quotient: QuotientBasis,
    base_dim: usize,
}

impl CohomologyReport {
    /// Coordinates of the class of a cocycle in the basis of representatives.
    pub fn class_coordinates(&self, f: &Cochain) -> Result<Vec<Rational>> {
        if f.dim() != self.base_dim {
            return Err(Error::DimMismatch {
                expected: self.base_dim,
                found: f.dim(),
            });
        }
        if f.arity() != self.degree {
            return Err(Error::ArityMismatch {
                expected: self.degree,
                found: f.arity(),
            });
        }
        self.quotient
            .coords_of(f.coefficients())
            .map_err(|e| match e {
                Error::SubspaceNotContained => Error::NotACocycle,
                other => other,
            })
    }

    /// Whether a cocycle is a coboundary.
    pub fn is_trivial_class(&self, f: &Cochain) -> Result<bool> {
        Ok(self.class_coordinates(f)?.iter().all(Rational::is_zero))
    }
}

/// Cocycle and coboundary spaces of degree `n` as subspaces of `C^n`.
pub fn cocycles_and_coboundaries(a: &AlgebraStructure, n: usize) -> (SubspaceBasis, SubspaceBasis) {
    let z = coboundary_matrix(a, n).kernel();
    let b = if n == 0 {
        SubspaceBasis::empty(a.dim())
    } else {
        coboundary_matrix(a, n - 1).image()
    };
    (z, b)
}

pub fn cohomology(a: &AlgebraStructure, n: usize) -> Result<CohomologyReport> {
    a.require_associative()?;
    let d = a.dim();
    let (z, b) = cocycles_and_coboundaries(a, n);
    let quotient = quotient_basis(&b, &z)?;
    let representatives = quotient
        .representatives()
        .iter()
        .map(|v| Cochain::from_coefficients(n, d, v.clone()).expect("vector has d^{n+1} entries"))
        .collect();
    Ok(CohomologyReport {
        degree: n,
        dim_cochains: pow(d, n + 1),
        dim_cocycles: z.dim(),
        dim_coboundaries: b.dim(),
        betti: quotient.dim(),
        representatives,
        quotient,
        base_dim: d,
    })
}

/// Solves `δφ = target` for an arity-`n−1` cochain `φ` (canonical solution).
pub fn solve_coboundary(a: &AlgebraStructure, target: &Cochain) -> Result<Option<Cochain>> {
    let d = a.dim();
    if target.dim() != d {
        return Err(Error::DimMismatch {
            expected: d,
            found: target.dim(),
        });
    }
    let n = target.arity();
    if n == 0 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: 0,
        });
    }
    let m = coboundary_matrix(a, n - 1);
    Ok(crate::linalg::solve_particular(&m, target.coefficients())
        .map(|x| Cochain::from_coefficients(n - 1, d, x).expect("solution has d^n entries")))
}
