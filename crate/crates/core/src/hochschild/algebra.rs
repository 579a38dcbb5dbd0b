use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::RatMatrix;
use crate::rational::Rational;

use super::Cochain;

/// A finite-dimensional algebra given by structure constants,
/// `e_i e_j = Σ_l Γ_ij^l e_l`. Associativity is not enforced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraStructure {
    dim: usize,
    gamma: Vec<Rational>,
    labels: Vec<String>,
}

impl AlgebraStructure {
    /// `gamma[(i*d + j)*d + l] = Γ_ij^l`.
    pub fn new(dim: usize, gamma: Vec<Rational>) -> Result<Self> {
        let expected = dim * dim * dim;
        if gamma.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: gamma.len(),
            });
        }
        let labels = (0..dim).map(|i| format!("e{i}")).collect();
        Ok(AlgebraStructure { dim, gamma, labels })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize, usize) -> Rational) -> Self {
        let mut gamma = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for l in 0..dim {
                    gamma.push(f(i, j, l));
                }
            }
        }
        Self::new(dim, gamma).expect("length is d³ by construction")
    }

    /// Reads the products off an arity-2 cochain.
    pub fn from_cochain(kappa: &Cochain) -> Result<Self> {
        if kappa.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: kappa.arity(),
            });
        }
        Self::new(kappa.dim(), kappa.coefficients().to_vec())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gamma(&self, i: usize, j: usize, l: usize) -> &Rational {
        &self.gamma[(i * self.dim + j) * self.dim + l]
    }

    /// Coordinates of `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &[Rational] {
        let start = (i * self.dim + j) * self.dim;
        &self.gamma[start..start + self.dim]
    }

    pub fn structure_constants(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn multiply(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x * y;
                for (o, g) in out.iter_mut().zip(self.product(i, j)) {
                    if !g.is_zero() {
                        *o += &(&xy * g);
                    }
                }
            }
        }
        out
    }

    /// The multiplication as an arity-2 cochain.
    pub fn multiplication(&self) -> Cochain {
        Cochain::from_coefficients(2, self.dim, self.gamma.clone()).expect("shape matches")
    }

    /// First `(i,j,k,r)` with `Σ_l Γ_il^r Γ_jk^l ≠ Σ_l Γ_ij^l Γ_lk^r`.
    pub fn associativity_witness(&self) -> Option<[usize; 4]> {
        let d = self.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let left = self.multiply(self.product(i, j), &unit(d, k));
                    let right = self.multiply(&unit(d, i), self.product(j, k));
                    if let Some(r) = (0..d).find(|&r| left[r] != right[r]) {
                        return Some([i, j, k, r]);
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_witness().is_none()
    }

    pub fn commutativity_witness(&self) -> Option<[usize; 2]> {
        let d = self.dim;
        (0..d)
            .flat_map(|i| (i + 1..d).map(move |j| [i, j]))
            .find(|&[i, j]| self.product(i, j) != self.product(j, i))
    }

    pub fn is_commutative(&self) -> bool {
        self.commutativity_witness().is_none()
    }

    pub(crate) fn require_associative(&self) -> Result<()> {
        match self.associativity_witness() {
            Some(witness) => Err(Error::NotAssociative { witness }),
            None => Ok(()),
        }
    }

    /// The same algebra in the basis `f_i = Σ_k p[k][i] e_k`.
    pub fn change_basis(&self, p: &RatMatrix) -> Option<Self> {
        let d = self.dim;
        if p.rows() != d || p.cols() != d {
            return None;
        }
        let inv = p.inverse()?;
        let cols: Vec<Vec<Rational>> = (0..d).map(|i| p.column(i)).collect();
        let mut gamma = Vec::with_capacity(d * d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.multiply(&cols[i], &cols[j]);
                gamma.extend(inv.mul_vec(&prod));
            }
        }
        Some(AlgebraStructure {
            dim: d,
            gamma,
            labels: self.labels.clone(),
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_fn(dim, |_, _, _| Rational::zero())
    }

    /// `ℚ[x]/(x^n)` in the basis `1, x, …, x^{n−1}`.
    pub fn truncated_polynomial(n: usize) -> Self {
        let labels = (0..n)
            .map(|i| match i {
                0 => String::from("1"),
                1 => String::from("x"),
                _ => format!("x^{i}"),
            })
            .collect();
        Self::from_fn(n, |i, j, l| Rational::from_integer((i + j == l) as i64))
            .with_labels(labels)
            .expect("n labels")
    }

    /// The dual numbers `ℚ[x]/(x²)`.
    pub fn dual_numbers() -> Self {
        Self::truncated_polynomial(2)
    }

    /// `M_n(ℚ)` with matrix units `E_ab` at index `a*n + b`.
    pub fn matrix_algebra(n: usize) -> Self {
        let labels = (0..n * n)
            .map(|i| format!("E{}{}", i / n + 1, i % n + 1))
            .collect();
        Self::from_fn(n * n, |i, j, l| {
            let (a, b) = (i / n, i % n);
            let (c, e) = (j / n, j % n);
            Rational::from_integer((b == c && l == a * n + e) as i64)
        })
        .with_labels(labels)
        .expect("n² labels")
    }

    /// Upper triangular 2×2 matrices in the basis `E11, E12, E22`.
    pub fn upper_triangular() -> Self {
        let m = Self::matrix_algebra(2);
        let keep = [0usize, 1, 3];
        Self::from_fn(3, |i, j, l| m.gamma(keep[i], keep[j], keep[l]).clone())
            .with_labels(
                ["E11", "E12", "E22"]
                    .iter()
                    .map(|s| String::from(*s))
                    .collect(),
            )
            .expect("3 labels")
    }

    /// The non-unital, non-commutative algebra with `e0 e0 = e0`, `e0 e1 = e1`
    /// and all other products zero.
    pub fn left_unit_extension() -> Self {
        Self::from_fn(2, |i, j, l| {
            Rational::from_integer(matches!((i, j, l), (0, 0, 0) | (0, 1, 1)) as i64)
        })
    }

    /// `ℚ × ℚ` with orthogonal idempotents.
    pub fn split_pair() -> Self {
        Self::from_fn(2, |i, j, l| {
            Rational::from_integer((i == j && j == l) as i64)
        })
    }
}

pub(crate) fn unit(d: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[k] = Rational::one();
    v
}
