use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// An n-multilinear map `A^{⊗n} → A` stored densely.
///
/// The coefficient of `e_j` in `f(e_{i1}, …, e_{in})` sits at
/// `((i1·d + i2)·d + … + in)·d + j`, so each value is a contiguous slice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    arity: usize,
    dim: usize,
    coeffs: Vec<Rational>,
}

pub(crate) fn pow(d: usize, n: usize) -> usize {
    (0..n).fold(1, |acc, _| acc * d)
}

/// Writes the base-`d` digits of `t` (most significant first) into `out`.
pub(crate) fn decode(mut t: usize, d: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = t % d;
        t /= d;
    }
}

pub(crate) fn encode(digits: &[usize], d: usize) -> usize {
    digits.iter().fold(0, |acc, &x| acc * d + x)
}

impl Cochain {
    pub fn zero(arity: usize, dim: usize) -> Self {
        Cochain {
            arity,
            dim,
            coeffs: vec![Rational::zero(); pow(dim, arity + 1)],
        }
    }

    pub fn from_coefficients(arity: usize, dim: usize, coeffs: Vec<Rational>) -> Result<Self> {
        let expected = pow(dim, arity + 1);
        if coeffs.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Cochain { arity, dim, coeffs })
    }

    /// `f(inputs)_j` given by a closure on basis indices.
    pub fn from_fn(
        arity: usize,
        dim: usize,
        mut f: impl FnMut(&[usize], usize) -> Rational,
    ) -> Self {
        let mut c = Self::zero(arity, dim);
        let mut digits = vec![0; arity];
        for t in 0..pow(dim, arity) {
            decode(t, dim, &mut digits);
            for j in 0..dim {
                c.coeffs[t * dim + j] = f(&digits, j);
            }
        }
        c
    }

    /// The cochain sending one basis tuple to one basis vector.
    pub fn basis(arity: usize, dim: usize, index: usize) -> Self {
        let mut c = Self::zero(arity, dim);
        c.coeffs[index] = Rational::one();
        c
    }

    /// An algebra element viewed as an arity-0 cochain.
    pub fn element(v: &[Rational]) -> Self {
        Cochain {
            arity: 0,
            dim: v.len(),
            coeffs: v.to_vec(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(1, dim, |a, j| Rational::from_integer((a[0] == j) as i64))
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Degree in the shifted complex `C^{*+1}`: arity minus one.
    pub fn lie_degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Coordinates of `f(e_{inputs})`.
    pub fn value(&self, inputs: &[usize]) -> &[Rational] {
        debug_assert_eq!(inputs.len(), self.arity);
        let t = encode(inputs, self.dim);
        &self.coeffs[t * self.dim..(t + 1) * self.dim]
    }

    pub(crate) fn value_at(&self, tuple_index: usize) -> &[Rational] {
        &self.coeffs[tuple_index * self.dim..(tuple_index + 1) * self.dim]
    }

    pub fn get(&self, inputs: &[usize], j: usize) -> &Rational {
        &self.value(inputs)[j]
    }

    pub fn set(&mut self, inputs: &[usize], j: usize, x: Rational) {
        let t = encode(inputs, self.dim);
        self.coeffs[t * self.dim + j] = x;
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn evaluate(&self, inputs: &[Vec<Rational>]) -> Result<Vec<Rational>> {
        if inputs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: inputs.len(),
            });
        }
        if let Some(v) = inputs.iter().find(|v| v.len() != self.dim) {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.dim];
        let mut digits = vec![0; self.arity];
        'tuples: for t in 0..pow(self.dim, self.arity) {
            decode(t, self.dim, &mut digits);
            let mut c = Rational::one();
            for (v, &a) in inputs.iter().zip(&digits) {
                if v[a].is_zero() {
                    continue 'tuples;
                }
                c *= &v[a];
            }
            for (o, x) in out.iter_mut().zip(self.value_at(t)) {
                if !x.is_zero() {
                    *o += &(&c * x);
                }
            }
        }
        Ok(out)
    }

    fn check_same_shape(&self, other: &Cochain) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn plus_scaled(&self, other: &Cochain, c: &Rational) -> Result<Cochain> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        out.add_scaled(other, c);
        Ok(out)
    }

    /// In-place `self += c * other`; panics on shape mismatch.
    pub fn add_scaled(&mut self, other: &Cochain, c: &Rational) {
        assert_eq!(
            (self.arity, self.dim),
            (other.arity, other.dim),
            "cochain shapes differ"
        );
        if c.is_zero() {
            return;
        }
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            if !y.is_zero() {
                *x += &(y * c);
            }
        }
    }

    pub fn scaled(&self, c: &Rational) -> Cochain {
        Cochain {
            arity: self.arity,
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }
}

impl core::ops::Add<&Cochain> for &Cochain {
    type Output = Cochain;
    fn add(self, rhs: &Cochain) -> Cochain {
        self.plus_scaled(rhs, &Rational::one())
            .expect("cochain shapes differ")
    }
}

impl core::ops::Sub<&Cochain> for &Cochain {
    type Output = Cochain;
    fn sub(self, rhs: &Cochain) -> Cochain {
        self.plus_scaled(rhs, &-Rational::one())
            .expect("cochain shapes differ")
    }
}

impl core::ops::Neg for &Cochain {
    type Output = Cochain;
    fn neg(self) -> Cochain {
        self.scaled(&-Rational::one())
    }
}

/// `f ∘_i g = f(id^{⊗(i−1)} ⊗ g ⊗ id^{⊗(p−i)})`, with `i` counted from 1.
pub fn circ_i(f: &Cochain, g: &Cochain, i: usize) -> Result<Cochain> {
    if f.dim != g.dim {
        return Err(Error::DimMismatch {
            expected: f.dim,
            found: g.dim,
        });
    }
    let p = f.arity;
    let q = g.arity;
    if i == 0 || i > p {
        return Err(Error::BadPosition {
            position: i,
            arity: p,
        });
    }
    let d = f.dim;
    let arity = p + q - 1;
    let mut out = Cochain::zero(arity, d);
    let mut a = vec![0; arity];
    let mut inner = vec![0; p];
    for t in 0..pow(d, arity) {
        decode(t, d, &mut a);
        let gv = g.value(&a[i - 1..i - 1 + q]);
        inner[..i - 1].copy_from_slice(&a[..i - 1]);
        inner[i..].copy_from_slice(&a[i - 1 + q..]);
        let slot = &mut out.coeffs[t * d..(t + 1) * d];
        for (k, c) in gv.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            inner[i - 1] = k;
            for (o, x) in slot.iter_mut().zip(f.value(&inner)) {
                if !x.is_zero() {
                    *o += &(c * x);
                }
            }
        }
    }
    Ok(out)
}

fn parity_sign(e: i64) -> Rational {
    Rational::from_sign(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// `f ∘ g = Σ_i (−1)^{n(i+1)} f ∘_i g` where `n = arity(g) − 1`.
pub fn gerstenhaber_composition(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    if f.dim != g.dim {
        return Err(Error::DimMismatch {
            expected: f.dim,
            found: g.dim,
        });
    }
    if f.arity + g.arity == 0 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: 0,
        });
    }
    let n = g.lie_degree();
    let mut out = Cochain::zero(f.arity + g.arity - 1, f.dim);
    for i in 1..=f.arity {
        out.add_scaled(&circ_i(f, g, i)?, &parity_sign(n * (i as i64 + 1)));
    }
    Ok(out)
}

/// `[f, g] = f∘g − (−1)^{mn} g∘f` with `m, n` the Lie degrees.
pub fn gerstenhaber_bracket(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let mut out = gerstenhaber_composition(f, g)?;
    let sign = -parity_sign(f.lie_degree() * g.lie_degree());
    out.add_scaled(&gerstenhaber_composition(g, f)?, &sign);
    Ok(out)
}

/// Whether `[κ, κ] = 0` for an arity-2 cochain.
pub fn bracket_square_test(kappa: &Cochain) -> Result<bool> {
    if kappa.arity != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: kappa.arity,
        });
    }
    Ok(gerstenhaber_bracket(kappa, kappa)?.is_zero())
}
