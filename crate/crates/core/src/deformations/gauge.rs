//! The gauge group `exp(C¹ ⊗ (t))` and its action on truncated deformations.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hochschild::{circ_i, gerstenhaber_bracket, Cochain};
use crate::linalg::{solve_particular, RatMatrix};
use crate::rational::Rational;

use super::TruncatedDeformation;

/// `x = x₁t + … + xₙtⁿ` with each `x_k ∈ Lin(A, A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeElement {
    dim: usize,
    terms: Vec<Cochain>,
}

/// `u = id + φ₁t + … + φₙtⁿ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalAutomorphism {
    dim: usize,
    terms: Vec<Cochain>,
}

fn check_linear(dim: usize, terms: &[Cochain]) -> Result<()> {
    for t in terms {
        if t.dim() != dim {
            return Err(Error::DimMismatch {
                expected: dim,
                found: t.dim(),
            });
        }
        if t.arity() != 1 {
            return Err(Error::ArityMismatch {
                expected: 1,
                found: t.arity(),
            });
        }
    }
    Ok(())
}

impl GaugeElement {
    /// `terms[k-1]` is `x_k`.
    pub fn new(dim: usize, terms: Vec<Cochain>) -> Result<Self> {
        check_linear(dim, &terms)?;
        Ok(GaugeElement { dim, terms })
    }

    pub fn zero(dim: usize, order: usize) -> Self {
        GaugeElement {
            dim,
            terms: vec![Cochain::zero(1, dim); order],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(Cochain::is_zero)
    }

    pub fn negated(&self) -> Self {
        GaugeElement {
            dim: self.dim,
            terms: self.terms.iter().map(|t| -t).collect(),
        }
    }

    fn series(&self, order: usize) -> Vec<Cochain> {
        let mut s = vec![Cochain::zero(1, self.dim)];
        s.extend((1..=order).map(|k| {
            self.terms
                .get(k - 1)
                .cloned()
                .unwrap_or_else(|| Cochain::zero(1, self.dim))
        }));
        s
    }
}

impl FormalAutomorphism {
    /// `terms[k-1]` is `φ_k`.
    pub fn new(dim: usize, terms: Vec<Cochain>) -> Result<Self> {
        check_linear(dim, &terms)?;
        Ok(FormalAutomorphism { dim, terms })
    }

    /// From the full series `[φ₀, φ₁, …]`; `φ₀` must be the identity.
    pub fn from_series(series: Vec<Cochain>) -> Result<Self> {
        let Some((first, rest)) = series.split_first() else {
            return Err(Error::BadConstantTerm);
        };
        if first.arity() != 1 || *first != Cochain::identity(first.dim()) {
            return Err(Error::BadConstantTerm);
        }
        Self::new(first.dim(), rest.to_vec())
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        FormalAutomorphism {
            dim,
            terms: vec![Cochain::zero(1, dim); order],
        }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Cochain] {
        &self.terms
    }

    /// `[id, φ₁, …, φₙ]`.
    pub fn series(&self) -> Vec<Cochain> {
        let mut s = vec![Cochain::identity(self.dim)];
        s.extend(self.terms.iter().cloned());
        s
    }
}

fn compose(f: &Cochain, g: &Cochain) -> Cochain {
    circ_i(f, g, 1).expect("linear maps on the same space")
}

/// Product of two series of linear maps modulo `t^{n+1}`.
fn series_mul(a: &[Cochain], b: &[Cochain], n: usize) -> Vec<Cochain> {
    let dim = a[0].dim();
    (0..=n)
        .map(|k| {
            let mut acc = Cochain::zero(1, dim);
            for i in 0..=k {
                if a[i].is_zero() || b[k - i].is_zero() {
                    continue;
                }
                acc.add_scaled(&compose(&a[i], &b[k - i]), &Rational::one());
            }
            acc
        })
        .collect()
}

/// `exp(x) = Σ_{m ≤ n} x^m / m!` modulo `t^{n+1}`.
pub fn gauge_exp(x: &GaugeElement, order: usize) -> FormalAutomorphism {
    let xs = x.series(order);
    let dim = x.dim;
    let mut power = vec![Cochain::zero(1, dim); order + 1];
    power[0] = Cochain::identity(dim);
    let mut total = power.clone();
    for m in 1..=order {
        let inv_m = Rational::unit_fraction(m as u64);
        power = series_mul(&power, &xs, order)
            .iter()
            .map(|c| c.scaled(&inv_m))
            .collect();
        for (t, p) in total.iter_mut().zip(&power) {
            t.add_scaled(p, &Rational::one());
        }
    }
    FormalAutomorphism {
        dim,
        terms: total.split_off(1),
    }
}

/// `log(u) = Σ_{m ≤ n} (−1)^{m+1} (u − id)^m / m` modulo `t^{n+1}`.
pub fn gauge_log(u: &FormalAutomorphism) -> GaugeElement {
    let order = u.order();
    let dim = u.dim;
    let mut phi = vec![Cochain::zero(1, dim)];
    phi.extend(u.terms.iter().cloned());
    let mut power = phi.clone();
    let mut total = vec![Cochain::zero(1, dim); order + 1];
    for m in 1..=order {
        let c = Rational::unit_fraction(m as u64).signed(if m % 2 == 1 { 1 } else { -1 });
        for (t, p) in total.iter_mut().zip(&power) {
            t.add_scaled(p, &c);
        }
        power = series_mul(&power, &phi, order);
    }
    GaugeElement {
        dim,
        terms: total.split_off(1),
    }
}

/// Coefficients `Σ_{a+m=k} u_a ∘ (Σ_{b+c+e=m} μ_b(v_c ⊗ v_e))` for `k ≤ n`.
fn conjugate(mu: &[Cochain], u: &[Cochain], v: &[Cochain], n: usize) -> Vec<Cochain> {
    let dim = mu[0].dim();
    let is_id = |k: usize| k == 0;
    let inner: Vec<Cochain> = (0..=n)
        .map(|m| {
            let mut acc = Cochain::zero(2, dim);
            for (b, mu_b) in mu.iter().enumerate().take(m + 1) {
                if mu_b.is_zero() {
                    continue;
                }
                for c in 0..=m - b {
                    let e = m - b - c;
                    if (!is_id(c) && v[c].is_zero()) || (!is_id(e) && v[e].is_zero()) {
                        continue;
                    }
                    let mut t = mu_b.clone();
                    if !is_id(c) {
                        t = circ_i(&t, &v[c], 1).expect("shapes agree");
                    }
                    if !is_id(e) {
                        t = circ_i(&t, &v[e], 2).expect("shapes agree");
                    }
                    acc.add_scaled(&t, &Rational::one());
                }
            }
            acc
        })
        .collect();
    (0..=n)
        .map(|k| {
            let mut acc = inner[k].clone();
            for a in 1..=k {
                if !u[a].is_zero() && !inner[k - a].is_zero() {
                    acc.add_scaled(
                        &circ_i(&u[a], &inner[k - a], 1).expect("shapes agree"),
                        &Rational::one(),
                    );
                }
            }
            acc
        })
        .collect()
}

fn mu_series(d: &TruncatedDeformation) -> Vec<Cochain> {
    (0..=d.order()).map(|k| d.mu(k).clone()).collect()
}

/// `μ'' = u ∘ μ' ∘ (u⁻¹ ⊗ u⁻¹)` with `u = exp(x)`, truncated at the order of `d`.
pub fn gauge_apply(x: &GaugeElement, d: &TruncatedDeformation) -> Result<TruncatedDeformation> {
    if x.dim != d.base().dim() {
        return Err(Error::DimMismatch {
            expected: d.base().dim(),
            found: x.dim,
        });
    }
    d.require_valid()?;
    Ok(gauge_apply_unchecked(x, d))
}

pub(crate) fn gauge_apply_unchecked(
    x: &GaugeElement,
    d: &TruncatedDeformation,
) -> TruncatedDeformation {
    let n = d.order();
    let u = gauge_exp(x, n).series();
    let v = gauge_exp(&x.negated(), n).series();
    let mut out = conjugate(&mu_series(d), &u, &v, n);
    debug_assert_eq!(&out[0], d.mu(0));
    TruncatedDeformation::new(d.base().clone(), out.split_off(1)).expect("shapes preserved")
}

/// Outcome of [`gauge_equivalent`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaugeSearch {
    /// `gauge_apply(x, d1) = d2`.
    Equivalent(GaugeElement),
    /// No gauge element matches `d2` at this order.
    Inconsistent { order: usize },
}

/// Searches for `u` with `u·d1 = d2` one order at a time.
///
/// Suppose `u·d1 = μ'` already agrees with `d2` below order `k`. Any other
/// such `u` is `g∘u` with `g` fixing `μ'` modulo `t^k`, and `g = exp(ξ)` with
/// `ξ = Σ_{j ≤ k} ξ_j t^j` satisfying `[ξ, μ']_m = 0` for `m < k` (the `ξ_k`
/// part only moves order `k`). For such `ξ`,
/// `(exp(ξ)·μ')_k = μ'_k + [ξ, μ']_k` exactly, so matching order `k` is one
/// linear system in `ξ_1, …, ξ_k`. `Inconsistent` is therefore a proof that no
/// gauge element exists.
pub fn gauge_equivalent(
    d1: &TruncatedDeformation,
    d2: &TruncatedDeformation,
) -> Result<GaugeSearch> {
    if d1.order() != d2.order() {
        return Err(Error::OrderMismatch {
            left: d1.order(),
            right: d2.order(),
        });
    }
    if d1.base().structure_constants() != d2.base().structure_constants() {
        return Err(Error::BaseMismatch);
    }
    d1.require_valid()?;
    d2.require_valid()?;
    let n = d1.order();
    let dim = d1.base().dim();
    let block = dim * dim * dim;
    let mut u = FormalAutomorphism::identity(dim, n);
    let mut current = d1.clone();
    for k in 1..=n {
        let target = d2.mu(k) - current.mu(k);
        if target.is_zero() {
            continue;
        }
        let mu = mu_series(&current);
        let mut columns = Vec::with_capacity(k * dim * dim);
        for j in 1..=k {
            for e in 0..dim * dim {
                let xi = Cochain::basis(1, dim, e);
                let mut col = vec![Rational::zero(); k * block];
                for m in j..=k {
                    let b = gerstenhaber_bracket(&xi, &mu[m - j])?;
                    col[(m - 1) * block..m * block].clone_from_slice(b.coefficients());
                }
                columns.push(col);
            }
        }
        let system = RatMatrix::from_columns(k * block, &columns);
        let mut rhs = vec![Rational::zero(); k * block];
        rhs[(k - 1) * block..].clone_from_slice(target.coefficients());
        let Some(sol) = solve_particular(&system, &rhs) else {
            return Ok(GaugeSearch::Inconsistent { order: k });
        };
        let xi: Vec<Cochain> = sol
            .chunks(dim * dim)
            .map(|c| Cochain::from_coefficients(1, dim, c.to_vec()).expect("d² entries"))
            .collect();
        let g = gauge_exp(&GaugeElement::new(dim, xi)?, n);
        u = FormalAutomorphism {
            dim,
            terms: series_mul(&g.series(), &u.series(), n).split_off(1),
        };
        current = gauge_apply_unchecked(&gauge_log(&u), d1);
        debug_assert!((1..=k).all(|m| current.mu(m) == d2.mu(m)));
    }
    let x = gauge_log(&u);
    if let Some(k) = (1..=n).find(|&k| current.mu(k) != d2.mu(k)) {
        return Ok(GaugeSearch::Inconsistent { order: k });
    }
    Ok(GaugeSearch::Equivalent(x))
}
