//! Generalized Maurer-Cartan series and weak morphisms of L∞ algebras.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graded::{Basis, Element, GradedMultilinearMap, GradedSpace};
use crate::rational::Rational;

use super::LInfinityStructure;

/// `s = s₁t + … + sₙtⁿ` with every `s_k` of degree 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCElementSeries {
    terms: Vec<Element>,
}

impl MCElementSeries {
    /// `terms[k-1]` is `s_k`; each must lie in degree 1 of `space`.
    pub fn new(space: &GradedSpace, terms: Vec<Element>) -> Result<Self> {
        for t in &terms {
            for (b, _) in t.terms() {
                if b.0 != 1 {
                    return Err(Error::DegreeMismatch {
                        expected: 1,
                        found: b.0,
                    });
                }
                if !space.contains(b) {
                    return Err(Error::Malformed(format!(
                        "basis element {b:?} not in space"
                    )));
                }
            }
        }
        Ok(MCElementSeries { terms })
    }

    pub fn zero(order: usize) -> Self {
        MCElementSeries {
            terms: vec![Element::zero(); order],
        }
    }

    pub fn order(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> &[Element] {
        &self.terms
    }
}

/// Ordered tuples of positive integers summing to `k`.
fn compositions(k: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=k.saturating_sub(parts - 1) {
        for mut rest in compositions(k - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn factorial_inverse(m: usize) -> Rational {
    let mut f = Rational::one();
    for i in 2..=m {
        f = &f * &Rational::from_integer(i as i64);
    }
    f.recip().expect("m! is nonzero")
}

/// The `t^k` coefficient of `Σ_m (1/m!) g_m(s, …, s)`.
fn exponential_coefficient<'a, I>(ops: I, s: &MCElementSeries, k: usize) -> Element
where
    I: IntoIterator<Item = (usize, &'a GradedMultilinearMap)>,
{
    let mut out = Element::zero();
    for (m, g) in ops {
        if m > k {
            continue;
        }
        let scale = factorial_inverse(m);
        for parts in compositions(k, m) {
            let args: Vec<Element> = parts.iter().map(|&j| s.terms[j - 1].clone()).collect();
            if args.iter().any(Element::is_zero) {
                continue;
            }
            let v = g
                .evaluate(&args)
                .expect("degree-1 inputs from the same space");
            out.add_scaled(&v, &scale);
        }
    }
    out
}

/// The `t^k` coefficient of `l₁(s) + ½l₂(s,s) + ⅙l₃(s,s,s) + …`.
pub fn generalized_mc_residual(
    l: &LInfinityStructure,
    s: &MCElementSeries,
    k: usize,
) -> Result<Element> {
    if k > s.order() {
        return Err(Error::BadOrder {
            requested: k,
            available: s.order(),
        });
    }
    for t in &s.terms {
        for (b, _) in t.terms() {
            if !l.space().contains(b) {
                return Err(Error::Malformed(format!(
                    "basis element {b:?} not in space"
                )));
            }
        }
    }
    Ok(exponential_coefficient(l.ops(), s, k))
}

/// `f = (f₁, f₂, …) : L′ → L″`, each `f_k` χ-antisymmetric of degree `1 − k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakMorphism {
    source: LInfinityStructure,
    target: LInfinityStructure,
    components: BTreeMap<usize, GradedMultilinearMap>,
}

impl WeakMorphism {
    pub fn new(
        source: LInfinityStructure,
        target: LInfinityStructure,
        components: Vec<GradedMultilinearMap>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut map = BTreeMap::new();
        for f in components {
            let k = f.arity();
            if k == 0 {
                return Err(Error::BadRange {
                    what: "arity",
                    value: 0,
                    bound: 1,
                });
            }
            if f.degree() != 1 - k as i32 {
                return Err(Error::DegreeMismatch {
                    expected: 1 - k as i32,
                    found: f.degree(),
                });
            }
            if f.domain() != source.space() || f.codomain() != target.space() {
                return Err(Error::Malformed(format!(
                    "component f_{k} does not map source to target"
                )));
            }
            if let Some(inputs) = f.antisymmetry_witness() {
                return Err(Error::NotAntisymmetric { arity: k, inputs });
            }
            if !seen.insert(k) {
                return Err(Error::Malformed(format!("two components of arity {k}")));
            }
            if !f.is_zero() {
                map.insert(k, f);
            }
        }
        Ok(WeakMorphism {
            source,
            target,
            components: map,
        })
    }

    /// The strict morphism with `f₁ = f` and `f_k = 0` for `k ≥ 2`.
    pub fn strict(
        source: LInfinityStructure,
        target: LInfinityStructure,
        f: GradedMultilinearMap,
    ) -> Result<Self> {
        Self::new(source, target, vec![f])
    }

    pub fn identity(l: &LInfinityStructure) -> Self {
        let id = GradedMultilinearMap::identity(l.space());
        Self::strict(l.clone(), l.clone(), id).expect("identity is a degree-0 linear map")
    }

    pub fn source(&self) -> &LInfinityStructure {
        &self.source
    }

    pub fn target(&self) -> &LInfinityStructure {
        &self.target
    }

    pub fn component(&self, k: usize) -> Option<&GradedMultilinearMap> {
        self.components.get(&k)
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &GradedMultilinearMap)> + '_ {
        self.components.iter().map(|(&k, m)| (k, m))
    }
}

/// `MC(f)(s) = f₁(s) + ½f₂(s,s) + …`, truncated at the order of `s`. The
/// source residuals must vanish through that order.
pub fn mc_pushforward(f: &WeakMorphism, s: &MCElementSeries) -> Result<MCElementSeries> {
    for k in 1..=s.order() {
        if !generalized_mc_residual(&f.source, s, k)?.is_zero() {
            return Err(Error::SourceNotMc { order: k });
        }
    }
    let terms = (1..=s.order())
        .map(|k| exponential_coefficient(f.components(), s, k))
        .collect();
    MCElementSeries::new(f.target.space(), terms)
}

/// Outcome of [`check_weak_morphism_linear`]: the first failing basis input
/// for each axiom.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MorphismReport {
    pub m1_witness: Option<Basis>,
    pub m2_witness: Option<(Basis, Basis)>,
}

impl MorphismReport {
    pub fn holds(&self) -> bool {
        self.m1_witness.is_none() && self.m2_witness.is_none()
    }
}

fn apply(op: Option<&GradedMultilinearMap>, args: &[Element]) -> Element {
    match op {
        Some(m) if args.iter().all(|a| !a.is_zero()) => {
            m.evaluate(args).expect("arguments from the right space")
        }
        _ => Element::zero(),
    }
}

/// `(M₁)`: `f₁ l′₁ = l″₁ f₁`.
pub fn m1_defect(f: &WeakMorphism, u: Basis) -> Element {
    let u = Element::basis(u);
    let f1 = f.component(1);
    let left = apply(f1, &[apply(f.source.op(1), core::slice::from_ref(&u))]);
    let right = apply(f.target.op(1), &[apply(f1, &[u])]);
    &left - &right
}

/// `(M₂)`: `f₁l′₂(u,v) − l″₂(f₁u, f₁v) − l″₁f₂(u,v) − f₂(l′₁u, v) − (−1)^{|u|} f₂(u, l′₁v)`.
pub fn m2_defect(f: &WeakMorphism, u: Basis, v: Basis) -> Element {
    let (eu, ev) = (Element::basis(u), Element::basis(v));
    let (f1, f2) = (f.component(1), f.component(2));
    let (l1, l2) = (f.source.op(1), f.source.op(2));
    let mut out = apply(f1, &[apply(l2, &[eu.clone(), ev.clone()])]);
    let images = [
        apply(f1, core::slice::from_ref(&eu)),
        apply(f1, core::slice::from_ref(&ev)),
    ];
    out.add_scaled(&apply(f.target.op(2), &images), &-Rational::one());
    let homotopy = apply(f2, &[eu.clone(), ev.clone()]);
    out.add_scaled(&apply(f.target.op(1), &[homotopy]), &-Rational::one());
    out.add_scaled(
        &apply(f2, &[apply(l1, core::slice::from_ref(&eu)), ev.clone()]),
        &-Rational::one(),
    );
    let koszul = Rational::one().signed(if u.0 % 2 == 0 { -1 } else { 1 });
    out.add_scaled(&apply(f2, &[eu, apply(l1, &[ev])]), &koszul);
    out
}

/// Checks `(M₁)` on every basis vector and `(M₂)` on every basis pair.
pub fn check_weak_morphism_linear(f: &WeakMorphism) -> MorphismReport {
    let basis = f.source.space().basis();
    let m1_witness = basis.iter().copied().find(|&u| !m1_defect(f, u).is_zero());
    let m2_witness = basis
        .iter()
        .flat_map(|&u| basis.iter().map(move |&v| (u, v)))
        .find(|&(u, v)| !m2_defect(f, u, v).is_zero());
    MorphismReport {
        m1_witness,
        m2_witness,
    }
}
