//! L∞ and A∞ structures, the coderivations they induce on the bar
//! coalgebras, generalized Maurer-Cartan series and weak morphisms.
//!
//! L∞ operations `l_k` have degree `2 − k` (so `l₁` raises degree) and obey
//!
//! ```text
//! (Lₙ)  Σ_{i+j=n+1} (−1)^i Σ_{σ ∈ Sh(i,n−i)} χ(σ) l_j(l_i(v_σ(1), …, v_σ(i)), v_σ(i+1), …) = 0.
//! ```
//!
//! A∞ operations `μ_k` have degree `k − 2` (so `μ₁` lowers degree) and obey
//!
//! ```text
//! (Aₙ)  Σ_{λ,k} (−1)^{k+λ+kλ+k(|v₁|+…+|v_λ|)} μ_{n−k+1}(v₁, …, v_λ, μ_k(…), …) = 0.
//! ```

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graded::{
    koszul_sign_unchecked, unshuffles_unchecked, Basis, Element, GradedMultilinearMap, GradedSpace,
    Permutation,
};
use crate::hochschild::AlgebraStructure;
use crate::rational::Rational;

mod coalgebra;
pub mod fixtures;
mod mc;

pub use coalgebra::{
    coderivation_bracket, lift_to_coderivation, lower_from_coderivation, CoderivationLift,
    CoderivationTable, Flavor, WordVector,
};
pub use mc::{
    check_weak_morphism_linear, generalized_mc_residual, m1_defect, m2_defect, mc_pushforward,
    MCElementSeries, MorphismReport, WeakMorphism,
};

/// The first basis tuple (in lexicographic order, smallest `n` first) on which
/// an axiom fails, with the offending value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub n: usize,
    pub inputs: Vec<Basis>,
    pub value: Element,
}

fn check_op(space: &GradedSpace, op: &GradedMultilinearMap, degree: i32) -> Result<()> {
    if op.arity() == 0 {
        return Err(Error::BadRange {
            what: "arity",
            value: 0,
            bound: 1,
        });
    }
    if op.degree() != degree {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: op.degree(),
        });
    }
    if op.domain() != space || op.codomain() != space {
        return Err(Error::Malformed(format!(
            "operation of arity {} lives on a different space",
            op.arity()
        )));
    }
    Ok(())
}

fn collect_ops(ops: Vec<GradedMultilinearMap>) -> Result<BTreeMap<usize, GradedMultilinearMap>> {
    let mut seen = BTreeSet::new();
    let mut map = BTreeMap::new();
    for op in ops {
        let k = op.arity();
        if !seen.insert(k) {
            return Err(Error::Malformed(format!("two operations of arity {k}")));
        }
        if !op.is_zero() {
            map.insert(k, op);
        }
    }
    Ok(map)
}

/// `(V, l₁, l₂, …)` with finitely many nonzero `l_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LInfinityStructure {
    space: GradedSpace,
    ops: BTreeMap<usize, GradedMultilinearMap>,
}

impl LInfinityStructure {
    /// Every `l_k` must have degree `2 − k` and be χ-antisymmetric.
    pub fn new(space: GradedSpace, ops: Vec<GradedMultilinearMap>) -> Result<Self> {
        for op in &ops {
            check_op(&space, op, 2 - op.arity() as i32)?;
            if let Some(inputs) = op.antisymmetry_witness() {
                return Err(Error::NotAntisymmetric {
                    arity: op.arity(),
                    inputs,
                });
            }
        }
        Ok(LInfinityStructure {
            space,
            ops: collect_ops(ops)?,
        })
    }

    /// Like [`LInfinityStructure::new`] but replaces each `l_k` by its
    /// χ-antisymmetric projection. The flag is true if that changed anything.
    pub fn projected(space: GradedSpace, ops: Vec<GradedMultilinearMap>) -> Result<(Self, bool)> {
        let mut changed = false;
        let mut projected = Vec::with_capacity(ops.len());
        for op in ops {
            check_op(&space, &op, 2 - op.arity() as i32)?;
            let p = op.antisymmetrize();
            changed |= p != op;
            projected.push(p);
        }
        Ok((
            LInfinityStructure {
                space,
                ops: collect_ops(projected)?,
            },
            changed,
        ))
    }

    pub fn zero(space: GradedSpace) -> Self {
        LInfinityStructure {
            space,
            ops: BTreeMap::new(),
        }
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    /// `None` means `l_k = 0`.
    pub fn op(&self, k: usize) -> Option<&GradedMultilinearMap> {
        self.ops.get(&k)
    }

    /// Nonzero operations by arity.
    pub fn ops(&self) -> impl Iterator<Item = (usize, &GradedMultilinearMap)> + '_ {
        self.ops.iter().map(|(&k, m)| (k, m))
    }

    /// `true` when `l_k = 0` for `k ≥ 3`.
    pub fn is_dg_lie(&self) -> bool {
        self.ops.keys().all(|&k| k <= 2)
    }
}

/// `(V, μ₁, μ₂, …)` with finitely many nonzero `μ_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AInfinityStructure {
    space: GradedSpace,
    ops: BTreeMap<usize, GradedMultilinearMap>,
}

impl AInfinityStructure {
    /// Every `μ_k` must have degree `k − 2`.
    pub fn new(space: GradedSpace, ops: Vec<GradedMultilinearMap>) -> Result<Self> {
        for op in &ops {
            check_op(&space, op, op.arity() as i32 - 2)?;
        }
        Ok(AInfinityStructure {
            space,
            ops: collect_ops(ops)?,
        })
    }

    pub fn zero(space: GradedSpace) -> Self {
        AInfinityStructure {
            space,
            ops: BTreeMap::new(),
        }
    }

    /// The algebra in degree 0 with `μ₂` its multiplication and nothing else.
    pub fn from_algebra(a: &AlgebraStructure) -> Self {
        let space = GradedSpace::ungraded(a.dim()).with_labels(0, a.labels().to_vec());
        let space = space.expect("one label per basis vector");
        let mut mu2 = GradedMultilinearMap::zero(2, 0, space.clone(), space.clone());
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let out = Element::from_terms(
                    a.product(i, j)
                        .iter()
                        .enumerate()
                        .map(|(l, c)| ((0, l), c.clone())),
                );
                mu2.set(&[(0, i), (0, j)], out)
                    .expect("degree 0 throughout");
            }
        }
        AInfinityStructure::new(space, vec![mu2]).expect("degree 0 = 2 − 2")
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn op(&self, k: usize) -> Option<&GradedMultilinearMap> {
        self.ops.get(&k)
    }

    pub fn ops(&self) -> impl Iterator<Item = (usize, &GradedMultilinearMap)> + '_ {
        self.ops.iter().map(|(&k, m)| (k, m))
    }
}

/// Adds `c · op(inner, rest)` where the single non-basis argument sits at `at`.
fn add_outer(
    out: &mut Element,
    op: &GradedMultilinearMap,
    inner: &Element,
    args: &[Basis],
    at: usize,
    c: &Rational,
) {
    let mut key: Vec<Basis> = Vec::with_capacity(args.len() + 1);
    for (b, ci) in inner.terms() {
        key.clear();
        key.extend_from_slice(&args[..at]);
        key.push(b);
        key.extend_from_slice(&args[at..]);
        if let Some(v) = op.get(&key) {
            out.add_scaled(v, &(c * ci));
        }
    }
}

/// The left side of `(Lₙ)` on a basis tuple.
pub fn l_infinity_defect(l: &LInfinityStructure, inputs: &[Basis]) -> Element {
    let n = inputs.len();
    let degrees: Vec<i32> = inputs.iter().map(|b| b.0).collect();
    let mut out = Element::zero();
    for i in 1..=n {
        let (Some(li), Some(lj)) = (l.op(i), l.op(n + 1 - i)) else {
            continue;
        };
        let sign_i = if i % 2 == 0 { 1 } else { -1 };
        for sigma in unshuffles_unchecked(i, n) {
            accumulate_l_term(&mut out, li, lj, inputs, &degrees, &sigma, sign_i);
        }
    }
    out
}

fn accumulate_l_term(
    out: &mut Element,
    li: &GradedMultilinearMap,
    lj: &GradedMultilinearMap,
    inputs: &[Basis],
    degrees: &[i32],
    sigma: &Permutation,
    sign_i: i32,
) {
    let i = li.arity();
    let permuted: Vec<Basis> = sigma.images().iter().map(|&p| inputs[p]).collect();
    let Some(inner) = li.get(&permuted[..i]) else {
        return;
    };
    let chi = sigma.sign() * koszul_sign_unchecked(sigma.images(), degrees);
    let c = Rational::one().signed(chi * sign_i);
    add_outer(out, lj, inner, &permuted[i..], 0, &c);
}

/// The left side of `(Aₙ)` on a basis tuple.
pub fn a_infinity_defect(a: &AInfinityStructure, inputs: &[Basis]) -> Element {
    let n = inputs.len();
    let mut out = Element::zero();
    for lambda in 0..n {
        let prefix: i64 = inputs[..lambda].iter().map(|b| b.0 as i64).sum();
        for k in 1..=n - lambda {
            let (Some(inner_op), Some(outer_op)) = (a.op(k), a.op(n - k + 1)) else {
                continue;
            };
            let Some(inner) = inner_op.get(&inputs[lambda..lambda + k]) else {
                continue;
            };
            let (k64, l64) = (k as i64, lambda as i64);
            let exponent = k64 + l64 + k64 * l64 + k64 * prefix;
            let c = Rational::one().signed(if exponent.rem_euclid(2) == 0 { 1 } else { -1 });
            let mut rest: Vec<Basis> = inputs[..lambda].to_vec();
            rest.extend_from_slice(&inputs[lambda + k..]);
            add_outer(&mut out, outer_op, inner, &rest, lambda, &c);
        }
    }
    out
}

/// Odometer over `basis^n` in lexicographic order.
pub(crate) fn for_each_tuple<F: FnMut(&[Basis]) -> bool>(basis: &[Basis], n: usize, mut f: F) {
    if basis.is_empty() && n > 0 {
        return;
    }
    let mut idx = vec![0usize; n];
    let mut tuple: Vec<Basis> = vec![basis.first().copied().unwrap_or((0, 0)); n];
    loop {
        for (t, &i) in tuple.iter_mut().zip(&idx) {
            *t = basis[i];
        }
        if !f(&tuple) {
            return;
        }
        let Some(pos) = (0..n).rev().find(|&p| idx[p] + 1 < basis.len()) else {
            return;
        };
        idx[pos] += 1;
        for i in &mut idx[pos + 1..] {
            *i = 0;
        }
    }
}

fn first_failure<F: Fn(&[Basis]) -> Element>(
    space: &GradedSpace,
    n: usize,
    shift: i32,
    defect: F,
) -> Option<AxiomFailure> {
    let basis = space.basis();
    let mut found = None;
    for_each_tuple(&basis, n, |tuple| {
        let out_degree = tuple.iter().map(|b| b.0).sum::<i32>() + shift;
        if space.dim(out_degree) == 0 {
            return true;
        }
        let value = defect(tuple);
        if value.is_zero() {
            return true;
        }
        found = Some(AxiomFailure {
            n,
            inputs: tuple.to_vec(),
            value,
        });
        false
    });
    found
}

/// Checks `(L₁)` … `(L_max_n)` on all homogeneous basis tuples.
pub fn check_l_infinity(l: &LInfinityStructure, max_n: usize) -> Option<AxiomFailure> {
    for n in 1..=max_n {
        if !(1..=n).any(|i| l.op(i).is_some() && l.op(n + 1 - i).is_some()) {
            continue;
        }
        // l_j ∘ l_i has degree (2 − i) + (2 − j) = 3 − n
        if let Some(f) = first_failure(&l.space, n, 3 - n as i32, |t| l_infinity_defect(l, t)) {
            return Some(f);
        }
    }
    None
}

/// Checks `(A₁)` … `(A_max_n)` on all homogeneous basis tuples.
pub fn check_a_infinity(a: &AInfinityStructure, max_n: usize) -> Option<AxiomFailure> {
    for n in 1..=max_n {
        if !(1..=n).any(|k| a.op(k).is_some() && a.op(n + 1 - k).is_some()) {
            continue;
        }
        // (k − 2) + (n − k + 1 − 2) = n − 3
        if let Some(f) = first_failure(&a.space, n, n as i32 - 3, |t| a_infinity_defect(a, t)) {
            return Some(f);
        }
    }
    None
}

/// Position of `(degree, index)` of the right summand inside `V′ ⊕ V″`.
fn right_offset(left: &GradedSpace, b: Basis) -> Basis {
    (b.0, b.1 + left.dim(b.0))
}

fn push_map(
    m: &GradedMultilinearMap,
    embed: impl Fn(Basis) -> Basis,
    target: &mut GradedMultilinearMap,
) {
    for (inputs, out) in m.entries() {
        let key: Vec<Basis> = inputs.iter().map(|&b| embed(b)).collect();
        let value = Element::from_terms(out.terms().map(|(b, c)| (embed(b), c.clone())));
        target.add_unchecked(&key, &value, &Rational::one());
    }
}

/// `L′ ⊕ L″` with `l_k(v′₁⊕v″₁, …) = l′_k(v′₁, …) + l″_k(v″₁, …)`. In each
/// degree the basis of `V′` comes first.
pub fn direct_sum(l1: &LInfinityStructure, l2: &LInfinityStructure) -> LInfinityStructure {
    let space = l1.space.direct_sum(&l2.space);
    let arities: Vec<usize> = l1.ops.keys().chain(l2.ops.keys()).copied().collect();
    let mut ops = BTreeMap::new();
    for k in arities {
        let mut m = GradedMultilinearMap::zero(k, 2 - k as i32, space.clone(), space.clone());
        if let Some(a) = l1.op(k) {
            push_map(a, |b| b, &mut m);
        }
        if let Some(b) = l2.op(k) {
            push_map(b, |x| right_offset(&l1.space, x), &mut m);
        }
        if !m.is_zero() {
            ops.insert(k, m);
        }
    }
    LInfinityStructure { space, ops }
}

/// The inclusions `V′ → V′ ⊕ V″` and `V″ → V′ ⊕ V″` as degree-0 linear maps.
pub fn direct_sum_inclusions(
    left: &GradedSpace,
    right: &GradedSpace,
) -> (GradedMultilinearMap, GradedMultilinearMap) {
    let sum = left.direct_sum(right);
    let mut i1 = GradedMultilinearMap::zero(1, 0, left.clone(), sum.clone());
    for b in left.basis() {
        i1.add_unchecked(&[b], &Element::basis(b), &Rational::one());
    }
    let mut i2 = GradedMultilinearMap::zero(1, 0, right.clone(), sum);
    for b in right.basis() {
        i2.add_unchecked(
            &[b],
            &Element::basis(right_offset(left, b)),
            &Rational::one(),
        );
    }
    (i1, i2)
}
