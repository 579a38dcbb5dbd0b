//! Graded vector spaces with homogeneous bases, permutation signs and
//! basis-indexed multilinear maps.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A homogeneous basis vector: `(degree, index within that degree)`.
pub type Basis = (i32, usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuspensionMark {
    /// ↑, raising every degree by one.
    Up,
    /// ↓, lowering every degree by one.
    Down,
}

/// `⊕ V^i` with finitely many nonzero components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    dims: BTreeMap<i32, usize>,
    labels: BTreeMap<i32, Vec<String>>,
}

impl GradedSpace {
    /// Components of dimension zero are dropped.
    pub fn new<I: IntoIterator<Item = (i32, usize)>>(dims: I) -> Self {
        let mut map = BTreeMap::new();
        for (deg, dim) in dims {
            if dim > 0 {
                *map.entry(deg).or_insert(0) += dim;
            }
        }
        let labels = map
            .iter()
            .map(|(&deg, &dim)| (deg, (0..dim).map(|i| format!("v{deg}_{i}")).collect()))
            .collect();
        GradedSpace { dims: map, labels }
    }

    /// A space concentrated in degree 0.
    pub fn ungraded(dim: usize) -> Self {
        Self::new([(0, dim)])
    }

    pub fn with_labels(mut self, degree: i32, labels: Vec<String>) -> Result<Self> {
        let dim = self.dim(degree);
        if labels.len() != dim {
            return Err(Error::LengthMismatch {
                expected: dim,
                found: labels.len(),
            });
        }
        if dim > 0 {
            self.labels.insert(degree, labels);
        }
        Ok(self)
    }

    pub fn label(&self, b: Basis) -> Option<&str> {
        self.labels
            .get(&b.0)
            .and_then(|l| l.get(b.1))
            .map(String::as_str)
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    pub fn components(&self) -> impl Iterator<Item = (i32, usize)> + '_ {
        self.dims.iter().map(|(&d, &n)| (d, n))
    }

    pub fn contains(&self, b: Basis) -> bool {
        b.1 < self.dim(b.0)
    }

    /// Homogeneous basis, ordered by degree then index.
    pub fn basis(&self) -> Vec<Basis> {
        self.dims
            .iter()
            .flat_map(|(&d, &n)| (0..n).map(move |i| (d, i)))
            .collect()
    }

    pub fn shift(&self, mark: SuspensionMark) -> GradedSpace {
        let by = match mark {
            SuspensionMark::Up => 1,
            SuspensionMark::Down => -1,
        };
        self.regraded(|d| d + by)
    }

    /// Moves component `d` to degree `f(d)`; `f` must be injective.
    pub(crate) fn regraded(&self, f: impl Fn(i32) -> i32) -> GradedSpace {
        GradedSpace {
            dims: self.dims.iter().map(|(&d, &n)| (f(d), n)).collect(),
            labels: self
                .labels
                .iter()
                .map(|(&d, l)| (f(d), l.clone()))
                .collect(),
        }
    }

    /// `self ⊕ other`; in each degree the basis of `self` comes first.
    pub fn direct_sum(&self, other: &GradedSpace) -> GradedSpace {
        let mut out = GradedSpace::new(self.components().chain(other.components()));
        for (&d, l) in &self.labels {
            let mut all = l.clone();
            all.extend(other.labels.get(&d).cloned().unwrap_or_default());
            out.labels.insert(d, all);
        }
        for (&d, l) in &other.labels {
            out.labels.entry(d).or_insert_with(|| l.clone());
        }
        out
    }

    fn check(&self, b: Basis) -> Result<()> {
        if self.contains(b) {
            Ok(())
        } else {
            Err(Error::Malformed(format!(
                "basis element {b:?} not in space"
            )))
        }
    }
}

/// A sparse vector in a graded space.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<Basis, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(b: Basis) -> Self {
        Self::term(b, Rational::one())
    }

    pub fn term(b: Basis, c: Rational) -> Self {
        let mut e = Element::zero();
        e.add_term(b, &c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (Basis, Rational)>>(terms: I) -> Self {
        let mut e = Element::zero();
        for (b, c) in terms {
            e.add_term(b, &c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, b: Basis) -> Rational {
        self.terms.get(&b).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Basis, &Rational)> + '_ {
        self.terms.iter().map(|(&b, c)| (b, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: Basis, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&b, x) in &other.terms {
            self.add_term(b, &(x * c));
        }
    }

    pub fn scaled(&self, c: &Rational) -> Element {
        let mut e = Element::zero();
        e.add_scaled(self, c);
        e
    }

    /// The common degree of all terms; `None` for zero or mixed elements.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|b| b.0);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }
}

impl core::ops::Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(rhs, &Rational::one());
        e
    }
}

impl core::ops::Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut e = self.clone();
        e.add_scaled(rhs, &-Rational::one());
        e
    }
}

/// A permutation of `{0, …, n−1}` stored by images: position `i` maps to `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// `None` unless `images` is a bijection of `0..images.len()`.
    pub fn new(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || core::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    /// Builds from the 1-based notation `[σ(1), …, σ(n)]`.
    pub fn from_one_based(images: &[usize]) -> Option<Self> {
        if images.contains(&0) {
            return None;
        }
        Self::new(images.iter().map(|i| i - 1).collect())
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &s) in self.images.iter().enumerate() {
            inv[s] = i;
        }
        Permutation { images: inv }
    }

    /// `(−1)^{inversions}`.
    pub fn sign(&self) -> i32 {
        let mut s = 1;
        for a in 0..self.len() {
            for b in a + 1..self.len() {
                if self.images[a] > self.images[b] {
                    s = -s;
                }
            }
        }
        s
    }

    /// The sequence `(x_{σ(1)}, …, x_{σ(n)})`.
    pub fn permute<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| xs[i].clone()).collect()
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur = Self::identity(n).images;
        loop {
            out.push(Permutation {
                images: cur.clone(),
            });
            // next lexicographic permutation
            let Some(k) = (0..n.saturating_sub(1))
                .rev()
                .find(|&k| cur[k] < cur[k + 1])
            else {
                return out;
            };
            let l = (k + 1..n)
                .rev()
                .find(|&l| cur[k] < cur[l])
                .expect("successor exists");
            cur.swap(k, l);
            cur[k + 1..].reverse();
        }
    }
}

/// ε(σ): the sign with `w₁⋯wₙ = ε(σ) w_{σ(1)}⋯w_{σ(n)}` in the free graded
/// commutative algebra, where `|w_i| = degrees[i]`.
pub fn koszul_sign(sigma: &Permutation, degrees: &[i32]) -> Result<i32> {
    if degrees.len() != sigma.len() {
        return Err(Error::LengthMismatch {
            expected: sigma.len(),
            found: degrees.len(),
        });
    }
    Ok(koszul_sign_unchecked(sigma.images(), degrees))
}

/// Each pair of elements that changes relative order contributes
/// `(−1)^{|w_p||w_q|}`.
pub(crate) fn koszul_sign_unchecked(images: &[usize], degrees: &[i32]) -> i32 {
    let mut s = 1;
    for a in 0..images.len() {
        if degrees[images[a]] & 1 == 0 {
            continue;
        }
        for &ib in &images[a + 1..] {
            if images[a] > ib && degrees[ib] & 1 != 0 {
                s = -s;
            }
        }
    }
    s
}

/// χ(σ) = sgn(σ)·ε(σ).
pub fn antisym_koszul_sign(sigma: &Permutation, degrees: &[i32]) -> Result<i32> {
    Ok(sigma.sign() * koszul_sign(sigma, degrees)?)
}

/// The (i, n−i)-unshuffles, ordered lexicographically by their first block.
pub fn unshuffles(i: usize, n: usize) -> Result<Vec<Permutation>> {
    if i == 0 || i > n {
        return Err(Error::BadRange {
            what: "i",
            value: i,
            bound: n,
        });
    }
    Ok(unshuffles_unchecked(i, n))
}

/// Like [`unshuffles`] but also accepts `i = 0`.
pub(crate) fn unshuffles_unchecked(i: usize, n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut comb: Vec<usize> = (0..i).collect();
    loop {
        let mut images = comb.clone();
        images.extend((0..n).filter(|x| !comb.contains(x)));
        out.push(Permutation { images });
        // next combination in lexicographic order
        let Some(k) = (0..i).rev().find(|&k| comb[k] < n - i + k) else {
            return out;
        };
        comb[k] += 1;
        for m in k + 1..i {
            comb[m] = comb[m - 1] + 1;
        }
    }
}

/// `(−1)^{n(n−1)/2}`, the sign of `↓^{⊗n} ∘ ↑^{⊗n}`.
pub fn suspension_power_sign(n: usize) -> i32 {
    if (n * n.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A homogeneous multilinear map `V^{⊗k} → W` given on basis tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMultilinearMap {
    arity: usize,
    degree: i32,
    domain: GradedSpace,
    codomain: GradedSpace,
    entries: BTreeMap<Vec<Basis>, Element>,
}

impl GradedMultilinearMap {
    pub fn zero(arity: usize, degree: i32, domain: GradedSpace, codomain: GradedSpace) -> Self {
        GradedMultilinearMap {
            arity,
            degree,
            domain,
            codomain,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(space: &GradedSpace) -> Self {
        let mut m = Self::zero(1, 0, space.clone(), space.clone());
        for b in space.basis() {
            m.entries.insert(vec![b], Element::basis(b));
        }
        m
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn domain(&self) -> &GradedSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &GradedSpace {
        &self.codomain
    }

    /// Nonzero entries in lexicographic order of input tuples.
    pub fn entries(&self) -> impl Iterator<Item = (&[Basis], &Element)> + '_ {
        self.entries.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn output_degree(&self, inputs: &[Basis]) -> i32 {
        inputs.iter().map(|b| b.0).sum::<i32>() + self.degree
    }

    fn check_inputs(&self, inputs: &[Basis]) -> Result<()> {
        if inputs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: inputs.len(),
            });
        }
        inputs.iter().try_for_each(|&b| self.domain.check(b))
    }

    fn check_output(&self, inputs: &[Basis], output: &Element) -> Result<()> {
        let forced = self.output_degree(inputs);
        for (b, _) in output.terms() {
            if b.0 != forced {
                return Err(Error::DegreeMismatch {
                    expected: forced,
                    found: b.0,
                });
            }
            self.codomain.check(b)?;
        }
        Ok(())
    }

    /// Overwrites the value on a basis tuple.
    pub fn set(&mut self, inputs: &[Basis], output: Element) -> Result<()> {
        self.check_inputs(inputs)?;
        self.check_output(inputs, &output)?;
        if output.is_zero() {
            self.entries.remove(inputs);
        } else {
            self.entries.insert(inputs.to_vec(), output);
        }
        Ok(())
    }

    /// Adds `c * output` to the value on a basis tuple.
    pub fn add_to(&mut self, inputs: &[Basis], output: &Element, c: &Rational) -> Result<()> {
        self.check_inputs(inputs)?;
        self.check_output(inputs, output)?;
        self.add_unchecked(inputs, output, c);
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, inputs: &[Basis], output: &Element, c: &Rational) {
        if c.is_zero() || output.is_zero() {
            return;
        }
        let slot = self.entries.entry(inputs.to_vec()).or_default();
        slot.add_scaled(output, c);
        if slot.is_zero() {
            self.entries.remove(inputs);
        }
    }

    /// Value on a basis tuple; `None` means zero.
    pub fn get(&self, inputs: &[Basis]) -> Option<&Element> {
        self.entries.get(inputs)
    }

    /// Multilinear extension to arbitrary input vectors.
    pub fn evaluate(&self, inputs: &[Element]) -> Result<Element> {
        if inputs.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: inputs.len(),
            });
        }
        for v in inputs {
            for (b, _) in v.terms() {
                if self.domain.dim(b.0) == 0 {
                    let expected = self.domain.components().next().map_or(0, |c| c.0);
                    return Err(Error::DegreeMismatch {
                        expected,
                        found: b.0,
                    });
                }
                self.domain.check(b)?;
            }
        }
        let mut out = Element::zero();
        let mut tuple = Vec::with_capacity(self.arity);
        self.expand(inputs, &mut tuple, Rational::one(), &mut out);
        Ok(out)
    }

    fn expand(
        &self,
        inputs: &[Element],
        tuple: &mut Vec<Basis>,
        coeff: Rational,
        out: &mut Element,
    ) {
        if tuple.len() == inputs.len() {
            if let Some(v) = self.entries.get(tuple.as_slice()) {
                out.add_scaled(v, &coeff);
            }
            return;
        }
        for (b, c) in inputs[tuple.len()].terms() {
            tuple.push(b);
            self.expand(inputs, tuple, &coeff * c, out);
            tuple.pop();
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        let mut m = Self::zero(
            self.arity,
            self.degree,
            self.domain.clone(),
            self.codomain.clone(),
        );
        for (k, v) in &self.entries {
            m.add_unchecked(k, v, c);
        }
        m
    }

    /// `self + c * other`; panics if shapes differ.
    pub fn plus_scaled(&self, other: &Self, c: &Rational) -> Self {
        assert_eq!((self.arity, self.degree), (other.arity, other.degree));
        let mut m = self.clone();
        for (k, v) in &other.entries {
            m.add_unchecked(k, v, c);
        }
        m
    }

    /// `(1/k!) Σ_σ χ(σ) f∘σ`, the graded-antisymmetric projection.
    pub fn antisymmetrize(&self) -> Self {
        let perms = Permutation::all(self.arity);
        let mut factorial = Rational::one();
        for i in 2..=self.arity {
            factorial = &factorial * &Rational::from_integer(i as i64);
        }
        let scale = factorial.recip().expect("k! is nonzero");
        let mut out = Self::zero(
            self.arity,
            self.degree,
            self.domain.clone(),
            self.codomain.clone(),
        );
        for (tuple, v) in &self.entries {
            // f(w) contributes to g(u) whenever w = u∘σ, i.e. u = w∘σ⁻¹
            let degrees: Vec<i32> = tuple.iter().map(|b| b.0).collect();
            for sigma in &perms {
                let inv = sigma.inverse();
                let u = inv.permute(tuple);
                let udeg: Vec<i32> = inv.permute(&degrees);
                let chi = sigma.sign() * koszul_sign_unchecked(sigma.images(), &udeg);
                out.add_unchecked(&u, v, &scale.clone().signed(chi));
            }
        }
        out
    }

    /// First basis tuple (and permutation) violating `f∘σ = χ(σ) f`, if any.
    pub fn antisymmetry_witness(&self) -> Option<Vec<Basis>> {
        let anti = self.antisymmetrize();
        if anti == *self {
            return None;
        }
        let mut keys: Vec<&Vec<Basis>> = self.entries.keys().chain(anti.entries.keys()).collect();
        keys.sort();
        keys.into_iter()
            .find(|k| self.get(k) != anti.get(k))
            .cloned()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(one_based: &[usize]) -> Permutation {
        Permutation::from_one_based(one_based).unwrap()
    }

    /// ε from scratch: bubble-sort the permuted word back, counting odd swaps.
    fn koszul_by_bubble(sigma: &Permutation, degrees: &[i32]) -> i32 {
        let mut word: Vec<usize> = sigma.images().to_vec();
        let mut s = 1;
        for pass in 0..word.len() {
            for j in 0..word.len() - 1 - pass {
                if word[j] > word[j + 1] {
                    if degrees[word[j]] % 2 != 0 && degrees[word[j + 1]] % 2 != 0 {
                        s = -s;
                    }
                    word.swap(j, j + 1);
                }
            }
        }
        s
    }

    #[test]
    fn koszul_examples() {
        assert_eq!(koszul_sign(&Permutation::identity(3), &[1, 1, 1]), Ok(1));
        assert_eq!(koszul_sign(&perm(&[2, 1]), &[1, 1]), Ok(-1));
        assert_eq!(koszul_sign(&perm(&[2, 1]), &[0, 1]), Ok(1));
        assert_eq!(
            koszul_sign(&perm(&[2, 1]), &[1]),
            Err(Error::LengthMismatch {
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            antisym_koszul_sign(&Permutation::identity(2), &[3, 5]),
            Ok(1)
        );
        assert_eq!(antisym_koszul_sign(&perm(&[2, 1]), &[1, 1]), Ok(1));
        assert_eq!(antisym_koszul_sign(&perm(&[2, 1]), &[0, 0]), Ok(-1));
    }

    #[test]
    fn unshuffle_examples() {
        assert_eq!(unshuffles(1, 1).unwrap(), vec![Permutation::identity(1)]);
        assert_eq!(
            unshuffles(1, 2).unwrap(),
            vec![perm(&[1, 2]), perm(&[2, 1])]
        );
        assert_eq!(unshuffles(2, 4).unwrap().len(), 6);
        assert_eq!(
            unshuffles(0, 3),
            Err(Error::BadRange {
                what: "i",
                value: 0,
                bound: 3
            })
        );
        assert_eq!(
            unshuffles(4, 3),
            Err(Error::BadRange {
                what: "i",
                value: 4,
                bound: 3
            })
        );
    }

    #[test]
    fn unshuffles_are_exact() {
        for n in 1..=7 {
            for i in 1..=n {
                let all = unshuffles(i, n).unwrap();
                let binom = (0..i).fold(1usize, |acc, k| acc * (n - k) / (k + 1));
                assert_eq!(all.len(), binom);
                let mut sorted = all.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted, all, "lexicographic and duplicate free");
                for s in &all {
                    assert!(s.images()[..i].windows(2).all(|w| w[0] < w[1]));
                    assert!(s.images()[i..].windows(2).all(|w| w[0] < w[1]));
                }
            }
        }
    }

    #[test]
    fn suspension_signs() {
        let expected = [1, 1, -1, -1, 1, 1, -1];
        for (n, &e) in expected.iter().enumerate().skip(1) {
            assert_eq!(suspension_power_sign(n), e);
        }
    }

    #[test]
    fn permutations_enumerated() {
        assert_eq!(Permutation::all(0).len(), 1);
        assert_eq!(Permutation::all(4).len(), 24);
        let p = perm(&[3, 1, 2]);
        assert_eq!(p.compose(&p.inverse()), Permutation::identity(3));
        assert_eq!(p.sign(), 1);
        assert!(Permutation::new(vec![0, 0]).is_none());
    }

    #[test]
    fn signs_exhaustive_small_groups() {
        let degree_choices: Vec<Vec<i32>> = (0..32u32)
            .map(|mask| {
                (0..5)
                    .map(|b| ((mask >> b) & 1) as i32 + (b % 3) * 2 - 2)
                    .collect()
            })
            .collect();
        for n in 1..=5 {
            for sigma in Permutation::all(n) {
                for degs in &degree_choices {
                    let d = &degs[..n];
                    let eps = koszul_sign(&sigma, d).unwrap();
                    assert_eq!(eps, koszul_by_bubble(&sigma, d));
                    assert_eq!(antisym_koszul_sign(&sigma, d).unwrap(), sigma.sign() * eps);
                }
            }
        }
    }

    #[test]
    fn koszul_is_a_cocycle_on_s3() {
        // reordering by τ then by σ equals reordering by τ∘σ
        for degs in [
            [1, 1, 1],
            [0, 1, 1],
            [1, 0, 1],
            [2, -1, 3],
            [0, 0, 0],
            [1, 2, 1],
        ] {
            for sigma in Permutation::all(3) {
                for tau in Permutation::all(3) {
                    let after_tau = tau.permute(&degs);
                    let lhs = koszul_sign(&tau.compose(&sigma), &degs).unwrap();
                    let rhs = koszul_sign(&tau, &degs).unwrap()
                        * koszul_sign(&sigma, &after_tau).unwrap();
                    assert_eq!(lhs, rhs);
                    let chi = antisym_koszul_sign(&tau.compose(&sigma), &degs).unwrap();
                    let chi2 = antisym_koszul_sign(&tau, &degs).unwrap()
                        * antisym_koszul_sign(&sigma, &after_tau).unwrap();
                    assert_eq!(chi, chi2);
                }
            }
        }
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn evaluate_examples() {
        let v = GradedSpace::ungraded(3);
        let mut f = GradedMultilinearMap::zero(2, 0, v.clone(), v.clone());
        f.set(&[(0, 0), (0, 1)], Element::basis((0, 2))).unwrap();
        let out = f
            .evaluate(&[Element::term((0, 0), r(2)), Element::term((0, 1), r(3))])
            .unwrap();
        assert_eq!(out, Element::term((0, 2), r(6)));
        assert!(f
            .evaluate(&[Element::zero(), Element::zero()])
            .unwrap()
            .is_zero());
        let id = GradedMultilinearMap::identity(&v);
        assert_eq!(
            id.evaluate(&[Element::basis((0, 1))]).unwrap(),
            Element::basis((0, 1))
        );
        assert_eq!(
            f.evaluate(&[Element::zero()]),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            f.evaluate(&[Element::basis((1, 0)), Element::zero()]),
            Err(Error::DegreeMismatch { .. })
        ));
        assert_eq!(
            f.set(&[(0, 0), (0, 0)], Element::basis((0, 0))).map(|_| ()),
            Ok(())
        );
        let mut g = GradedMultilinearMap::zero(1, 1, v.clone(), v.shift(SuspensionMark::Up));
        assert_eq!(
            g.set(&[(0, 0)], Element::basis((0, 0))),
            Err(Error::DegreeMismatch {
                expected: 1,
                found: 0
            })
        );
        assert!(g.set(&[(0, 0)], Element::basis((1, 0))).is_ok());
    }

    #[test]
    fn shifts() {
        let v = GradedSpace::new([(0, 2), (1, 3)]);
        let up = v.shift(SuspensionMark::Up);
        assert_eq!(up.dim(1), 2);
        assert_eq!(up.dim(2), 3);
        let down = v.shift(SuspensionMark::Down);
        assert_eq!(down.dim(-1), 2);
        assert_eq!(down.shift(SuspensionMark::Up), v);
        assert_eq!(v.total_dim(), 5);
        let s = v.direct_sum(&GradedSpace::new([(1, 1), (2, 1)]));
        assert_eq!((s.dim(0), s.dim(1), s.dim(2)), (2, 4, 1));
    }

    #[test]
    fn antisymmetrize_examples() {
        // symmetric bilinear map on two odd generators
        let v = GradedSpace::new([(1, 2)]);
        let w = GradedSpace::new([(1, 2), (2, 1)]);
        let mut f = GradedMultilinearMap::zero(2, 0, v.clone(), w.clone());
        f.set(&[(1, 0), (1, 1)], Element::basis((2, 0))).unwrap();
        f.set(&[(1, 1), (1, 0)], Element::basis((2, 0))).unwrap();
        let g = f.antisymmetrize();
        // direct χ-sum over S₂: g(a,b) = ½ (f(a,b) + χ((12)) f(b,a)), χ = (−1)(−1) = 1
        for a in v.basis() {
            for b in v.basis() {
                let mut expect = Element::zero();
                let half = Rational::new(1, 2);
                if let Some(x) = f.get(&[a, b]) {
                    expect.add_scaled(x, &half);
                }
                if let Some(x) = f.get(&[b, a]) {
                    expect.add_scaled(x, &half);
                }
                assert_eq!(g.get(&[a, b]).cloned().unwrap_or_default(), expect);
            }
        }
        assert_eq!(g, f);
        assert_eq!(g.antisymmetrize(), g);

        let mut h = GradedMultilinearMap::zero(1, 0, v.clone(), v.clone());
        h.set(&[(1, 0)], Element::term((1, 1), r(5))).unwrap();
        assert_eq!(h.antisymmetrize(), h);

        // even generators: symmetric part is killed
        let u = GradedSpace::ungraded(2);
        let mut s = GradedMultilinearMap::zero(2, 0, u.clone(), u.clone());
        s.set(&[(0, 0), (0, 1)], Element::basis((0, 0))).unwrap();
        s.set(&[(0, 1), (0, 0)], Element::basis((0, 0))).unwrap();
        assert!(s.antisymmetrize().is_zero());
        assert!(s.antisymmetry_witness().is_some());
    }

    fn random_map(arity: usize, seed: &[(usize, i64)]) -> GradedMultilinearMap {
        let v = GradedSpace::new([(0, 1), (1, 2), (2, 1)]);
        let basis = v.basis();
        let target = GradedSpace::new((-2..=8).map(|d| (d, 2)));
        let mut f = GradedMultilinearMap::zero(arity, -1, v, target);
        for &(code, c) in seed {
            let mut code = code;
            let tuple: Vec<Basis> = (0..arity)
                .map(|_| {
                    let b = basis[code % basis.len()];
                    code /= basis.len();
                    b
                })
                .collect();
            let deg = f.output_degree(&tuple);
            f.add_to(
                &tuple,
                &Element::term((deg, (c.unsigned_abs() % 2) as usize), r(c)),
                &Rational::one(),
            )
            .unwrap();
        }
        f
    }

    proptest! {
        #[test]
        fn antisymmetrize_projects(arity in 1usize..5, seed in proptest::collection::vec((0usize..1000, -3i64..4), 0..6)) {
            let f = random_map(arity, &seed);
            let g = f.antisymmetrize();
            prop_assert_eq!(g.antisymmetrize(), g.clone());
            // (E17) on every basis tuple and every σ
            let basis = g.domain().basis();
            let mut tuples: Vec<Vec<Basis>> = vec![vec![]];
            for _ in 0..arity {
                tuples = tuples.into_iter().flat_map(|t| basis.iter().map(move |&b| {
                    let mut t = t.clone();
                    t.push(b);
                    t
                })).collect();
            }
            for t in &tuples {
                let degs: Vec<i32> = t.iter().map(|b| b.0).collect();
                let base = g.get(t).cloned().unwrap_or_default();
                for sigma in Permutation::all(arity) {
                    let chi = antisym_koszul_sign(&sigma, &degs).unwrap();
                    let lhs = g.get(&sigma.permute(t)).cloned().unwrap_or_default();
                    prop_assert_eq!(lhs, base.scaled(&Rational::from_sign(chi)));
                }
            }
        }

        #[test]
        fn evaluate_is_multilinear(seed in proptest::collection::vec((0usize..1000, -3i64..4), 0..6),
                                   a in -3i64..4, b in -3i64..4,
                                   xs in proptest::collection::vec((0usize..4, -2i64..3), 3..9)) {
            let f = random_map(2, &seed);
            let basis = f.domain().basis();
            let elem = |pairs: &[(usize, i64)]| Element::from_terms(pairs.iter().map(|&(i, c)| (basis[i], r(c))));
            let x = elem(&xs[..1]);
            let y = elem(&xs[1..2]);
            let z = elem(&xs[2..]);
            let comb = &x.scaled(&r(a)) + &y.scaled(&r(b));
            let lhs = f.evaluate(&[z.clone(), comb]).unwrap();
            let mut rhs = f.evaluate(&[z.clone(), x]).unwrap().scaled(&r(a));
            rhs.add_scaled(&f.evaluate(&[z, y]).unwrap(), &r(b));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
