//! Truncated tensor and graded-symmetric coalgebras on `W = ↓V`, and the
//! coderivations determined by their corestrictions.
//!
//! A tensor-flavor word `w₁⊗…⊗wₙ` is any basis tuple. A symmetric-flavor
//! word `w₁∧…∧wₙ` is stored sorted, with no odd basis element repeated.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graded::{
    koszul_sign_unchecked, unshuffles_unchecked, Basis, Element, GradedMultilinearMap, GradedSpace,
    Permutation,
};
use crate::rational::Rational;

use super::for_each_tuple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// The tensor coalgebra with deconcatenation; carries A∞ structures.
    Tensor,
    /// The graded-symmetric coalgebra with unshuffle coproduct; carries L∞
    /// structures.
    Symmetric,
}

/// A linear combination of words.
pub type WordVector = BTreeMap<Vec<Basis>, Rational>;

type PairVector = BTreeMap<(Vec<Basis>, Vec<Basis>), Rational>;

fn add_word(v: &mut WordVector, w: Vec<Basis>, c: &Rational) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(w.clone()).or_default();
    *slot = &*slot + c;
    if slot.is_zero() {
        v.remove(&w);
    }
}

fn add_pair(v: &mut PairVector, key: (Vec<Basis>, Vec<Basis>), c: &Rational) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(key.clone()).or_default();
    *slot = &*slot + c;
    if slot.is_zero() {
        v.remove(&key);
    }
}

fn is_odd(b: Basis) -> bool {
    b.0 & 1 != 0
}

fn parity_sign(odd: bool) -> i32 {
    if odd {
        -1
    } else {
        1
    }
}

/// Sorts the ∧-word `w` and returns `(s, sorted)` with `w = s · sorted`, or
/// `None` when an odd element repeats (the product is zero).
pub(super) fn canonical(mut w: Vec<Basis>) -> Option<(i32, Vec<Basis>)> {
    let mut sign = 1;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            if is_odd(w[j - 1]) && is_odd(w[j]) {
                sign = -sign;
            }
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && is_odd(p[0])) {
        return None;
    }
    Some((sign, w))
}

fn symmetric_words(basis: &[Basis], len: usize, out: &mut Vec<Vec<Basis>>) {
    fn rec(
        basis: &[Basis],
        start: usize,
        len: usize,
        cur: &mut Vec<Basis>,
        out: &mut Vec<Vec<Basis>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..basis.len() {
            cur.push(basis[i]);
            let next = if is_odd(basis[i]) { i + 1 } else { i };
            rec(basis, next, len, cur, out);
            cur.pop();
        }
    }
    rec(basis, 0, len, &mut Vec::with_capacity(len), out);
}

/// A coderivation of the truncated coalgebra on `space`, stored through its
/// corestrictions `f_s : W^{⊗s} → W`, `1 ≤ s ≤ N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoderivationTable {
    space: GradedSpace,
    degree: i32,
    flavor: Flavor,
    truncation: usize,
    corestrictions: Vec<GradedMultilinearMap>,
}

/// The first tuple on which a symmetric-flavor corestriction is not graded
/// symmetric.
fn symmetry_witness(f: &GradedMultilinearMap) -> Option<Vec<Basis>> {
    let perms = Permutation::all(f.arity());
    for (t, v) in f.entries() {
        let Some((s, w)) = canonical(t.to_vec()) else {
            return Some(t.to_vec());
        };
        for sigma in &perms {
            let p = sigma.permute(t);
            let expected = match canonical(p.clone()) {
                Some((sp, wp)) if wp == w => v.scaled(&Rational::from_sign(sp * s)),
                _ => Element::zero(),
            };
            if f.get(&p).cloned().unwrap_or_default() != expected {
                return Some(p);
            }
        }
    }
    None
}

impl CoderivationTable {
    /// Missing arities are zero. Symmetric-flavor corestrictions must be
    /// graded symmetric.
    pub fn new(
        space: GradedSpace,
        degree: i32,
        flavor: Flavor,
        truncation: usize,
        corestrictions: Vec<GradedMultilinearMap>,
    ) -> Result<Self> {
        let mut table = Self::zero(space, degree, flavor, truncation)?;
        let mut seen = alloc::vec![false; truncation];
        for f in corestrictions {
            let s = f.arity();
            if s == 0 || s > truncation {
                return Err(Error::BadRange {
                    what: "arity",
                    value: s,
                    bound: truncation,
                });
            }
            if f.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: f.degree(),
                });
            }
            if f.domain() != &table.space || f.codomain() != &table.space {
                return Err(Error::Malformed(format!(
                    "corestriction {s} lives on a different space"
                )));
            }
            if core::mem::replace(&mut seen[s - 1], true) {
                return Err(Error::Malformed(format!("two corestrictions of arity {s}")));
            }
            if flavor == Flavor::Symmetric {
                if let Some(t) = symmetry_witness(&f) {
                    return Err(Error::Malformed(format!(
                        "corestriction {s} is not graded symmetric at {t:?}"
                    )));
                }
            }
            table.corestrictions[s - 1] = f;
        }
        Ok(table)
    }

    pub fn zero(
        space: GradedSpace,
        degree: i32,
        flavor: Flavor,
        truncation: usize,
    ) -> Result<Self> {
        if truncation < 2 {
            return Err(Error::TruncationTooSmall { truncation });
        }
        let corestrictions = (1..=truncation)
            .map(|s| GradedMultilinearMap::zero(s, degree, space.clone(), space.clone()))
            .collect();
        Ok(CoderivationTable {
            space,
            degree,
            flavor,
            truncation,
            corestrictions,
        })
    }

    pub fn space(&self) -> &GradedSpace {
        &self.space
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// `f_s` for `1 ≤ s ≤ N`.
    pub fn corestriction(&self, s: usize) -> Option<&GradedMultilinearMap> {
        s.checked_sub(1).and_then(|i| self.corestrictions.get(i))
    }

    pub fn corestrictions(&self) -> &[GradedMultilinearMap] {
        &self.corestrictions
    }

    pub fn is_zero(&self) -> bool {
        self.corestrictions
            .iter()
            .all(GradedMultilinearMap::is_zero)
    }

    /// Smallest `s` with `f_s ≠ 0` and the first tuple where it is nonzero.
    pub fn first_nonzero(&self) -> Option<(usize, Vec<Basis>)> {
        self.corestrictions
            .iter()
            .find_map(|f| f.entries().next().map(|(t, _)| (f.arity(), t.to_vec())))
    }

    /// All basis words of length `1..=N`, shortest first.
    pub fn words(&self) -> Vec<Vec<Basis>> {
        let basis = self.space.basis();
        let mut out = Vec::new();
        for len in 1..=self.truncation {
            match self.flavor {
                Flavor::Tensor => for_each_tuple(&basis, len, |t| {
                    out.push(t.to_vec());
                    true
                }),
                Flavor::Symmetric => symmetric_words(&basis, len, &mut out),
            }
        }
        out
    }

    /// `θ(w)`. Symmetric-flavor output words are sorted.
    pub fn apply(&self, word: &[Basis]) -> WordVector {
        let mut out = WordVector::new();
        let n = word.len();
        match self.flavor {
            Flavor::Tensor => {
                for s in 1..=n.min(self.truncation) {
                    let f = &self.corestrictions[s - 1];
                    if f.is_zero() {
                        continue;
                    }
                    let mut prefix = 0i64;
                    for i in 0..=n - s {
                        if let Some(v) = f.get(&word[i..i + s]) {
                            let sign = parity_sign((self.degree as i64 * prefix) % 2 != 0);
                            for (b, c) in v.terms() {
                                let mut w = word[..i].to_vec();
                                w.push(b);
                                w.extend_from_slice(&word[i + s..]);
                                add_word(&mut out, w, &c.clone().signed(sign));
                            }
                        }
                        prefix += word[i].0 as i64;
                    }
                }
            }
            Flavor::Symmetric => {
                let degrees: Vec<i32> = word.iter().map(|b| b.0).collect();
                for s in 1..=n.min(self.truncation) {
                    let f = &self.corestrictions[s - 1];
                    if f.is_zero() {
                        continue;
                    }
                    for sigma in unshuffles_unchecked(s, n) {
                        let images = sigma.images();
                        let first: Vec<Basis> = images[..s].iter().map(|&p| word[p]).collect();
                        let Some(v) = f.get(&first) else {
                            continue;
                        };
                        let eps = koszul_sign_unchecked(images, &degrees);
                        for (b, c) in v.terms() {
                            let mut w = Vec::with_capacity(n - s + 1);
                            w.push(b);
                            w.extend(images[s..].iter().map(|&p| word[p]));
                            if let Some((sg, w)) = canonical(w) {
                                add_word(&mut out, w, &c.clone().signed(eps * sg));
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn apply_vector(&self, v: &WordVector) -> WordVector {
        let mut out = WordVector::new();
        for (w, c) in v {
            for (w2, c2) in self.apply(w) {
                add_word(&mut out, w2, &(c * &c2));
            }
        }
        out
    }

    /// Reads corestrictions off an arbitrary degree-`degree` map on words.
    fn from_action<F: Fn(&[Basis]) -> WordVector>(
        space: GradedSpace,
        degree: i32,
        flavor: Flavor,
        truncation: usize,
        action: F,
    ) -> Self {
        let mut table =
            Self::zero(space, degree, flavor, truncation).expect("N ≥ 2 already checked");
        for w in table.words() {
            let image = action(&w);
            let value = Element::from_terms(
                image
                    .iter()
                    .filter(|(word, _)| word.len() == 1)
                    .map(|(word, c)| (word[0], c.clone())),
            );
            if value.is_zero() {
                continue;
            }
            let f = &mut table.corestrictions[w.len() - 1];
            match flavor {
                Flavor::Tensor => f.set(&w, value).expect("degree forced by the action"),
                Flavor::Symmetric => {
                    for sigma in Permutation::all(w.len()) {
                        let t = sigma.permute(&w);
                        let (sg, _) = canonical(t.clone()).expect("w is a nonzero word");
                        f.set(&t, value.scaled(&Rational::from_sign(sg)))
                            .expect("degree forced by the action");
                    }
                }
            }
        }
        table
    }

    /// The first word on which `self` differs from `action`.
    fn action_mismatch<F: Fn(&[Basis]) -> WordVector>(&self, action: F) -> Option<Vec<Basis>> {
        self.words()
            .into_iter()
            .find(|w| self.apply(w) != action(w))
    }

    /// `θ²` on words of length `≤ N`, as a coderivation of degree `2d`.
    pub fn square(&self) -> CoderivationTable {
        let action = |w: &[Basis]| self.apply_vector(&self.apply(w));
        let sq = Self::from_action(
            self.space.clone(),
            2 * self.degree,
            self.flavor,
            self.truncation,
            action,
        );
        debug_assert!(self.degree % 2 == 0 || sq.action_mismatch(action).is_none());
        sq
    }

    fn coproduct(&self, word: &[Basis]) -> PairVector {
        let mut out = PairVector::new();
        let n = word.len();
        match self.flavor {
            Flavor::Tensor => {
                for i in 1..n {
                    add_pair(
                        &mut out,
                        (word[..i].to_vec(), word[i..].to_vec()),
                        &Rational::one(),
                    );
                }
            }
            Flavor::Symmetric => {
                let degrees: Vec<i32> = word.iter().map(|b| b.0).collect();
                for i in 1..n {
                    for sigma in unshuffles_unchecked(i, n) {
                        let images = sigma.images();
                        let eps = koszul_sign_unchecked(images, &degrees);
                        let left = images[..i].iter().map(|&p| word[p]).collect();
                        let right = images[i..].iter().map(|&p| word[p]).collect();
                        let (Some((s1, l)), Some((s2, r))) = (canonical(left), canonical(right))
                        else {
                            continue;
                        };
                        add_pair(&mut out, (l, r), &Rational::from_sign(eps * s1 * s2));
                    }
                }
            }
        }
        out
    }

    /// The first word `w` with `Δθ(w) ≠ (θ⊗id + id⊗θ)Δ(w)`; `None` means the
    /// table really acts as a coderivation through length `N`.
    pub fn comultiplication_defect(&self) -> Option<Vec<Basis>> {
        self.words().into_iter().find(|w| {
            let mut lhs = PairVector::new();
            for (x, c) in self.apply(w) {
                for (k, c2) in self.coproduct(&x) {
                    add_pair(&mut lhs, k, &(&c * &c2));
                }
            }
            let mut rhs = PairVector::new();
            for ((x, y), c) in self.coproduct(w) {
                for (x2, c2) in self.apply(&x) {
                    add_pair(&mut rhs, (x2, y.clone()), &(&c * &c2));
                }
                let xdeg: i64 = x.iter().map(|b| b.0 as i64).sum();
                let sign = parity_sign((self.degree as i64 * xdeg) % 2 != 0);
                for (y2, c2) in self.apply(&y) {
                    add_pair(&mut rhs, (x.clone(), y2), &(&c * &c2).signed(sign));
                }
            }
            lhs != rhs
        })
    }
}

/// `[θ, φ] = θφ − (−1)^{|θ||φ|} φθ`.
pub fn coderivation_bracket(
    a: &CoderivationTable,
    b: &CoderivationTable,
) -> Result<CoderivationTable> {
    if a.flavor != b.flavor {
        return Err(Error::FlavorMismatch);
    }
    if a.truncation != b.truncation {
        return Err(Error::OrderMismatch {
            left: a.truncation,
            right: b.truncation,
        });
    }
    if a.space != b.space {
        return Err(Error::Malformed(
            "coderivations act on different spaces".into(),
        ));
    }
    let sign = parity_sign((a.degree as i64 * b.degree as i64) % 2 != 0);
    let action = |w: &[Basis]| {
        let mut out = a.apply_vector(&b.apply(w));
        for (x, c) in b.apply_vector(&a.apply(w)) {
            add_word(&mut out, x, &c.signed(-sign));
        }
        out
    };
    let out = CoderivationTable::from_action(
        a.space.clone(),
        a.degree + b.degree,
        a.flavor,
        a.truncation,
        action,
    );
    debug_assert!(out.action_mismatch(action).is_none());
    Ok(out)
}

/// `θ` built from structure operations together with `θ²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoderivationLift {
    pub theta: CoderivationTable,
    pub square: CoderivationTable,
}

impl CoderivationLift {
    /// `true` when `θ² = 0` on all words of length `≤ N`.
    pub fn is_differential(&self) -> bool {
        self.square.is_zero()
    }
}

/// `V ↦ W` on degrees: `↓V` for L∞ data, `↓` of the regraded `V^{−i}` for A∞
/// data (whose differential lowers degree).
fn to_shifted(flavor: Flavor) -> fn(i32) -> i32 {
    match flavor {
        Flavor::Symmetric => |d| d - 1,
        Flavor::Tensor => |d| -d - 1,
    }
}

fn from_shifted(flavor: Flavor) -> fn(i32) -> i32 {
    match flavor {
        Flavor::Symmetric => |d| d + 1,
        Flavor::Tensor => |d| -d - 1,
    }
}

/// Degree of the `k`-ary operation on `V` that a degree-1 coderivation encodes.
fn operation_degree(flavor: Flavor, k: usize) -> i32 {
    match flavor {
        Flavor::Symmetric => 2 - k as i32,
        Flavor::Tensor => k as i32 - 2,
    }
}

/// The sign in `f_k(↓v₁, …, ↓v_k) = ± ↓m_k(v₁, …, v_k)`: the Koszul sign of
/// `↓^{⊗k}` times a twist depending only on `k`.
pub(crate) fn transport_sign(flavor: Flavor, inputs: &[Basis]) -> i32 {
    let k = inputs.len();
    let koszul: i64 = inputs
        .iter()
        .enumerate()
        .map(|(p, b)| (k - 1 - p) as i64 * b.0 as i64)
        .sum();
    let twist = match flavor {
        Flavor::Symmetric => k * (k + 1) / 2,
        Flavor::Tensor => k * (k - 1) / 2,
    };
    parity_sign((koszul + twist as i64).rem_euclid(2) != 0)
}

fn transport(
    m: &GradedMultilinearMap,
    flavor: Flavor,
    source_degree: fn(i32) -> i32,
    target: &mut GradedMultilinearMap,
    from_v: bool,
) {
    for (inputs, out) in m.entries() {
        let mapped: Vec<Basis> = inputs.iter().map(|b| (source_degree(b.0), b.1)).collect();
        let value = Element::from_terms(
            out.terms()
                .map(|(b, c)| ((source_degree(b.0), b.1), c.clone())),
        );
        let sign = transport_sign(flavor, if from_v { inputs } else { &mapped });
        target.add_unchecked(&mapped, &value, &Rational::from_sign(sign));
    }
}

/// Builds `θ` on words of length `≤ truncation` from L∞ operations (symmetric
/// flavor, degrees `2 − k`) or A∞ operations (tensor flavor, degrees `k − 2`),
/// and its square.
pub fn lift_to_coderivation(
    maps: &[GradedMultilinearMap],
    flavor: Flavor,
    truncation: usize,
) -> Result<CoderivationLift> {
    if truncation < 2 {
        return Err(Error::TruncationTooSmall { truncation });
    }
    let Some(first) = maps.first() else {
        return Err(Error::Malformed("no operations to lift".into()));
    };
    let v = first.domain().clone();
    for m in maps {
        let k = m.arity();
        if m.domain() != &v || m.codomain() != &v {
            return Err(Error::Malformed(format!(
                "operation of arity {k} lives on a different space"
            )));
        }
        if k == 0 || k > truncation {
            return Err(Error::BadRange {
                what: "arity",
                value: k,
                bound: truncation,
            });
        }
        let expected = operation_degree(flavor, k);
        if m.degree() != expected {
            return Err(Error::DegreeMismatch {
                expected,
                found: m.degree(),
            });
        }
        if flavor == Flavor::Symmetric {
            if let Some(inputs) = m.antisymmetry_witness() {
                return Err(Error::NotAntisymmetric { arity: k, inputs });
            }
        }
    }
    let w = v.regraded(to_shifted(flavor));
    let mut cores = Vec::with_capacity(maps.len());
    for m in maps {
        let mut f = GradedMultilinearMap::zero(m.arity(), 1, w.clone(), w.clone());
        transport(m, flavor, to_shifted(flavor), &mut f, true);
        cores.push(f);
    }
    let theta = CoderivationTable::new(w, 1, flavor, truncation, cores)?;
    let square = theta.square();
    Ok(CoderivationLift { theta, square })
}

/// The operations on `V` encoded by a degree-1 coderivation, arities `1..=N`.
pub fn lower_from_coderivation(table: &CoderivationTable) -> Result<Vec<GradedMultilinearMap>> {
    if table.degree != 1 {
        return Err(Error::DegreeMismatch {
            expected: 1,
            found: table.degree,
        });
    }
    let back = from_shifted(table.flavor);
    let v = table.space.regraded(back);
    Ok(table
        .corestrictions
        .iter()
        .map(|f| {
            let k = f.arity();
            let mut m = GradedMultilinearMap::zero(
                k,
                operation_degree(table.flavor, k),
                v.clone(),
                v.clone(),
            );
            transport(f, table.flavor, back, &mut m, false);
            m
        })
        .collect())
}
