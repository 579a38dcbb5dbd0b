//! Small structures used by the tests and shipped with the command-line tool.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::graded::{Basis, Element, GradedMultilinearMap, GradedSpace};
use crate::rational::Rational;

use super::LInfinityStructure;

const SL2: [&str; 3] = ["e", "f", "h"];

/// `[e,f] = h`, `[h,e] = 2e`, `[h,f] = −2f` as `(i, j, [x_i, x_j])`.
fn sl2_table() -> Vec<(usize, usize, [i64; 3])> {
    vec![(0, 1, [0, 0, 1]), (2, 0, [2, 0, 0]), (2, 1, [0, -2, 0])]
}

/// An ungraded bracket from its values on pairs `i < j` or `i > j`; the
/// opposite order is filled in by antisymmetry.
pub fn lie_bracket(
    dim: usize,
    labels: &[&str],
    table: &[(usize, usize, Vec<Rational>)],
) -> GradedMultilinearMap {
    let space = GradedSpace::ungraded(dim)
        .with_labels(0, labels.iter().map(|s| s.to_string()).collect())
        .expect("one label per basis vector");
    let mut m = GradedMultilinearMap::zero(2, 0, space.clone(), space);
    for (i, j, out) in table {
        let v = Element::from_terms(out.iter().enumerate().map(|(l, c)| ((0, l), c.clone())));
        m.set(&[(0, *i), (0, *j)], v.clone()).expect("degree 0");
        m.set(&[(0, *j), (0, *i)], v.scaled(&-Rational::one()))
            .expect("degree 0");
    }
    m
}

fn integer_table(rows: Vec<(usize, usize, [i64; 3])>) -> Vec<(usize, usize, Vec<Rational>)> {
    rows.into_iter()
        .map(|(i, j, v)| (i, j, v.iter().map(|&x| Rational::from_integer(x)).collect()))
        .collect()
}

/// `sl₂` with basis `e, f, h` in degree 0.
pub fn sl2() -> LInfinityStructure {
    let l2 = lie_bracket(3, &SL2, &integer_table(sl2_table()));
    LInfinityStructure::new(l2.domain().clone(), vec![l2]).expect("antisymmetric by construction")
}

/// `sl₂` with `[h,e]` changed to `3e`; the Jacobiator on `(e, f, h)` is `h`.
pub fn non_jacobi() -> LInfinityStructure {
    let mut rows = sl2_table();
    rows[1].2 = [3, 0, 0];
    let l2 = lie_bracket(3, &SL2, &integer_table(rows));
    LInfinityStructure::new(l2.domain().clone(), vec![l2]).expect("antisymmetric by construction")
}

/// Basis of the exterior algebra `Λ(a, b)`: `1, a, b, ab`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Form {
    One,
    A,
    B,
    AB,
}

impl Form {
    fn degree(self) -> i32 {
        match self {
            Form::One => 0,
            Form::A | Form::B => 1,
            Form::AB => 2,
        }
    }

    fn slot(self) -> usize {
        match self {
            Form::One | Form::A | Form::AB => 0,
            Form::B => 1,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Form::One => "1",
            Form::A => "a",
            Form::B => "b",
            Form::AB => "ab",
        }
    }

    fn product(self, other: Form) -> Option<(i64, Form)> {
        use Form::*;
        match (self, other) {
            (One, x) | (x, One) => Some((1, x)),
            (A, B) => Some((1, AB)),
            (B, A) => Some((-1, AB)),
            _ => None,
        }
    }

    /// `d a = ab`, zero otherwise.
    fn differential(self) -> Option<(i64, Form)> {
        (self == Form::A).then_some((1, Form::AB))
    }
}

const FORMS: [Form; 4] = [Form::One, Form::A, Form::B, Form::AB];

fn basis_of(x: usize, w: Form) -> Basis {
    (w.degree(), 3 * w.slot() + x)
}

/// The dg-Lie algebra `sl₂ ⊗ Λ(a, b)` with `|a| = |b| = 1`, `d a = ab`,
/// `d(x⊗ω) = x⊗dω` and `[x⊗ω, y⊗η] = [x,y]⊗ωη`. Degrees 0, 1, 2 have
/// dimensions 3, 6, 3.
pub fn sl2_exterior_dg_lie() -> LInfinityStructure {
    let mut space = GradedSpace::new([(0, 3), (1, 6), (2, 3)]);
    for (degree, forms) in [
        (0, vec![Form::One]),
        (1, vec![Form::A, Form::B]),
        (2, vec![Form::AB]),
    ] {
        let labels: Vec<String> = forms
            .iter()
            .flat_map(|w| SL2.iter().map(move |x| alloc::format!("{x}{}", w.name())))
            .collect();
        space = space.with_labels(degree, labels).expect("sizes match");
    }
    let mut d = GradedMultilinearMap::zero(1, 1, space.clone(), space.clone());
    let mut bracket = GradedMultilinearMap::zero(2, 0, space.clone(), space.clone());
    let sl2 = sl2_table();
    let value = |i: usize, j: usize| -> [i64; 3] {
        for &(p, q, v) in &sl2 {
            if (p, q) == (i, j) {
                return v;
            }
            if (p, q) == (j, i) {
                return v.map(|c| -c);
            }
        }
        [0; 3]
    };
    for x in 0..3 {
        for w in FORMS {
            if let Some((c, dw)) = w.differential() {
                let out = Element::term(basis_of(x, dw), Rational::from_integer(c));
                d.set(&[basis_of(x, w)], out).expect("degree +1");
            }
        }
    }
    for x in 0..3 {
        for y in 0..3 {
            let xy = value(x, y);
            for w in FORMS {
                for e in FORMS {
                    let Some((c, we)) = w.product(e) else {
                        continue;
                    };
                    let out = Element::from_terms(
                        (0..3).map(|z| (basis_of(z, we), Rational::from_integer(c * xy[z]))),
                    );
                    bracket
                        .set(&[basis_of(x, w), basis_of(y, e)], out)
                        .expect("degree 0");
                }
            }
        }
    }
    LInfinityStructure::new(space, vec![d, bracket]).expect("graded antisymmetric")
}

/// `s = x⊗a + y⊗b` in [`sl2_exterior_dg_lie`], with `x, y` given in the basis
/// `e, f, h`. As a single element it satisfies `ds + ½[s,s] = 0` exactly when
/// `x + [x, y] = 0`.
pub fn exterior_degree_one(x: &[Rational; 3], y: &[Rational; 3]) -> Element {
    Element::from_terms(
        (0..3)
            .map(|z| (basis_of(z, Form::A), x[z].clone()))
            .chain((0..3).map(|z| (basis_of(z, Form::B), y[z].clone()))),
    )
}
