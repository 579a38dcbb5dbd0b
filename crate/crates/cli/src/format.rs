//! Human-readable rendering of vectors, cochains and basis tuples.

use deforma_core::graded::{Basis, Element, GradedSpace};
use deforma_core::hochschild::Cochain;
use deforma_core::Rational;

fn push_term(out: &mut String, c: &Rational, name: &str) {
    let negative = c.is_negative();
    let magnitude = if negative { -c.clone() } else { c.clone() };
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    if !magnitude.is_one() {
        out.push_str(&magnitude.to_string());
        out.push(' ');
    }
    out.push_str(name);
}

/// `Σ c_l e_l` with basis names, `0` when empty.
pub fn vector(coeffs: &[Rational], labels: &[String]) -> String {
    let mut out = String::new();
    for (c, name) in coeffs.iter().zip(labels) {
        if !c.is_zero() {
            push_term(&mut out, c, name);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn basis_name(space: &GradedSpace, b: Basis) -> String {
    match space.label(b) {
        Some(l) => l.to_string(),
        None => format!("({}, {})", b.0, b.1),
    }
}

pub fn element(e: &Element, space: &GradedSpace) -> String {
    let mut out = String::new();
    for (b, c) in e.terms() {
        push_term(&mut out, c, &basis_name(space, b));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn tuple(inputs: &[Basis], space: &GradedSpace) -> String {
    let names: Vec<String> = inputs.iter().map(|&b| basis_name(space, b)).collect();
    format!("({})", names.join(", "))
}

/// One line `f(e_i, …) = …` per nonzero value.
pub fn cochain(name: &str, c: &Cochain, labels: &[String]) -> Vec<String> {
    let d = c.dim();
    let n = c.arity();
    let mut lines = Vec::new();
    let mut inputs = vec![0usize; n];
    loop {
        let value = c.value(&inputs);
        if value.iter().any(|x| !x.is_zero()) {
            let args: Vec<&str> = inputs.iter().map(|&i| labels[i].as_str()).collect();
            lines.push(format!(
                "{name}({}) = {}",
                args.join(", "),
                vector(value, labels)
            ));
        }
        let Some(pos) = (0..n).rev().find(|&p| inputs[p] + 1 < d) else {
            break;
        };
        inputs[pos] += 1;
        for i in &mut inputs[pos + 1..] {
            *i = 0;
        }
    }
    lines
}

pub fn rationals(xs: &[Rational]) -> String {
    let parts: Vec<String> = xs.iter().map(Rational::to_string).collect();
    format!("[{}]", parts.join(", "))
}
