use std::io::Write;
use std::path::Path;

use deforma_core::deformations::{
    classify_infinitesimal, gauge_apply, gauge_equivalent, maurer_cartan_residual,
    obstruction_with, poisson_limit, GaugeSearch, TruncatedDeformation,
};
use deforma_core::hochschild::cohomology;

use super::{io, DeformCommand, Verdict};
use crate::error::{schema, Result};
use crate::files::{
    deformation_to_json, gauge_from_json, gauge_to_json, read_deformation, read_json, write_json,
};
use crate::format;

pub fn run(c: &DeformCommand, out: &mut dyn Write) -> Result<Verdict> {
    match c {
        DeformCommand::Validate { file, order } => validate(file, order.map(|k| k.get()), out),
        DeformCommand::Extend {
            file,
            order,
            out: path,
        } => extend(file, order.map(|k| k.get()), path, out),
        DeformCommand::Equivalent {
            first,
            second,
            out: path,
        } => equivalent(first, second, path.as_deref(), out),
        DeformCommand::Classify { file } => classify(file, out),
        DeformCommand::GaugeApply {
            gauge,
            file,
            out: path,
        } => {
            let x = gauge_from_json(&read_json(gauge)?)?;
            let d = read_deformation(file)?;
            let e = gauge_apply(&x, &d)?;
            write_json(path, &deformation_to_json(&e))?;
            say(out, &format!("wrote {}", path.display()))?;
            Ok(Verdict::Holds)
        }
        DeformCommand::McResidual { file, order } => mc_residual(file, order.map(|k| k.get()), out),
        DeformCommand::Poisson { file } => poisson(file, out),
    }
}

fn say(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(io)
}

fn truncated(file: &Path, order: Option<usize>) -> Result<TruncatedDeformation> {
    let d = read_deformation(file)?;
    match order {
        None => Ok(d),
        Some(k) if k <= d.order() => Ok(d.truncate(k)),
        Some(k) => Err(schema(format!(
            "--order {k} exceeds the order {} of {}",
            d.order(),
            file.display()
        ))),
    }
}

/// Prints the first failing equation, if any.
fn report_validity(d: &TruncatedDeformation, out: &mut dyn Write) -> Result<bool> {
    match d.validate()? {
        None => Ok(true),
        Some(f) => {
            let l = d.base().labels();
            let [a, b, c] = f.triple;
            say(
                out,
                &format!(
                    "(D_{}) fails on ({}, {}, {}); triple ({a}, {b}, {c})",
                    f.order, l[a], l[b], l[c]
                ),
            )?;
            Ok(false)
        }
    }
}

fn validate(file: &Path, order: Option<usize>, out: &mut dyn Write) -> Result<Verdict> {
    let d = truncated(file, order)?;
    let ok = report_validity(&d, out)?;
    if ok {
        say(out, &format!("valid through order {}", d.order()))?;
    }
    Ok(Verdict::from_bool(ok))
}

fn extend(file: &Path, order: Option<usize>, path: &Path, out: &mut dyn Write) -> Result<Verdict> {
    let mut d = read_deformation(file)?;
    let target = order.unwrap_or(d.order() + 1);
    if target < d.order() {
        return Err(schema(format!(
            "--order {target} is below the order {} of the input",
            d.order()
        )));
    }
    if !report_validity(&d, out)? {
        return Ok(Verdict::Fails);
    }
    let h3 = cohomology(d.base(), 3)?;
    while d.order() < target {
        let obs = obstruction_with(&d, &h3)?;
        match obs.extension_term {
            Some(mu) => d.push_term(mu)?,
            None => {
                say(
                    out,
                    &format!(
                        "obstruction to order {} does not vanish; H^3 coordinates {}",
                        d.order() + 1,
                        format::rationals(&obs.class_coords)
                    ),
                )?;
                return Ok(Verdict::Fails);
            }
        }
    }
    write_json(path, &deformation_to_json(&d))?;
    say(
        out,
        &format!("extended to order {target}; wrote {}", path.display()),
    )?;
    Ok(Verdict::Holds)
}

fn equivalent(
    first: &Path,
    second: &Path,
    path: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Verdict> {
    let d1 = read_deformation(first)?;
    let d2 = read_deformation(second)?;
    match gauge_equivalent(&d1, &d2)? {
        GaugeSearch::Equivalent(x) => {
            say(out, "equivalent")?;
            for (k, t) in x.terms().iter().enumerate() {
                for line in format::cochain(&format!("x_{}", k + 1), t, d1.base().labels()) {
                    say(out, &format!("  {line}"))?;
                }
            }
            if let Some(p) = path {
                write_json(p, &gauge_to_json(&x))?;
                say(out, &format!("wrote {}", p.display()))?;
            }
            Ok(Verdict::Holds)
        }
        GaugeSearch::Inconsistent { order } => {
            say(
                out,
                &format!("not equivalent: no gauge element matches at order {order}"),
            )?;
            Ok(Verdict::Fails)
        }
    }
}

fn classify(file: &Path, out: &mut dyn Write) -> Result<Verdict> {
    let d = read_deformation(file)?;
    if d.order() == 0 {
        return Err(schema("classify needs a deformation of order at least 1"));
    }
    let coords = classify_infinitesimal(d.base(), d.mu(1))?;
    say(out, &format!("betti_2 = {}", coords.len()))?;
    say(
        out,
        &format!("H^2 coordinates of mu_1: {}", format::rationals(&coords)),
    )?;
    if coords.iter().all(|c| c.is_zero()) {
        say(out, "mu_1 is a coboundary")?;
    }
    Ok(Verdict::Holds)
}

fn mc_residual(file: &Path, order: Option<usize>, out: &mut dyn Write) -> Result<Verdict> {
    let d = truncated(file, order)?;
    let mut ok = true;
    for k in 1..=d.order() {
        let r = maurer_cartan_residual(&d, k)?;
        let count = r.nonzero_count();
        ok &= count == 0;
        say(out, &format!("order {k}: {count} nonzero entries"))?;
    }
    Ok(Verdict::from_bool(ok))
}

fn poisson(file: &Path, out: &mut dyn Write) -> Result<Verdict> {
    let d = read_deformation(file)?;
    let r = poisson_limit(&d)?;
    let l = d.base().labels();
    let names = |idx: &[usize]| {
        let v: Vec<&str> = idx.iter().map(|&i| l[i].as_str()).collect();
        format!("({})", v.join(", "))
    };
    let line = |name: &str, ok: bool, witness: Option<String>| match witness {
        Some(w) if !ok => format!("{name}: false at {w}"),
        _ => format!("{name}: {ok}"),
    };
    say(
        out,
        &line(
            "antisymmetry",
            r.antisymmetry_ok,
            r.antisymmetry_witness.map(|w| names(&w)),
        ),
    )?;
    say(
        out,
        &line("jacobi", r.jacobi_ok, r.jacobi_witness.map(|w| names(&w))),
    )?;
    say(
        out,
        &line(
            "leibniz",
            r.leibniz_ok,
            r.leibniz_witness.map(|w| names(&w)),
        ),
    )?;
    for line in format::cochain("bracket", &r.bracket, l) {
        say(out, &format!("  {line}"))?;
    }
    Ok(Verdict::from_bool(r.all_ok()))
}
