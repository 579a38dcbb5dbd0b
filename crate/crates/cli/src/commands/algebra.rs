use std::io::Write;
use std::path::Path;

use deforma_core::hochschild::cohomology as hochschild_cohomology;
use serde_json::json;

use super::{io, Verdict};
use crate::error::Result;
use crate::files::{cochain_to_json, read_algebra, write_json, SCHEMA_VERSION};
use crate::format;

pub fn check_assoc(file: &Path, out: &mut dyn Write) -> Result<Verdict> {
    let a = read_algebra(file)?;
    match a.associativity_witness() {
        None => {
            writeln!(out, "associative").map_err(io)?;
            Ok(Verdict::Holds)
        }
        Some([i, j, k, r]) => {
            let l = a.labels();
            writeln!(
                out,
                "not associative: coefficient of {} differs in ({} {}) {} and {} ({} {})",
                l[r], l[i], l[j], l[k], l[i], l[j], l[k]
            )
            .map_err(io)?;
            writeln!(out, "witness (i, j, k, r) = ({i}, {j}, {k}, {r})").map_err(io)?;
            Ok(Verdict::Fails)
        }
    }
}

pub fn cohomology(
    file: &Path,
    degree: usize,
    json_out: Option<&Path>,
    out: &mut dyn Write,
) -> Result<Verdict> {
    let a = read_algebra(file)?;
    let report = hochschild_cohomology(&a, degree)?;
    let n = degree;
    let mut lines = vec![
        format!("H^{n}(A, A) of a {}-dimensional algebra", a.dim()),
        format!("dim C^{n} = {}", report.dim_cochains),
        format!("dim Z^{n} = {}", report.dim_cocycles),
        format!("dim B^{n} = {}", report.dim_coboundaries),
        format!("betti_{n} = {}", report.betti),
    ];
    match n {
        0 => lines.push(format!("center: dimension {}", report.dim_cocycles)),
        1 => {
            lines.push(format!("derivations: dimension {}", report.dim_cocycles));
            lines.push(format!(
                "inner derivations: dimension {}",
                report.dim_coboundaries
            ));
        }
        _ => {}
    }
    for (k, c) in report.representatives.iter().enumerate() {
        lines.push(format!("representative {}:", k + 1));
        for line in format::cochain("f", c, a.labels()) {
            lines.push(format!("  {line}"));
        }
    }
    for line in lines {
        writeln!(out, "{line}").map_err(io)?;
    }
    if let Some(path) = json_out {
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "degree": n,
            "dim_cochains": report.dim_cochains,
            "dim_cocycles": report.dim_cocycles,
            "dim_coboundaries": report.dim_coboundaries,
            "betti": report.betti,
            "representatives": report.representatives.iter().map(cochain_to_json).collect::<Vec<_>>(),
        });
        write_json(path, &v)?;
    }
    Ok(Verdict::Holds)
}
