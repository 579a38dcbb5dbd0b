use std::io::Write;
use std::path::Path;

use deforma_core::graded::GradedMultilinearMap;
use deforma_core::homotopy::{
    check_a_infinity, check_l_infinity, direct_sum, direct_sum_inclusions, generalized_mc_residual,
    lift_to_coderivation, mc_pushforward, AxiomFailure, Flavor, WeakMorphism,
};

use super::{io, HomotopyCommand, Verdict};
use crate::error::Result;
use crate::files::{
    morphism_components_from_json, read_json, read_structure, series_from_json, series_to_json,
    write_json, StructureFile, StructureKind,
};
use crate::format;

pub fn run(c: &HomotopyCommand, out: &mut dyn Write) -> Result<Verdict> {
    match c {
        HomotopyCommand::LinfCheck { file, max_n } => linf_check(file, max_n.get(), out),
        HomotopyCommand::AinfCheck { file, max_n } => ainf_check(file, max_n.get(), out),
        HomotopyCommand::CoderLift { file, truncation } => coder_lift(file, truncation.get(), out),
        HomotopyCommand::McPush {
            structure,
            series,
            morphism,
            target,
            sum_with,
            out: path,
        } => mc_push(
            structure,
            series,
            morphism.as_deref().zip(target.as_deref()),
            sum_with.as_deref(),
            path,
            out,
        ),
    }
}

fn say(out: &mut dyn Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(io)
}

/// Loads an L∞ structure, noting when the operations had to be projected.
fn load_linf(
    path: &Path,
    out: &mut dyn Write,
) -> Result<deforma_core::homotopy::LInfinityStructure> {
    let (l, changed) = read_structure(path)?.linf()?;
    if changed {
        say(
            out,
            &format!(
                "note: operations in {} replaced by their graded antisymmetrization",
                path.display()
            ),
        )?;
    }
    Ok(l)
}

fn report(
    name: &str,
    failure: Option<AxiomFailure>,
    max_n: usize,
    s: &StructureFile,
    out: &mut dyn Write,
) -> Result<Verdict> {
    match failure {
        None => {
            say(out, &format!("({name}_n) holds for n <= {max_n}"))?;
            Ok(Verdict::Holds)
        }
        Some(f) => {
            say(
                out,
                &format!(
                    "({name}_{}) fails at {}: {}",
                    f.n,
                    format::tuple(&f.inputs, &s.space),
                    format::element(&f.value, &s.space)
                ),
            )?;
            let raw: Vec<String> = f
                .inputs
                .iter()
                .map(|b| format!("({}, {})", b.0, b.1))
                .collect();
            say(out, &format!("n = {}; inputs [{}]", f.n, raw.join(", ")))?;
            Ok(Verdict::Fails)
        }
    }
}

fn linf_check(file: &Path, max_n: usize, out: &mut dyn Write) -> Result<Verdict> {
    let s = read_structure(file)?;
    let l = load_linf(file, out)?;
    report("L", check_l_infinity(&l, max_n), max_n, &s, out)
}

fn ainf_check(file: &Path, max_n: usize, out: &mut dyn Write) -> Result<Verdict> {
    let s = read_structure(file)?;
    let a = s.ainf()?;
    report("A", check_a_infinity(&a, max_n), max_n, &s, out)
}

fn coder_lift(file: &Path, truncation: usize, out: &mut dyn Write) -> Result<Verdict> {
    let s = read_structure(file)?;
    let (ops, flavor): (Vec<GradedMultilinearMap>, Flavor) = match s.kind {
        StructureKind::Linf => (
            load_linf(file, out)?
                .ops()
                .map(|(_, m)| m.clone())
                .collect(),
            Flavor::Symmetric,
        ),
        StructureKind::Ainf => (
            s.ainf()?.ops().map(|(_, m)| m.clone()).collect(),
            Flavor::Tensor,
        ),
    };
    if ops.is_empty() {
        say(out, "all operations vanish; theta = 0")?;
        return Ok(Verdict::Holds);
    }
    let lift = lift_to_coderivation(&ops, flavor, truncation)?;
    let coalgebra = match flavor {
        Flavor::Symmetric => "symmetric",
        Flavor::Tensor => "tensor",
    };
    match lift.square.first_nonzero() {
        None => {
            say(
                out,
                &format!(
                    "theta^2 = 0 on the {coalgebra} coalgebra through word length {truncation}"
                ),
            )?;
            Ok(Verdict::Holds)
        }
        Some((arity, word)) => {
            say(
                out,
                &format!(
                    "theta^2 != 0: corestriction {arity} is nonzero on {}",
                    format::tuple(&word, lift.square.space())
                ),
            )?;
            Ok(Verdict::Fails)
        }
    }
}

fn mc_push(
    structure: &Path,
    series: &Path,
    morphism: Option<(&Path, &Path)>,
    sum_with: Option<&Path>,
    path: &Path,
    out: &mut dyn Write,
) -> Result<Verdict> {
    let source = load_linf(structure, out)?;
    let s = series_from_json(&read_json(series)?, source.space())?;
    let f = if let Some((m, t)) = morphism {
        let target = load_linf(t, out)?;
        let components =
            morphism_components_from_json(&read_json(m)?, source.space(), target.space())?;
        WeakMorphism::new(source, target, components)?
    } else if let Some(other) = sum_with {
        let other = load_linf(other, out)?;
        let sum = direct_sum(&source, &other);
        let (inclusion, _) = direct_sum_inclusions(source.space(), other.space());
        WeakMorphism::strict(source, sum, inclusion)?
    } else {
        WeakMorphism::identity(&source)
    };
    let pushed = mc_pushforward(&f, &s)?;
    write_json(path, &series_to_json(&pushed))?;
    say(out, &format!("wrote {}", path.display()))?;
    let mut ok = true;
    for k in 1..=pushed.order() {
        let count = generalized_mc_residual(f.target(), &pushed, k)?.len();
        ok &= count == 0;
        say(
            out,
            &format!("order {k}: target residual has {count} nonzero entries"),
        )?;
    }
    Ok(Verdict::from_bool(ok))
}
