//! Deterministic text reports for instances.
//!
//! Reports are `key: value` lines in a fixed order. Identical instance text
//! (after canonical serialization) gives byte-identical reports.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::amplitude::rep_amplitude;
use crate::error::Result;
use crate::ext::ExtField;
use crate::hall::{classify_generators, HallDecomposition};
use crate::instance::{Instance, FORMAT_VERSION};
use crate::matrix::Vector;
use crate::symplectic::{drop_and_eig, toric_dimension};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hex SHA-256 of the canonical serialization.
pub fn digest(inst: &Instance) -> String {
    let hash = Sha256::digest(inst.serialize().as_bytes());
    hash.iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn vector(v: &Vector) -> String {
    let parts: Vec<String> = v.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(" "))
}

fn header(out: &mut String, inst: &Instance, kind: &str) {
    let _ = writeln!(out, "format: {FORMAT_VERSION}");
    let _ = writeln!(out, "report: {kind}");
    let _ = writeln!(out, "version: transvect {VERSION}");
    let _ = writeln!(out, "digest: sha256:{}", digest(inst));
    let _ = writeln!(out, "prime: {}", inst.prime);
    let _ = writeln!(out, "dim: {}", inst.dim);
}

fn decomposition(out: &mut String, d: &HallDecomposition, gens: &[crate::matrix::Matrix]) -> Result<()> {
    let _ = writeln!(out, "transvections: {}", d.transvections().len());
    let _ = writeln!(out, "transvection-group-order: {}", d.transvection_group().len());
    let _ = writeln!(out, "blocks: {}", d.block_count());
    let _ = writeln!(out, "block-dim: {}", d.block_dim());
    let _ = writeln!(out, "stabilizer-order: {}", d.stabilizer().len());
    for (i, b) in d.blocks().blocks().iter().enumerate() {
        let basis: Vec<String> = b.basis().iter().map(vector).collect();
        let _ = writeln!(out, "block {}: {}", i + 1, basis.join(" "));
    }
    for (i, g) in gens.iter().enumerate() {
        let _ = writeln!(out, "phi gen {}: {}", i + 1, d.phi_image(g)?);
    }
    Ok(())
}

/// The amplitude lines for `inst`, or an `amplitude-error` line when the
/// image does not define a representation of `E^×`.
fn amplitude_lines(out: &mut String, inst: &Instance) -> Result<()> {
    let Some(a) = &inst.amplitude else {
        return Ok(());
    };
    let _ = writeln!(out, "amplitude-degree: {}", a.degree);
    let field = match ExtField::new(inst.prime as u64, a.degree) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(out, "amplitude-error: {e}");
            return Ok(());
        }
    };
    match rep_amplitude(&a.image, &field) {
        Ok(r) => {
            for (i, s) in r.summands.iter().enumerate() {
                let digits: Vec<String> = s.character.digits.iter().map(u32::to_string).collect();
                let _ = writeln!(
                    out,
                    "summand {}: degree {} exponent {} digits [{}] amplitude {}",
                    i + 1,
                    s.degree,
                    s.character.exponent,
                    digits.join(" "),
                    s.character.amplitude
                );
            }
            let _ = writeln!(out, "amplitude: {}", r.overall);
        }
        Err(e @ crate::Error::InvariantViolation(_)) => return Err(e),
        Err(e) => {
            let _ = writeln!(out, "amplitude-error: {e}");
        }
    }
    Ok(())
}

/// Closure, classification and (if present) the amplitude section.
pub fn classify_report(inst: &Instance, cap: usize) -> Result<String> {
    let space = inst.space()?;
    let mut out = String::new();
    header(&mut out, inst, "classify");
    let _ = writeln!(out, "generators: {}", inst.generators.len());
    let (c, table) = classify_generators(&space, &inst.generators, cap)?;
    match &table {
        Some(t) => {
            let _ = writeln!(out, "order: {}", t.len());
        }
        None => {
            let _ = writeln!(out, "order: cap-exceeded {cap}");
        }
    }
    let _ = writeln!(out, "verdict: {}", c.verdict);
    if let Some(k) = c.kernel_irreducible {
        let _ = writeln!(out, "kernel-irreducible: {}", if k { "yes" } else { "no" });
    }
    if let Some(d) = &c.decomposition {
        decomposition(&mut out, d, &inst.generators)?;
    }
    amplitude_lines(&mut out, inst)?;
    Ok(out)
}

/// Only the amplitude section; `None` if the instance has none.
pub fn amplitude_report(inst: &Instance) -> Result<Option<String>> {
    let Some(a) = &inst.amplitude else {
        return Ok(None);
    };
    let mut out = String::new();
    header(&mut out, inst, "amplitude");
    let field = ExtField::new(inst.prime as u64, a.degree)?;
    let r = rep_amplitude(&a.image, &field)?;
    let _ = writeln!(out, "amplitude-degree: {}", a.degree);
    for (i, s) in r.summands.iter().enumerate() {
        let digits: Vec<String> = s.character.digits.iter().map(u32::to_string).collect();
        let _ = writeln!(
            out,
            "summand {}: degree {} exponent {} digits [{}] amplitude {}",
            i + 1,
            s.degree,
            s.character.exponent,
            digits.join(" "),
            s.character.amplitude
        );
    }
    let _ = writeln!(out, "amplitude: {}", r.overall);
    Ok(Some(out))
}

/// Drop, toric dimension and semistability of each generator.
pub fn toric_report(inst: &Instance) -> Result<String> {
    let space = inst.space()?;
    let mut out = String::new();
    header(&mut out, inst, "toric");
    for (i, g) in inst.generators.iter().enumerate() {
        let (drop, _) = drop_and_eig(g);
        let line = match toric_dimension(g, &space) {
            Ok(t) => format!("gen {}: drop {drop} toric {t} semistable-unipotent yes", i + 1),
            Err(_) => format!("gen {}: drop {drop} toric - semistable-unipotent no", i + 1),
        };
        let _ = writeln!(out, "{line}");
    }
    Ok(out)
}
