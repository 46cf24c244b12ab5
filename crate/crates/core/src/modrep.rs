//! `F_p[G]`-modules for matrix groups given by generators: spinning,
//! exhaustive irreducibility tests, minimal submodules and the semisimple
//! decomposition of a single element of order prime to `p`.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::poly::Poly;
use crate::subspace::{projective_line_count, projective_lines, Subspace};

pub const DEFAULT_LINE_LIMIT: u128 = 1_000_000;

/// Smallest subspace containing `seeds` and invariant under every generator.
pub fn spin(n: usize, p: u32, gens: &[Matrix], seeds: &[Vector]) -> Subspace {
    let mut span = Subspace::zero(n, p);
    let mut queue: Vec<Vector> = Vec::new();
    for s in seeds {
        if span.insert(s) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if span.is_full() {
            break;
        }
        for g in gens {
            let w = g.apply(&v);
            if span.insert(&w) {
                queue.push(w);
            }
        }
    }
    span
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    /// A proper nonzero invariant subspace: the spin of the first line (in
    /// line order) that does not generate everything.
    Reducible(Subspace),
}

impl Simplicity {
    pub fn is_simple(&self) -> bool {
        matches!(self, Simplicity::Simple)
    }

    pub fn witness(&self) -> Option<&Subspace> {
        match self {
            Simplicity::Simple => None,
            Simplicity::Reducible(w) => Some(w),
        }
    }
}

fn check_line_budget(n: usize, p: u32, limit: u128) -> Result<()> {
    let lines = projective_line_count(n, p);
    if lines > limit {
        return Err(Error::ScaleExceeded {
            what: "projective lines",
            size: lines,
            limit,
        });
    }
    Ok(())
}

/// Decides simplicity of `F_p^n` under `gens` by spinning every line.
pub fn is_simple(n: usize, p: u32, gens: &[Matrix], line_limit: u128) -> Result<Simplicity> {
    check_line_budget(n, p, line_limit)?;
    for line in projective_lines(n, p) {
        let s = spin(n, p, gens, &[line]);
        if !s.is_full() {
            return Ok(Simplicity::Reducible(s));
        }
    }
    Ok(Simplicity::Simple)
}

/// Simplicity of an invariant subspace `w` under `gens`: every line of `w`
/// must spin to all of `w`.
pub fn is_simple_subspace(w: &Subspace, gens: &[Matrix]) -> bool {
    let (n, p) = (w.ambient_dim(), w.modulus());
    !w.is_zero() && w.lines().into_iter().all(|line| spin(n, p, gens, &[line]) == *w)
}

/// A minimal nonzero invariant subspace: the least, in [`Subspace`]'s order
/// (dimension, then pivots, then entries), among the spins of all lines.
pub fn minimal_submodule(n: usize, p: u32, gens: &[Matrix], line_limit: u128) -> Result<Subspace> {
    check_line_budget(n, p, line_limit)?;
    let mut best: Option<Subspace> = None;
    for line in projective_lines(n, p) {
        // Lines come in the same order as one-dimensional subspaces, so the
        // first invariant line found is the least.
        if best.as_ref().is_some_and(|b| b.dim() == 1) {
            break;
        }
        let s = spin(n, p, gens, &[line]);
        if best.as_ref().is_none_or(|b| s < *b) {
            best = Some(s);
        }
    }
    best.ok_or(Error::NotSimpleModule)
}

/// One simple summand of `F_p^n` under a semisimple element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleSummand {
    pub subspace: Subspace,
    /// `dim_{F_p}` of the summand; equals the degree of `min_poly`.
    pub degree: usize,
    /// Irreducible minimal polynomial of the element restricted here.
    pub min_poly: Poly,
}

/// Splits `F_p^n` into simple `⟨g⟩`-modules, where `g^order = Id` and `p`
/// does not divide `order`.
///
/// Summands are grouped by irreducible factor of the minimal polynomial (in
/// factor order) and, within a primary component, are the cyclic spans of its
/// kernel basis vectors not already covered.
pub fn cyclic_module_decompose(g: &Matrix, order: u128) -> Result<Vec<SimpleSummand>> {
    let (n, p) = (g.dim(), g.modulus());
    if order % p as u128 == 0 {
        return Err(Error::NotSemisimple);
    }
    if !g.pow(order).is_identity() {
        return Err(Error::WrongOrder(order));
    }
    let gens = [g.clone()];
    let mu = g.min_poly();
    let mut summands = Vec::new();
    for f in mu.factor_squarefree() {
        let component = Subspace::span(n, p, g.eval_poly(&f).kernel());
        let mut covered = Subspace::zero(n, p);
        for v in component.basis() {
            if covered.contains(v) {
                continue;
            }
            let c = spin(n, p, &gens, std::slice::from_ref(v));
            covered = covered.sum(&c);
            summands.push(SimpleSummand {
                degree: c.dim(),
                subspace: c,
                min_poly: f.clone(),
            });
        }
    }
    Ok(summands)
}
