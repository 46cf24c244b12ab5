//! Amplitudes of characters of `E^×` and of representations of `E^×` on
//! `F_p`-spaces, for a finite field `E = F_{p^d}`.
//!
//! A character `E^× → F̄^×` is `x ↦ i(x)^m` for an embedding `i` and a
//! unique `m ∈ [0, p^d - 1)`; its amplitude is the largest base-`p` digit of
//! `m`. Changing the embedding multiplies `m` by a power of `p`, which only
//! rotates the digits, so the amplitude is well defined while the digit
//! vector depends on the embedding. Here the embedding is the one fixed by the
//! canonical generator of [`ExtField`].
//!
//! For a representation given by the image `g` of that generator, every
//! eigenvalue of `g` satisfies `μ^(p^d - 1) = 1` and therefore lies in `E`
//! itself; `m` is its discrete logarithm in `E`.

use crate::error::{Error, Result};
use crate::ext::ExtField;
use crate::matrix::Matrix;
use crate::modrep::cyclic_module_decompose;
use crate::poly::Poly;
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterData {
    pub p: u32,
    pub d: usize,
    pub exponent: u128,
    /// Base-`p` digits of the exponent, least significant first, length `d`.
    pub digits: Vec<u32>,
    pub amplitude: u32,
}

/// Digits and amplitude of the character with exponent `m` on `F_{p^d}^×`.
pub fn char_amplitude(p: u32, d: usize, m: u128) -> Result<CharacterData> {
    let bound = (p as u128).pow(d as u32) - 1;
    if m >= bound {
        return Err(Error::ExponentOutOfRange { m, bound });
    }
    let mut rest = m;
    let digits: Vec<u32> = (0..d)
        .map(|_| {
            let digit = (rest % p as u128) as u32;
            rest /= p as u128;
            digit
        })
        .collect();
    let amplitude = digits.iter().copied().max().unwrap_or(0);
    Ok(CharacterData {
        p,
        d,
        exponent: m,
        digits,
        amplitude,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummandAmplitude {
    pub subspace: Subspace,
    pub degree: usize,
    pub min_poly: Poly,
    /// Exponents of all eigenvalues on the summand (one Frobenius orbit),
    /// ascending. The character uses the least.
    pub eigen_exponents: Vec<u128>,
    pub character: CharacterData,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmplitudeReport {
    pub field_degree: usize,
    pub summands: Vec<SummandAmplitude>,
    pub overall: u32,
}

/// Sorts out why `g^(p^d - 1) != Id`.
fn order_error(g: &Matrix, unit_order: u128) -> Error {
    let p = g.modulus() as u128;
    let limit = (p.pow(g.dim() as u32)).saturating_mul(p).max(unit_order) + 1;
    match g.order(limit) {
        Some(k) if k % p == 0 => Error::NotSemisimple,
        _ => Error::WrongOrder(unit_order),
    }
}

/// Least exponent `m` with `γ^m` a root of the irreducible `f`.
fn character_exponent(field: &ExtField, f: &Poly) -> Result<Vec<u128>> {
    let roots = field.root_exponents(f);
    if roots.is_empty() {
        return Err(Error::InvariantViolation(format!(
            "eigenvalue polynomial {f} has no root in F_{}^{}",
            field.characteristic(),
            field.degree()
        )));
    }
    Ok(roots)
}

/// Amplitude of the representation of `E^×` sending the canonical generator
/// of `field` to `g`.
pub fn rep_amplitude(g: &Matrix, field: &ExtField) -> Result<AmplitudeReport> {
    if g.modulus() != field.characteristic() {
        return Err(Error::FieldMismatch {
            left: field.characteristic(),
            right: g.modulus(),
        });
    }
    let n = field.unit_order();
    if !g.pow(n).is_identity() {
        return Err(order_error(g, n));
    }
    let mut summands = Vec::new();
    for s in cyclic_module_decompose(g, n)? {
        let eigen_exponents = character_exponent(field, &s.min_poly)?;
        let character = char_amplitude(field.characteristic(), field.degree(), eigen_exponents[0])?;
        summands.push(SummandAmplitude {
            subspace: s.subspace,
            degree: s.degree,
            min_poly: s.min_poly,
            eigen_exponents,
            character,
        });
    }
    let overall = summands.iter().map(|s| s.character.amplitude).max().unwrap_or(0);
    Ok(AmplitudeReport {
        field_degree: field.degree(),
        summands,
        overall,
    })
}

/// `amp(ρ)` alone. Isomorphic summands share a character, so only the
/// distinct irreducible factors of the minimal polynomial matter; no
/// decomposition is built.
pub fn amplitude_only(g: &Matrix, field: &ExtField) -> Result<u32> {
    let n = field.unit_order();
    if g.modulus() != field.characteristic() {
        return Err(Error::FieldMismatch {
            left: field.characteristic(),
            right: g.modulus(),
        });
    }
    if !g.pow(n).is_identity() {
        return Err(order_error(g, n));
    }
    let mut amp = 0;
    for f in g.min_poly().factor_squarefree() {
        let m = character_exponent(field, &f)?[0];
        amp = amp.max(char_amplitude(field.characteristic(), field.degree(), m)?.amplitude);
    }
    Ok(amp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_examples() {
        let c = char_amplitude(5, 2, 7).unwrap();
        assert_eq!(c.digits, vec![2, 1]);
        assert_eq!(c.amplitude, 2);
        let z = char_amplitude(7, 3, 0).unwrap();
        assert_eq!(z.digits, vec![0, 0, 0]);
        assert_eq!(z.amplitude, 0);
        assert_eq!(
            char_amplitude(3, 2, 8),
            Err(Error::ExponentOutOfRange { m: 8, bound: 8 })
        );
    }

    #[test]
    fn digits_reassemble_and_stay_restricted() {
        for (p, d) in [(3u32, 3usize), (5, 2), (7, 2)] {
            let bound = (p as u128).pow(d as u32) - 1;
            for m in 0..bound {
                let c = char_amplitude(p, d, m).unwrap();
                let back: u128 = c.digits.iter().rev().fold(0, |acc, &x| acc * p as u128 + x as u128);
                assert_eq!(back, m);
                assert!(c.digits.iter().any(|&x| x < p - 1));
                assert!(c.amplitude < p);
            }
        }
    }

    #[test]
    fn trivial_representation() {
        let e = ExtField::new(5, 2).unwrap();
        let r = rep_amplitude(&Matrix::identity(4, 5), &e).unwrap();
        assert_eq!(r.overall, 0);
        assert_eq!(r.summands.len(), 4);
        assert!(r.summands.iter().all(|s| s.character.amplitude == 0));
    }

    /// Multiplication by γ on E, written in the power basis 1, X, .., X^(d-1).
    fn multiplication_matrix(e: &ExtField) -> Matrix {
        let d = e.degree();
        let g = e.generator();
        let cols: Vec<Vec<u32>> = (0..d)
            .map(|j| {
                let mut basis = vec![0u32; d];
                basis[j] = 1;
                e.mul(&g, &e.element(&basis).unwrap()).coeffs().to_vec()
            })
            .collect();
        Matrix::from_columns(e.characteristic(), &cols)
    }

    #[test]
    fn regular_representation_has_amplitude_one() {
        for (p, d) in [(3u64, 2usize), (5, 2), (3, 3), (7, 2)] {
            let e = ExtField::new(p, d).unwrap();
            let g = multiplication_matrix(&e);
            let r = rep_amplitude(&g, &e).unwrap();
            assert_eq!(r.summands.len(), 1);
            assert_eq!(r.summands[0].degree, d);
            // The eigenvalues are the Frobenius conjugates γ^(p^j).
            let expect: Vec<u128> = {
                let mut v: Vec<u128> = (0..d as u32).map(|j| (p as u128).pow(j)).collect();
                v.sort();
                v
            };
            assert_eq!(r.summands[0].eigen_exponents, expect);
            assert_eq!(r.summands[0].character.exponent, 1);
            assert_eq!(r.overall, 1);
            assert_eq!(amplitude_only(&g, &e).unwrap(), 1);
        }
    }

    #[test]
    fn unipotent_image_is_not_semisimple() {
        let e = ExtField::new(5, 1).unwrap();
        let u = Matrix::from_signed(5, &[&[1, 1], &[0, 1]]);
        assert_eq!(rep_amplitude(&u, &e), Err(Error::NotSemisimple));
        assert_eq!(amplitude_only(&u, &e), Err(Error::NotSemisimple));
        // Order 3 does not divide 5 - 1.
        let c3 = Matrix::from_signed(5, &[&[0, -1], &[1, -1]]);
        assert_eq!(rep_amplitude(&c3, &e), Err(Error::WrongOrder(4)));
    }

    #[test]
    fn diagonal_exponents_are_discrete_logs() {
        // Over F_7 the canonical generator is 3: 2 = 3^2 and 4 = 3^4.
        let e = ExtField::new(7, 1).unwrap();
        let r = rep_amplitude(&Matrix::diagonal(7, &[2, 4]), &e).unwrap();
        let exps: Vec<u128> = r.summands.iter().map(|s| s.character.exponent).collect();
        assert_eq!(exps, vec![4, 2]);
        assert_eq!(r.overall, 4);
    }
}
