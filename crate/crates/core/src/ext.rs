//! Extension fields `F_{p^d}` as `F_p[X] / (f)`, with full power and log
//! tables.
//!
//! Elements are addressed internally by their *index*, the integer whose
//! base-`p` digits are the coefficients of the residue polynomial (constant
//! term first). Tables are sized `p^d`, so the order is capped at
//! [`MAX_EXT_ORDER`].

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{add_mod, sub_mod, PrimeField};
use crate::poly::{least_irreducible, Poly};

pub const MAX_EXT_ORDER: u128 = 300_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtFieldElement {
    coeffs: Vec<u32>,
}

impl ExtFieldElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for ExtFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `F_{p^d}` with a canonical modulus and generator.
#[derive(Clone)]
pub struct ExtField {
    base: PrimeField,
    degree: usize,
    modulus: Poly,
    generator: u32,
    /// `exp[k]` is the index of `γ^k`, for `0 <= k < q - 1`.
    exp: Vec<u32>,
    /// `log[i]` is the exponent of the element with index `i`; `log[0]` unused.
    log: Vec<u32>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("p", &self.base.modulus())
            .field("degree", &self.degree)
            .field("modulus", &self.modulus.to_string())
            .field("generator", &self.generator)
            .finish()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.degree == other.degree
    }
}

impl Eq for ExtField {}

impl ExtField {
    /// Builds `F_{p^d}` deterministically: the least irreducible monic modulus
    /// (see [`least_irreducible`]), then the generator of least index.
    pub fn new(p: u64, d: usize) -> Result<Self> {
        let base = PrimeField::new(p)?;
        if d == 0 {
            return Err(Error::ZeroDegree);
        }
        let order = (p as u128)
            .checked_pow(d as u32)
            .filter(|&q| q <= MAX_EXT_ORDER)
            .ok_or(Error::ScaleExceeded {
                what: "extension field order",
                size: (p as f64).powi(d as i32) as u128,
                limit: MAX_EXT_ORDER,
            })?;
        let modulus = least_irreducible(base.modulus(), d);
        let q = order as usize;

        let mut field = Self {
            base,
            degree: d,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        for cand in 1..q as u32 {
            let mut powers = Vec::with_capacity(q - 1);
            let mut x = 1u32;
            loop {
                powers.push(x);
                x = field.mul_index_slow(x, cand);
                if x == 1 || powers.len() >= q - 1 {
                    break;
                }
            }
            if x == 1 && powers.len() == q - 1 {
                let mut log = vec![0u32; q];
                for (k, &i) in powers.iter().enumerate() {
                    log[i as usize] = k as u32;
                }
                field.generator = cand;
                field.exp = powers;
                field.log = log;
                return Ok(field);
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic")
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn characteristic(&self) -> u32 {
        self.base.modulus()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.exp.len() as u128 + 1
    }

    /// Order of the unit group, `p^d - 1`.
    pub fn unit_order(&self) -> u128 {
        self.exp.len() as u128
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    pub fn generator(&self) -> ExtFieldElement {
        self.from_index(self.generator)
    }

    pub fn zero(&self) -> ExtFieldElement {
        self.from_index(0)
    }

    pub fn one(&self) -> ExtFieldElement {
        self.from_index(1)
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<ExtFieldElement> {
        if coeffs.len() != self.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                got: coeffs.len(),
            });
        }
        let p = self.characteristic();
        Ok(ExtFieldElement {
            coeffs: coeffs.iter().map(|&c| c % p).collect(),
        })
    }

    /// Embeds a prime-field residue.
    pub fn from_base(&self, c: u32) -> ExtFieldElement {
        self.from_index(c % self.characteristic())
    }

    pub fn index_of(&self, x: &ExtFieldElement) -> u32 {
        let p = self.characteristic();
        x.coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn from_index(&self, mut i: u32) -> ExtFieldElement {
        let p = self.characteristic();
        let coeffs = (0..self.degree)
            .map(|_| {
                let c = i % p;
                i /= p;
                c
            })
            .collect();
        ExtFieldElement { coeffs }
    }

    /// `γ^k` for any exponent.
    pub fn pow_generator(&self, k: u128) -> ExtFieldElement {
        self.from_index(self.exp[(k % self.unit_order()) as usize])
    }

    /// The exponent `m` in `[0, p^d - 1)` with `γ^m = x`.
    pub fn dlog(&self, x: &ExtFieldElement) -> Result<u128> {
        self.dlog_index(self.index_of(x))
    }

    pub(crate) fn dlog_index(&self, i: u32) -> Result<u128> {
        if i == 0 {
            return Err(Error::DlogOfZero);
        }
        Ok(self.log[i as usize] as u128)
    }

    pub(crate) fn exp_index(&self, k: u128) -> u32 {
        self.exp[(k % self.unit_order()) as usize]
    }

    pub fn add(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        let p = self.characteristic();
        ExtFieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| add_mod(x, y, p))
                .collect(),
        }
    }

    pub fn sub(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        let p = self.characteristic();
        ExtFieldElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| sub_mod(x, y, p))
                .collect(),
        }
    }

    pub fn mul(&self, a: &ExtFieldElement, b: &ExtFieldElement) -> ExtFieldElement {
        self.from_index(self.mul_index(self.index_of(a), self.index_of(b)))
    }

    pub fn inv(&self, a: &ExtFieldElement) -> Result<ExtFieldElement> {
        let i = self.index_of(a);
        if i == 0 {
            return Err(Error::DivisionByZero);
        }
        let k = self.log[i as usize] as u128;
        Ok(self.from_index(self.exp_index(self.unit_order() - k)))
    }

    pub fn pow(&self, a: &ExtFieldElement, e: u128) -> ExtFieldElement {
        let i = self.index_of(a);
        if i == 0 {
            return if e == 0 { self.one() } else { self.zero() };
        }
        let k = self.log[i as usize] as u128;
        self.from_index(self.exp_index(k * (e % self.unit_order())))
    }

    pub fn mul_index(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = self.log[a as usize] as u128 + self.log[b as usize] as u128;
        self.exp_index(k)
    }

    pub(crate) fn add_index(&self, a: u32, b: u32) -> u32 {
        let p = self.characteristic();
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.degree {
            out += add_mod(a % p, b % p, p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    /// Polynomial multiplication modulo the modulus; used while the tables
    /// are being built.
    fn mul_index_slow(&self, a: u32, b: u32) -> u32 {
        let p = self.characteristic();
        let pa = Poly::new(p, self.from_index(a).coeffs);
        let pb = Poly::new(p, self.from_index(b).coeffs);
        let r = pa.mul_mod(&pb, &self.modulus);
        let mut c = r.coeffs().to_vec();
        c.resize(self.degree, 0);
        self.index_of(&ExtFieldElement { coeffs: c })
    }

    /// Evaluates a polynomial over `F_p` at an element given by index.
    pub(crate) fn eval_poly_index(&self, f: &Poly, x: u32) -> u32 {
        f.coeffs()
            .iter()
            .rev()
            .fold(0, |acc, &c| self.add_index(self.mul_index(acc, x), c))
    }

    /// Roots of `f` in this field, as exponents of the generator, ascending.
    /// Zero is never reported.
    pub fn root_exponents(&self, f: &Poly) -> Vec<u128> {
        (0..self.unit_order())
            .filter(|&k| self.eval_poly_index(f, self.exp_index(k)) == 0)
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtFieldElement> + '_ {
        (0..self.order() as u32).map(|i| self.from_index(i))
    }
}
