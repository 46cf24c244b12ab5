//! Dense univariate polynomials over `F_p`.

use std::cmp::Ordering;
use std::fmt;

use crate::field::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};

/// Coefficients stored low degree first, with no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(p: u32, mut coeffs: Vec<u32>) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        let mut poly = Self { p, coeffs };
        poly.trim();
        poly
    }

    pub fn zero(p: u32) -> Self {
        Self { p, coeffs: vec![] }
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn constant(p: u32, c: u32) -> Self {
        Self::new(p, vec![c])
    }

    /// The monomial `X`.
    pub fn x(p: u32) -> Self {
        Self::new(p, vec![0, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..n).map(|i| add_mod(self.coeff(i), other.coeff(i), self.p)).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.p,
            (0..n).map(|i| sub_mod(self.coeff(i), other.coeff(i), self.p)).collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u64;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::new(self.p, out.into_iter().map(|c| c as u32).collect())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let p = self.p;
        let lead_inv = inv_mod(divisor.leading(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(p), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = mul_mod(rem[k + dd], lead_inv, p);
            quot[k] = c;
            if c != 0 {
                for (j, &b) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] = sub_mod(rem[k + j], mul_mod(c, b, p), p);
                }
            }
        }
        rem.truncate(dd);
        (Self::new(p, quot), Self::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.divrem(divisor).1
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, (i as u64 % self.p as u64) as u32, self.p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| add_mod(mul_mod(acc, x, self.p), c, self.p))
    }

    pub fn mul_mod(&self, other: &Self, modulus: &Self) -> Self {
        self.mul(other).rem(modulus)
    }

    pub fn pow_mod(&self, mut e: u128, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = Self::one(self.p).rem(modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, modulus);
            }
            base = base.mul_mod(&base, modulus);
            e >>= 1;
        }
        acc
    }

    /// Ben-Or test: `f` of degree `d` is irreducible iff
    /// `gcd(X^(p^i) - X, f) = 1` for every `1 <= i <= d/2`.
    pub fn is_irreducible(&self) -> bool {
        let d = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(d) => d,
        };
        let f = self.monic();
        let x = Self::x(self.p);
        let mut frob = x.clone();
        for _ in 1..=d / 2 {
            frob = frob.pow_mod(self.p as u128, &f);
            if f.gcd(&frob.sub(&x)).degree() != Some(0) {
                return false;
            }
        }
        true
    }

    pub fn is_squarefree(&self) -> bool {
        if self.is_zero() {
            return false;
        }
        self.gcd(&self.derivative()).degree() == Some(0) || self.degree() == Some(0)
    }

    /// Monic irreducible factors of a squarefree polynomial, sorted by
    /// `(degree, coefficients)`.
    ///
    /// Distinct-degree splitting followed by a Cantor-Zassenhaus equal-degree
    /// split that walks the candidate polynomials in a fixed order instead of
    /// sampling them, so the output does not depend on any RNG.
    pub fn factor_squarefree(&self) -> Vec<Poly> {
        assert!(self.is_squarefree(), "factor_squarefree needs a squarefree input");
        let p = self.p;
        let x = Self::x(p);
        let mut rest = self.monic();
        let mut factors = Vec::new();
        let mut frob = x.clone();
        let mut i = 0usize;
        while rest.degree().unwrap_or(0) > 0 {
            i += 1;
            if 2 * i > rest.degree().unwrap() {
                factors.push(rest.clone());
                break;
            }
            frob = frob.pow_mod(p as u128, &rest);
            let g = rest.gcd(&frob.sub(&x));
            if g.degree().unwrap() > 0 {
                equal_degree_split(&g, i, &mut factors);
                rest = rest.divrem(&g).0;
                frob = frob.rem(&rest);
            }
        }
        factors.sort_by(poly_order);
        factors
    }
}

fn poly_order(a: &Poly, b: &Poly) -> Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()))
}

/// Splits `g`, a product of distinct monic irreducibles of degree `k`.
fn equal_degree_split(g: &Poly, k: usize, out: &mut Vec<Poly>) {
    let n = g.degree().unwrap();
    if n == k {
        out.push(g.monic());
        return;
    }
    let p = g.p;
    let exp = (p as u128).pow(k as u32).saturating_sub(1) / 2;
    let one = Poly::one(p);
    let mut index = 1u128;
    loop {
        let a = poly_from_index(p, index);
        index += 1;
        if a.degree().unwrap_or(0) >= n {
            unreachable!("no splitting polynomial found below the degree bound");
        }
        let mut d = g.gcd(&a);
        if d.degree() == Some(0) {
            let h = a.pow_mod(exp, g).sub(&one);
            d = g.gcd(&h);
        }
        let dd = d.degree().unwrap_or(0);
        if dd > 0 && dd < n {
            equal_degree_split(&d, k, out);
            equal_degree_split(&g.divrem(&d).0, k, out);
            return;
        }
    }
}

/// Polynomial whose coefficient vector is the base-`p` expansion of `index`.
pub fn poly_from_index(p: u32, mut index: u128) -> Poly {
    let mut coeffs = Vec::new();
    while index > 0 {
        coeffs.push((index % p as u128) as u32);
        index /= p as u128;
    }
    Poly::new(p, coeffs)
}

/// Least monic irreducible polynomial of degree `d`, ordered by the
/// coefficients from `X^(d-1)` down to the constant term.
pub fn least_irreducible(p: u32, d: usize) -> Poly {
    let count = (p as u128).pow(d as u32);
    (0..count)
        .map(|t| {
            let mut c = poly_from_index(p, t).coeffs;
            c.resize(d, 0);
            c.push(1);
            Poly::new(p, c)
        })
        .find(Poly::is_irreducible)
        .expect("irreducible polynomials exist in every degree")
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "X")?,
                (1, c) => write!(f, "{c}X")?,
                (i, 1) => write!(f, "X^{i}")?,
                (i, c) => write!(f, "{c}X^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn neg(&self) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| neg_mod(c, self.p)).collect())
    }
}
