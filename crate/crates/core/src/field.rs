//! Prime fields `F_p` for odd primes `p`.
//!
//! Residues are plain `u32` values in `[0, p)`. Matrices store them as `u16`,
//! so the modulus is capped at the largest 16-bit prime.

use std::fmt;

use crate::error::{Error, Result};

pub const MAX_PRIME: u32 = 65521;

/// Trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub(crate) fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub(crate) fn pow_mod(mut a: u32, mut e: u128, p: u32) -> u32 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse by Fermat; `a` must be nonzero mod `p`.
#[inline]
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0);
    pow_mod(a, (p - 2) as u128, p)
}

/// The prime field `F_p`, `p` odd.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if p > MAX_PRIME as u64 {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(Self { p: p as u32 })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn elem(&self, v: u64) -> FieldElement {
        FieldElement {
            value: (v % self.p as u64) as u32,
            p: self.p,
        }
    }

    pub fn reduce_signed(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        add_mod(a, b, self.p)
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        sub_mod(a, b, self.p)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        mul_mod(a, b, self.p)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        neg_mod(a, self.p)
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(inv_mod(a, self.p))
    }

    pub fn pow(&self, a: u32, e: u128) -> u32 {
        pow_mod(a, e, self.p)
    }

    /// Multiplicative order of a nonzero residue.
    pub fn order(&self, a: u32) -> Result<u32> {
        if a % self.p == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Ok(k)
    }

    /// Least residue generating `F_p^×`.
    pub fn least_generator(&self) -> u32 {
        (1..self.p)
            .find(|&a| self.order(a).ok() == Some(self.p - 1))
            .expect("F_p^× is cyclic")
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// A residue tagged with its modulus, so mixing fields is caught at runtime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u32,
    p: u32,
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::FieldMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    fn with(&self, value: u32) -> Self {
        Self { value, p: self.p }
    }

    pub fn try_add(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        Ok(self.with(add_mod(self.value, rhs.value, self.p)))
    }

    pub fn try_sub(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        Ok(self.with(sub_mod(self.value, rhs.value, self.p)))
    }

    pub fn try_mul(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        Ok(self.with(mul_mod(self.value, rhs.value, self.p)))
    }

    pub fn try_div(self, rhs: Self) -> Result<Self> {
        self.check(&rhs)?;
        self.try_mul(rhs.inv()?)
    }

    pub fn inv(self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.with(inv_mod(self.value, self.p)))
    }

    pub fn pow(self, e: u128) -> Self {
        self.with(pow_mod(self.value, e, self.p))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl std::ops::Neg for FieldElement {
    type Output = Self;

    fn neg(self) -> Self {
        self.with(neg_mod(self.value, self.p))
    }
}
