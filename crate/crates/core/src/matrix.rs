//! Square matrices over `F_p`.
//!
//! Vectors are columns; `m.apply(v)` is `m · v`. Entries are stored row-major
//! as `u16`, and the derived `Hash`/`Eq` on that buffer is the canonical key
//! used by the group tables.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{add_mod, inv_mod, mul_mod, neg_mod, sub_mod};
use crate::poly::Poly;

pub type Vector = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    p: u32,
    data: Box<[u16]>,
}

impl Matrix {
    pub fn zeros(n: usize, p: u32) -> Self {
        Self {
            n,
            p,
            data: vec![0u16; n * n].into_boxed_slice(),
        }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        Self::scalar(n, p, 1)
    }

    pub fn scalar(n: usize, p: u32, c: u32) -> Self {
        let mut m = Self::zeros(n, p);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn diagonal(p: u32, diag: &[u32]) -> Self {
        let mut m = Self::zeros(diag.len(), p);
        for (i, &c) in diag.iter().enumerate() {
            m.set(i, i, c);
        }
        m
    }

    /// Builds from rows; entries are reduced mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n, p);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        Ok(m)
    }

    /// Like [`Matrix::from_rows`] with signed entries, for readable literals.
    pub fn from_signed(p: u32, rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| v.rem_euclid(p as i64) as u32).collect())
            .collect();
        Self::from_rows(p, &rows).expect("square literal")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, cols: &[Vector]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(n, p);
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), n, "column length");
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.n + j] as u32
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.p);
        self.data[i * self.n + j] = v as u16;
    }

    pub fn row(&self, i: usize) -> Vector {
        (0..self.n).map(|j| self.get(i, j)).collect()
    }

    pub fn rows(&self) -> Vec<Vector> {
        (0..self.n).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.n).map(|j| self.column(j)).collect()
    }

    /// Row-major residues, one byte pair per entry.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        self.data.iter().flat_map(|v| v.to_le_bytes()).collect()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == (i == j) as u32))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert_eq!(self.p, other.p, "field mismatch");
        let n = self.n;
        let p = self.p as u64;
        let mut out = Self::zeros(n, self.p);
        for i in 0..n {
            let a = &self.data[i * n..(i + 1) * n];
            for j in 0..n {
                let mut acc = 0u64;
                for (k, &aik) in a.iter().enumerate() {
                    acc += aik as u64 * other.data[k * n + j] as u64;
                }
                out.data[i * n + j] = (acc % p) as u16;
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vector {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        let p = self.p as u64;
        (0..self.n)
            .map(|i| {
                let acc: u64 = (0..self.n).map(|j| self.get(i, j) as u64 * v[j] as u64).sum();
                (acc % p) as u32
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *o = add_mod(*o as u32, b as u32, self.p) as u16;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (o, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *o = sub_mod(*o as u32, b as u32, self.p) as u16;
        }
        out
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = mul_mod(*o as u32, c, self.p) as u16;
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = neg_mod(*o as u32, self.p) as u16;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.n, self.p);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// `self - Id`.
    pub fn minus_identity(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.n {
            out.set(i, i, sub_mod(self.get(i, i), 1, self.p));
        }
        out
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n;
        let p = self.p;
        let mut aug: Vec<Vec<u32>> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.extend((0..n).map(|j| (i == j) as u32));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut aug, p, n);
        if pivots.len() < n {
            return None;
        }
        let rows: Vec<Vec<u32>> = aug.into_iter().map(|r| r[n..].to_vec()).collect();
        Some(Self::from_rows(p, &rows).expect("square"))
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows();
        rref_in_place(&mut rows, self.p, self.n).len()
    }

    pub fn det(&self) -> u32 {
        let n = self.n;
        let p = self.p;
        let mut a = self.rows();
        let mut det = 1u32;
        for c in 0..n {
            let Some(r) = (c..n).find(|&r| a[r][c] != 0) else {
                return 0;
            };
            if r != c {
                a.swap(r, c);
                det = neg_mod(det, p);
            }
            det = mul_mod(det, a[c][c], p);
            let inv = inv_mod(a[c][c], p);
            let pivot = a[c].clone();
            for row in a.iter_mut().skip(c + 1) {
                let f = mul_mod(row[c], inv, p);
                if f != 0 {
                    for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                        *x = sub_mod(*x, mul_mod(f, y, p), p);
                    }
                }
            }
        }
        det
    }

    /// Basis of `{v : self · v = 0}`, one vector per free column, in reduced
    /// form (the free coordinate is 1, other free coordinates 0).
    pub fn kernel(&self) -> Vec<Vector> {
        let n = self.n;
        let p = self.p;
        let mut rows = self.rows();
        let pivots = rref_in_place(&mut rows, p, n);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; n];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = neg_mod(rows[r][f], p);
                }
                v
            })
            .collect()
    }

    /// `f(self)` by Horner's rule.
    pub fn eval_poly(&self, f: &Poly) -> Self {
        let mut acc = Self::zeros(self.n, self.p);
        for &c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..self.n {
                acc.set(i, i, add_mod(acc.get(i, i), c, self.p));
            }
        }
        acc
    }

    /// Characteristic polynomial `det(X·Id - self)`, via reduction to upper
    /// Hessenberg form.
    pub fn char_poly(&self) -> Poly {
        let n = self.n;
        let p = self.p;
        let mut h = self.rows();
        // Similarity transforms to Hessenberg form.
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = inv_mod(h[m][m - 1], p);
            for i in m + 1..n {
                let t = mul_mod(h[i][m - 1], inv, p);
                if t == 0 {
                    continue;
                }
                let hm = h[m].clone();
                for (x, &y) in h[i].iter_mut().zip(&hm) {
                    *x = sub_mod(*x, mul_mod(t, y, p), p);
                }
                for row in h.iter_mut() {
                    row[m] = add_mod(row[m], mul_mod(t, row[i], p), p);
                }
            }
        }
        // Recurrence on leading principal minors.
        let x = Poly::x(p);
        let mut polys = vec![Poly::one(p)];
        for k in 0..n {
            let mut next = x.sub(&Poly::constant(p, h[k][k])).mul(&polys[k]);
            let mut prod = 1u32;
            for i in (0..k).rev() {
                prod = mul_mod(prod, h[i + 1][i], p);
                let c = mul_mod(prod, h[i][k], p);
                next = next.sub(&polys[i].scale(c));
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    /// Minimal polynomial, from the first linear dependency among
    /// `Id, self, self^2, ...` viewed as vectors of length `n^2`.
    pub fn min_poly(&self) -> Poly {
        let n = self.n;
        let p = self.p;
        let mut basis: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
        let mut power = Self::identity(n, p);
        for k in 0..=n {
            let mut v: Vec<u32> = power.data.iter().map(|&x| x as u32).collect();
            let mut combo = vec![0u32; k + 1];
            combo[k] = 1;
            for (b, bc) in &basis {
                let lead = b.iter().position(|&x| x != 0).unwrap();
                let f = v[lead];
                if f != 0 {
                    for (vi, &bi) in v.iter_mut().zip(b) {
                        *vi = sub_mod(*vi, mul_mod(f, bi, p), p);
                    }
                    for (ci, &bci) in combo.iter_mut().zip(bc) {
                        *ci = sub_mod(*ci, mul_mod(f, bci, p), p);
                    }
                }
            }
            match v.iter().position(|&x| x != 0) {
                None => return Poly::new(p, combo).monic(),
                Some(lead) => {
                    let inv = inv_mod(v[lead], p);
                    for vi in v.iter_mut() {
                        *vi = mul_mod(*vi, inv, p);
                    }
                    for ci in combo.iter_mut() {
                        *ci = mul_mod(*ci, inv, p);
                    }
                    basis.push((v, combo));
                }
            }
            power = power.mul(self);
        }
        unreachable!("Cayley-Hamilton bounds the degree by n")
    }

    /// Order of an invertible matrix by repeated multiplication, or `None`
    /// once `limit` is passed.
    pub fn order(&self, limit: u128) -> Option<u128> {
        let mut x = self.clone();
        let mut k = 1u128;
        while !x.is_identity() {
            if k >= limit {
                return None;
            }
            x = x.mul(self);
            k += 1;
        }
        Some(k)
    }
}

/// Reduces `rows` (each of length >= `ncols`) to reduced row echelon form over
/// the first `ncols` columns, dropping zero rows. Returns the pivot columns.
pub(crate) fn rref_in_place(rows: &mut Vec<Vec<u32>>, p: u32, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, i);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix(F_{}) [", self.p)?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl std::ops::Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs)
    }
}

/// Dot product mod `p`.
pub fn dot(a: &[u32], b: &[u32], p: u32) -> u32 {
    let acc: u64 = a.iter().zip(b).map(|(&x, &y)| x as u64 * y as u64).sum();
    (acc % p as u64) as u32
}

/// Scales `v` so that its first nonzero coordinate is 1. Returns the scalar
/// `c` with `v = c · canonical`, or `None` for the zero vector.
pub fn canonicalize(v: &[u32], p: u32) -> Option<(Vector, u32)> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = inv_mod(lead, p);
    Some((v.iter().map(|&x| mul_mod(x, inv, p)).collect(), lead))
}
