//! Subspaces of `F_p^n` held in reduced row echelon form, so equal subspaces
//! have identical bases.

use std::cmp::Ordering;
use std::fmt;

use crate::field::{inv_mod, mul_mod, sub_mod};
use crate::matrix::{rref_in_place, Matrix, Vector};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    p: u32,
    /// RREF rows, sorted by pivot column.
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize, p: u32) -> Self {
        Self {
            n,
            p,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(n: usize, p: u32) -> Self {
        Self::span(
            n,
            p,
            (0..n).map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            }),
        )
    }

    pub fn span<I>(n: usize, p: u32, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vector>,
    {
        let mut rows: Vec<Vector> = vectors
            .into_iter()
            .map(|v| {
                assert_eq!(v.len(), n, "vector length");
                v.into_iter().map(|x| x % p).collect()
            })
            .collect();
        let pivots = rref_in_place(&mut rows, p, n);
        Self {
            n,
            p,
            basis: rows,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.n
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the
    /// subspace.
    pub fn reduce(&self, v: &[u32]) -> Vector {
        let mut v = v.to_vec();
        for (row, &c) in self.basis.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = sub_mod(*x, mul_mod(f, y, self.p), self.p);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Adds `v`, keeping the basis reduced. Returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        let mut r = self.reduce(v);
        let Some(c) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(r[c], self.p);
        for x in r.iter_mut() {
            *x = mul_mod(*x, inv, self.p);
        }
        for row in self.basis.iter_mut() {
            let f = row[c];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&r) {
                    *x = sub_mod(*x, mul_mod(f, y, self.p), self.p);
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < c);
        self.pivots.insert(pos, c);
        self.basis.insert(pos, r);
        true
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for v in &other.basis {
            out.insert(v);
        }
        out
    }

    pub fn intersection(&self, other: &Self) -> Self {
        // Solve a·A = b·B: kernel of the stacked system [A; -B]ᵀ.
        let p = self.p;
        let (a, b) = (self.dim(), other.dim());
        if a == 0 || b == 0 {
            return Self::zero(self.n, p);
        }
        let m = a + b;
        let mut rows: Vec<Vector> = (0..self.n)
            .map(|i| {
                let mut r: Vector = self.basis.iter().map(|v| v[i]).collect();
                r.extend(other.basis.iter().map(|v| (p - v[i]) % p));
                r
            })
            .collect();
        let pivots = rref_in_place(&mut rows, p, m);
        let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
        let vectors = free.iter().map(|&f| {
            let mut coeffs = vec![0u32; m];
            coeffs[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                coeffs[pc] = (p - rows[r][f]) % p;
            }
            let mut v = vec![0u32; self.n];
            for (k, basis_vec) in self.basis.iter().enumerate() {
                for (x, &y) in v.iter_mut().zip(basis_vec) {
                    *x = (*x + mul_mod(coeffs[k], y, p)) % p;
                }
            }
            v
        });
        Self::span(self.n, p, vectors.collect::<Vec<_>>())
    }

    /// `g(W)`.
    pub fn image(&self, g: &Matrix) -> Self {
        Self::span(self.n, self.p, self.basis.iter().map(|v| g.apply(v)).collect::<Vec<_>>())
    }

    pub fn is_invariant_under(&self, g: &Matrix) -> bool {
        self.basis.iter().all(|v| self.contains(&g.apply(v)))
    }

    /// Coordinates of `v` with respect to the echelon basis, if `v` lies in
    /// the subspace.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&c| v[c]).collect())
    }

    /// Every vector of the subspace, in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<Vector> {
        let k = self.dim();
        let total = (self.p as usize).pow(k as u32);
        (0..total)
            .map(|mut t| {
                let mut v = vec![0u32; self.n];
                for row in &self.basis {
                    let c = (t % self.p as usize) as u32;
                    t /= self.p as usize;
                    for (x, &y) in v.iter_mut().zip(row) {
                        *x = (*x + mul_mod(c, y, self.p)) % self.p;
                    }
                }
                v
            })
            .collect()
    }

    /// Canonical representatives (first nonzero coordinate 1) of the lines
    /// through the origin in this subspace, ordered by [`line_order`].
    pub fn lines(&self) -> Vec<Vector> {
        let mut out: Vec<Vector> = self
            .elements()
            .into_iter()
            .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
            .collect();
        out.sort_by(|a, b| line_order(a, b));
        out
    }
}

/// Order on canonical line representatives: by position of the leading
/// coordinate, then lexicographically. `e_1` comes first.
pub fn line_order(a: &[u32], b: &[u32]) -> Ordering {
    let lead = |v: &[u32]| v.iter().position(|&x| x != 0).unwrap_or(usize::MAX);
    lead(a).cmp(&lead(b)).then_with(|| a.cmp(b))
}

/// Iterator over the canonical representatives of all lines in `F_p^n`, in
/// [`line_order`], without materializing them.
pub fn projective_lines(n: usize, p: u32) -> impl Iterator<Item = Vector> {
    (0..n).flat_map(move |lead| {
        let tail = n - lead - 1;
        let count = (p as u64).pow(tail as u32);
        (0..count).map(move |mut t| {
            let mut v = vec![0u32; n];
            v[lead] = 1;
            for i in (lead + 1..n).rev() {
                v[i] = (t % p as u64) as u32;
                t /= p as u64;
            }
            v
        })
    })
}

pub fn projective_line_count(n: usize, p: u32) -> u128 {
    ((p as u128).pow(n as u32) - 1) / (p as u128 - 1)
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dimension first, then pivot columns, then basis entries.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.pivots.cmp(&other.pivots))
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in F_{}^{}) {:?}", self.dim(), self.p, self.n, self.basis)
    }
}
