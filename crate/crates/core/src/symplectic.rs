//! Symplectic spaces over `F_p`, similitudes and transvections.
//!
//! Conventions: vectors are columns and the form is `e(x, y) = xᵀ · G · y`
//! for the Gram matrix `G`. The transvection with direction `u` and scalar
//! `λ` is `T_u[λ](v) = v + λ·e(v, u)·u`; as a matrix, `Id + λ·u·(G u)ᵀ`.
//!
//! For a similitude `g` with multiplier `ε` conjugation acts by
//! `g · T_u[λ] · g⁻¹ = T_{g u}[λ / ε]`. The multiplier-free form of this
//! identity only holds inside `Sp`.

use crate::error::{Error, Result};
use crate::field::{inv_mod, mul_mod, neg_mod, PrimeField};
use crate::matrix::{canonicalize, dot, Matrix, Vector};
use crate::subspace::Subspace;

/// The block Gram matrix `[[0, I_g], [-I_g, 0]]`.
pub fn standard_gram(dim: usize, p: u32) -> Result<Matrix> {
    if dim == 0 || dim % 2 == 1 {
        return Err(Error::OddDimension(dim));
    }
    let g = dim / 2;
    let mut j = Matrix::zeros(dim, p);
    for i in 0..g {
        j.set(i, g + i, 1);
        j.set(g + i, i, p - 1);
    }
    Ok(j)
}

/// `|Sp(dim, p)| = p^(g²) · ∏_{i=1..g} (p^(2i) - 1)`.
pub fn sp_order(dim: usize, p: u32) -> Result<u128> {
    if dim == 0 || dim % 2 == 1 {
        return Err(Error::OddDimension(dim));
    }
    let g = (dim / 2) as u32;
    let p = p as u128;
    let overflow = Error::ScaleExceeded {
        what: "group order",
        size: u128::MAX,
        limit: u128::MAX,
    };
    let mut order = p.checked_pow(g * g).ok_or(overflow.clone())?;
    for i in 1..=g {
        let f = p.checked_pow(2 * i).ok_or(overflow.clone())? - 1;
        order = order.checked_mul(f).ok_or(overflow.clone())?;
    }
    Ok(order)
}

/// `|GSp(dim, p)| = |Sp(dim, p)| · (p - 1)`.
pub fn gsp_order(dim: usize, p: u32) -> Result<u128> {
    sp_order(dim, p)?
        .checked_mul(p as u128 - 1)
        .ok_or(Error::ScaleExceeded {
            what: "group order",
            size: u128::MAX,
            limit: u128::MAX,
        })
}

/// A vector space with a non-degenerate alternating form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticSpace {
    field: PrimeField,
    gram: Matrix,
}

impl SymplecticSpace {
    pub fn standard(p: u64, dim: usize) -> Result<Self> {
        let field = PrimeField::new(p)?;
        let gram = standard_gram(dim, field.modulus())?;
        Ok(Self { field, gram })
    }

    pub fn with_gram(gram: Matrix) -> Result<Self> {
        let field = PrimeField::new(gram.modulus() as u64)?;
        let n = gram.dim();
        if n == 0 || n % 2 == 1 {
            return Err(Error::OddDimension(n));
        }
        let alternating = (0..n).all(|i| {
            gram.get(i, i) == 0 && (0..n).all(|j| gram.get(i, j) == neg_mod(gram.get(j, i), field.modulus()))
        });
        if !alternating || gram.det() == 0 {
            return Err(Error::BadForm);
        }
        Ok(Self { field, gram })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn modulus(&self) -> u32 {
        self.field.modulus()
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_standard(&self) -> bool {
        standard_gram(self.dim(), self.modulus()).is_ok_and(|j| j == self.gram)
    }

    /// `e(x, y) = xᵀ G y`.
    pub fn form(&self, x: &[u32], y: &[u32]) -> u32 {
        dot(x, &self.gram.apply(y), self.modulus())
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.dim(), self.modulus())
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: n,
            });
        }
        Ok(())
    }

    /// The unique `ε` with `fᵀ G f = ε G`.
    pub fn multiplier(&self, f: &Matrix) -> Result<u32> {
        self.check_dim(f.dim())?;
        if f.modulus() != self.modulus() {
            return Err(Error::FieldMismatch {
                left: self.modulus(),
                right: f.modulus(),
            });
        }
        let pulled = f.transpose().mul(&self.gram).mul(f);
        let n = self.dim();
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.gram.get(i, j) != 0)
            .expect("non-degenerate form");
        let p = self.modulus();
        let eps = mul_mod(pulled.get(i, j), inv_mod(self.gram.get(i, j), p), p);
        if eps == 0 || pulled != self.gram.scale(eps) {
            return Err(Error::NotASimilitude);
        }
        Ok(eps)
    }

    pub fn is_isometry(&self, f: &Matrix) -> bool {
        self.multiplier(f) == Ok(1)
    }

    /// `Id + λ·u·(G u)ᵀ`, with no validation.
    pub(crate) fn transvection_matrix(&self, u: &[u32], lambda: u32) -> Matrix {
        let p = self.modulus();
        let gu = self.gram.apply(u);
        let mut t = self.identity();
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            let li = mul_mod(lambda, ui, p);
            for (j, &g) in gu.iter().enumerate() {
                let v = (t.get(i, j) + mul_mod(li, g, p)) % p;
                t.set(i, j, v);
            }
        }
        t
    }

    /// The transvection `v ↦ v + λ e(v, u) u`.
    pub fn make_transvection(&self, u: &[u32], lambda: u32) -> Result<GroupElement> {
        self.check_dim(u.len())?;
        let p = self.modulus();
        let lambda = lambda % p;
        if lambda == 0 || u.iter().all(|&x| x % p == 0) {
            return Err(Error::DegenerateTransvection);
        }
        let u: Vector = u.iter().map(|&x| x % p).collect();
        Ok(GroupElement {
            matrix: self.transvection_matrix(&u, lambda),
            multiplier: Some(1),
        })
    }

    /// Recovers the canonical `(u, λ)` of a transvection, or `None` if `f` is
    /// not one.
    pub fn recognize_transvection(&self, f: &Matrix) -> Option<Transvection> {
        if f.dim() != self.dim() || f.modulus() != self.modulus() {
            return None;
        }
        let p = self.modulus();
        let n = f.minus_identity();
        if n.is_zero() || n.rank() != 1 {
            return None;
        }
        let col = (0..self.dim()).map(|j| n.column(j)).find(|c| c.iter().any(|&x| x != 0))?;
        let (u, _) = canonicalize(&col, p)?;
        let gu = self.gram.apply(&u);
        let j = gu.iter().position(|&x| x != 0)?;
        // (f - Id) e_j = λ (G u)_j u, and u has leading coordinate 1.
        let lead = u.iter().position(|&x| x != 0)?;
        let lambda = mul_mod(n.get(lead, j), inv_mod(gu[j], p), p);
        if lambda == 0 {
            return None;
        }
        (self.transvection_matrix(&u, lambda) == *f).then_some(Transvection { direction: u, lambda })
    }

    /// Transvections `T_b[1]` for every basis vector `b` and every sum
    /// `b_i + b_j` (`i < j`) of a symplectic basis. For the standard form the
    /// symplectic basis is the standard one.
    pub fn sp_generators(&self) -> Vec<Matrix> {
        let basis = self.symplectic_basis();
        let n = self.dim();
        let p = self.modulus();
        let cols = basis.columns();
        let mut dirs: Vec<Vector> = cols.clone();
        for i in 0..n {
            for j in i + 1..n {
                dirs.push(cols[i].iter().zip(&cols[j]).map(|(&a, &b)| (a + b) % p).collect());
            }
        }
        dirs.iter().map(|u| self.transvection_matrix(u, 1)).collect()
    }

    /// A similitude with multiplier `c`: scales the second half of a
    /// symplectic basis by `c`.
    pub fn similitude_with_multiplier(&self, c: u32) -> Result<Matrix> {
        let p = self.modulus();
        if c % p == 0 {
            return Err(Error::DivisionByZero);
        }
        let g = self.dim() / 2;
        let diag: Vec<u32> = (0..self.dim()).map(|i| if i < g { 1 } else { c % p }).collect();
        let d = Matrix::diagonal(p, &diag);
        let b = self.symplectic_basis();
        Ok(b.mul(&d).mul(&b.inverse().expect("basis is invertible")))
    }

    /// Columns `(x_1, .., x_g, y_1, .., y_g)` with `e(x_i, y_j) = δ_ij` and all
    /// other pairings zero, so `Bᵀ G B` is the standard Gram matrix.
    pub fn symplectic_basis(&self) -> Matrix {
        let n = self.dim();
        let p = self.modulus();
        let std: Vec<Vector> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let (xs, ys) = self.symplectic_pairs(std).expect("non-degenerate form");
        let mut cols = xs;
        cols.extend(ys);
        Matrix::from_columns(p, &cols)
    }

    /// Gram-Schmidt style symplectic basis of the span of `vectors`, returned
    /// as `(xs, ys)`. Fails if the restricted form is degenerate.
    pub fn symplectic_pairs(&self, vectors: Vec<Vector>) -> Result<(Vec<Vector>, Vec<Vector>)> {
        let p = self.modulus();
        let mut rest: Vec<Vector> = vectors;
        let (mut xs, mut ys) = (Vec::new(), Vec::new());
        loop {
            rest.retain(|v| v.iter().any(|&x| x != 0));
            let Some(x) = rest.first().cloned() else {
                break;
            };
            let Some(k) = rest.iter().position(|y| self.form(&x, y) != 0) else {
                return Err(Error::BadForm);
            };
            let inv = inv_mod(self.form(&x, &rest[k]), p);
            let y: Vector = rest[k].iter().map(|&c| mul_mod(c, inv, p)).collect();
            rest.remove(k);
            rest.remove(0);
            // v ← v - e(v, y) x + e(v, x) y is orthogonal to both x and y.
            for v in rest.iter_mut() {
                let a = self.form(v, &y);
                let b = self.form(v, &x);
                for i in 0..v.len() {
                    let t = (v[i] + p - mul_mod(a, x[i], p)) % p;
                    v[i] = (t + mul_mod(b, y[i], p)) % p;
                }
            }
            xs.push(x);
            ys.push(y);
        }
        Ok((xs, ys))
    }

    /// `W^⊥ = {v : e(v, w) = 0 for all w ∈ W}`.
    pub fn perp(&self, w: &Subspace) -> Subspace {
        let n = self.dim();
        let p = self.modulus();
        if w.is_zero() {
            return Subspace::full(n, p);
        }
        // Rows (G w)ᵀ; e(v, w) = vᵀ G w.
        let mut m = Matrix::zeros(n, p);
        for (i, b) in w.basis().iter().enumerate() {
            for (j, &c) in self.gram.apply(b).iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Subspace::span(n, p, m.kernel())
    }

    pub fn are_orthogonal(&self, a: &Subspace, b: &Subspace) -> bool {
        a.basis().iter().all(|x| b.basis().iter().all(|y| self.form(x, y) == 0))
    }

    /// The restricted form on `W` is non-degenerate.
    pub fn is_symplectic_subspace(&self, w: &Subspace) -> bool {
        !w.is_zero() && w.intersection(&self.perp(w)).is_zero()
    }
}

/// An invertible matrix with its multiplier cached when it is a similitude.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    matrix: Matrix,
    multiplier: Option<u32>,
}

impl GroupElement {
    pub fn new(matrix: Matrix, space: &SymplecticSpace) -> Result<Self> {
        if matrix.det() == 0 {
            return Err(Error::Singular);
        }
        let multiplier = space.multiplier(&matrix).ok();
        Ok(Self { matrix, multiplier })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn multiplier(&self) -> Option<u32> {
        self.multiplier
    }

    pub fn is_similitude(&self) -> bool {
        self.multiplier.is_some()
    }
}

/// A transvection in canonical form: the direction's first nonzero
/// coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transvection {
    pub direction: Vector,
    pub lambda: u32,
}

impl Transvection {
    /// Canonical form of `T_u[λ]`; rescaling `u` by `c` rescales `λ` by `c⁻²`.
    pub fn canonical(u: &[u32], lambda: u32, p: u32) -> Result<Self> {
        if lambda % p == 0 {
            return Err(Error::DegenerateTransvection);
        }
        let (direction, c) = canonicalize(u, p).ok_or(Error::DegenerateTransvection)?;
        Ok(Self {
            direction,
            lambda: mul_mod(lambda % p, mul_mod(c, c, p), p),
        })
    }

    pub fn matrix(&self, space: &SymplecticSpace) -> Matrix {
        space.transvection_matrix(&self.direction, self.lambda)
    }
}

/// `drop(f) = dim V - dim ker(f - Id)`, with a basis of `ker(f - Id)`.
pub fn drop_and_eig(f: &Matrix) -> (usize, Vec<Vector>) {
    let eig = f.minus_identity().kernel();
    (f.dim() - eig.len(), eig)
}

/// Toric dimension of a semistable unipotent element: `dim V - dim Eig(f, 1)`,
/// defined when `(f - Id)^2 = 0`.
pub fn toric_dimension(f: &Matrix, space: &SymplecticSpace) -> Result<usize> {
    if f.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            got: f.dim(),
        });
    }
    let n = f.minus_identity();
    if !n.mul(&n).is_zero() {
        return Err(Error::NotSemistableUnipotent);
    }
    Ok(drop_and_eig(f).0)
}
