//! Finite matrix groups by full enumeration.
//!
//! Every group is a table of all its elements, built breadth first from a
//! sorted generator list, so the iteration order is a pure function of the
//! generators. There is no base-and-strong-generating-set machinery; the
//! `cap` bounds memory instead.

use indexmap::IndexSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::subspace::Subspace;
use crate::symplectic::{SymplecticSpace, Transvection};

pub const DEFAULT_CAP: usize = 1_000_000;

/// A completely enumerated finite matrix group.
#[derive(Clone)]
pub struct ElementTable {
    n: usize,
    p: u32,
    elements: IndexSet<Matrix>,
    /// Generators the table was built from. Empty for tables obtained by
    /// filtering, whose generators were never tracked.
    generators: Vec<Matrix>,
    cap: usize,
}

impl std::fmt::Debug for ElementTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ElementTable")
            .field("dim", &self.n)
            .field("p", &self.p)
            .field("order", &self.elements.len())
            .field("generators", &self.generators.len())
            .finish()
    }
}

fn sorted_generators(n: usize, p: u32, gens: &[Matrix]) -> Vec<Matrix> {
    let mut gens: Vec<Matrix> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
    for g in &gens {
        assert_eq!(g.dim(), n, "generator dimension");
        assert_eq!(g.modulus(), p, "generator field");
    }
    gens.sort();
    gens.dedup();
    gens
}

impl ElementTable {
    /// Breadth-first closure of `gens` in `GL(n, p)`. The generators must be
    /// invertible; an empty list gives the trivial group.
    pub fn generate(n: usize, p: u32, gens: &[Matrix], cap: usize) -> Result<Self> {
        let gens = sorted_generators(n, p, gens);
        let mut elements = IndexSet::new();
        elements.insert(Matrix::identity(n, p));
        let mut cursor = 0;
        while cursor < elements.len() {
            let x = elements[cursor].clone();
            for g in &gens {
                let y = x.mul(g);
                if elements.insert(y) && elements.len() > cap {
                    return Err(Error::CapExceeded {
                        cap,
                        reached: elements.len(),
                    });
                }
            }
            cursor += 1;
        }
        Ok(Self {
            n,
            p,
            elements,
            generators: gens,
            cap,
        })
    }

    /// Wraps an element set already known to be a group.
    fn from_elements(n: usize, p: u32, elements: IndexSet<Matrix>, cap: usize) -> Self {
        Self {
            n,
            p,
            elements,
            generators: Vec::new(),
            cap,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false: a group contains the identity.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn iter(&self) -> impl Iterator<Item = &Matrix> + '_ {
        self.elements.iter()
    }

    pub fn get(&self, i: usize) -> Option<&Matrix> {
        self.elements.get_index(i)
    }

    pub fn index_of(&self, g: &Matrix) -> Option<usize> {
        self.elements.get_index_of(g)
    }

    pub fn contains(&self, g: &Matrix) -> bool {
        self.elements.contains(g)
    }

    pub fn generators(&self) -> &[Matrix] {
        &self.generators
    }

    pub fn identity(&self) -> Matrix {
        Matrix::identity(self.n, self.p)
    }

    /// Subgroup of elements satisfying `keep`. The caller guarantees that the
    /// kept set is closed under multiplication.
    pub fn filter_subgroup<F>(&self, mut keep: F) -> Self
    where
        F: FnMut(&Matrix) -> bool,
    {
        let elements: IndexSet<Matrix> = self.elements.iter().filter(|g| keep(g)).cloned().collect();
        Self::from_elements(self.n, self.p, elements, self.cap)
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    /// `x g x⁻¹ ∈ self` for every element `x` and every `g` in `conjugators`.
    pub fn is_normalized_by(&self, conjugators: &[Matrix]) -> bool {
        conjugators.iter().all(|c| {
            let inv = c.inverse().expect("invertible");
            self.elements.iter().all(|x| self.contains(&c.mul(x).mul(&inv)))
        })
    }

    /// A generating set: the stored generators when known, otherwise a greedy
    /// selection from a fixed shuffle of the elements.
    pub fn generating_set(&self) -> Vec<Matrix> {
        if !self.generators.is_empty() || self.is_trivial() {
            return self.generators.clone();
        }
        let mut order: Vec<usize> = (1..self.len()).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(0x7a11));
        let mut gens = Vec::new();
        let mut current = ElementTable::generate(self.n, self.p, &[], self.cap).expect("trivial group");
        for i in order {
            if current.len() == self.len() {
                break;
            }
            let x = &self.elements[i];
            if !current.contains(x) {
                gens.push(x.clone());
                current = ElementTable::generate(self.n, self.p, &gens, self.cap).expect("subgroup of a table under the same cap");
            }
        }
        gens.sort();
        gens
    }

    /// The same group, re-enumerated from [`ElementTable::generating_set`].
    pub fn with_generators(&self) -> Self {
        if !self.generators.is_empty() || self.is_trivial() {
            return self.clone();
        }
        let gens = self.generating_set();
        ElementTable::generate(self.n, self.p, &gens, self.cap).expect("subgroup of a table under the same cap")
    }
}

/// Closure of a nonempty generator list; see [`ElementTable::generate`].
pub fn closure(gens: &[Matrix], cap: usize) -> Result<ElementTable> {
    let first = gens.first().expect("closure needs at least one generator to fix the dimension");
    ElementTable::generate(first.dim(), first.modulus(), gens, cap)
}

pub fn order(gens: &[Matrix], cap: usize) -> Result<usize> {
    closure(gens, cap).map(|t| t.len())
}

/// Every transvection of the table with its canonical `(u, λ)`, in table
/// order.
pub fn transvections_in(table: &ElementTable, space: &SymplecticSpace) -> Vec<(Matrix, Transvection)> {
    table
        .iter()
        .filter_map(|g| space.recognize_transvection(g).map(|t| (g.clone(), t)))
        .collect()
}

/// Smallest subgroup containing `seeds` that is normalized by every element
/// of `ambient_gens`.
pub fn normal_closure(ambient_gens: &[Matrix], seeds: &[Matrix], cap: usize) -> Result<ElementTable> {
    let first = ambient_gens
        .first()
        .or(seeds.first())
        .expect("normal closure needs a generator to fix the dimension");
    let (n, p) = (first.dim(), first.modulus());
    let conj: Vec<(Matrix, Matrix)> = ambient_gens
        .iter()
        .map(|a| (a.clone(), a.inverse().expect("invertible generator")))
        .collect();
    let mut gens: Vec<Matrix> = seeds.iter().filter(|s| !s.is_identity()).cloned().collect();
    let mut table = ElementTable::generate(n, p, &gens, cap)?;
    let mut checked = 0;
    while checked < gens.len() {
        let x = gens[checked].clone();
        for (a, a_inv) in &conj {
            let y = a.mul(&x).mul(a_inv);
            if !table.contains(&y) {
                gens.push(y);
                table = ElementTable::generate(n, p, &gens, cap)?;
            }
        }
        checked += 1;
    }
    Ok(table)
}

/// Elements of `table` commuting with every element of `subset`.
pub fn centralizer(table: &ElementTable, subset: &[Matrix]) -> ElementTable {
    table.filter_subgroup(|t| subset.iter().all(|s| t.mul(s) == s.mul(t)))
}

/// Elements of `table` mapping `w` onto itself.
pub fn subspace_stabilizer(table: &ElementTable, w: &Subspace) -> ElementTable {
    table.filter_subgroup(|t| w.is_invariant_under(t))
}
