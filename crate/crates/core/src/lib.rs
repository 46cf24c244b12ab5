//! Finite-field linear algebra for groups of symplectic similitudes that
//! contain transvections.
//!
//! The pieces, bottom up: prime and extension fields ([`field`], [`ext`],
//! [`poly`]), dense matrices and subspaces ([`matrix`], [`subspace`]),
//! symplectic spaces and transvections ([`symplectic`]), enumerated matrix
//! groups ([`group`]), module theory for those groups ([`modrep`]), character
//! amplitudes ([`amplitude`]) and block decompositions ([`hall`]).
//! [`instance`] and [`report`] cover the text formats used by the CLI.

pub mod amplitude;
pub mod error;
pub mod ext;
pub mod field;
pub mod group;
pub mod hall;
pub mod instance;
pub mod matrix;
pub mod modrep;
pub mod poly;
pub mod report;
pub mod subspace;
pub mod symplectic;

pub use amplitude::{amplitude_only, char_amplitude, rep_amplitude, AmplitudeReport, CharacterData};
pub use error::{Error, Result};
pub use ext::{ExtField, ExtFieldElement};
pub use field::{FieldElement, PrimeField};
pub use group::{closure, ElementTable, DEFAULT_CAP};
pub use hall::{
    classify, classify_generators, classify_monodromy, hall_decompose, normalizer_membership, part_b_check,
    BlockSystem, Classification, HallDecomposition, NotApplicableReason, PartBReport, Permutation, Verdict,
};
pub use instance::Instance;
pub use matrix::{Matrix, Vector};
pub use poly::Poly;
pub use subspace::Subspace;
pub use symplectic::{sp_order, toric_dimension, GroupElement, SymplecticSpace, Transvection};
