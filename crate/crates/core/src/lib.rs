//! Exact computational engine for blocks of cyclotomic Hecke algebras and
//! their Khovanov-Lauda generators: exact coefficient fields, truncated
//! power series, normal-form rewriting on the monomial basis, spectral
//! block decomposition, relation verification, gradings, semi-normal forms.

pub mod blockspectral;
pub mod exactfield;
pub mod heckecore;
pub mod klriso;
pub mod linalg;
pub mod rootdata;
pub mod seminormal;
pub mod symbolic;

pub use blockspectral::{block_decomposition, weight_idempotents, Block, FormalCharacter};
pub use exactfield::{make_field, parse_field, quantum_characteristic, Elem, Field, FieldSpec};
pub use heckecore::{build_hecke, Element, Gen, HeckeAlgebra};
pub use klriso::{
    klr_generators, poincare_polynomial, verify_klr_relations, KlrAction, QChoice,
};
pub use linalg::Matrix;
pub use rootdata::{DominantWeight, Partition, Perm, PositiveRoot, Quiver, Tableau};
pub use seminormal::{classical_oracle, specht_module, verify_specht, SpechtModule};
pub use symbolic::Series;
