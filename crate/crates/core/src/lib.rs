//! Invariant complex Dirac structures on maximal flag manifolds, worked out
//! algebraically at the origin.
//!
//! An invariant structure splits into one Lagrangian plane per positive root,
//! each drawn from five normalized cases. This crate builds the root
//! combinatorics ([`root_system`]), Chevalley structure constants
//! ([`weyl_algebra`]), the per-root linear algebra ([`dirac_model`]), two
//! independent Courant-involutivity deciders ([`involutivity`]), and the
//! existence/B-field classification tools ([`classification`]).

pub mod classification;
pub mod dirac_model;
pub mod involutivity;
pub mod linalg;
pub mod param;
pub mod root_system;
pub mod tables;
pub mod weyl_algebra;

pub use classification::{
    apply_b_field, b_normal_form, construct_with_real_index, enumerate_assignments, BField,
    BFieldImage, EnumerationFilter, Grid, NormalForm,
};
pub use dirac_model::{
    classify_plane, generators, is_invariant, is_isotropic, pairing, per_root_real_index,
    real_index, subspace_report, Block, CaseTag, DiracStructure, GeneralizedVector, PerRootCase,
    PlaneFamily, SubspaceReport,
};
pub use involutivity::{
    is_involutive_oracle, is_involutive_table, nijenhuis, triple_predicate, NijenhuisForm,
    OracleVerdict, TripleVerdict,
};
pub use param::Param;
pub use root_system::{CartanSpec, Family, Root, RootSystem, SumTriple};
pub use weyl_algebra::{check_structure_identities, structure_constants, StructureConstants};

/// Default tolerance for rank and zero tests on floating-point data.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidSpec(String),
    #[error("unknown root {0}")]
    UnknownRoot(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("generators are linearly dependent")]
    DependentGenerators,
    #[error("real index target k = {k} outside 0..={max}")]
    RealIndexOutOfRange { k: usize, max: usize },
    #[error("assignment must cover every positive root exactly once: {0}")]
    IncompleteAssignment(String),
    #[error("grid has {count} assignments, above the cap of {cap}")]
    GridTooLarge { count: u128, cap: u128 },
}
