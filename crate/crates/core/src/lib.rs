//! Isometry-equivariant nonlinear polynomial differential operators indexed by
//! multigraphs.
//!
//! A multigraph `γ` defines an operator `N_γ f` by placing the symmetric
//! derivative tensor `∇^{deg v} f` at every vertex and contracting the two
//! indices joined by every edge with the metric. This crate enumerates the
//! multigraph classes (via symmetry orbits on perfect matchings), computes the
//! exact kernel of the invariant-tensor map in a given dimension, and turns
//! that kernel into verified, dimension-dependent linear relations between
//! the operators. All arithmetic is exact over the rationals; operators are
//! evaluated on flat `R^d`.

pub mod error;
pub mod identity;
pub mod linalg;
pub mod multigraph;
pub mod operator;
pub mod rational;
pub mod tensor;

pub use error::{Error, Result};
pub use identity::{
    cayley_hamilton_check, discover, verify_identity, witness_nonzero, Identity, IdentityStatus,
    Witness,
};
pub use linalg::RationalMatrix;
pub use multigraph::{
    build_graph, canonical_form, disjoint_union, enumerate_classes, enumerate_degree_vectors,
    enumerate_matchings, orbits, parametrize, symmetry_generators, DegreeVector, Multigraph, Orbit,
    PerfectMatching, SymmetryGroup,
};
pub use operator::{
    cayley_orthogonal, check_equivariance, compose_with_isometry, independence_rank,
    AffineIsometry, Equivariance, Jet, JetOperator, OperatorExpr, Polynomial,
};
pub use rational::Rational;
pub use tensor::{
    average_over_symmetry, evaluation_matrix, kernel, rank, tau_eval, CellLimit, KernelBasis,
};
