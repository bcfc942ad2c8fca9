//! Multigraphs (loops and parallel edges allowed), degree vectors, perfect
//! matchings and the symmetry-orbit enumeration of isomorphism classes.

mod census;
mod graph;
mod matching;
pub mod names;
mod symmetry;

pub use census::{enumerate_classes, enumerate_degree_vectors};
pub use graph::{
    canonical_form, degree_vector, disjoint_union, parametrize, DegreeVector, Multigraph,
};
pub use matching::{build_graph, double_factorial, enumerate_matchings, PerfectMatching};
pub use symmetry::{orbits, symmetry_generators, Orbit, Permutation, SymmetryGroup};
