//! Graded Betti numbers, regularity and linearity of circuit ideals of
//! uniform clutters, computed exactly through Hochster's formula on the
//! clique complex, plus the structural classes built around them.

pub mod betti;
pub mod bits;
pub mod classify;
pub mod clutter;
pub mod complex;
pub mod error;
pub mod format;
pub mod formulas;
pub mod generators;
pub mod linalg;

pub use betti::{
    betti_hochster, has_linear_resolution, is_cohen_macaulay, verify_shape_bounds, BettiTable, HochsterEngine,
    ShapeReport,
};
pub use classify::{
    classify, decompose, is_almost_tree, is_chordal_graph, is_clique, is_minimal_to_linearity, is_obstruction,
    is_orientable, is_pseudo_manifold, ClassificationReport, ClassifyOptions, Decomposition, DecompositionKind,
};
pub use clutter::{Clutter, InducedClutter, SubmaximalCircuitTable};
pub use complex::{FVector, SimplicialComplex};
pub use error::{Error, Result};
pub use format::{parse_clutter, parse_json, parse_text};
pub use formulas::{
    cycle_betti, herzog_kuhl_variant, homology_difference_identity, minimal_resolution_formula, HerzogKuhlCase,
    ResolutionShape,
};
pub use generators::{glue, ChordalParams, GlueSpec};
pub use linalg::{ExactMatrix, FieldSpec};
