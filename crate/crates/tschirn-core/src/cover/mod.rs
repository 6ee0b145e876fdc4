//! Determinantal triple-cover local models.
//!
//! A rank-two determinantal datum (a, b, c, d) of forms in x, y defines a
//! 2x3 matrix whose 2x2 minors cut out a surface in (x, y, z, w)-space,
//! the local model of a degree-3 cover near its base point. This module
//! builds the matrix and its minor ideal, eliminates w to obtain the
//! degree-3 equation in z, extracts the branch discriminant, classifies
//! the (s, t) parameter plane of the standard one-parameter family, and
//! certifies the local geometry at the base point:
//!
//! * away from the degenerate parameter lines the minor ideal is a cone
//!   over a twisted cubic, certified by its Hilbert series together with
//!   a zero-dimensional singular locus;
//! * on the non-normal lines the model decomposes into three 2-planes
//!   meeting along two lines, certified by explicit linear equations;
//! * branch-curve singularities map to quotient singularities of the
//!   cover through a small rule table carrying resolution data.

mod classify;
mod model;
mod planes;
mod singular;

pub use classify::{
    classify_parameters, governing_discriminant, governing_value, DegenerationClass,
    NonNormalLocus, TotalRamificationLocus,
};
pub use model::{
    branch_discriminant, branch_form, branch_form_symbolic, branch_proportionality, build_model,
    eliminate_cubic, eliminate_cubic_pair, BranchCertificate, CoverModel, MirandaData,
};
pub use planes::{
    decompose_three_planes, intersection_lines, IntersectionLine, PlaneComponent, ThreePlanes,
};
pub use singular::{
    analyze_base_point, analyze_base_point_with, branch_point_outcome, branch_singularity_table,
    canonical_decomposition_check, BasePointAnalysis, BranchCase, BranchPoint, BranchPointOutcome,
    CanonicalDecomposition, CoverSingularityReport, ResolutionData, SingularityKind,
};

use crate::chern::ChernError;
use crate::qpoly::QError;

/// Errors produced while building or certifying cover models.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoverError {
    #[error(transparent)]
    Algebra(#[from] QError),

    #[error(transparent)]
    Chern(#[from] ChernError),

    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    #[error("the parameter point (0, 0) is excluded")]
    ZeroParameters,

    #[error("`{poly}` does not split into rational linear factors")]
    NotRationallySplit { poly: String },

    #[error("expected {expected} plane components, found {found}")]
    ComponentCount { expected: usize, found: usize },

    #[error("expected {expected} distinct intersection lines, found {found}")]
    LineCount { expected: usize, found: usize },

    #[error("certification failed: {0}")]
    CertificationFailed(String),

    #[error("branch configuration is outside the classified cases: {0}")]
    UnclassifiedCase(String),

    #[error("inconsistent branch descriptor: {0}")]
    InconsistentDescriptor(String),

    #[error("shape error: {0}")]
    Shape(String),
}
