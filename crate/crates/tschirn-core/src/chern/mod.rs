//! Intersection lattices and Chern-level bundle arithmetic on surfaces.
//!
//! The layer works with numerical equivalence classes only: a [`Lattice`]
//! fixes an ordered basis of named divisor classes together with their
//! intersection numbers, a [`NumClass`] is a rational combination of that
//! basis, and a [`BundleChern`] records the rank and the first two Chern
//! classes of a vector bundle. On top of these sit Riemann-Roch for
//! surfaces ([`riemann_roch`]), Noether-checked surface data
//! ([`SurfaceGeom`]) with blow-ups and adjunction, and the invariant
//! formulas for a smooth degree-3 cover ([`miranda_invariants`]).
//!
//! Everything is exact: coefficients are arbitrary-precision rationals and
//! every formula is evaluated without rounding. Chern data is truncated at
//! degree 2 because every target here is a surface.

mod bundle;
mod lattice;
mod surface;

pub use bundle::{miranda_invariants, riemann_roch, BundleChern, CoverInvariants};
pub use lattice::{Lattice, NumClass};
pub use surface::{adjunction_genus, AdjunctionGenus, SurfaceGeom};

use crate::qpoly::Rat;
use thiserror::Error;

/// Errors produced by lattice and bundle arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChernError {
    /// Two classes or bundles live on different lattices.
    #[error("classes live on different lattices: [{left}] vs [{right}]")]
    LatticeMismatch { left: String, right: String },
    /// Malformed input: dimensions, duplicate names, asymmetric pairing.
    #[error("{0}")]
    Shape(String),
    /// A bundle operation was asked for outside its supported ranks.
    #[error("`{op}` supports rank {supported}, got rank {got}")]
    UnsupportedRank {
        op: &'static str,
        supported: &'static str,
        got: u32,
    },
    /// Surface data violating chi = (K^2 + e)/12.
    #[error("Noether's formula fails: chi is {chi} but (K^2 + e)/12 = {expected}")]
    NoetherViolation { chi: Rat, expected: Rat },
    /// Numeric inputs that contradict each other.
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
}
