//! Exact-arithmetic toolkit for studying triple covers of abelian surfaces.
//!
//! Everything here computes over the rationals with no floating point and no
//! random choices, so results are reproducible bit for bit. The crate is
//! organised in five layers:
//!
//! * [`qpoly`]: arbitrary-precision rationals, sparse multivariate
//!   polynomials, resultants and discriminants, Buchberger Groebner bases,
//!   Hilbert series, and exact polynomial square roots.
//! * [`chern`]: intersection lattices on surfaces, Chern classes of low-rank
//!   bundles truncated in degree two, Riemann-Roch, and the numerical
//!   invariants of a triple cover determined by its building data.
//! * [`ledger`]: an interval-propagation solver for cohomology dimension
//!   triples constrained by exact sequences, Serre duality, direct sums,
//!   Euler characteristics, and known map ranks.
//! * [`cover`]: the determinantal local model of a triple cover near a base
//!   point, its eliminated cubic and branch discriminant, degeneration
//!   classification, and certified descriptions of the local singularities.
//! * [`numerology`]: the small counting arguments (nodal fibres, hyperelliptic
//!   curves in a pencil, orbit counts, moduli dimension) that tie the
//!   geometry together.

pub mod chern;
pub mod cover;
pub mod ledger;
pub mod numerology;
pub mod qpoly;
