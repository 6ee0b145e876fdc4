//! Interval propagation for cohomology dimensions.
//!
//! A problem declares sheaf symbols, each carrying a triple of dimension
//! intervals `(h0, h1, h2)`, and a list of rules: point axioms, Euler
//! characteristics, Serre duality pairings, direct-sum decompositions,
//! short exact sequences (expanded into their nine-term long exact
//! cohomology sequences), and known ranks of individual maps in those
//! sequences. [`propagate`] narrows every interval to a fixpoint and
//! reports forced values with derivation traces, or a contradiction with
//! an irreducible set of conflicting rules. [`check_consistency`] then
//! verifies claimed values against the fixpoint.
//!
//! Exactness is encoded through rank variables: an exact sequence
//! `0 -> V1 -> ... -> V9 -> 0` satisfies `dim V_i = r_{i-1} + r_i` where
//! `r_i` is the rank of the map leaving `V_i`, with `r_0 = r_9 = 0`. All
//! familiar consequences (alternating-sum identity, triangle bounds)
//! follow from narrowing these equations.

mod script;
mod solve;

pub use script::{parse_script, ParsedLedger};
pub use solve::{
    check_consistency, propagate, Claim, ClaimFailure, ConsistencyReport, Contradiction,
    Interval, LedgerProblem, LedgerReport, Rule, RuleKind, SheafOutcome,
};

use thiserror::Error;

/// Errors for malformed ledger problems and scripts. Contradictory but
/// well-formed rule sets are not errors; they produce a contradiction
/// report instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    /// Script syntax error.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// A rule or claim references a sheaf that was never declared.
    #[error("undeclared sheaf `{0}`")]
    UndeclaredSheaf(String),
    /// A sheaf name was declared twice.
    #[error("duplicate sheaf `{0}`")]
    DuplicateSheaf(String),
    /// A map-rank fact references a sequence label that does not exist.
    #[error("no short exact sequence labelled `{0}`")]
    UnknownSequence(String),
    /// Structurally invalid rule.
    #[error("{0}")]
    BadRule(String),
    /// The narrowing loop failed to stabilize, which only happens for
    /// rule sets whose integer solutions are unbounded.
    #[error("propagation did not reach a fixpoint within {0} passes")]
    Divergence(usize),
}
