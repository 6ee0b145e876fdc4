//! Classification of the (s, t) parameter plane.

use std::fmt;

use num_traits::Zero;

use super::model::branch_form_symbolic;
use super::CoverError;
use crate::qpoly::{int, resultant, MultiPoly, Rat, VarSet};

/// The line of the parameter plane on which the cover becomes totally
/// ramified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TotalRamificationLocus {
    SZero,
    SEqualsT,
    SEqualsMinusT,
}

impl fmt::Display for TotalRamificationLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TotalRamificationLocus::SZero => write!(f, "s = 0"),
            TotalRamificationLocus::SEqualsT => write!(f, "s = t"),
            TotalRamificationLocus::SEqualsMinusT => write!(f, "s = -t"),
        }
    }
}

/// The line of the parameter plane on which the total space of the model
/// stops being normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonNormalLocus {
    TZero,
    TEqualsThreeS,
    TEqualsMinusThreeS,
}

impl fmt::Display for NonNormalLocus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonNormalLocus::TZero => write!(f, "t = 0"),
            NonNormalLocus::TEqualsThreeS => write!(f, "t = 3s"),
            NonNormalLocus::TEqualsMinusThreeS => write!(f, "t = -3s"),
        }
    }
}

/// Where a rational parameter point sits relative to the six degenerate
/// lines of the standard family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerationClass {
    General,
    TotallyRamified(TotalRamificationLocus),
    NonNormal(NonNormalLocus),
}

impl DegenerationClass {
    pub fn is_general(&self) -> bool {
        matches!(self, DegenerationClass::General)
    }

    pub fn is_non_normal(&self) -> bool {
        matches!(self, DegenerationClass::NonNormal(_))
    }
}

impl fmt::Display for DegenerationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerationClass::General => write!(f, "general"),
            DegenerationClass::TotallyRamified(l) => write!(f, "totally ramified ({l})"),
            DegenerationClass::NonNormal(l) => write!(f, "non-normal ({l})"),
        }
    }
}

/// Sorts a rational parameter point into its degeneration class. The
/// three non-normal lines take precedence; the six lines meet only at
/// the excluded origin, so the order never matters in practice.
pub fn classify_parameters(s: &Rat, t: &Rat) -> Result<DegenerationClass, CoverError> {
    if s.is_zero() && t.is_zero() {
        return Err(CoverError::ZeroParameters);
    }
    let three_s = s * &int(3);
    if t.is_zero() {
        return Ok(DegenerationClass::NonNormal(NonNormalLocus::TZero));
    }
    if *t == three_s {
        return Ok(DegenerationClass::NonNormal(NonNormalLocus::TEqualsThreeS));
    }
    if *t == -three_s {
        return Ok(DegenerationClass::NonNormal(
            NonNormalLocus::TEqualsMinusThreeS,
        ));
    }
    if s.is_zero() {
        return Ok(DegenerationClass::TotallyRamified(
            TotalRamificationLocus::SZero,
        ));
    }
    if s == t {
        return Ok(DegenerationClass::TotallyRamified(
            TotalRamificationLocus::SEqualsT,
        ));
    }
    if *s == -t.clone() {
        return Ok(DegenerationClass::TotallyRamified(
            TotalRamificationLocus::SEqualsMinusT,
        ));
    }
    Ok(DegenerationClass::General)
}

/// The polynomial in (s, t) governing the degenerations: the
/// x-discriminant locus of the branch form at y = 1, computed as the
/// resultant of the dehomogenized form with its x-derivative. Its
/// rational zero set is exactly the union of the six lines s = 0, t = 0,
/// s = t, s = -t, t = 3s, t = -3s.
pub fn governing_discriminant() -> MultiPoly {
    let big = VarSet::new(["x", "y", "s", "t"]);
    let form = branch_form_symbolic(&big).expect("fixed context");
    let iy = big.index_of("y").expect("y exists");
    let dehom = form.subst_rat(&[(iy, int(1))]);
    let ix = big.index_of("x").expect("x exists");
    let res = resultant(&dehom, &dehom.derivative(ix), "x").expect("positive x-degree");
    let st = VarSet::new(["s", "t"]);
    res.restrict(&st).expect("x was eliminated")
}

/// Evaluates the governing discriminant at a rational point.
pub fn governing_value(g: &MultiPoly, s: &Rat, t: &Rat) -> Rat {
    g.eval(&[s.clone(), t.clone()])
}
