//! Exact polynomial square roots up to a rational constant.

use num_traits::One;

use super::poly::{MultiPoly, TermOrder};
use super::rat::{rat, Rat};
use super::QError;

/// Finds g and a nonzero rational c with f = c * g^2, if they exist.
/// g is normalized to have leading coefficient 1, so c is the leading
/// coefficient of f. The search runs by leading-term recursion in grevlex
/// order and the candidate is verified by multiplication before it is
/// returned. The zero polynomial yields (g, c) = (0, 1).
pub fn poly_square_root(f: &MultiPoly) -> Result<(MultiPoly, Rat), QError> {
    let vars = f.vars();
    let Some((fm, fc)) = f.leading(TermOrder::Grevlex) else {
        return Ok((MultiPoly::zero(vars), Rat::one()));
    };
    let c = fc.clone();
    if fm.iter().any(|e| e % 2 != 0) {
        return Err(QError::NotASquare(format!(
            "leading monomial of `{f}` has an odd exponent"
        )));
    }
    let half: Vec<u32> = fm.iter().map(|e| e / 2).collect();
    let h = f.mul_rat(&(Rat::one() / &c));
    let mut g = MultiPoly::monomial(vars, half.clone(), Rat::one());
    loop {
        let r = h.sub(&g.mul(&g)?)?;
        let Some((rm, rc)) = r.leading(TermOrder::Grevlex) else {
            // Exact: verify by multiplication and return.
            let back = g.mul(&g)?.mul_rat(&c);
            debug_assert_eq!(&back, f);
            if &back != f {
                return Err(QError::NotASquare(format!(
                    "verification failed for `{f}`"
                )));
            }
            return Ok((g, c));
        };
        let mut step = Vec::with_capacity(rm.len());
        for (a, b) in rm.iter().zip(&half) {
            if a < b {
                return Err(QError::NotASquare(format!(
                    "residual term of `{f}` is not divisible by the root's leading monomial"
                )));
            }
            step.push(a - b);
        }
        let term = MultiPoly::monomial(vars, step, rc * rat(1, 2));
        g = g.add(&term)?;
    }
}
