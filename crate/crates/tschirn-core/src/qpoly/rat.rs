//! Exact rational scalars.
//!
//! `Rat` is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator; both invariants are maintained by the underlying
//! type on every construction.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::QError;

pub type Rat = num_rational::BigRational;

/// Build the fraction n/d. Panics if `d` is zero; use [`parse_rat`] for
/// untrusted input.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// True when the denominator is one.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Parse `p` or `p/q` with an optional leading sign. The denominator must be
/// a nonzero integer; whitespace around the slash is rejected.
pub fn parse_rat(text: &str) -> Result<Rat, QError> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(QError::Parse {
            pos: 0,
            msg: "empty rational".into(),
        });
    }
    let parse_int = |part: &str, pos: usize| -> Result<BigInt, QError> {
        part.parse::<BigInt>().map_err(|_| QError::Parse {
            pos,
            msg: format!("`{part}` is not an integer"),
        })
    };
    match trimmed.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(trimmed, 0)?)),
        Some((num, den)) => {
            let n = parse_int(num, 0)?;
            let d = parse_int(den, num.len() + 1)?;
            if d.is_zero() {
                return Err(QError::Parse {
                    pos: num.len() + 1,
                    msg: "zero denominator".into(),
                });
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// Positive gcd of two rationals: gcd of numerators over lcm of
/// denominators. `gcd(0, x) = |x|`.
pub fn rat_gcd(a: &Rat, b: &Rat) -> Rat {
    use num_integer::Integer;
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    let num = a.numer().gcd(b.numer());
    let den = a.denom().lcm(b.denom());
    Rat::new(num, den)
}
