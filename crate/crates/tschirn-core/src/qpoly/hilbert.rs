//! Hilbert series of graded quotient rings, computed from the initial
//! ideal of a Gröbner basis.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::groebner::{groebner, GroebnerConfig, Ideal};
use super::QError;

/// A rational series numerator(T) / (1 - T)^ambient, stored with the
/// (1 - T) factors cancelled, so `ambient` is the exact pole order and
/// equals the Krull dimension of the graded quotient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HilbertSeries {
    numerator: Vec<BigInt>,
    ambient: usize,
}

impl HilbertSeries {
    /// Normalizes: trims trailing zeros and cancels (1 - T) factors
    /// against the pole until the numerator no longer vanishes at T = 1.
    /// The zero series is stored as an empty numerator with ambient 0.
    pub fn new(mut numerator: Vec<BigInt>, mut ambient: usize) -> Self {
        trim(&mut numerator);
        if numerator.is_empty() {
            return HilbertSeries {
                numerator,
                ambient: 0,
            };
        }
        while ambient > 0 && numerator.iter().sum::<BigInt>().is_zero() {
            numerator = divide_by_one_minus_t(&numerator);
            trim(&mut numerator);
            ambient -= 1;
        }
        HilbertSeries { numerator, ambient }
    }

    pub fn numerator(&self) -> &[BigInt] {
        &self.numerator
    }

    /// Pole order at T = 1 after cancellation.
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Krull dimension of the graded quotient the series came from.
    pub fn krull_dimension(&self) -> usize {
        self.ambient
    }

    /// Coefficient of T^n in the expanded series.
    pub fn coefficient(&self, n: usize) -> BigInt {
        if self.ambient == 0 {
            return self.numerator.get(n).cloned().unwrap_or_else(BigInt::zero);
        }
        let mut total = BigInt::zero();
        for (j, c) in self.numerator.iter().enumerate() {
            if j > n {
                break;
            }
            total += c * binomial(n - j + self.ambient - 1, self.ambient - 1);
        }
        total
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn divide_by_one_minus_t(num: &[BigInt]) -> Vec<BigInt> {
    // If num = (1 - T) * q then q_k = sum of num_0..=num_k.
    let mut out = Vec::with_capacity(num.len().saturating_sub(1));
    let mut acc = BigInt::zero();
    for c in &num[..num.len() - 1] {
        acc += c;
        out.push(acc.clone());
    }
    out
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut out = BigInt::one();
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

impl fmt::Display for HilbertSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator.is_empty() {
            return write!(f, "0");
        }
        let num = format_numerator(&self.numerator);
        if self.ambient == 0 {
            return write!(f, "{num}");
        }
        let wrapped = if self.numerator.iter().filter(|c| !c.is_zero()).count() > 1 {
            format!("({num})")
        } else {
            num
        };
        if self.ambient == 1 {
            write!(f, "{wrapped}/(1 - T)")
        } else {
            write!(f, "{wrapped}/(1 - T)^{}", self.ambient)
        }
    }
}

fn format_numerator(coeffs: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let show_coeff = i == 0 || !abs.is_one();
        if show_coeff {
            out.push_str(&abs.to_string());
        }
        if i > 0 {
            if show_coeff {
                out.push('*');
            }
            out.push('T');
            if i > 1 {
                out.push_str(&format!("^{i}"));
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Removes duplicates and any monomial divisible by another in the list.
fn minimalize(mut mons: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    mons.sort();
    mons.dedup();
    let keep: Vec<bool> = (0..mons.len())
        .map(|i| {
            !(0..mons.len()).any(|j| {
                j != i && mons[j].iter().zip(&mons[i]).all(|(a, b)| a <= b)
            })
        })
        .collect();
    mons.into_iter()
        .zip(keep)
        .filter_map(|(m, k)| k.then_some(m))
        .collect()
}

/// Numerator of the series of R/I for a monomial ideal I, over (1-T)^n,
/// by the generator-removal recursion.
fn monomial_numerator(mons: Vec<Vec<u32>>) -> Vec<BigInt> {
    let mons = minimalize(mons);
    if mons.is_empty() {
        return vec![BigInt::one()];
    }
    if mons.iter().any(|m| m.iter().all(|&e| e == 0)) {
        return Vec::new();
    }
    let mut rest = mons;
    let m = rest.pop().expect("nonempty");
    let deg: u32 = m.iter().sum();
    let n_rest = monomial_numerator(rest.clone());
    let colon: Vec<Vec<u32>> = rest
        .iter()
        .map(|g| g.iter().zip(&m).map(|(a, b)| a.saturating_sub(*b)).collect())
        .collect();
    let n_colon = monomial_numerator(colon);
    // numerator(I) = numerator(rest) - T^deg * numerator(rest : m).
    let mut out = n_rest;
    let shift = deg as usize;
    if out.len() < n_colon.len() + shift {
        out.resize(n_colon.len() + shift, BigInt::zero());
    }
    for (i, c) in n_colon.iter().enumerate() {
        out[i + shift] -= c;
    }
    out
}

/// Hilbert series of the quotient by a homogeneous ideal.
pub fn hilbert_series(ideal: &Ideal) -> Result<HilbertSeries, QError> {
    hilbert_series_with(ideal, &GroebnerConfig::default())
}

/// As [`hilbert_series`], with an explicit Gröbner configuration; the
/// series does not depend on the term order, so the configuration only
/// matters for its step budget.
pub fn hilbert_series_with(
    ideal: &Ideal,
    config: &GroebnerConfig,
) -> Result<HilbertSeries, QError> {
    for g in ideal.generators() {
        if !g.is_homogeneous() {
            return Err(QError::NotHomogeneous(g.to_string()));
        }
    }
    let gb = groebner(ideal, config)?;
    let numerator = monomial_numerator(gb.leading_monomials());
    Ok(HilbertSeries::new(numerator, ideal.vars().len()))
}

/// Dimension of the degree-n graded piece of the quotient.
pub fn hilbert_function(ideal: &Ideal, degree: usize) -> Result<BigInt, QError> {
    Ok(hilbert_series(ideal)?.coefficient(degree))
}

/// Krull dimension of the quotient (pole order of its Hilbert series).
/// The unit ideal has a zero quotient and no dimension.
pub fn krull_dimension(ideal: &Ideal) -> Result<usize, QError> {
    krull_dimension_with(ideal, &GroebnerConfig::default())
}

/// As [`krull_dimension`], with an explicit Gröbner configuration.
pub fn krull_dimension_with(ideal: &Ideal, config: &GroebnerConfig) -> Result<usize, QError> {
    let series = hilbert_series_with(ideal, config)?;
    if series.is_zero() {
        return Err(QError::Shape(
            "the quotient ring is zero; it has no dimension".into(),
        ));
    }
    Ok(series.krull_dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::poly::{MultiPoly, VarSet};

    fn vars4() -> VarSet {
        VarSet::new(["x", "y", "z", "w"])
    }

    fn p(v: &VarSet, s: &str) -> MultiPoly {
        MultiPoly::parse(v, s).unwrap()
    }

    fn series(nums: &[i64], ambient: usize) -> HilbertSeries {
        HilbertSeries::new(nums.iter().map(|&c| BigInt::from(c)).collect(), ambient)
    }

    #[test]
    fn zero_ideal_is_the_full_ring() {
        let v = vars4();
        let hs = hilbert_series(&Ideal::new(&v, vec![])).unwrap();
        assert_eq!(hs, series(&[1], 4));
        assert_eq!(hs.to_string(), "1/(1 - T)^4");
        assert_eq!(hs.coefficient(2), BigInt::from(10));
        assert_eq!(krull_dimension(&Ideal::new(&v, vec![])).unwrap(), 4);
    }

    #[test]
    fn the_irrelevant_ideal_cuts_the_origin() {
        let v = vars4();
        let i = Ideal::new(
            &v,
            vec![p(&v, "x"), p(&v, "y"), p(&v, "z"), p(&v, "w")],
        );
        let hs = hilbert_series(&i).unwrap();
        assert_eq!(hs, series(&[1], 0));
        assert_eq!(hs.to_string(), "1");
        assert_eq!(krull_dimension(&i).unwrap(), 0);
        assert_eq!(hilbert_function(&i, 0).unwrap(), BigInt::from(1));
        assert_eq!(hilbert_function(&i, 3).unwrap(), BigInt::from(0));
    }

    #[test]
    fn determinantal_quadrics_have_the_cone_series() {
        let v = vars4();
        let i = Ideal::new(
            &v,
            vec![p(&v, "x*z - y^2"), p(&v, "x*w - y*z"), p(&v, "y*w - z^2")],
        );
        let hs = hilbert_series(&i).unwrap();
        assert_eq!(hs, series(&[1, 2], 2));
        assert_eq!(hs.to_string(), "(1 + 2*T)/(1 - T)^2");
        for n in 0..=8usize {
            assert_eq!(hs.coefficient(n), BigInt::from(3 * n as i64 + 1));
        }
        assert_eq!(krull_dimension(&i).unwrap(), 2);
    }

    #[test]
    fn complete_intersection_of_two_quadrics() {
        let v = vars4();
        let i = Ideal::new(&v, vec![p(&v, "x^2 + w^2"), p(&v, "y^2 + z^2")]);
        let hs = hilbert_series(&i).unwrap();
        assert_eq!(hs, series(&[1, 2, 1], 2));
        assert_eq!(hs.to_string(), "(1 + 2*T + T^2)/(1 - T)^2");
    }

    #[test]
    fn non_homogeneous_input_is_rejected() {
        let v = vars4();
        let i = Ideal::new(&v, vec![p(&v, "x^2 + y")]);
        assert!(matches!(
            hilbert_series(&i),
            Err(QError::NotHomogeneous(_))
        ));
    }

    #[test]
    fn unit_ideal_gives_the_zero_series() {
        let v = vars4();
        let i = Ideal::new(&v, vec![p(&v, "5")]);
        let hs = hilbert_series(&i).unwrap();
        assert!(hs.is_zero());
        assert_eq!(hs.coefficient(0), BigInt::from(0));
        assert!(krull_dimension(&i).is_err());
    }

    #[test]
    fn one_variable_in_a_line() {
        let v = VarSet::new(["x", "y"]);
        let i = Ideal::new(&v, vec![p(&v, "x")]);
        let hs = hilbert_series(&i).unwrap();
        assert_eq!(hs, series(&[1], 1));
        assert_eq!(hs.to_string(), "1/(1 - T)");
        assert_eq!(krull_dimension(&i).unwrap(), 1);
    }

    #[test]
    fn displayed_numerators_read_naturally() {
        assert_eq!(series(&[1, -1], 0).to_string(), "1 - T");
        assert_eq!(series(&[0, 2, 0, 3], 0).to_string(), "2*T + 3*T^3");
        assert_eq!(series(&[-2], 3).to_string(), "-2/(1 - T)^3");
        assert_eq!(series(&[], 5).to_string(), "0");
    }

    #[test]
    fn cancellation_normalizes_the_pole_order() {
        // (1 - T)/(1 - T)^2 is stored as 1/(1 - T).
        let hs = series(&[1, -1], 2);
        assert_eq!(hs, series(&[1], 1));
        assert_eq!(hs.ambient(), 1);
    }

    #[test]
    fn binomial_helper() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(3, 0), BigInt::from(1));
        assert_eq!(binomial(2, 3), BigInt::from(0));
    }
}
