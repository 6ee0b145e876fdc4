//! Determinants, Sylvester resultants, discriminants, and Jacobian ideals.

use num_traits::Zero;

use super::groebner::Ideal;
use super::poly::{MultiPoly, VarSet};
use super::rat::Rat;
use super::QError;

/// Determinant of a square matrix of polynomials over one context, by
/// cofactor expansion with zero pruning. Intended for the small matrices
/// that arise from Sylvester constructions and Jacobian minors.
pub fn determinant(rows: &[Vec<MultiPoly>]) -> Result<MultiPoly, QError> {
    let n = rows.len();
    if n == 0 {
        return Err(QError::Shape("determinant of an empty matrix".into()));
    }
    let vars = rows[0][0].vars().clone();
    for row in rows {
        if row.len() != n {
            return Err(QError::Shape(format!(
                "matrix is not square: {} rows, a row of width {}",
                n,
                row.len()
            )));
        }
        for entry in row {
            if entry.vars() != &vars {
                return Err(QError::ContextMismatch {
                    left: vars.joined(),
                    right: entry.vars().joined(),
                });
            }
        }
    }
    let index: Vec<usize> = (0..n).collect();
    det_rec(rows, 0, &index, &vars)
}

fn det_rec(
    rows: &[Vec<MultiPoly>],
    row: usize,
    cols: &[usize],
    vars: &VarSet,
) -> Result<MultiPoly, QError> {
    if cols.is_empty() {
        return Ok(MultiPoly::one(vars));
    }
    let mut acc = MultiPoly::zero(vars);
    for (k, &col) in cols.iter().enumerate() {
        let entry = &rows[row][col];
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols
            .iter()
            .copied()
            .filter(|&c| c != col)
            .collect();
        let minor = det_rec(rows, row + 1, &rest, vars)?;
        let signed = if k % 2 == 0 {
            entry.mul(&minor)?
        } else {
            entry.mul(&minor)?.neg()
        };
        acc = acc.add(&signed)?;
    }
    Ok(acc)
}

/// Sylvester matrix of f and g with respect to `var`, built at the stated
/// degree bounds. Coefficients above the actual degree are zero; stating a
/// bound below the actual degree is a shape error.
pub fn sylvester_matrix(
    f: &MultiPoly,
    g: &MultiPoly,
    var: &str,
    deg_f: u32,
    deg_g: u32,
) -> Result<Vec<Vec<MultiPoly>>, QError> {
    let vars = f.vars().clone();
    if g.vars() != &vars {
        return Err(QError::ContextMismatch {
            left: vars.joined(),
            right: g.vars().joined(),
        });
    }
    let v = vars
        .index_of(var)
        .ok_or_else(|| QError::UnknownVariable(var.to_string()))?;
    let fc = padded_coeffs(f, v, deg_f)?;
    let gc = padded_coeffs(g, v, deg_g)?;
    let m = deg_f as usize;
    let n = deg_g as usize;
    let size = m + n;
    if size == 0 {
        return Err(QError::DegenerateResultant(var.to_string()));
    }
    let mut rows = vec![vec![MultiPoly::zero(&vars); size]; size];
    for i in 0..n {
        for j in 0..=m {
            rows[i][i + j] = fc[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=n {
            rows[n + i][i + j] = gc[n - j].clone();
        }
    }
    Ok(rows)
}

fn padded_coeffs(p: &MultiPoly, var: usize, bound: u32) -> Result<Vec<MultiPoly>, QError> {
    let actual = p.degree_in(var).unwrap_or(0);
    if actual > bound {
        return Err(QError::Shape(format!(
            "stated degree bound {bound} is below the actual degree {actual}"
        )));
    }
    let mut cs = p.coeffs_in(var);
    cs.resize((bound + 1) as usize, MultiPoly::zero(p.vars()));
    Ok(cs)
}

/// Resultant of f and g with respect to `var` at their actual degrees.
/// If exactly one input is constant in `var`, the classical convention
/// applies: Res(c, g) = c^deg(g) and Res(f, c) = c^deg(f). Both constant
/// is a degenerate input.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly, QError> {
    let vars = f.vars().clone();
    if g.vars() != &vars {
        return Err(QError::ContextMismatch {
            left: vars.joined(),
            right: g.vars().joined(),
        });
    }
    let v = vars
        .index_of(var)
        .ok_or_else(|| QError::UnknownVariable(var.to_string()))?;
    let df = f.degree_in(v).unwrap_or(0);
    let dg = g.degree_in(v).unwrap_or(0);
    match (df, dg) {
        (0, 0) => Err(QError::DegenerateResultant(var.to_string())),
        (0, n) => Ok(f.pow(n)),
        (m, 0) => Ok(g.pow(m)),
        (m, n) => {
            let rows = sylvester_matrix(f, g, var, m, n)?;
            determinant(&rows)
        }
    }
}

/// Resultant built at stated degree bounds rather than actual degrees.
/// Unlike `resultant`, this commutes with specialization of the other
/// variables even when a leading coefficient vanishes under the
/// specialization, because the matrix shape is fixed by the bounds.
pub fn formal_resultant(
    f: &MultiPoly,
    g: &MultiPoly,
    var: &str,
    deg_f: u32,
    deg_g: u32,
) -> Result<MultiPoly, QError> {
    let rows = sylvester_matrix(f, g, var, deg_f, deg_g)?;
    determinant(&rows)
}

/// Discriminant of a polynomial of degree 2 or 3 in `var`, normalized so
/// that disc(z^3 + p*z + q) = -4p^3 - 27q^2 and disc of a monic quadratic
/// z^2 + b*z + c is b^2 - 4c.
pub fn discriminant(f: &MultiPoly, var: &str) -> Result<MultiPoly, QError> {
    let v = f
        .vars()
        .index_of(var)
        .ok_or_else(|| QError::UnknownVariable(var.to_string()))?;
    let deg = f.degree_in(v).unwrap_or(0);
    if deg != 2 && deg != 3 {
        return Err(QError::UnsupportedDegree(deg));
    }
    let res = resultant(f, &f.derivative(v), var)?;
    let lead = f.coeffs_in(v)[deg as usize].clone();
    // (-1)^(deg(deg-1)/2) is -1 for both supported degrees.
    res.neg().div_exact(&lead)
}

/// The ideal generated by the input generators together with all
/// codim-by-codim minors of their Jacobian matrix. When the vanishing
/// locus of the input has pure codimension `codim`, the result cuts out
/// its singular locus.
pub fn jacobian_ideal(ideal: &Ideal, codim: usize) -> Result<Ideal, QError> {
    let vars = ideal.vars().clone();
    let gens = ideal.generators();
    if codim == 0 || codim > vars.len() {
        return Err(QError::Shape(format!(
            "codimension {codim} is outside 1..={}",
            vars.len()
        )));
    }
    if codim > gens.len() {
        return Err(QError::Shape(format!(
            "codimension {codim} exceeds the generator count {}",
            gens.len()
        )));
    }
    let jac: Vec<Vec<MultiPoly>> = gens
        .iter()
        .map(|g| (0..vars.len()).map(|v| g.derivative(v)).collect())
        .collect();
    let mut out = gens.to_vec();
    for rows in combinations(gens.len(), codim) {
        for cols in combinations(vars.len(), codim) {
            let sub: Vec<Vec<MultiPoly>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| jac[r][c].clone()).collect())
                .collect();
            out.push(determinant(&sub)?);
        }
    }
    Ok(Ideal::new(&vars, out))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Quotient of two resultant-style expressions up to a nonzero rational
/// constant: returns Some(c) with left = c * right when the two are
/// proportional, None otherwise.
pub fn proportionality_constant(left: &MultiPoly, right: &MultiPoly) -> Option<Rat> {
    if right.is_zero() {
        return None;
    }
    let (rm, rc) = right.leading(super::poly::TermOrder::Grevlex)?;
    let lc = left.coeff(rm);
    if lc.is_zero() {
        return None;
    }
    let c = lc / rc;
    if left == &right.mul_rat(&c) {
        Some(c)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::rat::int;

    fn ctx3() -> VarSet {
        VarSet::new(["x", "a", "b"])
    }

    fn p(vars: &VarSet, s: &str) -> MultiPoly {
        MultiPoly::parse(vars, s).unwrap()
    }

    #[test]
    fn determinant_small_cases() {
        let vars = ctx3();
        let one = MultiPoly::one(&vars);
        assert_eq!(determinant(&[vec![p(&vars, "a")]]).unwrap(), p(&vars, "a"));
        let m = vec![
            vec![p(&vars, "a"), p(&vars, "b")],
            vec![one.clone(), one.clone()],
        ];
        assert_eq!(determinant(&m).unwrap(), p(&vars, "a - b"));
        assert!(determinant(&[vec![one.clone(), one]]).is_err());
        assert!(determinant(&[]).is_err());
    }

    #[test]
    fn resultant_of_two_linear_factors() {
        let vars = ctx3();
        let r = resultant(&p(&vars, "x - a"), &p(&vars, "x - b"), "x").unwrap();
        assert_eq!(r, p(&vars, "a - b"));
    }

    #[test]
    fn resultant_evaluates_at_the_root() {
        let vars = VarSet::new(["x", "u", "v"]);
        let r = resultant(&p(&vars, "x^2 - u"), &p(&vars, "x - v"), "x").unwrap();
        assert_eq!(r, p(&vars, "v^2 - u"));
    }

    #[test]
    fn resultant_detects_a_common_factor() {
        let vars = ctx3();
        let f = p(&vars, "x^2 - 1");
        assert!(resultant(&f, &f, "x").unwrap().is_zero());
        let g = p(&vars, "(x - a)(x - b)");
        let h = p(&vars, "x - a");
        assert!(resultant(&g, &h, "x").unwrap().is_zero());
    }

    #[test]
    fn resultant_constant_conventions() {
        let vars = ctx3();
        let c = p(&vars, "3");
        let f = p(&vars, "x^2 - 1");
        assert_eq!(resultant(&c, &f, "x").unwrap(), p(&vars, "9"));
        assert_eq!(resultant(&f, &c, "x").unwrap(), p(&vars, "9"));
        assert_eq!(resultant(&p(&vars, "a"), &f, "x").unwrap(), p(&vars, "a^2"));
        assert!(matches!(
            resultant(&c, &p(&vars, "a"), "x"),
            Err(QError::DegenerateResultant(_))
        ));
        assert!(matches!(
            resultant(&c, &f, "q"),
            Err(QError::UnknownVariable(_))
        ));
    }

    #[test]
    fn resultant_is_multiplicative_in_the_first_slot() {
        let vars = ctx3();
        let f = p(&vars, "x - a");
        let g = p(&vars, "x + b");
        let h = p(&vars, "x^2 + a*b");
        let lhs = resultant(&f.mul(&g).unwrap(), &h, "x").unwrap();
        let rhs = resultant(&f, &h, "x")
            .unwrap()
            .mul(&resultant(&g, &h, "x").unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn formal_resultant_matches_actual_at_tight_bounds() {
        let vars = ctx3();
        let f = p(&vars, "x^2 - a");
        let g = p(&vars, "x - b");
        assert_eq!(
            formal_resultant(&f, &g, "x", 2, 1).unwrap(),
            resultant(&f, &g, "x").unwrap()
        );
        assert!(matches!(
            formal_resultant(&f, &g, "x", 1, 1),
            Err(QError::Shape(_))
        ));
    }

    #[test]
    fn formal_resultant_commutes_with_specialization() {
        // f's leading coefficient a vanishes at a=0; the formal matrix at
        // fixed bounds gives the same answer whether a is specialized
        // before or after taking the determinant.
        let vars = ctx3();
        let f = p(&vars, "a*x^2 + x - 1");
        let g = p(&vars, "x - b");
        let symbolic = formal_resultant(&f, &g, "x", 2, 1).unwrap();
        let fixed = symbolic.subst_rat(&[(1, int(0)), (2, int(5))]);
        let specialized = formal_resultant(
            &f.subst_rat(&[(1, int(0))]),
            &g.subst_rat(&[(2, int(5))]),
            "x",
            2,
            1,
        )
        .unwrap();
        assert_eq!(fixed, specialized);
    }

    #[test]
    fn discriminant_of_depressed_cubic() {
        let vars = VarSet::new(["z", "p", "q"]);
        let d = discriminant(&p(&vars, "z^3 + p*z + q"), "z").unwrap();
        assert_eq!(d, p(&vars, "-4p^3 - 27q^2"));
    }

    #[test]
    fn discriminant_of_quadratics() {
        let vars = VarSet::new(["z", "u"]);
        let d = discriminant(&p(&vars, "z^2 - u"), "z").unwrap();
        assert_eq!(d, p(&vars, "4u"));
        let vars2 = VarSet::new(["z", "b", "c"]);
        let d2 = discriminant(&p(&vars2, "z^2 + b*z + c"), "z").unwrap();
        assert_eq!(d2, p(&vars2, "b^2 - 4c"));
    }

    #[test]
    fn discriminant_vanishes_on_repeated_roots() {
        let vars = VarSet::new(["z"]);
        let f = p(&vars, "(z - 1)^2 (z + 2)");
        assert!(discriminant(&f, "z").unwrap().is_zero());
        let vars2 = VarSet::new(["z", "a"]);
        let g = p(&vars2, "(z - a)^2 (z + 1)");
        assert!(discriminant(&g, "z").unwrap().is_zero());
    }

    #[test]
    fn discriminant_rejects_unsupported_degrees() {
        let vars = ctx3();
        assert!(matches!(
            discriminant(&p(&vars, "x - a"), "x"),
            Err(QError::UnsupportedDegree(1))
        ));
        assert!(matches!(
            discriminant(&p(&vars, "x^4 + a"), "x"),
            Err(QError::UnsupportedDegree(4))
        ));
    }

    #[test]
    fn jacobian_ideal_of_a_node() {
        let vars = VarSet::new(["x", "y"]);
        let i = Ideal::new(&vars, vec![p(&vars, "x*y")]);
        let j = jacobian_ideal(&i, 1).unwrap();
        let gens: Vec<String> = j.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(gens, vec!["x*y", "y", "x"]);
    }

    #[test]
    fn jacobian_ideal_shape_errors() {
        let vars = VarSet::new(["x", "y"]);
        let i = Ideal::new(&vars, vec![p(&vars, "x*y")]);
        assert!(matches!(jacobian_ideal(&i, 2), Err(QError::Shape(_))));
        assert!(matches!(jacobian_ideal(&i, 0), Err(QError::Shape(_))));
        assert!(matches!(jacobian_ideal(&i, 3), Err(QError::Shape(_))));
    }

    #[test]
    fn jacobian_ideal_two_by_two_minors() {
        let vars = VarSet::new(["x", "y", "z"]);
        let i = Ideal::new(&vars, vec![p(&vars, "x^2"), p(&vars, "y*z")]);
        let j = jacobian_ideal(&i, 2).unwrap();
        // Jacobian is [[2x,0,0],[0,z,y]]; its 2x2 minors are 2xz, 2xy, 0.
        let gens: Vec<String> = j.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(gens, vec!["x^2", "y*z", "2*x*z", "2*x*y"]);
    }

    #[test]
    fn proportionality_detection() {
        let vars = ctx3();
        let f = p(&vars, "x^2 - a*b");
        let g = f.mul_rat(&crate::qpoly::rat::rat(-3, 7));
        let c = proportionality_constant(&g, &f).unwrap();
        assert_eq!(c, crate::qpoly::rat::rat(-3, 7));
        assert!(proportionality_constant(&g, &p(&vars, "x^2")).is_none());
        assert!(proportionality_constant(&g, &p(&vars, "0")).is_none());
    }

    #[test]
    fn sylvester_matrix_layout() {
        let vars = ctx3();
        let rows = sylvester_matrix(&p(&vars, "x^2 - a"), &p(&vars, "x - b"), "x", 2, 1).unwrap();
        let show: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(|e| e.to_string()).collect())
            .collect();
        assert_eq!(
            show,
            vec![
                vec!["1", "0", "-a"],
                vec!["1", "-b", "0"],
                vec!["0", "1", "-b"],
            ]
        );
    }
}
