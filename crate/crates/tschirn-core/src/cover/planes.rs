//! Decomposition of a degenerate model into three 2-planes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::model::{eliminate_cubic, CoverModel};
use super::CoverError;
use crate::qpoly::{poly_square_root, rat_gcd, MultiPoly, Rat, VarSet};

/// A 2-plane that is the graph of two linear forms: the vanishing locus
/// of z - p(x, y) and w - q(x, y).
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneComponent {
    z_gen: MultiPoly,
    w_gen: MultiPoly,
    z_graph: MultiPoly,
    w_graph: MultiPoly,
}

impl PlaneComponent {
    /// Builds the plane z = z_graph(x, y), w = w_graph(x, y). The graphs
    /// must be linear forms in x and y alone.
    pub fn from_graph(
        vars: &VarSet,
        z_graph: MultiPoly,
        w_graph: MultiPoly,
    ) -> Result<Self, CoverError> {
        for (label, p) in [("z", &z_graph), ("w", &w_graph)] {
            if p.vars() != vars {
                return Err(CoverError::Shape(format!(
                    "graph contexts differ: [{}] vs [{}]",
                    vars.joined(),
                    p.vars().joined()
                )));
            }
            if !is_xy_linear_form(p) {
                return Err(CoverError::Shape(format!(
                    "the {label}-graph `{p}` is not a linear form in x, y"
                )));
            }
        }
        let z = MultiPoly::var(vars, "z")?;
        let w = MultiPoly::var(vars, "w")?;
        Ok(PlaneComponent {
            z_gen: z.sub(&z_graph)?,
            w_gen: w.sub(&w_graph)?,
            z_graph,
            w_graph,
        })
    }

    /// The two independent linear generators z - p and w - q.
    pub fn generators(&self) -> [&MultiPoly; 2] {
        [&self.z_gen, &self.w_gen]
    }

    /// The linear expressions of z and w in terms of x and y; projection
    /// to the (x, y)-plane is bijective on this component.
    pub fn graph(&self) -> (&MultiPoly, &MultiPoly) {
        (&self.z_graph, &self.w_graph)
    }
}

impl fmt::Display for PlaneComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({}, {})", self.z_gen, self.w_gen)
    }
}

/// A line through the origin, as a primitive integer direction vector in
/// the (x, y, z, w) coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct IntersectionLine {
    pub direction: [Rat; 4],
}

impl fmt::Display for IntersectionLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z, w] = &self.direction;
        write!(f, "span({x}, {y}, {z}, {w})")
    }
}

/// The certified decomposition: three plane components and the two
/// distinct lines along which they meet.
#[derive(Debug, Clone, PartialEq)]
pub struct ThreePlanes {
    pub components: Vec<PlaneComponent>,
    pub lines: Vec<IntersectionLine>,
}

impl ThreePlanes {
    /// The generators with x and y rescaled by sigma (the substitution
    /// absorbing a parameter into the coordinates), for display against
    /// reference equations normalized at sigma = 1.
    pub fn rescaled_generators(&self, sigma: &Rat) -> Vec<[MultiPoly; 2]> {
        self.components
            .iter()
            .map(|c| {
                [
                    rescale_xy(&c.z_gen, sigma),
                    rescale_xy(&c.w_gen, sigma),
                ]
            })
            .collect()
    }
}

/// Multiplies every term by sigma^-(deg_x + deg_y), realizing x -> x/sigma,
/// y -> y/sigma.
fn rescale_xy(p: &MultiPoly, sigma: &Rat) -> MultiPoly {
    let vars = p.vars().clone();
    let ix = vars.index_of("x").expect("x exists");
    let iy = vars.index_of("y").expect("y exists");
    let inv = Rat::one() / sigma;
    let mut out = MultiPoly::zero(&vars);
    for (m, c) in p.terms() {
        let k = m[ix] + m[iy];
        let mut scale = Rat::one();
        for _ in 0..k {
            scale *= &inv;
        }
        let term = MultiPoly::monomial(&vars, m.clone(), c * &scale);
        out = out.add(&term).expect("same context");
    }
    out
}

fn is_xy_linear_form(p: &MultiPoly) -> bool {
    if p.is_zero() {
        return true;
    }
    let vars = p.vars();
    let (ix, iy) = match (vars.index_of("x"), vars.index_of("y")) {
        (Some(a), Some(b)) => (a, b),
        _ => return false,
    };
    p.terms().all(|(m, _)| {
        m.iter().enumerate().all(|(i, &e)| {
            if i == ix || i == iy {
                e <= 1
            } else {
                e == 0
            }
        }) && m[ix] + m[iy] == 1
    })
}

/// All rational roots of a univariate polynomial given by its
/// coefficients (index = exponent), found through the rational root
/// bound after clearing denominators.
fn rational_roots(coeffs: &[Rat]) -> Vec<Rat> {
    let mut cs: Vec<Rat> = coeffs.to_vec();
    while cs.last().is_some_and(Zero::is_zero) {
        cs.pop();
    }
    let mut roots = Vec::new();
    let mut saw_zero = false;
    while cs.first().is_some_and(Zero::is_zero) {
        saw_zero = true;
        cs.remove(0);
    }
    if saw_zero {
        roots.push(Rat::zero());
    }
    if cs.len() < 2 {
        return roots;
    }
    let mut denom_lcm = BigInt::one();
    for c in &cs {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = cs
        .iter()
        .map(|c| (c * Rat::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let a0 = ints.first().expect("nonempty").abs();
    let an = ints.last().expect("nonempty").abs();
    let eval = |r: &Rat| -> Rat {
        let mut acc = Rat::zero();
        for c in cs.iter().rev() {
            acc = acc * r + c;
        }
        acc
    };
    for p in divisors(&a0) {
        for q in divisors(&an) {
            for sign in [1i64, -1] {
                let candidate =
                    Rat::new(p.clone() * BigInt::from(sign), q.clone());
                if !roots.contains(&candidate) && eval(&candidate).is_zero() {
                    roots.push(candidate);
                }
            }
        }
    }
    roots
}

/// Positive divisors by trial division; the inputs here are cleared
/// coefficients of small cubics, so this stays cheap.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            large.push(&n / &i);
            small.push(i.clone());
        }
        i += 1;
    }
    if small.last() == large.last() {
        large.pop();
    }
    small.extend(large.into_iter().rev());
    small
}

/// The square root of a nonnegative rational that is a perfect square.
fn rat_square_root(c: &Rat) -> Option<Rat> {
    if c.is_negative() {
        return None;
    }
    let num = c.numer();
    let den = c.denom();
    let sn = num.sqrt();
    let sd = den.sqrt();
    if &(&sn * &sn) == num && &(&sd * &sd) == den {
        Some(Rat::new(sn, sd))
    } else {
        None
    }
}

/// Splits a polynomial of positive z-degree with constant leading
/// z-coefficient into linear factors z - alpha x - beta y over the
/// rationals. Returns the distinct factors with multiplicities; fails
/// with the non-splitting cofactor when a factor is missing.
fn linear_z_factors(cubic: &MultiPoly) -> Result<Vec<(Rat, Rat, u32)>, CoverError> {
    let vars = cubic.vars().clone();
    let ix = vars.index_of("x").expect("x exists");
    let iy = vars.index_of("y").expect("y exists");
    let iz = vars.index_of("z").expect("z exists");
    let x = MultiPoly::var_by_index(&vars, ix);
    let y = MultiPoly::var_by_index(&vars, iy);
    let z = MultiPoly::var_by_index(&vars, iz);

    let mut rem = cubic.clone();
    let mut factors: Vec<(Rat, Rat, u32)> = Vec::new();
    while rem.degree_in(iz).unwrap_or(0) > 0 {
        let constants = |assign: &[(usize, Rat)]| -> Vec<Rat> {
            rem.subst_rat(assign)
                .coeffs_in(iz)
                .iter()
                .map(|c| c.as_constant().expect("only z remains"))
                .collect()
        };
        let alphas = rational_roots(&constants(&[(ix, Rat::one()), (iy, Rat::zero())]));
        let betas = rational_roots(&constants(&[(ix, Rat::zero()), (iy, Rat::one())]));
        let mut found = false;
        'search: for alpha in &alphas {
            for beta in &betas {
                let candidate = z
                    .sub(&x.mul_rat(alpha))
                    .expect("same context")
                    .sub(&y.mul_rat(beta))
                    .expect("same context");
                if let Ok(q) = rem.div_exact(&candidate) {
                    rem = q;
                    match factors
                        .iter_mut()
                        .find(|(a, b, _)| a == alpha && b == beta)
                    {
                        Some((_, _, mult)) => *mult += 1,
                        None => factors.push((alpha.clone(), beta.clone(), 1)),
                    }
                    found = true;
                    break 'search;
                }
            }
        }
        if !found {
            return Err(CoverError::NotRationallySplit {
                poly: rem.to_string(),
            });
        }
    }
    Ok(factors)
}

/// Decomposes the minor locus of a degenerate model into exactly three
/// plane components meeting along exactly two distinct lines. Works on
/// parameter-free models over [x, y, z, w] with homogeneous minors.
pub fn decompose_three_planes(model: &CoverModel) -> Result<ThreePlanes, CoverError> {
    let vars = model.vars().clone();
    if vars.len() != 4 {
        return Err(CoverError::Shape(format!(
            "decomposition needs a parameter-free model, got context [{}]",
            vars.joined()
        )));
    }
    if !model.is_homogeneous() {
        return Err(CoverError::Shape(
            "decomposition needs homogeneous minors".into(),
        ));
    }
    let ix = vars.index_of("x").expect("x exists");
    let iy = vars.index_of("y").expect("y exists");
    let iz = vars.index_of("z").expect("z exists");
    let iw = vars.index_of("w").expect("w exists");
    let x = MultiPoly::var_by_index(&vars, ix);
    let y = MultiPoly::var_by_index(&vars, iy);

    let cubic = eliminate_cubic(model)?;
    let z_factors = linear_z_factors(&cubic)?;

    let minors = model.minors().generators();
    let mut components: Vec<PlaneComponent> = Vec::new();
    let mut split_failure: Option<String> = None;
    let half = Rat::new(BigInt::one(), BigInt::from(2));

    for (alpha, beta, _) in &z_factors {
        let z_graph = x
            .mul_rat(alpha)
            .add(&y.mul_rat(beta))
            .expect("same context");
        let substituted: Vec<MultiPoly> = minors
            .iter()
            .map(|m| m.subst_poly(iz, &z_graph).expect("same context"))
            .collect();
        let quadratic = &substituted[2];
        let wc = quadratic.coeffs_in(iw);
        if wc.len() != 3 || wc[2].as_constant() != Some(Rat::one()) {
            return Err(CoverError::DegenerateModel(format!(
                "expected a monic w-quadratic, got `{quadratic}`"
            )));
        }
        let e1 = wc[1].clone();
        let e0 = wc[0].clone();
        let four = Rat::from_integer(4.into());
        let disc_w = e1.mul(&e1).expect("ctx").sub(&e0.mul_rat(&four)).expect("ctx");
        let mut w_candidates: Vec<MultiPoly> = Vec::new();
        if disc_w.is_zero() {
            w_candidates.push(e1.neg().mul_rat(&half));
        } else {
            match poly_square_root(&disc_w) {
                Ok((g, c)) => match rat_square_root(&c) {
                    Some(k) => {
                        let kg = g.mul_rat(&k);
                        w_candidates.push(
                            e1.neg().add(&kg).expect("ctx").mul_rat(&half),
                        );
                        w_candidates.push(
                            e1.neg().sub(&kg).expect("ctx").mul_rat(&half),
                        );
                    }
                    None => split_failure = Some(quadratic.to_string()),
                },
                Err(_) => split_failure = Some(quadratic.to_string()),
            }
        }
        for w_graph in w_candidates {
            if !is_xy_linear_form(&w_graph) && !w_graph.is_zero() {
                continue;
            }
            let on_plane = substituted
                .iter()
                .all(|m| m.subst_poly(iw, &w_graph).expect("ctx").is_zero());
            if !on_plane {
                continue;
            }
            let plane = PlaneComponent::from_graph(&vars, z_graph.clone(), w_graph)?;
            if !components.contains(&plane) {
                components.push(plane);
            }
        }
    }

    if components.len() != 3 {
        if let Some(poly) = split_failure {
            return Err(CoverError::NotRationallySplit { poly });
        }
        return Err(CoverError::ComponentCount {
            expected: 3,
            found: components.len(),
        });
    }
    let lines = intersection_lines(&components)?;
    Ok(ThreePlanes { components, lines })
}

/// The distinct pairwise intersection lines of graph planes. Exactly two
/// distinct lines must occur among the three pairs; anything else is an
/// error carrying the observed count.
pub fn intersection_lines(
    planes: &[PlaneComponent],
) -> Result<Vec<IntersectionLine>, CoverError> {
    let mut lines: Vec<IntersectionLine> = Vec::new();
    for i in 0..planes.len() {
        for j in (i + 1)..planes.len() {
            if let Some(line) = pair_line(&planes[i], &planes[j]) {
                if !lines.contains(&line) {
                    lines.push(line);
                }
            }
        }
    }
    if lines.len() != 2 {
        return Err(CoverError::LineCount {
            expected: 2,
            found: lines.len(),
        });
    }
    Ok(lines)
}

/// The intersection line of two graph planes, when it is a line (the
/// difference system has rank one). Rank two means the planes meet only
/// at the origin; rank zero means they coincide.
fn pair_line(a: &PlaneComponent, b: &PlaneComponent) -> Option<IntersectionLine> {
    let vars = a.z_graph.vars().clone();
    let ix = vars.index_of("x").expect("x exists");
    let iy = vars.index_of("y").expect("y exists");
    let coeff = |p: &MultiPoly, var: usize| -> Rat {
        let mut mono = vec![0u32; vars.len()];
        mono[var] = 1;
        p.coeff(&mono)
    };
    let dp = a.z_graph.sub(&b.z_graph).expect("same context");
    let dq = a.w_graph.sub(&b.w_graph).expect("same context");
    let (px, py) = (coeff(&dp, ix), coeff(&dp, iy));
    let (qx, qy) = (coeff(&dq, ix), coeff(&dq, iy));
    let det = &px * &qy - &py * &qx;
    if !det.is_zero() {
        return None;
    }
    let (rx, ry) = if !px.is_zero() || !py.is_zero() {
        (px, py)
    } else if !qx.is_zero() || !qy.is_zero() {
        (qx, qy)
    } else {
        return None;
    };
    // Kernel direction of r_x * x + r_y * y.
    let (x0, y0) = (ry, -rx);
    let point = [x0.clone(), y0.clone()];
    let z0 = eval_xy(&a.z_graph, ix, iy, &point);
    let w0 = eval_xy(&a.w_graph, ix, iy, &point);
    Some(IntersectionLine {
        direction: primitive([x0, y0, z0, w0]),
    })
}

fn eval_xy(p: &MultiPoly, ix: usize, iy: usize, point: &[Rat; 2]) -> Rat {
    p.subst_rat(&[(ix, point[0].clone()), (iy, point[1].clone())])
        .as_constant()
        .expect("linear form in x, y")
}

/// Scales a rational vector to primitive integer entries with the first
/// nonzero entry positive.
fn primitive(v: [Rat; 4]) -> [Rat; 4] {
    let mut g = Rat::zero();
    for e in &v {
        g = rat_gcd(&g, e);
    }
    if g.is_zero() {
        return v;
    }
    let mut out = v.map(|e| e / &g);
    if let Some(first) = out.iter().find(|e| !e.is_zero()) {
        if first.is_negative() {
            out = out.map(|e| -e);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::model::{build_model, MirandaData};
    use crate::qpoly::int;

    fn parse4(text: &str) -> MultiPoly {
        let vars = VarSet::new(["x", "y", "z", "w"]);
        MultiPoly::parse(&vars, text).unwrap()
    }

    fn graphs(planes: &ThreePlanes) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = planes
            .components
            .iter()
            .map(|c| {
                let (p, q) = c.graph();
                (p.to_string(), q.to_string())
            })
            .collect();
        out.sort();
        out
    }

    #[test]
    fn rational_roots_of_small_polynomials() {
        // 2T^3 - 3T^2 - 3T + 2 = (T - 2)(2T - 1)(T + 1).
        let roots = rational_roots(&[int(2), int(-3), int(-3), int(2)]);
        assert_eq!(roots.len(), 3);
        for r in [int(2), crate::qpoly::rat(1, 2), int(-1)] {
            assert!(roots.contains(&r), "missing {r}");
        }
        // T^2 + 1 has none.
        assert!(rational_roots(&[int(1), int(0), int(1)]).is_empty());
        // T^2 picks up the zero root once.
        assert_eq!(rational_roots(&[int(0), int(0), int(1)]), vec![Rat::zero()]);
    }

    #[test]
    fn splits_at_t_zero_into_the_reference_planes() {
        let model = build_model(&MirandaData::standard(&int(1), &int(0)));
        let planes = decompose_three_planes(&model).unwrap();
        assert_eq!(
            graphs(&planes),
            vec![
                ("-x".into(), "-2*y".into()),
                ("-x".into(), "y".into()),
                ("2*x".into(), "y".into()),
            ]
        );
        assert_eq!(planes.lines.len(), 2);
        // V(z+x, w+2y) meets V(z+x, w-y) along the w = y = 0 axis
        // direction; the two planes with w = y share the x = z = 0 line.
        assert!(planes
            .lines
            .contains(&IntersectionLine {
                direction: [int(1), int(0), int(-1), int(0)],
            }));
        assert!(planes
            .lines
            .contains(&IntersectionLine {
                direction: [int(0), int(1), int(0), int(1)],
            }));
    }

    #[test]
    fn scaled_parameters_rescale_to_the_reference_display() {
        let model = build_model(&MirandaData::standard(&int(2), &int(0)));
        let planes = decompose_three_planes(&model).unwrap();
        let rescaled = planes.rescaled_generators(&int(2));
        let mut shown: Vec<(String, String)> = rescaled
            .iter()
            .map(|[a, b]| (a.to_string(), b.to_string()))
            .collect();
        shown.sort();
        assert_eq!(
            shown,
            vec![
                ("-2*x + z".to_string(), "-y + w".to_string()),
                ("x + z".to_string(), "-y + w".to_string()),
                ("x + z".to_string(), "2*y + w".to_string()),
            ]
        );
    }

    #[test]
    fn splits_at_t_equals_three_s() {
        let model = build_model(&MirandaData::standard(&int(1), &int(3)));
        let planes = decompose_three_planes(&model).unwrap();
        assert_eq!(
            graphs(&planes),
            vec![
                ("-x + 3*y".into(), "-3*x + y".into()),
                ("-x - 3*y".into(), "3*x + y".into()),
                ("2*x".into(), "-2*y".into()),
            ]
        );
        assert_eq!(planes.lines.len(), 2);
        for c in &planes.components {
            let [g1, g2] = c.generators();
            assert_eq!(g1.total_degree(), Some(1));
            assert_eq!(g2.total_degree(), Some(1));
        }
    }

    #[test]
    fn mirror_nonnormal_line_is_not_rational() {
        let model = build_model(&MirandaData::standard(&int(1), &int(-3)));
        let err = decompose_three_planes(&model).unwrap_err();
        match err {
            CoverError::NotRationallySplit { poly } => {
                // The cofactor after removing z - 2x is an irreducible
                // quadric: (z + x)^2 + 9 y^2 up to sign.
                let cofactor = parse4(&poly);
                let expected = parse4("(z + x)^2 + 9 y^2");
                assert!(
                    cofactor == expected || cofactor == expected.neg(),
                    "cofactor was {cofactor}"
                );
            }
            other => panic!("expected a splitting failure, got {other}"),
        }
    }

    #[test]
    fn general_parameters_do_not_decompose() {
        let model = build_model(&MirandaData::standard(&int(1), &int(2)));
        let err = decompose_three_planes(&model).unwrap_err();
        assert!(matches!(err, CoverError::NotRationallySplit { .. }));
    }

    #[test]
    fn three_mutually_transverse_planes_fail_the_line_count() {
        let vars = VarSet::new(["x", "y", "z", "w"]);
        let zero = MultiPoly::zero(&vars);
        let planes = vec![
            PlaneComponent::from_graph(&vars, zero.clone(), zero.clone()).unwrap(),
            PlaneComponent::from_graph(&vars, parse4("x"), parse4("y")).unwrap(),
            PlaneComponent::from_graph(&vars, parse4("2x"), parse4("-y")).unwrap(),
        ];
        let err = intersection_lines(&planes).unwrap_err();
        assert_eq!(
            err,
            CoverError::LineCount {
                expected: 2,
                found: 0
            }
        );
    }

    #[test]
    fn from_graph_rejects_non_linear_graphs() {
        let vars = VarSet::new(["x", "y", "z", "w"]);
        let err =
            PlaneComponent::from_graph(&vars, parse4("x^2"), MultiPoly::zero(&vars)).unwrap_err();
        assert!(err.to_string().contains("not a linear form"));
        let err =
            PlaneComponent::from_graph(&vars, parse4("z"), MultiPoly::zero(&vars)).unwrap_err();
        assert!(err.to_string().contains("not a linear form"));
    }
}
