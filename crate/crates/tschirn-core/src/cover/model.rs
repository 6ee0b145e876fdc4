//! The determinantal matrix, its minors, and the branch discriminant.

use std::fmt;

use num_traits::Zero;

use super::CoverError;
use crate::qpoly::{
    discriminant, formal_resultant, proportionality_constant, Ideal, MultiPoly, Rat, VarSet,
};

/// The four coefficient forms of a determinantal triple-cover model. The
/// standard one-parameter family uses (a, b, c, d) = (s*x, t*y, -t*x, -s*y),
/// either with rational parameter values or with s, t as extra variables.
#[derive(Debug, Clone, PartialEq)]
pub struct MirandaData {
    vars: VarSet,
    a: MultiPoly,
    b: MultiPoly,
    c: MultiPoly,
    d: MultiPoly,
    params: Option<(Rat, Rat)>,
}

impl MirandaData {
    /// Custom data. All four forms must share one context containing the
    /// model variables x, y, z, w, and must not involve z or w.
    pub fn new(
        a: MultiPoly,
        b: MultiPoly,
        c: MultiPoly,
        d: MultiPoly,
    ) -> Result<Self, CoverError> {
        let vars = a.vars().clone();
        for p in [&b, &c, &d] {
            if p.vars() != &vars {
                return Err(CoverError::Shape(format!(
                    "data forms live in different contexts: [{}] vs [{}]",
                    vars.joined(),
                    p.vars().joined()
                )));
            }
        }
        for name in ["x", "y", "z", "w"] {
            if vars.index_of(name).is_none() {
                return Err(CoverError::Shape(format!(
                    "context [{}] is missing the model variable `{name}`",
                    vars.joined()
                )));
            }
        }
        for (label, p) in [("a", &a), ("b", &b), ("c", &c), ("d", &d)] {
            for fiber in ["z", "w"] {
                let idx = vars.index_of(fiber).expect("checked above");
                if p.degree_in(idx).unwrap_or(0) > 0 {
                    return Err(CoverError::Shape(format!(
                        "data form {label} = {p} involves the fiber variable `{fiber}`"
                    )));
                }
            }
        }
        Ok(MirandaData {
            vars,
            a,
            b,
            c,
            d,
            params: None,
        })
    }

    /// The standard family member at rational parameters (s, t), over the
    /// context [x, y, z, w].
    pub fn standard(s: &Rat, t: &Rat) -> Self {
        let vars = VarSet::new(["x", "y", "z", "w"]);
        let x = MultiPoly::var(&vars, "x").expect("x exists");
        let y = MultiPoly::var(&vars, "y").expect("y exists");
        MirandaData {
            vars,
            a: x.mul_rat(s),
            b: y.mul_rat(t),
            c: x.mul_rat(&-t.clone()),
            d: y.mul_rat(&-s.clone()),
            params: Some((s.clone(), t.clone())),
        }
    }

    /// The standard family with s and t kept as variables, over the
    /// context [x, y, z, w, s, t].
    pub fn standard_symbolic() -> Self {
        let vars = VarSet::new(["x", "y", "z", "w", "s", "t"]);
        let parse = |text: &str| MultiPoly::parse(&vars, text).expect("fixed source text");
        MirandaData {
            vars: vars.clone(),
            a: parse("s*x"),
            b: parse("t*y"),
            c: parse("-t*x"),
            d: parse("-s*y"),
            params: None,
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn a(&self) -> &MultiPoly {
        &self.a
    }

    pub fn b(&self) -> &MultiPoly {
        &self.b
    }

    pub fn c(&self) -> &MultiPoly {
        &self.c
    }

    pub fn d(&self) -> &MultiPoly {
        &self.d
    }

    /// The rational (s, t) this datum was built from, when known.
    pub fn params(&self) -> Option<(&Rat, &Rat)> {
        self.params.as_ref().map(|(s, t)| (s, t))
    }
}

/// The 2x3 matrix of a determinantal model together with its minor ideal.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverModel {
    data: MirandaData,
    matrix: [[MultiPoly; 3]; 2],
    minors: Ideal,
    homogeneous: bool,
}

impl CoverModel {
    pub fn data(&self) -> &MirandaData {
        &self.data
    }

    pub fn vars(&self) -> &VarSet {
        self.data.vars()
    }

    pub fn matrix(&self) -> &[[MultiPoly; 3]; 2] {
        &self.matrix
    }

    /// The three 2x2 minors, in column order (01), (02), (12).
    pub fn minors(&self) -> &Ideal {
        &self.minors
    }

    /// Whether every minor is homogeneous in the model variables
    /// x, y, z, w (parameter variables carry weight zero).
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }
}

impl fmt::Display for CoverModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "[{}, {}, {}]",
            self.matrix[0][0], self.matrix[0][1], self.matrix[0][2]
        )?;
        write!(
            f,
            "[{}, {}, {}]",
            self.matrix[1][0], self.matrix[1][1], self.matrix[1][2]
        )
    }
}

/// Total degree in the model variables x, y, z, w only.
fn model_degree(vars: &VarSet, mono: &[u32]) -> u32 {
    ["x", "y", "z", "w"]
        .iter()
        .map(|n| mono[vars.index_of(n).expect("model variable")])
        .sum()
}

fn is_model_homogeneous(p: &MultiPoly) -> bool {
    let vars = p.vars().clone();
    let mut seen: Option<u32> = None;
    for (m, _) in p.terms() {
        let d = model_degree(&vars, m);
        match seen {
            None => seen = Some(d),
            Some(prev) if prev != d => return false,
            Some(_) => {}
        }
    }
    true
}

/// Assembles the matrix [[z+a, w-2d, c], [b, z-2a, w+d]] and its three
/// 2x2 minors.
pub fn build_model(data: &MirandaData) -> CoverModel {
    let vars = data.vars().clone();
    let z = MultiPoly::var(&vars, "z").expect("z exists");
    let w = MultiPoly::var(&vars, "w").expect("w exists");
    let two = Rat::from_integer(2.into());
    let row0 = [
        z.add(&data.a)
            .expect("shared context"),
        w.sub(&data.d.mul_rat(&two)).expect("shared context"),
        data.c.clone(),
    ];
    let row1 = [
        data.b.clone(),
        z.sub(&data.a.mul_rat(&two)).expect("shared context"),
        w.add(&data.d).expect("shared context"),
    ];
    let det = |i: usize, j: usize| -> MultiPoly {
        row0[i]
            .mul(&row1[j])
            .expect("shared context")
            .sub(&row1[i].mul(&row0[j]).expect("shared context"))
            .expect("shared context")
    };
    let minors = vec![det(0, 1), det(0, 2), det(1, 2)];
    let homogeneous = minors.iter().all(is_model_homogeneous);
    CoverModel {
        data: data.clone(),
        matrix: [row0, row1],
        minors: Ideal::new(&vars, minors),
        homogeneous,
    }
}

/// Eliminates w between two of the minors, at the formal w-degree bounds
/// (so the answer commutes with specialization of parameters). Indices
/// refer to the minor order (01), (02), (12).
pub fn eliminate_cubic_pair(
    model: &CoverModel,
    first: usize,
    second: usize,
) -> Result<MultiPoly, CoverError> {
    let minors = model.minors.generators();
    let get = |i: usize| -> Result<&MultiPoly, CoverError> {
        minors
            .get(i)
            .ok_or_else(|| CoverError::Shape(format!("minor index {i} is outside 0..3")))
    };
    let f = get(first)?;
    let g = get(second)?;
    // Minors (01) and (02) are linear in w; minor (12) is quadratic.
    let bound = |i: usize| if i == 2 { 2 } else { 1 };
    let res = formal_resultant(f, g, "w", bound(first), bound(second))?;
    if res.is_zero() {
        return Err(CoverError::DegenerateModel(format!(
            "the resultant of minors {first} and {second} vanishes identically"
        )));
    }
    Ok(res)
}

/// The degree-3 equation in z cut out by the model: the w-resultant of
/// the two w-linear minors. For data (a, b, c, d) it equals
/// -(z+a)^2 (z-2a) - 3bd (z+a) + b^2 c.
pub fn eliminate_cubic(model: &CoverModel) -> Result<MultiPoly, CoverError> {
    let cubic = eliminate_cubic_pair(model, 0, 1)?;
    let iz = model
        .vars()
        .index_of("z")
        .expect("model context has z");
    let deg = cubic.degree_in(iz).unwrap_or(0);
    if deg != 3 {
        return Err(CoverError::DegenerateModel(format!(
            "elimination produced degree {deg} in z instead of 3"
        )));
    }
    Ok(cubic)
}

/// Discriminant in z of the eliminated cubic, stripped of rational and
/// monomial content (sign preserved). The zero polynomial comes back
/// unchanged and signals a branch divisor that is everywhere non-reduced.
pub fn branch_discriminant(model: &CoverModel) -> Result<MultiPoly, CoverError> {
    let cubic = eliminate_cubic(model)?;
    let disc = discriminant(&cubic, "z")?;
    let (normalized, _, _) = disc.strip_content();
    Ok(normalized)
}

/// The reference branch form (t^2-s^2)^2 x^2 y^2 - 4 (s^2 x^2 + s t y^2)
/// (s^2 y^2 + s t x^2) at rational parameters, built in the given context.
pub fn branch_form(vars: &VarSet, s: &Rat, t: &Rat) -> Result<MultiPoly, CoverError> {
    let x = MultiPoly::var(vars, "x")?;
    let y = MultiPoly::var(vars, "y")?;
    let x2 = x.pow(2);
    let y2 = y.pow(2);
    let s2 = s * s;
    let st = s * t;
    let t2 = t * t;
    let square = (&t2 - &s2) * (&t2 - &s2);
    let first = x2.mul_rat(&s2).add(&y2.mul_rat(&st))?;
    let second = y2.mul_rat(&s2).add(&x2.mul_rat(&st))?;
    let cross = x2.mul(&y2)?.mul_rat(&square);
    let four = Rat::from_integer(4.into());
    Ok(cross.sub(&first.mul(&second)?.mul_rat(&four))?)
}

/// The reference branch form with s and t as variables of the context.
pub fn branch_form_symbolic(vars: &VarSet) -> Result<MultiPoly, CoverError> {
    for name in ["x", "y", "s", "t"] {
        if vars.index_of(name).is_none() {
            return Err(CoverError::Shape(format!(
                "context [{}] is missing `{name}`",
                vars.joined()
            )));
        }
    }
    let p = |text: &str| MultiPoly::parse(vars, text).map_err(CoverError::from);
    let square = p("(t^2 - s^2)^2")?;
    let first = p("s^2 x^2 + s t y^2")?;
    let second = p("s^2 y^2 + s t x^2")?;
    let cross = p("x^2 y^2")?.mul(&square)?;
    let four = Rat::from_integer(4.into());
    Ok(cross.sub(&first.mul(&second)?.mul_rat(&four))?)
}

/// A verified proportionality between the computed branch discriminant
/// and the reference branch form.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchCertificate {
    /// Content-normalized discriminant of the eliminated cubic.
    pub discriminant: MultiPoly,
    /// Content-normalized reference form.
    pub reference: MultiPoly,
    /// Nonzero constant with discriminant = lambda * reference.
    pub lambda: Rat,
}

/// Checks that the model's branch discriminant is a nonzero rational
/// multiple of the reference branch form, and returns the constant. The
/// model must come from the standard family (symbolic, or with recorded
/// rational parameters).
pub fn branch_proportionality(model: &CoverModel) -> Result<BranchCertificate, CoverError> {
    let vars = model.vars();
    let reference = match model.data().params() {
        Some((s, t)) => branch_form(vars, s, t)?,
        None if vars.index_of("s").is_some() && vars.index_of("t").is_some() => {
            branch_form_symbolic(vars)?
        }
        None => {
            return Err(CoverError::CertificationFailed(
                "the model records no parameters and has no symbolic s, t".into(),
            ))
        }
    };
    let disc = branch_discriminant(model)?;
    let (reference, _, _) = reference.strip_content();
    match proportionality_constant(&disc, &reference) {
        Some(lambda) if !lambda.is_zero() => Ok(BranchCertificate {
            discriminant: disc,
            reference,
            lambda,
        }),
        _ => Err(CoverError::CertificationFailed(format!(
            "discriminant `{disc}` is not a nonzero rational multiple of `{reference}`"
        ))),
    }
}
