//! Ideals, normal-form reduction, and Buchberger's algorithm.

use std::collections::BTreeSet;

use num_traits::One;

use super::poly::{MultiPoly, TermOrder, VarSet};
use super::rat::Rat;
use super::QError;

/// Default cap on reduction steps for a single Gröbner run; generous for
/// the small ideals this crate targets.
pub const DEFAULT_STEP_BUDGET: u64 = 200_000;

/// A finitely generated ideal in a fixed variable context. Zero
/// generators are dropped; an empty generator list is the zero ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ideal {
    vars: VarSet,
    gens: Vec<MultiPoly>,
}

impl Ideal {
    /// Panics if a generator lives in a different context, since ideals
    /// are always assembled from polynomials built over one context.
    pub fn new(vars: &VarSet, gens: Vec<MultiPoly>) -> Self {
        for g in &gens {
            assert_eq!(
                g.vars(),
                vars,
                "ideal generator context mismatch: [{}] vs [{}]",
                g.vars().joined(),
                vars.joined()
            );
        }
        Ideal {
            vars: vars.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }
}

/// Options for a Gröbner run.
#[derive(Clone, Copy, Debug)]
pub struct GroebnerConfig {
    pub order: TermOrder,
    pub step_budget: u64,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            order: TermOrder::Grevlex,
            step_budget: DEFAULT_STEP_BUDGET,
        }
    }
}

/// A reduced Gröbner basis: monic elements, no leading term divides
/// another, every tail fully reduced, sorted by ascending leading
/// monomial.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroebnerBasis {
    vars: VarSet,
    order: TermOrder,
    basis: Vec<MultiPoly>,
    steps: u64,
}

impl GroebnerBasis {
    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    pub fn basis(&self) -> &[MultiPoly] {
        &self.basis
    }

    /// Reduction steps consumed while computing this basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly, QError> {
        normal_form(f, &self.basis, self.order)
    }

    /// Ideal membership by reduction to zero.
    pub fn contains(&self, f: &MultiPoly) -> Result<bool, QError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn to_ideal(&self) -> Ideal {
        Ideal::new(&self.vars, self.basis.clone())
    }

    /// Leading monomials of the basis (minimal generators of the initial
    /// ideal).
    pub fn leading_monomials(&self) -> Vec<Vec<u32>> {
        self.basis
            .iter()
            .map(|g| g.leading(self.order).expect("basis elements nonzero").0.clone())
            .collect()
    }
}

fn divides(d: &[u32], m: &[u32]) -> bool {
    d.iter().zip(m).all(|(a, b)| a <= b)
}

fn lcm_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// The S-polynomial of two nonzero polynomials.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: TermOrder) -> Result<MultiPoly, QError> {
    let (fm, fc) = f
        .leading(order)
        .ok_or_else(|| QError::Shape("s-polynomial of the zero polynomial".into()))?;
    let (gm, gc) = g
        .leading(order)
        .ok_or_else(|| QError::Shape("s-polynomial of the zero polynomial".into()))?;
    let lcm = lcm_exps(fm, gm);
    let tf = MultiPoly::monomial(
        f.vars(),
        lcm.iter().zip(fm).map(|(l, e)| l - e).collect(),
        Rat::one() / fc,
    );
    let tg = MultiPoly::monomial(
        g.vars(),
        lcm.iter().zip(gm).map(|(l, e)| l - e).collect(),
        Rat::one() / gc,
    );
    tf.mul(f)?.sub(&tg.mul(g)?)
}

/// Full normal form of f modulo a list of polynomials: every term of the
/// result is divisible by no leading term of the list. Deterministic
/// (always reduces by the first applicable divisor).
pub fn normal_form(
    f: &MultiPoly,
    basis: &[MultiPoly],
    order: TermOrder,
) -> Result<MultiPoly, QError> {
    let mut steps = 0u64;
    normal_form_budgeted(f, basis, order, &mut steps, u64::MAX)
}

fn normal_form_budgeted(
    f: &MultiPoly,
    basis: &[MultiPoly],
    order: TermOrder,
    steps: &mut u64,
    budget: u64,
) -> Result<MultiPoly, QError> {
    let leads: Vec<(Vec<u32>, Rat)> = basis
        .iter()
        .map(|b| {
            if b.vars() != f.vars() {
                return Err(QError::ContextMismatch {
                    left: f.vars().joined(),
                    right: b.vars().joined(),
                });
            }
            Ok(b.leading(order)
                .map(|(m, c)| (m.clone(), c.clone()))
                .unwrap_or_else(|| (vec![u32::MAX; f.vars().len()], Rat::one())))
        })
        .collect::<Result<_, _>>()?;
    let mut remainder = MultiPoly::zero(f.vars());
    let mut p = f.clone();
    'outer: while let Some((pm, pc)) = p.leading(order).map(|(m, c)| (m.clone(), c.clone())) {
        for (b, (bm, bc)) in basis.iter().zip(&leads) {
            if divides(bm, &pm) {
                *steps += 1;
                if *steps > budget {
                    return Err(QError::BudgetExhausted(budget));
                }
                let t = MultiPoly::monomial(
                    f.vars(),
                    pm.iter().zip(bm).map(|(a, c)| a - c).collect(),
                    &pc / bc,
                );
                p = p.sub(&t.mul(b)?)?;
                continue 'outer;
            }
        }
        let head = MultiPoly::monomial(f.vars(), pm, pc);
        remainder = remainder.add(&head)?;
        p = p.sub(&head)?;
    }
    Ok(remainder)
}

/// Buchberger's algorithm with the product and chain criteria and
/// minimal-lcm pair selection, followed by full interreduction. The
/// result is the unique reduced Gröbner basis for the given order.
pub fn groebner(ideal: &Ideal, config: &GroebnerConfig) -> Result<GroebnerBasis, QError> {
    let vars = ideal.vars().clone();
    let order = config.order;
    let budget = config.step_budget;
    let mut steps = 0u64;

    let mut basis: Vec<MultiPoly> = ideal.generators().iter().map(|g| monic(g, order)).collect();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 1..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        let (i, j) = select_pair(&pending, &basis, order);
        pending.remove(&(i, j));
        steps += 1;
        if steps > budget {
            return Err(QError::BudgetExhausted(budget));
        }
        let lt_i = basis[i].leading(order).expect("nonzero").0;
        let lt_j = basis[j].leading(order).expect("nonzero").0;
        let lcm = lcm_exps(lt_i, lt_j);
        // Product criterion: coprime leading terms reduce to zero.
        if lcm.iter().zip(lt_i.iter().zip(lt_j)).all(|(l, (a, b))| *l == a + b) {
            continue;
        }
        // Chain criterion: some third element divides the lcm and both
        // of its pairs with i and j are already settled.
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].leading(order).expect("nonzero").0, &lcm)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j], order)?;
        let r = normal_form_budgeted(&s, &basis, order, &mut steps, budget)?;
        if !r.is_zero() {
            let r = monic(&r, order);
            let new = basis.len();
            basis.push(r);
            for k in 0..new {
                pending.insert((k, new));
            }
        }
    }

    let basis = interreduce(basis, order, &mut steps, budget)?;
    Ok(GroebnerBasis {
        vars,
        order,
        basis,
        steps,
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

fn monic(p: &MultiPoly, order: TermOrder) -> MultiPoly {
    match p.leading(order) {
        Some((_, c)) => p.mul_rat(&(Rat::one() / c)),
        None => p.clone(),
    }
}

fn select_pair(
    pending: &BTreeSet<(usize, usize)>,
    basis: &[MultiPoly],
    order: TermOrder,
) -> (usize, usize) {
    let mut best: Option<((usize, usize), Vec<u32>)> = None;
    for &(i, j) in pending {
        let lcm = lcm_exps(
            basis[i].leading(order).expect("nonzero").0,
            basis[j].leading(order).expect("nonzero").0,
        );
        let better = match &best {
            None => true,
            Some((_, cur)) => order.cmp(&lcm, cur) == std::cmp::Ordering::Less,
        };
        if better {
            best = Some(((i, j), lcm));
        }
    }
    best.expect("pending nonempty").0
}

fn interreduce(
    mut basis: Vec<MultiPoly>,
    order: TermOrder,
    steps: &mut u64,
    budget: u64,
) -> Result<Vec<MultiPoly>, QError> {
    basis.retain(|g| !g.is_zero());
    // Minimalize: drop any element whose leading term another divides.
    let lts: Vec<Vec<u32>> = basis
        .iter()
        .map(|g| g.leading(order).expect("nonzero").0.clone())
        .collect();
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !(0..basis.len()).any(|j| {
                j != i && divides(&lts[j], &lts[i]) && (lts[j] != lts[i] || j < i)
            })
        })
        .collect();
    let mut basis: Vec<MultiPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // Fully reduce every tail against the rest, to a fixpoint.
    loop {
        let mut changed = false;
        for i in 0..basis.len() {
            let others: Vec<MultiPoly> = basis
                .iter()
                .enumerate()
                .filter_map(|(j, g)| (j != i).then(|| g.clone()))
                .collect();
            let r = normal_form_budgeted(&basis[i], &others, order, steps, budget)?;
            let r = monic(&r, order);
            if r != basis[i] {
                basis[i] = r;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    basis.sort_by(|a, b| {
        order.cmp(
            a.leading(order).expect("nonzero").0,
            b.leading(order).expect("nonzero").0,
        )
    });
    Ok(basis)
}
