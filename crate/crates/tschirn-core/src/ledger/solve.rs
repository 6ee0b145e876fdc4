//! The narrowing engine over dimension intervals.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::ToPrimitive;

use super::LedgerError;
use crate::qpoly::{is_integer, Rat};

/// Upper bound on full narrowing passes before concluding divergence.
const PASS_LIMIT: usize = 10_000;

/// A nonempty interval of nonnegative integers; `hi = None` is unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    lo: i64,
    hi: Option<i64>,
}

impl Interval {
    /// The full interval `[0, inf)`.
    pub fn any() -> Interval {
        Interval { lo: 0, hi: None }
    }

    /// The one-point interval `[v, v]`.
    pub fn point(v: i64) -> Interval {
        assert!(v >= 0, "dimensions are nonnegative");
        Interval {
            lo: v,
            hi: Some(v),
        }
    }

    /// An explicit interval; panics when `lo > hi` or `lo < 0`.
    pub fn new(lo: i64, hi: Option<i64>) -> Interval {
        assert!(lo >= 0, "dimensions are nonnegative");
        if let Some(h) = hi {
            assert!(lo <= h, "interval must be nonempty");
        }
        Interval { lo, hi }
    }

    /// Lower bound.
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Upper bound, `None` when unbounded.
    pub fn hi(&self) -> Option<i64> {
        self.hi
    }

    /// The single value, when the interval is a point.
    pub fn as_point(&self) -> Option<i64> {
        match self.hi {
            Some(h) if h == self.lo => Some(self.lo),
            _ => None,
        }
    }

    /// Membership test.
    pub fn contains(&self, v: i64) -> bool {
        v >= self.lo && self.hi.map_or(true, |h| v <= h)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.hi {
            Some(h) if h == self.lo => write!(f, "{}", self.lo),
            Some(h) => write!(f, "[{}, {}]", self.lo, h),
            None => write!(f, "[{}, inf)", self.lo),
        }
    }
}

/// Signed interval used for intermediate arithmetic; `None` bounds mean
/// minus and plus infinity respectively.
#[derive(Debug, Clone, Copy)]
struct SInt {
    lo: Option<i64>,
    hi: Option<i64>,
}

impl SInt {
    fn of(iv: Interval) -> SInt {
        SInt {
            lo: Some(iv.lo),
            hi: iv.hi,
        }
    }

    fn constant(v: i64) -> SInt {
        SInt {
            lo: Some(v),
            hi: Some(v),
        }
    }

    fn add(self, o: SInt) -> SInt {
        SInt {
            lo: self.lo.zip(o.lo).map(|(a, b)| a + b),
            hi: self.hi.zip(o.hi).map(|(a, b)| a + b),
        }
    }

    fn neg(self) -> SInt {
        SInt {
            lo: o_neg(self.hi),
            hi: o_neg(self.lo),
        }
    }

    fn sub(self, o: SInt) -> SInt {
        self.add(o.neg())
    }

    /// Intersection; `None` when the two intervals are disjoint.
    fn meet(self, o: SInt) -> Option<SInt> {
        let lo = match (self.lo, o.lo) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        let hi = match (self.hi, o.hi) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if let (Some(l), Some(h)) = (lo, hi) {
            if l > h {
                return None;
            }
        }
        Some(SInt { lo, hi })
    }

    fn contains(self, v: i64) -> bool {
        self.lo.map_or(true, |l| l <= v) && self.hi.map_or(true, |h| h >= v)
    }
}

impl fmt::Display for SInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (Some(l), Some(h)) if l == h => write!(f, "{l}"),
            (Some(l), Some(h)) => write!(f, "[{l}, {h}]"),
            (Some(l), None) => write!(f, "[{l}, inf)"),
            (None, Some(h)) => write!(f, "(-inf, {h}]"),
            (None, None) => write!(f, "(-inf, inf)"),
        }
    }
}

fn o_neg(v: Option<i64>) -> Option<i64> {
    v.map(|x| -x)
}

/// One declared fact with mandatory provenance text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub kind: RuleKind,
    pub why: String,
}

/// The supported fact shapes. Sheaves are referenced by declaration index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleKind {
    /// Pins individual components of a sheaf's dimension triple.
    Axiom {
        sheaf: usize,
        h: [Option<i64>; 3],
    },
    /// Euler characteristic: `h0 - h1 + h2 = value`.
    Chi { sheaf: usize, value: Rat },
    /// Short exact sequence `0 -> a -> b -> c -> 0`, expanded into the
    /// nine-term exact cohomology sequence.
    Ses {
        label: String,
        a: usize,
        b: usize,
        c: usize,
    },
    /// Duality pairing `h^i(left) = h^{2-i}(right)`.
    Serre { left: usize, right: usize },
    /// Componentwise additivity `h(total) = sum of h(parts)`.
    Sum { total: usize, parts: Vec<usize> },
    /// Known rank of the map leaving term `term` (1-based, 1..=9) of the
    /// long exact sequence of the sequence labelled `label`.
    MapRank {
        label: String,
        term: usize,
        rank: i64,
    },
}

/// Sheaf declarations plus the rule list.
#[derive(Debug, Clone, Default)]
pub struct LedgerProblem {
    names: Vec<String>,
    rules: Vec<Rule>,
}

impl LedgerProblem {
    pub fn new() -> LedgerProblem {
        LedgerProblem::default()
    }

    /// Declares a sheaf symbol, returning its index.
    pub fn declare_sheaf(&mut self, name: &str) -> Result<usize, LedgerError> {
        if self.names.iter().any(|n| n == name) {
            return Err(LedgerError::DuplicateSheaf(name.to_string()));
        }
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }

    /// Index of a declared sheaf.
    pub fn sheaf_index(&self, name: &str) -> Result<usize, LedgerError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| LedgerError::UndeclaredSheaf(name.to_string()))
    }

    /// Declared names, in order.
    pub fn sheaf_names(&self) -> &[String] {
        &self.names
    }

    /// The rule list, in declaration order.
    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Adds a rule after structural validation; returns its index.
    pub fn add_rule(&mut self, kind: RuleKind, why: &str) -> Result<usize, LedgerError> {
        let check = |s: usize| -> Result<(), LedgerError> {
            if s < self.names.len() {
                Ok(())
            } else {
                Err(LedgerError::BadRule(format!(
                    "sheaf index {s} out of range"
                )))
            }
        };
        match &kind {
            RuleKind::Axiom { sheaf, h } => {
                check(*sheaf)?;
                if h.iter().flatten().any(|&v| v < 0) {
                    return Err(LedgerError::BadRule(
                        "dimensions are nonnegative".into(),
                    ));
                }
            }
            RuleKind::Chi { sheaf, value } => {
                check(*sheaf)?;
                if is_integer(value) && value.numer().to_i64().is_none() {
                    return Err(LedgerError::BadRule("chi value out of range".into()));
                }
            }
            RuleKind::Ses { label, a, b, c } => {
                check(*a)?;
                check(*b)?;
                check(*c)?;
                if label.is_empty() {
                    return Err(LedgerError::BadRule("sequence label is empty".into()));
                }
            }
            RuleKind::Serre { left, right } => {
                check(*left)?;
                check(*right)?;
            }
            RuleKind::Sum { total, parts } => {
                check(*total)?;
                if parts.is_empty() {
                    return Err(LedgerError::BadRule("sum needs at least one part".into()));
                }
                for &p in parts {
                    check(p)?;
                }
            }
            RuleKind::MapRank { label, term, rank } => {
                if label.is_empty() {
                    return Err(LedgerError::BadRule("sequence label is empty".into()));
                }
                if !(1..=9).contains(term) {
                    return Err(LedgerError::BadRule(format!(
                        "term {term} outside 1..=9"
                    )));
                }
                if *rank < 0 {
                    return Err(LedgerError::BadRule("rank is nonnegative".into()));
                }
            }
        }
        self.rules.push(Rule {
            kind,
            why: why.to_string(),
        });
        Ok(self.rules.len() - 1)
    }

    /// Human-readable one-line description of a rule, without provenance.
    pub fn rule_summary(&self, idx: usize) -> String {
        let name = |s: usize| self.names[s].clone();
        match &self.rules[idx].kind {
            RuleKind::Axiom { sheaf, h } => {
                let parts: Vec<String> = h
                    .iter()
                    .enumerate()
                    .filter_map(|(i, v)| v.map(|v| format!("h{i}={v}")))
                    .collect();
                format!("axiom {}: {}", name(*sheaf), parts.join(" "))
            }
            RuleKind::Chi { sheaf, value } => format!("chi {} = {}", name(*sheaf), value),
            RuleKind::Ses { label, a, b, c } => format!(
                "ses {label}: {} -> {} -> {}",
                name(*a),
                name(*b),
                name(*c)
            ),
            RuleKind::Serre { left, right } => {
                format!("serre {} {}", name(*left), name(*right))
            }
            RuleKind::Sum { total, parts } => {
                let ps: Vec<String> = parts.iter().map(|&p| name(p)).collect();
                format!("sum {} = {}", name(*total), ps.join(" + "))
            }
            RuleKind::MapRank { label, term, rank } => {
                let deg = (term - 1) / 3;
                let member = ["A", "B", "C"][(term - 1) % 3];
                format!("maprank {label} h{deg} {member} = {rank}")
            }
        }
    }

    /// Provenance text of a rule.
    pub fn rule_why(&self, idx: usize) -> &str {
        &self.rules[idx].why
    }
}

/// A claimed point value for some components of a sheaf's triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub sheaf: usize,
    pub h: [Option<i64>; 3],
}

/// Final interval and per-component derivation trace of one sheaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheafOutcome {
    pub name: String,
    pub h: [Interval; 3],
    /// Indices of the rules that contributed to each component.
    pub traces: [Vec<usize>; 3],
}

/// An emptied interval together with an irreducible set of rules that
/// jointly force the emptiness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contradiction {
    pub description: String,
    pub conflict: Vec<usize>,
}

/// Fixpoint of the narrowing loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerReport {
    pub sheaves: Vec<SheafOutcome>,
    pub contradiction: Option<Contradiction>,
}

/// One claim that failed verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimFailure {
    pub description: String,
    pub trace: Vec<usize>,
}

/// Outcome of [`check_consistency`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub pass: bool,
    pub failures: Vec<ClaimFailure>,
    pub report: LedgerReport,
}

#[derive(Debug, Clone)]
struct RawConflict {
    description: String,
    set: BTreeSet<usize>,
}

#[derive(Debug, Clone)]
struct Cell {
    iv: Interval,
    trace: BTreeSet<usize>,
}

impl Cell {
    fn fresh() -> Cell {
        Cell {
            iv: Interval::any(),
            trace: BTreeSet::new(),
        }
    }

    fn pinned_zero() -> Cell {
        Cell {
            iv: Interval::point(0),
            trace: BTreeSet::new(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CellId {
    /// Component `deg` of sheaf `sheaf`.
    H { sheaf: usize, deg: usize },
    /// Rank variable `k` (0..=9) of the sequence at rule index `rule`.
    R { rule: usize, k: usize },
}

struct State<'a> {
    problem: &'a LedgerProblem,
    h: Vec<[Cell; 3]>,
    ranks: Vec<Option<Box<[Cell; 10]>>>,
}

impl<'a> State<'a> {
    fn new(problem: &'a LedgerProblem, active: &[bool]) -> State<'a> {
        let h = vec![
            [Cell::fresh(), Cell::fresh(), Cell::fresh()];
            problem.names.len()
        ];
        let mut ranks: Vec<Option<Box<[Cell; 10]>>> = Vec::with_capacity(problem.rules.len());
        for (idx, rule) in problem.rules.iter().enumerate() {
            if active[idx] && matches!(rule.kind, RuleKind::Ses { .. }) {
                let mut cells: Vec<Cell> = vec![Cell::fresh(); 10];
                cells[0] = Cell::pinned_zero();
                cells[9] = Cell::pinned_zero();
                let boxed: Box<[Cell; 10]> =
                    cells.into_boxed_slice().try_into().expect("length 10");
                ranks.push(Some(boxed));
            } else {
                ranks.push(None);
            }
        }
        State { problem, h, ranks }
    }

    fn cell(&self, id: CellId) -> &Cell {
        match id {
            CellId::H { sheaf, deg } => &self.h[sheaf][deg],
            CellId::R { rule, k } => &self.ranks[rule].as_ref().expect("rank block")[k],
        }
    }

    fn cell_mut(&mut self, id: CellId) -> &mut Cell {
        match id {
            CellId::H { sheaf, deg } => &mut self.h[sheaf][deg],
            CellId::R { rule, k } => &mut self.ranks[rule].as_mut().expect("rank block")[k],
        }
    }

    fn cell_name(&self, id: CellId) -> String {
        match id {
            CellId::H { sheaf, deg } => format!("h{deg}({})", self.problem.names[sheaf]),
            CellId::R { rule, k } => {
                let label = match &self.problem.rules[rule].kind {
                    RuleKind::Ses { label, .. } => label.as_str(),
                    _ => "?",
                };
                format!("rank r{k} in sequence `{label}`")
            }
        }
    }

    fn sint(&self, id: CellId) -> SInt {
        SInt::of(self.cell(id).iv)
    }

    fn trace_union(&self, ids: &[CellId]) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &id in ids {
            out.extend(self.cell(id).trace.iter().copied());
        }
        out
    }

    /// Intersects the cell with `target`; reports whether it changed, or
    /// the conflict set when the intersection empties.
    fn narrow(
        &mut self,
        id: CellId,
        target: SInt,
        rule: usize,
        srcs: BTreeSet<usize>,
    ) -> Result<bool, RawConflict> {
        let name = self.cell_name(id);
        let cell = self.cell_mut(id);
        let new_lo = match target.lo {
            Some(l) => cell.iv.lo.max(l),
            None => cell.iv.lo,
        };
        let new_hi = match (cell.iv.hi, target.hi) {
            (None, t) => t,
            (Some(h), None) => Some(h),
            (Some(h), Some(t)) => Some(h.min(t)),
        };
        if let Some(h) = new_hi {
            if h < new_lo {
                let mut set = cell.trace.clone();
                set.extend(srcs);
                set.insert(rule);
                return Err(RawConflict {
                    description: format!(
                        "{name} is forced into the empty range [{new_lo}, {h}]"
                    ),
                    set,
                });
            }
        }
        let changed = new_lo != cell.iv.lo || new_hi != cell.iv.hi;
        if changed {
            cell.iv = Interval {
                lo: new_lo,
                hi: new_hi,
            };
            cell.trace.insert(rule);
            cell.trace.extend(srcs);
        }
        Ok(changed)
    }

    /// Enforces `x = y + z` by narrowing all three cells.
    fn relate_sum(
        &mut self,
        x: CellId,
        y: CellId,
        z: CellId,
        rule: usize,
    ) -> Result<bool, RawConflict> {
        let mut changed = false;
        let srcs = self.trace_union(&[y, z]);
        let t = self.sint(y).add(self.sint(z));
        changed |= self.narrow(x, t, rule, srcs)?;
        let srcs = self.trace_union(&[x, z]);
        let t = self.sint(x).sub(self.sint(z));
        changed |= self.narrow(y, t, rule, srcs)?;
        let srcs = self.trace_union(&[x, y]);
        let t = self.sint(x).sub(self.sint(y));
        changed |= self.narrow(z, t, rule, srcs)?;
        Ok(changed)
    }
}

/// Active Chi rule for a sheaf, if any: `(rule index, integer value)`.
/// Non-integer values are handled in `apply` as contradictions.
fn chi_facts(problem: &LedgerProblem, active: &[bool], sheaf: usize) -> Vec<(usize, Rat)> {
    problem
        .rules
        .iter()
        .enumerate()
        .filter(|(idx, rule)| {
            active[*idx]
                && matches!(&rule.kind, RuleKind::Chi { sheaf: s, .. } if *s == sheaf)
        })
        .map(|(idx, rule)| match &rule.kind {
            RuleKind::Chi { value, .. } => (idx, value.clone()),
            _ => unreachable!(),
        })
        .collect()
}

fn apply(
    state: &mut State<'_>,
    idx: usize,
    active: &[bool],
    maprank_target: &[Option<usize>],
) -> Result<bool, RawConflict> {
    let rule = &state.problem.rules[idx].kind;
    match rule.clone() {
        RuleKind::Axiom { sheaf, h } => {
            let mut changed = false;
            for (deg, v) in h.iter().enumerate() {
                if let Some(v) = v {
                    changed |= state.narrow(
                        CellId::H { sheaf, deg },
                        SInt::constant(*v),
                        idx,
                        BTreeSet::new(),
                    )?;
                }
            }
            Ok(changed)
        }
        RuleKind::Chi { sheaf, value } => {
            if !is_integer(&value) {
                return Err(RawConflict {
                    description: format!(
                        "chi({}) = {value} cannot be an alternating sum of integers",
                        state.problem.names[sheaf]
                    ),
                    set: BTreeSet::from([idx]),
                });
            }
            for (other, other_value) in chi_facts(state.problem, active, sheaf) {
                if other != idx && other_value != value {
                    return Err(RawConflict {
                        description: format!(
                            "two different chi values for {}: {value} and {other_value}",
                            state.problem.names[sheaf]
                        ),
                        set: BTreeSet::from([idx, other]),
                    });
                }
            }
            let c = value.numer().to_i64().expect("validated at add_rule");
            let h0 = CellId::H { sheaf, deg: 0 };
            let h1 = CellId::H { sheaf, deg: 1 };
            let h2 = CellId::H { sheaf, deg: 2 };
            let mut changed = false;
            let srcs = state.trace_union(&[h1, h2]);
            let t = SInt::constant(c).add(state.sint(h1)).sub(state.sint(h2));
            changed |= state.narrow(h0, t, idx, srcs)?;
            let srcs = state.trace_union(&[h0, h2]);
            let t = state.sint(h0).add(state.sint(h2)).sub(SInt::constant(c));
            changed |= state.narrow(h1, t, idx, srcs)?;
            let srcs = state.trace_union(&[h0, h1]);
            let t = SInt::constant(c).add(state.sint(h1)).sub(state.sint(h0));
            changed |= state.narrow(h2, t, idx, srcs)?;
            Ok(changed)
        }
        RuleKind::Ses { a, b, c, label } => {
            // Euler characteristics must telescope across the sequence.
            let fa = chi_facts(state.problem, active, a);
            let fb = chi_facts(state.problem, active, b);
            let fc = chi_facts(state.problem, active, c);
            if let (Some((ia, va)), Some((ib, vb)), Some((ic, vc))) =
                (fa.first(), fb.first(), fc.first())
            {
                if &(va - vb) + vc != Rat::from_integer(0.into()) {
                    return Err(RawConflict {
                        description: format!(
                            "sequence `{label}`: chi({}) - chi({}) + chi({}) = {} is nonzero",
                            state.problem.names[a],
                            state.problem.names[b],
                            state.problem.names[c],
                            &(va - vb) + vc
                        ),
                        set: BTreeSet::from([idx, *ia, *ib, *ic]),
                    });
                }
            }
            let members = [a, b, c];
            // The same telescope at interval strength: each member's
            // Euler characteristic is bracketed by the alternating sum
            // of its current cohomology intervals and pinned exactly by
            // a chi fact where one exists. Zero must remain reachable
            // even when no individual dimension is forced.
            let mut chi_ivs = [SInt {
                lo: None,
                hi: None,
            }; 3];
            let mut involved: BTreeSet<usize> = BTreeSet::from([idx]);
            for (slot, &sheaf) in members.iter().enumerate() {
                let h: Vec<CellId> =
                    (0..3).map(|deg| CellId::H { sheaf, deg }).collect();
                involved.extend(state.trace_union(&h));
                let from_cells = state
                    .sint(h[0])
                    .sub(state.sint(h[1]))
                    .add(state.sint(h[2]));
                let fact = chi_facts(state.problem, active, sheaf)
                    .into_iter()
                    .find(|(_, v)| is_integer(v));
                chi_ivs[slot] = match fact {
                    Some((fact_idx, v)) => {
                        involved.insert(fact_idx);
                        let v = v.numer().to_i64().expect("integer chi fits i64");
                        match from_cells.meet(SInt::constant(v)) {
                            Some(iv) => iv,
                            None => {
                                return Err(RawConflict {
                                    description: format!(
                                        "sequence `{label}`: chi({}) = {v} falls \
                                         outside the alternating sum {} of its \
                                         cohomology bounds",
                                        state.problem.names[sheaf], from_cells
                                    ),
                                    set: involved,
                                })
                            }
                        }
                    }
                    None => from_cells,
                };
            }
            let telescope = chi_ivs[0].sub(chi_ivs[1]).add(chi_ivs[2]);
            if !telescope.contains(0) {
                return Err(RawConflict {
                    description: format!(
                        "sequence `{label}`: chi({}) - chi({}) + chi({}) is \
                         confined to {} and cannot vanish",
                        state.problem.names[a],
                        state.problem.names[b],
                        state.problem.names[c],
                        telescope
                    ),
                    set: involved,
                });
            }
            let mut changed = false;
            for term in 1..=9usize {
                let deg = (term - 1) / 3;
                let sheaf = members[(term - 1) % 3];
                changed |= state.relate_sum(
                    CellId::H { sheaf, deg },
                    CellId::R {
                        rule: idx,
                        k: term - 1,
                    },
                    CellId::R { rule: idx, k: term },
                    idx,
                )?;
            }
            Ok(changed)
        }
        RuleKind::Serre { left, right } => {
            let mut changed = false;
            for deg in 0..3usize {
                let l = CellId::H { sheaf: left, deg };
                let r = CellId::H {
                    sheaf: right,
                    deg: 2 - deg,
                };
                let srcs = state.trace_union(&[r]);
                let t = state.sint(r);
                changed |= state.narrow(l, t, idx, srcs)?;
                let srcs = state.trace_union(&[l]);
                let t = state.sint(l);
                changed |= state.narrow(r, t, idx, srcs)?;
            }
            Ok(changed)
        }
        RuleKind::Sum { total, parts } => {
            let mut changed = false;
            for deg in 0..3usize {
                let total_id = CellId::H { sheaf: total, deg };
                let part_ids: Vec<CellId> = parts
                    .iter()
                    .map(|&p| CellId::H { sheaf: p, deg })
                    .collect();
                let mut sum = SInt::constant(0);
                for &p in &part_ids {
                    sum = sum.add(state.sint(p));
                }
                let srcs = state.trace_union(&part_ids);
                changed |= state.narrow(total_id, sum, idx, srcs)?;
                for (j, &pj) in part_ids.iter().enumerate() {
                    let mut rest = SInt::constant(0);
                    let mut others = vec![total_id];
                    for (l, &pl) in part_ids.iter().enumerate() {
                        if l != j {
                            rest = rest.add(state.sint(pl));
                            others.push(pl);
                        }
                    }
                    let srcs = state.trace_union(&others);
                    let t = state.sint(total_id).sub(rest);
                    changed |= state.narrow(pj, t, idx, srcs)?;
                }
            }
            Ok(changed)
        }
        RuleKind::MapRank { term, rank, .. } => {
            let Some(ses_idx) = maprank_target[idx] else {
                return Ok(false);
            };
            state.narrow(
                CellId::R {
                    rule: ses_idx,
                    k: term,
                },
                SInt::constant(rank),
                idx,
                BTreeSet::new(),
            )
        }
    }
}

/// Runs the narrowing loop over the active subset of rules.
fn run(
    problem: &LedgerProblem,
    active: &[bool],
    strict: bool,
) -> Result<(Vec<[Cell; 3]>, Option<RawConflict>), LedgerError> {
    // Resolve map-rank facts against active sequence labels.
    let mut labels: Vec<(&str, usize)> = Vec::new();
    for (idx, rule) in problem.rules.iter().enumerate() {
        if !active[idx] {
            continue;
        }
        if let RuleKind::Ses { label, .. } = &rule.kind {
            if labels.iter().any(|(l, _)| *l == label.as_str()) {
                return Err(LedgerError::BadRule(format!(
                    "duplicate sequence label `{label}`"
                )));
            }
            labels.push((label, idx));
        }
    }
    let mut maprank_target: Vec<Option<usize>> = vec![None; problem.rules.len()];
    for (idx, rule) in problem.rules.iter().enumerate() {
        if !active[idx] {
            continue;
        }
        if let RuleKind::MapRank { label, .. } = &rule.kind {
            match labels.iter().find(|(l, _)| *l == label.as_str()) {
                Some((_, ses_idx)) => maprank_target[idx] = Some(*ses_idx),
                None if strict => {
                    return Err(LedgerError::UnknownSequence(label.clone()));
                }
                None => {}
            }
        }
    }

    let mut state = State::new(problem, active);
    let mut passes = 0usize;
    loop {
        let mut changed = false;
        for idx in 0..problem.rules.len() {
            if !active[idx] {
                continue;
            }
            match apply(&mut state, idx, active, &maprank_target) {
                Ok(c) => changed |= c,
                Err(conflict) => return Ok((state.h, Some(conflict))),
            }
        }
        if !changed {
            return Ok((state.h, None));
        }
        passes += 1;
        if passes > PASS_LIMIT {
            return Err(LedgerError::Divergence(PASS_LIMIT));
        }
    }
}

/// Shrinks a conflict set to an irreducible one: propagating exactly the
/// returned rules still contradicts, and removing any single rule from
/// the set no longer does.
fn minimize(problem: &LedgerProblem, seed: &BTreeSet<usize>) -> Vec<usize> {
    let n = problem.rules.len();
    let contradicts = |set: &BTreeSet<usize>| -> bool {
        let mut active = vec![false; n];
        for &i in set {
            active[i] = true;
        }
        matches!(run(problem, &active, false), Ok((_, Some(_))))
    };
    let mut current: BTreeSet<usize> = if contradicts(seed) {
        seed.clone()
    } else {
        (0..n).collect()
    };
    for r in current.clone() {
        let mut trial = current.clone();
        trial.remove(&r);
        if contradicts(&trial) {
            current = trial;
        }
    }
    current.into_iter().collect()
}

/// Narrows all intervals to the fixpoint and reports the outcome.
pub fn propagate(problem: &LedgerProblem) -> Result<LedgerReport, LedgerError> {
    let active = vec![true; problem.rules.len()];
    let (cells, conflict) = run(problem, &active, true)?;
    let contradiction = conflict.map(|c| Contradiction {
        description: c.description,
        conflict: minimize(problem, &c.set),
    });
    let sheaves = problem
        .names
        .iter()
        .zip(&cells)
        .map(|(name, triple)| SheafOutcome {
            name: name.clone(),
            h: [triple[0].iv, triple[1].iv, triple[2].iv],
            traces: [
                triple[0].trace.iter().copied().collect(),
                triple[1].trace.iter().copied().collect(),
                triple[2].trace.iter().copied().collect(),
            ],
        })
        .collect();
    Ok(LedgerReport {
        sheaves,
        contradiction,
    })
}

/// Propagates, then verifies that every claimed value is forced exactly.
pub fn check_consistency(
    problem: &LedgerProblem,
    claims: &[Claim],
) -> Result<ConsistencyReport, LedgerError> {
    for claim in claims {
        if claim.sheaf >= problem.names.len() {
            return Err(LedgerError::BadRule(format!(
                "claim sheaf index {} out of range",
                claim.sheaf
            )));
        }
    }
    let report = propagate(problem)?;
    let mut failures = Vec::new();
    if let Some(con) = &report.contradiction {
        failures.push(ClaimFailure {
            description: format!("the rule set is contradictory: {}", con.description),
            trace: con.conflict.clone(),
        });
    } else {
        for claim in claims {
            let outcome = &report.sheaves[claim.sheaf];
            for (deg, expected) in claim.h.iter().enumerate() {
                let Some(expected) = expected else { continue };
                let iv = outcome.h[deg];
                match iv.as_point() {
                    Some(v) if v == *expected => {}
                    Some(v) => failures.push(ClaimFailure {
                        description: format!(
                            "claim h{deg}({}) = {expected}: propagation forces {v}",
                            outcome.name
                        ),
                        trace: outcome.traces[deg].clone(),
                    }),
                    None => failures.push(ClaimFailure {
                        description: format!(
                            "claim h{deg}({}) = {expected}: not forced, interval is {iv}",
                            outcome.name
                        ),
                        trace: outcome.traces[deg].clone(),
                    }),
                }
            }
        }
    }
    Ok(ConsistencyReport {
        pass: failures.is_empty(),
        failures,
        report,
    })
}
