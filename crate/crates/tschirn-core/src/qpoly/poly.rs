//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rat::{parse_rat, rat_gcd, Rat};
use super::QError;

/// An ordered list of variable names shared by a family of polynomials.
/// Cheap to clone; equality compares the names, not the allocation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    /// Build a context from distinct ASCII identifiers. Panics on an empty
    /// list, a repeated name, or a name that is not an identifier, since a
    /// context is always a literal in the calling code.
    pub fn new<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(!names.is_empty(), "variable context must be nonempty");
        for n in &names {
            assert!(is_identifier(n), "`{n}` is not an ASCII identifier");
        }
        for i in 0..names.len() {
            for j in (i + 1)..names.len() {
                assert!(names[i] != names[j], "repeated variable `{}`", names[i]);
            }
        }
        VarSet(Arc::new(names))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn joined(&self) -> String {
        self.0.join(",")
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Monomial orders used for leading terms, division, and printing.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TermOrder {
    /// Graded reverse lexicographic: compare total degree, then the last
    /// differing exponent, where the smaller entry wins.
    #[default]
    Grevlex,
    /// Pure lexicographic in context order.
    Lex,
}

impl TermOrder {
    /// Compare two exponent vectors of equal length.
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self {
            TermOrder::Grevlex => {
                let da: u64 = a.iter().map(|&e| u64::from(e)).sum();
                let db: u64 = b.iter().map(|&e| u64::from(e)).sum();
                if da != db {
                    return da.cmp(&db);
                }
                for i in (0..a.len()).rev() {
                    if a[i] != b[i] {
                        return b[i].cmp(&a[i]);
                    }
                }
                Ordering::Equal
            }
            TermOrder::Lex => {
                for i in 0..a.len() {
                    if a[i] != b[i] {
                        return a[i].cmp(&b[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// A polynomial over Q in a fixed variable context. Terms map exponent
/// vectors to nonzero coefficients; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    vars: VarSet,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MultiPoly {
    pub fn zero(vars: &VarSet) -> Self {
        MultiPoly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, Rat::one())
    }

    pub fn constant(vars: &VarSet, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn var(vars: &VarSet, name: &str) -> Result<Self, QError> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| QError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_by_index(vars, idx))
    }

    pub fn var_by_index(vars: &VarSet, index: usize) -> Self {
        assert!(index < vars.len());
        let mut exps = vec![0; vars.len()];
        exps[index] = 1;
        Self::monomial(vars, exps, Rat::one())
    }

    pub fn monomial(vars: &VarSet, exps: Vec<u32>, coeff: Rat) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length mismatch");
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    /// The constant coefficient (zero when absent).
    pub fn constant_term(&self) -> Rat {
        self.coeff(&vec![0; self.vars.len()])
    }

    /// When the polynomial is a constant, that constant.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &[u32]) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree, or None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.iter().sum::<u32>())
            .max()
    }

    /// Degree in one variable, or None for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[var]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// Leading term with respect to `order`, or None for zero.
    pub fn leading(&self, order: TermOrder) -> Option<(&Vec<u32>, &Rat)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
    }

    fn require_same_context(&self, other: &MultiPoly) -> Result<(), QError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(QError::ContextMismatch {
                left: self.vars.joined(),
                right: other.vars.joined(),
            })
        }
    }

    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, QError> {
        self.require_same_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, QError> {
        self.require_same_context(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &MultiPoly) -> Result<MultiPoly, QError> {
        self.require_same_context(other)?;
        let mut out = MultiPoly::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                add_term(&mut out.terms, m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul_rat(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn pow(&self, n: u32) -> MultiPoly {
        let mut out = MultiPoly::one(&self.vars);
        for _ in 0..n {
            out = out.mul(self).expect("same context");
        }
        out
    }

    /// Partial derivative with respect to one variable.
    pub fn derivative(&self, var: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2[var] = e - 1;
            add_term(&mut out.terms, m2, c * Rat::from_integer(e.into()));
        }
        out
    }

    /// Coefficients with respect to one variable: entry `i` is the
    /// coefficient of `var^i`, a polynomial in the same context with that
    /// variable's exponent zeroed. Returns an empty vector for zero.
    pub fn coeffs_in(&self, var: usize) -> Vec<MultiPoly> {
        let Some(d) = self.degree_in(var) else {
            return Vec::new();
        };
        let mut out = vec![MultiPoly::zero(&self.vars); (d + 1) as usize];
        for (m, c) in &self.terms {
            let e = m[var] as usize;
            let mut m2 = m.clone();
            m2[var] = 0;
            add_term(&mut out[e].terms, m2, c.clone());
        }
        out
    }

    /// Substitute rationals for some variables, staying in the same
    /// context (the substituted variables simply stop appearing).
    pub fn subst_rat(&self, assignments: &[(usize, Rat)]) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut m2 = m.clone();
            for (var, value) in assignments {
                let e = m2[*var];
                if e > 0 {
                    coeff *= pow_rat(value, e);
                    m2[*var] = 0;
                }
            }
            if !coeff.is_zero() {
                add_term(&mut out.terms, m2, coeff);
            }
        }
        out
    }

    /// Substitute a polynomial for one variable.
    pub fn subst_poly(&self, var: usize, replacement: &MultiPoly) -> Result<MultiPoly, QError> {
        self.require_same_context(replacement)?;
        let coeffs = self.coeffs_in(var);
        let mut out = MultiPoly::zero(&self.vars);
        // Horner evaluation from the top coefficient down.
        for c in coeffs.iter().rev() {
            out = out.mul(replacement)?.add(c)?;
        }
        Ok(out)
    }

    /// Move to a smaller context; fails if a dropped variable occurs.
    pub fn restrict(&self, smaller: &VarSet) -> Result<MultiPoly, QError> {
        let mapping: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| smaller.index_of(n))
            .collect();
        let mut out = MultiPoly::zero(smaller);
        for (m, c) in &self.terms {
            let mut m2 = vec![0u32; smaller.len()];
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match mapping[i] {
                    Some(j) => m2[j] = e,
                    None => {
                        return Err(QError::Shape(format!(
                            "variable `{}` occurs but is not in the target context",
                            self.vars.name(i)
                        )))
                    }
                }
            }
            add_term(&mut out.terms, m2, c.clone());
        }
        Ok(out)
    }

    /// Move to a larger context containing every current variable.
    pub fn extend(&self, larger: &VarSet) -> Result<MultiPoly, QError> {
        let mapping: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                larger
                    .index_of(n)
                    .ok_or_else(|| QError::UnknownVariable(n.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = MultiPoly::zero(larger);
        for (m, c) in &self.terms {
            let mut m2 = vec![0u32; larger.len()];
            for (i, &e) in m.iter().enumerate() {
                m2[mapping[i]] = e;
            }
            add_term(&mut out.terms, m2, c.clone());
        }
        Ok(out)
    }

    /// Evaluate at a full rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len());
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    v *= pow_rat(&point[i], e);
                }
            }
            total += v;
        }
        total
    }

    /// Positive rational content: gcd of numerators over lcm of
    /// denominators. Zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        let mut g = Rat::zero();
        for c in self.terms.values() {
            g = rat_gcd(&g, c);
        }
        g
    }

    /// For each variable, the smallest exponent occurring in any term (the
    /// monomial dividing every term). All zeros for the zero polynomial.
    pub fn monomial_content(&self) -> Vec<u32> {
        let n = self.vars.len();
        let mut mins: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            match &mut mins {
                None => mins = Some(m.clone()),
                Some(v) => {
                    for i in 0..n {
                        v[i] = v[i].min(m[i]);
                    }
                }
            }
        }
        mins.unwrap_or_else(|| vec![0; n])
    }

    /// Divide out a monomial known to divide every term.
    pub fn div_monomial(&self, mono: &[u32]) -> Result<MultiPoly, QError> {
        let mut out = MultiPoly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            for i in 0..m2.len() {
                if m2[i] < mono[i] {
                    return Err(QError::InexactDivision(format!(
                        "monomial content mismatch in `{}`",
                        self.vars.name(i)
                    )));
                }
                m2[i] -= mono[i];
            }
            out.terms.insert(m2, c.clone());
        }
        Ok(out)
    }

    /// Exact division by a single polynomial; fails unless the quotient is
    /// exact. Division is driven by grevlex leading terms.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, QError> {
        self.require_same_context(divisor)?;
        if divisor.is_zero() {
            return Err(QError::DivisionByZero);
        }
        let (dm, dc) = divisor.leading(TermOrder::Grevlex).expect("nonzero");
        let dm = dm.clone();
        let dc = dc.clone();
        let mut q = MultiPoly::zero(&self.vars);
        let mut r = self.clone();
        while let Some((rm, rc)) = r.leading(TermOrder::Grevlex) {
            let mut qm = Vec::with_capacity(rm.len());
            for (a, b) in rm.iter().zip(&dm) {
                if a < b {
                    return Err(QError::InexactDivision(format!(
                        "`{divisor}` does not divide `{self}`"
                    )));
                }
                qm.push(a - b);
            }
            let qc = rc / &dc;
            let qt = MultiPoly::monomial(&self.vars, qm, qc);
            r = r.sub(&qt.mul(divisor)?)?;
            q = q.add(&qt)?;
        }
        Ok(q)
    }

    /// Strip the positive rational content and per-variable monomial
    /// content. The sign is untouched, so normalization commutes with
    /// specialization of parameters. Returns the stripped polynomial, the
    /// rational content, and the monomial content.
    pub fn strip_content(&self) -> (MultiPoly, Rat, Vec<u32>) {
        if self.is_zero() {
            return (self.clone(), Rat::zero(), vec![0; self.vars.len()]);
        }
        let c = self.content();
        let m = self.monomial_content();
        let p = self
            .mul_rat(&(Rat::one() / &c))
            .div_monomial(&m)
            .expect("content divides");
        (p, c, m)
    }

    /// Parse a polynomial in the given context. Grammar: terms joined by
    /// `+`/`-`; a term is a product of rationals (`p` or `p/q`) and powers
    /// (`x` or `x^3`); `*` is optional; parentheses group subexpressions.
    pub fn parse(vars: &VarSet, text: &str) -> Result<MultiPoly, QError> {
        Parser::new(vars, text).parse()
    }
}

fn add_term(terms: &mut BTreeMap<Vec<u32>, Rat>, mono: Vec<u32>, coeff: Rat) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(mono) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let sum = e.get() + coeff;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
    }
}

fn pow_rat(base: &Rat, e: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e {
        out *= base;
    }
    out
}

// ---------------------------------------------------------------------------
// Printing: canonical form lists terms in descending grevlex order.
// ---------------------------------------------------------------------------

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut monos: Vec<&Vec<u32>> = self.terms.keys().collect();
        monos.sort_by(|a, b| TermOrder::Grevlex.cmp(b, a));
        for (i, m) in monos.iter().enumerate() {
            let c = &self.terms[*m];
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let is_const_mono = m.iter().all(|&e| e == 0);
            if is_const_mono {
                write!(f, "{abs}")?;
            } else {
                let mut wrote = false;
                if !abs.is_one() {
                    write!(f, "{abs}")?;
                    wrote = true;
                }
                for (vi, &e) in m.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if wrote {
                        write!(f, "*")?;
                    }
                    write!(f, "{}", self.vars.name(vi))?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                    wrote = true;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parsing.
// ---------------------------------------------------------------------------

struct Parser<'a> {
    vars: &'a VarSet,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(vars: &'a VarSet, text: &'a str) -> Self {
        Parser {
            vars,
            bytes: text.as_bytes(),
            pos: 0,
        }
    }

    fn parse(mut self) -> Result<MultiPoly, QError> {
        let p = self.expression()?;
        self.skip_ws();
        if self.pos < self.bytes.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn err(&self, msg: &str) -> QError {
        QError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expression(&mut self) -> Result<MultiPoly, QError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, QError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?)?;
                }
                // Juxtaposition: a factor can start right after another.
                Some(c) if c == b'(' || c.is_ascii_alphabetic() || c == b'_' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, QError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expression()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                let e = self.optional_exponent()?;
                Ok(inner.pow(e))
            }
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(MultiPoly::constant(self.vars, r))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                // Juxtaposed variables are written without separators, so
                // take the longest prefix that names a variable.
                let span = self.identifier_span();
                let (name, idx) = self.longest_variable_prefix(&span)?;
                self.pos += name.len();
                let e = self.optional_exponent()?;
                let mut exps = vec![0u32; self.vars.len()];
                exps[idx] = e;
                Ok(MultiPoly::monomial(self.vars, exps, Rat::one()))
            }
            _ => Err(self.err("expected a factor")),
        }
    }

    fn optional_exponent(&mut self) -> Result<u32, QError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.integer_literal()?;
            n.parse::<u32>().map_err(|_| self.err("bad exponent"))
        } else {
            Ok(1)
        }
    }

    /// The maximal identifier starting at the cursor, without consuming it.
    fn identifier_span(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        let mut end = start;
        while end < self.bytes.len() {
            let c = self.bytes[end];
            if c.is_ascii_alphanumeric() || c == b'_' {
                end += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.bytes[start..end]).into_owned()
    }

    fn longest_variable_prefix(&self, span: &str) -> Result<(String, usize), QError> {
        for len in (1..=span.len()).rev() {
            let prefix = &span[..len];
            if let Some(idx) = self.vars.index_of(prefix) {
                return Ok((prefix.to_string(), idx));
            }
        }
        Err(QError::UnknownVariable(span.to_string()))
    }

    fn integer_literal(&mut self) -> Result<String, QError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned())
    }

    /// An unsigned rational literal `p` or `p/q`; the slash binds only when
    /// followed by digits, so `1/2` is a coefficient but `x/2` is an error
    /// before this function is ever reached.
    fn rational(&mut self) -> Result<Rat, QError> {
        let num = self.integer_literal()?;
        let save = self.pos;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            if self
                .bytes
                .get(self.pos)
                .is_some_and(|c| c.is_ascii_digit())
            {
                let den = self.integer_literal()?;
                return parse_rat(&format!("{num}/{den}"));
            }
            self.pos = save;
        }
        parse_rat(&num)
    }
}
