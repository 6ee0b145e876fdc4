//! Line-oriented text format for ledger problems.
//!
//! One declaration per line; blank lines and `#` comments are skipped.
//!
//! ```text
//! sheaf TS "tangent sheaf of the surface"
//! axiom TS h0 = 0 why "no vector fields on a general-type surface"
//! axiom OS h = (1, 2, 2) why "structure sheaf cohomology"
//! chi END = 0 why "Riemann-Roch"
//! ses TANG : TS -> TPS -> NSP why "restricted tangent sequence"
//! serre FD F why "duality on the base"
//! sum ATA = OS + OS why "the pullback splits"
//! maprank TANG h1 A = 3 why "the induced map has rank 3"
//! claim TS h = (0, 4, 4)
//! ```
//!
//! Every fact (`axiom`, `chi`, `ses`, `serre`, `sum`, `maprank`) ends in a
//! mandatory `why "..."` provenance clause; `sheaf` takes an optional
//! quoted description and `claim` takes none.

use super::solve::{Claim, LedgerProblem, RuleKind};
use super::LedgerError;
use crate::qpoly::parse_rat;

/// A parsed script: the problem, the claims to verify, and the sheaf
/// descriptions encountered.
#[derive(Debug, Clone, Default)]
pub struct ParsedLedger {
    pub problem: LedgerProblem,
    pub claims: Vec<Claim>,
    pub docs: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Quoted(String),
    Sym(&'static str),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Quoted(_) => "quoted string".into(),
            Tok::Sym(s) => format!("`{s}`"),
        }
    }
}

fn lex(line: &str, lineno: usize) -> Result<Vec<Tok>, LedgerError> {
    let err = |msg: String| LedgerError::Parse { line: lineno, msg };
    let bytes = line.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' => i += 1,
            b'"' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j] != b'"' {
                    j += 1;
                }
                if j == bytes.len() {
                    return Err(err("unterminated quoted string".into()));
                }
                out.push(Tok::Quoted(line[start..j].to_string()));
                i = j + 1;
            }
            b'(' => {
                out.push(Tok::Sym("("));
                i += 1;
            }
            b')' => {
                out.push(Tok::Sym(")"));
                i += 1;
            }
            b',' => {
                out.push(Tok::Sym(","));
                i += 1;
            }
            b'=' => {
                out.push(Tok::Sym("="));
                i += 1;
            }
            b':' => {
                out.push(Tok::Sym(":"));
                i += 1;
            }
            b'+' => {
                out.push(Tok::Sym("+"));
                i += 1;
            }
            b'-' if i + 1 < bytes.len() && bytes[i + 1] == b'>' => {
                out.push(Tok::Sym("->"));
                i += 2;
            }
            _ => {
                let start = i;
                while i < bytes.len() {
                    let c = bytes[i];
                    let arrow = c == b'-' && i + 1 < bytes.len() && bytes[i + 1] == b'>';
                    if c == b' '
                        || c == b'\t'
                        || c == b'"'
                        || b"(),=:+".contains(&c)
                        || arrow
                    {
                        break;
                    }
                    i += 1;
                }
                out.push(Tok::Word(line[start..i].to_string()));
            }
        }
    }
    Ok(out)
}

/// Cursor over one line of tokens.
struct Cursor {
    toks: Vec<Tok>,
    pos: usize,
    line: usize,
}

impl Cursor {
    fn err(&self, msg: impl Into<String>) -> LedgerError {
        LedgerError::Parse {
            line: self.line,
            msg: msg.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<Tok, LedgerError> {
        let tok = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.err(format!("expected {what}, found end of line")))?;
        self.pos += 1;
        Ok(tok)
    }

    fn word(&mut self, what: &str) -> Result<String, LedgerError> {
        match self.next(what)? {
            Tok::Word(w) => Ok(w),
            other => Err(self.err(format!("expected {what}, found {}", other.describe()))),
        }
    }

    fn sym(&mut self, s: &str) -> Result<(), LedgerError> {
        match self.next(&format!("`{s}`"))? {
            Tok::Sym(found) if found == s => Ok(()),
            other => Err(self.err(format!("expected `{s}`, found {}", other.describe()))),
        }
    }

    fn quoted(&mut self, what: &str) -> Result<String, LedgerError> {
        match self.next(what)? {
            Tok::Quoted(q) => Ok(q),
            other => Err(self.err(format!("expected {what}, found {}", other.describe()))),
        }
    }

    /// Mandatory `why "..."` clause, which must end the line.
    fn why(&mut self) -> Result<String, LedgerError> {
        let kw = self.word("`why`")?;
        if kw != "why" {
            return Err(self.err(format!("expected `why`, found `{kw}`")));
        }
        let text = self.quoted("provenance string")?;
        if text.trim().is_empty() {
            return Err(self.err("provenance string is empty"));
        }
        self.finish()?;
        Ok(text)
    }

    fn finish(&self) -> Result<(), LedgerError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some(tok) => Err(self.err(format!(
                "unexpected trailing {}",
                tok.describe()
            ))),
        }
    }

    fn dimension(&mut self) -> Result<i64, LedgerError> {
        let w = self.word("a dimension")?;
        w.parse::<i64>()
            .ok()
            .filter(|v| *v >= 0)
            .ok_or_else(|| self.err(format!("`{w}` is not a nonnegative integer")))
    }

    /// Either `h = (a, b, c)` with `_` wildcards, or `hK = v`.
    fn h_spec(&mut self) -> Result<[Option<i64>; 3], LedgerError> {
        let head = self.word("`h`, `h0`, `h1` or `h2`")?;
        match head.as_str() {
            "h" => {
                self.sym("=")?;
                self.sym("(")?;
                let mut out = [None, None, None];
                for (i, slot) in out.iter_mut().enumerate() {
                    if i > 0 {
                        self.sym(",")?;
                    }
                    let w = self.word("a dimension or `_`")?;
                    if w != "_" {
                        *slot = Some(
                            w.parse::<i64>()
                                .ok()
                                .filter(|v| *v >= 0)
                                .ok_or_else(|| {
                                    self.err(format!("`{w}` is not a nonnegative integer"))
                                })?,
                        );
                    }
                }
                self.sym(")")?;
                Ok(out)
            }
            "h0" | "h1" | "h2" => {
                self.sym("=")?;
                let v = self.dimension()?;
                let deg = head[1..].parse::<usize>().expect("checked above");
                let mut out = [None, None, None];
                out[deg] = Some(v);
                Ok(out)
            }
            other => Err(self.err(format!(
                "expected `h`, `h0`, `h1` or `h2`, found `{other}`"
            ))),
        }
    }
}

/// Parses a ledger script into a problem plus claims.
pub fn parse_script(text: &str) -> Result<ParsedLedger, LedgerError> {
    let mut parsed = ParsedLedger::default();
    let mut labels: Vec<String> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut cur = Cursor {
            toks: lex(line, lineno)?,
            pos: 0,
            line: lineno,
        };
        let head = cur.word("a directive")?;
        let at_line = |e: LedgerError| match e {
            LedgerError::Parse { .. } => e,
            other => LedgerError::Parse {
                line: lineno,
                msg: other.to_string(),
            },
        };
        match head.as_str() {
            "sheaf" => {
                let name = cur.word("a sheaf name")?;
                let doc = match cur.toks.get(cur.pos) {
                    Some(Tok::Quoted(q)) => {
                        let q = q.clone();
                        cur.pos += 1;
                        Some(q)
                    }
                    _ => None,
                };
                cur.finish()?;
                parsed.problem.declare_sheaf(&name).map_err(at_line)?;
                if let Some(doc) = doc {
                    parsed.docs.push((name, doc));
                }
            }
            "axiom" => {
                let name = cur.word("a sheaf name")?;
                let sheaf = parsed.problem.sheaf_index(&name).map_err(at_line)?;
                let h = cur.h_spec()?;
                let why = cur.why()?;
                parsed
                    .problem
                    .add_rule(RuleKind::Axiom { sheaf, h }, &why)
                    .map_err(at_line)?;
            }
            "chi" => {
                let name = cur.word("a sheaf name")?;
                let sheaf = parsed.problem.sheaf_index(&name).map_err(at_line)?;
                cur.sym("=")?;
                let raw_value = cur.word("a rational")?;
                let value = parse_rat(&raw_value)
                    .map_err(|e| cur.err(format!("bad rational `{raw_value}`: {e}")))?;
                let why = cur.why()?;
                parsed
                    .problem
                    .add_rule(RuleKind::Chi { sheaf, value }, &why)
                    .map_err(at_line)?;
            }
            "ses" => {
                let label = cur.word("a sequence label")?;
                cur.sym(":")?;
                let a = cur.word("a sheaf name")?;
                cur.sym("->")?;
                let b = cur.word("a sheaf name")?;
                cur.sym("->")?;
                let c = cur.word("a sheaf name")?;
                let why = cur.why()?;
                let rule = RuleKind::Ses {
                    label: label.clone(),
                    a: parsed.problem.sheaf_index(&a).map_err(at_line)?,
                    b: parsed.problem.sheaf_index(&b).map_err(at_line)?,
                    c: parsed.problem.sheaf_index(&c).map_err(at_line)?,
                };
                if labels.contains(&label) {
                    return Err(cur.err(format!("duplicate sequence label `{label}`")));
                }
                labels.push(label);
                parsed.problem.add_rule(rule, &why).map_err(at_line)?;
            }
            "serre" => {
                let left = cur.word("a sheaf name")?;
                let right = cur.word("a sheaf name")?;
                let why = cur.why()?;
                let rule = RuleKind::Serre {
                    left: parsed.problem.sheaf_index(&left).map_err(at_line)?,
                    right: parsed.problem.sheaf_index(&right).map_err(at_line)?,
                };
                parsed.problem.add_rule(rule, &why).map_err(at_line)?;
            }
            "sum" => {
                let total = cur.word("a sheaf name")?;
                cur.sym("=")?;
                let mut parts = vec![cur.word("a sheaf name")?];
                while matches!(cur.toks.get(cur.pos), Some(Tok::Sym("+"))) {
                    cur.pos += 1;
                    parts.push(cur.word("a sheaf name")?);
                }
                let why = cur.why()?;
                let mut part_ids = Vec::with_capacity(parts.len());
                for p in &parts {
                    part_ids.push(parsed.problem.sheaf_index(p).map_err(at_line)?);
                }
                let rule = RuleKind::Sum {
                    total: parsed.problem.sheaf_index(&total).map_err(at_line)?,
                    parts: part_ids,
                };
                parsed.problem.add_rule(rule, &why).map_err(at_line)?;
            }
            "maprank" => {
                let label = cur.word("a sequence label")?;
                if !labels.contains(&label) {
                    return Err(cur.err(format!("unknown sequence label `{label}`")));
                }
                let deg_word = cur.word("`h0`, `h1` or `h2`")?;
                let deg = match deg_word.as_str() {
                    "h0" => 0usize,
                    "h1" => 1,
                    "h2" => 2,
                    other => {
                        return Err(
                            cur.err(format!("expected `h0`, `h1` or `h2`, found `{other}`"))
                        )
                    }
                };
                let member_word = cur.word("`A`, `B` or `C`")?;
                let member = match member_word.as_str() {
                    "A" => 0usize,
                    "B" => 1,
                    "C" => 2,
                    other => {
                        return Err(cur.err(format!("expected `A`, `B` or `C`, found `{other}`")))
                    }
                };
                cur.sym("=")?;
                let rank = cur.dimension()?;
                let why = cur.why()?;
                let rule = RuleKind::MapRank {
                    label,
                    term: 3 * deg + member + 1,
                    rank,
                };
                parsed.problem.add_rule(rule, &why).map_err(at_line)?;
            }
            "claim" => {
                let name = cur.word("a sheaf name")?;
                let sheaf = parsed.problem.sheaf_index(&name).map_err(at_line)?;
                let h = cur.h_spec()?;
                cur.finish()?;
                parsed.claims.push(Claim { sheaf, h });
            }
            other => {
                return Err(cur.err(format!(
                    "unknown directive `{other}` (expected sheaf, axiom, chi, ses, \
                     serre, sum, maprank or claim)"
                )))
            }
        }
    }
    Ok(parsed)
}
