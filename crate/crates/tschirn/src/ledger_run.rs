//! Ledger scripts as report entries: propagate a parsed script to its
//! fixpoint, verify its claims, and package the outcome with a
//! certificate recording intervals, claim verdicts, and any contradiction.

use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};
use tschirn_core::ledger::{check_consistency, parse_script, ParsedLedger};

use crate::report::{
    Certificate, ClaimCert, ContradictionCert, IntervalCert, Provenance, Report, SheafCert,
    Status, TaskEntry, ValueEntry,
};
use crate::tasks::TaskOutcome;

pub fn ledger_outcome(parsed: &ParsedLedger) -> TaskOutcome {
    let consistency = match check_consistency(&parsed.problem, &parsed.claims) {
        Ok(c) => c,
        Err(err) => {
            return TaskOutcome {
                status: Status::Fail,
                values: Vec::new(),
                certificates: Vec::new(),
                notes: vec![format!("error: {err}")],
            }
        }
    };
    let names = parsed.problem.sheaf_names();
    let report = &consistency.report;

    let sheaves = report
        .sheaves
        .iter()
        .map(|s| SheafCert {
            name: s.name.clone(),
            h: [0, 1, 2].map(|d| IntervalCert {
                lo: s.h[d].lo(),
                hi: s.h[d].hi(),
            }),
        })
        .collect();

    let mut values = Vec::new();
    let claims: Vec<ClaimCert> = parsed
        .claims
        .iter()
        .map(|c| {
            let ok = report.contradiction.is_none()
                && c.h.iter().enumerate().all(|(d, v)| match v {
                    Some(val) => report.sheaves[c.sheaf].h[d].as_point() == Some(*val),
                    None => true,
                });
            for (d, v) in c.h.iter().enumerate() {
                if let Some(val) = v {
                    values.push(ValueEntry::new(
                        &format!("h{d}({})", names[c.sheaf]),
                        val,
                        Provenance::Derived,
                    ));
                }
            }
            ClaimCert {
                sheaf: names[c.sheaf].clone(),
                h: c.h,
                ok,
            }
        })
        .collect();

    let failures: Vec<String> = consistency
        .failures
        .iter()
        .map(|f| f.description.clone())
        .collect();

    let mut notes = Vec::new();
    let contradiction = report.contradiction.as_ref().map(|c| {
        notes.push(format!("contradiction: {}", c.description));
        for &idx in &c.conflict {
            notes.push(format!(
                "conflicting rule {idx}: {}",
                parsed.problem.rule_why(idx)
            ));
        }
        ContradictionCert {
            description: c.description.clone(),
            conflict: c.conflict.clone(),
        }
    });
    for f in &consistency.failures {
        notes.push(format!("claim failed: {}", f.description));
    }

    let status = if report.contradiction.is_some() || !consistency.pass {
        Status::Fail
    } else {
        Status::Pass
    };
    TaskOutcome {
        status,
        values,
        certificates: vec![Certificate::LedgerFixpoint {
            rule_count: parsed.problem.rules().len(),
            sheaves,
            claims,
            failures,
            contradiction,
        }],
        notes,
    }
}

/// Runs one ledger script as a standalone single-entry report. Read and
/// parse errors are input errors, reported as `Err`.
pub fn run_ledger_file(path: &Path) -> Result<Report> {
    let source = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read ledger script {}", path.display()))?;
    let parsed =
        parse_script(&source).with_context(|| format!("ledger script {}", path.display()))?;
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let start = Instant::now();
    let outcome = ledger_outcome(&parsed);
    let entry = TaskEntry {
        task: format!("ledger:{name}"),
        status: outcome.status,
        values: outcome.values,
        certificates: outcome.certificates,
        notes: outcome.notes,
        wall_ms: start.elapsed().as_millis() as u64,
    };
    Ok(Report::assemble(None, vec![entry]))
}
