//! Certificate re-validation. Every pass verdict in a report must be
//! reproducible from its embedded certificates alone; the checks here
//! redo that reproduction with plain rational arithmetic, never repeating
//! the elimination, Groebner, or propagation work that built the report.

use num_traits::Zero;
use tschirn_core::qpoly::{int, parse_rat, MultiPoly, Rat, VarSet};

use crate::report::{Certificate, Report, Status, TaskEntry};

/// Re-validates every certificate. Returns a list of discrepancies; an
/// empty list means the report is internally consistent.
pub fn recheck_report(report: &Report) -> Vec<String> {
    let mut problems = Vec::new();
    let pass = report
        .tasks
        .iter()
        .filter(|t| t.status == Status::Pass)
        .count();
    let fail = report
        .tasks
        .iter()
        .filter(|t| t.status == Status::Fail)
        .count();
    let uncertified = report.tasks.len() - pass - fail;
    if (pass, fail, uncertified)
        != (
            report.summary.pass,
            report.summary.fail,
            report.summary.uncertified,
        )
    {
        problems.push("summary counts disagree with the task statuses".to_string());
    }
    for entry in &report.tasks {
        for (i, cert) in entry.certificates.iter().enumerate() {
            let mut push = |msg: String| {
                problems.push(format!(
                    "task {}, certificate {} ({}): {}",
                    entry.task,
                    i,
                    cert.kind(),
                    msg
                ));
            };
            if let Err(msg) = check_certificate(entry, cert) {
                push(msg);
            }
        }
    }
    problems
}

fn rat_of(text: &str) -> Result<Rat, String> {
    parse_rat(text).map_err(|e| format!("unreadable rational `{text}`: {e}"))
}

fn check_certificate(entry: &TaskEntry, cert: &Certificate) -> Result<(), String> {
    match cert {
        Certificate::DegenerationFactors {
            s,
            t,
            class,
            factors,
            value,
        } => check_degeneration(s, t, class, factors, value),
        Certificate::ConePoint {
            hilbert_numerator,
            hilbert_ambient,
            singular_dimension,
        } => {
            if hilbert_numerator != &["1".to_string(), "2".to_string()] {
                return Err(format!(
                    "Hilbert numerator {hilbert_numerator:?} is not [1, 2]"
                ));
            }
            if *hilbert_ambient != 2 {
                return Err(format!("ambient dimension {hilbert_ambient} is not 2"));
            }
            if *singular_dimension != 0 {
                return Err(format!(
                    "singular locus dimension {singular_dimension} is not 0"
                ));
            }
            Ok(())
        }
        Certificate::PlaneDecomposition { planes, lines } => check_planes(planes, lines),
        Certificate::BranchProportionality {
            lambda,
            discriminant,
            reference,
            variables,
        } => check_branch(lambda, discriminant, reference, variables),
        Certificate::CoverInvariants {
            chi_base,
            k_base_squared,
            c1_dot_k,
            c1_squared,
            c2,
            h_base,
            h_bundle,
            p_g,
            q,
            k_squared,
            chi,
            ..
        } => check_invariants(
            chi_base,
            k_base_squared,
            c1_dot_k,
            c1_squared,
            c2,
            h_base,
            h_bundle,
            *p_g,
            *q,
            k_squared,
            chi,
        ),
        Certificate::PencilCounts {
            group_order,
            fiber_size,
            branch_points,
            stabilized,
            free_orbits,
            c2_total,
            e_base,
            fiber_genus,
            k_squared,
            chi,
            nodal_delta,
            nodal,
            reducible,
            smooth_hyperelliptic,
        } => check_counts(
            *group_order,
            *fiber_size,
            *branch_points,
            *stabilized,
            *free_orbits,
            *c2_total,
            *e_base,
            *fiber_genus,
            *k_squared,
            *chi,
            *nodal_delta,
            *nodal,
            *reducible,
            *smooth_hyperelliptic,
        ),
        Certificate::CanonicalSplit {
            k_squared,
            xi_self,
            pairing,
            phi_self,
            xi_genus,
            phi_genus,
            euler_number,
            chi,
        } => check_canonical(
            k_squared,
            xi_self,
            pairing,
            phi_self,
            xi_genus,
            phi_genus,
            *euler_number,
            chi,
        ),
        Certificate::LedgerFixpoint {
            rule_count,
            sheaves,
            claims,
            failures,
            contradiction,
        } => check_ledger(
            entry,
            *rule_count,
            sheaves,
            claims,
            failures,
            contradiction.as_ref(),
        ),
        Certificate::ModuliAssembly {
            family_dimension,
            pencil_sections,
            tangent_dimension,
            normal_sections,
            total,
        } => {
            if family_dimension + pencil_sections - 1 != *total {
                return Err(format!(
                    "{family_dimension} + {pencil_sections} - 1 is not {total}"
                ));
            }
            if total != tangent_dimension {
                return Err(format!(
                    "total {total} disagrees with tangent dimension {tangent_dimension}"
                ));
            }
            if family_dimension != normal_sections {
                return Err(format!(
                    "family dimension {family_dimension} disagrees with the embedded count \
                     {normal_sections}"
                ));
            }
            Ok(())
        }
    }
}

fn check_degeneration(
    s: &str,
    t: &str,
    class: &str,
    factors: &[crate::report::FactorValue],
    value: &str,
) -> Result<(), String> {
    let s = rat_of(s)?;
    let t = rat_of(t)?;
    let value = rat_of(value)?;
    let three_s = &s * &int(3);
    let expected: [(&str, Rat); 6] = [
        ("s", s.clone()),
        ("t", t.clone()),
        ("s-t", &s - &t),
        ("s+t", &s + &t),
        ("t-3s", &t - &three_s),
        ("t+3s", &t + &three_s),
    ];
    if factors.len() != 6 {
        return Err(format!("{} factors instead of 6", factors.len()));
    }
    for (f, (name, want)) in factors.iter().zip(expected.iter()) {
        if f.name != *name {
            return Err(format!("factor `{}` out of order, expected `{name}`", f.name));
        }
        if rat_of(&f.value)? != *want {
            return Err(format!("factor {name} is {} but (s, t) give {want}", f.value));
        }
    }
    let any_zero = expected.iter().any(|(_, v)| v.is_zero());
    if value.is_zero() != any_zero {
        return Err(format!(
            "governing value {value} vanishing disagrees with the factor pattern"
        ));
    }
    let expected_class = if t.is_zero() {
        "non-normal (t = 0)"
    } else if t == three_s {
        "non-normal (t = 3s)"
    } else if t == -&three_s {
        "non-normal (t = -3s)"
    } else if s.is_zero() {
        "totally ramified (s = 0)"
    } else if s == t {
        "totally ramified (s = t)"
    } else if s == -&t {
        "totally ramified (s = -t)"
    } else {
        "general"
    };
    if class != expected_class {
        return Err(format!(
            "class `{class}` but the factors give `{expected_class}`"
        ));
    }
    Ok(())
}

fn check_planes(
    planes: &[crate::report::PlaneCert],
    lines: &[[String; 4]],
) -> Result<(), String> {
    if planes.len() != 3 {
        return Err(format!("{} planes instead of 3", planes.len()));
    }
    if lines.len() != 2 {
        return Err(format!("{} lines instead of 2", lines.len()));
    }
    let mut dirs = Vec::new();
    for line in lines {
        let mut d = Vec::new();
        for c in line {
            d.push(rat_of(c)?);
        }
        dirs.push(d);
    }
    let proportional = (0..4).all(|i| {
        (0..4).all(|j| &dirs[0][i] * &dirs[1][j] == &dirs[0][j] * &dirs[1][i])
    });
    if proportional {
        return Err("the two lines coincide".to_string());
    }
    for (li, d) in dirs.iter().enumerate() {
        let mut incident = 0;
        for p in planes {
            let z = &(&rat_of(&p.z_x)? * &d[0]) + &(&rat_of(&p.z_y)? * &d[1]);
            let w = &(&rat_of(&p.w_x)? * &d[0]) + &(&rat_of(&p.w_y)? * &d[1]);
            if z == d[2] && w == d[3] {
                incident += 1;
            }
        }
        if incident < 2 {
            return Err(format!(
                "line {li} lies on {incident} plane(s), expected at least 2"
            ));
        }
    }
    Ok(())
}

fn check_branch(
    lambda: &str,
    discriminant: &str,
    reference: &str,
    variables: &[String],
) -> Result<(), String> {
    let vars = VarSet::new(variables.iter().map(|s| s.as_str()));
    let parse = |text: &str| {
        MultiPoly::parse(&vars, text).map_err(|e| format!("unreadable polynomial: {e}"))
    };
    let disc = parse(discriminant)?;
    let reference = parse(reference)?;
    let lambda = rat_of(lambda)?;
    if lambda.is_zero() {
        return Err("lambda is zero".to_string());
    }
    if disc.is_zero() {
        return Err("the recorded discriminant is zero".to_string());
    }
    if disc != reference.mul_rat(&lambda) {
        return Err("discriminant is not lambda times the reference form".to_string());
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn check_invariants(
    chi_base: &str,
    k_base_squared: &str,
    c1_dot_k: &str,
    c1_squared: &str,
    c2: &str,
    h_base: &[i64; 3],
    h_bundle: &[i64; 3],
    p_g: i64,
    q: i64,
    k_squared: &str,
    chi: &str,
) -> Result<(), String> {
    let chi_base = rat_of(chi_base)?;
    let ky2 = rat_of(k_base_squared)?;
    let c1k = rat_of(c1_dot_k)?;
    let c1_2 = rat_of(c1_squared)?;
    let c2 = rat_of(c2)?;
    let k_squared = rat_of(k_squared)?;
    let chi = rat_of(chi)?;
    let alt = |h: &[i64; 3]| int(h[0] - h[1] + h[2]);
    if alt(h_base) != chi_base {
        return Err(format!(
            "h_base {h_base:?} has alternating sum {} but chi_base is {chi_base}",
            alt(h_base)
        ));
    }
    let rr = &(&int(2) * &chi_base) + &(&(&(&c1_2 - &c1k) / &int(2)) - &c2);
    if alt(h_bundle) != rr {
        return Err(format!(
            "h_bundle {h_bundle:?} has alternating sum {} but Riemann-Roch gives {rr}",
            alt(h_bundle)
        ));
    }
    if p_g != h_base[2] + h_bundle[2] || q != h_base[1] + h_bundle[1] {
        return Err(format!("p_g = {p_g}, q = {q} disagree with the triples"));
    }
    let want_k2 = &(&(&int(3) * &ky2) - &(&int(4) * &c1k)) + &(&(&int(2) * &c1_2) - &(&int(3) * &c2));
    if k_squared != want_k2 {
        return Err(format!("k_squared {k_squared} should be {want_k2}"));
    }
    if chi != &alt(h_base) + &alt(h_bundle) {
        return Err(format!("chi {chi} disagrees with the summed triples"));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn check_counts(
    group_order: i64,
    fiber_size: i64,
    branch_points: i64,
    stabilized: i64,
    free_orbits: i64,
    c2_total: i64,
    e_base: i64,
    fiber_genus: i64,
    k_squared: i64,
    chi: i64,
    nodal_delta: i64,
    nodal: i64,
    reducible: i64,
    smooth_hyperelliptic: i64,
) -> Result<(), String> {
    let e_fiber = 2 - 2 * fiber_genus;
    if nodal_delta <= 0 || nodal * nodal_delta != c2_total - e_base * e_fiber {
        return Err(format!(
            "nodal count {nodal} disagrees with the Euler excess {}",
            c2_total - e_base * e_fiber
        ));
    }
    let budget = k_squared - 3 * chi + 10;
    if budget != stabilized {
        return Err(format!(
            "torsion budget {budget} disagrees with the stabilized count {stabilized}"
        ));
    }
    if 2 != 2 * group_order - branch_points * (group_order - fiber_size) {
        return Err("the Riemann-Hurwitz identity fails".to_string());
    }
    if stabilized != branch_points * fiber_size {
        return Err(format!(
            "{branch_points} branch fibers of size {fiber_size} do not give {stabilized}"
        ));
    }
    if reducible < 0 || smooth_hyperelliptic != stabilized - reducible {
        return Err(format!(
            "{smooth_hyperelliptic} + {reducible} does not split {stabilized}"
        ));
    }
    if free_orbits * group_order != nodal {
        return Err(format!(
            "{free_orbits} free orbits of {group_order} do not cover the {nodal} nodal members"
        ));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn check_canonical(
    k_squared: &str,
    xi_self: &str,
    pairing: &str,
    phi_self: &str,
    xi_genus: &str,
    phi_genus: &str,
    euler_number: i64,
    chi: &str,
) -> Result<(), String> {
    let k2 = rat_of(k_squared)?;
    let xi2 = rat_of(xi_self)?;
    let p = rat_of(pairing)?;
    let phi2 = rat_of(phi_self)?;
    let g_xi = rat_of(xi_genus)?;
    let g_phi = rat_of(phi_genus)?;
    let chi = rat_of(chi)?;
    if k2 != &(&xi2 + &(&int(2) * &p)) + &phi2 {
        return Err("k_squared is not the expanded square of the sum".to_string());
    }
    let two = int(2);
    if g_xi != &int(1) + &(&(&(&two * &xi2) + &p) / &two) {
        return Err("xi genus disagrees with adjunction".to_string());
    }
    if g_phi != &int(1) + &(&(&(&two * &phi2) + &p) / &two) {
        return Err("phi genus disagrees with adjunction".to_string());
    }
    if &(&k2 + &int(euler_number)) / &int(12) != chi {
        return Err("the Noether identity fails".to_string());
    }
    Ok(())
}

fn check_ledger(
    entry: &TaskEntry,
    rule_count: usize,
    sheaves: &[crate::report::SheafCert],
    claims: &[crate::report::ClaimCert],
    failures: &[String],
    contradiction: Option<&crate::report::ContradictionCert>,
) -> Result<(), String> {
    for claim in claims {
        let Some(sheaf) = sheaves.iter().find(|s| s.name == claim.sheaf) else {
            return Err(format!("claim names unknown sheaf `{}`", claim.sheaf));
        };
        if claim.ok {
            for (d, v) in claim.h.iter().enumerate() {
                if let Some(val) = v {
                    let iv = sheaf.h[d];
                    if iv.lo != *val || iv.hi != Some(*val) {
                        return Err(format!(
                            "claim h{d}({}) = {val} marked ok but the interval is not that point",
                            claim.sheaf
                        ));
                    }
                }
            }
        }
    }
    let failing_claims = claims.iter().filter(|c| !c.ok).count();
    if failing_claims > 0 && failures.is_empty() && contradiction.is_none() {
        return Err(format!(
            "{failing_claims} claim(s) marked not ok but no failure was recorded"
        ));
    }
    if let Some(c) = contradiction {
        if c.conflict.is_empty() {
            return Err("contradiction without conflicting rules".to_string());
        }
        if c.conflict.iter().any(|&i| i >= rule_count) {
            return Err("conflict names a rule index out of range".to_string());
        }
    }
    let should_fail = contradiction.is_some() || failing_claims > 0;
    let failed = entry.status == Status::Fail;
    if should_fail != failed {
        return Err(format!(
            "status {} disagrees with the certificate outcome",
            entry.status
        ));
    }
    Ok(())
}
