//! Task execution: each verification task of a scenario runs against the
//! core library and yields a status, provenance-tagged values, and
//! certificates. Tasks share only immutable inputs, so a scenario's tasks
//! run concurrently and are assembled in declaration order.

use std::collections::BTreeMap;
use std::time::Instant;

use anyhow::{Context, Result};
use tschirn_core::chern::{
    miranda_invariants, BundleChern, CoverInvariants, Lattice, NumClass, SurfaceGeom,
};
use tschirn_core::cover::{
    analyze_base_point_with, branch_discriminant, branch_proportionality, build_model,
    canonical_decomposition_check, classify_parameters, governing_discriminant, governing_value,
    CoverError, CoverModel, DegenerationClass, MirandaData, SingularityKind, ThreePlanes,
};
use tschirn_core::ledger::{parse_script, ParsedLedger};
use tschirn_core::numerology::{
    moduli_dimension, orbit_count, pencil_census, solve_uniform_branch, two_division_orbits,
    zeuthen_segre_count, FibrationData, Polarization,
};
use tschirn_core::qpoly::{int, GroebnerConfig, MultiPoly, Rat, VarSet};

use crate::ledger_run;
use crate::report::{
    Certificate, FactorValue, PlaneCert, Provenance, Report, ScenarioEcho, Status, TaskEntry,
    ValueEntry,
};
use crate::scenario::{Scenario, Task};

/// What a task produced, before timing is attached.
pub struct TaskOutcome {
    pub status: Status,
    pub values: Vec<ValueEntry>,
    pub certificates: Vec<Certificate>,
    pub notes: Vec<String>,
}

impl TaskOutcome {
    pub fn pass() -> TaskOutcome {
        TaskOutcome {
            status: Status::Pass,
            values: Vec::new(),
            certificates: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn uncertified(note: &str) -> TaskOutcome {
        TaskOutcome {
            status: Status::Uncertified,
            values: Vec::new(),
            certificates: Vec::new(),
            notes: vec![note.to_string()],
        }
    }
}

/// Immutable inputs shared by every task of one scenario run.
pub struct TaskContext<'a> {
    pub scenario: &'a Scenario,
    pub class: DegenerationClass,
    pub model: &'a CoverModel,
    pub config: &'a GroebnerConfig,
    pub ledgers: &'a BTreeMap<String, ParsedLedger>,
}

/// Runs every task of the scenario and assembles the report. Ledger
/// scripts are read and parsed up front so that a malformed script is an
/// input error rather than a failing check.
pub fn run_scenario(scenario: &Scenario, config: &GroebnerConfig) -> Result<Report> {
    let class = classify_parameters(&scenario.s, &scenario.t)?;
    let mut ledgers: BTreeMap<String, ParsedLedger> = BTreeMap::new();
    for task in &scenario.tasks {
        if let Task::Ledger(file) = task {
            if !ledgers.contains_key(file) {
                let path = scenario.ledger_path(file);
                let source = std::fs::read_to_string(&path)
                    .with_context(|| format!("cannot read ledger script {}", path.display()))?;
                let parsed = parse_script(&source)
                    .with_context(|| format!("ledger script {}", path.display()))?;
                ledgers.insert(file.clone(), parsed);
            }
        }
    }
    let data = MirandaData::standard(&scenario.s, &scenario.t);
    let model = build_model(&data);
    let ctx = TaskContext {
        scenario,
        class,
        model: &model,
        config,
        ledgers: &ledgers,
    };
    let entries: Vec<TaskEntry> = std::thread::scope(|scope| {
        let handles: Vec<_> = scenario
            .tasks
            .iter()
            .map(|task| scope.spawn(|| run_task(&ctx, task)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("task thread panicked"))
            .collect()
    });
    Ok(Report::assemble(
        Some(ScenarioEcho::from_scenario(scenario)),
        entries,
    ))
}

pub fn run_task(ctx: &TaskContext, task: &Task) -> TaskEntry {
    let start = Instant::now();
    let result = match task {
        Task::Classify => classify_task(ctx),
        Task::LocalSingularity => local_singularity_task(ctx),
        Task::Branch => branch_task(ctx),
        Task::Invariants => invariants_task(ctx),
        Task::Numerology => numerology_task(ctx),
        Task::CanonicalCheck => canonical_task(),
        Task::Moduli => moduli_task(),
        Task::Ledger(file) => Ok(ledger_run::ledger_outcome(&ctx.ledgers[file])),
    };
    let outcome = result.unwrap_or_else(|err| TaskOutcome {
        status: Status::Fail,
        values: Vec::new(),
        certificates: Vec::new(),
        notes: vec![format!("error: {err:#}")],
    });
    TaskEntry {
        task: task.to_string(),
        status: outcome.status,
        values: outcome.values,
        certificates: outcome.certificates,
        notes: outcome.notes,
        wall_ms: start.elapsed().as_millis() as u64,
    }
}

fn classify_task(ctx: &TaskContext) -> Result<TaskOutcome> {
    let s = &ctx.scenario.s;
    let t = &ctx.scenario.t;
    let g = governing_discriminant();
    let value = governing_value(&g, s, t);
    let three_s = s * &int(3);
    let factors = vec![
        FactorValue {
            name: "s".into(),
            value: s.to_string(),
        },
        FactorValue {
            name: "t".into(),
            value: t.to_string(),
        },
        FactorValue {
            name: "s-t".into(),
            value: (s - t).to_string(),
        },
        FactorValue {
            name: "s+t".into(),
            value: (s + t).to_string(),
        },
        FactorValue {
            name: "t-3s".into(),
            value: (t - &three_s).to_string(),
        },
        FactorValue {
            name: "t+3s".into(),
            value: (t + &three_s).to_string(),
        },
    ];
    let mut outcome = TaskOutcome::pass();
    outcome.values = vec![
        ValueEntry::new("class", &ctx.class, Provenance::Derived),
        ValueEntry::new("governing_value", &value, Provenance::Trivial),
    ];
    outcome.certificates = vec![Certificate::DegenerationFactors {
        s: s.to_string(),
        t: t.to_string(),
        class: ctx.class.to_string(),
        factors,
        value: value.to_string(),
    }];
    Ok(outcome)
}

fn linear_graph_coeffs(p: &MultiPoly, vars: &VarSet) -> (Rat, Rat) {
    let ix = vars.index_of("x").expect("model context has x");
    let iy = vars.index_of("y").expect("model context has y");
    let mut ex = vec![0u32; vars.len()];
    ex[ix] = 1;
    let mut ey = vec![0u32; vars.len()];
    ey[iy] = 1;
    (p.coeff(&ex), p.coeff(&ey))
}

fn plane_certificate(planes: &ThreePlanes, vars: &VarSet) -> Certificate {
    let plane_certs = planes
        .components
        .iter()
        .map(|c| {
            let (zg, wg) = c.graph();
            let (z_x, z_y) = linear_graph_coeffs(zg, vars);
            let (w_x, w_y) = linear_graph_coeffs(wg, vars);
            PlaneCert {
                z_x: z_x.to_string(),
                z_y: z_y.to_string(),
                w_x: w_x.to_string(),
                w_y: w_y.to_string(),
            }
        })
        .collect();
    let lines = planes
        .lines
        .iter()
        .map(|l| {
            let [x, y, z, w] = &l.direction;
            [x.to_string(), y.to_string(), z.to_string(), w.to_string()]
        })
        .collect();
    Certificate::PlaneDecomposition {
        planes: plane_certs,
        lines,
    }
}

fn local_singularity_task(ctx: &TaskContext) -> Result<TaskOutcome> {
    let analysis = match analyze_base_point_with(ctx.model, &ctx.scenario.s, &ctx.scenario.t, ctx.config)
    {
        Ok(a) => a,
        Err(CoverError::NotRationallySplit { poly }) => {
            return Ok(TaskOutcome::uncertified(&format!(
                "the plane components are conjugate over a quadratic extension and do not \
                 split rationally: `{poly}` is irreducible over the rationals"
            )));
        }
        Err(e) => {
            return Ok(TaskOutcome::uncertified(&format!(
                "the local model could not be certified: {e}"
            )));
        }
    };
    let mut outcome = TaskOutcome::pass();
    outcome
        .values
        .push(ValueEntry::new("kind", &analysis.kind, Provenance::Paper));
    match analysis.kind {
        SingularityKind::ConeTwistedCubicOneThird11 => {
            let series = analysis.hilbert.as_ref().expect("cone carries its series");
            let dim = analysis
                .singular_dimension
                .expect("cone carries its singular dimension");
            outcome.values.push(ValueEntry::new(
                "hilbert_series",
                series,
                Provenance::Derived,
            ));
            outcome.values.push(ValueEntry::new(
                "singular_locus_dimension",
                dim,
                Provenance::Derived,
            ));
            outcome.certificates.push(Certificate::ConePoint {
                hilbert_numerator: series.numerator().iter().map(|c| c.to_string()).collect(),
                hilbert_ambient: series.ambient(),
                singular_dimension: dim,
            });
        }
        SingularityKind::ThreePlanes => {
            let planes = analysis.planes.as_ref().expect("decomposition present");
            outcome.values.push(ValueEntry::new(
                "plane_components",
                planes.components.len(),
                Provenance::Derived,
            ));
            outcome.values.push(ValueEntry::new(
                "intersection_lines",
                planes.lines.len(),
                Provenance::Derived,
            ));
            outcome
                .certificates
                .push(plane_certificate(planes, ctx.model.vars()));
        }
        other => {
            outcome.status = Status::Fail;
            outcome
                .notes
                .push(format!("unexpected local type over the base point: {other}"));
        }
    }
    Ok(outcome)
}

fn branch_task(ctx: &TaskContext) -> Result<TaskOutcome> {
    let disc = branch_discriminant(ctx.model)?;
    if disc.is_zero() {
        return Ok(TaskOutcome::uncertified(
            "the branch divisor is everywhere non-reduced: the discriminant of the \
             eliminated cubic vanishes identically, so no proportionality certificate exists",
        ));
    }
    let cert = branch_proportionality(ctx.model)?;
    let mut outcome = TaskOutcome::pass();
    outcome.values = vec![
        ValueEntry::new("lambda", &cert.lambda, Provenance::Derived),
        ValueEntry::new(
            "discriminant_degree",
            cert.discriminant.total_degree().unwrap_or(0),
            Provenance::Trivial,
        ),
    ];
    outcome.certificates = vec![Certificate::BranchProportionality {
        lambda: cert.lambda.to_string(),
        discriminant: cert.discriminant.to_string(),
        reference: cert.reference.to_string(),
        variables: ctx.model.vars().names().to_vec(),
    }];
    Ok(outcome)
}

fn abelian_base() -> Result<(Lattice, SurfaceGeom)> {
    let lat = Lattice::new(&["L"], &[vec![4]])?;
    let y = SurfaceGeom::new(NumClass::zero(&lat), 0, int(0))?;
    Ok((lat, y))
}

fn invariants_certificate(
    label: &str,
    y: &SurfaceGeom,
    h_y: (u32, u32, u32),
    e: &BundleChern,
    h_e: (u32, u32, u32),
    inv: &CoverInvariants,
) -> Result<Certificate> {
    let c1 = e.c1();
    Ok(Certificate::CoverInvariants {
        label: label.to_string(),
        chi_base: y.chi_o().to_string(),
        k_base_squared: y.k_squared().to_string(),
        c1_dot_k: c1.pair(y.k())?.to_string(),
        c1_squared: c1.self_intersection().to_string(),
        c2: e.c2().to_string(),
        h_base: [i64::from(h_y.0), i64::from(h_y.1), i64::from(h_y.2)],
        h_bundle: [i64::from(h_e.0), i64::from(h_e.1), i64::from(h_e.2)],
        p_g: i64::from(inv.p_g),
        q: i64::from(inv.q),
        k_squared: inv.k_squared.to_string(),
        chi: inv.chi.to_string(),
    })
}

fn invariants_task(ctx: &TaskContext) -> Result<TaskOutcome> {
    if ctx.class.is_non_normal() {
        return Ok(TaskOutcome::uncertified(
            "skipped: non-normal total space, so the smooth-cover invariant formulas do not apply",
        ));
    }
    if ctx.scenario.polarization == Polarization::Product {
        let (lat, y) = abelian_base()?;
        let e = BundleChern::new(2, NumClass::zero(&lat), int(0))?;
        let h_y = (1, 2, 1);
        let h_e = (0, 1, 1);
        let inv = miranda_invariants(&y, h_y, &e, h_e)?;
        let mut outcome = TaskOutcome::uncertified(
            "skipped the general-type datum: over a product of elliptic curves the cover \
             is not of general type; reporting the invariants of its normalization, which \
             is properly elliptic",
        );
        outcome.values = vec![
            ValueEntry::new("normalized_p_g", inv.p_g, Provenance::Paper),
            ValueEntry::new("normalized_q", inv.q, Provenance::Paper),
            ValueEntry::new("normalized_k_squared", &inv.k_squared, Provenance::Paper),
            ValueEntry::new("normalized_chi", &inv.chi, Provenance::Trivial),
        ];
        outcome.certificates = vec![invariants_certificate(
            "normalized-cover",
            &y,
            h_y,
            &e,
            h_e,
            &inv,
        )?];
        return Ok(outcome);
    }

    let (lat, y) = abelian_base()?;
    let f = BundleChern::new(2, NumClass::basis(&lat, "L")?, int(1))?;
    let h_y = (1, 2, 1);
    let h_f = (0, 0, 1);
    let inv = miranda_invariants(&y, h_y, &f, h_f)?;

    let blown = y.blowup(4)?;
    let lat4 = blown.lattice();
    let c1 = NumClass::from_integers(lat4, &[-2, 2, 2, 2, 2])?;
    let sharp = BundleChern::new(2, c1, int(0))?;
    let h_sharp = (0, 0, 4);
    let pencil_inv = miranda_invariants(&blown, h_y, &sharp, h_sharp)?;

    let mut outcome = TaskOutcome::pass();
    outcome.values = vec![
        ValueEntry::new("p_g", inv.p_g, Provenance::Paper),
        ValueEntry::new("q", inv.q, Provenance::Paper),
        ValueEntry::new("k_squared", &inv.k_squared, Provenance::Paper),
        ValueEntry::new("chi", &inv.chi, Provenance::Trivial),
        ValueEntry::new("pencil_model_p_g", pencil_inv.p_g, Provenance::Derived),
        ValueEntry::new("pencil_model_q", pencil_inv.q, Provenance::Derived),
        ValueEntry::new(
            "pencil_model_k_squared",
            &pencil_inv.k_squared,
            Provenance::Derived,
        ),
        ValueEntry::new("pencil_model_chi", &pencil_inv.chi, Provenance::Derived),
    ];
    outcome.certificates = vec![
        invariants_certificate("minimal-cover", &y, h_y, &f, h_f, &inv)?,
        invariants_certificate(
            "blown-up-pencil-model",
            &blown,
            h_y,
            &sharp,
            h_sharp,
            &pencil_inv,
        )?,
    ];
    if !ctx.class.is_general() {
        outcome.notes.push(
            "totally ramified parameters keep the same invariants: the extra quotient \
             singularities are negligible"
                .to_string(),
        );
    }
    Ok(outcome)
}

fn numerology_task(ctx: &TaskContext) -> Result<TaskOutcome> {
    let fibration = FibrationData::from_fiber_genus(4, 2, 3, -4, 0, 1)?;
    let nodal = zeuthen_segre_count(&fibration)?;
    let orbit_data = solve_uniform_branch(4, 2)?;
    let orbit = orbit_count(&orbit_data)?;
    let census = pencil_census(ctx.scenario.polarization, ctx.scenario.nu)?;
    let orbits = two_division_orbits();
    let mut outcome = TaskOutcome::pass();
    outcome.values = vec![
        ValueEntry::new("nodal_members", nodal, Provenance::Paper),
        ValueEntry::new("branch_points", orbit.branch_points, Provenance::Derived),
        ValueEntry::new(
            "stabilized_members",
            orbit.stabilized_elements,
            Provenance::Derived,
        ),
        ValueEntry::new(
            "smooth_hyperelliptic",
            census.smooth_hyperelliptic,
            Provenance::Paper,
        ),
        ValueEntry::new("reducible_members", census.reducible, Provenance::Paper),
        ValueEntry::new(
            "free_two_division_orbits",
            orbits.other_orbits.len(),
            Provenance::Derived,
        ),
    ];
    outcome.certificates = vec![Certificate::PencilCounts {
        group_order: orbit_data.group_order(),
        fiber_size: 2,
        branch_points: orbit.branch_points as i64,
        stabilized: orbit.stabilized_elements,
        free_orbits: orbits.other_orbits.len() as i64,
        c2_total: fibration.c2_total,
        e_base: fibration.e_base,
        fiber_genus: 3,
        k_squared: fibration.ksq,
        chi: fibration.chi_o,
        nodal_delta: fibration.nodal_delta,
        nodal,
        reducible: census.reducible,
        smooth_hyperelliptic: census.smooth_hyperelliptic,
    }];
    if let Some(note) = census.note {
        outcome.notes.push(note);
    }
    Ok(outcome)
}

fn canonical_task() -> Result<TaskOutcome> {
    let d = canonical_decomposition_check()?;
    let mut outcome = TaskOutcome::pass();
    if !d.pass {
        outcome.status = Status::Fail;
        outcome
            .notes
            .push("the canonical decomposition numerology does not close".to_string());
    }
    outcome.values = vec![
        ValueEntry::new("k_squared", &d.k_squared, Provenance::Paper),
        ValueEntry::new("xi_genus", &d.xi_genus, Provenance::Derived),
        ValueEntry::new("phi_genus", &d.phi_genus, Provenance::Paper),
    ];
    outcome.certificates = vec![Certificate::CanonicalSplit {
        k_squared: d.k_squared.to_string(),
        xi_self: d.xi_self.to_string(),
        pairing: d.pairing.to_string(),
        phi_self: d.phi_self.to_string(),
        xi_genus: d.xi_genus.to_string(),
        phi_genus: d.phi_genus.to_string(),
        euler_number: 7,
        chi: "1".to_string(),
    }];
    Ok(outcome)
}

fn moduli_task() -> Result<TaskOutcome> {
    let m = moduli_dimension(3, 2, 4, 3)?;
    let mut outcome = TaskOutcome::pass();
    outcome.values = vec![
        ValueEntry::new("moduli_dimension", m.total, Provenance::Paper),
        ValueEntry::new("family_dimension", m.family_dimension, Provenance::Paper),
        ValueEntry::new("pencil_sections", m.pencil_sections, Provenance::Paper),
        ValueEntry::new("tangent_dimension", m.tangent_dimension, Provenance::Paper),
    ];
    outcome.certificates = vec![Certificate::ModuliAssembly {
        family_dimension: m.family_dimension,
        pencil_sections: m.pencil_sections,
        tangent_dimension: m.tangent_dimension,
        normal_sections: m.normal_sections,
        total: m.total,
    }];
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::path::Path;

    fn scenario(toml: &str) -> Scenario {
        Scenario::from_toml(toml, Path::new(".")).unwrap()
    }

    fn run(toml: &str) -> Report {
        run_scenario(&scenario(toml), &GroebnerConfig::default()).unwrap()
    }

    fn entry<'a>(report: &'a Report, task: &str) -> &'a TaskEntry {
        report.tasks.iter().find(|e| e.task == task).unwrap()
    }

    fn value<'a>(entry: &'a TaskEntry, name: &str) -> &'a str {
        &entry
            .values
            .iter()
            .find(|v| v.name == name)
            .unwrap_or_else(|| panic!("no value {name} in {}", entry.task))
            .value
    }

    const GENERAL: &str = r#"
name = "g"
polarization = "general"
s = "1"
t = "2"
tasks = ["classify", "branch", "invariants", "numerology", "canonical-check", "moduli"]
"#;

    #[test]
    fn general_scenario_passes_everything() {
        let report = run(GENERAL);
        assert_eq!(report.summary.fail, 0);
        assert_eq!(report.summary.uncertified, 0);
        assert_eq!(report.exit_code(), 0);
        let inv = entry(&report, "invariants");
        assert_eq!(value(inv, "p_g"), "2");
        assert_eq!(value(inv, "q"), "2");
        assert_eq!(value(inv, "k_squared"), "5");
        assert_eq!(value(inv, "chi"), "1");
        assert_eq!(value(inv, "pencil_model_p_g"), "5");
        assert_eq!(value(inv, "pencil_model_k_squared"), "20");
        assert_eq!(value(inv, "pencil_model_chi"), "4");
        assert_eq!(value(entry(&report, "classify"), "class"), "general");
        assert_eq!(value(entry(&report, "moduli"), "moduli_dimension"), "4");
        assert_eq!(value(entry(&report, "canonical-check"), "phi_genus"), "3");
        let num = entry(&report, "numerology");
        assert_eq!(value(num, "nodal_members"), "12");
        assert_eq!(value(num, "smooth_hyperelliptic"), "6");
        assert_eq!(value(num, "reducible_members"), "0");
    }

    #[test]
    fn local_singularity_certifies_the_cone_at_general_parameters() {
        let toml = GENERAL.replace(
            "\"classify\", \"branch\"",
            "\"local-singularity\", \"branch\"",
        );
        let report = run(&toml);
        let local = entry(&report, "local-singularity");
        assert_eq!(local.status, Status::Pass);
        assert!(value(local, "kind").contains("1/3(1, 1)"));
        assert_eq!(value(local, "singular_locus_dimension"), "0");
        assert!(matches!(
            local.certificates[0],
            Certificate::ConePoint { .. }
        ));
    }

    #[test]
    fn non_normal_scenario_skips_and_decomposes() {
        let toml = r#"
name = "n"
polarization = "general"
s = "1"
t = "0"
tasks = ["classify", "local-singularity", "branch", "invariants"]
"#;
        let report = run(toml);
        assert_eq!(report.summary.fail, 0);
        assert_eq!(report.exit_code(), 0);
        assert_eq!(
            value(entry(&report, "classify"), "class"),
            "non-normal (t = 0)"
        );
        let local = entry(&report, "local-singularity");
        assert_eq!(local.status, Status::Pass);
        assert_eq!(value(local, "plane_components"), "3");
        assert_eq!(value(local, "intersection_lines"), "2");
        assert_eq!(entry(&report, "branch").status, Status::Uncertified);
        let inv = entry(&report, "invariants");
        assert_eq!(inv.status, Status::Uncertified);
        assert!(inv.notes[0].contains("non-normal total space"));
    }

    #[test]
    fn conjugate_planes_are_reported_not_failed() {
        let toml = r#"
name = "m"
polarization = "general"
s = "1"
t = "-3"
tasks = ["local-singularity", "branch"]
"#;
        let report = run(toml);
        let local = entry(&report, "local-singularity");
        assert_eq!(local.status, Status::Uncertified);
        assert!(local.notes[0].contains("conjugate"));
        assert_eq!(entry(&report, "branch").status, Status::Pass);
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn product_polarization_reports_the_normalization() {
        let toml = r#"
name = "p"
polarization = "product"
s = "1"
t = "2"
tasks = ["invariants", "numerology"]
"#;
        let report = run(toml);
        let inv = entry(&report, "invariants");
        assert_eq!(inv.status, Status::Uncertified);
        assert_eq!(value(inv, "normalized_p_g"), "2");
        assert_eq!(value(inv, "normalized_q"), "3");
        assert_eq!(value(inv, "normalized_k_squared"), "0");
        assert_eq!(value(inv, "normalized_chi"), "0");
        let num = entry(&report, "numerology");
        assert_eq!(value(num, "reducible_members"), "2");
        assert_eq!(value(num, "smooth_hyperelliptic"), "4");
    }

    #[test]
    fn special_polarization_splits_the_census() {
        let toml = r#"
name = "s"
polarization = "special"
s = "1"
t = "2"
nu = 1
tasks = ["numerology"]
"#;
        let report = run(toml);
        let num = entry(&report, "numerology");
        assert_eq!(num.status, Status::Pass);
        assert_eq!(value(num, "smooth_hyperelliptic"), "5");
        assert_eq!(value(num, "reducible_members"), "1");
        assert_eq!(value(num, "stabilized_members"), "6");
    }

    #[test]
    fn totally_ramified_keeps_invariants_with_a_note() {
        let toml = r#"
name = "t"
polarization = "general"
s = "1"
t = "1"
tasks = ["classify", "invariants"]
"#;
        let report = run(toml);
        assert_eq!(
            value(entry(&report, "classify"), "class"),
            "totally ramified (s = t)"
        );
        let inv = entry(&report, "invariants");
        assert_eq!(inv.status, Status::Pass);
        assert_eq!(value(inv, "k_squared"), "5");
        assert!(inv.notes[0].contains("negligible"));
    }

    #[test]
    fn entries_come_back_in_declaration_order() {
        let report = run(GENERAL);
        let names: Vec<&str> = report.tasks.iter().map(|e| e.task.as_str()).collect();
        assert_eq!(
            names,
            [
                "classify",
                "branch",
                "invariants",
                "numerology",
                "canonical-check",
                "moduli"
            ]
        );
    }

    #[test]
    fn missing_ledger_file_is_an_input_error() {
        let toml = r#"
name = "x"
polarization = "general"
s = "1"
t = "2"
tasks = ["ledger:no_such_file.ledger"]
"#;
        let sc = scenario(toml);
        assert!(run_scenario(&sc, &GroebnerConfig::default()).is_err());
    }
}
