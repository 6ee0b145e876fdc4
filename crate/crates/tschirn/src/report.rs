//! The report model: provenance-tagged values, recheckable certificates,
//! and per-task statuses, serialized as byte-stable JSON (fixed key order,
//! LF line endings) or rendered as Markdown. Wall times are the only
//! fields excluded from the byte-stability guarantee.

use serde::{Deserialize, Serialize};

use crate::scenario::Scenario;

/// Verdict of one task.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// The task ran but the standard claim does not apply or could not
    /// be certified; not counted as a failure.
    Uncertified,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Uncertified => "uncertified",
        })
    }
}

/// Source tag carried by every reported value: `Paper` marks a value
/// quoted from the reference statement under verification, `Trivial` an
/// immediate arithmetic consequence, and `Derived` a value this toolkit
/// computes independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Provenance {
    Paper,
    Trivial,
    Derived,
}

/// One named value of a task.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueEntry {
    pub name: String,
    pub value: String,
    pub provenance: Provenance,
}

impl ValueEntry {
    pub fn new(name: &str, value: impl ToString, provenance: Provenance) -> ValueEntry {
        ValueEntry {
            name: name.to_string(),
            value: value.to_string(),
            provenance,
        }
    }
}

/// One linear factor of the degeneration locus, evaluated at (s, t).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorValue {
    pub name: String,
    pub value: String,
}

/// A plane component written as a graph z = z_x x + z_y y,
/// w = w_x x + w_y y over the (x, y)-plane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCert {
    pub z_x: String,
    pub z_y: String,
    pub w_x: String,
    pub w_y: String,
}

/// A closed integer interval, `hi = null` meaning unbounded above.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalCert {
    pub lo: i64,
    pub hi: Option<i64>,
}

/// Final interval triple of one ledger sheaf.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheafCert {
    pub name: String,
    pub h: [IntervalCert; 3],
}

/// One verified claim of a ledger script.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCert {
    pub sheaf: String,
    pub h: [Option<i64>; 3],
    pub ok: bool,
}

/// A propagation contradiction with its conflicting rule indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContradictionCert {
    pub description: String,
    pub conflict: Vec<usize>,
}

/// Machine-checkable evidence attached to a task. Each variant records
/// enough exact data for [`crate::recheck`] to re-validate the verdict
/// with plain rational arithmetic, without repeating the computation
/// that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// The six linear factors of the degeneration locus at (s, t).
    DegenerationFactors {
        s: String,
        t: String,
        class: String,
        factors: Vec<FactorValue>,
        /// Value of the governing discriminant at (s, t).
        value: String,
    },
    /// Hilbert-series and singular-locus data certifying the cone point.
    ConePoint {
        hilbert_numerator: Vec<String>,
        hilbert_ambient: usize,
        singular_dimension: usize,
    },
    /// Three plane components and the two lines they meet along.
    PlaneDecomposition {
        planes: Vec<PlaneCert>,
        /// Direction vectors in (x, y, z, w) coordinates.
        lines: Vec<[String; 4]>,
    },
    /// The branch discriminant as an exact rational multiple of the
    /// reference quartic form.
    BranchProportionality {
        lambda: String,
        discriminant: String,
        reference: String,
        variables: Vec<String>,
    },
    /// The Chern-class inputs and cohomology triples behind a cover
    /// invariant computation.
    CoverInvariants {
        label: String,
        chi_base: String,
        k_base_squared: String,
        c1_dot_k: String,
        c1_squared: String,
        c2: String,
        h_base: [i64; 3],
        h_bundle: [i64; 3],
        p_g: i64,
        q: i64,
        k_squared: String,
        chi: String,
    },
    /// The interlocking counts of the genus-3 pencil.
    PencilCounts {
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
    },
    /// Intersection numerology of the canonical class split into two
    /// curve classes.
    CanonicalSplit {
        k_squared: String,
        xi_self: String,
        pairing: String,
        phi_self: String,
        xi_genus: String,
        phi_genus: String,
        euler_number: i64,
        chi: String,
    },
    /// Fixpoint of a ledger script: final intervals, claim outcomes,
    /// and any contradiction.
    LedgerFixpoint {
        rule_count: usize,
        sheaves: Vec<SheafCert>,
        claims: Vec<ClaimCert>,
        failures: Vec<String>,
        contradiction: Option<ContradictionCert>,
    },
    /// The dimension assembly with its two cross-checks.
    ModuliAssembly {
        family_dimension: i64,
        pencil_sections: i64,
        tangent_dimension: i64,
        normal_sections: i64,
        total: i64,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::DegenerationFactors { .. } => "degeneration-factors",
            Certificate::ConePoint { .. } => "cone-point",
            Certificate::PlaneDecomposition { .. } => "plane-decomposition",
            Certificate::BranchProportionality { .. } => "branch-proportionality",
            Certificate::CoverInvariants { .. } => "cover-invariants",
            Certificate::PencilCounts { .. } => "pencil-counts",
            Certificate::CanonicalSplit { .. } => "canonical-split",
            Certificate::LedgerFixpoint { .. } => "ledger-fixpoint",
            Certificate::ModuliAssembly { .. } => "moduli-assembly",
        }
    }
}

/// One executed task.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskEntry {
    pub task: String,
    pub status: Status,
    pub values: Vec<ValueEntry>,
    pub certificates: Vec<Certificate>,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

/// Echo of the scenario that produced a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioEcho {
    pub name: String,
    pub polarization: String,
    pub s: String,
    pub t: String,
    pub nu: Option<i64>,
    pub tasks: Vec<String>,
}

impl ScenarioEcho {
    pub fn from_scenario(scenario: &Scenario) -> ScenarioEcho {
        ScenarioEcho {
            name: scenario.name.clone(),
            polarization: scenario.polarization.to_string(),
            s: scenario.s.to_string(),
            t: scenario.t.to_string(),
            nu: scenario.nu,
            tasks: scenario.tasks.iter().map(|t| t.to_string()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub uncertified: usize,
}

/// A full report. `scenario` is absent for standalone ledger runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub scenario: Option<ScenarioEcho>,
    pub tasks: Vec<TaskEntry>,
    pub summary: Summary,
}

impl Report {
    pub fn assemble(scenario: Option<ScenarioEcho>, tasks: Vec<TaskEntry>) -> Report {
        let summary = Summary {
            pass: tasks.iter().filter(|t| t.status == Status::Pass).count(),
            fail: tasks.iter().filter(|t| t.status == Status::Fail).count(),
            uncertified: tasks
                .iter()
                .filter(|t| t.status == Status::Uncertified)
                .count(),
        };
        Report {
            tool: "tschirn".to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            scenario,
            tasks,
            summary,
        }
    }

    /// 0 when no task failed, 1 otherwise. Uncertified tasks are
    /// explanatory skips, not failures.
    pub fn exit_code(&self) -> u8 {
        if self.summary.fail > 0 {
            1
        } else {
            0
        }
    }

    pub fn render_json(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut out = serde_json::to_string_pretty(&value).expect("value serializes");
        out.push('\n');
        out
    }

    pub fn render_markdown(&self) -> String {
        let mut out = String::new();
        let title = self
            .scenario
            .as_ref()
            .map(|s| s.name.as_str())
            .unwrap_or("ledger run");
        out.push_str(&format!("# Report: {title}\n\n"));
        out.push_str(&format!("- tool: {} {}\n", self.tool, self.version));
        if let Some(sc) = &self.scenario {
            out.push_str(&format!("- polarization: {}\n", sc.polarization));
            out.push_str(&format!("- parameters: s = {}, t = {}\n", sc.s, sc.t));
            if let Some(nu) = sc.nu {
                out.push_str(&format!("- nu: {nu}\n"));
            }
        }
        out.push_str(&format!(
            "- summary: {} pass, {} fail, {} uncertified\n",
            self.summary.pass, self.summary.fail, self.summary.uncertified
        ));
        for entry in &self.tasks {
            out.push_str(&format!("\n## {}: {}\n\n", entry.task, entry.status));
            for v in &entry.values {
                out.push_str(&format!(
                    "- {} = {} ({})\n",
                    v.name,
                    v.value,
                    match v.provenance {
                        Provenance::Paper => "PAPER",
                        Provenance::Trivial => "TRIVIAL",
                        Provenance::Derived => "DERIVED",
                    }
                ));
            }
            if !entry.certificates.is_empty() {
                let kinds: Vec<&str> = entry.certificates.iter().map(|c| c.kind()).collect();
                out.push_str(&format!("- certificates: {}\n", kinds.join(", ")));
            }
            for note in &entry.notes {
                out.push_str(&format!("- note: {note}\n"));
            }
        }
        out
    }
}
