//! Scenario files: TOML descriptions of a parameter point, a polarization
//! type, and an ordered list of verification tasks.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use num_traits::Zero;
use serde::Deserialize;
use tschirn_core::numerology::Polarization;
use tschirn_core::qpoly::{parse_rat, Rat};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    name: String,
    polarization: String,
    s: String,
    t: String,
    nu: Option<i64>,
    tasks: Vec<String>,
}

/// One verification task of a scenario.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Task {
    Classify,
    LocalSingularity,
    Branch,
    Invariants,
    Numerology,
    CanonicalCheck,
    Moduli,
    /// A ledger script, by path relative to the scenario file.
    Ledger(String),
}

impl Task {
    pub fn parse(text: &str) -> Result<Task> {
        Ok(match text {
            "classify" => Task::Classify,
            "local-singularity" => Task::LocalSingularity,
            "branch" => Task::Branch,
            "invariants" => Task::Invariants,
            "numerology" => Task::Numerology,
            "canonical-check" => Task::CanonicalCheck,
            "moduli" => Task::Moduli,
            other => match other.strip_prefix("ledger:") {
                Some(file) if !file.trim().is_empty() => Task::Ledger(file.trim().to_string()),
                _ => bail!(
                    "unknown task `{other}` (expected classify, local-singularity, branch, \
                     invariants, numerology, canonical-check, moduli, or ledger:<file>)"
                ),
            },
        })
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Task::Classify => f.write_str("classify"),
            Task::LocalSingularity => f.write_str("local-singularity"),
            Task::Branch => f.write_str("branch"),
            Task::Invariants => f.write_str("invariants"),
            Task::Numerology => f.write_str("numerology"),
            Task::CanonicalCheck => f.write_str("canonical-check"),
            Task::Moduli => f.write_str("moduli"),
            Task::Ledger(file) => write!(f, "ledger:{file}"),
        }
    }
}

/// A validated scenario: rational parameters, polarization, tasks, and
/// the directory that ledger paths resolve against.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub name: String,
    pub polarization: Polarization,
    pub s: Rat,
    pub t: Rat,
    pub nu: Option<i64>,
    pub tasks: Vec<Task>,
    pub base_dir: PathBuf,
}

pub fn parse_polarization(text: &str) -> Result<Polarization> {
    Ok(match text {
        "general" => Polarization::General,
        "special" => Polarization::Special,
        "product" => Polarization::Product,
        other => bail!("unknown polarization `{other}` (expected general, special, or product)"),
    })
}

impl Scenario {
    /// Parses and validates scenario TOML. `base_dir` is the directory
    /// ledger paths resolve against, normally the scenario file's parent.
    pub fn from_toml(text: &str, base_dir: &Path) -> Result<Scenario> {
        let file: ScenarioFile = toml::from_str(text).context("invalid scenario TOML")?;
        if file.name.trim().is_empty() {
            bail!("scenario name must not be empty");
        }
        let polarization = parse_polarization(&file.polarization)?;
        let s = parse_rat(&file.s).with_context(|| format!("invalid s `{}`", file.s))?;
        let t = parse_rat(&file.t).with_context(|| format!("invalid t `{}`", file.t))?;
        if s.is_zero() && t.is_zero() {
            bail!("the parameter point (0, 0) is excluded");
        }
        if file.nu.is_some() && polarization != Polarization::Special {
            bail!("nu is only meaningful for a special polarization");
        }
        if file.tasks.is_empty() {
            bail!("scenario lists no tasks");
        }
        let tasks = file
            .tasks
            .iter()
            .map(|t| Task::parse(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Scenario {
            name: file.name,
            polarization,
            s,
            t,
            nu: file.nu,
            tasks,
            base_dir: base_dir.to_path_buf(),
        })
    }

    pub fn load(path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read scenario file {}", path.display()))?;
        let base_dir = path.parent().unwrap_or_else(|| Path::new("."));
        Self::from_toml(&text, base_dir)
            .with_context(|| format!("scenario file {}", path.display()))
    }

    /// Absolute or scenario-relative path of a ledger script.
    pub fn ledger_path(&self, file: &str) -> PathBuf {
        let p = Path::new(file);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }
}
