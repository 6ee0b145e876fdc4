//! Scenario runner for the triple-cover toolkit.
//!
//! A scenario file names a rational parameter pair, a polarization type,
//! and a list of verification tasks. [`tasks::run_scenario`] executes the
//! tasks against [`tschirn_core`] and assembles a [`report::Report`]: a
//! deterministic, serializable record in which every numeric value carries
//! a provenance tag and every pass verdict is backed by a certificate that
//! [`recheck::recheck_report`] can re-validate with cheap arithmetic alone.

pub mod ledger_run;
pub mod recheck;
pub mod report;
pub mod scenario;
pub mod tasks;
