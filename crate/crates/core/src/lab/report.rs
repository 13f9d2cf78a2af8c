use serde::Serialize;
use serde_json::{json, Value};

use super::io::{PosetFile, SpaceFile};
use super::RunConfig;
use crate::families::{ClosedFamily, SpaceFamilies, WdStatus};
use crate::reflections::EquationVerdict;
use crate::symbolic::{CofNatFamilies, SymClosedFamily};
use crate::systems::ClassifierPanel;
use crate::topo::FinSpace;

/// Bumped whenever a report field changes meaning or shape.
pub const SCHEMA_VERSION: u32 = 1;

/// What was analysed, in a form that can be fed back in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InputEcho {
    Poset { source: String, poset: PosetFile },
    Space { source: String, space: SpaceFile },
    Builtin { name: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WdReport {
    /// `determined` or `bracket`.
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    /// The family, or `{"lower": .., "upper": ..}` under a bracket.
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamiliesReport {
    #[serde(rename = "Sc")]
    pub sc: Vec<String>,
    #[serde(rename = "Irr")]
    pub irr: Vec<String>,
    #[serde(rename = "KF")]
    pub kf: Vec<String>,
    #[serde(rename = "WD")]
    pub wd: WdReport,
}

fn wd_report<F>(wd: &WdStatus<F>, show: impl Fn(&F) -> Vec<String>) -> WdReport {
    match wd {
        WdStatus::Determined { family, route } => {
            WdReport { status: "determined", route: Some(format!("{route:?}")), value: json!(show(family)) }
        }
        WdStatus::Bracket { lower, upper } => {
            WdReport { status: "bracket", route: None, value: json!({"lower": show(lower), "upper": show(upper)}) }
        }
    }
}

impl FamiliesReport {
    pub fn finite(x: &FinSpace, f: &SpaceFamilies) -> Self {
        let show = |c: &ClosedFamily| c.show(x);
        FamiliesReport { sc: show(&f.sc), irr: show(&f.irr), kf: show(&f.kf), wd: wd_report(&f.wd, show) }
    }

    pub fn symbolic(f: &CofNatFamilies) -> Self {
        let show = |c: &SymClosedFamily| c.describe();
        FamiliesReport { sc: show(&f.sc), irr: show(&f.irr), kf: show(&f.kf), wd: wd_report(&f.wd, show) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: Value,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Serialize) -> Self {
        CheckResult { name: name.into(), pass, detail: serde_json::to_value(detail).expect("details serialize") }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Timing {
    pub millis: u64,
}

/// One analysed instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub command: String,
    pub input: InputEcho,
    /// Families of the analysed space; for a poset, of `ΣP̂`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub families: Option<FamiliesReport>,
    /// For a poset, families of `Max(P̂)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_families: Option<FamiliesReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub panel: Option<ClassifierPanel>,
    pub equations: Vec<EquationVerdict>,
    pub checks: Vec<CheckResult>,
    /// One line per failed equation or check.
    pub witnesses: Vec<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl AnalysisReport {
    pub fn new(command: impl Into<String>, input: InputEcho) -> Self {
        AnalysisReport {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            input,
            families: None,
            max_families: None,
            panel: None,
            equations: Vec::new(),
            checks: Vec::new(),
            witnesses: Vec::new(),
            pass: true,
            timing: None,
        }
    }

    /// Recompute `witnesses` and `pass` from the equations and checks.
    pub fn finish(&mut self) {
        let mut w = Vec::new();
        for v in self.equations.iter().filter(|v| !v.holds) {
            for part in v.parts.iter().filter(|p| !p.holds) {
                w.push(format!(
                    "{}: {} (lhs only {:?}, rhs only {:?})",
                    v.which, part.name, part.lhs_only, part.rhs_only
                ));
            }
        }
        for c in self.checks.iter().filter(|c| !c.pass) {
            w.push(format!("{}: {}", c.name, c.detail));
        }
        self.pass = w.is_empty();
        self.witnesses = w;
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// A corpus run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub config: RunConfig,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<AnalysisReport>,
}

impl SuiteReport {
    pub fn new(config: RunConfig, reports: Vec<AnalysisReport>) -> Self {
        let passed = reports.iter().filter(|r| r.pass).count();
        SuiteReport {
            schema_version: SCHEMA_VERSION,
            config,
            instances: reports.len(),
            passed,
            failed: reports.len() - passed,
            reports,
        }
    }

    pub fn pass(&self) -> bool {
        self.failed == 0
    }
}
