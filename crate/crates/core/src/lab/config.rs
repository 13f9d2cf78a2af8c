use std::fmt;

use serde::{Deserialize, Serialize};

use super::LabError;
use crate::reflections::Equation;

/// One selectable property check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Check {
    #[serde(rename = "structure")]
    Structure,
    #[serde(rename = "EQ0")]
    Eq0,
    #[serde(rename = "EQ1")]
    Eq1,
    #[serde(rename = "EQ2")]
    Eq2,
    #[serde(rename = "KFSET2")]
    KfSet2,
    #[serde(rename = "EQ3")]
    Eq3,
    #[serde(rename = "pairs")]
    Pairs,
    #[serde(rename = "j")]
    J,
    #[serde(rename = "shen")]
    Shen,
    #[serde(rename = "embed2")]
    Embed2,
    #[serde(rename = "key")]
    Key,
    #[serde(rename = "determined")]
    Determined,
    #[serde(rename = "classify")]
    Classify,
    #[serde(rename = "universal")]
    Universal,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::Structure,
        Check::Eq0,
        Check::Eq1,
        Check::Eq2,
        Check::KfSet2,
        Check::Eq3,
        Check::Pairs,
        Check::J,
        Check::Shen,
        Check::Embed2,
        Check::Key,
        Check::Determined,
        Check::Classify,
        Check::Universal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Structure => "structure",
            Check::Eq0 => "EQ0",
            Check::Eq1 => "EQ1",
            Check::Eq2 => "EQ2",
            Check::KfSet2 => "KFSET2",
            Check::Eq3 => "EQ3",
            Check::Pairs => "pairs",
            Check::J => "j",
            Check::Shen => "shen",
            Check::Embed2 => "embed2",
            Check::Key => "key",
            Check::Determined => "determined",
            Check::Classify => "classify",
            Check::Universal => "universal",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name().eq_ignore_ascii_case(s.trim()))
    }

    pub fn equation(self) -> Option<Equation> {
        match self {
            Check::Eq0 => Some(Equation::Eq0),
            Check::Eq1 => Some(Equation::Eq1),
            Check::Eq2 => Some(Equation::Eq2),
            Check::KfSet2 => Some(Equation::KfSet2),
            Check::Eq3 => Some(Equation::Eq3),
            _ => None,
        }
    }

    pub const EQUATIONS: [Check; 5] = [Check::Eq0, Check::Eq1, Check::Eq2, Check::KfSet2, Check::Eq3];
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A sorted, duplicate-free set of checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Which(Vec<Check>);

impl Which {
    pub fn all() -> Self {
        Which(Check::ALL.to_vec())
    }

    pub fn only(checks: impl IntoIterator<Item = Check>) -> Self {
        let mut v: Vec<Check> = checks.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Which(v)
    }

    /// `all`, or a comma-separated list of check names.
    pub fn parse(s: &str) -> Result<Self, LabError> {
        if s.trim().eq_ignore_ascii_case("all") {
            return Ok(Which::all());
        }
        let checks = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| Check::parse(t).ok_or_else(|| LabError::Input(format!("unknown check `{}`", t.trim()))))
            .collect::<Result<Vec<_>, _>>()?;
        if checks.is_empty() {
            return Err(LabError::Input("empty check list".into()));
        }
        Ok(Which::only(checks))
    }

    pub fn contains(&self, c: Check) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    pub fn checks(&self) -> &[Check] {
        &self.0
    }
}

/// Enumeration caps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Rejection-sampling attempts per generated poset.
    pub generation_attempts: u32,
    /// Continuous maps enumerated per source/target pair.
    pub maps: u64,
    /// Target spaces for the universality smoke test have at most this many points.
    pub universal_points: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { generation_attempts: 1000, maps: 100_000, universal_points: 3 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub max_size: usize,
    pub trials: usize,
    pub budget: Budget,
    pub which: Which,
    /// Record wall-clock time in reports. Off by default, since it breaks byte-identical output.
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, max_size: 7, trials: 100, budget: Budget::default(), which: Which::all(), timing: false }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), LabError> {
        let positive = [
            ("max_size", self.max_size as u64),
            ("trials", self.trials as u64),
            ("generation_attempts", self.budget.generation_attempts as u64),
            ("maps", self.budget.maps),
            ("universal_points", self.budget.universal_points as u64),
        ];
        match positive.iter().find(|(_, v)| *v == 0) {
            Some((name, _)) => Err(LabError::Input(format!("{name} must be positive"))),
            None => Ok(()),
        }
    }
}
