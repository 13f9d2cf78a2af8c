//! Corpus runs, the oracle search and report emission behind the CLI.

mod config;
pub mod dot;
mod generate;
pub mod io;
mod oracle;
mod report;
mod suite;

pub use config::{Budget, Check, RunConfig, Which};
pub use generate::{generate_poset, trial_rng};
pub use oracle::{oracle_search, oracle_search_with, poset_disagreements, Disagreement, Mutation, OracleReport};
pub use report::{
    AnalysisReport, CheckResult, FamiliesReport, InputEcho, SuiteReport, Timing, WdReport, SCHEMA_VERSION,
};
pub use suite::{
    analyze_cofnat, analyze_poset, analyze_space, run_fixtures, run_suite, run_suite_exec, run_trial, Exec,
};

use thiserror::Error;

use crate::families::FamilyError;
use crate::order::OrderError;
use crate::reflections::ReflectionError;
use crate::scott::ScottError;
use crate::symbolic::SymbolicError;
use crate::systems::SystemsError;
use crate::topo::TopoError;

/// Errors sorted by what the caller should do about them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LabError {
    #[error("input error: {0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("no bounded complete poset after {attempts} attempts")]
    GenerationBudgetExceeded { attempts: u32 },
    #[error("engine check failed: {0}")]
    Engine(String),
}

impl LabError {
    /// 1 verdict failure, 2 input error, 3 budget exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Input(_) => 2,
            LabError::Budget(_) | LabError::GenerationBudgetExceeded { .. } => 3,
            LabError::Engine(_) => 1,
        }
    }

    pub fn is_budget(&self) -> bool {
        self.exit_code() == 3
    }
}

impl From<OrderError> for LabError {
    fn from(e: OrderError) -> Self {
        LabError::Input(e.to_string())
    }
}

impl From<TopoError> for LabError {
    fn from(e: TopoError) -> Self {
        match e {
            TopoError::BudgetExceeded { .. } => LabError::Budget(e.to_string()),
            TopoError::CheckFailed(_)
            | TopoError::FamilyNotIrreducible(_)
            | TopoError::NotContinuous(_)
            | TopoError::BadGraph => LabError::Engine(e.to_string()),
            _ => LabError::Input(e.to_string()),
        }
    }
}

impl From<ScottError> for LabError {
    fn from(e: ScottError) -> Self {
        match e {
            ScottError::Topo(t) => t.into(),
            ScottError::BudgetExceeded { .. }
            | ScottError::TooLarge(_)
            | ScottError::Order(OrderError::TooLarge(_)) => LabError::Budget(e.to_string()),
            ScottError::CheckFailed(_) => LabError::Engine(e.to_string()),
            _ => LabError::Input(e.to_string()),
        }
    }
}

impl From<FamilyError> for LabError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::Topo(t) => t.into(),
            _ => LabError::Engine(e.to_string()),
        }
    }
}

impl From<ReflectionError> for LabError {
    fn from(e: ReflectionError) -> Self {
        match e {
            ReflectionError::Topo(t) => t.into(),
            ReflectionError::Scott(s) => s.into(),
            ReflectionError::Family(f) => f.into(),
            ReflectionError::NotT0 => LabError::Input(e.to_string()),
            ReflectionError::BudgetExceeded { .. } => LabError::Budget(e.to_string()),
            _ => LabError::Engine(e.to_string()),
        }
    }
}

impl From<SystemsError> for LabError {
    fn from(e: SystemsError) -> Self {
        match e {
            SystemsError::Reflection(r) => r.into(),
            SystemsError::Topo(t) => t.into(),
            _ => LabError::Engine(e.to_string()),
        }
    }
}

impl From<SymbolicError> for LabError {
    fn from(e: SymbolicError) -> Self {
        LabError::Engine(e.to_string())
    }
}
