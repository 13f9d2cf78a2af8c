//! JSON files for posets, spaces and reports.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::LabError;
use crate::order::FinPoset;
use crate::subset::Subset;
use crate::topo::{FinSpace, TopoError};

/// `{"elements": [..], "leq": [[a, b], ..]}`; `leq` generates the order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
}

impl PosetFile {
    /// Covering pairs only.
    pub fn from_poset(p: &FinPoset) -> Self {
        PosetFile {
            elements: p.labels().to_vec(),
            leq: p.hasse_edges().into_iter().map(|(a, b)| (p.label(a).to_string(), p.label(b).to_string())).collect(),
        }
    }

    pub fn to_poset(&self) -> Result<FinPoset, LabError> {
        Ok(FinPoset::validate(self.elements.clone(), &self.leq)?)
    }
}

/// `{"points": [..], "opens": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub points: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

impl SpaceFile {
    pub fn from_space(x: &FinSpace) -> Self {
        SpaceFile {
            points: x.labels().to_vec(),
            opens: x.opens().iter().map(|u| u.iter().map(|i| x.label(i).to_string()).collect()).collect(),
        }
    }

    pub fn to_space(&self) -> Result<FinSpace, LabError> {
        let index: HashMap<&str, usize> = self.points.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let opens = self
            .opens
            .iter()
            .map(|u| {
                u.iter()
                    .map(|l| index.get(l.as_str()).copied().ok_or_else(|| TopoError::UnknownPoint(l.clone())))
                    .collect::<Result<Subset, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FinSpace::new(self.points.clone(), opens)?)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, LabError> {
    let text = fs::read_to_string(path).map_err(|e| LabError::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| LabError::Input(format!("{}: {e}", path.display())))
}

pub fn read_poset(path: &Path) -> Result<FinPoset, LabError> {
    read_json::<PosetFile>(path)?.to_poset()
}

pub fn read_space(path: &Path) -> Result<FinSpace, LabError> {
    read_json::<SpaceFile>(path)?.to_space()
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}
