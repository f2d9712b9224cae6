//! Hardware profiles and go/no-go classification.
//!
//! A profile is the device's operating point `(n_max, d_max)`: the largest
//! qubit count and two-qubit-gate depth for which its output is still
//! distinguishable from noise. An estimate is feasible when it fits inside
//! the closed box spanned by that point.

use std::collections::HashSet;

use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::encoding::ResourceEstimate;

/// Bundled profiles. Only the `d_max` of 10^7 and the 400/1200 next-generation
/// qubit budgets come from published benchmarking; `current-best` is editable.
pub const DEFAULT_PROFILES_JSON: &str = include_str!("../data/profiles.json");

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProfileError {
    #[error("profile document is not valid JSON: {0}")]
    Json(String),
    #[error("schema error at `{0}`")]
    SchemaError(String),
    #[error("duplicate profile name `{0}`")]
    DuplicateName(String),
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HardwareProfile {
    pub name: String,
    pub n_max: u64,
    pub d_max: u64,
    pub note: String,
}

impl HardwareProfile {
    pub fn new(name: impl Into<String>, n_max: u64, d_max: u64) -> Self {
        Self {
            name: name.into(),
            n_max,
            d_max,
            note: String::new(),
        }
    }

    pub fn feasibility_point(&self) -> (u64, u64) {
        (self.n_max, self.d_max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeasibilityVerdict {
    pub qubit_ok: bool,
    pub depth_ok: bool,
    pub feasible: bool,
    pub qubit_margin: f64,
    pub depth_margin: f64,
}

/// Classifies a `(qubits, depth)` requirement against a profile.
pub fn classify_point(qubits: u64, depth: u64, profile: &HardwareProfile) -> FeasibilityVerdict {
    let qubit_ok = qubits <= profile.n_max;
    let depth_ok = depth <= profile.d_max;
    let margin = |budget: u64, need: u64| {
        if need == 0 {
            f64::INFINITY
        } else {
            budget as f64 / need as f64
        }
    };
    FeasibilityVerdict {
        qubit_ok,
        depth_ok,
        feasible: qubit_ok && depth_ok,
        qubit_margin: margin(profile.n_max, qubits),
        depth_margin: margin(profile.d_max, depth),
    }
}

pub fn classify(estimate: &ResourceEstimate, profile: &HardwareProfile) -> FeasibilityVerdict {
    classify_point(estimate.qubits, estimate.depth, profile)
}

fn positive_int(entry: &Value, idx: usize, field: &str) -> Result<u64, ProfileError> {
    entry
        .get(field)
        .and_then(Value::as_u64)
        .filter(|&v| v >= 1)
        .ok_or_else(|| ProfileError::SchemaError(format!("profiles[{idx}].{field}")))
}

/// Parses a `{"profiles": [{name, n_max, d_max, note?}, ...]}` document.
pub fn load_profiles(config: &str) -> Result<Vec<HardwareProfile>, ProfileError> {
    let doc: Value = serde_json::from_str(config).map_err(|e| ProfileError::Json(e.to_string()))?;
    let entries = doc
        .get("profiles")
        .and_then(Value::as_array)
        .ok_or_else(|| ProfileError::SchemaError("profiles".into()))?;

    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(entries.len());
    for (idx, entry) in entries.iter().enumerate() {
        if !entry.is_object() {
            return Err(ProfileError::SchemaError(format!("profiles[{idx}]")));
        }
        let name = entry
            .get("name")
            .and_then(Value::as_str)
            .filter(|s| !s.is_empty())
            .ok_or_else(|| ProfileError::SchemaError(format!("profiles[{idx}].name")))?;
        let n_max = positive_int(entry, idx, "n_max")?;
        let d_max = positive_int(entry, idx, "d_max")?;
        let note = match entry.get("note") {
            None | Some(Value::Null) => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(_) => return Err(ProfileError::SchemaError(format!("profiles[{idx}].note"))),
        };
        if !seen.insert(name.to_string()) {
            return Err(ProfileError::DuplicateName(name.to_string()));
        }
        out.push(HardwareProfile {
            name: name.to_string(),
            n_max,
            d_max,
            note,
        });
    }
    Ok(out)
}

pub fn default_profiles() -> Vec<HardwareProfile> {
    load_profiles(DEFAULT_PROFILES_JSON).expect("bundled profiles are well-formed")
}

pub fn find_profile<'a>(
    profiles: &'a [HardwareProfile],
    name: &str,
) -> Result<&'a HardwareProfile, ProfileError> {
    profiles
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| ProfileError::UnknownProfile(name.to_string()))
}
