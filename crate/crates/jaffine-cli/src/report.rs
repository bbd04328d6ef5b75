//! Report structures. A report is deterministic for a fixed (config, seed):
//! everything except the `timing_ms` map is reproducible run to run, which
//! `strip_timing` makes easy to check.

use jaffine::weight::WeightReport;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    /// Echo of the parsed input, so a report is self-describing.
    pub input: Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classical: Vec<ClassicalEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stabilizer: Vec<StabilizerEntry>,
    /// Named boolean/structured checks (self-orthogonality, orbit
    /// condition, ...), keyed deterministically.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub checks: BTreeMap<String, Value>,
    /// Mismatches against claimed values; empty on a clean reproduction.
    pub discrepancies: Vec<Discrepancy>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cache_keys: Vec<String>,
    /// Wall-clock phases in milliseconds; excluded from determinism.
    pub timing_ms: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassicalEntry {
    pub label: String,
    pub field: String,
    pub n: usize,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceOut>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StabilizerEntry {
    pub label: String,
    pub construction: String,
    pub alphabet: String,
    pub n: usize,
    pub k: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance_bound: Option<BoundOut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceeds_gv: Option<bool>,
}

/// One classical weight computation, with its exactness flag and method.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistanceOut {
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: bool,
    pub method: String,
    pub enumerated: u64,
    pub completed_level: u64,
}

impl DistanceOut {
    pub fn from_weight(r: &WeightReport) -> DistanceOut {
        let method = serde_json::to_value(r.method)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        DistanceOut {
            lower: r.lower,
            upper: r.upper,
            exact: r.exact,
            method,
            enumerated: r.enumerated,
            completed_level: r.completed_level,
        }
    }
}

/// A design-distance bound assembled from classical parts.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundOut {
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: bool,
    pub parts: Vec<PartOut>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartOut {
    pub name: String,
    #[serde(flatten)]
    pub distance: DistanceOut,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Discrepancy {
    /// Where the mismatch sits, e.g. "table 4, row 3 (Δ3), k".
    pub location: String,
    pub claimed: String,
    pub computed: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub note: String,
}

impl Report {
    pub fn new(command: &str, input: Value) -> Report {
        Report {
            command: command.to_string(),
            input,
            classical: Vec::new(),
            stabilizer: Vec::new(),
            checks: BTreeMap::new(),
            discrepancies: Vec::new(),
            cache_keys: Vec::new(),
            timing_ms: BTreeMap::new(),
        }
    }

    pub fn set_check(&mut self, name: &str, value: impl Into<Value>) {
        self.checks.insert(name.to_string(), value.into());
    }

    /// The report as JSON with timing removed, for determinism comparisons.
    pub fn strip_timing(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
