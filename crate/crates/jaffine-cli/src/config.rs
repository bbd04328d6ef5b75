//! JSON construction configs: parsing, strict validation, and conversion
//! into library objects.
//!
//! Degree conventions (matching the built-in tables):
//! - Euclidean constructions read (`field_degree` = r, `subfield_degree` = s)
//!   as code field GF(p^r) and subcode alphabet GF(p^s), s | r.
//! - Hermitian constructions read both as TOTAL degrees: code field GF(p^r)
//!   with r even, subcode alphabet GF(p^s) with s even, and the stabilizer
//!   alphabet is GF(p^(s/2)).
//!
//! Coordinates in `J` are 1-based, as in the written form
//! J ⊆ {1, …, m}; they are converted to 0-based indices internally.

use jaffine::error::{Error, Result};
use jaffine::field::make_field;
use jaffine::variety::VarietyParams;
use jaffine::weight::{DistanceOpts, WeightMethod};
use serde::{Deserialize, Serialize};

use crate::NOMINAL_LEAVES_PER_SECOND;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    EuclidFull,
    EuclidSubfield,
    HermFull,
    HermSubfield,
    Steane,
    Generalized,
}

impl ConstructionKind {
    pub fn is_hermitian(self) -> bool {
        matches!(self, ConstructionKind::HermFull | ConstructionKind::HermSubfield)
    }

    /// How many defining sets the construction consumes.
    pub fn delta_arity(self) -> usize {
        match self {
            ConstructionKind::Steane => 2,
            ConstructionKind::Generalized => 3,
            _ => 1,
        }
    }
}

fn default_budget_seconds() -> f64 {
    60.0
}

/// Distance-engine settings. `budget_seconds` is a *nominal* budget: it is
/// converted to a deterministic enumeration budget at a fixed nominal rate,
/// so two runs of the same config always stop at the same point.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistanceConfig {
    pub method: WeightMethod,
    #[serde(default = "default_budget_seconds")]
    pub budget_seconds: f64,
    /// Refusal threshold for full enumeration (number of codewords).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<u64>,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        DistanceConfig {
            method: WeightMethod::InformationSet,
            budget_seconds: default_budget_seconds(),
            cap: None,
        }
    }
}

impl DistanceConfig {
    /// Fill a `DistanceOpts`, wiring in the global seed and thread count.
    pub fn to_opts(&self, seed: u64, threads: usize) -> DistanceOpts {
        let leaves = (self.budget_seconds * NOMINAL_LEAVES_PER_SECOND).ceil() as u64;
        DistanceOpts {
            method: self.method,
            budget: Some(leaves.max(1)),
            exhaustive_cap: self.cap.unwrap_or(1 << 26),
            mc_samples: ((self.budget_seconds * 50_000.0).ceil() as u64).clamp(1_000, 10_000_000),
            seed,
            threads,
            target_upper: None,
        }
    }
}

/// One exponent entry: a bare integer (single-variable grids only) or a
/// full exponent vector.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExpEntry {
    Single(u64),
    Vector(Vec<u64>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConstructionConfig {
    pub construction: ConstructionKind,
    pub p: u32,
    pub field_degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subfield_degree: Option<u32>,
    /// Number of variables; redundant with `N` but accepted for clarity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "N")]
    pub big_n: Vec<u64>,
    /// 1-based coordinate positions whose variable is kept nonzero.
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    /// Defining sets; the required count depends on the construction
    /// (1 normally, 2 for steane: [inner, enlargement], 3 for generalized:
    /// [first code, second code, direction space]). Sets need not be
    /// orbit-closed: the closure is taken and reported.
    pub deltas: Vec<Vec<ExpEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceConfig>,
    /// Numbers of logical dimensions to peel off the realized generalized
    /// construction, one derived code per entry.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expurgations: Vec<usize>,
}

/// A config after structural validation, with library-level objects built.
#[derive(Debug)]
pub struct ValidatedConfig {
    pub kind: ConstructionKind,
    pub params: VarietyParams,
    /// Subcode alphabet degree (total over the prime field).
    pub s_eff: u32,
    pub deltas: Vec<Vec<Vec<u64>>>,
    pub distance: Option<DistanceConfig>,
    pub expurgations: Vec<usize>,
}

fn validation<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Validation(msg.into()))
}

impl ConstructionConfig {
    pub fn from_json(text: &str) -> Result<ConstructionConfig> {
        serde_json::from_str(text)
            .map_err(|e| Error::Validation(format!("config does not match the schema: {e}")))
    }

    pub fn validate(&self) -> Result<ValidatedConfig> {
        let r = self.field_degree;
        if r == 0 {
            return validation("field_degree must be positive");
        }
        let field = make_field(self.p, r)?;
        if let Some(m) = self.m {
            if m != self.big_n.len() {
                return validation(format!(
                    "m = {} disagrees with the {} entries of N",
                    m,
                    self.big_n.len()
                ));
            }
        }
        let m = self.big_n.len();
        let mut j0 = Vec::new();
        for &j in &self.j {
            if j == 0 || j > m {
                return validation(format!("J entry {j} outside 1..={m}"));
            }
            if j0.contains(&(j - 1)) {
                return validation(format!("J entry {j} repeated"));
            }
            j0.push(j - 1);
        }
        let params = VarietyParams::new(field, self.big_n.clone(), &j0)?;

        let s_eff = match (self.construction, self.subfield_degree) {
            (ConstructionKind::EuclidFull | ConstructionKind::HermFull, None) => r,
            (ConstructionKind::EuclidFull | ConstructionKind::HermFull, Some(s)) if s == r => r,
            (ConstructionKind::EuclidFull | ConstructionKind::HermFull, Some(s)) => {
                return validation(format!(
                    "full-field construction cannot take subfield_degree {s} != {r}"
                ));
            }
            (_, None) => {
                return validation("this construction requires subfield_degree");
            }
            (_, Some(s)) => s,
        };
        if s_eff == 0 || r % s_eff != 0 {
            return validation(format!(
                "subfield_degree {s_eff} must divide field_degree {r}"
            ));
        }
        if self.construction.is_hermitian() {
            if r % 2 != 0 {
                return validation("Hermitian constructions need an even field_degree");
            }
            if s_eff % 2 != 0 {
                return validation("Hermitian constructions need an even subfield_degree");
            }
        }

        let arity = self.construction.delta_arity();
        if self.deltas.len() != arity {
            return validation(format!(
                "construction {:?} takes exactly {} defining set(s), got {}",
                self.construction,
                arity,
                self.deltas.len()
            ));
        }
        let mut deltas = Vec::new();
        for spec in &self.deltas {
            if spec.is_empty() {
                return validation("defining sets must be nonempty");
            }
            let mut delta = Vec::new();
            for entry in spec {
                let v = match entry {
                    ExpEntry::Single(x) => {
                        if m != 1 {
                            return validation(
                                "bare-integer exponents are only allowed on single-variable grids",
                            );
                        }
                        vec![*x]
                    }
                    ExpEntry::Vector(v) => {
                        if v.len() != m {
                            return validation(format!(
                                "exponent vector {v:?} has {} entries, expected {m}",
                                v.len()
                            ));
                        }
                        v.clone()
                    }
                };
                delta.push(v);
            }
            params.check_defining_set(&delta)?;
            deltas.push(delta);
        }

        if !self.expurgations.is_empty() && self.construction != ConstructionKind::Generalized {
            return validation("expurgations apply only to the generalized construction");
        }
        for &drop in &self.expurgations {
            if drop == 0 {
                return validation("expurgation steps must drop at least one dimension");
            }
        }

        Ok(ValidatedConfig {
            kind: self.construction,
            params,
            s_eff,
            deltas,
            distance: self.distance.clone(),
            expurgations: self.expurgations.clone(),
        })
    }
}

/// Parameters for the defining-set search: a grid and subfield choice but
/// no defining sets (those are what the search produces).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchParams {
    pub p: u32,
    pub field_degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subfield_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(rename = "N")]
    pub big_n: Vec<u64>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distance: Option<DistanceConfig>,
}

impl SearchParams {
    pub fn from_json(text: &str) -> Result<SearchParams> {
        serde_json::from_str(text)
            .map_err(|e| Error::Validation(format!("search params do not match the schema: {e}")))
    }

    /// Reuse the construction-config validation by building the degenerate
    /// single-delta shape for the requested mode.
    pub fn to_config(&self, hermitian: bool) -> ConstructionConfig {
        ConstructionConfig {
            construction: if hermitian {
                ConstructionKind::HermSubfield
            } else {
                ConstructionKind::EuclidSubfield
            },
            p: self.p,
            field_degree: self.field_degree,
            subfield_degree: self.subfield_degree.or(Some(self.field_degree)),
            m: self.m,
            big_n: self.big_n.clone(),
            j: self.j.clone(),
            deltas: vec![vec![ExpEntry::Vector(vec![0; self.big_n.len()])]],
            distance: self.distance.clone(),
            expurgations: Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_json() -> serde_json::Value {
        serde_json::json!({
            "construction": "euclid-subfield",
            "p": 2,
            "field_degree": 4,
            "subfield_degree": 1,
            "N": [4, 6],
            "J": [2],
            "deltas": [[[0, 1], [1, 2]]]
        })
    }

    #[test]
    fn parses_and_validates_example_shape() {
        let cfg = ConstructionConfig::from_json(&base_json().to_string()).unwrap();
        let v = cfg.validate().unwrap();
        assert_eq!(v.s_eff, 1);
        assert_eq!(v.params.n_points(), 20);
        assert_eq!(v.deltas, vec![vec![vec![0, 1], vec![1, 2]]]);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let mut j = base_json();
        j["surprise"] = serde_json::json!(1);
        assert!(ConstructionConfig::from_json(&j.to_string()).is_err());
    }

    #[test]
    fn one_based_j_is_converted_and_range_checked() {
        let mut j = base_json();
        j["J"] = serde_json::json!([3]);
        let cfg = ConstructionConfig::from_json(&j.to_string()).unwrap();
        assert!(matches!(cfg.validate(), Err(Error::Validation(_))));
        let cfg = ConstructionConfig::from_json(&base_json().to_string()).unwrap();
        let v = cfg.validate().unwrap();
        assert_eq!(v.params.j_set, vec![false, true]);
    }

    #[test]
    fn divisibility_break_names_the_coordinate() {
        let mut j = base_json();
        j["N"] = serde_json::json!([4, 7]);
        let cfg = ConstructionConfig::from_json(&j.to_string()).unwrap();
        let err = cfg.validate().unwrap_err();
        assert!(err.to_string().contains("N_2"), "{err}");
    }

    #[test]
    fn flat_deltas_only_for_one_variable() {
        let mut j = base_json();
        j["deltas"] = serde_json::json!([[1, 2, 4]]);
        let cfg = ConstructionConfig::from_json(&j.to_string()).unwrap();
        assert!(cfg.validate().is_err());
        let flat = serde_json::json!({
            "construction": "euclid-subfield",
            "p": 2, "field_degree": 3, "subfield_degree": 1,
            "N": [8], "J": [1],
            "deltas": [[1, 2, 4]]
        });
        let v = ConstructionConfig::from_json(&flat.to_string()).unwrap().validate().unwrap();
        assert_eq!(v.deltas, vec![vec![vec![1], vec![2], vec![4]]]);
    }

    #[test]
    fn hermitian_degree_rules() {
        let mut j = base_json();
        j["construction"] = serde_json::json!("herm-subfield");
        j["subfield_degree"] = serde_json::json!(2);
        let cfg = ConstructionConfig::from_json(&j.to_string()).unwrap();
        assert!(cfg.validate().is_ok());
        j["subfield_degree"] = serde_json::json!(1);
        let cfg = ConstructionConfig::from_json(&j.to_string()).unwrap();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn arity_and_expurgation_rules() {
        let mut j = base_json();
        j["deltas"] = serde_json::json!([[[0, 1]], [[0, 1]]]);
        let cfg = ConstructionConfig::from_json(&j.to_string()).unwrap();
        assert!(cfg.validate().is_err(), "one-delta construction got two");
        let mut j = base_json();
        j["expurgations"] = serde_json::json!([1]);
        let cfg = ConstructionConfig::from_json(&j.to_string()).unwrap();
        assert!(cfg.validate().is_err(), "expurgation outside generalized");
    }

    #[test]
    fn budget_seconds_becomes_a_deterministic_leaf_budget() {
        let d = DistanceConfig { budget_seconds: 2.0, ..Default::default() };
        let opts = d.to_opts(11, 3);
        assert_eq!(opts.budget, Some(40_000_000));
        assert_eq!(opts.seed, 11);
        assert_eq!(opts.threads, 3);
    }
}
