//! Run configurations and deterministic JSON output.

use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cross::Cross;
use crate::error::{Error, Result};
use crate::extension::{GroundTruth, SamplingStrategy};
use crate::extremal::SolveParams;
use crate::geometry::{DomainSpec, Grid, SetSpec};
use crate::poly::BiPoly;
use crate::singularity::SingularSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtremalConfig {
    pub omega: DomainSpec,
    pub a: SetSpec,
    pub grid: Grid,
    #[serde(default)]
    pub solver: SolveParams,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvelopeConfig {
    pub cross: Cross,
    pub grid_z: Grid,
    pub grid_w: Grid,
    #[serde(default)]
    pub solver: SolveParams,
}

/// `numerator / P^pole_order` with `P` taken from the singular set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroundTruthSpec {
    pub numerator: BiPoly,
    pub pole_order: u32,
}

impl GroundTruthSpec {
    pub fn build(&self, m: &SingularSet) -> GroundTruth {
        GroundTruth::new(self.numerator.clone(), m, self.pole_order)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitSpec {
    pub m: u32,
    pub deg: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RemovabilityCheck {
    pub center: [Complex64; 2],
    pub radii: [f64; 2],
    pub n_quad: usize,
    pub tol: f64,
}

/// Two local fits around `xi` and `eta` compared on their common envelope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OverlapCheck {
    pub xi: [Complex64; 2],
    pub eta: [Complex64; 2],
    pub radius: f64,
    #[serde(default = "default_n_test")]
    pub n_test: usize,
    pub tol: f64,
}

fn default_n_test() -> usize {
    500
}

fn default_max_rel_error() -> f64 {
    1e-6
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Checks {
    #[serde(default = "default_n_test")]
    pub n_test: usize,
    #[serde(default = "default_max_rel_error")]
    pub max_rel_error: f64,
    /// Threshold for the residual of a zero-data fit on `A×B`.
    #[serde(default)]
    pub uniqueness: Option<f64>,
    #[serde(default)]
    pub removability: Option<RemovabilityCheck>,
    #[serde(default)]
    pub overlap: Option<OverlapCheck>,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            n_test: default_n_test(),
            max_rel_error: default_max_rel_error(),
            uniqueness: None,
            removability: None,
            overlap: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    pub cross: Cross,
    pub singular_set: SingularSet,
    /// Function sampled on the cross.
    pub ground_truth: GroundTruthSpec,
    /// Function the extension is compared against; defaults to `ground_truth`.
    #[serde(default)]
    pub reference: Option<GroundTruthSpec>,
    pub fit: FitSpec,
    #[serde(default)]
    pub sampling: SamplingStrategy,
    pub grid_z: Grid,
    pub grid_w: Grid,
    #[serde(default)]
    pub solver: SolveParams,
    #[serde(default)]
    pub checks: Checks,
}

impl ExtremalConfig {
    pub fn validate(&self) -> Result<()> {
        self.omega.validate()?;
        self.a.validate()?;
        self.grid.validate()?;
        self.solver.validate()
    }
}

impl EnvelopeConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid_z.validate()?;
        self.grid_w.validate()?;
        self.solver.validate()?;
        self.cross.validate_on(&self.grid_z, &self.grid_w)
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        self.grid_z.validate()?;
        self.grid_w.validate()?;
        self.solver.validate()?;
        self.cross.validate_on(&self.grid_z, &self.grid_w)?;
        self.singular_set.validate()?;
        if self.checks.n_test < 100 {
            return Err(Error::Config("checks.n_test must be at least 100".into()));
        }
        if let Some(r) = &self.checks.removability {
            if r.n_quad < 32 {
                return Err(Error::Config("removability.n_quad must be at least 32".into()));
            }
        }
        Ok(())
    }
}

/// Parses a config and rejects unknown keys.
pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            Error::Config(e.to_string())
        } else {
            Error::Json(e)
        }
    })
}

pub fn load<T: DeserializeOwned>(path: &Path) -> Result<T> {
    parse(&std::fs::read_to_string(path)?)
}

/// Configs shipped with the crate, by file name.
pub const SHIPPED: &[(&str, &str)] = &[
    ("annulus_envelope.json", include_str!("../configs/annulus_envelope.json")),
    ("annulus_extremal.json", include_str!("../configs/annulus_extremal.json")),
    ("negative_control.json", include_str!("../configs/negative_control.json")),
    ("pole_order_too_small.json", include_str!("../configs/pole_order_too_small.json")),
    ("theorem1_diag.json", include_str!("../configs/theorem1_diag.json")),
    ("trivial_envelope.json", include_str!("../configs/trivial_envelope.json")),
];

pub fn shipped(name: &str) -> &'static str {
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t).expect("unknown shipped config")
}

/// Pretty JSON with every float written to 17 significant digits and keys
/// sorted. Non-finite floats become `null`.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let mut out = String::new();
    write_value(&serde_json::to_value(value)?, 0, &mut out);
    out.push('\n');
    Ok(out)
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Number(n) => match (n.as_i64(), n.as_u64(), n.as_f64()) {
            (Some(i), _, _) => out.push_str(&i.to_string()),
            (_, Some(u), _) => out.push_str(&u.to_string()),
            (_, _, Some(f)) => out.push_str(&format!("{f:.16e}")),
            _ => out.push_str("null"),
        },
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(item, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}
