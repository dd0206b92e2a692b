//! Scenario files: the JSON format the `rdv` binary consumes.
//!
//! A scenario bundles the vehicle fleet with the simulation knobs (reset
//! periods, activation mode, interaction budget) and, optionally, an
//! externally claimed optimum to check the solvers against. Parsing is
//! strict: unknown fields are rejected so a typo'd knob cannot silently
//! fall back to a default.

use std::path::{Path, PathBuf};

use rdv_core::{
    Mode, PlanePoint, RendezvousProblem, ResetStyle, ScenarioConfig, Vehicle,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Environment variable naming a directory to resolve relative scenario
/// paths against when they do not exist relative to the working directory.
pub const SCENARIO_DIR_ENV: &str = "RDV_SCENARIO_DIR";

/// One vehicle row in a scenario file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleEntry {
    pub id: u32,
    pub x: f64,
    pub y: f64,
    pub speed: f64,
}

/// Activation discipline, spelled lowercase in files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioMode {
    Synchronous,
    Asynchronous,
}

/// An externally claimed optimum carried alongside the instance, so the
/// report can print it next to what the solvers actually find.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeclaredOptimum {
    pub x: f64,
    pub y: f64,
    pub time: f64,
}

impl DeclaredOptimum {
    pub fn point(&self) -> PlanePoint {
        PlanePoint::new(self.x, self.y)
    }
}

/// A parsed scenario file, structurally faithful to the JSON.
///
/// `parse` and `emit` round-trip: `parse(&f.emit())` reproduces `f` exactly
/// for every value this type can hold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub vehicles: Vec<VehicleEntry>,
    /// One reset period per vehicle, in ring order.
    pub periods: Vec<u64>,
    pub max_interactions: u64,
    pub mode: ScenarioMode,
    pub tol_consensus: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_optimum: Option<DeclaredOptimum>,
}

/// Why a scenario file could not be turned into a runnable configuration.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioFileError {
    #[error("cannot read scenario file {path}: {message}")]
    Io { path: String, message: String },
    #[error("scenario file is not valid JSON: {0}")]
    Json(String),
    #[error("{0}")]
    Invalid(String),
}

impl ScenarioFile {
    /// Parse a scenario from JSON text. Structural errors only; semantic
    /// validation happens in [`ScenarioFile::to_config`].
    pub fn parse(text: &str) -> Result<Self, ScenarioFileError> {
        serde_json::from_str(text).map_err(|e| ScenarioFileError::Json(e.to_string()))
    }

    /// Serialize back to JSON text (pretty-printed, trailing newline).
    pub fn emit(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("scenario serializes");
        out.push('\n');
        out
    }

    /// Read and parse a scenario file from disk.
    pub fn load(path: &Path) -> Result<Self, ScenarioFileError> {
        let text = std::fs::read_to_string(path).map_err(|e| ScenarioFileError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        Self::parse(&text)
    }

    /// Semantic validation: build the runnable configuration, surfacing the
    /// first violated constraint with the field it lives in.
    pub fn to_config(&self, reset_style: ResetStyle) -> Result<ScenarioConfig, ScenarioFileError> {
        let vehicles: Vec<Vehicle> = self
            .vehicles
            .iter()
            .map(|v| Vehicle::new(v.id, v.x, v.y, v.speed))
            .collect();
        let problem = RendezvousProblem::new(vehicles)
            .map_err(|e| ScenarioFileError::Invalid(e.to_string()))?;
        let config = ScenarioConfig {
            problem,
            periods: self.periods.clone(),
            max_interactions: self.max_interactions,
            mode: match self.mode {
                ScenarioMode::Synchronous => Mode::Synchronous,
                ScenarioMode::Asynchronous => Mode::Asynchronous,
            },
            tol_consensus: self.tol_consensus,
            reset_style,
        };
        config
            .validate()
            .map_err(|e| ScenarioFileError::Invalid(e.to_string()))?;
        Ok(config)
    }

    /// Just the fleet, validated, for commands that ignore the simulation knobs.
    pub fn to_problem(&self) -> Result<RendezvousProblem, ScenarioFileError> {
        let vehicles: Vec<Vehicle> = self
            .vehicles
            .iter()
            .map(|v| Vehicle::new(v.id, v.x, v.y, v.speed))
            .collect();
        RendezvousProblem::new(vehicles).map_err(|e| ScenarioFileError::Invalid(e.to_string()))
    }
}

/// Resolve a scenario path the way the binary does: use it as given when it
/// exists; otherwise, if it is relative and `RDV_SCENARIO_DIR` names a
/// directory containing it, use that copy. The original path comes back
/// unchanged when neither exists, so the read error names what the user typed.
pub fn resolve_path(raw: &str) -> PathBuf {
    let given = PathBuf::from(raw);
    if given.exists() || given.is_absolute() {
        return given;
    }
    if let Ok(dir) = std::env::var(SCENARIO_DIR_ENV) {
        let candidate = Path::new(&dir).join(raw);
        if candidate.exists() {
            return candidate;
        }
    }
    given
}
