//! Scenario files: JSON with a versioned `schema` field. Unknown keys are
//! rejected everywhere.

use std::path::Path;

use serde::Deserialize;

use photonfield_core::fields::{FieldKind, SpacetimePoint};
use photonfield_core::fock::{LatticeConfig, ModeSpec, DEFAULT_DIMENSION_LIMIT};
use photonfield_core::polarization::TransverseGauge;
use photonfield_core::units::Units;
use photonfield_core::Complex64;

use crate::checks::CheckName;
use crate::error::LabError;

pub const SCHEMA: &str = "photonfield-scenario/1";

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: String,
    #[serde(default)]
    pub name: Option<String>,
    pub lattice: LatticeSpec,
    #[serde(default)]
    pub state: StateSpec,
    #[serde(default)]
    pub checks: Vec<CheckName>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub grid: Option<GridSpec>,
    #[serde(default)]
    pub vacuum_scan: Option<ScanSpec>,
    #[serde(default)]
    pub dump: Option<DumpSpec>,
    #[serde(default)]
    pub outputs: Outputs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HelicityChoice {
    Plus,
    Minus,
    Both,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MomentumEntry {
    pub n: [i32; 3],
    #[serde(default = "both")]
    pub helicity: HelicityChoice,
}

fn both() -> HelicityChoice {
    HelicityChoice::Both
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GaugeChoice {
    #[default]
    Default,
    Alternate,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub box_length: f64,
    #[serde(default = "one")]
    pub hbar: f64,
    #[serde(default = "one")]
    pub c: f64,
    pub n_max: u32,
    pub modes: Vec<MomentumEntry>,
    #[serde(default)]
    pub gauge: GaugeChoice,
    #[serde(default = "default_limit")]
    pub dimension_limit: usize,
}

fn one() -> f64 {
    1.0
}

fn default_limit() -> usize {
    DEFAULT_DIMENSION_LIMIT
}

impl LatticeSpec {
    pub fn units(&self) -> Units {
        Units {
            hbar: self.hbar,
            c: self.c,
        }
    }

    /// Mode list in file order; `both` expands to `+` then `−`.
    pub fn mode_specs(&self) -> Vec<ModeSpec> {
        let mut out = Vec::new();
        for entry in &self.modes {
            if entry.helicity != HelicityChoice::Minus {
                out.push(ModeSpec::new(1, entry.n));
            }
            if entry.helicity != HelicityChoice::Plus {
                out.push(ModeSpec::new(-1, entry.n));
            }
        }
        out
    }

    pub fn config(&self) -> LatticeConfig {
        let gauge = match self.gauge {
            GaugeChoice::Default => TransverseGauge::default(),
            GaugeChoice::Alternate => TransverseGauge::alternate(),
        };
        let mut cfg = LatticeConfig::new(self.box_length, self.units(), self.mode_specs(), self.n_max)
            .with_gauge(gauge);
        cfg.dimension_limit = self.dimension_limit;
        cfg
    }
}

/// A mode addressed by helicity (`+1`/`-1`) and lattice momentum.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeRef {
    pub helicity: i32,
    pub n: [i32; 3],
}

impl ModeRef {
    pub fn spec(&self) -> ModeSpec {
        ModeSpec::new(self.helicity, self.n)
    }
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexValue {
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl From<ComplexValue> for Complex64 {
    fn from(v: ComplexValue) -> Self {
        Complex64::new(v.re, v.im)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientEntry {
    pub occupancy: Vec<u32>,
    pub amplitude: ComplexValue,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum StateSpec {
    #[default]
    Vacuum,
    Number {
        occupancies: Vec<u32>,
    },
    Coherent {
        mode: ModeRef,
        alpha: ComplexValue,
        cap: u32,
    },
    Coefficients {
        entries: Vec<CoefficientEntry>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum FieldChoice {
    E,
    B,
    A,
}

impl From<FieldChoice> for FieldKind {
    fn from(c: FieldChoice) -> Self {
        match c {
            FieldChoice::E => FieldKind::E,
            FieldChoice::B => FieldKind::B,
            FieldChoice::A => FieldKind::A,
        }
    }
}

fn field_e() -> FieldChoice {
    FieldChoice::E
}

/// Time samples `t_start + i·(t_end − t_start)/samples` for `i < samples`
/// (or `≤` with `endpoint`), at each listed position.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "field_e")]
    pub field: FieldChoice,
    pub t_start: f64,
    pub t_end: f64,
    pub samples: usize,
    #[serde(default)]
    pub endpoint: bool,
    #[serde(default = "origin")]
    pub positions: Vec<[f64; 3]>,
}

fn origin() -> Vec<[f64; 3]> {
    vec![[0.0; 3]]
}

impl GridSpec {
    /// Points ordered by position, then time.
    pub fn points(&self) -> Vec<SpacetimePoint> {
        let divisions = if self.endpoint {
            self.samples.saturating_sub(1).max(1)
        } else {
            self.samples.max(1)
        };
        let dt = (self.t_end - self.t_start) / divisions as f64;
        self.positions
            .iter()
            .flat_map(|r| (0..self.samples).map(move |i| SpacetimePoint::new(*r, self.t_start + dt * i as f64)))
            .collect()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSpec {
    pub cutoffs: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DumpSpec {
    pub operator: String,
    #[serde(default)]
    pub point: Option<[f64; 4]>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    #[serde(default = "report_name")]
    pub report: String,
    #[serde(default = "grid_name")]
    pub grid: String,
    #[serde(default = "scan_name")]
    pub vacuum_scan: String,
}

impl Default for Outputs {
    fn default() -> Self {
        Self {
            report: report_name(),
            grid: grid_name(),
            vacuum_scan: scan_name(),
        }
    }
}

fn report_name() -> String {
    "report.json".into()
}

fn grid_name() -> String {
    "expectation.csv".into()
}

fn scan_name() -> String {
    "vacuum_scan.csv".into()
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self, LabError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let scenario: Scenario = serde_path_to_error::deserialize(de).map_err(|e| LabError::Config {
            path: e.path().to_string(),
            message: e.inner().to_string(),
        })?;
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn load(path: &Path) -> Result<Self, LabError> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<(), LabError> {
        if self.schema != SCHEMA {
            return Err(LabError::Config {
                path: "schema".into(),
                message: format!("unsupported schema {:?}, expected {SCHEMA:?}", self.schema),
            });
        }
        let lattice = &self.lattice;
        if !(lattice.box_length > 0.0 && lattice.box_length.is_finite()) {
            return Err(field_error("lattice.box_length", "must be positive and finite"));
        }
        if !(lattice.hbar > 0.0 && lattice.hbar.is_finite()) {
            return Err(field_error("lattice.hbar", "must be positive and finite"));
        }
        if !(lattice.c > 0.0 && lattice.c.is_finite()) {
            return Err(field_error("lattice.c", "must be positive and finite"));
        }
        if lattice.modes.is_empty() {
            return Err(field_error("lattice.modes", "at least one mode is required"));
        }
        let specs = lattice.mode_specs();
        for (i, entry) in lattice.modes.iter().enumerate() {
            if entry.n == [0, 0, 0] {
                return Err(field_error(&format!("lattice.modes[{i}].n"), "zero momentum has no mode"));
            }
        }
        for (i, a) in specs.iter().enumerate() {
            if specs[..i].contains(a) {
                return Err(field_error(
                    "lattice.modes",
                    &format!("mode (helicity {}, n {:?}) listed twice", a.helicity, a.n),
                ));
            }
        }
        match &self.state {
            StateSpec::Coherent { mode, cap, .. } => {
                if !specs.contains(&mode.spec()) {
                    return Err(field_error("state.mode", "mode is not part of the lattice"));
                }
                if *cap > lattice.n_max {
                    return Err(field_error("state.cap", "cap exceeds lattice.n_max"));
                }
            }
            StateSpec::Number { occupancies } => {
                if occupancies.len() != specs.len() {
                    return Err(field_error(
                        "state.occupancies",
                        &format!("expected {} entries, one per mode", specs.len()),
                    ));
                }
            }
            StateSpec::Coefficients { entries } => {
                for (i, e) in entries.iter().enumerate() {
                    if e.occupancy.len() != specs.len() {
                        return Err(field_error(
                            &format!("state.entries[{i}].occupancy"),
                            &format!("expected {} entries, one per mode", specs.len()),
                        ));
                    }
                }
            }
            StateSpec::Vacuum => {}
        }
        if let Some(grid) = &self.grid {
            if !(grid.t_start.is_finite() && grid.t_end.is_finite()) {
                return Err(field_error("grid", "time range must be finite"));
            }
        }
        Ok(())
    }
}

fn field_error(path: &str, message: &str) -> LabError {
    LabError::Config {
        path: path.into(),
        message: message.into(),
    }
}
