//! The run manifest: one self-describing JSON value that captures a whole
//! invocation. Flags override file values; the resolved manifest is echoed
//! into every output header.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Eval,
    Simulate,
    Verify,
    Report,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalGeometry {
    Halfline2d,
    Halfspace,
    Interval,
    StripFt,
    HalflineComplement,
    Resolvent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SimGeometry {
    Halfline2d,
    Halfline2dTime,
    Strip,
    Halfspace,
    HalflineComplement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: Command,
    #[serde(default)]
    pub geometry: Option<String>,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    #[serde(default)]
    pub mass: f64,
    #[serde(default)]
    pub lambda: f64,
    /// Start coordinates (interpretation is geometry-specific).
    #[serde(default)]
    pub start: Vec<f64>,
    /// Grid over the free variable: strictly increasing.
    #[serde(default)]
    pub grid: Vec<f64>,
    #[serde(default)]
    pub freq: f64,
    #[serde(default = "default_paths")]
    pub paths: u64,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_substeps")]
    pub substeps: u32,
    #[serde(default = "default_true")]
    pub bridge_correction: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub suite: Option<String>,
    #[serde(default)]
    pub out: Option<String>,
    #[serde(default)]
    pub input: Option<String>,
    #[serde(default = "default_format")]
    pub format: OutputFormat,
}

fn default_alpha() -> f64 {
    1.0
}
fn default_paths() -> u64 {
    10_000
}
fn default_dt() -> f64 {
    1e-4
}
fn default_substeps() -> u32 {
    64
}
fn default_tol() -> f64 {
    1e-8
}
fn default_true() -> bool {
    true
}
fn default_format() -> OutputFormat {
    OutputFormat::Csv
}

impl RunManifest {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.alpha > 0.0 && self.alpha < 2.0) {
            return Err("alpha must lie in (0, 2)".into());
        }
        if self.mass < 0.0 || self.lambda < 0.0 {
            return Err("mass and lambda must be >= 0".into());
        }
        for w in self.grid.windows(2) {
            if w[1] <= w[0] {
                return Err("grid axes must be strictly increasing".into());
            }
        }
        if matches!(self.command, Command::Eval | Command::Simulate) && self.geometry.is_none() {
            return Err("eval/simulate need a geometry".into());
        }
        if matches!(self.command, Command::Eval) && self.grid.is_empty() {
            return Err("eval needs a nonempty grid".into());
        }
        if matches!(self.command, Command::Eval) && self.eval_geometry().is_none() {
            return Err(format!(
                "unknown eval geometry '{}'",
                self.geometry.as_deref().unwrap_or("")
            ));
        }
        if matches!(self.command, Command::Simulate) && self.sim_geometry().is_none() {
            return Err(format!(
                "unknown simulate geometry '{}'",
                self.geometry.as_deref().unwrap_or("")
            ));
        }
        if !(self.dt > 0.0) || self.paths < 1 || self.substeps < 1 {
            return Err("need dt > 0, paths >= 1, substeps >= 1".into());
        }
        if !(self.tol > 0.0) {
            return Err("tol must be positive".into());
        }
        Ok(())
    }

    pub fn eval_geometry(&self) -> Option<EvalGeometry> {
        match self.geometry.as_deref()? {
            "halfline2d" => Some(EvalGeometry::Halfline2d),
            "halfspace" => Some(EvalGeometry::Halfspace),
            "interval" => Some(EvalGeometry::Interval),
            "strip_ft" => Some(EvalGeometry::StripFt),
            "halfline_complement" => Some(EvalGeometry::HalflineComplement),
            "resolvent" => Some(EvalGeometry::Resolvent),
            _ => None,
        }
    }

    pub fn sim_geometry(&self) -> Option<SimGeometry> {
        match self.geometry.as_deref()? {
            "halfline2d" => Some(SimGeometry::Halfline2d),
            "halfline2d_time" => Some(SimGeometry::Halfline2dTime),
            "strip" => Some(SimGeometry::Strip),
            "halfspace" => Some(SimGeometry::Halfspace),
            "halfline_complement" => Some(SimGeometry::HalflineComplement),
            _ => None,
        }
    }

    pub fn grid_points(&self) -> Vec<f64> {
        self.grid.clone()
    }

    pub fn start2(&self) -> Result<(f64, f64), super::CliError> {
        match self.start.len() {
            2 => Ok((self.start[0], self.start[1])),
            _ => Err(super::CliError::Usage(
                "this geometry needs a two-coordinate --start".into(),
            )),
        }
    }

    pub fn start_vec(&self) -> Result<Vec<f64>, super::CliError> {
        if self.start.is_empty() {
            return Err(super::CliError::Usage("--start is required".into()));
        }
        Ok(self.start.clone())
    }
}
