//! Scenario configuration files.
//!
//! Every dimensional value carries an explicit unit suffix and is converted
//! to SI on read:
//!
//! ```toml
//! [material]
//! c1 = "1.1e4 Pa"
//! c2 = "22 kPa"
//! density = "0.1 kg/m^3"   # optional
//! poisson = 0.45           # optional
//!
//! [reference]
//! inner_radius = "2.7 cm"
//! outer_radius = "0.03 m"
//!
//! [solve]
//! mode = "inverse"         # or "forward"
//! target = "0.03 m"        # a length for inverse, a pressure for forward
//! samples = 64
//!
//! [output]
//! mesh = true
//! mesh_resolution = [32, 64]
//!
//! [mechanism]
//! axis = "left-right"
//! displacement = "2 mm"
//! ```

use std::path::Path;

use iab_core::mechanism::{
    build_default_mechanism, Axis, CorrectionCommand, Direction, Group, IabPlacement, Mechanism,
};
use iab_core::{MaterialParams, ReferenceShell, SolverConfig, Tolerance};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::units::{parse_as, parse_quantity, Dimension};

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    material: Option<RawMaterial>,
    reference: Option<RawShell>,
    solve: Option<RawSolve>,
    #[serde(default)]
    output: RawOutput,
    mechanism: Option<RawMechanism>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMaterial {
    c1: String,
    c2: String,
    density: Option<String>,
    poisson: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawShell {
    inner_radius: String,
    outer_radius: String,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolve {
    mode: Option<Mode>,
    target: String,
    samples: Option<usize>,
    atmospheric_pressure: Option<String>,
    quad_tolerance: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    #[serde(default = "default_true")]
    mesh: bool,
    #[serde(default = "default_resolution")]
    mesh_resolution: [usize; 2],
}

impl Default for RawOutput {
    fn default() -> Self {
        Self {
            mesh: true,
            mesh_resolution: default_resolution(),
        }
    }
}

fn default_true() -> bool {
    true
}

fn default_resolution() -> [usize; 2] {
    [32, 64]
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMechanism {
    axis: Axis,
    displacement: String,
    placements: Option<Vec<RawPlacement>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPlacement {
    id: String,
    group: Group,
    direction: Direction,
    inner_radius: String,
    outer_radius: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Inverse,
    Forward,
}

/// What a scenario solves for, in SI units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Target {
    /// Prescribed deformed inner radius, m.
    Inverse { inner_radius: f64 },
    /// Prescribed gauge pressure, Pa.
    Forward { pressure: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeshOptions {
    pub enabled: bool,
    pub latitude_bands: usize,
    pub longitude_segments: usize,
}

/// A single-bladder scenario.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub material: MaterialParams,
    pub reference: ReferenceShell,
    pub target: Target,
    pub solver: SolverConfig,
    pub mesh: MeshOptions,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MechanismConfig {
    pub mechanism: Mechanism,
    pub command: CorrectionCommand,
    pub solver: SolverConfig,
}

/// Command-line overrides applied on top of the file.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub samples: Option<usize>,
    pub quad_tolerance: Option<f64>,
}

/// Parsed file, converted lazily per subcommand.
#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    raw: RawConfig,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| CliError::config("<file>", e.to_string().trim_end()))?;
        Ok(Self { raw })
    }

    fn material(&self) -> Result<MaterialParams, CliError> {
        let m = self
            .raw
            .material
            .as_ref()
            .ok_or_else(|| CliError::config("material", "section is required"))?;
        let c1 = quantity("material.c1", &m.c1, Dimension::Pressure)?;
        let c2 = quantity("material.c2", &m.c2, Dimension::Pressure)?;
        let density = match &m.density {
            Some(d) => quantity("material.density", d, Dimension::Density)?,
            None => iab_core::geometry::DEFAULT_DENSITY,
        };
        let poisson = m.poisson.unwrap_or(iab_core::geometry::DEFAULT_POISSON);
        MaterialParams::new(c1, c2, density, poisson).map_err(|e| field_error("material", e))
    }

    fn solver(&self, overrides: Overrides) -> Result<SolverConfig, CliError> {
        let mut cfg = SolverConfig::default();
        if let Some(s) = &self.raw.solve {
            if let Some(n) = s.samples {
                cfg.samples = n;
            }
            if let Some(p) = &s.atmospheric_pressure {
                cfg.atmospheric_pressure = quantity("solve.atmospheric_pressure", p, Dimension::Pressure)?;
            }
            if let Some(t) = s.quad_tolerance {
                cfg.quadrature = Tolerance::with_relative(t);
            }
        }
        if let Some(n) = overrides.samples {
            cfg.samples = n;
        }
        if let Some(t) = overrides.quad_tolerance {
            cfg.quadrature = Tolerance::with_relative(t);
        }
        if cfg.samples < 2 {
            return Err(CliError::config(
                "solve.samples",
                format!("must be at least 2, got {}", cfg.samples),
            ));
        }
        let rel = cfg.quadrature.relative;
        if !(rel > 0.0 && rel < 1.0) {
            return Err(CliError::config(
                "solve.quad_tolerance",
                format!("must lie in (0, 1), got {rel}"),
            ));
        }
        Ok(cfg)
    }

    /// Scenario for `inverse`, `forward` and `profile`. When `require` is
    /// given, the configured mode must match it.
    pub fn scenario(&self, require: Option<Mode>, overrides: Overrides) -> Result<ScenarioConfig, CliError> {
        let material = self.material()?;
        let shell = self
            .raw
            .reference
            .as_ref()
            .ok_or_else(|| CliError::config("reference", "section is required"))?;
        let inner = quantity("reference.inner_radius", &shell.inner_radius, Dimension::Length)?;
        let outer = quantity("reference.outer_radius", &shell.outer_radius, Dimension::Length)?;
        let reference = ReferenceShell::new(inner, outer).map_err(|e| field_error("reference", e))?;

        let solve = self
            .raw
            .solve
            .as_ref()
            .ok_or_else(|| CliError::config("solve", "section is required"))?;
        let target = parse_quantity(&solve.target).map_err(|m| CliError::config("solve.target", m))?;
        let implied = match target.dimension {
            Dimension::Length => Mode::Inverse,
            Dimension::Pressure => Mode::Forward,
            Dimension::Density => return Err(CliError::config("solve.target", "must be a length or a pressure")),
        };
        let mode = solve.mode.unwrap_or(implied);
        if mode != implied {
            return Err(CliError::config(
                "solve.target",
                format!(
                    "{mode:?} mode needs a {}",
                    if mode == Mode::Inverse { "length" } else { "pressure" }
                ),
            ));
        }
        if let Some(want) = require {
            if want != mode {
                return Err(CliError::config(
                    "solve.mode",
                    format!("this subcommand needs {want:?} mode, config is {mode:?}"),
                ));
            }
        }
        let target = match mode {
            Mode::Inverse => Target::Inverse {
                inner_radius: target.value,
            },
            Mode::Forward => Target::Forward { pressure: target.value },
        };

        let [lat, lon] = self.raw.output.mesh_resolution;
        if lat < 2 || lon < 3 {
            return Err(CliError::config(
                "output.mesh_resolution",
                format!("need at least [2, 3], got [{lat}, {lon}]"),
            ));
        }
        Ok(ScenarioConfig {
            material,
            reference,
            target,
            solver: self.solver(overrides)?,
            mesh: MeshOptions {
                enabled: self.raw.output.mesh,
                latitude_bands: lat,
                longitude_segments: lon,
            },
        })
    }

    /// Mechanism layout and command for the `mechanism` subcommand. Without
    /// explicit placements the default eight-bladder layout is used.
    pub fn mechanism(&self, overrides: Overrides) -> Result<MechanismConfig, CliError> {
        let material = self.material()?;
        let m = self
            .raw
            .mechanism
            .as_ref()
            .ok_or_else(|| CliError::config("mechanism", "section is required"))?;
        let displacement = quantity("mechanism.displacement", &m.displacement, Dimension::Length)?;
        let command =
            CorrectionCommand::new(m.axis, displacement).map_err(|e| field_error("mechanism.displacement", e))?;
        let mechanism = match &m.placements {
            None => build_default_mechanism(material),
            Some(list) => {
                let placements = list
                    .iter()
                    .map(|p| {
                        let inner = quantity("mechanism.placements.inner_radius", &p.inner_radius, Dimension::Length)?;
                        let outer = quantity("mechanism.placements.outer_radius", &p.outer_radius, Dimension::Length)?;
                        Ok(IabPlacement {
                            id: p.id.clone(),
                            group: p.group,
                            axis: p.group.axis(),
                            direction: p.direction,
                            shell: ReferenceShell::new(inner, outer)
                                .map_err(|e| field_error("mechanism.placements", e))?,
                            material,
                        })
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Mechanism::new(placements).map_err(|e| field_error("mechanism.placements", e))?
            }
        };
        Ok(MechanismConfig {
            mechanism,
            command,
            solver: self.solver(overrides)?,
        })
    }

    pub fn solver_config(&self, overrides: Overrides) -> Result<SolverConfig, CliError> {
        self.solver(overrides)
    }
}

fn quantity(field: &str, text: &str, want: Dimension) -> Result<f64, CliError> {
    parse_as(text, want).map_err(|m| CliError::config(field, m))
}

fn field_error(section: &str, e: iab_core::Error) -> CliError {
    match e {
        iab_core::Error::InvalidParameter { name, reason } => CliError::config(format!("{section}.{name}"), reason),
        other => CliError::config(section, other.to_string()),
    }
}
