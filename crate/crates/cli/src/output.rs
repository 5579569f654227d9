//! File writers: JSON reports, CSV tables and OBJ sphere meshes.
//!
//! CSV numbers use 17 significant digits; JSON uses the shortest
//! representation that parses back to the same `f64`.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use iab_core::{ProfileSample, SolveReport};
use serde::Serialize;

use crate::error::CliError;

pub const PROFILE_HEADER: &str = "R,r,sigma_rr,p";

/// `{:.16e}`: 17 significant digits, enough to round-trip any `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn profile_csv(profile: &[ProfileSample]) -> String {
    let mut out = String::from(PROFILE_HEADER);
    out.push('\n');
    for s in profile {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_f64(s.reference_radius),
            fmt_f64(s.current_radius),
            fmt_f64(s.sigma_rr),
            fmt_f64(s.hydrostatic_p)
        );
    }
    out
}

pub fn parse_profile_csv(text: &str) -> Result<Vec<ProfileSample>, String> {
    let mut lines = text.lines();
    if lines.next() != Some(PROFILE_HEADER) {
        return Err(format!("missing header `{PROFILE_HEADER}`"));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let cols: Vec<f64> = line
                .split(',')
                .map(|c| c.parse::<f64>().map_err(|e| format!("line {}: {e}", i + 2)))
                .collect::<Result<_, _>>()?;
            let [reference_radius, current_radius, sigma_rr, hydrostatic_p] = cols[..] else {
                return Err(format!("line {}: expected 4 columns", i + 2));
            };
            Ok(ProfileSample {
                reference_radius,
                current_radius,
                sigma_rr,
                hydrostatic_p,
            })
        })
        .collect()
}

/// Latitude-longitude triangulation of a sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereMesh {
    pub vertices: Vec<[f64; 3]>,
    /// Zero-based vertex indices.
    pub triangles: Vec<[usize; 3]>,
}

impl SphereMesh {
    /// `bands` latitude bands between the poles and `segments` meridians.
    pub fn new(radius: f64, bands: usize, segments: usize) -> Self {
        let mut vertices = vec![[0.0, 0.0, radius]];
        for i in 1..bands {
            let polar = PI * i as f64 / bands as f64;
            for j in 0..segments {
                let azimuth = 2.0 * PI * j as f64 / segments as f64;
                vertices.push([
                    radius * azimuth.cos() * polar.sin(),
                    radius * azimuth.sin() * polar.sin(),
                    radius * polar.cos(),
                ]);
            }
        }
        vertices.push([0.0, 0.0, -radius]);
        let south = vertices.len() - 1;
        let ring = |i: usize, j: usize| 1 + (i - 1) * segments + j % segments;

        let mut triangles = Vec::with_capacity(2 * segments * (bands - 1));
        for j in 0..segments {
            triangles.push([0, ring(1, j), ring(1, j + 1)]);
        }
        for i in 1..bands - 1 {
            for j in 0..segments {
                let (a, b) = (ring(i, j), ring(i, j + 1));
                let (c, d) = (ring(i + 1, j), ring(i + 1, j + 1));
                triangles.push([a, c, d]);
                triangles.push([a, d, b]);
            }
        }
        for j in 0..segments {
            triangles.push([south, ring(bands - 1, j + 1), ring(bands - 1, j)]);
        }
        Self { vertices, triangles }
    }

    pub fn to_obj(&self, name: &str) -> String {
        let mut out = format!("o {name}\n");
        for v in &self.vertices {
            let _ = writeln!(out, "v {} {} {}", fmt_f64(v[0]), fmt_f64(v[1]), fmt_f64(v[2]));
        }
        for t in &self.triangles {
            let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
        }
        out
    }
}

/// Per-vertex stress on the deformed outer surface. Radially symmetric,
/// so every vertex carries the same values.
pub fn outer_scalars_csv(vertex_count: usize, sigma_rr: f64, sigma_hoop: f64, p: f64) -> String {
    let mut out = String::from("vertex,sigma_rr,sigma_thetatheta,p\n");
    let (a, b, c) = (fmt_f64(sigma_rr), fmt_f64(sigma_hoop), fmt_f64(p));
    for k in 0..vertex_count {
        let _ = writeln!(out, "{k},{a},{b},{c}");
    }
    out
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

pub fn read_report(path: &Path) -> Result<SolveReport, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    #[derive(serde::Deserialize)]
    struct Doc {
        report: SolveReport,
    }
    serde_json::from_str::<Doc>(&text)
        .map(|d| d.report)
        .map_err(|e| CliError::config(path.display().to_string(), e.to_string()))
}

/// Writes named files into one output directory.
pub struct OutputDir {
    root: PathBuf,
    written: Vec<PathBuf>,
}

impl OutputDir {
    pub fn create(root: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(root).map_err(|e| CliError::io(root, e))?;
        Ok(Self {
            root: root.to_owned(),
            written: Vec::new(),
        })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.root.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
        self.written.push(path);
        Ok(())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }

    /// Timestamp and version, kept out of the deterministic outputs.
    pub fn write_metadata(&mut self, command: &str) -> Result<(), CliError> {
        let seconds = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let meta = serde_json::json!({
            "command": command,
            "generated_unix_seconds": seconds,
            "version": env!("CARGO_PKG_VERSION"),
        });
        self.write("meta.json", &to_json(&meta))
    }
}
