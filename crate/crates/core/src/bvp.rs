//! Spherically symmetric equilibrium of the pressurized shell.
//!
//! With no body force and static loading, radial equilibrium reduces to
//!
//! ```text
//! dσrr/dr = (σθθ + σφφ − 2σrr) / r
//! ```
//!
//! Integrating from the outer wall (`σrr(r_o) = −P_atm`) to the inner wall
//! (`σrr(r_i) = −P_atm − P`) gives the gauge pressure `P` required for a
//! prescribed inner radius. The integral is evaluated in both the current
//! radius `r` and the reference radius `R`, and the two must agree.

use serde::{Deserialize, Serialize};

use crate::constitutive::{constitutive_stress, normal_stresses};
use crate::error::{Error, Result};
use crate::geometry::{
    check_inner_target, map_radius, reference_radius, stretches, wall_volume, DeformedShell, MaterialParams,
    ReferenceShell, Shell,
};
use crate::quadrature::{integrate, Integral, Tolerance};
use crate::roots::{brent, RootOptions};

/// Fraction of the reference inner-cavity volume that may be removed
/// before the forward solver stops searching.
const MAX_CAVITY_REMOVAL: f64 = 0.999;

/// Largest inner-radius stretch considered by the forward solver.
const MAX_INNER_STRETCH: f64 = 2.0;

/// Wall tractions. `internal` is the gauge pressure above `atmospheric`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryConditions {
    pub atmospheric: f64,
    pub internal: f64,
}

impl BoundaryConditions {
    /// Radial stress required on the outer wall.
    pub fn outer_traction(&self) -> f64 {
        -self.atmospheric
    }

    /// Radial stress required on the inner wall.
    pub fn inner_traction(&self) -> f64 {
        -self.atmospheric - self.internal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub quadrature: Tolerance,
    /// Number of profile samples across the wall (≥ 2).
    pub samples: usize,
    /// Ambient pressure, Pa.
    pub atmospheric_pressure: f64,
    /// Relative tolerance between the two pressure integrals.
    pub dual_form_tolerance: f64,
    /// Pressure evaluations used to bracket and check monotonicity in
    /// [`Solver::forward_solve`].
    pub bracket_samples: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            quadrature: Tolerance::default(),
            samples: 64,
            atmospheric_pressure: 0.0,
            dual_form_tolerance: 1e-8,
            bracket_samples: 48,
        }
    }
}

/// One point of a through-wall profile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    #[serde(rename = "R")]
    pub reference_radius: f64,
    #[serde(rename = "r")]
    pub current_radius: f64,
    pub sigma_rr: f64,
    /// Hydrostatic pressure recovered from the radial normal-stress law.
    #[serde(rename = "p")]
    pub hydrostatic_p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolverWarning {
    /// Sampled `P(r_i)` is not monotone over the search bracket; the
    /// returned solution is the candidate closest to the reference radius.
    LimitPoint {
        candidate_roots: Vec<f64>,
        /// Local pressure extrema found while sampling, Pa.
        extremal_pressures: Vec<f64>,
    },
}

/// Result of one inverse or forward solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub reference: ReferenceShell,
    pub material: MaterialParams,
    pub deformed: DeformedShell,
    pub boundary: BoundaryConditions,
    /// Gauge pressure `P`, Pa.
    pub pressure: f64,
    /// `P` from the current-radius integral.
    pub pressure_current_form: f64,
    /// `P` from the reference-radius integral.
    pub pressure_reference_form: f64,
    pub profile: Vec<ProfileSample>,
    /// Deformed minus reference wall volume, m³.
    pub delta_wall_volume: f64,
    /// Quadrature error estimate normalized so that the configured relative
    /// tolerance is the acceptance threshold.
    pub quadrature_error_estimate: f64,
    pub quadrature_intervals: usize,
    /// Root-finder iterations (zero for inverse solves).
    pub iterations: usize,
    /// Body force per unit mass; the shell is unloaded apart from its walls.
    pub body_force: [f64; 3],
    /// Material velocity; solutions are static.
    pub velocity: [f64; 3],
    pub warnings: Vec<SolverWarning>,
}

/// Both evaluations of the pressure integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PressureIntegrals {
    pub current_form: Integral,
    pub reference_form: Integral,
}

/// Max finite-difference residual of radial equilibrium over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumResidual {
    pub grid: usize,
    pub max_residual: f64,
    pub max_integrand: f64,
}

/// Pressure integrand in the current radius, Pa/m:
/// `2C1(r/R² − R⁴/r⁵) + 2C2(r³/R⁴ − R²/r³)` with `R` recovered from `r`.
pub fn pressure_integrand_current(
    current: f64,
    shell: &ReferenceShell,
    inner_radius: f64,
    material: &MaterialParams,
) -> Result<f64> {
    let reference = reference_radius(current, shell, inner_radius)?;
    if inner_radius == shell.inner_radius() {
        return Ok(0.0);
    }
    let (big, small) = (reference, current);
    let big2 = big * big;
    let small2 = small * small;
    Ok(
        2.0 * material.c1() * (small / big2 - big2 * big2 / (small2 * small2 * small))
            + 2.0 * material.c2() * (small2 * small / (big2 * big2) - big2 / (small2 * small)),
    )
}

/// Pressure integrand in the reference radius, Pa/m:
/// `2C1(1/r − R⁶/r⁷) − 2C2(R⁴/r⁵ − r/R²)` with `r` from the volume map.
pub fn pressure_integrand_reference(
    reference: f64,
    shell: &ReferenceShell,
    inner_radius: f64,
    material: &MaterialParams,
) -> Result<f64> {
    let current = map_radius(reference, shell, inner_radius)?;
    if inner_radius == shell.inner_radius() {
        return Ok(0.0);
    }
    let (big, small) = (reference, current);
    let big2 = big * big;
    let small2 = small * small;
    let ratio2 = big2 / small2;
    Ok(2.0 * material.c1() * (1.0 - ratio2 * ratio2 * ratio2) / small
        - 2.0 * material.c2() * (ratio2 * ratio2 / small - small / big2))
}

/// Runs `integrate` on a fallible integrand, surfacing the first failure.
fn integrate_fallible<F>(mut f: F, lower: f64, upper: f64, tol: &Tolerance) -> Result<Integral>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut failure = None;
    let out = integrate(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        lower,
        upper,
        tol,
    );
    match failure {
        Some(e) => Err(e),
        None => out,
    }
}

/// Stateless solver parameterized by tolerances and sampling.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Solver {
    pub config: SolverConfig,
}

impl Solver {
    pub fn new(config: SolverConfig) -> Self {
        Self { config }
    }

    /// Evaluate both pressure integrals for the inner radius `inner_radius`.
    pub fn pressure_integrals(
        &self,
        shell: &ReferenceShell,
        inner_radius: f64,
        material: &MaterialParams,
    ) -> Result<PressureIntegrals> {
        let deformed = shell.deform(inner_radius)?;
        let tol = &self.config.quadrature;
        let current_form = integrate_fallible(
            |r| pressure_integrand_current(r, shell, inner_radius, material),
            inner_radius,
            deformed.outer_radius(),
            tol,
        )?;
        let reference_form = integrate_fallible(
            |big_r| pressure_integrand_reference(big_r, shell, inner_radius, material),
            shell.inner_radius(),
            shell.outer_radius(),
            tol,
        )?;
        let (a, b) = (current_form.value, reference_form.value);
        let allowed = self.config.dual_form_tolerance * a.abs().max(b.abs())
            + 2.0 * tol.absolute
            + current_form.error_estimate
            + reference_form.error_estimate;
        if (a - b).abs() > allowed {
            return Err(Error::DualFormMismatch {
                current_form: a,
                reference_form: b,
            });
        }
        Ok(PressureIntegrals {
            current_form,
            reference_form,
        })
    }

    /// Gauge pressure from the current-radius integral alone.
    fn pressure_only(&self, shell: &ReferenceShell, inner_radius: f64, material: &MaterialParams) -> Result<f64> {
        let deformed = shell.deform(inner_radius)?;
        Ok(integrate_fallible(
            |r| pressure_integrand_current(r, shell, inner_radius, material),
            inner_radius,
            deformed.outer_radius(),
            &self.config.quadrature,
        )?
        .value)
    }

    /// Inverse kinematics: pressure and stress state that hold the inner
    /// wall at `inner_radius`.
    pub fn internal_pressure(
        &self,
        shell: &ReferenceShell,
        inner_radius: f64,
        material: &MaterialParams,
    ) -> Result<SolveReport> {
        check_inner_target(inner_radius)?;
        let deformed = shell.deform(inner_radius)?;
        let integrals = self.pressure_integrals(shell, inner_radius, material)?;
        let pressure = integrals.current_form.value;
        let profile = self.radial_stress_profile(shell, inner_radius, material, self.config.samples)?;

        let tol = &self.config.quadrature;
        let scale = pressure.abs().max(tol.absolute / tol.relative);
        let error = integrals
            .current_form
            .error_estimate
            .max(integrals.reference_form.error_estimate);

        Ok(SolveReport {
            reference: *shell,
            material: *material,
            deformed,
            boundary: BoundaryConditions {
                atmospheric: self.config.atmospheric_pressure,
                internal: pressure,
            },
            pressure,
            pressure_current_form: pressure,
            pressure_reference_form: integrals.reference_form.value,
            profile,
            delta_wall_volume: wall_volume(&deformed) - wall_volume(shell),
            quadrature_error_estimate: error / scale,
            quadrature_intervals: integrals.current_form.intervals + integrals.reference_form.intervals,
            iterations: 0,
            body_force: [0.0; 3],
            velocity: [0.0; 3],
            warnings: Vec::new(),
        })
    }

    /// `σrr` and hydrostatic `p` at `samples` points equally spaced in the
    /// reference radius, from the inner to the outer wall.
    pub fn radial_stress_profile(
        &self,
        shell: &ReferenceShell,
        inner_radius: f64,
        material: &MaterialParams,
        samples: usize,
    ) -> Result<Vec<ProfileSample>> {
        if samples < 2 {
            return Err(Error::invalid("samples", format!("need at least 2, got {samples}")));
        }
        check_inner_target(inner_radius)?;
        let n = samples - 1;
        let (lo, hi) = (shell.inner_radius(), shell.outer_radius());
        let points = (0..=n)
            .map(|k| {
                let big = if k == n {
                    hi
                } else {
                    lo + (hi - lo) * k as f64 / n as f64
                };
                map_radius(big, shell, inner_radius).map(|r| (big, r))
            })
            .collect::<Result<Vec<_>>>()?;
        let current: Vec<f64> = points.iter().map(|&(_, r)| r).collect();
        let sigma = self.radial_stress_at(shell, inner_radius, material, &current)?;

        points
            .iter()
            .zip(sigma)
            .map(|(&(big, r), sigma_rr)| {
                let s = stretches(big, r)?;
                let radial = constitutive_stress(&s, material)[0];
                Ok(ProfileSample {
                    reference_radius: big,
                    current_radius: r,
                    sigma_rr,
                    hydrostatic_p: radial - sigma_rr,
                })
            })
            .collect()
    }

    /// `σrr` at ascending deformed radii ending at the outer wall, built by
    /// integrating panel by panel inward from `σrr(r_o) = −P_atm`.
    fn radial_stress_at(
        &self,
        shell: &ReferenceShell,
        inner_radius: f64,
        material: &MaterialParams,
        radii: &[f64],
    ) -> Result<Vec<f64>> {
        let mut sigma = vec![0.0; radii.len()];
        let last = radii.len() - 1;
        sigma[last] = -self.config.atmospheric_pressure;
        for k in (0..last).rev() {
            let piece = integrate_fallible(
                |r| pressure_integrand_current(r, shell, inner_radius, material),
                radii[k],
                radii[k + 1],
                &self.config.quadrature,
            )?;
            sigma[k] = sigma[k + 1] - piece.value;
        }
        Ok(sigma)
    }

    /// Forward kinematics: the inner radius at which the gauge pressure
    /// equals `target`.
    ///
    /// The bracket runs from the radius that removes 99.9% of the reference
    /// cavity volume up to twice the reference inner radius. `P(r_i)` is
    /// sampled across it first; a non-monotone sample is reported as a
    /// limit-point warning carrying every root found.
    pub fn forward_solve(&self, shell: &ReferenceShell, target: f64, material: &MaterialParams) -> Result<SolveReport> {
        if !target.is_finite() {
            return Err(Error::domain(format!("target pressure must be finite, got {target}")));
        }
        let rest = shell.inner_radius();
        if target == 0.0 {
            return self.internal_pressure(shell, rest, material);
        }

        let lower = (rest.powi(3) * (1.0 - MAX_CAVITY_REMOVAL)).cbrt();
        let upper = MAX_INNER_STRETCH * rest;
        let n = self.config.bracket_samples.max(4);
        let mut grid: Vec<f64> = (0..=n).map(|k| lower + (upper - lower) * k as f64 / n as f64).collect();
        grid.push(rest);
        grid.sort_by(f64::total_cmp);
        grid.dedup();

        let pressures = grid
            .iter()
            .map(|&ri| {
                if ri == rest {
                    Ok(0.0)
                } else {
                    self.pressure_only(shell, ri, material)
                }
            })
            .collect::<Result<Vec<_>>>()?;

        let extremal_pressures: Vec<f64> = pressures
            .windows(3)
            .filter(|w| (w[1] - w[0]) * (w[2] - w[1]) <= 0.0)
            .map(|w| w[1])
            .collect();
        let monotone = pressures.windows(2).all(|w| w[1] > w[0]);

        let residual = |ri: f64| -> Result<f64> { Ok(self.pressure_only(shell, ri, material)? - target) };
        let f_tol = 0.1 * (target.abs() * 1e-9 + 1e-12);
        let opts = RootOptions {
            x_tolerance: 1e-15,
            f_tolerance: f_tol,
            max_iterations: 200,
        };

        let mut roots = Vec::new();
        let mut iterations = 0;
        for k in 0..grid.len() - 1 {
            let (g0, g1) = (pressures[k] - target, pressures[k + 1] - target);
            if g0 == 0.0 {
                roots.push(grid[k]);
            } else if g0.signum() != g1.signum() && g1 != 0.0 {
                let root = brent(residual, grid[k], grid[k + 1], &opts)?;
                iterations += root.iterations;
                roots.push(root.x);
            }
        }
        if pressures.last().is_some_and(|p| *p == target) {
            roots.push(upper);
        }

        let Some(&chosen) = roots
            .iter()
            .min_by(|a, b| (*a - rest).abs().total_cmp(&(*b - rest).abs()))
        else {
            let min = pressures.iter().copied().fold(f64::INFINITY, f64::min);
            let max = pressures.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            return Err(Error::NoBracket { target, min, max });
        };

        let mut report = self.internal_pressure(shell, chosen, material)?;
        let miss = (report.pressure - target).abs();
        if miss > target.abs() * 1e-9 + 1e-12 {
            return Err(Error::RootNonConvergence {
                iterations,
                residual: miss,
            });
        }
        report.iterations = iterations;
        if !monotone {
            report.warnings.push(SolverWarning::LimitPoint {
                candidate_roots: roots,
                extremal_pressures,
            });
        }
        Ok(report)
    }

    /// Largest residual of `dσrr/dr − (σθθ + σφφ − 2σrr)/r` at the interior
    /// nodes of a uniform grid of `grid` intervals in `r`, using central
    /// differences of the solved `σrr` profile.
    pub fn equilibrium_residual(
        &self,
        shell: &ReferenceShell,
        inner_radius: f64,
        material: &MaterialParams,
        grid: usize,
    ) -> Result<EquilibriumResidual> {
        if grid < 16 {
            return Err(Error::invalid(
                "grid",
                format!("need at least 16 intervals, got {grid}"),
            ));
        }
        let deformed = shell.deform(inner_radius)?;
        let (lo, hi) = (inner_radius, deformed.outer_radius());
        let h = (hi - lo) / grid as f64;
        let radii: Vec<f64> = (0..=grid)
            .map(|k| if k == grid { hi } else { lo + h * k as f64 })
            .collect();
        let sigma = self.radial_stress_at(shell, inner_radius, material, &radii)?;

        let mut max_residual: f64 = 0.0;
        let mut max_integrand: f64 = 0.0;
        for k in 1..grid {
            let r = radii[k];
            let big = reference_radius(r, shell, inner_radius)?;
            let s = normal_stresses(big, r, 0.0, material)?;
            let rhs = (s.sigma_thetatheta + s.sigma_phiphi - 2.0 * s.sigma_rr) / r;
            let derivative = (sigma[k + 1] - sigma[k - 1]) / (radii[k + 1] - radii[k - 1]);
            max_residual = max_residual.max((derivative - rhs).abs());
            max_integrand = max_integrand.max(rhs.abs());
        }
        Ok(EquilibriumResidual {
            grid,
            max_residual,
            max_integrand,
        })
    }
}
