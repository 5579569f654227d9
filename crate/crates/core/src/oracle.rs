//! Brute-force reference computations for cross-checking the solvers.
//!
//! Nothing here calls into [`crate::quadrature`], [`crate::roots`] or
//! [`crate::bvp`]: the pressure integral is re-derived from the stretch ratio
//! and summed on a fixed grid. The energy check differentiates the production
//! stored-energy function numerically, which is the relation under test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constitutive::strain_energy;
use crate::error::{Error, Result};
use crate::geometry::{MaterialParams, ReferenceShell, Shell, StretchState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleConfig {
    pub panels: usize,
    /// Relative step for central differences.
    pub fd_step: f64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            panels: 1_000_000,
            fd_step: 1e-6,
            seed: 0x1AB5,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.panels < 1000 {
            return Err(Error::invalid(
                "panels",
                format!("need at least 1000, got {}", self.panels),
            ));
        }
        if !(1e-9..=1e-3).contains(&self.fd_step) {
            return Err(Error::invalid(
                "fd_step",
                format!("must lie in [1e-9, 1e-3], got {}", self.fd_step),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrapezoidEstimate {
    /// Composite trapezoid sum on the full grid.
    pub value: f64,
    /// Same rule on every other node.
    pub half_grid_value: f64,
    /// `|T(n) − T(n/2)| / 3`.
    pub richardson_error: f64,
}

struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn new() -> Self {
        Self { sum: 0.0, carry: 0.0 }
    }

    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Gauge pressure by the composite trapezoid rule over `panels` equal
/// panels in the deformed radius. `panels` is rounded up to an even count.
pub fn trapezoid_pressure(
    shell: &ReferenceShell,
    inner_radius: f64,
    material: &MaterialParams,
    panels: usize,
) -> Result<TrapezoidEstimate> {
    let (big_inner, big_outer) = (shell.inner_radius(), shell.outer_radius());
    if !(inner_radius > 1e-9) {
        return Err(Error::domain(format!("inner radius {inner_radius} m has collapsed")));
    }
    let shift = inner_radius.powi(3) - big_inner.powi(3);
    let outer = (big_outer.powi(3) + shift).cbrt();
    let panels = panels.max(2).div_ceil(2) * 2;
    let h = (outer - inner_radius) / panels as f64;

    let (c1, c2) = (material.c1(), material.c2());
    let integrand = |r: f64| -> Result<f64> {
        let big_cube = r * r * r - shift;
        if big_cube <= 0.0 {
            return Err(Error::domain(format!("no reference radius for r = {r}")));
        }
        let t = r / big_cube.cbrt();
        let t2 = t * t;
        Ok(2.0 / r * (c1 * (t2 - 1.0 / (t2 * t2)) + c2 * (t2 * t2 - 1.0 / t2)))
    };

    let mut full = Compensated::new();
    let mut half = Compensated::new();
    for k in 0..=panels {
        let r = if k == panels {
            outer
        } else {
            inner_radius + h * k as f64
        };
        let v = integrand(r)?;
        let end = k == 0 || k == panels;
        full.add(if end { 0.5 * v } else { v });
        if k % 2 == 0 {
            half.add(if end { 0.5 * v } else { v });
        }
    }
    let value = full.sum * h;
    let half_grid_value = half.sum * 2.0 * h;
    Ok(TrapezoidEstimate {
        value,
        half_grid_value,
        richardson_error: (value - half_grid_value).abs() / 3.0,
    })
}

/// `σθθ − σrr` from a central difference of the scaled stored energy along
/// the incompressible family `λθ = λφ = t`, `λr = t⁻²`:
/// `σθθ − σrr = (t/2)·dW/dt`.
pub fn fd_energy_stress(state: &StretchState, material: &MaterialParams, step: f64) -> f64 {
    let t = state.lambda_theta();
    let h = step * t;
    let energy = |x: f64| {
        let s = StretchState::from_hoop_stretch(x).expect("positive stretch");
        strain_energy(&s, material).scaled
    };
    let slope = (energy(t + h) - energy(t - h)) / (2.0 * h);
    0.5 * t * slope
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomScenario {
    pub shell: ReferenceShell,
    pub material: MaterialParams,
    pub inner_radius: f64,
}

/// Scenarios with `R_i ∈ [0.02, 0.035]` m, wall `∈ [0.001, 0.005]` m,
/// `r_i/R_i ∈ [0.85, 1.25]`, `C1 ∈ [5e3, 5e4]` Pa and `C2 ∈ [0, 1e5]` Pa.
pub fn random_scenarios(seed: u64, n: usize) -> Vec<RandomScenario> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let inner = rng.random_range(0.02..=0.035);
            let wall = rng.random_range(0.001..=0.005);
            let ratio = rng.random_range(0.85..=1.25);
            let c1 = rng.random_range(5e3..=5e4);
            let c2 = rng.random_range(0.0..=1e5);
            RandomScenario {
                shell: ReferenceShell::new(inner, inner + wall).expect("bounded radii"),
                material: MaterialParams::mooney_rivlin(c1, c2).expect("bounded moduli"),
                inner_radius: inner * ratio,
            }
        })
        .collect()
}

/// Uniformly sampled hoop stretches in `[lo, hi]`.
pub fn random_stretch_states(seed: u64, n: usize, lo: f64, hi: f64) -> Vec<StretchState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| StretchState::from_hoop_stretch(rng.random_range(lo..=hi)).expect("positive"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::hoop_minus_radial;

    fn rubber() -> MaterialParams {
        MaterialParams::mooney_rivlin(1.1e4, 2.2e4).unwrap()
    }

    #[test]
    fn config_bounds() {
        assert!(OracleConfig::default().validate().is_ok());
        assert!(OracleConfig {
            panels: 10,
            ..Default::default()
        }
        .validate()
        .is_err());
        assert!(OracleConfig {
            fd_step: 1e-2,
            ..Default::default()
        }
        .validate()
        .is_err());
    }

    #[test]
    fn trapezoid_undeformed_is_zero() {
        let shell = ReferenceShell::new(0.027, 0.03).unwrap();
        let t = trapezoid_pressure(&shell, 0.027, &rubber(), 10_000).unwrap();
        assert!(t.value.abs() < 1e-6);
    }

    #[test]
    fn trapezoid_self_converges() {
        let shell = ReferenceShell::new(0.027, 0.03).unwrap();
        let a = trapezoid_pressure(&shell, 0.03, &rubber(), 1_000_000).unwrap();
        let b = trapezoid_pressure(&shell, 0.03, &rubber(), 2_000_000).unwrap();
        assert!(((a.value - b.value) / b.value).abs() < 1e-9);
        // 40-digit reference.
        assert!(((a.value - 3_053.185_409_072_742_7) / a.value).abs() < 1e-9);
        assert!(a.richardson_error < 1e-9 * a.value);
    }

    #[test]
    fn trapezoid_collapse() {
        let shell = ReferenceShell::new(0.027, 0.03).unwrap();
        assert!(trapezoid_pressure(&shell, 0.0, &rubber(), 1000).is_err());
    }

    #[test]
    fn fd_energy_zero_at_reference() {
        let s = StretchState::from_hoop_stretch(1.0).unwrap();
        assert!(fd_energy_stress(&s, &rubber(), 1e-6).abs() < 1e-4);
    }

    #[test]
    fn fd_energy_matches_analytic_and_is_second_order() {
        let m = rubber();
        let s = StretchState::from_hoop_stretch(10.0 / 9.0).unwrap();
        let exact = hoop_minus_radial(&s, &m);
        let rel = |step: f64| ((fd_energy_stress(&s, &m, step) - exact) / exact).abs();
        assert!(rel(1e-6) < 1e-5);
        let ratio = rel(1e-3) / rel(5e-4);
        assert!((3.5..=4.5).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn random_scenarios_deterministic_and_bounded() {
        let a = random_scenarios(7, 200);
        assert_eq!(a, random_scenarios(7, 200));
        assert_ne!(a, random_scenarios(8, 200));
        let mut expanding = 0;
        for s in &a {
            let ri = s.shell.inner_radius();
            assert!((0.02..=0.035).contains(&ri));
            assert!((0.001 - 1e-15..=0.005 + 1e-15).contains(&s.shell.thickness()));
            assert!((0.85..=1.25).contains(&(s.inner_radius / ri)));
            assert!((5e3..=5e4).contains(&s.material.c1()));
            assert!((0.0..=1e5).contains(&s.material.c2()));
            if s.inner_radius > ri {
                expanding += 1;
            }
        }
        assert!(expanding > 0 && expanding < a.len());
    }
}
