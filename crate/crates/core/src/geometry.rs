//! Spherical-polar kinematics of an incompressible thick shell.
//!
//! The deformation is radially symmetric: a material sphere of reference
//! radius `R` maps to radius `r` with the angles unchanged, and the wall
//! volume between the inner surface and any material sphere is conserved.
//! All lengths are meters.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible deformed inner radius. Below this the shell has
/// collapsed onto its center and the stress integrands are singular.
pub const COLLAPSE_MARGIN: f64 = 1e-9;

/// Default mass density of the bladder material, kg/m³.
pub const DEFAULT_DENSITY: f64 = 0.1;

/// Default Poisson ratio recorded alongside the moduli.
pub const DEFAULT_POISSON: f64 = 0.45;

/// Common accessors for the two shell configurations.
pub trait Shell {
    fn inner_radius(&self) -> f64;
    fn outer_radius(&self) -> f64;

    fn thickness(&self) -> f64 {
        self.outer_radius() - self.inner_radius()
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct RawShell {
    inner_radius: f64,
    outer_radius: f64,
}

fn check_radii(inner: f64, outer: f64) -> Result<()> {
    if !(inner.is_finite() && outer.is_finite()) {
        return Err(Error::invalid("radius", "radii must be finite"));
    }
    if inner <= 0.0 {
        return Err(Error::invalid("inner_radius", format!("must be positive, got {inner}")));
    }
    if outer <= inner {
        return Err(Error::invalid(
            "outer_radius",
            format!("must exceed inner radius {inner}, got {outer}"),
        ));
    }
    Ok(())
}

/// Undeformed shell geometry (inner radius `R_i`, outer radius `R_o`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawShell", into = "RawShell")]
pub struct ReferenceShell {
    inner: f64,
    outer: f64,
}

impl ReferenceShell {
    pub fn new(inner_radius: f64, outer_radius: f64) -> Result<Self> {
        check_radii(inner_radius, outer_radius)?;
        Ok(Self {
            inner: inner_radius,
            outer: outer_radius,
        })
    }

    /// Deformed configuration reached when the inner surface moves to `inner_radius`.
    pub fn deform(&self, inner_radius: f64) -> Result<DeformedShell> {
        check_inner_target(inner_radius)?;
        let outer = map_radius(self.outer, self, inner_radius)?;
        DeformedShell::new(inner_radius, outer)
    }
}

impl Shell for ReferenceShell {
    fn inner_radius(&self) -> f64 {
        self.inner
    }

    fn outer_radius(&self) -> f64 {
        self.outer
    }
}

impl TryFrom<RawShell> for ReferenceShell {
    type Error = Error;

    fn try_from(raw: RawShell) -> Result<Self> {
        Self::new(raw.inner_radius, raw.outer_radius)
    }
}

impl From<ReferenceShell> for RawShell {
    fn from(s: ReferenceShell) -> Self {
        RawShell {
            inner_radius: s.inner,
            outer_radius: s.outer,
        }
    }
}

/// Deformed shell geometry (inner radius `r_i`, outer radius `r_o`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawShell", into = "RawShell")]
pub struct DeformedShell {
    inner: f64,
    outer: f64,
}

impl DeformedShell {
    pub fn new(inner_radius: f64, outer_radius: f64) -> Result<Self> {
        check_radii(inner_radius, outer_radius)?;
        Ok(Self {
            inner: inner_radius,
            outer: outer_radius,
        })
    }
}

impl Shell for DeformedShell {
    fn inner_radius(&self) -> f64 {
        self.inner
    }

    fn outer_radius(&self) -> f64 {
        self.outer
    }
}

impl TryFrom<RawShell> for DeformedShell {
    type Error = Error;

    fn try_from(raw: RawShell) -> Result<Self> {
        Self::new(raw.inner_radius, raw.outer_radius)
    }
}

impl From<DeformedShell> for RawShell {
    fn from(s: DeformedShell) -> Self {
        RawShell {
            inner_radius: s.inner,
            outer_radius: s.outer,
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct RawMaterial {
    c1: f64,
    c2: f64,
    #[serde(default = "default_density")]
    density: f64,
    #[serde(default = "default_poisson")]
    poisson: f64,
}

fn default_density() -> f64 {
    DEFAULT_DENSITY
}

fn default_poisson() -> f64 {
    DEFAULT_POISSON
}

/// Mooney-Rivlin moduli plus descriptive density and Poisson ratio.
///
/// Only `c1` and `c2` (pascals) enter the mechanics; density and Poisson
/// ratio are carried as metadata for reports.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMaterial", into = "RawMaterial")]
pub struct MaterialParams {
    c1: f64,
    c2: f64,
    density: f64,
    poisson: f64,
}

impl MaterialParams {
    pub fn new(c1: f64, c2: f64, density: f64, poisson: f64) -> Result<Self> {
        if !(c1.is_finite() && c1 > 0.0) {
            return Err(Error::invalid("c1", format!("must be positive, got {c1}")));
        }
        if !(c2.is_finite() && c2 >= 0.0) {
            return Err(Error::invalid("c2", format!("must be non-negative, got {c2}")));
        }
        if !(density.is_finite() && density > 0.0) {
            return Err(Error::invalid("density", format!("must be positive, got {density}")));
        }
        if !(poisson > 0.0 && poisson < 0.5) {
            return Err(Error::invalid(
                "poisson",
                format!("must lie in (0, 0.5), got {poisson}"),
            ));
        }
        Ok(Self {
            c1,
            c2,
            density,
            poisson,
        })
    }

    /// Moduli with default density and Poisson metadata.
    pub fn mooney_rivlin(c1: f64, c2: f64) -> Result<Self> {
        Self::new(c1, c2, DEFAULT_DENSITY, DEFAULT_POISSON)
    }

    pub fn c1(&self) -> f64 {
        self.c1
    }

    pub fn c2(&self) -> f64 {
        self.c2
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn poisson(&self) -> f64 {
        self.poisson
    }
}

impl TryFrom<RawMaterial> for MaterialParams {
    type Error = Error;

    fn try_from(raw: RawMaterial) -> Result<Self> {
        Self::new(raw.c1, raw.c2, raw.density, raw.poisson)
    }
}

impl From<MaterialParams> for RawMaterial {
    fn from(m: MaterialParams) -> Self {
        RawMaterial {
            c1: m.c1,
            c2: m.c2,
            density: m.density,
            poisson: m.poisson,
        }
    }
}

pub(crate) fn check_inner_target(inner_radius: f64) -> Result<()> {
    if !inner_radius.is_finite() || inner_radius < COLLAPSE_MARGIN {
        return Err(Error::domain(format!(
            "deformed inner radius {inner_radius} m is below the collapse margin {COLLAPSE_MARGIN} m"
        )));
    }
    Ok(())
}

/// `b³ − a³` without forming the two cubes separately.
fn cube_difference(b: f64, a: f64) -> f64 {
    (b - a) * (b * b + b * a + a * a)
}

/// Deformed radius of the material sphere at reference radius `radius`
/// when the inner surface moves from `R_i` to `inner_radius`.
///
/// Implements `r³ = R³ + r_i³ − R_i³`. At `R = R_i` the result is exactly
/// `inner_radius`.
pub fn map_radius(radius: f64, shell: &ReferenceShell, inner_radius: f64) -> Result<f64> {
    if !(radius >= shell.inner && radius <= shell.outer) {
        return Err(Error::domain(format!(
            "reference radius {radius} m outside wall [{}, {}] m",
            shell.inner, shell.outer
        )));
    }
    if !(inner_radius > 0.0) {
        return Err(Error::domain(format!(
            "deformed inner radius must be positive, got {inner_radius}"
        )));
    }
    if radius == shell.inner {
        return Ok(inner_radius);
    }
    if inner_radius == shell.inner {
        return Ok(radius);
    }
    let cube = inner_radius.powi(3) + cube_difference(radius, shell.inner);
    if cube <= 0.0 {
        return Err(Error::domain(format!(
            "material sphere at R = {radius} m collapses (r³ = {cube:e})"
        )));
    }
    Ok(cube.cbrt())
}

/// Reference radius of the material sphere now at deformed radius `radius`.
///
/// Inverse of [`map_radius`]: `R³ = r³ − r_i³ + R_i³`.
pub fn reference_radius(radius: f64, shell: &ReferenceShell, inner_radius: f64) -> Result<f64> {
    if radius == inner_radius {
        return Ok(shell.inner);
    }
    if inner_radius == shell.inner {
        return Ok(radius);
    }
    let cube = shell.inner.powi(3) + cube_difference(radius, inner_radius);
    if !(cube > 0.0) {
        return Err(Error::domain(format!(
            "no reference sphere maps to r = {radius} m (R³ = {cube:e})"
        )));
    }
    Ok(cube.cbrt())
}

/// `(4/3)π(outer³ − inner³)`.
pub fn wall_volume<S: Shell + ?Sized>(shell: &S) -> f64 {
    4.0 / 3.0 * PI * cube_difference(shell.outer_radius(), shell.inner_radius())
}

/// Principal stretches and strain invariants at one material point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StretchState {
    lambda_r: f64,
    lambda_theta: f64,
    lambda_phi: f64,
    i1: f64,
    i2: f64,
}

impl StretchState {
    /// State on the incompressible spherical family with hoop stretch `hoop`:
    /// `λθ = λφ = hoop`, `λr = hoop⁻²`.
    pub fn from_hoop_stretch(hoop: f64) -> Result<Self> {
        if !(hoop.is_finite() && hoop > 0.0) {
            return Err(Error::domain(format!("hoop stretch must be positive, got {hoop}")));
        }
        Ok(Self::from_ratio(hoop))
    }

    fn from_ratio(t: f64) -> Self {
        let t2 = t * t;
        let radial = 1.0 / t2;
        Self {
            lambda_r: radial,
            lambda_theta: t,
            lambda_phi: t,
            i1: radial * radial + 2.0 * t2,
            i2: t2 * t2 + 2.0 * radial,
        }
    }

    pub fn lambda_r(&self) -> f64 {
        self.lambda_r
    }

    pub fn lambda_theta(&self) -> f64 {
        self.lambda_theta
    }

    pub fn lambda_phi(&self) -> f64 {
        self.lambda_phi
    }

    pub fn i1(&self) -> f64 {
        self.i1
    }

    pub fn i2(&self) -> f64 {
        self.i2
    }

    /// `λr · λθ · λφ`; unity for every admissible state.
    pub fn jacobian(&self) -> f64 {
        self.lambda_r * self.lambda_theta * self.lambda_phi
    }

    pub fn deformation_gradient(&self) -> DeformationGradient {
        deformation_gradient(self)
    }
}

/// Stretches at a material point with reference radius `reference` and
/// deformed radius `current`: `λr = R²/r²`, `λθ = λφ = r/R`.
pub fn stretches(reference: f64, current: f64) -> Result<StretchState> {
    if !(reference > 0.0 && current > 0.0) || !reference.is_finite() || !current.is_finite() {
        return Err(Error::domain(format!(
            "radii must be positive, got R = {reference}, r = {current}"
        )));
    }
    Ok(StretchState::from_ratio(current / reference))
}

/// Diagonal deformation gradient in the (r, φ, θ) basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationGradient {
    pub diagonal: [f64; 3],
}

impl DeformationGradient {
    pub fn determinant(&self) -> f64 {
        self.diagonal.iter().product()
    }

    pub fn to_matrix(&self) -> [[f64; 3]; 3] {
        let mut m = [[0.0; 3]; 3];
        for (i, d) in self.diagonal.iter().enumerate() {
            m[i][i] = *d;
        }
        m
    }

    /// `C = FᵀF`; equal to `B = FFᵀ` for a diagonal gradient.
    pub fn right_cauchy_green(&self) -> [f64; 3] {
        self.diagonal.map(|d| d * d)
    }

    pub fn left_cauchy_green(&self) -> [f64; 3] {
        self.right_cauchy_green()
    }
}

pub fn deformation_gradient(state: &StretchState) -> DeformationGradient {
    DeformationGradient {
        diagonal: [state.lambda_r, state.lambda_phi, state.lambda_theta],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn fig6() -> ReferenceShell {
        ReferenceShell::new(0.027, 0.03).unwrap()
    }

    #[test]
    fn rejects_degenerate_shells() {
        assert!(ReferenceShell::new(0.03, 0.03).is_err());
        assert!(ReferenceShell::new(0.0, 0.03).is_err());
        assert!(ReferenceShell::new(0.03, 0.027).is_err());
        assert!(DeformedShell::new(0.02, 0.02).is_err());
        assert!(ReferenceShell::new(f64::NAN, 0.03).is_err());
    }

    #[test]
    fn map_radius_matches_cube_root_oracle() {
        // 40-digit cube roots.
        let ro = map_radius(0.03, &fig6(), 0.03).unwrap();
        assert_relative_eq!(ro, 0.032_496_488_772_542_251, max_relative = 1e-15);
        // Just below 0.0325, so three-decimal rounding gives 0.032.
        assert_eq!((ro * 1000.0).round() / 1000.0, 0.032);

        let mid = map_radius(0.0285, &fig6(), 0.03).unwrap();
        assert_relative_eq!(mid, 0.031_232_427_453_765_314, max_relative = 1e-15);
    }

    #[test]
    fn identity_deformation() {
        let s = fig6();
        assert_eq!(map_radius(0.03, &s, 0.027).unwrap(), 0.03);
        assert_eq!(reference_radius(0.0285, &s, 0.027).unwrap(), 0.0285);
    }

    #[test]
    fn map_radius_rejects_points_outside_wall() {
        let s = fig6();
        assert!(matches!(map_radius(0.0269, &s, 0.03), Err(Error::Domain(_))));
        assert!(matches!(map_radius(0.0301, &s, 0.03), Err(Error::Domain(_))));
        assert!(matches!(map_radius(0.028, &s, 0.0), Err(Error::Domain(_))));
        assert!(s.deform(1e-10).is_err());
    }

    #[test]
    fn wall_volume_of_fig6_shell() {
        assert_relative_eq!(wall_volume(&fig6()), 3.064_937_792_842_202_3e-5, max_relative = 1e-14);
        let d = fig6().deform(0.03).unwrap();
        assert!((wall_volume(&d) - wall_volume(&fig6())).abs() < 1e-20);
    }

    #[test]
    fn stretches_and_invariants() {
        let s = stretches(0.03, 0.03).unwrap();
        assert_eq!((s.lambda_r(), s.lambda_theta(), s.lambda_phi()), (1.0, 1.0, 1.0));
        assert_eq!((s.i1(), s.i2()), (3.0, 3.0));

        let s = stretches(0.027, 0.03).unwrap();
        assert_relative_eq!(s.lambda_r(), 0.81, max_relative = 1e-15);
        assert_relative_eq!(s.lambda_theta(), 10.0 / 9.0, max_relative = 1e-15);
        assert_eq!(s.lambda_theta(), s.lambda_phi());
        assert!((s.jacobian() - 1.0).abs() < 1e-12);
        assert_relative_eq!(s.i1(), 3.125_235_802_469_135_8, max_relative = 1e-14);
        assert_relative_eq!(s.i2(), 3.144_157_902_758_725_8, max_relative = 1e-14);

        assert!(stretches(0.0, 0.03).is_err());
        assert!(stretches(0.03, -1.0).is_err());
    }

    #[test]
    fn deformation_gradient_is_unimodular() {
        let id = deformation_gradient(&stretches(1.0, 1.0).unwrap());
        assert_eq!(id.to_matrix(), [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

        let f = stretches(0.027, 0.03).unwrap().deformation_gradient();
        assert!((f.determinant() - 1.0).abs() < 1e-12);

        let f = StretchState::from_hoop_stretch(0.5).unwrap().deformation_gradient();
        assert_eq!(f.diagonal, [4.0, 0.5, 0.5]);
        assert_eq!(f.determinant(), 1.0);
    }

    #[test]
    fn serde_validates_on_read() {
        let bad = r#"{"inner_radius":0.03,"outer_radius":0.02}"#;
        assert!(serde_json::from_str::<ReferenceShell>(bad).is_err());
        let m: MaterialParams = serde_json::from_str(r#"{"c1":1.0,"c2":0.0}"#).unwrap();
        assert_eq!(m.density(), DEFAULT_DENSITY);
        assert!(serde_json::from_str::<MaterialParams>(r#"{"c1":1.0,"c2":-1.0}"#).is_err());
    }

    proptest! {
        #[test]
        fn incompressible_everywhere(r_ref in 1e-3f64..1.0, ratio in 0.2f64..5.0) {
            let s = stretches(r_ref, r_ref * ratio).unwrap();
            prop_assert!((s.jacobian() - 1.0).abs() < 1e-12);
            prop_assert!((s.deformation_gradient().determinant() - 1.0).abs() < 1e-12);
            prop_assert!(s.i1() * s.i2() >= 9.0 - 1e-12);
            prop_assert!(s.i1() >= 3.0 - 1e-12 && s.i2() >= 3.0 - 1e-12);
        }

        #[test]
        fn invariants_grow_away_from_identity(a in 1.0f64..3.0, b in 1.0f64..3.0) {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(hi - lo > 1e-6);
            for (x, y) in [(lo, hi), (1.0 / lo, 1.0 / hi)] {
                let near = StretchState::from_hoop_stretch(x).unwrap();
                let far = StretchState::from_hoop_stretch(y).unwrap();
                prop_assert!(far.i1() > near.i1());
                prop_assert!(far.i2() > near.i2());
            }
        }

        #[test]
        fn map_radius_monotone_and_volume_preserving(
            inner in 0.01f64..0.05,
            wall in 5e-4f64..0.01,
            ratio in 0.5f64..2.0,
            u in 0.0f64..1.0,
            v in 0.0f64..1.0,
        ) {
            let shell = ReferenceShell::new(inner, inner + wall).unwrap();
            let ri = inner * ratio;
            prop_assert_eq!(map_radius(inner, &shell, ri).unwrap(), ri);
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            prop_assume!(b - a > 1e-9);
            let ra = map_radius(inner + a * wall, &shell, ri).unwrap();
            let rb = map_radius(inner + b * wall, &shell, ri).unwrap();
            prop_assert!(rb > ra);

            let deformed = shell.deform(ri).unwrap();
            let v0 = wall_volume(&shell);
            let v1 = wall_volume(&deformed);
            // Rounding of r_o is amplified by r_o³ / (r_o³ − r_i³).
            let conditioning = deformed.outer_radius().powi(3) / (deformed.outer_radius().powi(3) - ri.powi(3));
            prop_assert!(((v1 - v0) / v0).abs() <= 1e-15 * conditioning.max(1.0));
            prop_assert!((v1 - v0).abs() < 1e-12);
        }
    }
}
