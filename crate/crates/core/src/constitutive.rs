//! Mooney-Rivlin stored energy and Cauchy stress for the incompressible
//! bladder wall.
//!
//! The canonical energy is the scaled form
//! `W = ½C1(I1 − 3) + ½C2(I2 − 3)`, whose stress response is
//! `σ = C1 B − C2 C⁻¹ − pI`. The hydrostatic pressure `p` is not a material
//! quantity; it is supplied by the boundary-value solve.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geometry::{stretches, MaterialParams, StretchState};

/// Normal Cauchy stress components at one material point. Shear components
/// vanish identically under spherical symmetry and are not stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StressState {
    pub sigma_rr: f64,
    pub sigma_thetatheta: f64,
    pub sigma_phiphi: f64,
    pub hydrostatic_p: f64,
    /// Reference radius `R` of the point.
    pub at_reference: f64,
    /// Deformed radius `r` of the point.
    pub at_current: f64,
}

impl StressState {
    /// `σθθ − σrr`, independent of the hydrostatic pressure.
    pub fn hoop_minus_radial(&self) -> f64 {
        self.sigma_thetatheta - self.sigma_rr
    }
}

/// Stored energy density in both the scaled and the unscaled Mooney form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StrainEnergy {
    /// `W = ½W′`, J/m³.
    pub scaled: f64,
    /// `W′ = C1(I1 − 3) + C2(I2 − 3)`, J/m³.
    pub unscaled: f64,
}

pub fn strain_energy(state: &StretchState, material: &MaterialParams) -> StrainEnergy {
    let unscaled = material.c1() * (state.i1() - 3.0) + material.c2() * (state.i2() - 3.0);
    StrainEnergy {
        scaled: 0.5 * unscaled,
        unscaled,
    }
}

/// Normal stresses at the point `R → r` under hydrostatic pressure `p`:
///
/// `σrr = −p + C1 R⁴/r⁴ − C2 r⁴/R⁴`,
/// `σθθ = σφφ = −p + C1 r²/R² − C2 R²/r²`.
pub fn normal_stresses(reference: f64, current: f64, pressure: f64, material: &MaterialParams) -> Result<StressState> {
    let s = stretches(reference, current)?;
    let [radial, _, hoop] = constitutive_stress(&s, material);
    let hoop = hoop - pressure;
    Ok(StressState {
        sigma_rr: radial - pressure,
        sigma_thetatheta: hoop,
        sigma_phiphi: hoop,
        hydrostatic_p: pressure,
        at_reference: reference,
        at_current: current,
    })
}

/// Pressure-free part of the Cauchy stress, `C1 B − C2 C⁻¹`, as a diagonal
/// in the (r, φ, θ) order used by [`crate::geometry::DeformationGradient`].
pub fn constitutive_stress(state: &StretchState, material: &MaterialParams) -> [f64; 3] {
    let part = |l: f64| {
        let l2 = l * l;
        material.c1() * l2 - material.c2() / l2
    };
    [
        part(state.lambda_r()),
        part(state.lambda_phi()),
        part(state.lambda_theta()),
    ]
}

/// `σθθ − σrr = C1(λθ² − λr²) − C2(λθ⁻² − λr⁻²)`.
pub fn hoop_minus_radial(state: &StretchState, material: &MaterialParams) -> f64 {
    let [radial, _, hoop] = constitutive_stress(state, material);
    hoop - radial
}
