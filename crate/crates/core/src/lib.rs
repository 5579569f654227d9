//! Finite-deformation model of an incompressible Mooney-Rivlin spherical
//! air bladder.
//!
//! Given a target inner radius, [`bvp::Solver::internal_pressure`] returns
//! the gauge pressure and through-wall stress state that produce it; given
//! a pressure, [`bvp::Solver::forward_solve`] finds the deformed geometry.
//! [`mechanism`] arranges eight bladders around a head and maps axis
//! corrections onto per-bladder solves.

#![allow(
    clippy::excessive_precision,
    clippy::inconsistent_digit_grouping,
    clippy::neg_cmp_op_on_partial_ord
)]

pub mod bvp;
pub mod constitutive;
pub mod error;
pub mod geometry;
pub mod mechanism;
pub mod oracle;
pub mod quadrature;
pub mod roots;
pub mod scenarios;

pub use bvp::{
    BoundaryConditions, EquilibriumResidual, ProfileSample, SolveReport, Solver, SolverConfig, SolverWarning,
};
pub use constitutive::{StrainEnergy, StressState};
pub use error::{Error, Result};
pub use geometry::{
    map_radius, stretches, wall_volume, DeformationGradient, DeformedShell, MaterialParams, ReferenceShell, Shell,
    StretchState,
};
pub use mechanism::{Axis, CorrectionCommand, Direction, Group, IabPlacement, Mechanism};
pub use quadrature::Tolerance;
