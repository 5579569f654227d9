//! Eight bladders arranged around a head, grouped by correction axis.
//!
//! Side bladders act along the left-right axis, base bladders along the
//! anterior-posterior axis. Each bladder pushes in one direction along its
//! axis, and every axis carries bladders pushing both ways.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bvp::{SolveReport, Solver};
use crate::error::{Error, Result};
use crate::geometry::{MaterialParams, ReferenceShell, Shell};

pub const BLADDER_COUNT: usize = 8;

/// Largest commanded wall displacement, m.
pub const DISPLACEMENT_ENVELOPE: f64 = 0.005;

/// Nominal shell of the default mechanism, m.
pub const NOMINAL_INNER_RADIUS: f64 = 0.0275;
pub const NOMINAL_OUTER_RADIUS: f64 = 0.03;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Group {
    Side,
    Base,
}

impl Group {
    pub fn axis(self) -> Axis {
        match self {
            Group::Side => Axis::LeftRight,
            Group::Base => Axis::AnteriorPosterior,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axis {
    LeftRight,
    AnteriorPosterior,
}

/// Push direction along the placement's axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Positive,
    Negative,
}

impl Direction {
    fn of(displacement: f64) -> Option<Self> {
        if displacement > 0.0 {
            Some(Direction::Positive)
        } else if displacement < 0.0 {
            Some(Direction::Negative)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IabPlacement {
    pub id: String,
    pub group: Group,
    pub axis: Axis,
    pub direction: Direction,
    pub shell: ReferenceShell,
    pub material: MaterialParams,
}

/// Validated set of eight placements, kept sorted by id.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Mechanism {
    placements: Vec<IabPlacement>,
}

impl Mechanism {
    pub fn new(mut placements: Vec<IabPlacement>) -> Result<Self> {
        if placements.len() != BLADDER_COUNT {
            return Err(Error::invalid(
                "placements",
                format!("expected {BLADDER_COUNT}, got {}", placements.len()),
            ));
        }
        placements.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = placements.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::invalid("placements", format!("duplicate id `{}`", w[0].id)));
        }
        for p in &placements {
            if p.group.axis() != p.axis {
                return Err(Error::invalid(
                    "placements",
                    format!("`{}`: {:?} bladders act along {:?}", p.id, p.group, p.group.axis()),
                ));
            }
        }
        for axis in [Axis::LeftRight, Axis::AnteriorPosterior] {
            for dir in [Direction::Positive, Direction::Negative] {
                if !placements.iter().any(|p| p.axis == axis && p.direction == dir) {
                    return Err(Error::invalid(
                        "placements",
                        format!("{axis:?} axis has no {dir:?} bladder"),
                    ));
                }
            }
        }
        Ok(Self { placements })
    }

    pub fn placements(&self) -> &[IabPlacement] {
        &self.placements
    }
}

impl<'de> Deserialize<'de> for Mechanism {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            placements: Vec<IabPlacement>,
        }
        let raw = Raw::deserialize(d)?;
        Mechanism::new(raw.placements).map_err(serde::de::Error::custom)
    }
}

/// Four side and four base bladders on the nominal shell, split evenly
/// between push directions.
pub fn build_default_mechanism(material: MaterialParams) -> Mechanism {
    let shell = ReferenceShell::new(NOMINAL_INNER_RADIUS, NOMINAL_OUTER_RADIUS).expect("nominal shell is valid");
    let layout = [
        ("base-1", Group::Base, Direction::Positive),
        ("base-2", Group::Base, Direction::Positive),
        ("base-3", Group::Base, Direction::Negative),
        ("base-4", Group::Base, Direction::Negative),
        ("side-1", Group::Side, Direction::Positive),
        ("side-2", Group::Side, Direction::Positive),
        ("side-3", Group::Side, Direction::Negative),
        ("side-4", Group::Side, Direction::Negative),
    ];
    let placements = layout
        .into_iter()
        .map(|(id, group, direction)| IabPlacement {
            id: id.to_owned(),
            group,
            axis: group.axis(),
            direction,
            shell,
            material,
        })
        .collect();
    Mechanism::new(placements).expect("default layout is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrectionCommand {
    axis: Axis,
    displacement: f64,
}

impl CorrectionCommand {
    pub fn new(axis: Axis, displacement: f64) -> Result<Self> {
        if !displacement.is_finite() || displacement.abs() > DISPLACEMENT_ENVELOPE {
            return Err(Error::Envelope {
                displacement,
                limit: DISPLACEMENT_ENVELOPE,
            });
        }
        Ok(Self { axis, displacement })
    }

    pub fn axis(&self) -> Axis {
        self.axis
    }

    pub fn displacement(&self) -> f64 {
        self.displacement
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerRadiusTarget {
    pub id: String,
    pub reference_inner_radius: f64,
    pub target_inner_radius: f64,
}

/// Bladders on the commanded axis that push in the commanded direction
/// inflate by `|displacement|`; their antagonists deflate by the same
/// amount. Bladders on the other axis keep their reference radius.
pub fn command_to_displacements(cmd: &CorrectionCommand, mechanism: &Mechanism) -> Vec<InnerRadiusTarget> {
    let magnitude = cmd.displacement.abs();
    let push = Direction::of(cmd.displacement);
    mechanism
        .placements
        .iter()
        .map(|p| {
            let rest = p.shell.inner_radius();
            let target = match push {
                Some(dir) if p.axis == cmd.axis => {
                    if p.direction == dir {
                        rest + magnitude
                    } else {
                        rest - magnitude
                    }
                }
                _ => rest,
            };
            InnerRadiusTarget {
                id: p.id.clone(),
                reference_inner_radius: rest,
                target_inner_radius: target,
            }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BladderSolution {
    pub id: String,
    pub report: SolveReport,
}

/// Inverse solve for every bladder, in id order. Bladders are independent,
/// so the solves run in parallel.
pub fn solve_pressure_set(
    targets: &[InnerRadiusTarget],
    mechanism: &Mechanism,
    solver: &Solver,
) -> Result<Vec<BladderSolution>> {
    targets
        .par_iter()
        .map(|t| {
            let placement = mechanism
                .placements
                .iter()
                .find(|p| p.id == t.id)
                .ok_or_else(|| Error::invalid("targets", format!("unknown bladder `{}`", t.id)))?;
            solver
                .internal_pressure(&placement.shell, t.target_inner_radius, &placement.material)
                .map(|report| BladderSolution {
                    id: t.id.clone(),
                    report,
                })
                .map_err(|e| Error::Actuator {
                    id: t.id.clone(),
                    source: Box::new(e),
                })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rubber() -> MaterialParams {
        MaterialParams::mooney_rivlin(1.1e4, 2.2e4).unwrap()
    }

    #[test]
    fn default_layout() {
        let m = build_default_mechanism(rubber());
        assert_eq!(m.placements().len(), 8);
        assert_eq!(m.placements().iter().filter(|p| p.group == Group::Side).count(), 4);
        assert_eq!(m.placements().iter().filter(|p| p.group == Group::Base).count(), 4);
        for p in m.placements() {
            assert!((p.shell.thickness() - 0.0025).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_malformed_layouts() {
        let good = build_default_mechanism(rubber()).placements().to_vec();

        assert!(Mechanism::new(good[..7].to_vec()).is_err());

        let mut dup = good.clone();
        dup[1].id = dup[0].id.clone();
        assert!(Mechanism::new(dup).is_err());

        let mut wrong_axis = good.clone();
        wrong_axis[0].axis = Axis::LeftRight;
        assert!(Mechanism::new(wrong_axis).is_err());

        let mut one_sided = good;
        for p in one_sided.iter_mut().filter(|p| p.group == Group::Side) {
            p.direction = Direction::Positive;
        }
        assert!(Mechanism::new(one_sided).is_err());
    }

    #[test]
    fn envelope() {
        assert!(CorrectionCommand::new(Axis::LeftRight, 0.005).is_ok());
        assert!(matches!(
            CorrectionCommand::new(Axis::LeftRight, -0.0051),
            Err(Error::Envelope { .. })
        ));
        assert!(CorrectionCommand::new(Axis::LeftRight, f64::NAN).is_err());
    }

    #[test]
    fn zero_command_leaves_everything_at_rest() {
        let m = build_default_mechanism(rubber());
        let cmd = CorrectionCommand::new(Axis::AnteriorPosterior, 0.0).unwrap();
        for t in command_to_displacements(&cmd, &m) {
            assert_eq!(t.target_inner_radius, t.reference_inner_radius);
        }
    }

    #[test]
    fn left_right_allocation() {
        let m = build_default_mechanism(rubber());
        let cmd = CorrectionCommand::new(Axis::LeftRight, 0.002).unwrap();
        let targets = command_to_displacements(&cmd, &m);
        for (p, t) in m.placements().iter().zip(&targets) {
            assert_eq!(p.id, t.id);
            let expected = match (p.group, p.direction) {
                (Group::Base, _) => 0.0275,
                (Group::Side, Direction::Positive) => 0.0275 + 0.002,
                (Group::Side, Direction::Negative) => 0.0275 - 0.002,
            };
            assert_eq!(t.target_inner_radius, expected);
        }
    }

    #[test]
    fn negative_command_swaps_roles() {
        let m = build_default_mechanism(rubber());
        let cmd = CorrectionCommand::new(Axis::AnteriorPosterior, -0.001).unwrap();
        for (p, t) in m.placements().iter().zip(command_to_displacements(&cmd, &m)) {
            match (p.group, p.direction) {
                (Group::Side, _) => assert_eq!(t.target_inner_radius, 0.0275),
                (Group::Base, Direction::Negative) => assert_eq!(t.target_inner_radius, 0.0285),
                (Group::Base, Direction::Positive) => assert_eq!(t.target_inner_radius, 0.0265),
            }
        }
    }

    #[test]
    fn antagonists_get_opposite_unequal_pressures() {
        let m = build_default_mechanism(rubber());
        let cmd = CorrectionCommand::new(Axis::LeftRight, 0.002).unwrap();
        let out = solve_pressure_set(&command_to_displacements(&cmd, &m), &m, &Solver::default()).unwrap();
        let side1 = &out.iter().find(|s| s.id == "side-1").unwrap().report;
        let side3 = &out.iter().find(|s| s.id == "side-3").unwrap().report;
        assert!(side1.pressure > 0.0 && side3.pressure < 0.0);
        assert!((side1.pressure.abs() - side3.pressure.abs()).abs() > 1.0);
    }

    #[test]
    fn errors_are_tagged_with_bladder_id() {
        let m = build_default_mechanism(rubber());
        let mut targets = command_to_displacements(&CorrectionCommand::new(Axis::LeftRight, 0.0).unwrap(), &m);
        targets[5].target_inner_radius = 0.0;
        let err = solve_pressure_set(&targets, &m, &Solver::default()).unwrap_err();
        let Error::Actuator { id, .. } = err else {
            panic!("{err:?}")
        };
        assert_eq!(id, targets[5].id);
    }
}
