use std::fmt::Write as _;
use std::path::Path;

use iab_core::constitutive::normal_stresses;
use iab_core::mechanism::{command_to_displacements, solve_pressure_set, BladderSolution, InnerRadiusTarget};
use iab_core::oracle::OracleConfig;
use iab_core::scenarios::{reproduce, Flag, Reproduction};
use iab_core::{Shell, SolveReport, Solver, SolverConfig};
use serde::Serialize;

use crate::config::{MechanismConfig, ScenarioConfig, Target};
use crate::error::CliError;
use crate::output::{fmt_f64, outer_scalars_csv, profile_csv, to_json, OutputDir, SphereMesh};

#[derive(Serialize)]
struct ReportDocument<'a> {
    command: &'a str,
    config: &'a ScenarioConfig,
    report: &'a SolveReport,
}

pub fn solve(cfg: &ScenarioConfig) -> Result<SolveReport, CliError> {
    let solver = Solver::new(cfg.solver);
    let report = match cfg.target {
        Target::Inverse { inner_radius } => solver.internal_pressure(&cfg.reference, inner_radius, &cfg.material)?,
        Target::Forward { pressure } => solver.forward_solve(&cfg.reference, pressure, &cfg.material)?,
    };
    Ok(report)
}

/// Solve one scenario and write `report.json`, `profile.csv`, optional
/// outer-surface meshes with their scalar sidecar, and `meta.json`.
pub fn run_scenario(command: &str, cfg: &ScenarioConfig, out: &Path) -> Result<SolveReport, CliError> {
    let report = solve(cfg)?;
    let mut dir = OutputDir::create(out)?;
    dir.write(
        "report.json",
        &to_json(&ReportDocument {
            command,
            config: cfg,
            report: &report,
        }),
    )?;
    dir.write("profile.csv", &profile_csv(&report.profile))?;

    if cfg.mesh.enabled {
        let (bands, segments) = (cfg.mesh.latitude_bands, cfg.mesh.longitude_segments);
        let reference = SphereMesh::new(cfg.reference.outer_radius(), bands, segments);
        let deformed = SphereMesh::new(report.deformed.outer_radius(), bands, segments);
        dir.write("reference_outer.obj", &reference.to_obj("reference_outer"))?;
        dir.write("deformed_outer.obj", &deformed.to_obj("deformed_outer"))?;

        let outer = report.profile.last().expect("profile has at least two samples");
        let stress = normal_stresses(
            outer.reference_radius,
            outer.current_radius,
            outer.hydrostatic_p,
            &cfg.material,
        )?;
        dir.write(
            "deformed_outer_scalars.csv",
            &outer_scalars_csv(
                deformed.vertices.len(),
                stress.sigma_rr,
                stress.sigma_thetatheta,
                stress.hydrostatic_p,
            ),
        )?;
    }
    dir.write_metadata(command)?;
    Ok(report)
}

/// Solve and write only the through-wall profile.
pub fn run_profile(cfg: &ScenarioConfig, out: &Path) -> Result<SolveReport, CliError> {
    let report = solve(cfg)?;
    let mut dir = OutputDir::create(out)?;
    dir.write("profile.csv", &profile_csv(&report.profile))?;
    dir.write_metadata("profile")?;
    Ok(report)
}

#[derive(Debug, Serialize)]
pub struct MechanismOutcome {
    pub config: MechanismConfig,
    pub targets: Vec<InnerRadiusTarget>,
    pub solutions: Vec<BladderSolution>,
}

pub fn run_mechanism(cfg: &MechanismConfig, out: &Path) -> Result<MechanismOutcome, CliError> {
    let targets = command_to_displacements(&cfg.command, &cfg.mechanism);
    let solutions = solve_pressure_set(&targets, &cfg.mechanism, &Solver::new(cfg.solver))?;
    let outcome = MechanismOutcome {
        config: cfg.clone(),
        targets,
        solutions,
    };

    let mut csv = String::from("id,group,axis,direction,reference_inner_radius,target_inner_radius,pressure\n");
    for ((p, t), s) in cfg
        .mechanism
        .placements()
        .iter()
        .zip(&outcome.targets)
        .zip(&outcome.solutions)
    {
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{},{}",
            p.id,
            serde_plain(&p.group),
            serde_plain(&p.axis),
            serde_plain(&p.direction),
            fmt_f64(t.reference_inner_radius),
            fmt_f64(t.target_inner_radius),
            fmt_f64(s.report.pressure)
        );
    }
    let mut dir = OutputDir::create(out)?;
    dir.write("mechanism.json", &to_json(&outcome))?;
    dir.write("pressures.csv", &csv)?;
    dir.write_metadata("mechanism")?;
    Ok(outcome)
}

fn serde_plain<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

/// Run the built-in scenarios, write `reproduction.json` and
/// `comparison.csv`, and return the result with a printable summary.
pub fn reproduce_paper(
    solver: SolverConfig,
    cross_check: Option<OracleConfig>,
    out: &Path,
) -> Result<(Reproduction, String), CliError> {
    let rep = reproduce(&Solver::new(solver), cross_check.as_ref())?;
    let mut csv = String::from("scenario,quantity,published,computed,abs_difference\n");
    for r in &rep.rows {
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            r.scenario,
            r.quantity,
            fmt_f64(r.published),
            fmt_f64(r.computed),
            fmt_f64(r.abs_difference)
        );
    }
    let mut dir = OutputDir::create(out)?;
    dir.write("reproduction.json", &to_json(&rep))?;
    dir.write("comparison.csv", &csv)?;
    dir.write_metadata("reproduce-paper")?;
    let summary = summary(&rep);
    Ok((rep, summary))
}

pub fn summary(rep: &Reproduction) -> String {
    let mut s = format!(
        "{:<12} {:<8} {:>14} {:>22} {:>22}\n",
        "scenario", "quantity", "published", "computed", "|difference|"
    );
    for r in &rep.rows {
        let _ = writeln!(
            s,
            "{:<12} {:<8} {:>14} {:>22.15e} {:>22.15e}",
            r.scenario, r.quantity, r.published, r.computed, r.abs_difference
        );
    }
    for c in &rep.oracle_checks {
        let _ = writeln!(
            s,
            "cross-check {:<12} adaptive {:.15e} Pa, trapezoid {:.15e} Pa, relative difference {:.2e}",
            c.scenario, c.adaptive, c.trapezoid, c.relative_difference
        );
    }
    s.push_str("\nflags:\n");
    for f in &rep.flags {
        match f {
            Flag::PressureUnits {
                scenario,
                published,
                computed_pa,
                ratio,
            } => {
                let _ = writeln!(
                    s,
                    "  [pressure-units] {scenario}: published P = {published}, computed P = {computed_pa:.6} Pa \
                     (ratio {ratio:.4e}); the published unit is not established, magnitudes are not compared"
                );
            }
            Flag::CompressionTableInconsistent {
                table_reference_inner,
                table_reference_outer,
                table_inner,
                table_outer,
                conserving_outer,
            } => {
                let _ = writeln!(
                    s,
                    "  [table-inconsistent] compression row R_i = {table_reference_inner}, R_o = {table_reference_outer}, \
                     r_i = {table_inner} lists r_o = {table_outer}, but volume conservation gives r_o = {conserving_outer:.6}; \
                     the stated 2 mm compression (R_i = 0.03 -> r_i = 0.028, R_o = 0.033) is run instead"
                );
            }
        }
    }
    s
}
