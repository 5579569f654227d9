//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use iab_core::constitutive::hoop_minus_radial;
use iab_core::geometry::{map_radius, stretches, MaterialParams, Shell};
use iab_core::mechanism::{
    build_default_mechanism, command_to_displacements, solve_pressure_set, Axis, CorrectionCommand, Direction,
    DISPLACEMENT_ENVELOPE,
};
use iab_core::oracle::{fd_energy_stress, random_scenarios, random_stretch_states, trapezoid_pressure, RandomScenario};
use iab_core::scenarios::{builtin_scenarios, expansion, reproduce, Flag};
use iab_core::{SolveReport, Solver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_260_415;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

/// Both built-in scenarios plus 200 seeded random ones.
fn scenario_set() -> Vec<RandomScenario> {
    let mut all: Vec<RandomScenario> = builtin_scenarios()
        .into_iter()
        .map(|s| RandomScenario {
            shell: s.reference,
            material: s.material,
            inner_radius: s.inner_radius,
        })
        .collect();
    all.extend(random_scenarios(SEED, 200));
    all
}

fn volume_preservation() -> Outcome {
    let start = Instant::now();
    let solver = Solver::default();
    let mut worst: f64 = 0.0;
    for s in builtin_scenarios() {
        let rep = solver
            .internal_pressure(&s.reference, s.inner_radius, &s.material)
            .map_err(|e| e.to_string())?;
        worst = worst.max(rep.delta_wall_volume.abs());
    }
    let elapsed = start.elapsed();
    check(
        worst < 1e-12 && within(elapsed, 1.0),
        format!("max |ΔV| = {worst:.3e} m³, {:.3} s", elapsed.as_secs_f64()),
    )
}

fn expansion_geometry() -> Outcome {
    let s = expansion();
    let rep = Solver::default()
        .internal_pressure(&s.reference, s.inner_radius, &s.material)
        .map_err(|e| e.to_string())?;
    let r_o = rep.deformed.outer_radius();
    let (big_i, big_o, r_i) = (s.reference.inner_radius(), s.reference.outer_radius(), s.inner_radius);
    let oracle = (big_o.powi(3) + r_i.powi(3) - big_i.powi(3)).cbrt();
    let rel = ((r_o - oracle) / oracle).abs();
    let rounded = format!("{r_o:.3}");
    check(
        rounded == "0.033" && rel < 1e-12,
        format!("r_o = {r_o:.17} rounds to {rounded} (published 0.033); cube-root oracle relative error {rel:.2e}"),
    )
}

fn pressure_signs() -> Outcome {
    let rep = reproduce(&Solver::default(), None).map_err(|e| e.to_string())?;
    let pressure = |name: &str| {
        rep.results
            .iter()
            .find(|r| r.name == name)
            .map(|r| r.report.pressure)
            .unwrap_or(f64::NAN)
    };
    let (up, down) = (pressure("expansion"), pressure("compression"));
    let flagged = rep
        .flags
        .iter()
        .filter(|f| matches!(f, Flag::PressureUnits { .. }))
        .count();
    check(
        up > 0.0 && down < 0.0 && flagged == 2,
        format!("expansion P = {up:.6} Pa, compression P = {down:.6} Pa, unit flags {flagged}"),
    )
}

fn solve_all(set: &[RandomScenario]) -> Result<Vec<SolveReport>, String> {
    let solver = Solver::default();
    set.iter()
        .map(|s| solver.internal_pressure(&s.shell, s.inner_radius, &s.material))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())
}

fn relative(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn dual_form(set: &[RandomScenario]) -> Outcome {
    let start = Instant::now();
    let reports = solve_all(set)?;
    let worst = reports
        .iter()
        .map(|r| relative(r.pressure_current_form, r.pressure_reference_form))
        .fold(0.0, f64::max);
    let elapsed = start.elapsed();
    check(
        worst < 1e-8 && within(elapsed, 30.0),
        format!(
            "{} scenarios, max relative gap {worst:.2e}, {:.2} s",
            set.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn oracle_equivalence(set: &[RandomScenario]) -> Outcome {
    let reports = solve_all(set)?;
    let mut worst: f64 = 0.0;
    for (s, rep) in set.iter().zip(&reports) {
        let t = trapezoid_pressure(&s.shell, s.inner_radius, &s.material, 1_000_000).map_err(|e| e.to_string())?;
        worst = worst.max(relative(rep.pressure, t.value));
    }
    check(
        worst < 1e-6,
        format!(
            "{} scenarios vs 10⁶-panel trapezoid, max relative error {worst:.2e}",
            set.len()
        ),
    )
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let solver = Solver::default();
    let mut worst: f64 = 0.0;
    for s in random_scenarios(SEED ^ 0xF0, 200) {
        let p = solver
            .internal_pressure(&s.shell, s.inner_radius, &s.material)
            .map_err(|e| e.to_string())?
            .pressure;
        let back = solver
            .forward_solve(&s.shell, p, &s.material)
            .map_err(|e| e.to_string())?;
        worst = worst.max((back.deformed.inner_radius() - s.inner_radius).abs());
    }
    let elapsed = start.elapsed();
    check(
        worst < 1e-9 && within(elapsed, 60.0),
        format!(
            "200 scenarios, max |Δr_i| = {worst:.2e} m, {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn energy_consistency() -> Outcome {
    let states = random_stretch_states(SEED, 100, 0.5, 2.0);
    let materials: Vec<MaterialParams> = random_scenarios(SEED ^ 0xE, 100).iter().map(|s| s.material).collect();
    let mut worst: f64 = 0.0;
    let (mut coarse, mut fine) = (0.0, 0.0);
    for (s, m) in states.iter().zip(&materials) {
        let exact = hoop_minus_radial(s, m);
        worst = worst.max(((fd_energy_stress(s, m, 1e-6) - exact) / exact).abs());
        coarse += (fd_energy_stress(s, m, 2e-3) - exact).abs();
        fine += (fd_energy_stress(s, m, 1e-3) - exact).abs();
    }
    let ratio = coarse / fine;
    check(
        worst < 1e-5 && (3.5..=4.5).contains(&ratio),
        format!("100 states, max relative error {worst:.2e}, error ratio on halving step {ratio:.3}"),
    )
}

fn boundary_conditions(set: &[RandomScenario]) -> Outcome {
    let reports = solve_all(set)?;
    let mut worst: f64 = 0.0;
    for rep in &reports {
        let (first, last) = (rep.profile.first().unwrap(), rep.profile.last().unwrap());
        let scale = rep.pressure.abs().max(1.0);
        let inner = (first.sigma_rr + rep.pressure).abs() / scale;
        let outer = last.sigma_rr.abs() / scale;
        worst = worst.max(inner).max(outer);
    }
    check(
        worst < 1e-9,
        format!("{} profiles, max scaled traction error {worst:.2e}", reports.len()),
    )
}

fn equilibrium_residual() -> Outcome {
    let solver = Solver::default();
    let mut details = Vec::new();
    let mut ok = true;
    for s in builtin_scenarios() {
        let coarse = solver
            .equilibrium_residual(&s.reference, s.inner_radius, &s.material, 32)
            .map_err(|e| e.to_string())?;
        let fine = solver
            .equilibrium_residual(&s.reference, s.inner_radius, &s.material, 64)
            .map_err(|e| e.to_string())?;
        let ratio = coarse.max_residual / fine.max_residual;
        ok &= (3.5..=4.5).contains(&ratio);
        details.push(format!("{} 32→64 ratio {ratio:.3}", s.name));
    }
    check(ok, details.join(", "))
}

fn incompressibility() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for s in random_scenarios(SEED ^ 0x1C, 10_000) {
        let big = rng.random_range(s.shell.inner_radius()..=s.shell.outer_radius());
        let r = map_radius(big, &s.shell, s.inner_radius).map_err(|e| e.to_string())?;
        let st = stretches(big, r).map_err(|e| e.to_string())?;
        let product = st.lambda_r() * st.lambda_theta() * st.lambda_phi();
        let det = st.deformation_gradient().determinant();
        worst = worst.max((product - 1.0).abs()).max((det - 1.0).abs());
    }
    check(worst < 1e-12, format!("10⁴ wall points, max |J − 1| = {worst:.2e}"))
}

fn mechanism_batch() -> Outcome {
    let solver = Solver::default();
    let mechanism = build_default_mechanism(expansion().material);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut commands = vec![CorrectionCommand::new(Axis::LeftRight, 0.0).unwrap()];
    for _ in 0..16 {
        let axis = if rng.random_bool(0.5) {
            Axis::LeftRight
        } else {
            Axis::AnteriorPosterior
        };
        let d = rng.random_range(-DISPLACEMENT_ENVELOPE..=DISPLACEMENT_ENVELOPE);
        commands.push(CorrectionCommand::new(axis, d).unwrap());
    }

    let (mut identical, mut zero_ok, mut separated) = (true, true, true);
    for cmd in &commands {
        let targets = command_to_displacements(cmd, &mechanism);
        let batch = solve_pressure_set(&targets, &mechanism, &solver).map_err(|e| e.to_string())?;
        for ((p, t), b) in mechanism.placements().iter().zip(&targets).zip(&batch) {
            let single = solver
                .internal_pressure(&p.shell, t.target_inner_radius, &p.material)
                .map_err(|e| e.to_string())?;
            identical &= b.id == p.id && b.report == single && b.report.pressure.to_bits() == single.pressure.to_bits();

            let pressure = b.report.pressure;
            if cmd.displacement() == 0.0 {
                zero_ok &= pressure == 0.0;
            } else if p.axis != cmd.axis() {
                separated &= pressure == 0.0;
            } else {
                let push = if p.direction == Direction::Positive { 1.0 } else { -1.0 };
                separated &= pressure * push * cmd.displacement() > 0.0;
            }
        }
    }
    check(
        identical && zero_ok && separated,
        format!(
            "{} commands: batch == singles {identical}, zero command → zero pressures {zero_ok}, axis separation {separated}",
            commands.len()
        ),
    )
}

fn main() -> ExitCode {
    let set = scenario_set();
    let criteria: Vec<Criterion> = vec![
        ("volume preservation", Box::new(volume_preservation)),
        ("expansion geometry", Box::new(expansion_geometry)),
        ("pressure signs", Box::new(pressure_signs)),
        ("dual-form agreement", Box::new(|| dual_form(&set))),
        ("oracle equivalence", Box::new(|| oracle_equivalence(&set))),
        ("forward/inverse round trip", Box::new(round_trip)),
        ("constitutive-energy consistency", Box::new(energy_consistency)),
        ("boundary conditions", Box::new(|| boundary_conditions(&set))),
        ("equilibrium residual", Box::new(equilibrium_residual)),
        ("incompressibility invariants", Box::new(incompressibility)),
        ("mechanism batch", Box::new(mechanism_batch)),
    ];

    let mut failed = 0;
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
