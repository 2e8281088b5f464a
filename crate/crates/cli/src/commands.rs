use dunkl_bose::exact_spectrum::{semiclassical_comparison, TAIL_TOLERANCE};
use dunkl_bose::specfun::MAX_ERROR;
use dunkl_bose::thermo::{
    classical_coefficients, critical_temperature, heat_capacity_below, heat_capacity_jump_d3, homogeneous_map,
    measure_classical_coefficient, normalized_jump_d3, reference_temperature, sweep, validate_theta, CoefficientSource,
    HomogeneousGas, FUGACITY_RESIDUAL_TOL, N_CONSERVATION_TOL,
};
use dunkl_bose::{GasSpec, ReducedTemperature};
use serde_json::{json, Value};

use crate::args::{Command, GasArgs, GridArgs};
use crate::error::{CliError, CliResult};
use crate::table::{Cell, SweepTable, Table, SWEEP_COLUMNS};

pub const TOOL: &str = "dunkl-bose";
pub const VERSION: &str = env!("DUNKL_BOSE_GIT_DESCRIBE");

fn metadata(command: &str, spec: Option<&GasSpec>, extra: Value) -> Value {
    let mut m = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command,
        "tolerances": {
            "special_function_error": MAX_ERROR,
            "fugacity_residual_rel": FUGACITY_RESIDUAL_TOL,
            "particle_conservation_rel": N_CONSERVATION_TOL,
            "spectrum_tail_rel": TAIL_TOLERANCE,
        },
    });
    if let Some(s) = spec {
        m["spec"] = json!({ "d": s.d, "theta": s.theta, "n_particles": s.n_particles });
    }
    if let Value::Object(extra) = extra {
        for (k, v) in extra {
            m[k] = v;
        }
    }
    m
}

fn homogeneous_meta(h: &HomogeneousGas) -> Value {
    json!({
        "homogeneous": {
            "physical_dimension": h.physical_dimension,
            "hypervolume": h.hypervolume,
            "units": h.unit_annotation(),
        }
    })
}

/// Builds the spec the thermo layer sees, applying the homogeneous map if asked.
fn resolve_gas(d: f64, theta: f64, n: f64, homogeneous: bool, hypervolume: f64) -> CliResult<(GasSpec, Value)> {
    let spec = GasSpec::new(d, theta, n)?;
    if homogeneous {
        let h = homogeneous_map(&spec, hypervolume)?;
        Ok((h.spec, homogeneous_meta(&h)))
    } else {
        Ok((spec, json!({})))
    }
}

fn gas(args: &GasArgs) -> CliResult<(GasSpec, Value)> {
    resolve_gas(args.d, args.theta, args.particles, args.homogeneous, args.hypervolume)
}

fn steps(n: i64) -> CliResult<usize> {
    if n < 2 {
        return Err(CliError::Usage(format!("--steps must be >= 2, got {n}")));
    }
    Ok(n as usize)
}

/// `steps` equally spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 })
        .collect()
}

fn checked_range(lo: f64, hi: f64, what: &str) -> CliResult<()> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(CliError::Usage(format!("{what} range needs min < max, got [{lo}, {hi}]")));
    }
    Ok(())
}

pub fn run(command: &Command) -> CliResult<Table> {
    match command {
        Command::Tc { gas: g, .. } => cmd_tc(g),
        Command::Sweep { gas: g, grid, .. } => cmd_sweep(g, grid),
        Command::Fig1 { theta_min, theta_max, steps: n, .. } => cmd_fig1(*theta_min, *theta_max, steps(*n)?),
        Command::Fig2 { d, theta, particles, grid, .. } => cmd_fig2(*d, theta, *particles, grid),
        Command::Classical { d, theta, particles, t_over_tc, homogeneous, hypervolume, .. } => {
            cmd_classical(*d, theta, *particles, *t_over_tc, *homogeneous, *hypervolume)
        }
        Command::ValidateTheta { theta, .. } => Ok(cmd_validate_theta(*theta)),
        Command::ExactCheck { gas: g, t_values, .. } => cmd_exact_check(g, t_values),
        Command::Jump { theta, .. } => cmd_jump(theta),
    }
}

pub fn cmd_tc(args: &GasArgs) -> CliResult<Table> {
    let (spec, extra) = gas(args)?;
    let tc = critical_temperature(&spec)?;
    let tc0 = critical_temperature(&spec.with_theta(0.0)?)?;
    let mut table = Table::new(
        metadata("tc", Some(&spec), extra),
        vec!["d", "theta", "n_particles", "regime", "t_c", "ratio_to_undeformed", "saturation_limit"],
    );
    let regime = if tc.is_some() { "transition" } else { "no_transition" };
    let ratio = tc.zip(tc0).map(|(a, b)| a / b);
    let limit = tc.map(|_| 2f64.powf(1.0 - 1.0 / spec.d));
    table.push(vec![spec.d.into(), spec.theta.into(), spec.n_particles.into(), regime.into(), tc.into(), ratio.into(), limit.into()]);
    Ok(table)
}

pub fn cmd_sweep(args: &GasArgs, grid: &GridArgs) -> CliResult<Table> {
    let (spec, extra) = gas(args)?;
    let scale = reference_temperature(&spec)?;
    let lo = grid.t_min.unwrap_or(0.05 * scale);
    let hi = grid.t_max.unwrap_or(2.5 * scale);
    let n = steps(grid.steps.unwrap_or(200))?;
    if !(lo > 0.0) {
        return Err(CliError::Usage(format!("--t-min must be > 0, got {lo}")));
    }
    checked_range(lo, hi, "temperature")?;
    let temps = linear_grid(lo, hi, n);
    let points = sweep(&spec, &temps)?;
    let tc = critical_temperature(&spec)?;
    let mut table = Table::new(metadata("sweep", Some(&spec), extra), SWEEP_COLUMNS.to_vec());
    for p in &points {
        p.validate(spec.n_particles)?;
        table.push(SweepTable::row_cells(p, tc, spec.n_particles));
    }
    Ok(table)
}

pub fn cmd_fig1(theta_min: f64, theta_max: f64, steps: usize) -> CliResult<Table> {
    if !(theta_min > -0.5) {
        return Err(CliError::Usage(format!("--theta-min must be > -1/2, got {theta_min}")));
    }
    checked_range(theta_min, theta_max, "theta")?;
    let mut table = Table::new(
        metadata("fig1", None, json!({ "dimension": 3, "theta_range": [theta_min, theta_max], "steps": steps })),
        vec!["kind", "theta", "delta_c_over_NkB", "normalized"],
    );
    for theta in linear_grid(theta_min, theta_max, steps) {
        table.push(vec!["grid".into(), theta.into(), heat_capacity_jump_d3(theta)?.into(), normalized_jump_d3(theta)?.into()]);
    }
    let j0 = heat_capacity_jump_d3(0.0)?;
    let theta_star = 1.0 + 3f64.sqrt();
    table.push(vec!["reference".into(), 0.0.into(), j0.into(), 1.0.into()]);
    table.push(vec![
        "reference".into(),
        theta_star.into(),
        heat_capacity_jump_d3(theta_star)?.into(),
        (2.0 * 3f64.sqrt() - 3.0).into(),
    ]);
    table.push(vec!["reference".into(), f64::INFINITY.into(), (0.5 * j0).into(), 0.5.into()]);
    Ok(table)
}

pub fn cmd_fig2(d: f64, thetas: &[f64], n: f64, grid: &GridArgs) -> CliResult<Table> {
    let lo = grid.t_min.unwrap_or(0.05);
    let hi = grid.t_max.unwrap_or(2.5);
    let steps = steps(grid.steps.unwrap_or(400))?;
    if !(lo > 0.0) {
        return Err(CliError::Usage(format!("--t-min must be > 0, got {lo}")));
    }
    checked_range(lo, hi, "t/t_c")?;
    let spec0 = GasSpec::new(d, 0.0, n)?;
    let tc0 = critical_temperature(&spec0)?.ok_or(dunkl_bose::Error::NoTransition { d })?;
    let peak0 = heat_capacity_below(&spec0, ReducedTemperature::new(tc0)?)?;

    let mut ratios = linear_grid(lo, hi, steps);
    if lo < 1.0 && hi > 1.0 && !ratios.contains(&1.0) {
        let at = ratios.partition_point(|&x| x < 1.0);
        ratios.insert(at, 1.0);
    }
    let mut table = Table::new(
        metadata(
            "fig2",
            Some(&spec0),
            json!({ "thetas": thetas, "normalization": "heat capacity at t_c for theta = 0", "peak_theta0": peak0 }),
        ),
        vec!["t_over_tc", "theta", "c_over_NkB", "c_normalized"],
    );
    for &theta in thetas {
        let spec = spec0.with_theta(theta)?;
        let tc = critical_temperature(&spec)?.ok_or(dunkl_bose::Error::NoTransition { d })?;
        let temps: Vec<f64> = ratios.iter().map(|x| x * tc).collect();
        for p in sweep(&spec, &temps)? {
            table.push(vec![(p.t / tc).into(), theta.into(), p.c_over_nkb.into(), (p.c_over_nkb / peak0).into()]);
        }
    }
    Ok(table)
}

pub fn cmd_classical(
    d: f64,
    thetas: &[f64],
    n: f64,
    t_over_tc: f64,
    homogeneous: bool,
    hypervolume: f64,
) -> CliResult<Table> {
    let mut extra = json!({ "t_over_tc": t_over_tc });
    let mut spec_meta = None;
    let mut rows = Vec::new();
    for &theta in thetas {
        let (spec, h) = resolve_gas(d, theta, n, homogeneous, hypervolume)?;
        if let Value::Object(h) = h {
            for (k, v) in h {
                extra[k] = v;
            }
        }
        spec_meta.get_or_insert(spec);
        let measured = measure_classical_coefficient(&spec, t_over_tc)?;
        let expected = classical_coefficients(&spec)?;
        let source = match expected.source {
            CoefficientSource::Analytic => "analytic",
            CoefficientSource::Measured => "measured",
        };
        rows.push(vec![
            theta.into(),
            validate_theta(theta).classification.as_str().into(),
            measured.into(),
            expected.u_coeff.into(),
            source.into(),
            expected.literature_value.into(),
            ((measured - expected.u_coeff) / expected.u_coeff).into(),
        ]);
    }
    let mut table = Table::new(
        metadata("classical", spec_meta.as_ref(), extra),
        vec!["theta", "classification", "u_over_NkT_measured", "u_over_NkT_expected", "expected_source", "literature_value", "rel_deviation"],
    );
    for r in rows {
        table.push(r);
    }
    Ok(table)
}

pub fn cmd_validate_theta(theta: f64) -> Table {
    let v = validate_theta(theta);
    let mut table = Table::new(
        metadata("validate-theta", None, json!({})),
        vec!["theta", "valid_lower", "valid_upper", "classification", "explanation"],
    );
    table.push(vec![
        theta.into(),
        Cell::Bool(v.valid_lower),
        Cell::Bool(v.valid_upper),
        v.classification.as_str().into(),
        Cell::Text(v.explanation),
    ]);
    table
}

pub fn cmd_exact_check(args: &GasArgs, t_values: &[f64]) -> CliResult<Table> {
    let (spec, extra) = gas(args)?;
    if t_values.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(CliError::Usage("--t values must be strictly increasing".into()));
    }
    let rows = semiclassical_comparison(&spec, t_values)?;
    let mut table = Table::new(
        metadata("exact-check", Some(&spec), extra),
        vec!["t", "z", "regime", "n_exact", "n_semiclassical", "n_rel_deviation", "u_exact", "u_semiclassical", "u_rel_deviation", "n_max"],
    );
    for r in rows {
        table.push(vec![
            r.t.into(),
            r.z.into(),
            r.regime.as_str().into(),
            r.n_exact.into(),
            r.n_semiclassical.into(),
            r.n_rel_deviation.into(),
            r.u_exact.into(),
            r.u_semiclassical.into(),
            r.u_rel_deviation.into(),
            Cell::Int(r.n_max),
        ]);
    }
    Ok(table)
}

pub fn cmd_jump(thetas: &[f64]) -> CliResult<Table> {
    let mut table = Table::new(
        metadata("jump", None, json!({ "dimension": 3 })),
        vec!["theta", "delta_c_over_NkB", "normalized"],
    );
    for &theta in thetas {
        table.push(vec![theta.into(), heat_capacity_jump_d3(theta)?.into(), normalized_jump_d3(theta)?.into()]);
    }
    Ok(table)
}
