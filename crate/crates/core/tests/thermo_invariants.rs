use dunkl_bose::thermo::{
    above_tc_limit, critical_temperature, cv_ratio_above_diagnostic, heat_capacity_above, heat_capacity_below,
    heat_capacity_jump_d3, internal_energy, solve_fugacity, sweep, thermo_point, Regime,
};
use dunkl_bose::{Fugacity, GasSpec, ReducedTemperature};

fn temp(t: f64) -> ReducedTemperature {
    ReducedTemperature::new(t).unwrap()
}

fn tc(spec: &GasSpec) -> f64 {
    critical_temperature(spec).unwrap().unwrap()
}

fn energy(spec: &GasSpec, t: f64) -> f64 {
    let t = temp(t);
    let z = match critical_temperature(spec).unwrap() {
        Some(t_c) if t.get() <= t_c => Fugacity::ONE,
        _ => solve_fugacity(spec, t).unwrap(),
    };
    internal_energy(spec, t, z).unwrap()
}

#[test]
fn jump_matches_branch_difference() {
    for &theta in &[-0.4, -0.2, 0.0, 0.5, 1.0, 2.732, 10.0] {
        let spec = GasSpec::new(3.0, theta, 1e6).unwrap();
        let t_c = tc(&spec);
        let diff = heat_capacity_below(&spec, temp(t_c)).unwrap() - heat_capacity_above(&spec, temp(t_c)).unwrap();
        let closed = heat_capacity_jump_d3(theta).unwrap();
        assert!((diff - closed).abs() < 1e-8, "theta={theta}: {diff} vs {closed}");
    }
}

#[test]
fn critical_temperature_grows_with_theta_and_saturates() {
    for &d in &[2.0, 3.0, 4.0] {
        let base = tc(&GasSpec::new(d, 0.0, 1e6).unwrap());
        let bound = 2f64.powf(1.0 - 1.0 / d) * base;
        let mut last = 0.0;
        for &theta in &[-0.49, -0.4, -0.2, 0.0, 0.3, 1.0, 5.0, 100.0, 1e4] {
            let t = tc(&GasSpec::new(d, theta, 1e6).unwrap());
            assert!(t > last && t < bound, "d={d} theta={theta}");
            last = t;
        }
        let near = tc(&GasSpec::new(d, -0.4999, 1e6).unwrap());
        let nearer = tc(&GasSpec::new(d, -0.499_999, 1e6).unwrap());
        assert!(nearer < near && near < 0.2 * base);
    }
}

#[test]
fn fugacity_falls_with_temperature() {
    for &theta in &[-0.3, 0.0, 0.7] {
        let spec = GasSpec::new(3.0, theta, 1e5).unwrap();
        let t_c = tc(&spec);
        let mut last = 1.0;
        for k in 1..=40 {
            let t = t_c * (1.0 + 0.1 * k as f64);
            let z = solve_fugacity(&spec, temp(t)).unwrap().get();
            assert!(z < last, "theta={theta} t={t}");
            last = z;
        }
    }
}

#[test]
fn two_dimensional_peak_is_continuous_and_ordered() {
    let mut peaks = Vec::new();
    for &theta in &[0.2, 0.0, -0.2] {
        let spec = GasSpec::new(2.0, theta, 1e6).unwrap();
        let below = heat_capacity_below(&spec, temp(tc(&spec))).unwrap();
        let above = above_tc_limit(&spec).unwrap().value;
        assert!((below - above).abs() < 1e-4);
        peaks.push(below);
    }
    assert!(peaks[0] < peaks[1] && peaks[1] < peaks[2], "{peaks:?}");
    assert!((peaks[1] - 4.384_577_816_408_631).abs() < 1e-10);
}

#[test]
fn finite_difference_energy_matches_heat_capacity() {
    for &(d, theta) in &[(3.0, 0.0), (3.0, 0.4), (2.0, -0.2), (4.0, 1.0), (1.0, 0.3)] {
        let spec = GasSpec::new(d, theta, 1e5).unwrap();
        let t_ref = critical_temperature(&spec).unwrap().unwrap_or(1e5f64.powf(1.0 / d));
        for &x in &[0.3, 0.8, 0.98, 1.02, 1.5, 4.0] {
            if critical_temperature(&spec).unwrap().is_none() && x < 1.0 {
                continue;
            }
            let t = x * t_ref;
            let h = 1e-4 * t;
            let du = (energy(&spec, t + h) - energy(&spec, t - h)) / (2.0 * h);
            let c = thermo_point(&spec, temp(t)).unwrap().c_over_nkb * 1e5;
            assert!((du / c - 1.0).abs() < 1e-4, "d={d} theta={theta} x={x}: {du} vs {c}");
        }
    }
}

#[test]
fn sweep_stitches_branches() {
    let spec = GasSpec::new(3.0, 0.0, 1e6).unwrap();
    let t_c = tc(&spec);
    let grid: Vec<f64> = (1..=200).map(|k| k as f64 * 2.0 * t_c / 200.0).collect();
    let rows = sweep(&spec, &grid).unwrap();
    for r in &rows {
        r.validate(1e6).unwrap();
    }
    let at_tc = rows.iter().position(|r| r.t >= t_c * (1.0 - 1e-12)).unwrap();
    assert_eq!(rows[at_tc].regime, Regime::Condensed);
    assert_eq!(rows[at_tc + 1].regime, Regime::Normal);
    let drop = rows[at_tc].c_over_nkb - rows[at_tc + 1].c_over_nkb;
    let jump = heat_capacity_jump_d3(0.0).unwrap();
    // C_> keeps falling just above t_c, so the grid drop brackets the jump from above
    assert!(drop > jump && drop < jump + 0.5, "{drop}");
}

#[test]
fn ratio_diagnostic_reports_numeric_and_formula_values() {
    let spec = GasSpec::new(3.0, 1.0, 1e6).unwrap();
    let r = cv_ratio_above_diagnostic(&spec, temp(1.05 * tc(&spec))).unwrap();
    assert!(r.numeric_ratio.is_finite() && r.closed_form_value.is_finite());
    let spec = GasSpec::new(3.0, 0.2, 1e6).unwrap();
    let ratios: Vec<f64> = [1.1, 1.5, 2.0]
        .iter()
        .map(|&x| cv_ratio_above_diagnostic(&spec, temp(x * tc(&spec))).unwrap().numeric_ratio)
        .collect();
    assert!(ratios.iter().all(|r| r.is_finite() && *r > 0.0));
}
