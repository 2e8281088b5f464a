use serde::Serialize;

use super::{critical_temperature, solve_fugacity};
use crate::dunkl::{check_theta, g_dunkl, g_dunkl_at_unit_fugacity, Fugacity, GasSpec, ReducedTemperature};
use crate::error::{Error, Result};
use crate::specfun::zeta;

/// Offsets 1 - z of the nodes used to extrapolate C_> to z = 1 when
/// g_{d-1}(1, theta) diverges.
pub const RICHARDSON_OFFSETS: [f64; 3] = [1e-8, 1e-10, 1e-12];

fn require_transition(spec: &GasSpec) -> Result<f64> {
    critical_temperature(spec)?.ok_or(Error::NoTransition { d: spec.d })
}

/// C_< / (N k_B) = d (d+1) [g_{d+1}(1, theta) / g_d(1, theta)] (t / t_c)^d.
pub fn heat_capacity_below(spec: &GasSpec, t: ReducedTemperature) -> Result<f64> {
    let t_c = require_transition(spec)?;
    if t.get() > t_c * (1.0 + 1e-12) {
        return Err(Error::domain(format!(
            "condensed-branch heat capacity requested at t = {} above t_c = {t_c}",
            t.get()
        )));
    }
    let d = spec.d;
    let ratio = g_dunkl_at_unit_fugacity(d + 1.0, spec.theta)? / g_dunkl_at_unit_fugacity(d, spec.theta)?;
    Ok(d * (d + 1.0) * ratio * (t.get() / t_c).min(1.0).powf(d))
}

/// C_> / (N k_B) = d (d+1) g_{d+1}/g_d - d^2 g_d/g_{d-1}, evaluated at a
/// given fugacity z < 1 (or at z = 1 when g_{d-1}(1, theta) is finite).
pub fn heat_capacity_at_fugacity(spec: &GasSpec, z: Fugacity) -> Result<f64> {
    let (d, theta) = (spec.d, spec.theta);
    let g_up = g_dunkl(d + 1.0, z, theta)?;
    let g_mid = g_dunkl(d, z, theta)?;
    let g_low = g_dunkl(d - 1.0, z, theta)?;
    Ok(d * (d + 1.0) * g_up / g_mid - d * d * g_mid / g_low)
}

/// Limit of C_> as z -> 1 from below, for 1 < d <= 2 where g_{d-1}
/// diverges and the second term vanishes like 1 / g_{d-1}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AboveTcLimit {
    /// Quadratic Richardson extrapolant in h = 1 / g_{d-1}(z, theta).
    pub value: f64,
    /// Linear extrapolant from the two innermost nodes.
    pub linear: f64,
    /// (h, C_>) at the nodes in RICHARDSON_OFFSETS order.
    pub samples: [(f64, f64); 3],
}

impl AboveTcLimit {
    pub fn error_estimate(&self) -> f64 {
        (self.value - self.linear).abs()
    }
}

pub fn above_tc_limit(spec: &GasSpec) -> Result<AboveTcLimit> {
    let d = spec.d;
    let mut samples = [(0.0, 0.0); 3];
    for (slot, off) in samples.iter_mut().zip(RICHARDSON_OFFSETS) {
        let z = Fugacity::new(1.0 - off)?;
        let h = 1.0 / g_dunkl(d - 1.0, z, spec.theta)?;
        *slot = (h, heat_capacity_at_fugacity(spec, z)?);
    }
    let lagrange_at_zero = |pts: &[(f64, f64)]| -> f64 {
        pts.iter()
            .enumerate()
            .map(|(i, &(hi, ci))| {
                let w: f64 = pts
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &(hj, _))| hj / (hj - hi))
                    .product();
                w * ci
            })
            .sum()
    };
    Ok(AboveTcLimit {
        value: lagrange_at_zero(&samples),
        linear: lagrange_at_zero(&samples[1..]),
        samples,
    })
}

/// Heat capacity on the normal branch, t >= t_c (any t when d <= 1).
pub fn heat_capacity_above(spec: &GasSpec, t: ReducedTemperature) -> Result<f64> {
    let z = solve_fugacity(spec, t)?;
    if z != Fugacity::ONE {
        return heat_capacity_at_fugacity(spec, z);
    }
    if spec.d - 1.0 > 1.0 {
        heat_capacity_at_fugacity(spec, z)
    } else {
        Ok(above_tc_limit(spec)?.value)
    }
}

/// Normalized d = 3 jump (1 + theta + theta^2) / ((1 + theta)(1 + 2 theta)).
pub fn normalized_jump_d3(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok((1.0 + theta + theta * theta) / ((1.0 + theta) * (1.0 + 2.0 * theta)))
}

/// d = 3 discontinuity 9 (zeta(3) / zeta(2)) (1 + theta + theta^2) / ((1 + theta)(1 + 2 theta)).
pub fn heat_capacity_jump_d3(theta: f64) -> Result<f64> {
    Ok(9.0 * zeta(3.0)? / zeta(2.0)? * normalized_jump_d3(theta)?)
}

/// Numeric C_>(theta, t) / C_>(0, t) next to the closed-form ratio built
/// from unit-fugacity values and (t_c(theta) / t_c(0))^{1/d}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CvRatioDiagnostic {
    pub t: f64,
    pub numeric_ratio: f64,
    pub closed_form_value: f64,
}

fn unit_fugacity_above_terms(d: f64, theta: f64) -> Result<f64> {
    let first = d * (d + 1.0) * g_dunkl_at_unit_fugacity(d + 1.0, theta)? / g_dunkl_at_unit_fugacity(d, theta)?;
    let second = if d - 1.0 > 1.0 {
        d * d * g_dunkl_at_unit_fugacity(d, theta)? / g_dunkl_at_unit_fugacity(d - 1.0, theta)?
    } else {
        0.0
    };
    Ok(first - second)
}

pub fn cv_ratio_above_diagnostic(spec: &GasSpec, t: ReducedTemperature) -> Result<CvRatioDiagnostic> {
    let spec0 = spec.with_theta(0.0)?;
    let tc = require_transition(spec)?;
    let tc0 = require_transition(&spec0)?;
    let bound = tc.max(tc0);
    if t.get() <= bound {
        return Err(Error::Phase { t: t.get(), t_c: bound });
    }
    let numeric = heat_capacity_above(spec, t)? / heat_capacity_above(&spec0, t)?;
    let d = spec.d;
    let formula = unit_fugacity_above_terms(d, spec.theta)? / unit_fugacity_above_terms(d, 0.0)? * (tc / tc0).powf(1.0 / d);
    Ok(CvRatioDiagnostic { t: t.get(), numeric_ratio: numeric, closed_form_value: formula })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::critical_temperature;

    const ZETA2: f64 = 1.644_934_066_848_226_4;
    const ZETA3: f64 = 1.202_056_903_159_594_3;
    const ZETA4: f64 = 1.082_323_233_711_138_2;

    fn temp(t: f64) -> ReducedTemperature {
        ReducedTemperature::new(t).unwrap()
    }

    fn tc(spec: &GasSpec) -> f64 {
        critical_temperature(spec).unwrap().unwrap()
    }

    #[test]
    fn standard_values_at_tc_in_three_dimensions() {
        let spec = GasSpec::new(3.0, 0.0, 1e6).unwrap();
        let t_c = tc(&spec);
        let below = heat_capacity_below(&spec, temp(t_c)).unwrap();
        assert!((below - 12.0 * ZETA4 / ZETA3).abs() < 1e-10);
        assert!((below - 10.804_712_131_676_256).abs() < 1e-9);
        let above = heat_capacity_above(&spec, temp(t_c)).unwrap();
        assert!((above - (12.0 * ZETA4 / ZETA3 - 9.0 * ZETA3 / ZETA2)).abs() < 1e-9);
        assert!((above - 4.227_845_407_063_309).abs() < 1e-9);
    }

    #[test]
    fn jump_closed_form_values() {
        assert!((heat_capacity_jump_d3(0.0).unwrap() - 6.576_866_724_612_946).abs() < 1e-12);
        assert!((heat_capacity_jump_d3(0.0).unwrap() - 54.0 * ZETA3 / std::f64::consts::PI.powi(2)).abs() < 1e-12);
        assert!((normalized_jump_d3(1e3).unwrap() - 0.5).abs() < 1e-3);
        assert!(matches!(heat_capacity_jump_d3(-0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn minimum_of_normalized_jump() {
        let theta_star = 1.0 + 3f64.sqrt();
        let f_min = normalized_jump_d3(theta_star).unwrap();
        assert!((f_min - (2.0 * 3f64.sqrt() - 3.0)).abs() < 1e-14);
        for &dt in &[-1e-3, 1e-3, -0.1, 0.1] {
            assert!(normalized_jump_d3(theta_star + dt).unwrap() > f_min);
        }
    }

    #[test]
    fn below_power_law_and_ratio() {
        for &d in &[2.0, 3.0, 4.0] {
            let spec0 = GasSpec::new(d, 0.0, 1e5).unwrap();
            for &theta in &[-0.3, 0.2, 1.0] {
                let spec = spec0.with_theta(theta).unwrap();
                let t_c = tc(&spec);
                let c_tc = heat_capacity_below(&spec, temp(t_c)).unwrap();
                for &x in &[0.1, 0.5, 0.9] {
                    let c = heat_capacity_below(&spec, temp(x * t_c)).unwrap();
                    assert!((c / c_tc - x.powf(d)).abs() < 1e-13);
                    let t = x * t_c.min(tc(&spec0));
                    let ratio = c_at(&spec, t) / c_at(&spec0, t);
                    let a = 1.0 + 2.0 * theta;
                    let expected = (1.0 + (2f64.powf(d) - 1.0) / a.powf(d)) / 2f64.powf(d);
                    assert!((ratio - expected).abs() < 1e-9, "d={d} theta={theta}");
                }
            }
        }
    }

    fn c_at(spec: &GasSpec, t: f64) -> f64 {
        heat_capacity_below(spec, temp(t)).unwrap()
    }

    #[test]
    fn two_dimensional_limit_is_continuous() {
        for &theta in &[-0.2, 0.0, 0.2] {
            let spec = GasSpec::new(2.0, theta, 1e6).unwrap();
            let t_c = tc(&spec);
            let below = heat_capacity_below(&spec, temp(t_c)).unwrap();
            let lim = above_tc_limit(&spec).unwrap();
            assert!((below - lim.value).abs() < 1e-4, "theta={theta}: {below} vs {}", lim.value);
            assert!(lim.error_estimate() < 1e-5);
            // raw values at the nodes are still visibly below the limit
            assert!(lim.samples[2].1 < below - 1e-2);
        }
    }

    #[test]
    fn below_rejects_normal_temperatures_and_one_dimension() {
        let spec = GasSpec::new(3.0, 0.0, 1e6).unwrap();
        assert!(matches!(heat_capacity_below(&spec, temp(200.0)), Err(Error::Domain(_))));
        let one = GasSpec::new(1.0, 0.0, 1e3).unwrap();
        assert!(matches!(heat_capacity_below(&one, temp(1.0)), Err(Error::NoTransition { .. })));
    }

    #[test]
    fn classical_limit_of_heat_capacity() {
        let spec = GasSpec::new(3.0, 0.0, 1e6).unwrap();
        let c = heat_capacity_above(&spec, temp(1e3 * tc(&spec))).unwrap();
        assert!((c - 3.0).abs() < 1e-3);
    }

    #[test]
    fn ratio_diagnostic_is_one_without_deformation() {
        let spec = GasSpec::new(3.0, 0.0, 1e6).unwrap();
        let r = cv_ratio_above_diagnostic(&spec, temp(1.5 * tc(&spec))).unwrap();
        assert!((r.numeric_ratio - 1.0).abs() < 1e-14);
        assert!((r.closed_form_value - 1.0).abs() < 1e-14);
        let s = spec.with_theta(1.0).unwrap();
        assert!(matches!(cv_ratio_above_diagnostic(&s, temp(tc(&spec))), Err(Error::Phase { .. })));
    }
}
