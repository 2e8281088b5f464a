//! Macroscopic observables of the trapped gas in the semiclassical
//! (density of states) approximation.

mod classical;
mod heat_capacity;
mod homogeneous;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dunkl::{g_dunkl, g_dunkl_at_unit_fugacity, Fugacity, GasSpec, ReducedTemperature};
use crate::error::{Error, Result};
use crate::roots::brent;

pub use classical::{
    classical_coefficients, measure_classical_coefficient, reference_temperature, validate_theta,
    ClassicalCoefficients, CoefficientSource, ThetaClass, ThetaValidation,
};
pub use heat_capacity::{
    above_tc_limit, cv_ratio_above_diagnostic, heat_capacity_above, heat_capacity_at_fugacity,
    heat_capacity_below, heat_capacity_jump_d3, normalized_jump_d3, AboveTcLimit, CvRatioDiagnostic,
    RICHARDSON_OFFSETS,
};
pub use homogeneous::{homogeneous_map, HomogeneousGas};

/// Phase classification of a state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Condensed,
    Normal,
    NoTransition,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Condensed => "condensed",
            Regime::Normal => "normal",
            Regime::NoTransition => "no_transition",
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "condensed" => Ok(Regime::Condensed),
            "normal" => Ok(Regime::Normal),
            "no_transition" => Ok(Regime::NoTransition),
            other => Err(Error::domain(format!("unknown regime tag {other:?}"))),
        }
    }
}

/// Complete equilibrium state at one reduced temperature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoPoint {
    pub t: f64,
    pub z: f64,
    pub n_excited: f64,
    pub n0: f64,
    pub u: f64,
    pub c_over_nkb: f64,
    pub regime: Regime,
}

/// Relative tolerance on particle-number conservation.
pub const N_CONSERVATION_TOL: f64 = 1e-6;

impl ThermoPoint {
    /// Checks particle conservation, sign constraints and the
    /// regime/fugacity consistency.
    pub fn validate(&self, n_particles: f64) -> Result<()> {
        let fail = |msg: String| Err(Error::numerical(format!("invalid state at t = {}: {msg}", self.t)));
        if !(self.t > 0.0) {
            return fail("t must be positive".into());
        }
        if !(self.z > 0.0 && self.z <= 1.0) {
            return fail(format!("fugacity {} outside (0, 1]", self.z));
        }
        if self.n_excited < 0.0 || self.n0 < 0.0 || self.u < 0.0 {
            return fail("negative count or energy".into());
        }
        let total = self.n_excited + self.n0;
        if (total - n_particles).abs() > N_CONSERVATION_TOL * n_particles {
            return fail(format!("n_excited + n0 = {total} differs from N = {n_particles}"));
        }
        match self.regime {
            Regime::Condensed if self.z != 1.0 => fail(format!("condensed with z = {}", self.z)),
            Regime::Normal | Regime::NoTransition if self.z >= 1.0 => fail("normal phase with z = 1".into()),
            _ => Ok(()),
        }
    }
}

/// t_c = (N / g_d(1, theta))^{1/d}; `None` when there is no transition (d <= 1).
pub fn critical_temperature(spec: &GasSpec) -> Result<Option<f64>> {
    if spec.d <= 1.0 {
        return Ok(None);
    }
    let g1 = g_dunkl_at_unit_fugacity(spec.d, spec.theta)?;
    Ok(Some((spec.n_particles / g1).powf(1.0 / spec.d)))
}

/// Relative residual |t^d g_d(z) - N| / N accepted from the fugacity solver.
pub const FUGACITY_RESIDUAL_TOL: f64 = 1e-10;

/// Smallest fugacity the solver will bracket.
const LOG_Z_FLOOR: f64 = -690.0;

/// Inverts N = t^d g_d(z, theta) for z on the normal branch.
///
/// Works on ln z with Brent's method; the starting bracket comes from the
/// small-z form of g_d, inverted term by term.
pub fn solve_fugacity(spec: &GasSpec, t: ReducedTemperature) -> Result<Fugacity> {
    let (d, theta) = (spec.d, spec.theta);
    let tv = t.get();
    let target = spec.n_particles / tv.powf(d);
    let ln_target = target.ln();

    if d > 1.0 {
        let g1 = g_dunkl_at_unit_fugacity(d, theta)?;
        if target > g1 * (1.0 + 1e-13) {
            let t_c = (spec.n_particles / g1).powf(1.0 / d);
            return Err(Error::Phase { t: tv, t_c });
        }
        if target >= g1 {
            return Ok(Fugacity::ONE);
        }
    }

    let f = |log_z: f64| -> Result<f64> {
        let z = Fugacity::new(log_z.exp())?;
        Ok(g_dunkl(d, z, theta)?.ln() - ln_target)
    };

    let a = 1.0 + 2.0 * theta;
    let guess_even = 0.5 * (ln_target + (d - 1.0) * std::f64::consts::LN_2);
    let guess_odd = (ln_target + (d - 1.0) * a.ln()) / a;
    let guess = guess_even.min(guess_odd).max(LOG_Z_FLOOR);

    let mut hi = if guess + 1.0 < 0.0 { guess + 1.0 } else { -0.125 };
    let mut lo = (guess - 1.0).min(hi - 1.0).max(LOG_Z_FLOOR);
    while f(lo)? > 0.0 {
        if lo <= LOG_Z_FLOOR {
            return Err(Error::numerical(format!(
                "fugacity below e^{LOG_Z_FLOOR} required at t = {tv}"
            )));
        }
        lo = (2.0 * lo - 1.0).max(LOG_Z_FLOOR);
    }

    while f(hi)? < 0.0 {
        if d > 1.0 {
            hi = 0.0;
            break;
        }
        hi /= 16.0;
        if hi > -1e-14 {
            return Err(Error::numerical(format!(
                "fugacity at t = {tv} is indistinguishable from 1 in double precision"
            )));
        }
    }

    let log_z = brent(f, lo, hi, 1e-300, 200)?;
    let z = Fugacity::new(log_z.exp())?;
    let g = g_dunkl(d, z, theta)?;
    let residual = (g - target).abs();
    // near z = 1 one ulp of z can move g by more than the relative tolerance
    let z_below = Fugacity::new(f64::from_bits(z.get().to_bits() - 1))?;
    let ulp_floor = (g - g_dunkl(d, z_below, theta)?).abs();
    if residual > FUGACITY_RESIDUAL_TOL * target + 2.0 * ulp_floor {
        return Err(Error::numerical(format!(
            "fugacity residual {residual:e} exceeds {FUGACITY_RESIDUAL_TOL:e} relative at t = {tv}"
        )));
    }
    Ok(z)
}

/// Excited-state population t^d g_d(z, theta).
pub fn excited_count(spec: &GasSpec, t: ReducedTemperature, z: Fugacity) -> Result<f64> {
    Ok(t.get().powf(spec.d) * g_dunkl(spec.d, z, spec.theta)?)
}

/// Internal energy d t^{d+1} g_{d+1}(z, theta), in units of hbar omega.
pub fn internal_energy(spec: &GasSpec, t: ReducedTemperature, z: Fugacity) -> Result<f64> {
    let d = spec.d;
    Ok(d * t.get().powf(d + 1.0) * g_dunkl(d + 1.0, z, spec.theta)?)
}

/// Condensate fraction 1 - (t/t_c)^d, with the regime the temperature falls in.
pub fn condensate_fraction(spec: &GasSpec, t: ReducedTemperature) -> Result<(f64, Regime)> {
    match critical_temperature(spec)? {
        None => Ok((0.0, Regime::NoTransition)),
        Some(t_c) if t.get() <= t_c => {
            let frac = 1.0 - (t.get() / t_c).powf(spec.d);
            Ok((frac.clamp(0.0, 1.0), Regime::Condensed))
        }
        Some(_) => Ok((0.0, Regime::Normal)),
    }
}

/// Full state at temperature `t`; t = t_c is put on the condensed branch.
pub fn thermo_point(spec: &GasSpec, t: ReducedTemperature) -> Result<ThermoPoint> {
    let n = spec.n_particles;
    match critical_temperature(spec)? {
        Some(t_c) if t.get() <= t_c => {
            let z = Fugacity::ONE;
            let n_excited = excited_count(spec, t, z)?;
            Ok(ThermoPoint {
                t: t.get(),
                z: 1.0,
                n_excited,
                n0: (n - n_excited).max(0.0),
                u: internal_energy(spec, t, z)?,
                c_over_nkb: heat_capacity_below(spec, t)?,
                regime: Regime::Condensed,
            })
        }
        t_c => {
            let z = solve_fugacity(spec, t)?;
            let regime = if t_c.is_some() { Regime::Normal } else { Regime::NoTransition };
            let c_over_nkb = if z == Fugacity::ONE {
                heat_capacity_above(spec, t)?
            } else {
                heat_capacity_at_fugacity(spec, z)?
            };
            Ok(ThermoPoint {
                t: t.get(),
                z: z.get(),
                n_excited: excited_count(spec, t, z)?,
                n0: 0.0,
                u: internal_energy(spec, t, z)?,
                c_over_nkb,
                regime,
            })
        }
    }
}

/// Evaluates `thermo_point` over a strictly increasing temperature grid.
/// Rows are computed in parallel and returned in grid order.
pub fn sweep(spec: &GasSpec, temperatures: &[f64]) -> Result<Vec<ThermoPoint>> {
    if temperatures.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::domain("sweep temperatures must be strictly increasing"));
    }
    temperatures
        .par_iter()
        .map(|&t| {
            thermo_point(spec, ReducedTemperature::new(t)?).map_err(|e| match e {
                Error::Numerical(msg) => Error::Numerical(format!("row t = {t}: {msg}")),
                other => other,
            })
        })
        .collect()
}
