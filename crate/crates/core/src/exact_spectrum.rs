//! Direct sums over the discrete isotropic-oscillator spectrum, used to
//! check the continuum (density of states) approximation.

use rayon::prelude::*;
use serde::Serialize;

use crate::dunkl::{check_theta, g_dunkl, occupation_from_log, Fugacity, GasSpec, ReducedTemperature};
use crate::error::{Error, Result};
use crate::thermo::{critical_temperature, solve_fugacity, Regime};

/// Relative size of the certified tail accepted on return.
pub const TAIL_TOLERANCE: f64 = 1e-8;

const BLOCK: u64 = 4096;
const MAX_LEVELS: u64 = 1 << 28;

/// C(n + d - 1, d - 1), exact while it fits in 128 bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Degeneracy {
    Exact(u128),
    Float(f64),
}

impl Degeneracy {
    pub fn as_f64(self) -> f64 {
        match self {
            Degeneracy::Exact(v) => v as f64,
            Degeneracy::Float(v) => v,
        }
    }
}

pub fn level_degeneracy(d: u32, n: u64) -> Result<Degeneracy> {
    if d == 0 {
        return Err(Error::domain("level degeneracy needs d >= 1"));
    }
    let mut c: u128 = 1;
    for k in 1..d as u128 {
        match c.checked_mul(n as u128 + k) {
            Some(p) => c = p / k,
            None => return Ok(Degeneracy::Float(level_degeneracy_f64(d, n))),
        }
    }
    Ok(Degeneracy::Exact(c))
}

/// Floating-point degeneracy, prod_{k<d} (n + k) / k.
pub fn level_degeneracy_f64(d: u32, n: u64) -> f64 {
    (1..d).fold(1.0, |c, k| c * (n as f64 + k as f64) / k as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectrumTruncation {
    pub n_max: u64,
    pub tail_bound: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExactSum {
    pub value: f64,
    pub truncation: SpectrumTruncation,
}

#[derive(Clone, Copy)]
struct LevelSum {
    d: u32,
    a: f64,
    log_z: f64,
    inv_t: f64,
    /// 0 for particle number, 1 for energy.
    power: i32,
}

impl LevelSum {
    fn new(d: u32, theta: f64, t: ReducedTemperature, z: Fugacity, power: i32) -> Result<Self> {
        check_theta(theta)?;
        if d == 0 {
            return Err(Error::domain("exact spectrum needs d >= 1"));
        }
        Ok(LevelSum { d, a: 1.0 + 2.0 * theta, log_z: z.get().ln(), inv_t: 1.0 / t.get(), power })
    }

    fn term(&self, n: u64) -> f64 {
        let occ = occupation_from_log(self.log_z - n as f64 * self.inv_t, self.a);
        level_degeneracy_f64(self.d, n) * (n as f64).powi(self.power) * occ
    }

    fn partial_sum(&self, n_max: u64) -> f64 {
        let blocks = n_max.div_ceil(BLOCK);
        let sums: Vec<f64> = (0..blocks)
            .into_par_iter()
            .map(|b| {
                let lo = 1 + b * BLOCK;
                let hi = (lo + BLOCK - 1).min(n_max);
                let terms: Vec<f64> = (lo..=hi).map(|n| self.term(n)).collect();
                pairwise(&terms)
            })
            .collect();
        pairwise(&sums)
    }

    /// Rigorous bound on sum_{n > n_max} of the terms.
    ///
    /// Each term is majorized by (n + d)^k / (d - 1)! times
    /// 2 x^2 / (1 - x_1^2) + a x^a with x = z e^{-n/t}, where k = d - 1 + power;
    /// each piece is a polynomial times a geometric sequence, bounded by
    /// its first dropped term over one minus the largest term ratio.
    fn tail_bound(&self, n_max: u64) -> f64 {
        let d = self.d as f64;
        let k = d - 1.0 + self.power as f64;
        let fact: f64 = (1..self.d).map(|j| j as f64).product();
        let m = (n_max + 1) as f64;
        let poly = |n: f64| (n + d).powf(k) / fact;
        let growth = ((m + 1.0 + d) / (m + d)).powf(k);
        let geometric = |log_first: f64, log_q: f64| -> f64 {
            let ratio = growth * log_q.exp();
            if ratio >= 1.0 {
                return f64::INFINITY;
            }
            poly(m) * log_first.exp() / (1.0 - ratio)
        };
        let log_x1 = self.log_z - m * self.inv_t;
        let even_den = -(2.0 * (self.log_z - self.inv_t)).exp_m1();
        let even = 2.0 / even_den * geometric(2.0 * log_x1, -2.0 * self.inv_t);
        let odd = self.a * geometric(self.a * log_x1, -self.a * self.inv_t);
        even + odd
    }

    fn suggest(&self, sum: f64, from: u64) -> u64 {
        let mut n = from.max(16);
        while n < MAX_LEVELS && !(self.tail_bound(n) < 0.1 * TAIL_TOLERANCE * sum) {
            n *= 2;
        }
        n
    }

    fn evaluate(&self, n_max: u64) -> Result<ExactSum> {
        if n_max == 0 {
            return Err(Error::domain("n_max must be >= 1"));
        }
        let value = self.partial_sum(n_max);
        let tail_bound = self.tail_bound(n_max);
        if !(tail_bound < TAIL_TOLERANCE * value) {
            return Err(Error::Truncation {
                n_max,
                tail_bound,
                suggested_n_max: self.suggest(value, n_max),
            });
        }
        Ok(ExactSum { value, truncation: SpectrumTruncation { n_max, tail_bound } })
    }

    fn evaluate_auto(&self) -> Result<ExactSum> {
        // ~36 e-folds of the slowest geometric factor
        let slow = self.inv_t * self.a.min(2.0);
        let mut n_max = ((36.0 / slow).ceil() as u64).clamp(16, MAX_LEVELS);
        for _ in 0..8 {
            match self.evaluate(n_max) {
                Err(Error::Truncation { suggested_n_max, .. }) if suggested_n_max > n_max && n_max < MAX_LEVELS => {
                    n_max = suggested_n_max.min(MAX_LEVELS);
                }
                other => return other,
            }
        }
        self.evaluate(n_max)
    }
}

fn pairwise(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        2 => xs[0] + xs[1],
        n => pairwise(&xs[..n / 2]) + pairwise(&xs[n / 2..]),
    }
}

/// sum_{n>=1} g(d, n) n_theta(n, t, z, theta), truncated at `n_max`
/// with a certified tail.
pub fn exact_excited_count(d: u32, theta: f64, t: ReducedTemperature, z: Fugacity, n_max: u64) -> Result<ExactSum> {
    LevelSum::new(d, theta, t, z, 0)?.evaluate(n_max)
}

/// sum_{n>=1} g(d, n) n n_theta(n, t, z, theta).
pub fn exact_internal_energy(d: u32, theta: f64, t: ReducedTemperature, z: Fugacity, n_max: u64) -> Result<ExactSum> {
    LevelSum::new(d, theta, t, z, 1)?.evaluate(n_max)
}

/// As `exact_excited_count`, choosing the truncation automatically.
pub fn exact_excited_count_auto(d: u32, theta: f64, t: ReducedTemperature, z: Fugacity) -> Result<ExactSum> {
    LevelSum::new(d, theta, t, z, 0)?.evaluate_auto()
}

/// As `exact_internal_energy`, choosing the truncation automatically.
pub fn exact_internal_energy_auto(d: u32, theta: f64, t: ReducedTemperature, z: Fugacity) -> Result<ExactSum> {
    LevelSum::new(d, theta, t, z, 1)?.evaluate_auto()
}

/// One temperature of the exact-versus-continuum comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub t: f64,
    pub z: f64,
    pub regime: Regime,
    pub n_exact: f64,
    pub n_semiclassical: f64,
    pub u_exact: f64,
    pub u_semiclassical: f64,
    pub n_rel_deviation: f64,
    pub u_rel_deviation: f64,
    pub n_max: u64,
}

/// Integer dimension of a spec, required by the level sums.
pub fn integer_dimension(spec: &GasSpec) -> Result<u32> {
    if spec.d.fract() != 0.0 || spec.d > u32::MAX as f64 {
        return Err(Error::domain(format!(
            "exact spectrum needs an integer dimension, got d = {}",
            spec.d
        )));
    }
    Ok(spec.d as u32)
}

/// Excited-state count and energy from the level sums next to their
/// continuum values, at the fugacity fixed by the gas spec at each t.
pub fn semiclassical_comparison(spec: &GasSpec, t_grid: &[f64]) -> Result<Vec<ComparisonRow>> {
    let d = integer_dimension(spec)?;
    let t_c = critical_temperature(spec)?;
    t_grid
        .par_iter()
        .map(|&tv| {
            let t = ReducedTemperature::new(tv)?;
            let (z, regime) = match t_c {
                Some(tc) if tv <= tc => (Fugacity::ONE, Regime::Condensed),
                Some(_) => (solve_fugacity(spec, t)?, Regime::Normal),
                None => (solve_fugacity(spec, t)?, Regime::NoTransition),
            };
            let n_exact = exact_excited_count_auto(d, spec.theta, t, z)?;
            let u_exact = exact_internal_energy_auto(d, spec.theta, t, z)?;
            let n_semi = tv.powf(spec.d) * g_dunkl(spec.d, z, spec.theta)?;
            let u_semi = spec.d * tv.powf(spec.d + 1.0) * g_dunkl(spec.d + 1.0, z, spec.theta)?;
            Ok(ComparisonRow {
                t: tv,
                z: z.get(),
                regime,
                n_exact: n_exact.value,
                n_semiclassical: n_semi,
                u_exact: u_exact.value,
                u_semiclassical: u_semi,
                n_rel_deviation: (n_exact.value - n_semi).abs() / n_semi,
                u_rel_deviation: (u_exact.value - u_semi).abs() / u_semi,
                n_max: n_exact.truncation.n_max.max(u_exact.truncation.n_max),
            })
        })
        .collect()
}
