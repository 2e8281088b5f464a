//! Wigner-Dunkl deformed Bose statistics.
//!
//! All energies are in units of the trap quantum and measured from the
//! single-particle ground state; temperatures are in the same units.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{eta, gamma, polylog, zeta, Order};

/// The physical problem: trap dimension, Wigner parameter and the
/// semiclassical particle number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GasSpec {
    pub d: f64,
    pub theta: f64,
    pub n_particles: f64,
}

impl GasSpec {
    pub fn new(d: f64, theta: f64, n_particles: f64) -> Result<Self> {
        if !d.is_finite() || d < 1.0 {
            return Err(Error::domain(format!("dimension must satisfy d >= 1, got {d}")));
        }
        check_theta(theta)?;
        if !n_particles.is_finite() || n_particles <= 0.0 {
            return Err(Error::domain(format!("particle number must be > 0, got {n_particles}")));
        }
        Ok(GasSpec { d, theta, n_particles })
    }

    /// Same gas with a different Wigner parameter.
    pub fn with_theta(&self, theta: f64) -> Result<Self> {
        GasSpec::new(self.d, theta, self.n_particles)
    }

    /// 1 + 2 theta, the exponent attached to odd occupation numbers.
    pub fn odd_weight(&self) -> f64 {
        1.0 + 2.0 * self.theta
    }
}

/// Fugacity z = exp(mu / t), restricted to (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Fugacity(f64);

impl Fugacity {
    pub const ONE: Fugacity = Fugacity(1.0);

    pub fn new(z: f64) -> Result<Self> {
        if !(z > 0.0 && z <= 1.0) {
            return Err(Error::domain(format!("fugacity must lie in (0, 1], got {z}")));
        }
        Ok(Fugacity(z))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Reduced temperature t = k_B T / (hbar omega).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct ReducedTemperature(f64);

impl ReducedTemperature {
    pub fn new(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::domain(format!("reduced temperature must be > 0, got {t}")));
        }
        Ok(ReducedTemperature(t))
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() || theta <= -0.5 {
        return Err(Error::domain(format!(
            "Wigner parameter must satisfy theta > -1/2, got {theta}"
        )));
    }
    Ok(())
}

/// Generalized Bose function
/// g_d(z, theta) = Li_d(z) + Li_d(-z) - (1+2 theta)^{1-d} Li_d(-z^{1+2 theta}).
pub fn g_dunkl(d: f64, z: Fugacity, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let order = Order::new(d)?;
    let z = z.get();
    if z == 1.0 && d <= 1.0 {
        return Err(Error::divergence(format!("g_d(1, theta) diverges for d = {d} <= 1")));
    }
    let a = 1.0 + 2.0 * theta;
    let za = (a * z.ln()).exp();
    let plus = polylog(order, z)?.value;
    let minus = polylog(order, -z)?.value;
    let odd = polylog(order, -za)?.value;
    Ok(plus + minus - a.powf(1.0 - d) * odd)
}

/// The same function through the duplication identity
/// Li_d(z) + Li_d(-z) = 2^{1-d} Li_d(z^2); an independent evaluation path.
pub fn g_dunkl_duplication(d: f64, z: Fugacity, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let order = Order::new(d)?;
    let z = z.get();
    if z == 1.0 && d <= 1.0 {
        return Err(Error::divergence(format!("g_d(1, theta) diverges for d = {d} <= 1")));
    }
    let a = 1.0 + 2.0 * theta;
    let za = (a * z.ln()).exp();
    let even = polylog(order, z * z)?.value;
    let odd = polylog(order, -za)?.value;
    Ok(2f64.powf(1.0 - d) * even - a.powf(1.0 - d) * odd)
}

/// g_d(1, theta) = 2^{1-d} zeta(d) + (1+2 theta)^{1-d} eta(d), for d > 1.
pub fn g_dunkl_at_unit_fugacity(d: f64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if !(d > 1.0) {
        return Err(Error::divergence(format!("g_d(1, theta) diverges for d = {d} <= 1")));
    }
    let a = 1.0 + 2.0 * theta;
    Ok(2f64.powf(1.0 - d) * zeta(d)? + a.powf(1.0 - d) * eta(d)?)
}

/// Deformed occupation of a level at energy `eps`.
///
/// 2 / (e^{2 eps/t} z^{-2} - 1) + (1+2 theta) / (e^{(1+2 theta) eps/t} z^{-(1+2 theta)} + 1)
pub fn n_theta(eps: f64, t: ReducedTemperature, z: Fugacity, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if !(eps >= 0.0) {
        return Err(Error::domain(format!("level energy must be >= 0, got {eps}")));
    }
    let log_x = z.get().ln() - eps / t.get();
    if log_x >= 0.0 {
        return Err(Error::divergence(
            "occupation diverges at eps = 0 with z = 1 (macroscopic ground state)",
        ));
    }
    Ok(occupation_from_log(log_x, 1.0 + 2.0 * theta))
}

/// n_theta written in terms of ln x, x = z e^{-eps/t} < 1.
#[inline]
pub(crate) fn occupation_from_log(log_x: f64, a: f64) -> f64 {
    let even = 2.0 * (2.0 * log_x).exp() / -(2.0 * log_x).exp_m1();
    let odd = a / ((-a * log_x).exp() + 1.0);
    even + odd
}

/// Semiclassical density of states eps^{d-1} / Gamma(d).
pub fn density_of_states(d: f64, eps: f64) -> Result<f64> {
    if !(d >= 1.0) {
        return Err(Error::domain(format!("density of states needs d >= 1, got {d}")));
    }
    if !(eps > 0.0) {
        return Err(Error::domain(format!("density of states needs eps > 0, got {eps}")));
    }
    Ok(eps.powf(d - 1.0) / gamma(d)?)
}

/// Single-mode factor of the grand partition function,
/// (1 + e^{-beta (1+2 theta) x}) / (1 - e^{-2 beta x}) with x = eps - mu.
pub fn mode_partition_factor(eps_minus_mu: f64, beta: f64, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    if !(beta > 0.0) {
        return Err(Error::domain(format!("beta must be > 0, got {beta}")));
    }
    if !(eps_minus_mu > 0.0) {
        return Err(Error::divergence(format!(
            "mode partition factor diverges for eps - mu = {eps_minus_mu} <= 0"
        )));
    }
    let bx = beta * eps_minus_mu;
    let a = 1.0 + 2.0 * theta;
    Ok((1.0 + (-a * bx).exp()) / -(-2.0 * bx).exp_m1())
}

/// Deformed number operator eigenvalue: n for even n, n + 2 theta for odd n.
pub fn deformed_number(n: u64, theta: f64) -> f64 {
    if n % 2 == 0 {
        n as f64
    } else {
        n as f64 + 2.0 * theta
    }
}

fn geometric_tail(log_ratio: f64, first_exponent: f64) -> f64 {
    // Sum_{k>=0} exp(log_ratio * (first_exponent + k)).
    (log_ratio * first_exponent).exp() / -log_ratio.exp_m1()
}

/// Brute-force single-mode partition function summed over occupation
/// numbers 0..=n_max with the deformed number operator.
pub fn mode_partition_oracle(eps_minus_mu: f64, beta: f64, theta: f64, n_max: u64) -> Result<f64> {
    check_theta(theta)?;
    if !(eps_minus_mu > 0.0 && beta > 0.0) {
        return Err(Error::domain("mode oracle needs eps - mu > 0 and beta > 0"));
    }
    let bx = beta * eps_minus_mu;
    let mut sum = 0.0;
    for n in (0..=n_max).rev() {
        sum += (-bx * deformed_number(n, theta)).exp();
    }
    let shift = (2.0 * theta).min(0.0);
    let tail = geometric_tail(-bx, n_max as f64 + 1.0 + shift);
    if tail > 1e-14 * sum {
        return Err(Error::numerical(format!(
            "mode sum truncated at n_max = {n_max} leaves a tail of {tail:e}"
        )));
    }
    Ok(sum)
}

/// Brute-force mean deformed occupation <N~> with Boltzmann weights
/// z^{N~} e^{-(eps/t) N~}, summed over n = 0..=n_max.
pub fn mean_occupation_oracle(
    eps: f64,
    t: ReducedTemperature,
    z: Fugacity,
    theta: f64,
    n_max: u64,
) -> Result<f64> {
    check_theta(theta)?;
    if !(eps >= 0.0) {
        return Err(Error::domain(format!("level energy must be >= 0, got {eps}")));
    }
    let log_x = z.get().ln() - eps / t.get();
    if log_x >= 0.0 {
        return Err(Error::divergence("mean occupation diverges for z e^{-eps/t} >= 1"));
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for n in (0..=n_max).rev() {
        let m = deformed_number(n, theta);
        let w = (log_x * m).exp();
        num += m * w;
        den += w;
    }
    // Tails of both sums, bounded with geometric majorants.
    let shift_lo = (2.0 * theta).min(0.0);
    let shift_hi = (2.0 * theta).max(0.0);
    let first = n_max as f64 + 1.0;
    let den_tail = geometric_tail(log_x, first + shift_lo);
    let q = log_x.exp();
    let num_tail = den_tail * (first + shift_hi + q / (1.0 - q));
    let mean = num / den;
    let bound = (num_tail + mean * den_tail) / den;
    if bound > 1e-11 * mean.max(1e-300) {
        return Err(Error::numerical(format!(
            "occupation sum truncated at n_max = {n_max}: error bound {bound:e}"
        )));
    }
    Ok(mean)
}

/// Leading small-z behaviour z^2 / 2^{d-1} + z^{1+2 theta} / (1+2 theta)^{d-1}.
pub fn g_dunkl_small_z(d: f64, z: Fugacity, theta: f64) -> Result<f64> {
    check_theta(theta)?;
    let z = z.get();
    if z >= 0.1 {
        return Err(Error::domain(format!("small-z expansion requires z < 0.1, got {z}")));
    }
    let a = 1.0 + 2.0 * theta;
    Ok(z * z / 2f64.powf(d - 1.0) + z.powf(a) / a.powf(d - 1.0))
}
