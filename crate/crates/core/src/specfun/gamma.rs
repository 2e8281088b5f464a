use std::f64::consts::PI;

use crate::error::{Error, Result};

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos(x: f64) -> f64 {
    // Valid for x >= 0.5.
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Euler gamma function for positive real arguments.
pub fn gamma(s: f64) -> Result<f64> {
    if !s.is_finite() || s <= 0.0 {
        return Err(Error::domain(format!("gamma requires s > 0, got {s}")));
    }
    if s.fract() == 0.0 && s <= 21.0 {
        let mut f = 1.0;
        for k in 2..(s as u32) {
            f *= k as f64;
        }
        return Ok(f);
    }
    if s > 171.6 {
        return Err(Error::numerical(format!("gamma({s}) overflows f64")));
    }
    if s < 0.5 {
        // Reflection keeps the Lanczos sum in its accurate range.
        Ok(PI / ((PI * s).sin() * lanczos(1.0 - s)))
    } else {
        Ok(lanczos(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_arguments_are_factorials() {
        assert_eq!(gamma(1.0).unwrap(), 1.0);
        assert_eq!(gamma(4.0).unwrap(), 6.0);
        assert_eq!(gamma(11.0).unwrap(), 3_628_800.0);
    }

    #[test]
    fn half_integers() {
        let sqrt_pi = PI.sqrt();
        let g = gamma(1.5).unwrap();
        assert!((g - 0.886_226_925_452_758).abs() < 1e-12 * g);
        assert!((gamma(0.5).unwrap() - sqrt_pi).abs() < 1e-12 * sqrt_pi);
        // Duplication formula: Gamma(s) Gamma(s + 1/2) = 2^{1-2s} sqrt(pi) Gamma(2s)
        for &s in &[0.3, 0.75, 1.25, 2.6, 7.1] {
            let lhs = gamma(s).unwrap() * gamma(s + 0.5).unwrap();
            let rhs = 2f64.powf(1.0 - 2.0 * s) * sqrt_pi * gamma(2.0 * s).unwrap();
            assert!((lhs - rhs).abs() < 1e-12 * rhs, "s = {s}");
        }
    }

    #[test]
    fn recurrence() {
        for &s in &[0.1, 0.49, 0.5, 1.7, 3.3, 12.9] {
            let lhs = gamma(s + 1.0).unwrap();
            let rhs = s * gamma(s).unwrap();
            assert!((lhs - rhs).abs() < 1e-13 * lhs, "s = {s}");
        }
    }

    #[test]
    fn rejects_non_positive() {
        assert!(matches!(gamma(0.0), Err(Error::Domain(_))));
        assert!(matches!(gamma(-1.5), Err(Error::Domain(_))));
        assert!(gamma(f64::NAN).is_err());
    }
}
