//! Numerical integration used by the special-function kernel and by the
//! test oracles.
//!
//! Two unrelated schemes live here on purpose: a globally adaptive 21-point
//! Gauss-Kronrod rule on finite intervals, and an exp-sinh (double
//! exponential) rule on the half line. Comparing one against the other gives
//! a cross-check that does not share discretisation error.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

/// Result of a quadrature: the estimate and an (absolute) error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

// Kronrod abscissae, descending; odd indices are the Gauss-10 nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_600_552_929_218,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[10];
    let mut gauss = 0.0;
    let mut abs_sum = fc.abs() * WGK[10];
    let mut fv = [0.0; 21];
    fv[10] = fc;
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv[j] = f1;
        fv[20 - j] = f2;
        kronrod += WGK[j] * (f1 + f2);
        abs_sum += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kronrod;
    let mut asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        asc += WGK[j] * ((fv[j] - mean).abs() + (fv[20 - j] - mean).abs());
    }
    let value = kronrod * half;
    let res_abs = abs_sum * half.abs();
    let res_asc = asc * half.abs();
    let mut err = ((kronrod - gauss) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Segment { a, b, value, error: err }
}

/// Globally adaptive Gauss-Kronrod integration of `f` over `[a, b]`.
///
/// `breaks` are interior points used to seed the partition (e.g. to place a
/// known peak on a panel boundary). Stops once the summed error estimate is
/// below `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
) -> Result<Quadrature> {
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::domain(format!("invalid interval [{a}, {b}]")));
    }
    let mut points = vec![a];
    points.extend(breaks.iter().copied().filter(|&x| x > a && x < b));
    points.push(b);
    points.sort_by(f64::total_cmp);
    points.dedup();

    let mut heap = BinaryHeap::new();
    for w in points.windows(2) {
        heap.push(kronrod21(&f, w[0], w[1]));
    }
    let mut evaluations = 21 * heap.len();
    let mut value: f64 = heap.iter().map(|s| s.value).sum();
    let mut error: f64 = heap.iter().map(|s| s.error).sum();
    loop {
        if !value.is_finite() {
            return Err(Error::numerical("integrand produced a non-finite value"));
        }
        if error <= abs_tol.max(rel_tol * value.abs()) {
            // Re-sum to drop the drift of the running totals.
            let value = heap.iter().map(|s| s.value).sum();
            let error = heap.iter().map(|s| s.error).sum();
            return Ok(Quadrature { value, abs_error: error, evaluations });
        }
        if heap.len() >= max_segments {
            return Err(Error::numerical(format!(
                "adaptive quadrature did not converge on [{a}, {b}]: \
                 estimate {value:e}, error {error:e} after {} segments",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("non-empty partition");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            return Err(Error::numerical(format!(
                "quadrature subdivision exhausted precision near x = {mid:e}"
            )));
        }
        let left = kronrod21(&f, worst.a, mid);
        let right = kronrod21(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        evaluations += 42;
    }
}

/// Exp-sinh quadrature of `f` over `(0, inf)`.
///
/// Uses x = exp(pi/2 sinh t) and halves the step until two successive
/// levels agree to `rel_tol`. The integrand may have an integrable
/// algebraic singularity at 0 and must decay at infinity.
pub fn integrate_half_line<F: Fn(f64) -> f64>(f: F, rel_tol: f64) -> Result<Quadrature> {
    use std::f64::consts::FRAC_PI_2;
    const T_MAX: f64 = 6.5;
    const MAX_LEVEL: u32 = 10;

    let node = |t: f64| -> f64 {
        let x = (FRAC_PI_2 * t.sinh()).exp();
        if x == 0.0 || !x.is_finite() {
            return 0.0;
        }
        let w = FRAC_PI_2 * t.cosh() * x;
        let v = f(x) * w;
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };

    let mut h = 0.5;
    let mut evaluations = 0usize;
    let mut sum = node(0.0);
    evaluations += 1;
    let mut k = 1;
    while (k as f64) * h <= T_MAX {
        let t = k as f64 * h;
        sum += node(t) + node(-t);
        evaluations += 2;
        k += 1;
    }
    let mut estimate = sum * h;
    for _ in 0..MAX_LEVEL {
        h *= 0.5;
        let mut k = 1;
        while (k as f64) * h <= T_MAX {
            let t = k as f64 * h;
            sum += node(t) + node(-t);
            evaluations += 2;
            k += 2;
        }
        let next = sum * h;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff <= rel_tol * next.abs() || diff < f64::MIN_POSITIVE {
            return Ok(Quadrature { value: next, abs_error: diff.max(4.0 * f64::EPSILON * next.abs()), evaluations });
        }
    }
    Err(Error::numerical(format!(
        "exp-sinh quadrature did not reach relative tolerance {rel_tol:e}; last estimate {estimate:e}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        let k: f64 = 2.0 * WGK[..10].iter().sum::<f64>() + WGK[10];
        let g: f64 = 2.0 * WG.iter().sum::<f64>();
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn kronrod_is_exact_for_high_degree_polynomials() {
        // Exact through degree 31 on a single panel.
        for deg in [0, 5, 19, 30, 31] {
            let s = kronrod21(&|x: f64| x.powi(deg), 0.0, 1.0);
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((s.value - exact).abs() < 1e-14, "degree {deg}");
        }
    }

    #[test]
    fn adaptive_handles_peaks() {
        // Lorentzian of width 1e-4 at 0.3.
        let w = 1e-4;
        let q = integrate(|x| w / ((x - 0.3).powi(2) + w * w), 0.0, 1.0, &[], 1e-13, 1e-13, 2000).unwrap();
        let exact = (0.7f64 / w).atan() + (0.3f64 / w).atan();
        assert!((q.value - exact).abs() < 1e-11, "{} vs {}", q.value, exact);
    }

    #[test]
    fn half_line_with_endpoint_singularity() {
        // Int x^{-1/2} e^{-x} = sqrt(pi)
        let q = integrate_half_line(|x| x.powf(-0.5) * (-x).exp(), 1e-14).unwrap();
        assert!((q.value - std::f64::consts::PI.sqrt()).abs() < 1e-12);
        // Int x^3 e^{-x} = 6
        let q = integrate_half_line(|x| x.powi(3) * (-x).exp(), 1e-14).unwrap();
        assert!((q.value - 6.0).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let r = integrate(|x: f64| (1e4 * x).sin(), 0.0, 100.0, &[], 1e-15, 1e-15, 8);
        assert!(matches!(r, Err(Error::Numerical(_))));
    }
}
