use dunkl_bose::exact_spectrum::{exact_excited_count, exact_excited_count_auto, semiclassical_comparison};
use dunkl_bose::{GasSpec, ReducedTemperature};

#[test]
fn deviation_shrinks_like_inverse_temperature() {
    for &theta in &[-0.2, 0.0, 0.5, 2.0] {
        let spec = GasSpec::new(3.0, theta, 1e6).unwrap();
        let rows = semiclassical_comparison(&spec, &[10.0, 20.0, 50.0, 100.0, 200.0, 400.0]).unwrap();
        for w in rows.windows(2) {
            assert!(w[1].n_rel_deviation < w[0].n_rel_deviation, "theta={theta} t={}", w[1].t);
            assert!(w[1].u_rel_deviation < w[0].u_rel_deviation, "theta={theta} t={}", w[1].t);
        }
        let at50 = rows.iter().find(|r| r.t == 50.0).unwrap();
        assert!(at50.n_rel_deviation < 0.1 && at50.u_rel_deviation < 0.1);
        // t * deviation settles to a constant
        let (a, b) = (&rows[4], &rows[5]);
        let (ka, kb) = (a.t * a.n_rel_deviation, b.t * b.n_rel_deviation);
        assert!((ka / kb - 1.0).abs() < 0.25, "theta={theta}: {ka} vs {kb}");
    }
}

#[test]
fn undeformed_and_deformed_deviations_share_their_order() {
    let grid = [100.0, 400.0];
    let r0 = semiclassical_comparison(&GasSpec::new(3.0, 0.0, 1e6).unwrap(), &grid).unwrap();
    let r4 = semiclassical_comparison(&GasSpec::new(3.0, 0.4, 1e6).unwrap(), &grid).unwrap();
    for (a, b) in r0.iter().zip(&r4) {
        let ratio = b.n_rel_deviation / a.n_rel_deviation;
        assert!(ratio > 0.2 && ratio < 5.0, "{ratio}");
    }
}

#[test]
fn doubling_the_cutoff_stays_within_the_bound() {
    let t = ReducedTemperature::new(40.0).unwrap();
    let z = dunkl_bose::Fugacity::new(0.95).unwrap();
    let base = exact_excited_count_auto(3, 0.3, t, z).unwrap();
    let doubled = exact_excited_count(3, 0.3, t, z, 2 * base.truncation.n_max).unwrap();
    assert!(doubled.value - base.value <= base.truncation.tail_bound);
    assert!(doubled.value >= base.value);
}

#[test]
fn all_rows_are_finite_and_positive() {
    let spec = GasSpec::new(2.0, -0.3, 1e4).unwrap();
    for r in semiclassical_comparison(&spec, &[5.0, 50.0, 500.0]).unwrap() {
        assert!(r.n_exact > 0.0 && r.u_exact > 0.0 && r.n_semiclassical > 0.0);
        assert!(r.z > 0.0 && r.z <= 1.0);
    }
}
