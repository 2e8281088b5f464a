use serde::Serialize;

use crate::dunkl::GasSpec;
use crate::error::{Error, Result};

/// A uniform gas in a box, expressed as an equivalent trapped spec of
/// half the dimension.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HomogeneousGas {
    /// Spec with d replaced by D / 2; all thermo functions accept it as is.
    pub spec: GasSpec,
    pub physical_dimension: f64,
    pub hypervolume: f64,
}

impl HomogeneousGas {
    /// Energy that replaces hbar omega: 2 pi hbar^2 / (m V^{2/D}).
    pub fn energy_unit(&self, mass: f64, hbar: f64) -> f64 {
        2.0 * std::f64::consts::PI * hbar * hbar / (mass * self.hypervolume.powf(2.0 / self.physical_dimension))
    }

    pub fn unit_annotation(&self) -> String {
        format!(
            "energy unit 2*pi*hbar^2/(m*V^(2/{})) with V = {}; temperatures are k_B T in that unit",
            self.physical_dimension, self.hypervolume
        )
    }
}

/// Maps a trapped spec of dimension D onto the homogeneous gas in D dimensions.
pub fn homogeneous_map(spec: &GasSpec, hypervolume: f64) -> Result<HomogeneousGas> {
    if !(hypervolume > 0.0 && hypervolume.is_finite()) {
        return Err(Error::domain(format!("hypervolume must be positive, got {hypervolume}")));
    }
    if spec.d < 2.0 {
        return Err(Error::domain(format!(
            "homogeneous map needs d >= 2 so that the effective dimension d/2 is >= 1, got d = {}",
            spec.d
        )));
    }
    Ok(HomogeneousGas {
        spec: GasSpec::new(spec.d / 2.0, spec.theta, spec.n_particles)?,
        physical_dimension: spec.d,
        hypervolume,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dunkl::g_dunkl_at_unit_fugacity;
    use crate::thermo::{critical_temperature, validate_theta};

    #[test]
    fn three_dimensions_map_to_three_halves() {
        let trapped = GasSpec::new(3.0, 0.2, 1e5).unwrap();
        let h = homogeneous_map(&trapped, 8.0).unwrap();
        assert_eq!(h.spec.d, 1.5);
        let tc = critical_temperature(&h.spec).unwrap().unwrap();
        let g = g_dunkl_at_unit_fugacity(1.5, 0.2).unwrap();
        assert!((tc - (1e5 / g).powf(1.0 / 1.5)).abs() < 1e-9 * tc);
        let unit = h.energy_unit(2.0, 1.0);
        assert!((unit - std::f64::consts::PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn two_dimensions_have_no_transition() {
        let h = homogeneous_map(&GasSpec::new(2.0, 0.0, 1e4).unwrap(), 1.0).unwrap();
        assert_eq!(critical_temperature(&h.spec).unwrap(), None);
    }

    #[test]
    fn theta_class_is_unchanged() {
        for &theta in &[-0.3, 0.5, 1.2] {
            let h = homogeneous_map(&GasSpec::new(3.0, theta, 1e4).unwrap(), 1.0).unwrap();
            assert_eq!(validate_theta(h.spec.theta), validate_theta(theta));
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let s = GasSpec::new(3.0, 0.0, 1e4).unwrap();
        assert!(homogeneous_map(&s, 0.0).is_err());
        assert!(homogeneous_map(&GasSpec::new(1.0, 0.0, 1e4).unwrap(), 1.0).is_err());
    }
}
