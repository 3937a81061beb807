use serde::Serialize;

use super::eigen::landau_energy;
use crate::exactalg::rational::{rational_string, to_f64};
use crate::exactalg::ModelParams;
use crate::numerics::combinatorics::binomial_u64;

/// One level `h_p = (2p + κ)λ` of a gross zone.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralLine {
    pub p: u32,
    pub energy: f64,
    /// `energy` as an exact `"num/den"` string.
    pub energy_exact: String,
    pub multiplicity: u64,
}

/// `C(a+κ−1, a)·C(p+κ−1, p)`.
pub fn zone_multiplicity(a: u32, p: u32, kappa: u32) -> u64 {
    let k = u64::from(kappa);
    binomial_u64(u64::from(a) + k - 1, u64::from(a)) * binomial_u64(u64::from(p) + k - 1, u64::from(p))
}

pub fn enumerate_zone_spectrum(a: u32, params: &ModelParams, p_max: u32) -> Vec<SpectralLine> {
    (0..=p_max)
        .map(|p| {
            let energy = landau_energy(p, params);
            SpectralLine {
                p,
                energy: to_f64(&energy),
                energy_exact: rational_string(&energy),
                multiplicity: zone_multiplicity(a, p, params.kappa),
            }
        })
        .collect()
}

/// `Σ multiplicity·e^{−t·energy}` over the given lines.
pub fn heat_trace(lines: &[SpectralLine], t: f64) -> f64 {
    lines
        .iter()
        .map(|line| line.multiplicity as f64 * (-t * line.energy).exp())
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::integer;

    #[test]
    fn fock_zone_levels() {
        let lines = enumerate_zone_spectrum(0, &ModelParams::unit(), 2);
        let energies: Vec<f64> = lines.iter().map(|l| l.energy).collect();
        assert_eq!(energies, vec![1.0, 3.0, 5.0]);
        assert!(lines.iter().all(|l| l.multiplicity == 1));
        assert_eq!(lines[2].energy_exact, "5");
    }

    #[test]
    fn planar_zones_are_isospectral() {
        let params = ModelParams::new(integer(3)).unwrap();
        assert_eq!(enumerate_zone_spectrum(1, &params, 10), enumerate_zone_spectrum(0, &params, 10));
    }

    #[test]
    fn two_particle_zone_one_doubles() {
        let params = ModelParams::unit().with_kappa(2).unwrap();
        let zone0 = enumerate_zone_spectrum(0, &params, 6);
        let zone1 = enumerate_zone_spectrum(1, &params, 6);
        for (l0, l1) in zone0.iter().zip(&zone1) {
            assert_eq!(l1.multiplicity, 2 * l0.multiplicity);
            assert_eq!(l0.multiplicity, u64::from(l0.p) + 1);
        }
    }
}
