use serde::Serialize;

/// Physical constants (CODATA 2018) together with the magnetic constants as
/// printed in the source material.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub alpha: f64,
    pub me_c2_j: f64,
    pub me_c2_ev: f64,
    pub hbar: f64,
    pub c: f64,
    /// Planck constant in eV·s, for frequency conversion.
    pub h_ev_s: f64,
    /// Printed `2λ = 2m_eμ_B/ħ²` in m⁻²T⁻¹.
    pub two_lambda_phys: f64,
    /// Printed `ħ²/2m_e` in kg·m².
    pub hbar2_over_2me: f64,
    /// Printed `(2m_e/ħ²)μ_B²` in kg·s⁻²T⁻².
    pub w_extra: f64,
    /// `(¼α⁵)^{1/6}`.
    pub aleph: f64,
}

pub const ALPHA_PRINTED: f64 = 7.297_352_568e-3;
pub const ALPHA_PRINTED_UNCERTAINTY: f64 = 2.4e-11;

const ELECTRON_MASS_KG: f64 = 9.109_383_701_5e-31;
const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;

impl PhysicalConstants {
    pub fn codata2018() -> Self {
        let alpha = 7.297_352_569_3e-3;
        Self {
            alpha,
            me_c2_j: 8.187_105_776_9e-14,
            me_c2_ev: 0.510_998_950_00e6,
            hbar: 1.054_571_817e-34,
            c: 299_792_458.0,
            h_ev_s: 4.135_667_696e-15,
            two_lambda_phys: 1.492_298_399e15,
            hbar2_over_2me: 6.104_263_5e-39,
            w_extra: 1.408_970_181e-8,
            aleph: (0.25 * alpha.powi(5)).powf(1.0 / 6.0),
        }
    }

    /// The printed magnetic constants recomputed from `m_e`, `μ_B` and `ħ`.
    pub fn derived_checks(&self) -> Vec<ConstantCheck> {
        let two_m_over_hbar2 = 2.0 * ELECTRON_MASS_KG / (self.hbar * self.hbar);
        [
            ("two_lambda_phys", self.two_lambda_phys, two_m_over_hbar2 * BOHR_MAGNETON),
            ("hbar2_over_2me", self.hbar2_over_2me, 1.0 / two_m_over_hbar2),
            ("w_extra", self.w_extra, two_m_over_hbar2 * BOHR_MAGNETON * BOHR_MAGNETON),
        ]
        .into_iter()
        .map(|(name, printed, derived)| ConstantCheck {
            name,
            printed,
            derived,
            rel_diff: (printed - derived).abs() / derived.abs(),
        })
        .collect()
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::codata2018()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantCheck {
    pub name: &'static str,
    pub printed: f64,
    pub derived: f64,
    pub rel_diff: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codata_consistency() {
        let k = PhysicalConstants::codata2018();
        assert!((k.alpha - ALPHA_PRINTED).abs() < ALPHA_PRINTED_UNCERTAINTY);
        assert!((k.aleph - 0.013_151_070_605_471_245).abs() < 1e-15);
        assert!((k.aleph.powi(6) - 0.25 * k.alpha.powi(5)).abs() < 1e-24);
        let joule_per_ev = k.me_c2_j / k.me_c2_ev;
        assert!((joule_per_ev - 1.602_176_634e-19).abs() < 1e-28);
        let h_joule = 2.0 * std::f64::consts::PI * k.hbar;
        assert!((h_joule / joule_per_ev / k.h_ev_s - 1.0).abs() < 1e-9);
    }

    #[test]
    fn printed_magnetic_constants() {
        let checks = PhysicalConstants::codata2018().derived_checks();
        let by_name = |n: &str| checks.iter().find(|c| c.name == n).unwrap();
        assert!(by_name("hbar2_over_2me").rel_diff < 1e-6);
        assert!(by_name("w_extra").rel_diff < 1e-6);
        // 2m_eμ_B/ħ² = e/ħ; the printed value is 1.8% below it.
        let two_lambda = by_name("two_lambda_phys");
        assert!((two_lambda.derived / (1.602_176_634e-19 / 1.054_571_817e-34) - 1.0).abs() < 1e-9);
        assert!((two_lambda.rel_diff - 0.017_751).abs() < 1e-5);
    }
}
