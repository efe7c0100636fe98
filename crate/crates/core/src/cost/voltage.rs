// SPDX-License-Identifier: Apache-2.0

//! Supply-voltage scaling of energy per bit.
//!
//! ```text
//! E(V) = e_dyn_nom * (V / V_nom)^2
//!      + e_dyn_nom * leak_ratio_nom * (V / V_nom) * T(V) / T(V_nom)
//! ```
//!
//! The cycle time `T(V)` follows the alpha-power law `V / (V - V_th)^1.3`
//! above 0.5 V and grows exponentially, `exp((0.5 - V) / slope)`, below it;
//! the two pieces meet at 0.5 V. Dynamic energy falls quadratically with the
//! supply while leakage energy per operation rises with the cycle time, so
//! the sum has a single minimum, the minimum-energy point.

use serde::{Deserialize, Serialize};

use super::{require_positive, CostError};

/// Voltage range on which the model is defined.
pub const V_DOMAIN: (f64, f64) = (0.15, 1.0);

/// Velocity-saturation exponent of the alpha-power delay law.
pub const ALPHA: f64 = 1.3;

/// Boundary between the alpha-power and exponential delay regions.
pub const V_KNEE: f64 = 0.5;

/// Two-parameter delay fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DelayFit {
    /// Threshold voltage of the alpha-power region, V.
    pub v_th: f64,
    /// `n * v_T` of the exponential region, V.
    pub subthreshold_slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VoltageModel {
    pub v_nom: f64,
    /// Dynamic energy per bit at `v_nom`, pJ/b.
    pub e_dyn_nom: f64,
    /// Leakage-to-dynamic energy ratio at `v_nom`.
    pub leak_ratio_nom: f64,
    pub delay_fit: DelayFit,
}

/// Operating points a fit must reproduce.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitTargets {
    pub v_nom: f64,
    /// Total energy per bit at `v_nom`, pJ/b.
    pub e_nom: f64,
    pub v_mep: f64,
    /// Energy per bit at the minimum-energy point, pJ/b.
    pub e_mep: f64,
}

impl Default for FitTargets {
    fn default() -> Self {
        Self {
            v_nom: 0.9,
            e_nom: 0.99,
            v_mep: 0.225,
            e_mep: 0.104,
        }
    }
}

fn in_domain(v: f64) -> bool {
    (V_DOMAIN.0..=V_DOMAIN.1).contains(&v)
}

impl VoltageModel {
    pub fn validate(&self) -> Result<(), CostError> {
        require_positive("v_nom", self.v_nom)?;
        require_positive("e_dyn_nom", self.e_dyn_nom)?;
        require_positive("leak_ratio_nom", self.leak_ratio_nom)?;
        require_positive("subthreshold_slope", self.delay_fit.subthreshold_slope)?;
        if !in_domain(self.v_nom) || self.v_nom <= V_KNEE {
            return Err(CostError::InvalidParameter {
                name: "v_nom",
                reason: format!("must lie in ({V_KNEE}, {}], got {}", V_DOMAIN.1, self.v_nom),
            });
        }
        // Leakage energy must fall with voltage over the whole alpha-power
        // region, which needs v_th >= (2 - ALPHA) / 2 * V_DOMAIN.1.
        let v_th_min = (2.0 - ALPHA) / 2.0 * V_DOMAIN.1;
        if !(v_th_min..V_KNEE).contains(&self.delay_fit.v_th) {
            return Err(CostError::InvalidParameter {
                name: "v_th",
                reason: format!(
                    "must lie in [{v_th_min}, {V_KNEE}), got {}",
                    self.delay_fit.v_th
                ),
            });
        }
        // Below two slopes the exponential leakage term is no longer convex.
        if self.delay_fit.subthreshold_slope > V_DOMAIN.0 / 2.0 {
            return Err(CostError::InvalidParameter {
                name: "subthreshold_slope",
                reason: format!(
                    "must not exceed {} V, got {}",
                    V_DOMAIN.0 / 2.0,
                    self.delay_fit.subthreshold_slope
                ),
            });
        }
        Ok(())
    }

    /// Unnormalized cycle time; only ratios are meaningful.
    pub fn cycle_time(&self, v: f64) -> f64 {
        let alpha_power = |v: f64| v / (v - self.delay_fit.v_th).powf(ALPHA);
        if v >= V_KNEE {
            alpha_power(v)
        } else {
            alpha_power(V_KNEE) * ((V_KNEE - v) / self.delay_fit.subthreshold_slope).exp()
        }
    }

    fn energy_unchecked(&self, v: f64) -> f64 {
        let r = v / self.v_nom;
        let slowdown = self.cycle_time(v) / self.cycle_time(self.v_nom);
        self.e_dyn_nom * (r * r + self.leak_ratio_nom * r * slowdown)
    }

    /// Energy per bit in pJ/b at supply `v`.
    pub fn energy_per_bit(&self, v: f64) -> Result<f64, CostError> {
        if !in_domain(v) {
            return Err(CostError::InvalidParameter {
                name: "voltage",
                reason: format!("{v} V is outside [{}, {}] V", V_DOMAIN.0, V_DOMAIN.1),
            });
        }
        Ok(self.energy_unchecked(v))
    }

    /// Minimum-energy point `(V*, E(V*))` on the model domain.
    pub fn minimum_energy_point(&self) -> (f64, f64) {
        // Coarse scan, then golden-section refinement around the best sample.
        let (lo, hi) = V_DOMAIN;
        let n = 170;
        let step = (hi - lo) / n as f64;
        let best = (0..=n)
            .map(|i| lo + step * i as f64)
            .min_by(|a, b| {
                self.energy_unchecked(*a)
                    .total_cmp(&self.energy_unchecked(*b))
            })
            .expect("non-empty scan");
        let (mut a, mut b) = ((best - step).max(lo), (best + step).min(hi));
        let g = (5f64.sqrt() - 1.0) / 2.0;
        while b - a > 1e-12 {
            let c = b - g * (b - a);
            let d = a + g * (b - a);
            if self.energy_unchecked(c) < self.energy_unchecked(d) {
                b = d;
            } else {
                a = c;
            }
        }
        let v = 0.5 * (a + b);
        (v, self.energy_unchecked(v))
    }

    /// Fits `leak_ratio_nom` and `subthreshold_slope` so the model hits the
    /// targets, with `v_th` held fixed. `e_dyn_nom` follows from `e_nom`.
    pub fn fit(targets: &FitTargets, v_th: f64) -> Result<VoltageModel, CostError> {
        let model = |slope: f64, leak: f64| VoltageModel {
            v_nom: targets.v_nom,
            e_dyn_nom: targets.e_nom / (1.0 + leak),
            leak_ratio_nom: leak,
            delay_fit: DelayFit {
                v_th,
                subthreshold_slope: slope,
            },
        };
        // More leakage pushes the minimum to higher voltage.
        let leak_for = |slope: f64| {
            let (mut lo, mut hi) = (-80.0f64, 0.0f64);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if model(slope, mid.exp()).minimum_energy_point().0 < targets.v_mep {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            (0.5 * (lo + hi)).exp()
        };
        let ratio_target = targets.e_mep / targets.e_nom;
        let ratio = |slope: f64| {
            let m = model(slope, leak_for(slope));
            m.minimum_energy_point().1 / m.energy_unchecked(targets.v_nom)
        };
        // A gentler exponential slope lifts the energy at the minimum.
        let (mut lo, mut hi) = (0.02f64, V_DOMAIN.0 / 2.0);
        if !(ratio(lo) <= ratio_target && ratio_target <= ratio(hi)) {
            return Err(CostError::Infeasible(format!(
                "no slope in [{lo}, {hi}] V reaches E_mep / E_nom = {ratio_target}"
            )));
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if ratio(mid) < ratio_target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let slope = 0.5 * (lo + hi);
        let m = model(slope, leak_for(slope));
        m.validate()?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::Calibration;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn shipped() -> VoltageModel {
        Calibration::shipped().voltage
    }

    /// Interior local minima on a 1 mV grid, counting a domain edge only if
    /// the curve rises away from it.
    fn local_minima(m: &VoltageModel) -> usize {
        let vs: Vec<f64> = (150..=1000).map(|mv| f64::from(mv) / 1000.0).collect();
        let e: Vec<f64> = vs.iter().map(|&v| m.energy_per_bit(v).unwrap()).collect();
        let mut n = 0;
        if e[0] < e[1] {
            n += 1;
        }
        for i in 1..e.len() - 1 {
            if e[i] < e[i - 1] && e[i] <= e[i + 1] {
                n += 1;
            }
        }
        if e[e.len() - 1] < e[e.len() - 2] {
            n += 1;
        }
        n
    }

    #[test]
    fn nominal_energy() {
        assert_relative_eq!(
            shipped().energy_per_bit(0.9).unwrap(),
            0.99,
            max_relative = 1e-6
        );
    }

    #[test]
    fn minimum_energy_point() {
        let (v, e) = shipped().minimum_energy_point();
        assert_relative_eq!(v, 0.225, epsilon = 1e-4);
        assert_relative_eq!(e, 0.104, max_relative = 1e-4);
        assert_eq!(local_minima(&shipped()), 1);
    }

    #[test]
    fn decreasing_above_half_volt() {
        let m = shipped();
        let mut prev = f64::INFINITY;
        for mv in (500..=900).rev() {
            let e = m.energy_per_bit(f64::from(mv) / 1000.0).unwrap();
            assert!(e < prev || mv == 900);
            prev = e;
        }
        for mv in 500..900 {
            let v = f64::from(mv) / 1000.0;
            assert!(m.energy_per_bit(v).unwrap() < m.energy_per_bit(v + 0.001).unwrap());
        }
    }

    #[test]
    fn out_of_domain() {
        assert!(shipped().energy_per_bit(0.1).is_err());
        assert!(shipped().energy_per_bit(1.2).is_err());
    }

    #[test]
    fn delay_pieces_meet_at_knee() {
        let m = shipped();
        let below = m.cycle_time(V_KNEE - 1e-12);
        assert_relative_eq!(below, m.cycle_time(V_KNEE), max_relative = 1e-9);
    }

    #[test]
    fn shipped_values_are_the_documented_fit() {
        let fitted = VoltageModel::fit(&FitTargets::default(), shipped().delay_fit.v_th).unwrap();
        let s = shipped();
        assert_relative_eq!(fitted.leak_ratio_nom, s.leak_ratio_nom, max_relative = 1e-6);
        assert_relative_eq!(
            fitted.delay_fit.subthreshold_slope,
            s.delay_fit.subthreshold_slope,
            max_relative = 1e-6
        );
        assert_relative_eq!(fitted.e_dyn_nom, s.e_dyn_nom, max_relative = 1e-6);
    }

    #[test]
    fn validation() {
        let mut m = shipped();
        m.delay_fit.v_th = 0.2;
        assert!(m.validate().is_err());
        let mut m = shipped();
        m.delay_fit.subthreshold_slope = 0.1;
        assert!(m.validate().is_err());
        let mut m = shipped();
        m.leak_ratio_nom = 0.0;
        assert!(m.validate().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn single_minimum_over_parameter_grid(
            log_leak in -14.0f64..-1.0,
            slope in 0.02f64..=0.075,
            v_th in 0.35f64..0.45,
        ) {
            let m = VoltageModel {
                v_nom: 0.9,
                e_dyn_nom: 1.0,
                leak_ratio_nom: log_leak.exp(),
                delay_fit: DelayFit { v_th, subthreshold_slope: slope },
            };
            prop_assert!(m.validate().is_ok());
            prop_assert_eq!(local_minima(&m), 1);
        }
    }
}
