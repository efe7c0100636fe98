// SPDX-License-Identifier: Apache-2.0

//! Duty-cycle window and time borrowing for pulsed-latch pipelines.
//!
//! `stage_delays` is one period of the repeating per-cycle critical-path
//! profile (for the round loop, one entry per round). A stage that overruns
//! the clock period borrows the overrun from the next stage, which must pay
//! it back; borrow carried into a stage is
//!
//! ```text
//! b_i = max(0, b_{i-1} + d_i - T)
//! ```
//!
//! and must never exceed `min(duty, borrow_limit_fraction) * T`. Because the
//! profile repeats, a profile whose total overrun is positive accumulates
//! without bound and fails however wide the window is.

use serde::{Deserialize, Serialize};

use super::{require_fraction, require_positive, CostError};

/// Duty cycles for which the pulse is wide enough to latch reliably and
/// narrow enough to hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DutyWindow {
    pub min: f64,
    pub max: f64,
}

impl Default for DutyWindow {
    fn default() -> Self {
        Self {
            min: 0.10,
            max: 0.24,
        }
    }
}

/// Tolerance for window edges so that swept values such as `0.05 + 19 * 0.01`
/// land on the edge they were meant to hit.
const EDGE_EPS: f64 = 1e-9;

impl DutyWindow {
    pub fn contains(&self, duty: f64) -> bool {
        duty >= self.min - EDGE_EPS && duty <= self.max + EDGE_EPS
    }

    pub fn validate(&self) -> Result<(), CostError> {
        require_fraction("duty_window.min", self.min)?;
        require_fraction("duty_window.max", self.max)?;
        if self.min > self.max {
            return Err(CostError::InvalidParameter {
                name: "duty_window",
                reason: format!("min {} exceeds max {}", self.min, self.max),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingParams {
    /// Seconds.
    pub clock_period: f64,
    pub duty_cycle: f64,
    /// Seconds, one entry per stage of the repeating profile.
    pub stage_delays: Vec<f64>,
    pub borrow_limit_fraction: f64,
    #[serde(default)]
    pub duty_window: DutyWindow,
}

impl TimingParams {
    pub fn new(clock_period: f64, duty_cycle: f64, stage_delays: Vec<f64>) -> Self {
        Self {
            clock_period,
            duty_cycle,
            stage_delays,
            borrow_limit_fraction: 0.10,
            duty_window: DutyWindow::default(),
        }
    }

    fn validate_delays(&self) -> Result<(), CostError> {
        if self.stage_delays.is_empty() {
            return Err(CostError::InvalidParameter {
                name: "stage_delays",
                reason: "at least one stage is required".into(),
            });
        }
        for &d in &self.stage_delays {
            require_positive("stage_delays", d)?;
        }
        require_fraction("duty_cycle", self.duty_cycle)?;
        require_fraction("borrow_limit_fraction", self.borrow_limit_fraction)
    }

    /// Borrow budget per stage as a fraction of the period.
    pub fn borrow_budget(&self) -> f64 {
        self.duty_cycle.min(self.borrow_limit_fraction)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimingCheck {
    pub ok: bool,
    /// Largest borrow seen in steady state, as a fraction of the period.
    pub max_borrow_used: f64,
}

/// Steady-state borrow profile at `period`: the largest borrow and whether
/// the profile repays what it borrows.
fn steady_state_borrow(delays: &[f64], period: f64) -> (f64, bool) {
    let overrun: f64 = delays.iter().map(|d| d - period).sum();
    let bounded = overrun <= period * EDGE_EPS;
    // Two passes reach steady state when the total overrun is non-positive.
    let mut borrow = 0.0f64;
    let mut max_borrow = 0.0f64;
    for d in delays.iter().chain(delays.iter()) {
        borrow = (borrow + d - period).max(0.0);
        max_borrow = max_borrow.max(borrow);
    }
    (max_borrow, bounded)
}

pub fn check_duty_cycle(t: &TimingParams) -> Result<TimingCheck, CostError> {
    require_positive("clock_period", t.clock_period)?;
    t.validate_delays()?;
    let (max_borrow, bounded) = steady_state_borrow(&t.stage_delays, t.clock_period);
    let max_borrow_used = max_borrow / t.clock_period;
    let ok = t.duty_window.contains(t.duty_cycle)
        && bounded
        && max_borrow_used <= t.borrow_budget() + EDGE_EPS;
    Ok(TimingCheck {
        ok,
        max_borrow_used,
    })
}

/// Smallest clock period that passes [`check_duty_cycle`] at the given duty
/// cycle; `clock_period` in `t` is ignored.
pub fn min_cycle_with_borrowing(t: &TimingParams) -> Result<f64, CostError> {
    t.validate_delays()?;
    if !t.duty_window.contains(t.duty_cycle) {
        return Err(CostError::Infeasible(format!(
            "duty cycle {} is outside [{}, {}]",
            t.duty_cycle, t.duty_window.min, t.duty_window.max
        )));
    }
    let passes = |period: f64| {
        let mut p = t.clone();
        p.clock_period = period;
        check_duty_cycle(&p).map(|c| c.ok).unwrap_or(false)
    };
    let max_delay = t.stage_delays.iter().copied().fold(0.0, f64::max);
    // No stage overruns at max_delay, so it always passes.
    let mut hi = max_delay;
    let mut lo = max_delay / (1.0 + t.borrow_budget()) * (1.0 - 1e-9);
    if passes(lo) {
        return Ok(lo);
    }
    while hi - lo > hi * 1e-13 {
        let mid = 0.5 * (lo + hi);
        if passes(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn balanced_at_window_floor() {
        let c = check_duty_cycle(&TimingParams::new(1.0, 0.10, vec![1.0; 32])).unwrap();
        assert!(c.ok);
        assert_eq!(c.max_borrow_used, 0.0);
    }

    #[test]
    fn outside_window_fails() {
        for duty in [0.25, 0.09, 0.5] {
            assert!(
                !check_duty_cycle(&TimingParams::new(1.0, duty, vec![0.5; 4]))
                    .unwrap()
                    .ok
            );
        }
    }

    #[test]
    fn borrow_repaid_by_next_stage() {
        let c = check_duty_cycle(&TimingParams::new(1.0, 0.20, vec![1.08, 0.9])).unwrap();
        assert!(c.ok);
        assert_relative_eq!(c.max_borrow_used, 0.08, epsilon = 1e-12);
    }

    #[test]
    fn unrepaid_borrow_fails() {
        let c = check_duty_cycle(&TimingParams::new(1.0, 0.20, vec![1.05, 1.0])).unwrap();
        assert!(!c.ok);
    }

    #[test]
    fn invalid_inputs() {
        assert!(check_duty_cycle(&TimingParams::new(0.0, 0.2, vec![1.0])).is_err());
        assert!(check_duty_cycle(&TimingParams::new(1.0, 0.2, vec![])).is_err());
        assert!(check_duty_cycle(&TimingParams::new(1.0, 0.2, vec![-1.0])).is_err());
        assert!(min_cycle_with_borrowing(&TimingParams::new(1.0, 0.3, vec![1.0])).is_err());
    }

    #[test]
    fn min_cycle_equal_stages() {
        let t = TimingParams::new(1.0, 0.2, vec![2.0e-9; 32]);
        assert_relative_eq!(
            min_cycle_with_borrowing(&t).unwrap(),
            2.0e-9,
            max_relative = 1e-9
        );
    }

    #[test]
    fn min_cycle_alternating() {
        let d = 2.0e-9;
        let delays = (0..32)
            .map(|i| if i % 2 == 0 { 1.1 * d } else { 0.9 * d })
            .collect();
        let t = TimingParams::new(1.0, 0.2, delays);
        assert_relative_eq!(
            min_cycle_with_borrowing(&t).unwrap(),
            d,
            max_relative = 1e-9
        );
    }

    #[test]
    fn min_cycle_long_overrun() {
        let d = 1.0;
        let mut delays = vec![1.1 * d; 64];
        delays.push(0.5 * d);
        let t = TimingParams::new(1.0, 0.2, delays);
        let p = min_cycle_with_borrowing(&t).unwrap();
        assert!(p < 1.1 * d && p > 1.09 * d, "{p}");
    }

    proptest! {
        #[test]
        fn in_window_and_no_overrun_always_passes(
            duty in 0.10f64..=0.24,
            delays in proptest::collection::vec(0.1f64..=1.0, 1..40),
        ) {
            prop_assert!(check_duty_cycle(&TimingParams::new(1.0, duty, delays)).unwrap().ok);
        }

        #[test]
        fn outside_window_never_passes(
            duty in prop_oneof![0.001f64..0.0999, 0.2401f64..0.999],
            delays in proptest::collection::vec(0.1f64..=1.0, 1..40),
        ) {
            prop_assert!(!check_duty_cycle(&TimingParams::new(1.0, duty, delays)).unwrap().ok);
        }

        #[test]
        fn min_cycle_bounds(
            duty in 0.10f64..=0.24,
            delays in proptest::collection::vec(0.5f64..=1.5, 1..40),
        ) {
            let t = TimingParams::new(1.0, duty, delays.clone());
            let p = min_cycle_with_borrowing(&t).unwrap();
            let max = delays.iter().copied().fold(0.0, f64::max);
            prop_assert!(p <= max);
            prop_assert!(p >= max / (1.0 + t.borrow_budget()) * (1.0 - 1e-6));
            let mut at = t.clone();
            at.clock_period = p;
            prop_assert!(check_duty_cycle(&at).unwrap().ok);
        }
    }
}
