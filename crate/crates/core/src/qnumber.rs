//! q-numbers for real and phase deformations.
//!
//! With `q = e^τ` the q-number of `x` is `sinh(τx)/sinh(τ)`; with
//! `q = e^{iτ}` it is `sin(τx)/sin(τ)`. Both reduce to `x` as `τ → 0`, but
//! `τ = 0` itself is rejected: callers wanting the undeformed value use `x`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which deformation is in effect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `q = e^τ`, hyperbolic q-numbers.
    RealQ,
    /// `q = e^{iτ}`, trigonometric q-numbers.
    PhaseQ,
}

/// A validated deformation: regime plus `τ > 0` (and `τ < π` for phases).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeformationParam {
    regime: Regime,
    tau: f64,
}

impl DeformationParam {
    pub fn new(regime: Regime, tau: f64) -> Result<Self> {
        if !tau.is_finite() || tau <= 0.0 {
            return Err(Error::InvalidDeformation {
                tau,
                reason: "tau must be finite and strictly positive",
            });
        }
        if regime == Regime::PhaseQ && tau >= PI {
            return Err(Error::InvalidDeformation {
                tau,
                reason: "phase deformation requires tau < pi",
            });
        }
        Ok(Self { regime, tau })
    }

    pub fn real(tau: f64) -> Result<Self> {
        Self::new(Regime::RealQ, tau)
    }

    pub fn phase(tau: f64) -> Result<Self> {
        Self::new(Regime::PhaseQ, tau)
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    /// The q-number `[x]`.
    pub fn qnumber(&self, x: f64) -> f64 {
        // [1] must be exactly one.
        if x == 1.0 {
            return 1.0;
        }
        let t = self.tau;
        match self.regime {
            Regime::RealQ => (t * x).sinh() / t.sinh(),
            Regime::PhaseQ => (t * x).sin() / t.sin(),
        }
    }
}

/// Free-function form of [`DeformationParam::qnumber`].
pub fn qnumber(x: f64, d: &DeformationParam) -> f64 {
    d.qnumber(x)
}

/// One step of a classical-limit sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitStep {
    pub tau: f64,
    pub value: f64,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport {
    pub x: f64,
    pub regime: Regime,
    pub steps: Vec<LimitStep>,
}

impl ConvergenceReport {
    pub fn final_deviation(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.deviation)
    }

    /// True when the deviations never increase along the sweep.
    pub fn is_monotone(&self) -> bool {
        self.steps
            .windows(2)
            .all(|w| w[1].deviation <= w[0].deviation)
    }
}

/// Evaluate `[x]` along `τ = τ₀, τ₀/10, …` (`steps` values, starting from the
/// deformation's own `τ`) and report `|[x] − x|` at each one.
pub fn classical_limit_check(x: f64, d: &DeformationParam, steps: usize) -> ConvergenceReport {
    let mut tau = d.tau();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let step = DeformationParam {
            regime: d.regime(),
            tau,
        };
        let value = step.qnumber(x);
        out.push(LimitStep {
            tau,
            value,
            deviation: (value - x).abs(),
        });
        tau /= 10.0;
    }
    ConvergenceReport {
        x,
        regime: d.regime(),
        steps: out,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::LN_2;

    #[test]
    fn zero_maps_to_zero() {
        for d in [
            DeformationParam::real(0.7).unwrap(),
            DeformationParam::phase(0.7).unwrap(),
        ] {
            assert_eq!(d.qnumber(0.0), 0.0);
        }
    }

    #[test]
    fn q_equals_two() {
        let d = DeformationParam::real(LN_2).unwrap();
        assert_relative_eq!(d.qnumber(2.0), 2.5, max_relative = 1e-14);
    }

    #[test]
    fn phase_pi_over_six() {
        let d = DeformationParam::phase(PI / 6.0).unwrap();
        assert_relative_eq!(d.qnumber(3.0), 2.0, max_relative = 1e-14);
    }

    #[test]
    fn rejects_bad_tau() {
        assert!(DeformationParam::real(0.0).is_err());
        assert!(DeformationParam::real(-0.1).is_err());
        assert!(DeformationParam::phase(PI).is_err());
        assert!(DeformationParam::phase(f64::NAN).is_err());
        assert!(DeformationParam::real(4.0).is_ok());
    }

    #[test]
    fn limit_sweep_phase() {
        let d = DeformationParam::phase(1e-2).unwrap();
        let rep = classical_limit_check(5.0, &d, 3);
        assert_eq!(rep.steps.len(), 3);
        assert_relative_eq!(rep.steps[2].tau, 1e-4, max_relative = 1e-12);
        assert!(rep.is_monotone());
        assert!(rep.steps[0].deviation > rep.steps[2].deviation);
    }

    #[test]
    fn limit_sweep_unit() {
        let d = DeformationParam::real(0.5).unwrap();
        let rep = classical_limit_check(1.0, &d, 5);
        assert!(rep.steps.iter().all(|s| s.value == 1.0));
    }

    #[test]
    fn limit_sweep_real_bound() {
        // series: [x] - x = (τ²/6)(x³ - x) + O(τ⁴)
        let x: f64 = 7.5;
        let d = DeformationParam::real(1e-2).unwrap();
        let rep = classical_limit_check(x, &d, 3);
        let bound = (1e-4f64).powi(2) / 6.0 * (x.powi(3) - x);
        assert!(rep.final_deviation() < 1e-6);
        assert_relative_eq!(rep.final_deviation(), bound, max_relative = 1e-3);
    }
}
