//! Energy spectra of the q-deformed harmonic oscillator and of the
//! SU_q(1,1) anharmonic oscillator (phase deformation only).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qnumber::DeformationParam;

/// q-deformed harmonic oscillator with `ħ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QhoParams {
    pub omega: f64,
    pub deformation: DeformationParam,
}

impl QhoParams {
    pub fn new(omega: f64, deformation: DeformationParam) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "omega must be positive, got {omega}"
            )));
        }
        Ok(Self { omega, deformation })
    }
}

/// `E(n) = (ω/2)([n] + [n+1])`.
pub fn qho_level(n: u32, p: &QhoParams) -> f64 {
    let n = f64::from(n);
    0.5 * p.omega * (p.deformation.qnumber(n) + p.deformation.qnumber(n + 1.0))
}

/// Parameters `(E₀′, A, τ, N)` of the SU_q(1,1) anharmonic spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuqSpectrumParams {
    pub e0_prime: f64,
    pub amplitude: f64,
    pub tau: f64,
    pub band: u32,
}

impl SuqSpectrumParams {
    pub fn new(e0_prime: f64, amplitude: f64, tau: f64, band: u32) -> Result<Self> {
        if !(amplitude > 0.0) || !amplitude.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "amplitude A must be positive, got {amplitude}"
            )));
        }
        // reuse the phase-regime validation for tau
        DeformationParam::phase(tau)?;
        if band < 2 {
            return Err(Error::InvalidParameter(format!(
                "band parameter N must be >= 2, got {band}"
            )));
        }
        if !e0_prime.is_finite() {
            return Err(Error::InvalidParameter("E0' must be finite".into()));
        }
        Ok(Self {
            e0_prime,
            amplitude,
            tau,
            band,
        })
    }

    /// Last level below the dissociation limit: `N = 2 n_max` or `2 n_max + 1`.
    pub fn n_max(&self) -> usize {
        (self.band / 2) as usize
    }

    pub fn theta(&self) -> f64 {
        f64::from(self.band) * self.tau
    }
}

/// Level `n` of the SU_q(1,1) spectrum,
/// `E₀′ − A sin(τ(n − N/2)) sin(τ(n + 1 − N/2)) / sin²τ`.
pub fn suq11_level(n: usize, p: &SuqSpectrumParams) -> Result<f64> {
    if n > p.n_max() {
        return Err(Error::LevelOutOfRange {
            index: n,
            n_max: p.n_max(),
        });
    }
    let half = f64::from(p.band) / 2.0;
    let m = n as f64;
    let s = p.tau.sin();
    Ok(p.e0_prime
        - p.amplitude * (p.tau * (m - half)).sin() * (p.tau * (m + 1.0 - half)).sin() / (s * s))
}

/// Evaluate several levels at once.
pub fn suq11_levels(indices: &[usize], p: &SuqSpectrumParams) -> Result<Vec<f64>> {
    indices.iter().map(|&n| suq11_level(n, p)).collect()
}

/// The `(cos τ − cos Nτ) / (2 sin²τ)` factor shared by `V_min` and `E₀′`.
pub(crate) fn vmin_factor(tau: f64, band: u32) -> f64 {
    // cos τ − cos Nτ written as a product to avoid cancellation at small τ
    let n = f64::from(band);
    let s = tau.sin();
    (((n + 1.0) * tau / 2.0).sin() * ((n - 1.0) * tau / 2.0).sin()) / (s * s)
}

/// Bottom of the WKB equivalent potential: `E₀′ − A (cos τ − cos Nτ)/(2 sin²τ)`.
pub fn suq11_vmin(p: &SuqSpectrumParams) -> f64 {
    p.e0_prime - p.amplitude * vmin_factor(p.tau, p.band)
}

/// The `E₀′` that puts the potential minimum at zero.
pub fn e0_prime_for_zero_vmin(amplitude: f64, tau: f64, band: u32) -> f64 {
    amplitude * vmin_factor(tau, band)
}
