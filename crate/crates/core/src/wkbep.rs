//! WKB equivalent potential of the SU_q(1,1) oscillator, truncated at x⁶,
//! and the modified Pöschl–Teller forms it reduces to as `τ → 0`.

use crate::error::{Error, Result};
use crate::potential::PotentialPolynomial;
use crate::spectra::{suq11_vmin, SuqSpectrumParams};

/// Bracket coefficients of the u-series: `1, β₄ u², β₆ u⁴, β₈ u⁶`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct USeries {
    /// `(A/4) (τ sin Nτ / sin²τ)²`, the coefficient of `u²`.
    pub leading: f64,
    pub beta4: f64,
    pub beta6: f64,
    pub beta8: f64,
}

/// The u-space series for `p`. `u = √(2A) x`.
pub fn u_series(p: &SuqSpectrumParams) -> Result<USeries> {
    let tau = p.tau;
    let theta = p.theta();
    let sn = theta.sin();
    if sn.abs() < 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "N*tau = {theta} is a multiple of pi; the series degenerates"
        )));
    }
    let s2 = tau.sin().powi(2);
    let c = theta.cos();
    let k = tau * sn / s2;
    let t2 = tau * tau / s2;
    Ok(USeries {
        leading: p.amplitude / 4.0 * k * k,
        beta4: -2.0 / 3.0 * t2 * c,
        beta6: t2 * t2 * (23.0 * c * c - 6.0) / 45.0,
        beta8: -2.0 / 315.0 * t2 * t2 * t2 * (67.0 * c * c - 36.0) * c,
    })
}

/// x-space sextic truncation of the WKB equivalent potential.
pub fn wkbep_series(p: &SuqSpectrumParams) -> Result<PotentialPolynomial> {
    let s = u_series(p)?;
    let u2 = 2.0 * p.amplitude;
    Ok(PotentialPolynomial {
        vmin: suq11_vmin(p),
        c2: s.leading * u2,
        c4: s.leading * s.beta4 * u2 * u2,
        c6: s.leading * s.beta6 * u2 * u2 * u2,
    })
}

/// Modified Pöschl–Teller well `vmin + (A N²/4) tanh²(√(2A) x)`.
pub fn mpt_closed_form(x: f64, vmin: f64, amplitude: f64, band: u32) -> f64 {
    let n = f64::from(band);
    vmin + amplitude * n * n / 4.0 * ((2.0 * amplitude).sqrt() * x).tanh().powi(2)
}

/// Taylor bracket of `tanh²u / u²`: `1 − 2/3 u² + 17/45 u⁴ − 62/315 u⁶`.
pub const MPT_BRACKET: [f64; 4] = [1.0, -2.0 / 3.0, 17.0 / 45.0, -62.0 / 315.0];
