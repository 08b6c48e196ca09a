//! Matching the sextic truncation of the SU_q(1,1) WKB equivalent potential
//! onto the quasi-exactly soluble family with `a = 1`.
//!
//! Comparing the x², x⁴ and x⁶ coefficients gives three equations in
//! `(A, τ, N)`. The x⁶ equation fixes `A`, the x⁴ equation fixes `b`, and the
//! x² equation becomes a single transcendental condition on `θ = Nτ`
//! and `τ` that must equal `2k + 3`. Real solutions need `sin θ > 0`,
//! `cos²θ > 6/23` and `cos²θ < 1/3`; on the first branch this leaves one
//! open window for each sign of `b`.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::PotentialPolynomial;
use crate::qes::{qes_to_polynomial, QesPotentialSpec};
use crate::spectra::{e0_prime_for_zero_vmin, SuqSpectrumParams};
use crate::wkbep::{wkbep_series, MPT_BRACKET};

/// Distance from a window endpoint inside which `θ` is treated as infeasible.
pub const ENDPOINT_GUARD: f64 = 1e-9;
/// Convergence target for `|f(τ)|` in [`solve_tau`].
pub const ROOT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignB {
    Positive,
    Negative,
}

impl SignB {
    pub fn as_str(&self) -> &'static str {
        match self {
            SignB::Positive => "pos",
            SignB::Negative => "neg",
        }
    }
}

/// Open interval of admissible `θ = Nτ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeasibleWindow {
    pub lower: f64,
    pub upper: f64,
}

impl FeasibleWindow {
    pub fn contains(&self, theta: f64) -> bool {
        theta > self.lower && theta < self.upper
    }

    /// Inside the window and at least [`ENDPOINT_GUARD`] away from both ends.
    pub fn contains_guarded(&self, theta: f64) -> bool {
        theta > self.lower + ENDPOINT_GUARD && theta < self.upper - ENDPOINT_GUARD
    }
}

pub fn feasible_window(sign: SignB) -> FeasibleWindow {
    let quadratic_edge = (1.0f64 / 3.0).sqrt().acos(); // cos²θ = 1/3
    let sextic_edge = (6.0f64 / 23.0).sqrt().acos(); // cos²θ = 6/23
    match sign {
        SignB::Positive => FeasibleWindow {
            lower: std::f64::consts::PI - sextic_edge,
            upper: std::f64::consts::PI - quadratic_edge,
        },
        SignB::Negative => FeasibleWindow {
            lower: quadratic_edge,
            upper: sextic_edge,
        },
    }
}

fn sextic_factor(theta: f64) -> f64 {
    23.0 * theta.cos().powi(2) - 6.0
}

/// Value of `2k + 3` implied by a pair `(θ, τ)`.
pub fn k_of_theta_tau(theta: f64, tau: f64) -> Result<f64> {
    if !(tau > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "tau must be positive, got {tau}"
        )));
    }
    let g = sextic_factor(theta);
    if !(g > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "23 cos²θ − 6 = {g} is not positive at θ = {theta}"
        )));
    }
    let c2 = theta.cos().powi(2);
    Ok(-1.5 * 5f64.sqrt() * theta.sin() * (18.0 * c2 - 6.0) / (tau * g.powf(1.5)))
}

fn check_real_branch(tau: f64, big_n: u32) -> Result<f64> {
    if !(tau > 0.0) || big_n == 0 {
        return Err(Error::InvalidParameter(format!(
            "need tau > 0 and N > 0, got tau = {tau}, N = {big_n}"
        )));
    }
    let theta = f64::from(big_n) * tau;
    if !(theta.sin() > 0.0) || !(sextic_factor(theta) > 0.0) {
        let w = feasible_window(if theta.cos() < 0.0 {
            SignB::Positive
        } else {
            SignB::Negative
        });
        return Err(Error::Infeasible {
            theta,
            lower: w.lower,
            upper: w.upper,
        });
    }
    Ok(theta)
}

/// `A` from the x⁶ equation with `a = 1`.
pub fn amplitude_a(tau: f64, big_n: u32) -> Result<f64> {
    let theta = check_real_branch(tau, big_n)?;
    Ok((6.0 * 5f64.sqrt()).sqrt() * tau.sin().powi(2)
        / (tau.powf(1.5) * theta.sin().sqrt() * sextic_factor(theta).powf(0.25)))
}

/// `b` from the x⁴ equation with `a = 1`; its sign is opposite to `cos Nτ`.
pub fn shape_b(tau: f64, big_n: u32) -> Result<f64> {
    let theta = check_real_branch(tau, big_n)?;
    Ok(
        -(7.5 * 5f64.sqrt()).sqrt() * theta.sin().sqrt() * theta.cos()
            / (tau.sqrt() * sextic_factor(theta).powf(0.75)),
    )
}

/// Root `θ` of `k_of_theta_tau(θ, θ/N) = 2k + 3` inside the window.
pub fn solve_theta(big_n: u32, k: u32, sign: SignB) -> Result<f64> {
    if big_n == 0 {
        return Err(Error::InvalidParameter("N must be positive".into()));
    }
    let window = feasible_window(sign);
    let target = f64::from(2 * k + 3);
    let n = f64::from(big_n);
    let f = |theta: f64| k_of_theta_tau(theta, theta / n).map(|v| v - target);
    let no_root = || Error::NoRootInWindow {
        big_n,
        target: 2 * k + 3,
    };
    let mut lo = window.lower + ENDPOINT_GUARD;
    let mut hi = window.upper - ENDPOINT_GUARD;
    // τ = θ/N must be a valid phase deformation
    if hi / n >= std::f64::consts::PI {
        return Err(no_root());
    }
    let mut f_lo = f(lo)?;
    let f_hi = f(hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(no_root());
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let f_mid = f(mid)?;
        if f_mid.abs() < ROOT_TOLERANCE || mid == lo || mid == hi {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NoConvergence(format!(
        "bisection for N = {big_n}, 2k+3 = {target} did not reach |f| < {ROOT_TOLERANCE:e}"
    )))
}

/// `τ` solving the quadratic-coefficient condition for band parameter `N`.
pub fn solve_tau(big_n: u32, k: u32, sign: SignB) -> Result<f64> {
    Ok(solve_theta(big_n, k, sign)? / f64::from(big_n))
}

/// How the matched `θ` is turned into a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MatchOptions {
    /// Round the root `θ = Nτ` to this many decimals before assembling
    /// `τ = θ/N`, `A`, `b` and `E₀′`. `None` keeps the exact root.
    ///
    /// The four classic published parameter sets (N = 151, 325, 399, 61) are
    /// reproduced with `Some(3)`.
    pub theta_decimals: Option<u32>,
}

impl MatchOptions {
    pub fn exact() -> Self {
        Self {
            theta_decimals: None,
        }
    }

    pub fn rounded(decimals: u32) -> Self {
        Self {
            theta_decimals: Some(decimals),
        }
    }
}

/// Relative residuals of the x², x⁴, x⁶ coefficient equations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub quadratic: f64,
    pub quartic: f64,
    pub sextic: f64,
}

impl Residuals {
    pub fn max(&self) -> f64 {
        self.quadratic.max(self.quartic).max(self.sextic)
    }
}

/// A solved correspondence between an SU_q(1,1) spectrum and a QES potential.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatchSolution {
    pub spec: QesPotentialSpec,
    pub big_n: u32,
    pub tau: f64,
    pub amplitude: f64,
    pub e0_prime: f64,
    pub theta: f64,
    /// Sextic truncation of the WKB equivalent potential (`V_min = 0`).
    pub potential: PotentialPolynomial,
    pub residuals: Residuals,
}

impl MatchSolution {
    pub fn spectrum(&self) -> SuqSpectrumParams {
        SuqSpectrumParams {
            e0_prime: self.e0_prime,
            amplitude: self.amplitude,
            tau: self.tau,
            band: self.big_n,
        }
    }

    pub fn b(&self) -> f64 {
        self.spec.b
    }

    pub fn qes_polynomial(&self) -> PotentialPolynomial {
        qes_to_polynomial(&self.spec)
    }

    /// `|c_i(WKB-EP) − c_i(QES)| / |c_i(QES)|` for x², x⁴, x⁶.
    pub fn round_trip(&self) -> [f64; 3] {
        let q = self.qes_polynomial().coefficients();
        let w = self.potential.coefficients();
        [0, 1, 2].map(|i| (w[i] - q[i]).abs() / q[i].abs())
    }
}

fn rel(lhs: f64, rhs: f64) -> f64 {
    let scale = lhs.abs().max(rhs.abs());
    if scale == 0.0 {
        0.0
    } else {
        (lhs - rhs).abs() / scale
    }
}

/// Residuals of the three coefficient equations for `a = 1` and given `k`.
pub fn coefficient_residuals(k: u32, b: f64, amplitude: f64, tau: f64, big_n: u32) -> Residuals {
    let theta = f64::from(big_n) * tau;
    let (s, sn, c) = (tau.sin(), theta.sin(), theta.cos());
    let a = amplitude;
    let k3 = f64::from(2 * k + 3);
    let rhs2 = a * a / 2.0 * tau.powi(2) * sn * sn / s.powi(4);
    let rhs4 = -2.0 / 3.0 * a.powi(3) * tau.powi(4) * sn * sn * c / s.powi(6);
    let rhs6 = 2.0 / 45.0 * a.powi(4) * tau.powi(6) * sn * sn * (23.0 * c * c - 6.0) / s.powi(8);
    Residuals {
        quadratic: rel(2.0 * (b * b - k3), rhs2),
        quartic: rel(8.0 * b, rhs4),
        sextic: rel(8.0, rhs6),
    }
}

fn round_to(x: f64, decimals: u32) -> f64 {
    let scale = 10f64.powi(decimals as i32);
    (x * scale).round() / scale
}

/// Solve the correspondence for quasi-exact sector `(n, r)` at band parameter `N`.
pub fn match_qes(
    n: u32,
    r: u32,
    big_n: u32,
    sign: SignB,
    opts: &MatchOptions,
) -> Result<MatchSolution> {
    if r > 1 {
        return Err(Error::InvalidParameter(format!(
            "r must be 0 or 1, got {r}"
        )));
    }
    let k = 2 * n + r;
    // the spectrum must reach the highest quasi-exact level 2n + r
    if ((big_n / 2) as usize) < k as usize {
        return Err(Error::NoRootInWindow {
            big_n,
            target: 2 * k + 3,
        });
    }
    let mut theta = solve_theta(big_n, k, sign)?;
    if let Some(d) = opts.theta_decimals {
        theta = round_to(theta, d);
        let w = feasible_window(sign);
        if !w.contains_guarded(theta) {
            return Err(Error::Infeasible {
                theta,
                lower: w.lower,
                upper: w.upper,
            });
        }
    }
    let tau = theta / f64::from(big_n);
    let amplitude = amplitude_a(tau, big_n)?;
    let b = shape_b(tau, big_n)?;
    let e0_prime = e0_prime_for_zero_vmin(amplitude, tau, big_n);
    let spectrum = SuqSpectrumParams::new(e0_prime, amplitude, tau, big_n)?;
    let mut potential = wkbep_series(&spectrum)?;
    // V_min is zero by construction; drop the rounding noise
    potential.vmin = 0.0;
    Ok(MatchSolution {
        spec: QesPotentialSpec::new(1.0, b, n, r)?,
        big_n,
        tau,
        amplitude,
        e0_prime,
        theta,
        potential,
        residuals: coefficient_residuals(k, b, amplitude, tau, big_n),
    })
}

/// All `N` in `range` admitting a match, ordered by `N`.
pub fn scan_n(
    n: u32,
    r: u32,
    sign: SignB,
    range: RangeInclusive<u32>,
    opts: &MatchOptions,
) -> Vec<MatchSolution> {
    range
        .into_par_iter()
        .filter_map(|big_n| match_qes(n, r, big_n, sign, opts).ok())
        .collect()
}

/// Outcome of trying to match the undeformed (Pöschl–Teller) series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MptReport {
    pub k: u32,
    /// `A` from the x⁶ equation.
    pub amplitude: f64,
    /// `b` forced by the x⁴ equation; negative for every `k`.
    pub b_from_quartic: f64,
    /// Relative violation of the x² equation at `b_from_quartic`.
    pub quadratic_violation: f64,
    /// `b` from the x² equation (the branch closest to the x⁴ requirement).
    pub b_from_quadratic: f64,
    /// Relative violation of the x⁴ equation at `b_from_quadratic`.
    pub quartic_violation: f64,
    /// A Pöschl–Teller quartic term is negative, so it cannot match `b > 0`.
    pub quartic_sign_conflict: bool,
}

impl MptReport {
    /// Smallest violation achievable by either way of fixing `b`.
    pub fn best_violation(&self) -> f64 {
        self.quadratic_violation.min(self.quartic_violation)
    }

    pub fn feasible(&self) -> bool {
        self.best_violation() < 1e-8
    }
}

/// Try to match `(A/4) u² [1 − 2/3 u² + 17/45 u⁴]`, `u² = 2A x²`, onto the
/// QES family with `a = 1`. There is one free parameter for three equations.
pub fn attempt_mpt_match(k: u32) -> MptReport {
    let k3 = f64::from(2 * k + 3);
    // x⁶: (A/4) β₆ (2A)³ = 8
    let amplitude = (8.0 / (2.0 * MPT_BRACKET[2])).powf(0.25);
    let a = amplitude;
    let c2 = a / 4.0 * 2.0 * a;
    let c4 = a / 4.0 * MPT_BRACKET[1] * (2.0 * a).powi(2);
    let b_from_quartic = c4 / 8.0;
    let quadratic_violation = (2.0 * (b_from_quartic.powi(2) - k3) - c2).abs() / c2.abs();
    let b_abs = (k3 + c2 / 2.0).sqrt();
    let b_from_quadratic = if c4 < 0.0 { -b_abs } else { b_abs };
    let quartic_violation = (8.0 * b_from_quadratic - c4).abs() / c4.abs();
    MptReport {
        k,
        amplitude,
        b_from_quartic,
        quadratic_violation,
        b_from_quadratic,
        quartic_violation,
        quartic_sign_conflict: c4 < 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_endpoints_satisfy_their_equations() {
        for sign in [SignB::Positive, SignB::Negative] {
            let w = feasible_window(sign);
            let ends = [w.lower.cos().powi(2), w.upper.cos().powi(2)];
            let (sextic, quadratic) = match sign {
                SignB::Positive => (ends[0], ends[1]),
                SignB::Negative => (ends[1], ends[0]),
            };
            assert!((sextic - 6.0 / 23.0).abs() < 1e-12);
            assert!((quadratic - 1.0 / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn k_vanishes_at_quadratic_edge() {
        let w = feasible_window(SignB::Positive);
        assert!(k_of_theta_tau(w.upper, 0.01).unwrap().abs() < 1e-12);
        assert!(k_of_theta_tau(w.lower - 1e-3, 0.01).is_err());
    }

    #[test]
    fn k_positive_in_positive_window() {
        let w = feasible_window(SignB::Positive);
        for i in 1..100 {
            let theta = w.lower + (w.upper - w.lower) * f64::from(i) / 100.0;
            assert!(k_of_theta_tau(theta, 0.01).unwrap() > 0.0);
        }
    }

    #[test]
    fn rejects_infeasible_pairs() {
        // θ = 1.2: 23 cos²θ − 6 < 0
        assert!(amplitude_a(0.012, 100).is_err());
        assert!(shape_b(0.012, 100).is_err());
        // θ = 4.0: sin θ < 0
        assert!(amplitude_a(0.04, 100).is_err());
        assert!(amplitude_a(0.01, 100).is_ok());
    }

    #[test]
    fn mpt_sign_conflict() {
        let r = attempt_mpt_match(2);
        assert!(r.quartic_sign_conflict);
        assert!(r.b_from_quartic < 0.0);
        assert!(!r.feasible());
    }
}
