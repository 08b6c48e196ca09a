use suq_qes::matcher::*;
use suq_qes::published;
use suq_qes::Error;

fn close(got: f64, want: f64, tol: f64) {
    assert!((got - want).abs() <= tol, "got {got}, want {want} ± {tol}");
}

#[test]
fn windows() {
    let pos = feasible_window(SignB::Positive);
    close(pos.lower, 2.1069, 5e-5);
    close(pos.upper, 2.1863, 5e-5);
    let neg = feasible_window(SignB::Negative);
    close(neg.lower, 0.9553, 5e-5);
    close(neg.upper, 1.0347, 5e-5);
}

#[test]
fn k_near_published_theta() {
    let tau = 0.0144503;
    let k = k_of_theta_tau(151.0 * tau, tau).unwrap();
    assert!((k - 7.0).abs() < 0.02 * 7.0, "{k}");
}

#[test]
fn solve_tau_cases() {
    close(solve_tau(151, 2, SignB::Positive).unwrap(), 0.0144503, 1e-6);
    close(
        solve_tau(325, 6, SignB::Positive).unwrap(),
        0.00671384,
        1e-7,
    );
    close(solve_tau(61, 2, SignB::Negative).unwrap(), 0.0157377, 1e-6);
}

#[test]
fn solved_tau_satisfies_quadratic_condition() {
    for (n, k, sign) in [
        (151, 2, SignB::Positive),
        (325, 6, SignB::Positive),
        (399, 18, SignB::Positive),
        (61, 2, SignB::Negative),
    ] {
        let tau = solve_tau(n, k, sign).unwrap();
        let theta = f64::from(n) * tau;
        assert!(feasible_window(sign).contains(theta));
        let v = k_of_theta_tau(theta, tau).unwrap();
        assert!((v - f64::from(2 * k + 3)).abs() < 1e-10, "{v}");
    }
}

#[test]
fn amplitude_cases() {
    close(amplitude_a(0.0144503, 151).unwrap(), 0.4343473, 1e-5);
    close(amplitude_a(0.00545864, 399).unwrap(), 0.2703882, 1e-5);
    close(amplitude_a(0.0157377, 61).unwrap(), 0.4538508, 1e-5);
}

#[test]
fn shape_cases() {
    // b moves by ~2e4 per unit τ, so the printed six-digit τ is too coarse
    // for a 1e-4 check; use τ = θ/N with the three-decimal θ it abbreviates.
    close(shape_b(2.182 / 151.0, 151).unwrap(), 12.589097, 1e-4);
    close(shape_b(2.182 / 325.0, 325).unwrap(), 18.469158, 1e-4);
    close(shape_b(0.0157377, 61).unwrap(), -12.108743, 1e-4);
    close(shape_b(0.96 / 61.0, 61).unwrap(), -12.108743, 1e-4);
}

#[test]
fn sign_of_b_follows_cos_theta() {
    for sign in [SignB::Positive, SignB::Negative] {
        for m in scan_n(1, 0, sign, 40..=200, &MatchOptions::exact()) {
            assert_eq!(m.b() > 0.0, m.theta.cos() < 0.0);
            assert!(m.amplitude > 0.0 && m.tau > 0.0 && m.theta.sin() > 0.0);
        }
    }
}

#[test]
fn exact_match_invariants() {
    for c in published::ALL {
        let m = match_qes(c.n, c.r, c.big_n, c.sign, &MatchOptions::exact()).unwrap();
        assert!(m.residuals.max() < 1e-8, "{:?}", m.residuals);
        assert!(
            m.round_trip().iter().all(|r| *r < 1e-8),
            "{:?}",
            m.round_trip()
        );
        assert!(feasible_window(c.sign).contains(m.theta));
        let k = k_of_theta_tau(m.theta, m.tau).unwrap();
        assert!((k - f64::from(2 * c.k() + 3)).abs() < 1e-10);
        assert!(m.e0_prime > 0.0);
    }
}

#[test]
fn rounded_match_reproduces_published_tau_a_b() {
    for c in published::ALL {
        let m = match_qes(c.n, c.r, c.big_n, c.sign, &MatchOptions::rounded(3)).unwrap();
        close(m.tau, c.tau, 1e-7);
        close(m.amplitude, c.amplitude, 1e-5);
        close(m.b(), c.b, 1e-4);
        // the rounded set is no longer an exact root
        assert!(m.residuals.quadratic > 1e-6);
    }
}

#[test]
fn scan_contains_published_n() {
    let hits = scan_n(1, 0, SignB::Positive, 140..=160, &MatchOptions::exact());
    assert!(hits.iter().any(|m| m.big_n == 151));
    assert!(hits.windows(2).all(|w| w[0].big_n < w[1].big_n));
    let hits = scan_n(3, 0, SignB::Positive, 320..=330, &MatchOptions::exact());
    assert!(hits.iter().any(|m| m.big_n == 325));
    for m in &hits {
        assert!(feasible_window(SignB::Positive).contains(f64::from(m.big_n) * m.tau));
    }
}

#[test]
fn tiny_band_has_no_match() {
    assert!(matches!(
        match_qes(1, 0, 2, SignB::Positive, &MatchOptions::exact()),
        Err(Error::NoRootInWindow { big_n: 2, .. })
    ));
    assert!(scan_n(1, 0, SignB::Positive, 1..=3, &MatchOptions::exact()).is_empty());
}

#[test]
fn bisection_function_has_single_sign_change() {
    for c in published::ALL {
        let w = feasible_window(c.sign);
        let n = f64::from(c.big_n);
        let target = f64::from(2 * c.k() + 3);
        let samples: Vec<f64> = (1..2000)
            .map(|i| w.lower + (w.upper - w.lower) * f64::from(i) / 2000.0)
            .map(|th| k_of_theta_tau(th, th / n).unwrap() - target)
            .collect();
        let changes = samples
            .windows(2)
            .filter(|p| p[0].signum() != p[1].signum())
            .count();
        assert_eq!(changes, 1, "{}", c.label);
    }
}

#[test]
fn mpt_never_matches() {
    for k in 0..=19 {
        let r = attempt_mpt_match(k);
        assert!(r.best_violation() > 0.1, "k = {k}: {r:?}");
        assert!(!r.feasible());
    }
    // one free parameter: A is fixed by the x⁶ equation alone
    let (a, b) = (attempt_mpt_match(0), attempt_mpt_match(2));
    assert_eq!(a.amplitude, b.amplitude);
}
