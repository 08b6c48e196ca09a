use suq_qes::matcher::{match_qes, MatchOptions, SignB};
use suq_qes::oracle::*;
use suq_qes::potential::PotentialPolynomial;
use suq_qes::qes::{qes_levels, qes_to_polynomial, QesPotentialSpec};
use suq_qes::spectra::suq11_level;

fn harmonic() -> PotentialPolynomial {
    PotentialPolynomial::new(0.0, 0.5, 0.0, 0.0)
}

#[test]
fn harmonic_refinement() {
    let grid = GridSpec::new(10.0, 1e-3, 3).unwrap();
    let raw = solve_bound_states(&harmonic(), &grid).unwrap();
    let refined = refine(&harmonic(), &grid, 3).unwrap();
    assert!((refined.energies[0] - 0.5).abs() < 1e-8);
    for (j, (r, e)) in refined.energies.iter().zip(&raw.energies).enumerate() {
        let exact = j as f64 + 0.5;
        assert!((r - exact).abs() * 10.0 <= (e - exact).abs(), "level {j}");
    }
}

#[test]
fn walls_relax_monotonically() {
    let mut prev = [f64::INFINITY; 3];
    for l in [6.0, 8.0, 10.0] {
        let grid = GridSpec::new(l, 1e-2, 3).unwrap().with_margin(1.0);
        let r = solve_bound_states(&harmonic(), &grid).unwrap();
        for (p, e) in prev.iter_mut().zip(&r.energies) {
            // strictly by the confinement shift, up to bisection resolution
            assert!(*e <= *p + 1e-11);
            *p = *e;
        }
    }
}

#[test]
fn single_wells_alternate_parity() {
    for poly in [
        PotentialPolynomial::new(0.0, 303.02, 100.71, 8.0),
        PotentialPolynomial::new(1.0, 2.0, 0.0, 0.3),
        PotentialPolynomial::new(0.0, 0.0, 1.0, 0.0),
    ] {
        let grid = GridSpec::auto(&poly, 8, 2e-3).unwrap();
        let r = solve_bound_states(&poly, &grid).unwrap();
        for (j, p) in r.parities.iter().enumerate() {
            assert_eq!(
                *p,
                if j % 2 == 0 {
                    Parity::Even
                } else {
                    Parity::Odd
                }
            );
        }
        assert!(r.energies.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn quasi_exact_n1_levels() {
    let poly = qes_to_polynomial(&QesPotentialSpec::new(1.0, 12.589097, 1, 0).unwrap());
    let grid = GridSpec::auto(&poly, 4, DEFAULT_STEP).unwrap();
    let r = solve_bound_states(&poly, &grid).unwrap();
    let even = r.of_parity(Parity::Even);
    assert!((even[0] - 12.4307).abs() < 1e-2);
    assert!((even[1] - 63.1039).abs() < 1e-2);
}

#[test]
fn double_well_side_levels() {
    let poly = qes_to_polynomial(&QesPotentialSpec::new(1.0, -12.108743, 1, 0).unwrap());
    let grid = GridSpec::auto(&poly, 4, DEFAULT_STEP).unwrap();
    let r = solve_bound_states(&poly, &grid).unwrap();
    let even = r.of_parity(Parity::Even);
    assert!((even[0] + 60.7083).abs() < 1e-2);
    assert!((even[1] + 11.9441).abs() < 1e-2);
    // tunnelling partners are degenerate to far below the flag threshold
    assert!(r.has_degeneracy_warning());
    assert_eq!(r.parities.iter().filter(|p| **p == Parity::Odd).count(), 2);
}

#[test]
fn quasi_exact_n3_refined() {
    let poly = qes_to_polynomial(&QesPotentialSpec::new(1.0, 18.469158, 3, 0).unwrap());
    let grid = GridSpec::auto(&poly, 8, DEFAULT_STEP).unwrap();
    let r = refine(&poly, &grid, 8).unwrap();
    let even = r.of_parity(Parity::Even);
    for (e, want) in even.iter().zip([18.1429, 91.3783, 165.913, 241.703]) {
        assert!((e - want).abs() < 2e-2, "{e} vs {want}");
    }
}

#[test]
fn odd_sector_against_quasi_exact() {
    for (b, n) in [(6.0, 2), (15.0, 3)] {
        let spec = QesPotentialSpec::new(1.0, b, n, 1).unwrap();
        let poly = qes_to_polynomial(&spec);
        let count = 2 * spec.dim();
        let grid = GridSpec::auto(&poly, count, DEFAULT_STEP).unwrap();
        let r = refine(&poly, &grid, count).unwrap();
        let odd = r.of_parity(Parity::Odd);
        for (o, q) in odd.iter().zip(qes_levels(&spec).unwrap()) {
            assert!((o - q).abs() < 1e-4 * q.abs().max(1.0), "{o} vs {q}");
        }
    }
}

#[test]
fn matched_even_levels_agree_with_quasi_exact() {
    for (n, big_n) in [(1, 151), (3, 325)] {
        let m = match_qes(n, 0, big_n, SignB::Positive, &MatchOptions::exact()).unwrap();
        let exact = qes_levels(&m.spec).unwrap();
        let count = 2 * exact.len();
        let grid = GridSpec::auto(&m.potential, count, DEFAULT_STEP).unwrap();
        let r = refine(&m.potential, &grid, count).unwrap();
        for (j, (o, q)) in r.of_parity(Parity::Even).iter().zip(&exact).enumerate() {
            let est = r.convergence_estimate[2 * j];
            assert!((o - q).abs() < est + 1e-2, "{o} vs {q}");
        }
    }
}

#[test]
fn n9_oracle_against_suq_spectrum() {
    let m = match_qes(9, 0, 399, SignB::Positive, &MatchOptions::exact()).unwrap();
    let grid = GridSpec::auto(&m.potential, 19, 5e-4).unwrap();
    let r = refine(&m.potential, &grid, 19).unwrap();
    let spectrum = m.spectrum();
    let worst = r
        .of_parity(Parity::Even)
        .iter()
        .enumerate()
        .map(|(j, e)| (e - suq11_level(2 * j, &spectrum).unwrap()).abs())
        .fold(0.0, f64::max);
    assert!(worst < 1.1, "{worst}");
}

#[test]
fn failure_report() {
    let rep = failure_demo(DEFAULT_STEP).unwrap();
    assert!((rep.suq[0] - 11.7456).abs() < 5e-3);
    assert!((rep.suq[1] - 57.3764).abs() < 5e-3);
    assert!((rep.qes[0] + 60.7083).abs() < 1e-3);
    assert!((rep.qes[1] + 11.9441).abs() < 1e-3);
    assert!(rep.oracle_matches_qes);
    assert!(rep.discrepancy_detected);
    assert!((rep.oracle_even[0] - rep.suq[0]).abs() > 70.0);
    // walls far enough out that the box shift is below the step error
    for (o, q) in rep.oracle_even.iter().zip(&rep.qes) {
        assert!((o - q).abs() < 1e-6, "{o} vs {q}");
    }
}
