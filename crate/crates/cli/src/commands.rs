//! One function per subcommand, each producing a [`Report`].

use serde_json::{json, Value};
use suq_qes::matcher::{
    attempt_mpt_match, feasible_window, match_qes, scan_n, MatchOptions, MatchSolution, SignB,
};
use suq_qes::oracle::{failure_demo, refine, solve_bound_states, GridSpec, Parity};
use suq_qes::published::{self, PublishedCase};
use suq_qes::qes::{qes_levels, QesPotentialSpec};
use suq_qes::spectra::{suq11_levels, SuqSpectrumParams};
use suq_qes::{Error, PotentialPolynomial, Result};

use crate::report::{Report, Table};

#[derive(Debug, Clone, Copy)]
pub struct OracleSettings {
    pub step: f64,
    pub tolerance: f64,
    pub margin: f64,
}

fn sign_str(sign: SignB) -> &'static str {
    sign.as_str()
}

fn opts_json(opts: &MatchOptions) -> Value {
    match opts.theta_decimals {
        Some(d) => json!({"theta_decimals": d}),
        None => json!({"theta_decimals": "exact"}),
    }
}

pub fn window(sign: SignB) -> Report {
    let w = feasible_window(sign);
    let mut table = Table::new(vec!["sign_b", "lower", "upper"]);
    table.push(vec![json!(sign_str(sign)), json!(w.lower), json!(w.upper)]);
    Report {
        command: "window",
        inputs: json!({"sign_b": sign_str(sign)}),
        outputs: json!({"lower": w.lower, "upper": w.upper}),
        provenance: json!({
            "lower": "sign condition of the x^6 coefficient, lowest admissible branch",
            "upper": "sign condition of the x^4 coefficient, lowest admissible branch",
        }),
        table,
    }
}

const MATCH_HEADER: [&str; 20] = [
    "n",
    "r",
    "N",
    "sign_b",
    "theta",
    "tau",
    "A",
    "b",
    "E0_prime",
    "vmin",
    "c2",
    "c4",
    "c6",
    "prefactor",
    "ratio4",
    "ratio6",
    "residual_x2",
    "residual_x4",
    "residual_x6",
    "k",
];

fn match_row(m: &MatchSolution, sign: SignB) -> Vec<Value> {
    let p = &m.potential;
    let f = p.factored();
    vec![
        json!(m.spec.n),
        json!(m.spec.r),
        json!(m.big_n),
        json!(sign_str(sign)),
        json!(m.theta),
        json!(m.tau),
        json!(m.amplitude),
        json!(m.b()),
        json!(m.e0_prime),
        json!(p.vmin),
        json!(p.c2),
        json!(p.c4),
        json!(p.c6),
        json!(f.prefactor),
        json!(f.ratio4),
        json!(f.ratio6),
        json!(m.residuals.quadratic),
        json!(m.residuals.quartic),
        json!(m.residuals.sextic),
        json!(m.spec.k()),
    ]
}

fn match_body(m: &MatchSolution) -> Value {
    let p = &m.potential;
    let f = p.factored();
    json!({
        "theta": m.theta,
        "tau": m.tau,
        "A": m.amplitude,
        "b": m.b(),
        "E0_prime": m.e0_prime,
        "k": m.spec.k(),
        "polynomial": {"vmin": p.vmin, "c2": p.c2, "c4": p.c4, "c6": p.c6},
        "factored": {"prefactor": f.prefactor, "ratio4": f.ratio4, "ratio6": f.ratio6},
        "residuals": {
            "x2": m.residuals.quadratic,
            "x4": m.residuals.quartic,
            "x6": m.residuals.sextic,
        },
    })
}

fn match_provenance() -> Value {
    json!({
        "theta": "N*tau, root of the x^2 coefficient condition inside the feasible window",
        "tau": "theta / N",
        "A": "x^6 coefficient condition",
        "b": "x^4 coefficient condition",
        "E0_prime": "zero potential minimum of the SU_q(1,1) spectrum",
        "polynomial": "WKB equivalent potential series through x^6",
        "residuals": "WKB-EP minus QES coefficients",
    })
}

pub fn match_cmd(n: u32, r: u32, big_n: u32, sign: SignB, opts: &MatchOptions) -> Result<Report> {
    let m = match_qes(n, r, big_n, sign, opts)?;
    let mut table = Table::new(MATCH_HEADER.to_vec());
    table.push(match_row(&m, sign));
    Ok(Report {
        command: "match",
        inputs: json!({"n": n, "r": r, "N": big_n, "sign_b": sign_str(sign), "options": opts_json(opts)}),
        outputs: match_body(&m),
        provenance: match_provenance(),
        table,
    })
}

pub fn scan(
    n: u32,
    r: u32,
    sign: SignB,
    from: u32,
    to: u32,
    opts: &MatchOptions,
) -> Result<Report> {
    if from > to {
        return Err(Error::InvalidParameter(format!(
            "empty range {from}..={to}"
        )));
    }
    let found = scan_n(n, r, sign, from..=to, opts);
    let mut table = Table::new(MATCH_HEADER.to_vec());
    for m in &found {
        table.push(match_row(m, sign));
    }
    let matches: Vec<Value> = found
        .iter()
        .map(|m| {
            let mut body = match_body(m);
            body["N"] = json!(m.big_n);
            body
        })
        .collect();
    Ok(Report {
        command: "scan",
        inputs: json!({"n": n, "r": r, "from": from, "to": to, "sign_b": sign_str(sign), "options": opts_json(opts)}),
        outputs: json!({"matches": matches}),
        provenance: match_provenance(),
        table,
    })
}

fn levels_table(energies: &[f64], labels: &[usize]) -> Table {
    let mut table = Table::new(vec!["index", "energy"]);
    for (l, e) in labels.iter().zip(energies) {
        table.push(vec![json!(l), json!(e)]);
    }
    table
}

pub fn levels_qes(a: f64, b: f64, n: u32, r: u32) -> Result<Report> {
    let spec = QesPotentialSpec::new(a, b, n, r)?;
    let energies = qes_levels(&spec)?;
    let labels: Vec<usize> = (0..energies.len()).map(|j| spec.level_label(j)).collect();
    Ok(Report {
        command: "levels",
        inputs: json!({"source": "qes", "a": a, "b": b, "n": n, "r": r}),
        outputs: json!({"indices": labels, "energies": energies}),
        provenance: json!({"energies": "eigenvalues of the QES tridiagonal matrix, states of parity (-1)^r"}),
        table: levels_table(&energies, &labels),
    })
}

pub fn levels_suq(
    e0: f64,
    amplitude: f64,
    tau: f64,
    big_n: u32,
    indices: &[usize],
) -> Result<Report> {
    let p = SuqSpectrumParams::new(e0, amplitude, tau, big_n)?;
    let energies = suq11_levels(indices, &p)?;
    Ok(Report {
        command: "levels",
        inputs: json!({"source": "suq", "E0_prime": e0, "A": amplitude, "tau": tau, "N": big_n, "indices": indices}),
        outputs: json!({"indices": indices, "energies": energies}),
        provenance: json!({"energies": "SU_q(1,1) anharmonic oscillator spectrum"}),
        table: levels_table(&energies, indices),
    })
}

pub fn levels_oracle(
    poly: PotentialPolynomial,
    count: usize,
    half_width: Option<f64>,
    refined: bool,
    s: OracleSettings,
) -> Result<Report> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    let grid = match half_width {
        Some(l) => GridSpec::new(l, s.step, count)?,
        None => GridSpec::auto(&poly, count, s.step)?,
    }
    .with_tolerance(s.tolerance)
    .with_margin(s.margin);
    let rep = if refined {
        refine(&poly, &grid, count)?
    } else {
        solve_bound_states(&poly, &grid)?
    };
    let parities: Vec<&str> = rep.parities.iter().map(|p| parity_str(*p)).collect();
    let mut table = Table::new(vec!["index", "energy", "parity", "estimate"]);
    for (i, e) in rep.energies.iter().enumerate() {
        table.push(vec![
            json!(i),
            json!(e),
            json!(parities[i]),
            json!(rep.convergence_estimate[i]),
        ]);
    }
    Ok(Report {
        command: "levels",
        inputs: json!({
            "source": "oracle",
            "vmin": poly.vmin, "c2": poly.c2, "c4": poly.c4, "c6": poly.c6,
            "count": count, "refine": refined,
        }),
        outputs: json!({
            "energies": rep.energies,
            "parities": parities,
            "convergence_estimate": rep.convergence_estimate,
            "near_degenerate": rep.near_degenerate,
            "grid": {"half_width": rep.grid.half_width, "step": rep.grid.step},
        }),
        provenance: json!({"energies": "three-point finite differences with Dirichlet walls"}),
        table,
    })
}

fn parity_str(p: Parity) -> &'static str {
    match p {
        Parity::Even => "even",
        Parity::Odd => "odd",
    }
}

/// Source of the SU_q(1,1) and QES parameters for `table1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableParams {
    Published,
    Matched,
}

pub fn table1(params: TableParams, opts: &MatchOptions) -> Result<Report> {
    let case: PublishedCase = published::N9_POSITIVE;
    let (spectrum, spec, source) = match params {
        TableParams::Published => (case.spectrum()?, case.qes_spec()?, json!("published")),
        TableParams::Matched => {
            let m = match_qes(case.n, case.r, case.big_n, case.sign, opts)?;
            (m.spectrum(), m.spec, json!({"matched": opts_json(opts)}))
        }
    };
    let indices: Vec<usize> = (0..spec.dim()).map(|j| spec.level_label(j)).collect();
    let approx = suq11_levels(&indices, &spectrum)?;
    let exact = qes_levels(&spec)?;
    let mut table = Table::new(vec!["n", "e_approx", "e_exact", "abs_diff"]);
    let mut rows = Vec::new();
    let mut max_diff = 0.0f64;
    for ((n, a), e) in indices.iter().zip(&approx).zip(&exact) {
        let d = (a - e).abs();
        max_diff = max_diff.max(d);
        table.push(vec![json!(n), json!(a), json!(e), json!(d)]);
        rows.push(json!({"n": n, "e_approx": a, "e_exact": e, "abs_diff": d}));
    }
    Ok(Report {
        command: "table1",
        inputs: json!({
            "params": source,
            "N": spectrum.band, "tau": spectrum.tau, "A": spectrum.amplitude,
            "E0_prime": spectrum.e0_prime, "b": spec.b, "n": spec.n, "r": spec.r,
        }),
        outputs: json!({"rows": rows, "max_abs_diff": max_diff}),
        provenance: json!({
            "e_approx": "SU_q(1,1) anharmonic oscillator spectrum at even n",
            "e_exact": "QES tridiagonal eigenvalues, n = 9, r = 0",
        }),
        table,
    })
}

pub fn failure(s: OracleSettings) -> Result<Report> {
    let f = failure_demo(s.step)?;
    let mut table = Table::new(vec!["source", "index", "energy"]);
    for (i, e) in f.oracle_even.iter().enumerate() {
        table.push(vec![json!("oracle_even"), json!(2 * i), json!(e)]);
    }
    for (i, e) in f.qes.iter().enumerate() {
        table.push(vec![json!("qes"), json!(2 * i), json!(e)]);
    }
    for (i, e) in f.suq.iter().enumerate() {
        table.push(vec![json!("suq"), json!(2 * i), json!(e)]);
    }
    let p = &f.potential;
    Ok(Report {
        command: "failure-demo",
        inputs: json!({
            "case": published::N1_NEGATIVE.label,
            "b": published::N1_NEGATIVE.b,
            "step": s.step,
        }),
        outputs: json!({
            "potential": {"vmin": p.vmin, "c2": p.c2, "c4": p.c4, "c6": p.c6},
            "oracle_levels": f.oracle.energies,
            "oracle_even": f.oracle_even,
            "qes": f.qes,
            "suq": f.suq,
            "oracle_matches_qes": f.oracle_matches_qes,
            "min_gap": f.min_gap,
            "discrepancy_detected": f.discrepancy_detected,
        }),
        provenance: json!({
            "potential": "QES double well for n = 1, r = 0, b < 0",
            "qes": "QES tridiagonal eigenvalues",
            "suq": "SU_q(1,1) spectrum at n = 0, 2",
            "oracle_even": "finite-difference even-parity levels",
        }),
        table,
    })
}

pub fn mpt(k_max: u32) -> Report {
    let mut table = Table::new(vec![
        "k",
        "A",
        "b_from_x4",
        "x2_violation",
        "b_from_x2",
        "x4_violation",
        "x4_sign_conflict",
        "feasible",
    ]);
    let mut rows = Vec::new();
    for k in 0..=k_max {
        let m = attempt_mpt_match(k);
        table.push(vec![
            json!(k),
            json!(m.amplitude),
            json!(m.b_from_quartic),
            json!(m.quadratic_violation),
            json!(m.b_from_quadratic),
            json!(m.quartic_violation),
            json!(m.quartic_sign_conflict),
            json!(m.feasible()),
        ]);
        rows.push(json!({
            "k": k,
            "A": m.amplitude,
            "b_from_x4": m.b_from_quartic,
            "x2_violation": m.quadratic_violation,
            "b_from_x2": m.b_from_quadratic,
            "x4_violation": m.quartic_violation,
            "x4_sign_conflict": m.quartic_sign_conflict,
            "feasible": m.feasible(),
        }));
    }
    Report {
        command: "mpt",
        inputs: json!({"k_max": k_max}),
        outputs: json!({"attempts": rows}),
        provenance: json!({"attempts": "undeformed (modified Poschl-Teller) series against the QES coefficients"}),
        table,
    }
}
