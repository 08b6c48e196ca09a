//! Quasi-exactly soluble sextic oscillator
//! `V(x) = 8a² x⁶ + 8ab x⁴ + 2[b² − (2k+3)a] x²`, `k = 2n + r`.
//!
//! Substituting `ψ = x^r P(x²) exp(−a x⁴ − b x²)` with `P` of degree `n`
//! into `H = −½ d²/dx² + V` closes on the span of `x^r x^{2j}`, `j = 0..=n`.
//! On the coefficients of `P` the Hamiltonian is the tridiagonal matrix
//!
//! ```text
//! M[j][j]   = b (4j + 2r + 1)
//! M[j][j+1] = −(j + 1)(2j + 2r + 1)
//! M[j][j−1] = 8a (j − 1 − n)
//! ```
//!
//! whose eigenvalues are the `n + 1` lowest levels of parity `(−1)^r`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::PotentialPolynomial;
use crate::tridiag::SymTridiagonal;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QesPotentialSpec {
    pub a: f64,
    pub b: f64,
    pub n: u32,
    pub r: u32,
}

impl QesPotentialSpec {
    pub fn new(a: f64, b: f64, n: u32, r: u32) -> Result<Self> {
        if !(a >= 0.0) || !a.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "a must be non-negative, got {a}"
            )));
        }
        if !b.is_finite() {
            return Err(Error::InvalidParameter("b must be finite".into()));
        }
        if r > 1 {
            return Err(Error::InvalidParameter(format!(
                "r must be 0 or 1, got {r}"
            )));
        }
        Ok(Self { a, b, n, r })
    }

    /// `k = 2n + r`.
    pub fn k(&self) -> u32 {
        2 * self.n + self.r
    }

    pub fn dim(&self) -> usize {
        self.n as usize + 1
    }

    /// Position of quasi-exact level `j` in the full spectrum.
    pub fn level_label(&self, j: usize) -> usize {
        2 * j + self.r as usize
    }
}

pub fn qes_to_polynomial(s: &QesPotentialSpec) -> PotentialPolynomial {
    let k = f64::from(s.k());
    PotentialPolynomial {
        vmin: 0.0,
        c2: 2.0 * (s.b * s.b - (2.0 * k + 3.0) * s.a),
        c4: 8.0 * s.a * s.b,
        c6: 8.0 * s.a * s.a,
    }
}

/// The (generally non-symmetric) tridiagonal quasi-exact matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QesMatrix {
    pub diag: Vec<f64>,
    /// `upper[j] = M[j][j+1]`
    pub upper: Vec<f64>,
    /// `lower[j] = M[j+1][j]`
    pub lower: Vec<f64>,
}

impl QesMatrix {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.dim();
        let mut m = vec![vec![0.0; n]; n];
        for j in 0..n {
            m[j][j] = self.diag[j];
            if j + 1 < n {
                m[j][j + 1] = self.upper[j];
                m[j + 1][j] = self.lower[j];
            }
        }
        m
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }

    /// Similar symmetric matrix `D M D⁻¹`; needs `upper[j]·lower[j] ≥ 0`.
    pub fn symmetrized(&self) -> Result<SymTridiagonal> {
        let off = self
            .upper
            .iter()
            .zip(&self.lower)
            .map(|(&u, &l)| {
                let p = u * l;
                if p < 0.0 {
                    Err(Error::InvalidParameter(format!(
                        "off-diagonal product {p} is negative; matrix is not symmetrizable"
                    )))
                } else {
                    Ok(-p.sqrt())
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SymTridiagonal::new(self.diag.clone(), off)
    }

    /// Coefficients of `det(E·I − M)`, ascending powers of `E` (monic).
    pub fn characteristic_polynomial(&self) -> Vec<f64> {
        // p_j(E) = (E − d_j) p_{j−1} − u_{j−1} l_{j−1} p_{j−2}
        let mut prev: Vec<f64> = vec![1.0];
        let mut cur: Vec<f64> = vec![-self.diag[0], 1.0];
        for j in 1..self.dim() {
            let mut next = vec![0.0; j + 2];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= self.diag[j] * c;
            }
            let coupling = self.upper[j - 1] * self.lower[j - 1];
            for (i, c) in prev.iter().enumerate() {
                next[i] -= coupling * c;
            }
            prev = std::mem::replace(&mut cur, next);
        }
        cur
    }
}

pub fn qes_matrix(s: &QesPotentialSpec) -> QesMatrix {
    let dim = s.dim();
    let n = f64::from(s.n);
    let r = f64::from(s.r);
    let diag = (0..dim)
        .map(|j| s.b * (4.0 * j as f64 + 2.0 * r + 1.0))
        .collect();
    let upper = (0..dim - 1)
        .map(|j| {
            let j = j as f64;
            -(j + 1.0) * (2.0 * j + 2.0 * r + 1.0)
        })
        .collect();
    // row j+1, column j: 8a((j+1) − 1 − n)
    let lower = (0..dim - 1).map(|j| 8.0 * s.a * (j as f64 - n)).collect();
    QesMatrix { diag, upper, lower }
}

/// The `n + 1` quasi-exact energies, ascending.
pub fn qes_levels(s: &QesPotentialSpec) -> Result<Vec<f64>> {
    let sym = qes_matrix(s).symmetrized()?;
    let levels = sym.eigenvalues()?;
    if levels.len() != s.dim() {
        return Err(Error::NoConvergence(format!(
            "expected {} quasi-exact levels, found {}",
            s.dim(),
            levels.len()
        )));
    }
    Ok(levels)
}

/// `ψ(x) = x^r (Σ c_j x^{2j}) exp(−a x⁴ − b x²)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QesEigenfunction {
    pub energy: f64,
    /// Normalized so that `max |c_j| = 1` and `c_0 > 0`.
    pub coefficients: Vec<f64>,
    pub a: f64,
    pub b: f64,
    pub r: u32,
}

impl QesEigenfunction {
    /// The polynomial factor `P(y)` at `y = x²`.
    pub fn polynomial(&self, y: f64) -> f64 {
        self.coefficients
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * y + c)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let y = x * x;
        x.powi(self.r as i32) * self.polynomial(y) * (-self.a * y * y - self.b * y).exp()
    }

    /// Sign changes of `P(x²)` on `0 < x ≤ x_max`, scanning `samples` points.
    pub fn count_nodes(&self, x_max: f64, samples: usize) -> usize {
        let mut count = 0;
        let mut last = self.polynomial(0.0).signum();
        for i in 1..=samples {
            let x = x_max * i as f64 / samples as f64;
            let v = self.polynomial(x * x);
            if v != 0.0 && v.signum() != last {
                count += 1;
                last = v.signum();
            }
        }
        count
    }
}

pub fn qes_eigenfunction(s: &QesPotentialSpec, level_index: usize) -> Result<QesEigenfunction> {
    if !(s.a > 0.0) {
        return Err(Error::InvalidParameter(
            "eigenfunctions need a > 0 to be normalizable".into(),
        ));
    }
    if level_index >= s.dim() {
        return Err(Error::LevelOutOfRange {
            index: level_index,
            n_max: s.n as usize,
        });
    }
    let m = qes_matrix(s);
    let sym = m.symmetrized()?;
    let levels = sym.eigenvalues()?;
    let energy = levels[level_index];
    let scale = levels.iter().fold(1.0f64, |acc, e| acc.max(e.abs()));
    let gap = [level_index.checked_sub(1), Some(level_index + 1)]
        .into_iter()
        .flatten()
        .filter_map(|i| levels.get(i))
        .map(|e| (e - energy).abs())
        .fold(f64::INFINITY, f64::min);
    if gap < 1e-10 * scale {
        return Err(Error::DegenerateEigenvalue {
            index: level_index,
            gap,
        });
    }
    let y = sym.eigenvector(energy)?;
    // c = D⁻¹ y with (d_{j+1}/d_j)² = upper_j / lower_j; work in logs
    let mut log_d = vec![0.0; s.dim()];
    for j in 0..s.dim() - 1 {
        log_d[j + 1] = log_d[j] + 0.5 * (m.upper[j] / m.lower[j]).ln();
    }
    let logs: Vec<f64> = y
        .iter()
        .zip(&log_d)
        .map(|(v, ld)| {
            if *v == 0.0 {
                f64::NEG_INFINITY
            } else {
                v.abs().ln() - ld
            }
        })
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut coefficients: Vec<f64> = y
        .iter()
        .zip(&logs)
        .map(|(v, l)| v.signum() * (l - top).exp())
        .collect();
    if coefficients[0] < 0.0 {
        coefficients.iter_mut().for_each(|c| *c = -*c);
    }
    Ok(QesEigenfunction {
        energy,
        coefficients,
        a: s.a,
        b: s.b,
        r: s.r,
    })
}
