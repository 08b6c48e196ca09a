//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, and
//! eigenvectors by inverse iteration.

use crate::error::{Error, Result};

const MAX_BISECTIONS: usize = 400;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidParameter(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("non-finite matrix entry".into()));
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn norm(&self) -> f64 {
        let (lo, hi) = self.bounds();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let pivmin = f64::EPSILON * self.norm();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.len() {
            if i > 0 {
                let e = self.off[i - 1];
                q = self.diag[i] - x - e * e / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based).
    pub fn eigenvalue(&self, k: usize) -> Result<f64> {
        let (lo, hi) = self.bounds();
        self.bisect(k, lo, hi)
    }

    fn bisect(&self, k: usize, mut lo: f64, mut hi: f64) -> Result<f64> {
        if k >= self.len() {
            return Err(Error::InvalidParameter(format!(
                "eigenvalue index {k} out of range for a {}x{} matrix",
                self.len(),
                self.len()
            )));
        }
        let abs_tol = f64::EPSILON * self.norm();
        let span = (hi - lo).abs().max(abs_tol);
        lo -= span * 1e-12 + abs_tol;
        hi += span * 1e-12 + abs_tol;
        for _ in 0..MAX_BISECTIONS {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) + abs_tol
                || mid == lo
                || mid == hi
            {
                return Ok(mid);
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Err(Error::NoConvergence(format!(
            "bisection for eigenvalue {k} did not terminate"
        )))
    }

    /// The `count` smallest eigenvalues, ascending.
    pub fn lowest(&self, count: usize) -> Result<Vec<f64>> {
        if count > self.len() {
            return Err(Error::InvalidParameter(format!(
                "requested {count} eigenvalues of a {}x{} matrix",
                self.len(),
                self.len()
            )));
        }
        let (glo, ghi) = self.bounds();
        let mut out: Vec<f64> = Vec::with_capacity(count);
        for k in 0..count {
            // eigenvalue k is no smaller than eigenvalue k-1
            let lo = out.last().copied().unwrap_or(glo).max(glo);
            out.push(self.bisect(k, lo, ghi)?);
        }
        Ok(out)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.lowest(self.len())
    }

    /// Unit eigenvector for the (already converged) eigenvalue `lambda`.
    pub fn eigenvector(&self, lambda: f64) -> Result<Vec<f64>> {
        let n = self.len();
        if n == 1 {
            return Ok(vec![1.0]);
        }
        let tiny = f64::EPSILON * self.norm();
        // deterministic start vector with components in every direction
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64)
            .collect();
        normalize(&mut v);
        for _ in 0..4 {
            let mut y = self.shifted_solve(lambda, &v, tiny);
            if y.iter().any(|x| !x.is_finite()) {
                return Err(Error::NoConvergence("inverse iteration overflowed".into()));
            }
            normalize(&mut y);
            v = y;
        }
        let residual = self.residual(lambda, &v);
        if residual > 1e-6 * self.norm().max(1.0) {
            return Err(Error::NoConvergence(format!(
                "inverse iteration residual {residual:e} at eigenvalue {lambda}"
            )));
        }
        Ok(v)
    }

    /// `‖(T − λ) v‖₂`.
    pub fn residual(&self, lambda: f64, v: &[f64]) -> f64 {
        let tv = self.apply(v);
        tv.iter()
            .zip(v)
            .map(|(a, b)| (a - lambda * b).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Thomas elimination of `(T − λ) y = rhs`, guarding tiny pivots.
    fn shifted_solve(&self, lambda: f64, rhs: &[f64], tiny: f64) -> Vec<f64> {
        let n = self.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let guard = |p: f64| {
            if p.abs() < tiny {
                if p < 0.0 {
                    -tiny
                } else {
                    tiny
                }
            } else {
                p
            }
        };
        let mut piv = guard(self.diag[0] - lambda);
        c[0] = self.off[0] / piv;
        d[0] = rhs[0] / piv;
        for i in 1..n {
            piv = guard(self.diag[i] - lambda - self.off[i - 1] * c[i - 1]);
            if i + 1 < n {
                c[i] = self.off[i] / piv;
            }
            d[i] = (rhs[i] - self.off[i - 1] * d[i - 1]) / piv;
        }
        let mut y = d;
        for i in (0..n - 1).rev() {
            y[i] -= c[i] * y[i + 1];
        }
        y
    }
}

fn normalize(v: &mut [f64]) {
    let scale = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if scale > 0.0 {
        v.iter_mut().for_each(|x| *x /= scale);
    }
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn discrete_laplacian_spectrum() {
        // eigenvalues of tridiag(-1, 2, -1) are 2 - 2 cos(kπ/(n+1))
        let n = 50;
        let t = SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap();
        let ev = t.eigenvalues().unwrap();
        for (k, e) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * PI / (n + 1) as f64).cos();
            assert!((e - exact).abs() < 1e-13, "{k}: {e} vs {exact}");
        }
    }

    #[test]
    fn eigenvectors_are_accurate() {
        let t = SymTridiagonal::new(vec![1.0, 3.0, -2.0, 5.0], vec![0.5, -1.5, 2.0]).unwrap();
        let ev = t.eigenvalues().unwrap();
        let trace: f64 = t.diag().iter().sum();
        assert!((ev.iter().sum::<f64>() - trace).abs() < 1e-12);
        for e in ev {
            let v = t.eigenvector(e).unwrap();
            assert!(t.residual(e, &v) < 1e-10);
        }
    }

    #[test]
    fn decoupled_blocks() {
        let t = SymTridiagonal::new(vec![3.0, 1.0, 2.0], vec![0.0, 0.0]).unwrap();
        assert_eq!(t.count_below(2.5), 2);
        let ev = t.eigenvalues().unwrap();
        for (got, want) in ev.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn shape_checked() {
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![], vec![]).is_err());
    }
}
