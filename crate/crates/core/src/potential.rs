use serde::{Deserialize, Serialize};

/// Even sextic polynomial `V(x) = vmin + c2 x² + c4 x⁴ + c6 x⁶` (`ħ = m = 1`).
///
/// This is the common representation shared by the WKB equivalent
/// potential, the quasi-exactly soluble family and the Schrödinger oracle.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct PotentialPolynomial {
    pub vmin: f64,
    pub c2: f64,
    pub c4: f64,
    pub c6: f64,
}

/// `prefactor · (x² + ratio4 x⁴ + ratio6 x⁶)`, the way such potentials are
/// usually quoted.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactoredForm {
    pub prefactor: f64,
    pub ratio4: f64,
    pub ratio6: f64,
}

impl PotentialPolynomial {
    pub fn new(vmin: f64, c2: f64, c4: f64, c6: f64) -> Self {
        Self { vmin, c2, c4, c6 }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let y = x * x;
        self.vmin + y * (self.c2 + y * (self.c4 + y * self.c6))
    }

    pub fn factored(&self) -> FactoredForm {
        FactoredForm {
            prefactor: self.c2,
            ratio4: self.c4 / self.c2,
            ratio6: self.c6 / self.c2,
        }
    }

    pub fn coefficients(&self) -> [f64; 3] {
        [self.c2, self.c4, self.c6]
    }

    /// Confining at both ends.
    pub fn is_confining(&self) -> bool {
        self.c6 > 0.0 || (self.c6 == 0.0 && (self.c4 > 0.0 || (self.c4 == 0.0 && self.c2 > 0.0)))
    }

    /// Global minimum over the real line (the potential must be confining).
    pub fn global_min(&self) -> f64 {
        // V'(x) = 2x (c2 + 2 c4 y + 3 c6 y²) with y = x²
        let mut best = self.vmin;
        let (a, b, c) = (3.0 * self.c6, 2.0 * self.c4, self.c2);
        let mut roots = Vec::new();
        if a != 0.0 {
            let disc = b * b - 4.0 * a * c;
            if disc >= 0.0 {
                let sq = disc.sqrt();
                roots.push((-b + sq) / (2.0 * a));
                roots.push((-b - sq) / (2.0 * a));
            }
        } else if b != 0.0 {
            roots.push(-c / b);
        }
        for y in roots.into_iter().filter(|&y| y > 0.0) {
            best = best.min(self.eval(y.sqrt()));
        }
        best
    }
}
