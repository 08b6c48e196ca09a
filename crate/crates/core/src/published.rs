//! The four literature parameter sets for the SU_q(1,1) ↔ sextic QES
//! correspondence, exactly as they are usually quoted (7–8 significant
//! digits). They are not an exact root of the matching equations; they
//! coincide with `θ = Nτ` rounded to three decimals. Spectra quoted next to
//! them were evaluated from these rounded numbers, so reproducing those
//! spectra requires these values rather than a freshly solved match.

use serde::Serialize;

use crate::error::Result;
use crate::matcher::SignB;
use crate::qes::QesPotentialSpec;
use crate::spectra::SuqSpectrumParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PublishedCase {
    pub label: &'static str,
    pub n: u32,
    pub r: u32,
    pub big_n: u32,
    pub sign: SignB,
    pub tau: f64,
    pub amplitude: f64,
    pub b: f64,
    pub e0_prime: f64,
}

impl PublishedCase {
    pub fn spectrum(&self) -> Result<SuqSpectrumParams> {
        SuqSpectrumParams::new(self.e0_prime, self.amplitude, self.tau, self.big_n)
    }

    pub fn qes_spec(&self) -> Result<QesPotentialSpec> {
        QesPotentialSpec::new(1.0, self.b, self.n, self.r)
    }

    pub fn k(&self) -> u32 {
        2 * self.n + self.r
    }
}

pub const N1_POSITIVE: PublishedCase = PublishedCase {
    label: "n1-pos",
    n: 1,
    r: 0,
    big_n: 151,
    sign: SignB::Positive,
    tau: 0.0144503,
    amplitude: 0.4343473,
    b: 12.589097,
    e0_prime: 1636.8943,
};

pub const N3_POSITIVE: PublishedCase = PublishedCase {
    label: "n3-pos",
    n: 3,
    r: 0,
    big_n: 325,
    sign: SignB::Positive,
    tau: 0.00671384,
    amplitude: 0.2960795,
    b: 18.469158,
    e0_prime: 5168.941,
};

pub const N9_POSITIVE: PublishedCase = PublishedCase {
    label: "n9-pos",
    n: 9,
    r: 0,
    big_n: 399,
    sign: SignB::Positive,
    tau: 0.00545864,
    amplitude: 0.2703882,
    b: 21.275801,
    e0_prime: 7126.0336,
};

pub const N1_NEGATIVE: PublishedCase = PublishedCase {
    label: "n1-neg",
    n: 1,
    r: 0,
    big_n: 61,
    sign: SignB::Negative,
    tau: 0.0157377,
    amplitude: 0.4538508,
    b: -12.108743,
    e0_prime: 390.66689,
};

pub const ALL: [PublishedCase; 4] = [N1_POSITIVE, N3_POSITIVE, N9_POSITIVE, N1_NEGATIVE];

pub fn by_label(label: &str) -> Option<PublishedCase> {
    ALL.into_iter().find(|c| c.label == label)
}
