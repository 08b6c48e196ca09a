//! Deformed anharmonic oscillators with SU_q(1,1) symmetry and
//! quasi-exactly soluble sextic potentials.
//!
//! The WKB equivalent potential of the SU_q(1,1) anharmonic oscillator,
//! truncated at x⁶, can be made to coincide with a member of the
//! quasi-exactly soluble family
//! `V(x) = 8a² x⁶ + 8ab x⁴ + 2[b² − (2k+3)a] x²`. Once matched, the closed
//! form SU_q(1,1) spectrum approximates every level of the sextic
//! oscillator, including the ones the quasi-exact method cannot reach.
//!
//! ```
//! use suq_qes::matcher::{match_qes, MatchOptions, SignB};
//! use suq_qes::qes::qes_levels;
//! use suq_qes::spectra::suq11_level;
//!
//! let m = match_qes(1, 0, 151, SignB::Positive, &MatchOptions::exact()).unwrap();
//! let exact = qes_levels(&m.spec).unwrap();
//! let approx = suq11_level(0, &m.spectrum()).unwrap();
//! assert!((exact[0] - approx).abs() < 0.1);
//! ```
//!
//! Module map:
//!
//! - [`qnumber`]: q-numbers for real and phase deformations.
//! - [`spectra`]: q-oscillator and SU_q(1,1) spectra.
//! - [`wkbep`]: the WKB equivalent potential series.
//! - [`qes`]: the quasi-exactly soluble sextic family.
//! - [`matcher`]: solving the coefficient-matching system.
//! - [`oracle`]: an independent finite-difference Schrödinger solver.
//! - [`published`]: literature parameter sets.

// `!(x > 0.0)` style checks reject NaN along with the range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod matcher;
pub mod oracle;
pub mod potential;
pub mod published;
pub mod qes;
pub mod qnumber;
pub mod spectra;
pub mod tridiag;
pub mod wkbep;

pub use error::{Error, Result};
pub use potential::{FactoredForm, PotentialPolynomial};

// Compile and run the guide's code blocks with the crate's doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub struct Intro;
    #[doc = include_str!("../../../book/src/qnumbers.md")]
    pub struct QNumbers;
    #[doc = include_str!("../../../book/src/spectra.md")]
    pub struct Spectra;
    #[doc = include_str!("../../../book/src/wkbep.md")]
    pub struct Wkbep;
    #[doc = include_str!("../../../book/src/qes.md")]
    pub struct Qes;
    #[doc = include_str!("../../../book/src/matching.md")]
    pub struct Matching;
    #[doc = include_str!("../../../book/src/oracle.md")]
    pub struct Oracle;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
