//! Structured-matrix laboratory.
//!
//! Builds the Toeplitz–Hessenberg GKK τ-counterexample family and its limit,
//! decides membership in the classical matrix classes (P, GKK, sign-symmetric,
//! totally nonnegative, oscillatory, M, ultrametric, diagonally dominant),
//! computes dense spectra, and runs the finite-section and bounded-invertibility
//! experiments built on top of them.
//!
//! Indices in the public API are 1-based wherever they name matrix rows or
//! columns ([`IndexSet`], witnesses); plain `Vec` storage is 0-based.

pub mod counterexample;
pub mod error;
pub mod exact;
pub mod invertibility;
pub mod matrix;
pub mod poly;
pub mod predicates;
pub mod samples;
pub mod spectral;
pub mod spline;
pub mod toeplitz;

pub use error::{Error, Result};
pub use matrix::{DenseMatrix, IndexSet, PNorm};
pub use num_complex::Complex64;
pub use predicates::ClassReport;
pub use spectral::SpectrumReport;
