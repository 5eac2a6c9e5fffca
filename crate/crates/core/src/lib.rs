//! Spectral analysis of composition operators `C_φ f = f∘φ` and weighted
//! composition operators `C_{g,φ} f = g·(f∘φ)` on the Hardy space `H²` of the
//! unit disc.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`] and [`mobius`]: truncated power series, Cauchy-integral
//!   coefficient extraction and linear fractional maps (including the Cayley
//!   transform `T(z) = (1+z)/(1-z)` onto the right half-plane).
//! - [`symbols`]: evaluatable self-maps and weights, the half-plane builder
//!   `φ = T⁻¹∘Φ∘T`, boundary jets and the catalogue of worked examples.
//! - [`classify`]: Denjoy–Wolff point, type, horocyclic test, the linear
//!   fractional approximant and orbit diagnostics.
//! - [`operators`]: finite sections of `C_φ`, `M_g`, `C_{g,φ}`, the backward
//!   shift and the linear fractional adjoint formula.
//! - [`linalg`]: dense complex eigenvalues, singular values and `σ_min`.
//! - [`spectra`]: closed-form spectral models, pseudospectra and the numerical
//!   cross-checks between the two.

pub mod classify;
pub mod error;
pub mod linalg;
pub mod mobius;
pub mod operators;
pub mod sampling;
pub mod serde_complex;
pub mod series;
pub mod spectra;
pub mod symbols;

pub use num_complex::Complex64;

pub use crate::error::{Error, Result};
