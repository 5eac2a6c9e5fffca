//! Truncated Maclaurin series and their extraction from point evaluations.
//!
//! Coefficients are indexed from zero: `coeffs[k]` is `f̂(k)`. The `H²` inner
//! product is the coefficient dot product with the second argument
//! conjugated, so `⟨f, K_α⟩ = f(α)` for the reproducing kernel
//! `K_α = 1/(1 - ᾱz)` whose coefficients are `ᾱᵏ`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

pub const DEFAULT_TRUNCATION: usize = 64;
pub const DEFAULT_RADIUS: f64 = 0.95;
pub const DEFAULT_CONFIRM_RADIUS: f64 = 0.90;
pub const DEFAULT_SAMPLES: usize = 4096;

/// Where a series' coefficients came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    Exact,
    Sampled { radius: f64, samples: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorSeries {
    coeffs: Vec<Complex64>,
    provenance: Provenance,
    error_bound: Option<Vec<f64>>,
}

impl TaylorSeries {
    pub fn exact(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ContractViolation(
                "a series needs at least one coefficient".into(),
            ));
        }
        Ok(TaylorSeries {
            coeffs,
            provenance: Provenance::Exact,
            error_bound: None,
        })
    }

    /// The series `1` truncated at `n` terms.
    pub fn one(n: usize) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); n.max(1)];
        c[0] = Complex64::new(1.0, 0.0);
        TaylorSeries {
            coeffs: c,
            provenance: Provenance::Exact,
            error_bound: None,
        }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Per-coefficient error estimate, present for dual-radius extractions.
    pub fn error_bound(&self) -> Option<&[f64]> {
        self.error_bound.as_deref()
    }

    /// Same series re-truncated (or zero-padded) to `n` terms.
    pub fn truncated(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n.max(1), Complex64::new(0.0, 0.0));
        let error_bound = self.error_bound.as_ref().map(|b| {
            let mut b = b.clone();
            b.resize(n.max(1), 0.0);
            b
        });
        TaylorSeries {
            coeffs,
            provenance: self.provenance,
            error_bound,
        }
    }
}

/// Product of two series truncated at their common length.
///
/// Coefficient `k` of the output depends only on coefficients `≤ k` of the
/// inputs.
pub fn cauchy_product(f: &TaylorSeries, g: &TaylorSeries) -> Result<TaylorSeries> {
    if f.len() != g.len() {
        return Err(Error::ContractViolation(format!(
            "cauchy product of series with lengths {} and {}",
            f.len(),
            g.len()
        )));
    }
    let coeffs = convolve_truncated(&f.coeffs, &g.coeffs);
    let provenance = match (f.provenance, g.provenance) {
        (Provenance::Exact, p) | (p, Provenance::Exact) => p,
        (p, _) => p,
    };
    Ok(TaylorSeries {
        coeffs,
        provenance,
        error_bound: None,
    })
}

pub(crate) fn convolve_truncated(f: &[Complex64], g: &[Complex64]) -> Vec<Complex64> {
    let n = f.len().min(g.len());
    (0..n).map(|k| (0..=k).map(|j| f[j] * g[k - j]).sum()).collect()
}

/// Maclaurin coefficients by discretising the Cauchy integral on `|z| = r`.
///
/// `coeffs[k] ≈ r⁻ᵏ·(1/M)·Σⱼ f(r·e^{2πij/M})·e^{-2πijk/M}`. The aliasing error
/// is `Σ_{m≥1} f̂(k+mM)·r^{mM}`; the recorded bound takes `|f̂(n)|` to be at
/// most the largest sampled modulus and adds an FFT rounding term that grows
/// like `r⁻ᵏ`.
pub fn coeffs_from_samples<F>(eval: F, r: f64, m: usize, n: usize) -> Result<TaylorSeries>
where
    F: Fn(Complex64) -> Complex64,
{
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::ContractViolation(format!("sampling radius {r} outside (0, 1)")));
    }
    if n == 0 || !m.is_power_of_two() || m < 4 * n {
        return Err(Error::ContractViolation(format!(
            "sample count {m} must be a power of two and at least 4·{n}"
        )));
    }

    let mut buf = Vec::with_capacity(m);
    let mut sup = 0.0f64;
    for j in 0..m {
        let z = Complex64::from_polar(r, 2.0 * PI * j as f64 / m as f64);
        let v = eval(z);
        if !(v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::SamplingFailure { point: z });
        }
        sup = sup.max(v.norm());
        buf.push(v);
    }
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);

    let aliasing = sup * r.powi(m as i32) / (1.0 - r.powi(m as i32));
    let rounding = 4.0 * (m as f64).log2() * f64::EPSILON * sup;
    let scale = 1.0 / m as f64;
    let mut coeffs = Vec::with_capacity(n);
    let mut bound = Vec::with_capacity(n);
    let mut rk = 1.0;
    for (k, v) in buf.iter().take(n).enumerate() {
        if k > 0 {
            rk *= r;
        }
        coeffs.push(v * (scale / rk));
        bound.push(aliasing + rounding / rk);
    }
    Ok(TaylorSeries {
        coeffs,
        provenance: Provenance::Sampled { radius: r, samples: m },
        error_bound: Some(bound),
    })
}

/// Settings for [`extract_dual_radius`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingConfig {
    pub n: usize,
    pub radius: f64,
    pub confirm_radius: f64,
    pub samples: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            n: DEFAULT_TRUNCATION,
            radius: DEFAULT_RADIUS,
            confirm_radius: DEFAULT_CONFIRM_RADIUS,
            samples: DEFAULT_SAMPLES,
        }
    }
}

impl SamplingConfig {
    pub fn with_n(n: usize) -> Self {
        SamplingConfig {
            n,
            samples: DEFAULT_SAMPLES.max((4 * n).next_power_of_two()),
            ..Default::default()
        }
    }
}

/// Extracts coefficients at two radii and cross-checks them.
///
/// Returns the series sampled at `config.radius`. A coefficient whose two
/// estimates differ by more than ten times the sum of their recorded bounds
/// means the evaluator is not analytic on the larger sampling disc.
pub fn extract_dual_radius<F>(eval: F, config: SamplingConfig) -> Result<TaylorSeries>
where
    F: Fn(Complex64) -> Complex64,
{
    let outer = coeffs_from_samples(&eval, config.radius, config.samples, config.n)?;
    let inner = coeffs_from_samples(&eval, config.confirm_radius, config.samples, config.n)?;
    let (ob, ib) = (outer.error_bound.as_ref().unwrap(), inner.error_bound.as_ref().unwrap());
    let mut bound = Vec::with_capacity(config.n);
    for k in 0..config.n {
        let discrepancy = (outer.coeffs[k] - inner.coeffs[k]).norm();
        let allowed = 10.0 * (ob[k] + ib[k]);
        if discrepancy > allowed {
            return Err(Error::NotAnalyticOnSamplingDisc {
                index: k,
                discrepancy,
                allowed,
            });
        }
        bound.push(ob[k].max(discrepancy));
    }
    Ok(TaylorSeries {
        error_bound: Some(bound),
        ..outer
    })
}

/// Horner evaluation of the truncated polynomial.
pub fn evaluate_series(f: &TaylorSeries, z: Complex64) -> Complex64 {
    f.coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

pub fn h2_norm(f: &TaylorSeries) -> f64 {
    f.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨f, g⟩ = Σ f̂(k)·conj(ĝ(k))` over the common length.
pub fn inner_product(f: &TaylorSeries, g: &TaylorSeries) -> Complex64 {
    f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a * b.conj()).sum()
}

/// Coefficients of the reproducing kernel `K_α(z) = 1/(1 - ᾱz)`.
pub fn kernel_vector(alpha: Complex64, n: usize) -> TaylorSeries {
    let ac = alpha.conj();
    let mut coeffs = Vec::with_capacity(n.max(1));
    let mut p = Complex64::new(1.0, 0.0);
    for _ in 0..n.max(1) {
        coeffs.push(p);
        p *= ac;
    }
    TaylorSeries {
        coeffs,
        provenance: Provenance::Exact,
        error_bound: None,
    }
}
