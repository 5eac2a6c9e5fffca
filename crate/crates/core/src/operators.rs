//! Finite sections in the monomial basis `{zᵏ}`: column `k` holds the
//! Maclaurin coefficients of the image of `zᵏ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::mobius::MobiusMap;
use crate::sampling::circle;
use crate::series::{convolve_truncated, kernel_vector};
use crate::symbols::{Symbol, Weight};

pub const MAX_N: usize = 256;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: CMatrix,
    label: String,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_N {
        return Err(Error::ContractViolation(format!(
            "truncation order {n} outside 1..={MAX_N}"
        )));
    }
    Ok(())
}

impl OperatorMatrix {
    pub fn new(entries: CMatrix, label: impl Into<String>) -> Result<Self> {
        if entries.nrows() != entries.ncols() {
            return Err(Error::ContractViolation("operator matrix must be square".into()));
        }
        check_n(entries.nrows())?;
        Ok(OperatorMatrix {
            entries,
            label: label.into(),
        })
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.nrows()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn adjoint(&self) -> OperatorMatrix {
        OperatorMatrix {
            entries: self.entries.adjoint(),
            label: format!("({})*", self.label),
        }
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.n();
        (0..n)
            .map(|j| (0..n.min(x.len())).map(|k| self.entries[(j, k)] * x[k]).sum())
            .collect()
    }

    pub fn minus(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.n() != other.n() {
            return Err(Error::ContractViolation("size mismatch".into()));
        }
        Ok(OperatorMatrix {
            entries: &self.entries - &other.entries,
            label: format!("{} - {}", self.label, other.label),
        })
    }

    pub fn times(&self, other: &OperatorMatrix) -> Result<OperatorMatrix> {
        if self.n() != other.n() {
            return Err(Error::ContractViolation("size mismatch".into()));
        }
        Ok(OperatorMatrix {
            entries: &self.entries * &other.entries,
            label: format!("{}·{}", self.label, other.label),
        })
    }

    /// Frobenius norm of the difference of the leading `m×m` blocks.
    pub fn block_distance(&self, other: &OperatorMatrix, m: usize) -> f64 {
        let m = m.min(self.n()).min(other.n());
        let mut s = 0.0;
        for k in 0..m {
            for j in 0..m {
                s += (self.entries[(j, k)] - other.entries[(j, k)]).norm_sqr();
            }
        }
        s.sqrt()
    }
}

/// Columns `g·φᵏ`, built by repeated truncated products.
pub(crate) fn weighted_from_coeffs(
    g: &[Complex64],
    phi: &[Complex64],
    n: usize,
    label: String,
) -> Result<OperatorMatrix> {
    check_n(n)?;
    let mut entries = CMatrix::zeros(n, n);
    let mut col = g[..n].to_vec();
    for k in 0..n {
        for j in 0..n {
            entries[(j, k)] = col[j];
        }
        if k + 1 < n {
            col = convolve_truncated(&col, phi);
        }
    }
    OperatorMatrix::new(entries, label)
}

fn symbol_coeffs(s: &Symbol, n: usize) -> Result<Vec<Complex64>> {
    let mut phi = s.maclaurin(n)?.into_coeffs();
    // keeps the section exactly triangular when φ(0) = 0
    if phi[0].norm() <= 1e-15 {
        phi[0] = ZERO;
    }
    Ok(phi)
}

/// `C_φ`, the weighted section with `g ≡ 1`.
pub fn composition_matrix(s: &Symbol, n: usize) -> Result<OperatorMatrix> {
    check_n(n)?;
    let phi = symbol_coeffs(s, n)?;
    let mut one = vec![ZERO; n];
    one[0] = ONE;
    weighted_from_coeffs(&one, &phi, n, format!("C[{}]", s.id()))
}

/// `C_{g,φ} f = g·(f∘φ)`.
pub fn weighted_composition_matrix(g: &Weight, s: &Symbol, n: usize) -> Result<OperatorMatrix> {
    check_n(n)?;
    let phi = symbol_coeffs(s, n)?;
    let gc = g.maclaurin(n)?.into_coeffs();
    weighted_from_coeffs(&gc, &phi, n, format!("C[{}; {}]", g.id(), s.id()))
}

/// Lower-triangular Toeplitz section of `M_g`.
pub fn multiplication_matrix(g: &Weight, n: usize) -> Result<OperatorMatrix> {
    check_n(n)?;
    let gc = g.maclaurin(n)?.into_coeffs();
    Ok(toeplitz_lower(&gc, n, format!("M[{}]", g.id())))
}

fn toeplitz_lower(c: &[Complex64], n: usize, label: String) -> OperatorMatrix {
    let entries = CMatrix::from_fn(n, n, |j, k| if j >= k { c[j - k] } else { ZERO });
    OperatorMatrix { entries, label }
}

pub fn backward_shift_matrix(n: usize) -> Result<OperatorMatrix> {
    check_n(n)?;
    let entries = CMatrix::from_fn(n, n, |j, k| if k == j + 1 { ONE } else { ZERO });
    OperatorMatrix::new(entries, "B")
}

pub fn forward_shift_matrix(n: usize) -> Result<OperatorMatrix> {
    check_n(n)?;
    let entries = CMatrix::from_fn(n, n, |j, k| if j == k + 1 { ONE } else { ZERO });
    OperatorMatrix::new(entries, "M_z")
}

/// `Λ₀f = f(0)·K_{φ(0)}`: column 0 holds `conj(φ(0))ʲ`.
pub fn rank_one_lambda0(phi_at_0: Complex64, n: usize) -> Result<OperatorMatrix> {
    check_n(n)?;
    if phi_at_0.norm() >= 1.0 {
        return Err(Error::ParameterOutOfRange(format!("|φ(0)| = {} ≥ 1", phi_at_0.norm())));
    }
    let k = kernel_vector(phi_at_0, n);
    let entries = CMatrix::from_fn(n, n, |j, col| if col == 0 { k.coeffs()[j] } else { ZERO });
    OperatorMatrix::new(entries, format!("Λ0[{phi_at_0}]"))
}

/// For `ψ(z) = (az+b)/(cz+d)`: `σ(z) = (āz − c̄)/(−b̄z + d̄)` and the function
/// `zσ'(z) = z·conj(ad−bc)/(−b̄z + d̄)²`, as an evaluator.
pub fn adjoint_auxiliaries(psi: &MobiusMap) -> Result<(MobiusMap, impl Fn(Complex64) -> Complex64)> {
    let [a, b, c, d] = psi.coefficients();
    let sigma = MobiusMap::new(a.conj(), -c.conj(), -b.conj(), d.conj())?;
    let det = psi.det().conj();
    let (bc, dc) = (b.conj(), d.conj());
    Ok((sigma, move |z: Complex64| z * det / (dc - bc * z).powi(2)))
}

/// `Λ₀ + M_{zσ'}·C_σ·B`, all factors truncated at `n`.
pub fn adjoint_via_cowen(psi: &MobiusMap, n: usize) -> Result<OperatorMatrix> {
    check_n(n)?;
    let [_, b, _, d] = psi.coefficients();
    if d.norm() == 0.0 {
        return Err(Error::NotASelfMap("ψ has its pole at 0".into()));
    }
    let (sigma, _) = adjoint_auxiliaries(psi)?;
    if !sigma.is_disc_self_map() {
        return Err(Error::NotASelfMap(
            "σ is not a self-map of the disc; ψ is inconsistent".into(),
        ));
    }
    // zσ'(z) = conj(det)·z·(1/d̄)²·(1/(1 − (b̄/d̄)z))²
    let q = b.conj() / d.conj();
    let mut geo = Vec::with_capacity(n);
    let mut p = ONE / d.conj();
    for _ in 0..n {
        geo.push(p);
        p *= q;
    }
    let sq = convolve_truncated(&geo, &geo);
    let mut zs = vec![ZERO; n];
    for k in 1..n {
        zs[k] = psi.det().conj() * sq[k - 1];
    }
    let weight = toeplitz_lower(&zs, n, "M[zσ']".into());
    let sigma_coeffs = sigma.maclaurin(n)?.into_coeffs();
    let mut one = vec![ZERO; n];
    one[0] = ONE;
    let c_sigma = weighted_from_coeffs(&one, &sigma_coeffs, n, "C[σ]".into())?;
    let shift = backward_shift_matrix(n)?;
    let lambda0 = rank_one_lambda0(b / d, n)?;
    let body = weight.times(&c_sigma)?.times(&shift)?;
    Ok(OperatorMatrix {
        entries: lambda0.entries + body.entries,
        label: "Λ0 + M[zσ']C[σ]B".into(),
    })
}

/// `P_m = Σ_{k≤m} ‖g·φᵏ‖²` for `m < n`, each norm from a 4096-point trapezoid
/// rule for `(1/2π)∫|g|²|φ|^{2k}` on the circle of radius 0.999.
pub fn hs_partial_sums(g: &Weight, s: &Symbol, n: usize) -> Result<Vec<f64>> {
    let pts = circle(4096, 0.999);
    let mut g2 = Vec::with_capacity(pts.len());
    let mut p2 = Vec::with_capacity(pts.len());
    for &z in &pts {
        let (gv, pv) = (g.eval(z), s.eval(z));
        if !(gv.re.is_finite() && gv.im.is_finite() && pv.re.is_finite() && pv.im.is_finite()) {
            return Err(Error::SamplingFailure { point: z });
        }
        g2.push(gv.norm_sqr());
        p2.push(pv.norm_sqr());
    }
    let mut powers = vec![1.0; pts.len()];
    let mut total = 0.0;
    let mut sums = Vec::with_capacity(n);
    let w = 1.0 / pts.len() as f64;
    for _ in 0..n {
        total += g2.iter().zip(&powers).map(|(a, b)| a * b).sum::<f64>() * w;
        sums.push(total);
        powers.iter_mut().zip(&p2).for_each(|(x, y)| *x *= y);
    }
    Ok(sums)
}

/// `(P_{n−1} − P_{3n/4−1}) / P_{3n/4−1}`; with `n = 64` this is
/// `(P_63 − P_47)/P_47`.
pub fn hs_tail_ratio(sums: &[f64]) -> f64 {
    let n = sums.len();
    let mid = sums[3 * n / 4 - 1];
    if mid == 0.0 {
        return 0.0;
    }
    (sums[n - 1] - mid) / mid
}

/// Descending singular values of the section.
pub fn singular_values(m: &OperatorMatrix) -> Result<Vec<f64>> {
    linalg::singular_values(&m.entries)
}
