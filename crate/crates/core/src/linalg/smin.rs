use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use super::{is_lower_triangular, is_upper_triangular, schur_triangle, singular_values, CMatrix};
use crate::error::Result;

const MAX_LANCZOS: usize = 40;

/// `λ ↦ σ_min(A − λI)` for one matrix and many shifts.
///
/// `A` is reduced once to an upper-triangular `T` (its Schur factor, or `A*`
/// for lower-triangular input, with the shift conjugated). Each shift then
/// costs a short Lanczos run on `((T−λ)*(T−λ))⁻¹`, applied with two
/// triangular solves.
#[derive(Debug, Clone)]
pub struct ShiftedSmin {
    t: CMatrix,
    conjugate_shift: bool,
}

impl ShiftedSmin {
    pub fn new(a: &CMatrix) -> Result<Self> {
        if is_upper_triangular(a) {
            Ok(ShiftedSmin {
                t: a.clone(),
                conjugate_shift: false,
            })
        } else if is_lower_triangular(a) {
            Ok(ShiftedSmin {
                t: a.adjoint(),
                conjugate_shift: true,
            })
        } else {
            Ok(ShiftedSmin {
                t: schur_triangle(a)?,
                conjugate_shift: false,
            })
        }
    }

    pub fn n(&self) -> usize {
        self.t.nrows()
    }

    pub fn sigma_min(&self, lambda: Complex64) -> Result<f64> {
        let n = self.n();
        if n == 0 {
            return Ok(0.0);
        }
        let mu = if self.conjugate_shift { lambda.conj() } else { lambda };
        let diag: Vec<Complex64> = (0..n).map(|k| self.t[(k, k)] - mu).collect();
        if diag.iter().any(|d| d.norm() == 0.0) {
            return Ok(0.0);
        }
        match self.inverse_lanczos(&diag) {
            Some(s) if s.is_finite() => Ok(s),
            _ => {
                let mut r = self.t.clone();
                for k in 0..n {
                    r[(k, k)] = diag[k];
                }
                Ok(*singular_values(&r)?.last().unwrap())
            }
        }
    }

    /// Solves `R* y = x` then `R z = y` with `R = T` off the diagonal and
    /// `diag` on it.
    fn apply_inverse_gram(&self, diag: &[Complex64], x: &[Complex64]) -> Vec<Complex64> {
        let n = x.len();
        let t = &self.t;
        let mut y = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut s = x[i];
            for k in 0..i {
                s -= t[(k, i)].conj() * y[k];
            }
            y[i] = s / diag[i].conj();
        }
        let mut z = vec![Complex64::new(0.0, 0.0); n];
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= t[(i, k)] * z[k];
            }
            z[i] = s / diag[i];
        }
        z
    }

    fn inverse_lanczos(&self, diag: &[Complex64]) -> Option<f64> {
        let n = diag.len();
        let steps = n.min(MAX_LANCZOS);
        // fixed, generic start vector
        let mut q: Vec<Complex64> = (0..n)
            .map(|k| Complex64::new(1.0 + 0.37 * (k as f64 * 1.7).sin(), 0.21 * (k as f64 * 0.9).cos()))
            .collect();
        let norm = q.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        q.iter_mut().for_each(|z| *z /= norm);

        let mut basis: Vec<Vec<Complex64>> = vec![q];
        let mut alphas: Vec<f64> = Vec::new();
        let mut betas: Vec<f64> = Vec::new();
        let mut last = f64::NAN;
        for j in 0..steps {
            let mut w = self.apply_inverse_gram(diag, &basis[j]);
            let alpha = basis[j].iter().zip(&w).map(|(a, b)| a.conj() * b).sum::<Complex64>().re;
            alphas.push(alpha);
            // full reorthogonalisation, twice
            for _ in 0..2 {
                for v in &basis {
                    let h: Complex64 = v.iter().zip(&w).map(|(a, b)| a.conj() * b).sum();
                    w.iter_mut().zip(v).for_each(|(x, y)| *x -= h * y);
                }
            }
            let beta = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let theta = largest_tridiagonal_eigenvalue(&alphas, &betas);
            if !theta.is_finite() {
                return None;
            }
            let done = (theta - last).abs() <= 1e-13 * theta || beta <= 1e-14 * theta;
            last = theta;
            if done || j + 1 == steps {
                break;
            }
            betas.push(beta);
            w.iter_mut().for_each(|z| *z /= beta);
            basis.push(w);
        }
        Some(1.0 / last.sqrt())
    }
}

fn largest_tridiagonal_eigenvalue(alphas: &[f64], betas: &[f64]) -> f64 {
    let k = alphas.len();
    let mut m = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        m[(i, i)] = alphas[i];
        if i + 1 < k {
            m[(i, i + 1)] = betas[i];
            m[(i + 1, i)] = betas[i];
        }
    }
    SymmetricEigen::new(m)
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn zero_matrix_gives_modulus() {
        let s = ShiftedSmin::new(&CMatrix::zeros(5, 5)).unwrap();
        for l in [c(0.3, 0.4), c(-1.0, 0.0), c(0.0, 0.0)] {
            assert!((s.sigma_min(l).unwrap() - l.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_eigenvalue_gives_zero() {
        let d = CMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0)]));
        let s = ShiftedSmin::new(&d).unwrap();
        assert_eq!(s.sigma_min(c(1.0, 0.0)).unwrap(), 0.0);
        assert!((s.sigma_min(c(1.25, 0.0)).unwrap() - 0.25).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn matches_smallest_singular_value(v in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 64), lr in -1.0f64..1.0, li in -1.0f64..1.0, lower in any::<bool>()) {
            let mut a = CMatrix::from_iterator(8, 8, v.into_iter().map(|(x, y)| c(x, y)));
            if lower {
                for k in 0..8 { for j in 0..k { a[(j, k)] = c(0.0, 0.0); } }
            }
            let l = c(lr, li);
            let s = ShiftedSmin::new(&a).unwrap().sigma_min(l).unwrap();
            let shifted = &a - CMatrix::identity(8, 8) * l;
            let reference = shifted.svd(false, false).singular_values.iter().copied().fold(f64::INFINITY, f64::min);
            prop_assert!((s - reference).abs() < 1e-9 * (1.0 + reference), "{} vs {}", s, reference);
        }
    }
}
