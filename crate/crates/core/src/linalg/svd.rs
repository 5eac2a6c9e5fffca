use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Singular values in descending order by one-sided (Hestenes) Jacobi.
///
/// Column pairs are orthogonalised by a phase change on the second column
/// followed by a real plane rotation; the singular values are the final
/// column norms.
pub fn singular_values(a: &CMatrix) -> Result<Vec<f64>> {
    let (m, n) = a.shape();
    let mut cols: Vec<Vec<Complex64>> = (0..n).map(|k| a.column(k).iter().copied().collect()).collect();
    let mut norms: Vec<f64> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum()).collect();
    let tol = f64::EPSILON * (m.max(1) as f64).sqrt();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta) = (norms[p], norms[q]);
                if alpha == 0.0 || beta == 0.0 {
                    continue;
                }
                let gamma: Complex64 = cols[p].iter().zip(&cols[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let yq = *y * phase.conj();
                    let xp = *x;
                    *x = xp * c - yq * s;
                    *y = xp * s + yq * c;
                }
                norms[p] = cols[p].iter().map(|z| z.norm_sqr()).sum();
                norms[q] = cols[q].iter().map(|z| z.norm_sqr()).sum();
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            context: format!("one-sided Jacobi on a {m}×{n} matrix after {MAX_SWEEPS} sweeps"),
            last_points: Vec::new(),
        });
    }
    let mut sv: Vec<f64> = norms.into_iter().map(f64::sqrt).collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
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
    fn identity_and_diagonal() {
        assert_eq!(singular_values(&CMatrix::identity(8, 8)).unwrap(), vec![1.0; 8]);
        let d = CMatrix::from_diagonal(&DVector::from_vec(vec![c(1.0, 0.0), c(0.0, -3.0), c(2.0, 0.0)]));
        assert_eq!(singular_values(&d).unwrap(), vec![3.0, 2.0, 1.0]);
    }

    #[test]
    fn rank_one() {
        let u = DVector::from_vec(vec![c(1.0, 1.0), c(0.0, 2.0), c(-1.0, 0.0)]);
        let v = DVector::from_vec(vec![c(0.5, 0.0), c(0.0, 0.5), c(1.0, -1.0)]);
        let a = &u * v.adjoint();
        let sv = singular_values(&a).unwrap();
        assert!((sv[0] - u.norm() * v.norm()).abs() < 1e-12);
        assert!(sv[1] < 1e-12 && sv[2] < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn agrees_with_reference_svd(v in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 100)) {
            let a = CMatrix::from_iterator(10, 10, v.into_iter().map(|(x, y)| c(x, y)));
            let ours = singular_values(&a).unwrap();
            let mut reference: Vec<f64> = a.clone().svd(false, false).singular_values.iter().copied().collect();
            reference.sort_by(|a, b| b.total_cmp(a));
            for (x, y) in ours.iter().zip(&reference) {
                prop_assert!((x - y).abs() < 1e-10 * reference[0]);
            }
        }
    }
}
