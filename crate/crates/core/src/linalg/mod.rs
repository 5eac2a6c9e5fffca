//! Dense complex eigenvalues, singular values and `σ_min(A − λI)`.

mod smin;
mod svd;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub use smin::ShiftedSmin;
pub use svd::singular_values;

pub type CMatrix = DMatrix<Complex64>;

/// Parlett–Reinsch balancing by powers of two: a diagonal similarity that
/// leaves eigenvalues unchanged and evens out row and column norms.
pub fn balance(a: &CMatrix) -> CMatrix {
    let n = a.nrows();
    let mut m = a.clone();
    let radix = 2.0f64;
    let mut converged = false;
    while !converged {
        converged = true;
        for i in 0..n {
            let mut c = 0.0;
            let mut r = 0.0;
            for j in 0..n {
                if j != i {
                    c += m[(j, i)].l1_norm();
                    r += m[(i, j)].l1_norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let (mut cc, mut rr) = (c, r);
            while cc < rr / radix {
                cc *= radix;
                rr /= radix;
                f *= radix;
            }
            while cc >= rr * radix {
                cc /= radix;
                rr *= radix;
                f /= radix;
            }
            if (cc + rr) < 0.95 * s {
                converged = false;
                for j in 0..n {
                    m[(i, j)] /= f;
                    m[(j, i)] *= f;
                }
            }
        }
    }
    m
}

pub(crate) fn is_upper_triangular(a: &CMatrix) -> bool {
    (0..a.ncols()).all(|k| (k + 1..a.nrows()).all(|j| a[(j, k)] == Complex64::new(0.0, 0.0)))
}

pub(crate) fn is_lower_triangular(a: &CMatrix) -> bool {
    (0..a.ncols()).all(|k| (0..k.min(a.nrows())).all(|j| a[(j, k)] == Complex64::new(0.0, 0.0)))
}

/// Upper-triangular Schur factor `T` with `A = QTQ*`.
pub(crate) fn schur_triangle(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::ContractViolation(format!(
            "{}×{} matrix is not square",
            n,
            a.ncols()
        )));
    }
    if is_upper_triangular(a) {
        return Ok(a.clone());
    }
    let schur = Schur::try_new(a.clone(), f64::EPSILON, 30 * n.max(1)).ok_or_else(|| Error::NonConvergence {
        context: format!("Schur QR iteration on a {n}×{n} matrix"),
        last_points: Vec::new(),
    })?;
    let (_, mut t) = schur.unpack();
    for k in 0..n {
        for j in k + 1..n {
            t[(j, k)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(t)
}

/// All eigenvalues, unordered. Triangular input is read off the diagonal;
/// otherwise the balanced matrix goes through shifted QR.
pub fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    if a.nrows() != a.ncols() {
        return Err(Error::ContractViolation("eigenvalues of a non-square matrix".into()));
    }
    if is_upper_triangular(a) || is_lower_triangular(a) {
        return Ok(a.diagonal().iter().copied().collect());
    }
    let t = schur_triangle(&balance(a))?;
    Ok(t.diagonal().iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        v
    }

    #[test]
    fn diagonal_spectrum() {
        let a = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1.0, 0.0),
            c(0.5, 0.0),
            c(0.25, 0.0),
        ]));
        assert_eq!(
            sorted(eigenvalues(&a).unwrap()),
            vec![c(0.25, 0.0), c(0.5, 0.0), c(1.0, 0.0)]
        );
    }

    #[test]
    fn companion_matrix_roots() {
        // roots 1, 2, 3, i: p(z) = (z−1)(z−2)(z−3)(z−i)
        let roots = [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0), c(0.0, 1.0)];
        let mut coeffs = vec![c(1.0, 0.0)];
        for r in roots {
            let mut next = vec![c(0.0, 0.0); coeffs.len() + 1];
            for (k, &a) in coeffs.iter().enumerate() {
                next[k] += a;
                next[k + 1] -= a * r;
            }
            coeffs = next;
        }
        let n = roots.len();
        let mut m = CMatrix::zeros(n, n);
        for k in 0..n {
            m[(0, k)] = -coeffs[k + 1];
            if k + 1 < n {
                m[(k + 1, k)] = c(1.0, 0.0);
            }
        }
        let ev = eigenvalues(&m).unwrap();
        for r in roots {
            assert!(ev.iter().any(|e| (e - r).norm() < 1e-10), "{r} missing from {ev:?}");
        }
    }

    #[test]
    fn balancing_is_a_similarity() {
        let mut a = CMatrix::zeros(3, 3);
        a[(0, 1)] = c(1e6, 0.0);
        a[(1, 2)] = c(1e-6, 0.0);
        a[(2, 0)] = c(1.0, 0.0);
        a[(1, 1)] = c(2.0, 0.0);
        let b = balance(&a);
        assert!((b.trace() - a.trace()).norm() < 1e-9);
        assert!((b.determinant() - a.determinant()).norm() < 1e-9 * a.determinant().norm().max(1.0));
    }

    fn arb_matrix(n: usize) -> impl Strategy<Value = CMatrix> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n)
            .prop_map(move |v| CMatrix::from_iterator(n, n, v.into_iter().map(|(a, b)| c(a, b))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn similarity_of_diagonal_recovers_diagonal(s in arb_matrix(6), d in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 6)) {
            let s = s + CMatrix::identity(6, 6) * c(3.0, 0.0);
            let dvals: Vec<Complex64> = d.into_iter().map(|(a, b)| c(a, b)).collect();
            let dm = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(dvals.clone()));
            let a = &s * dm * s.clone().try_inverse().unwrap();
            let ev = eigenvalues(&a).unwrap();
            for v in dvals {
                let best = ev.iter().map(|e| (e - v).norm()).fold(f64::INFINITY, f64::min);
                prop_assert!(best < 1e-6, "{} not recovered: {:?}", v, ev);
            }
        }

        #[test]
        fn trace_and_determinant_match(a in arb_matrix(8)) {
            let ev = eigenvalues(&a).unwrap();
            let tr: Complex64 = ev.iter().sum();
            let det: Complex64 = ev.iter().product();
            prop_assert!((tr - a.trace()).norm() < 1e-9);
            prop_assert!((det - a.determinant()).norm() < 1e-8);
        }

        #[test]
        fn schur_factor_is_triangular(a in arb_matrix(7)) {
            let t = schur_triangle(&a).unwrap();
            prop_assert!(is_upper_triangular(&t));
            prop_assert!((t.trace() - a.trace()).norm() < 1e-9);
            prop_assert!((t.norm() - a.norm()).abs() < 1e-9);
        }
    }
}
