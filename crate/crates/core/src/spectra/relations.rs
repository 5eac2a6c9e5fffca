//! Exact eigenfunction identities checked on truncations, and the
//! compact-difference and Koenigs evidence.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::Serialize;

use super::estimate::eigenvalues;
use crate::classify::{denjoy_wolff, elf_approximant};
use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::operators::{composition_matrix, singular_values, OperatorMatrix, MAX_N};
use crate::series::coeffs_from_samples;
use crate::symbols::{cowen_map, hyperbolic_automorphism, sector_map, Symbol};

const SAMPLE_RADIUS: f64 = 0.95;
const SAMPLES: usize = 4096;

#[derive(Debug, Clone, PartialEq)]
pub enum EigenRelation {
    /// `f_b = ((1+z)/(1−z))^b` under `ν = T⁻¹∘(pT)`, eigenvalue `p^b`.
    HyperbolicPower { p: f64, b: Complex64 },
    /// `F = e^{−βT_θ}` under `T_θ⁻¹∘(T_θ + a)`, eigenvalue `e^{−βa}`.
    SectorTranslation { a: Complex64, theta: f64, beta: Complex64 },
    /// `h = e^{−tT}` under a half-plane translation `ψ = T⁻¹∘(T + a)`,
    /// eigenvalue `e^{−ta}`.
    HalfplaneTranslation { psi: MobiusMap, t: f64 },
}

impl EigenRelation {
    pub fn kind(&self) -> &'static str {
        match self {
            EigenRelation::HyperbolicPower { .. } => "hyperbolic-power",
            EigenRelation::SectorTranslation { .. } => "sector-translation",
            EigenRelation::HalfplaneTranslation { .. } => "halfplane-translation",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub kind: &'static str,
    #[serde(with = "crate::serde_complex")]
    pub eigenvalue: Complex64,
    pub residual: f64,
    pub operator_order: usize,
    pub rows: usize,
}

fn out_of_range(msg: String) -> Error {
    Error::ParameterOutOfRange(msg)
}

fn cayley(z: Complex64) -> Complex64 {
    (1.0 + z) / (1.0 - z)
}

/// `a` with `T∘ψ∘T⁻¹ = w + a`, if `ψ` is such a translation.
pub fn halfplane_shift(psi: &MobiusMap) -> Option<Complex64> {
    let big = MobiusMap::cayley().compose(psi).compose(&MobiusMap::cayley_inverse());
    let [a, b, c, d] = big.coefficients();
    let scale = a.norm().max(d.norm());
    if c.norm() > 1e-12 * scale || (a - d).norm() > 1e-12 * scale {
        return None;
    }
    Some(b / d)
}

/// `‖(C v − λv)[..n/2]‖ / ‖v[..n/2]‖`, with `C` and `v` carried at order
/// `min(4n, 256)` so that the reported rows are free of truncation effects.
pub fn verify_eigen_relation(rel: &EigenRelation, n: usize) -> Result<RelationReport> {
    if n < 2 || n > MAX_N {
        return Err(Error::ContractViolation(format!(
            "truncation order {n} outside 2..={MAX_N}"
        )));
    }
    let order = (4 * n).min(MAX_N);
    let (symbol, lambda, f): (Symbol, Complex64, Box<dyn Fn(Complex64) -> Complex64>) = match *rel {
        EigenRelation::HyperbolicPower { p, b } => {
            if b.re.abs() >= 0.5 {
                return Err(out_of_range(format!("|Re b| = {} ≥ 1/2", b.re.abs())));
            }
            let nu = hyperbolic_automorphism(p)?;
            (nu, Complex64::new(p, 0.0).powc(b), Box::new(move |z| cayley(z).powc(b)))
        }
        EigenRelation::SectorTranslation { a, theta, beta } => {
            if beta.norm() == 0.0 || beta.arg().abs() > FRAC_PI_2 - theta + 1e-12 {
                return Err(out_of_range(format!("|arg β| = {} > π/2 − θ", beta.arg().abs())));
            }
            let phi = cowen_map(a, theta)?;
            let t = sector_map(theta);
            (phi, (-beta * a).exp(), Box::new(move |z| (-beta * t(z)).exp()))
        }
        EigenRelation::HalfplaneTranslation { ref psi, t } => {
            if !(0.0..=3.0).contains(&t) {
                return Err(out_of_range(format!("t = {t} outside [0, 3]")));
            }
            let a = halfplane_shift(psi).ok_or_else(|| out_of_range("ψ is not a half-plane translation".into()))?;
            if !(a.re > 0.0) {
                return Err(out_of_range(format!("translation {a} needs Re > 0")));
            }
            let s = Symbol::from_mobius("psi", *psi)?;
            (s, (-t * a).exp(), Box::new(move |z| (-t * cayley(z)).exp()))
        }
    };
    let c = composition_matrix(&symbol, order)?;
    let v = coeffs_from_samples(&*f, SAMPLE_RADIUS, SAMPLES, order)?.into_coeffs();
    let cv = c.apply(&v);
    let rows = n / 2;
    let num: f64 = (0..rows)
        .map(|j| (cv[j] - lambda * v[j]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let den: f64 = v[..rows].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    Ok(RelationReport {
        kind: rel.kind(),
        eigenvalue: lambda,
        residual: if den == 0.0 { num } else { num / den },
        operator_order: order,
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CompactDifference {
    pub n: usize,
    /// `σ₃₂/σ₁` of the truncated `C_φ − C_ψ`.
    pub ratio: f64,
    pub leading: Vec<f64>,
}

/// Singular values of `trunc(C_φ − C_ψ)` with `ψ` the linear fractional
/// approximant at 1.
pub fn compact_difference(s: &Symbol, n: usize) -> Result<CompactDifference> {
    if n < 32 {
        return Err(Error::ContractViolation(format!("need n ≥ 32 for σ₃₂ (got {n})")));
    }
    let psi = Symbol::from_mobius("psi", elf_approximant(s)?)?;
    let d = composition_matrix(s, n)?.minus(&composition_matrix(&psi, n)?)?;
    let sv = singular_values(&d)?;
    let ratio = if sv[0] == 0.0 { 0.0 } else { sv[31] / sv[0] };
    Ok(CompactDifference {
        n,
        ratio,
        leading: sv.into_iter().take(8).collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct KoenigsReport {
    #[serde(with = "crate::serde_complex")]
    pub omega: Complex64,
    #[serde(with = "crate::serde_complex")]
    pub derivative: Complex64,
    /// `min_j |μ_j − φ'(ω)ᵏ|` for `k = 0..=k_max`.
    pub misses: Vec<f64>,
    pub triangular: bool,
}

/// Conjugates `φ` by the disc automorphism moving `ω` to 0 and reads the
/// truncation eigenvalues off the (lower triangular) section.
pub fn koenigs_check(s: &Symbol, n: usize, k_max: usize) -> Result<KoenigsReport> {
    let dw = denjoy_wolff(s)?;
    if !dw.interior {
        return Err(Error::hypothesis(
            "Koenigs eigenvalues",
            "Denjoy–Wolff point is on the boundary",
        ));
    }
    let alpha = MobiusMap::disc_automorphism(dw.omega)?;
    let s0 = s.conjugated(&alpha)?;
    let m: OperatorMatrix = composition_matrix(&s0, n)?;
    let ev = eigenvalues(&m)?;
    let misses = (0..=k_max)
        .map(|k| {
            let target = dw.derivative.powi(k as i32);
            ev.iter().map(|z| (z - target).norm()).fold(f64::INFINITY, f64::min)
        })
        .collect();
    let e = m.entries();
    let triangular = (0..n).all(|k| (0..k).all(|j| e[(j, k)].norm() == 0.0));
    Ok(KoenigsReport {
        omega: dw.omega,
        derivative: dw.derivative,
        misses,
        triangular,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::symbol;
    use std::f64::consts::FRAC_PI_4;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn constant_eigenfunction() {
        let r = verify_eigen_relation(&EigenRelation::HyperbolicPower { p: 0.5, b: c(0.0, 0.0) }, 64).unwrap();
        assert_eq!(r.eigenvalue, c(1.0, 0.0));
        assert!(r.residual < 1e-14);
    }

    #[test]
    fn quarter_power() {
        let r = verify_eigen_relation(
            &EigenRelation::HyperbolicPower {
                p: 0.5,
                b: c(0.25, 0.0),
            },
            64,
        )
        .unwrap();
        assert!((r.eigenvalue - c(0.5f64.powf(0.25), 0.0)).norm() < 1e-15);
        assert!(r.residual < 1e-6, "{}", r.residual);
        assert_eq!((r.operator_order, r.rows), (256, 32));
    }

    #[test]
    fn sector_family() {
        for (theta, a, beta) in [
            (FRAC_PI_2, c(1.0, 0.5), c(2.0, 0.0)),
            (FRAC_PI_4, c(0.5, 0.2), c(1.0, 0.3)),
        ] {
            let r = verify_eigen_relation(&EigenRelation::SectorTranslation { a, theta, beta }, 64).unwrap();
            assert!(r.residual < 1e-5, "{theta} {beta}: {}", r.residual);
        }
    }

    #[test]
    fn translation_from_approximant() {
        let psi = elf_approximant(&symbol("EIPC").unwrap()).unwrap();
        assert!((halfplane_shift(&psi).unwrap() - c(2.0, 1.0)).norm() < 1e-12);
        let r = verify_eigen_relation(&EigenRelation::HalfplaneTranslation { psi, t: 1.0 }, 64).unwrap();
        assert!((r.eigenvalue - (-c(2.0, 1.0)).exp()).norm() < 1e-15);
        assert!(r.residual < 1e-6, "{}", r.residual);
    }

    #[test]
    fn admissible_ranges() {
        let bad = [
            EigenRelation::HyperbolicPower { p: 0.5, b: c(0.5, 0.0) },
            EigenRelation::SectorTranslation {
                a: c(1.0, 0.0),
                theta: FRAC_PI_2,
                beta: c(1.0, 0.1),
            },
            EigenRelation::SectorTranslation {
                a: c(1.0, 0.0),
                theta: FRAC_PI_4,
                beta: c(1.0, 1.1),
            },
            EigenRelation::HalfplaneTranslation {
                psi: MobiusMap::identity(),
                t: 1.0,
            },
            EigenRelation::HalfplaneTranslation {
                psi: MobiusMap::from_halfplane_affine(c(1.0, 0.0), c(1.0, 0.0)).unwrap(),
                t: 3.5,
            },
        ];
        for rel in bad {
            assert!(
                matches!(verify_eigen_relation(&rel, 64), Err(Error::ParameterOutOfRange(_))),
                "{rel:?}"
            );
        }
    }

    #[test]
    fn koenigs_powers_for_the_square_example() {
        let r = koenigs_check(&symbol("ELFSQE").unwrap(), 32, 6).unwrap();
        assert!((r.omega - c(0.5, 0.0)).norm() < 1e-10);
        assert!(r.triangular);
        assert!(r.misses.iter().all(|&m| m < 1e-6), "{:?}", r.misses);
    }

    #[test]
    fn difference_is_nearly_finite_rank() {
        let d = compact_difference(&symbol("EIHT").unwrap(), 48).unwrap();
        assert!(d.ratio < 0.05);
    }
}
