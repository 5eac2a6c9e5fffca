//! Linear fractional maps `z ↦ (az+b)/(cz+d)` with exact coefficient algebra.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::TaylorSeries;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A point of the Riemann sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extended {
    Finite(Complex64),
    Infinity,
}

impl Extended {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            Extended::Finite(z) => Some(z),
            Extended::Infinity => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MobiusMap {
    #[serde(with = "crate::serde_complex")]
    a: Complex64,
    #[serde(with = "crate::serde_complex")]
    b: Complex64,
    #[serde(with = "crate::serde_complex")]
    c: Complex64,
    #[serde(with = "crate::serde_complex")]
    d: Complex64,
}

impl MobiusMap {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        let scale = (a.norm() * d.norm()).max(b.norm() * c.norm());
        if det.norm() <= 1e-14 * scale || det.norm() == 0.0 {
            return Err(Error::DegenerateMobius);
        }
        Ok(MobiusMap { a, b, c, d })
    }

    pub fn identity() -> Self {
        MobiusMap {
            a: ONE,
            b: ZERO,
            c: ZERO,
            d: ONE,
        }
    }

    /// `z ↦ λz`.
    pub fn scaling(lambda: Complex64) -> Result<Self> {
        MobiusMap::new(lambda, ZERO, ZERO, ONE)
    }

    /// `T(z) = (1+z)/(1-z)`, the disc onto the right half-plane.
    pub fn cayley() -> Self {
        MobiusMap {
            a: ONE,
            b: ONE,
            c: -ONE,
            d: ONE,
        }
    }

    /// `T⁻¹(w) = (w-1)/(w+1)`.
    pub fn cayley_inverse() -> Self {
        MobiusMap {
            a: ONE,
            b: -ONE,
            c: ONE,
            d: ONE,
        }
    }

    /// The disc automorphism `z ↦ (z-α)/(1-ᾱz)` sending `α` to 0.
    pub fn disc_automorphism(alpha: Complex64) -> Result<Self> {
        if alpha.norm() >= 1.0 {
            return Err(Error::ParameterOutOfRange(format!(
                "automorphism centre {alpha} is not inside the disc"
            )));
        }
        MobiusMap::new(ONE, -alpha, -alpha.conj(), ONE)
    }

    /// `T⁻¹∘(w ↦ slope·w + shift)∘T`.
    pub fn from_halfplane_affine(slope: Complex64, shift: Complex64) -> Result<Self> {
        let affine = MobiusMap::new(slope, shift, ZERO, ONE)?;
        Ok(MobiusMap::cayley_inverse()
            .compose(&affine)
            .compose(&MobiusMap::cayley()))
    }

    pub fn coefficients(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// `self∘other`, as the 2×2 matrix product.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `m⁻¹∘self∘m`.
    pub fn conjugate_by(&self, m: &MobiusMap) -> MobiusMap {
        m.inverse().compose(self).compose(m)
    }

    pub fn apply(&self, z: Complex64) -> Extended {
        let den = self.c * z + self.d;
        let num = self.a * z + self.b;
        if den == ZERO {
            Extended::Infinity
        } else {
            Extended::Finite(num / den)
        }
    }

    pub fn apply_extended(&self, z: Extended) -> Extended {
        match z {
            Extended::Finite(z) => self.apply(z),
            Extended::Infinity if self.c == ZERO => Extended::Infinity,
            Extended::Infinity => Extended::Finite(self.a / self.c),
        }
    }

    /// Evaluation away from the pole. Callers that may hit the pole should use
    /// [`MobiusMap::apply`].
    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn pole(&self) -> Extended {
        if self.c == ZERO {
            Extended::Infinity
        } else {
            Extended::Finite(-self.d / self.c)
        }
    }

    pub fn derivative(&self, z: Complex64) -> Complex64 {
        self.det() / (self.c * z + self.d).powi(2)
    }

    pub fn second_derivative(&self, z: Complex64) -> Complex64 {
        -2.0 * self.c * self.det() / (self.c * z + self.d).powi(3)
    }

    pub fn third_derivative(&self, z: Complex64) -> Complex64 {
        6.0 * self.c * self.c * self.det() / (self.c * z + self.d).powi(4)
    }

    /// Pole outside the closed disc and `|m(z)| ≤ 1 + 1e-12` on 512 boundary
    /// points; by the maximum principle this covers the whole disc.
    pub fn is_disc_self_map(&self) -> bool {
        if let Extended::Finite(p) = self.pole() {
            if p.norm() <= 1.0 + 1e-12 {
                return false;
            }
        }
        (0..512).all(|j| {
            let z = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / 512.0);
            self.eval(z).norm() <= 1.0 + 1e-12
        })
    }

    /// Equality up to a common nonzero scalar, relative to the larger map.
    pub fn approx_eq(&self, other: &MobiusMap, tol: f64) -> bool {
        let u = self.coefficients();
        let v = other.coefficients();
        let (i, _) = v.iter().enumerate().fold(
            (0, 0.0),
            |acc, (i, z)| if z.norm() > acc.1 { (i, z.norm()) } else { acc },
        );
        if u[i] == ZERO {
            return false;
        }
        let lambda = u[i] / v[i];
        let scale = u.iter().map(|z| z.norm()).fold(0.0, f64::max);
        u.iter().zip(&v).all(|(x, y)| (x - lambda * y).norm() <= tol * scale)
    }

    /// Exact Maclaurin coefficients from the geometric expansion of `1/(cz+d)`.
    pub fn maclaurin(&self, n: usize) -> Result<TaylorSeries> {
        if self.d == ZERO {
            return Err(Error::ContractViolation(
                "linear fractional map has its pole at 0".into(),
            ));
        }
        let q = -self.c / self.d;
        let mut geo = Vec::with_capacity(n.max(1));
        let mut p = ONE / self.d;
        for _ in 0..n.max(1) {
            geo.push(p);
            p *= q;
        }
        let coeffs = (0..n.max(1))
            .map(|k| self.b * geo[k] + if k > 0 { self.a * geo[k - 1] } else { ZERO })
            .collect();
        TaylorSeries::exact(coeffs)
    }

    /// Solutions of `cz² + (d-a)z - b = 0` in the finite plane.
    pub fn fixed_points(&self) -> Vec<Complex64> {
        let (qa, qb, qc) = (self.c, self.d - self.a, -self.b);
        let scale = self.coefficients().iter().map(|z| z.norm()).fold(0.0, f64::max);
        if qa.norm() <= 1e-14 * scale {
            if qb.norm() <= 1e-14 * scale {
                return Vec::new();
            }
            return vec![-qc / qb];
        }
        let disc = (qb * qb - 4.0 * qa * qc).sqrt();
        // pick the root formula that avoids cancellation
        let q = if (qb.conj() * disc).re >= 0.0 {
            -0.5 * (qb + disc)
        } else {
            -0.5 * (qb - disc)
        };
        if q == ZERO {
            return vec![ZERO, ZERO];
        }
        vec![q / qa, qc / q]
    }

    pub fn boundary_fixed_points(&self, tol: f64) -> Vec<Complex64> {
        self.fixed_points()
            .into_iter()
            .filter(|z| (z.norm() - 1.0).abs() <= tol)
            .collect()
    }
}

/// A point of the closed right half-plane `Π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfplanePoint(Complex64);

impl HalfplanePoint {
    pub fn new(w: Complex64) -> Result<Self> {
        if w.re < -1e-12 || !w.re.is_finite() || !w.im.is_finite() {
            return Err(Error::ParameterOutOfRange(format!(
                "{w} is not in the closed right half-plane"
            )));
        }
        Ok(HalfplanePoint(w))
    }

    pub fn w(&self) -> Complex64 {
        self.0
    }

    /// Image in the disc under `T⁻¹`.
    pub fn to_disc(&self) -> Complex64 {
        (self.0 - 1.0) / (self.0 + 1.0)
    }
}
