use std::f64::consts::PI;

use num_complex::Complex64;

use super::{BoundaryJet, JetMethod, Symbol};
use crate::error::{Error, Result};

const SPREAD_LIMIT: f64 = 1e-4;
const CIRCLE_POINTS: usize = 32;
const MAX_COLUMN: usize = 4;

/// Jet at `zeta`: exact when the symbol knows it, radial extrapolation otherwise.
pub fn boundary_jet(s: &Symbol, zeta: Complex64) -> Result<BoundaryJet> {
    if (zeta.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::ParameterOutOfRange(format!("{zeta} is not unimodular")));
    }
    if let Some(m) = s.mobius() {
        return Ok(BoundaryJet::exact(
            zeta,
            m.eval(zeta),
            m.derivative(zeta),
            m.second_derivative(zeta),
            Some(m.third_derivative(zeta)),
        ));
    }
    if let Some(j) = s.exact_jet() {
        if (j.zeta - zeta).norm() < 1e-12 {
            return Ok(j.clone());
        }
    }
    radial_jet(s, zeta)
}

/// Derivatives at the radial points `ζ(1 − 2⁻ᵐ)`, `m = 3..12`, extrapolated to
/// `ζ` by a Richardson table in `h`.
///
/// Derivatives at each radial point come from a 32-point Cauchy integral on a
/// circle of radius `h/2`. A third derivative that does not settle is dropped
/// rather than reported as an error.
pub fn radial_jet(s: &Symbol, zeta: Complex64) -> Result<BoundaryJet> {
    let mut samples: [Vec<Complex64>; 4] = Default::default();
    for m in 3..=12 {
        let h = 2f64.powi(-m);
        let z0 = zeta * (1.0 - h);
        let rho = h / 2.0;
        let mut acc = [Complex64::new(0.0, 0.0); 4];
        for j in 0..CIRCLE_POINTS {
            let t = 2.0 * PI * j as f64 / CIRCLE_POINTS as f64;
            let v = s.eval(z0 + Complex64::from_polar(rho, t));
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::SamplingFailure {
                    point: z0 + Complex64::from_polar(rho, t),
                });
            }
            for (k, a) in acc.iter_mut().enumerate() {
                *a += v * Complex64::from_polar(1.0, -(k as f64) * t);
            }
        }
        let mut fact = 1.0;
        for (k, a) in acc.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            samples[k].push(a * fact / (CIRCLE_POINTS as f64 * rho.powi(k as i32)));
        }
    }

    let mut values = [Complex64::new(0.0, 0.0); 4];
    let mut errors = [0.0; 4];
    for k in 0..4 {
        let (v, e) = richardson(&samples[k]);
        values[k] = v;
        errors[k] = e;
    }
    for k in 0..3 {
        if !(errors[k] <= SPREAD_LIMIT) {
            return Err(Error::LowSmoothness {
                order: k,
                spread: errors[k],
            });
        }
    }
    let d3_ok = errors[3] <= SPREAD_LIMIT;
    let mut jet = BoundaryJet::exact(zeta, values[0], values[1], values[2], d3_ok.then_some(values[3]));
    jet.method = JetMethod::RadialExtrapolation;
    jet.uncertainty = errors[..if d3_ok { 4 } else { 3 }].to_vec();
    Ok(jet)
}

/// Best entry of a Richardson table for step ratio 2, with its error estimate
/// (largest difference to its two parents).
fn richardson(x: &[Complex64]) -> (Complex64, f64) {
    let n = x.len();
    let mut table: Vec<Vec<Complex64>> = vec![Vec::new(); n];
    let mut best = (x[n - 1], f64::INFINITY);
    for i in 0..n {
        table[i].push(x[i]);
        if i > 0 {
            let e = (x[i] - x[i - 1]).norm();
            if e < best.1 {
                best = (x[i], e);
            }
        }
        for j in 1..=i.min(MAX_COLUMN) {
            let f = 2f64.powi(j as i32);
            let prev = table[i][j - 1];
            let up = table[i - 1][j - 1];
            let v = prev + (prev - up) / (f - 1.0);
            let e = (v - prev).norm().max((v - up).norm());
            table[i].push(v);
            if e < best.1 {
                best = (v, e);
            }
        }
    }
    best
}

/// `(Sφ)(ζ)` from the boundary jet.
pub fn schwarzian_at(s: &Symbol, zeta: Complex64) -> Result<Complex64> {
    boundary_jet(s, zeta)?.schwarzian.ok_or(Error::MissingThirdDerivative)
}
