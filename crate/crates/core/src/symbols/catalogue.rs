//! The worked examples: three symbols, their weights and two parametric
//! families.
//!
//! | id            | map / weight                                                   |
//! |---------------|----------------------------------------------------------------|
//! | `EIHT`        | `φ(z) = 2/(√(13−4z) − 1)`, hyperbolic at 1 with `φ'(1) = 1/3`   |
//! | `ELFSQE`      | `Φ(w) = w/2 + 1 + 2/(w+1)`, interior fixed point 1/2            |
//! | `EIPC`        | `Φ(w) = w + 2 + i − 1/(4(w+1)) − 1/(4(w+1)^{3/2})`, parabolic   |
//! | `W-EIHT`      | `g(z) = 1/√3 + (1−z)^{3/2}`                                     |
//! | `W-ELFSQE`    | `g(z) = (3−2z)³`                                                |
//! | `W-EIPC`      | `g(z) = i√(5−z)`                                                |
//! | `ONE-MINUS-Z` | `g(z) = 1 − z`                                                  |
//! | `ONE`         | `g ≡ 1`                                                         |

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::{BoundaryJet, GammaTerm, HalfplaneSpec, Symbol, Weight};
use crate::error::{Error, Result};
use crate::mobius::MobiusMap;

pub const SYMBOL_IDS: [&str; 3] = ["EIHT", "ELFSQE", "EIPC"];
pub const WEIGHT_IDS: [&str; 5] = ["W-EIHT", "W-ELFSQE", "W-EIPC", "ONE-MINUS-Z", "ONE"];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone)]
pub enum CatalogueEntry {
    Symbol(Symbol),
    Weight(Weight),
}

impl CatalogueEntry {
    pub fn into_symbol(self) -> Option<Symbol> {
        match self {
            CatalogueEntry::Symbol(s) => Some(s),
            CatalogueEntry::Weight(_) => None,
        }
    }

    pub fn into_weight(self) -> Option<Weight> {
        match self {
            CatalogueEntry::Weight(w) => Some(w),
            CatalogueEntry::Symbol(_) => None,
        }
    }
}

pub fn catalogue_entry(id: &str) -> Result<CatalogueEntry> {
    let entry = match id {
        "EIHT" => {
            let jet = BoundaryJet::exact(
                c(1.0, 0.0),
                c(1.0, 0.0),
                c(1.0 / 3.0, 0.0),
                c(8.0 / 27.0, 0.0),
                Some(c(34.0 / 81.0, 0.0)),
            );
            CatalogueEntry::Symbol(Symbol::closed_form(
                id,
                |z: Complex64| 2.0 / ((13.0 - 4.0 * z).sqrt() - 1.0),
                Some(jet),
                "analytic on a neighbourhood of the closed disc; branch point at 13/4",
            )?)
        }
        "ELFSQE" => CatalogueEntry::Symbol(Symbol::from_halfplane(
            id,
            HalfplaneSpec::new(
                0.5,
                c(1.0, 0.0),
                vec![GammaTerm {
                    beta: c(2.0, 0.0),
                    gamma: 1.0,
                }],
            ),
        )?),
        "EIPC" => CatalogueEntry::Symbol(Symbol::from_halfplane(
            id,
            HalfplaneSpec::new(
                1.0,
                c(2.0, 1.0),
                vec![
                    GammaTerm {
                        beta: c(-0.25, 0.0),
                        gamma: 1.0,
                    },
                    GammaTerm {
                        beta: c(-0.25, 0.0),
                        gamma: 1.5,
                    },
                ],
            ),
        )?),
        "W-EIHT" => CatalogueEntry::Weight(Weight::closed_form(
            id,
            |z: Complex64| 1.0 / 3f64.sqrt() + (1.0 - z).powf(1.5),
            Some(c(1.0 / 3f64.sqrt(), 0.0)),
            true,
        )?),
        "W-ELFSQE" => CatalogueEntry::Weight(Weight::polynomial(
            id,
            vec![c(27.0, 0.0), c(-54.0, 0.0), c(36.0, 0.0), c(-8.0, 0.0)],
        )?),
        "W-EIPC" => CatalogueEntry::Weight(Weight::closed_form(
            id,
            |z: Complex64| c(0.0, 1.0) * (5.0 - z).sqrt(),
            Some(c(0.0, 2.0)),
            true,
        )?),
        "ONE-MINUS-Z" => CatalogueEntry::Weight(Weight::polynomial(id, vec![c(1.0, 0.0), c(-1.0, 0.0)])?),
        "ONE" => CatalogueEntry::Weight(Weight::polynomial(id, vec![c(1.0, 0.0)])?),
        other => return Err(Error::UnknownCatalogueId(other.to_string())),
    };
    Ok(entry)
}

pub fn symbol(id: &str) -> Result<Symbol> {
    catalogue_entry(id)?
        .into_symbol()
        .ok_or_else(|| Error::UnknownCatalogueId(format!("{id} (a weight, not a symbol)")))
}

pub fn weight(id: &str) -> Result<Weight> {
    catalogue_entry(id)?
        .into_weight()
        .ok_or_else(|| Error::UnknownCatalogueId(format!("{id} (a symbol, not a weight)")))
}

/// `z ↦ λz`.
pub fn dilation(lambda: Complex64) -> Result<Symbol> {
    if lambda.norm() >= 1.0 {
        return Err(Error::NotASelfMap(format!("|λ| = {} ≥ 1", lambda.norm())));
    }
    Symbol::from_mobius(format!("dilation({lambda})"), MobiusMap::scaling(lambda)?)
}

/// `ν = T⁻¹∘(pT)`: fixes ±1, with `ν'(1) = 1/p`.
pub fn hyperbolic_automorphism(p: f64) -> Result<Symbol> {
    if !(p > 0.0) || (p - 1.0).abs() < 1e-15 {
        return Err(Error::ParameterOutOfRange(format!(
            "hyperbolic automorphism needs p > 0, p ≠ 1 (got {p})"
        )));
    }
    let nu = MobiusMap::from_halfplane_affine(c(p, 0.0), c(0.0, 0.0))?;
    Symbol::from_mobius(format!("nu({p})"), nu)
}

/// `φ_{a,θ} = T_θ⁻¹∘(T_θ + a)` with `T_θ(z) = ((1+z)/(1−z))^{2θ/π}`, for
/// `a ≠ 0`, `|arg a| < θ ≤ π/2`.
pub fn cowen_map(a: Complex64, theta: f64) -> Result<Symbol> {
    if !(theta > 0.0 && theta <= FRAC_PI_2) || a.norm() == 0.0 || a.arg().abs() >= theta {
        return Err(Error::ParameterOutOfRange(format!(
            "family needs a ≠ 0, |arg a| < θ ≤ π/2 (got a = {a}, θ = {theta})"
        )));
    }
    let s = 2.0 * theta / std::f64::consts::PI;
    let eval = move |z: Complex64| {
        let t = ((1.0 + z) / (1.0 - z)).powf(s) + a;
        let w = t.powf(1.0 / s);
        (w - 1.0) / (w + 1.0)
    };
    Symbol::closed_form(format!("cowen({a},{theta})"), eval, None, "sector-translation family")
}

/// `T_θ(z) = ((1+z)/(1−z))^{2θ/π}`.
pub fn sector_map(theta: f64) -> impl Fn(Complex64) -> Complex64 + Send + Sync + Copy {
    let s = 2.0 * theta / std::f64::consts::PI;
    move |z: Complex64| ((1.0 + z) / (1.0 - z)).powf(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::halton_disc;

    #[test]
    fn every_entry_builds() {
        for id in SYMBOL_IDS {
            assert!(symbol(id).is_ok(), "{id}");
        }
        for id in WEIGHT_IDS {
            assert!(weight(id).is_ok(), "{id}");
        }
        assert!(matches!(catalogue_entry("NOPE"), Err(Error::UnknownCatalogueId(_))));
        assert!(symbol("ONE").is_err());
    }

    #[test]
    fn hyperbolic_example_jet() {
        let s = symbol("EIHT").unwrap();
        let j = s.exact_jet().unwrap();
        assert!((j.d1 - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
        assert!((s.eval(c(1.0 - 1e-9, 0.0)) - c(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn dilation_example_matches_rational_closed_form() {
        let s = symbol("ELFSQE").unwrap();
        let closed = |z: Complex64| (2.0 * z * z - 3.0 * z + 3.0) / (2.0 * z * z - 7.0 * z + 7.0);
        for z in halton_disc(16, 0.99) {
            assert!((s.eval(z) - closed(z)).norm() < 1e-10);
        }
        assert!((s.eval(c(0.5, 0.0)) - c(0.5, 0.0)).norm() < 1e-15);
        let j = s.exact_jet().unwrap();
        assert_eq!((j.d1, j.d2, j.d3), (c(2.0, 0.0), c(6.0, 0.0), Some(c(15.0, 0.0))));
    }

    #[test]
    fn parabolic_example_matches_disc_formula() {
        // Φ pulled back term by term: with u = 1 − z,
        // T⁻¹(Φ(T(z))) = (Φ − 1)/(Φ + 1) and Φ(T(z)) = 2/u + 1 + i − u/8 − (u/2)^{3/2}/4
        let s = symbol("EIPC").unwrap();
        let direct = |z: Complex64| {
            let u = 1.0 - z;
            let big = 2.0 / u + c(1.0, 1.0) - u / 8.0 - (u / 2.0).powf(1.5) / 4.0;
            (big - 1.0) / (big + 1.0)
        };
        for z in halton_disc(16, 0.99) {
            assert!((s.eval(z) - direct(z)).norm() < 1e-10);
        }
        assert_eq!(s.exact_jet().unwrap().d2, c(2.0, 1.0));
    }

    #[test]
    fn weights_at_special_points() {
        assert_eq!(weight("W-ELFSQE").unwrap().value_at(c(0.5, 0.0)), c(8.0, 0.0));
        assert_eq!(weight("W-EIPC").unwrap().boundary_value_at_1(), Some(c(0.0, 2.0)));
        let g = weight("W-EIHT").unwrap();
        assert!((g.eval(c(0.0, 0.0)) - c(1.0 / 3f64.sqrt() + 1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn families() {
        let nu = hyperbolic_automorphism(0.5).unwrap();
        let m = nu.mobius().unwrap();
        assert!((m.derivative(c(1.0, 0.0)) - c(2.0, 0.0)).norm() < 1e-14);
        let phi = cowen_map(c(1.0, 0.0), FRAC_PI_2).unwrap();
        // θ = π/2 is the plain half-plane translation by 1
        let psi = MobiusMap::from_halfplane_affine(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        for z in halton_disc(8, 0.9) {
            assert!((phi.eval(z) - psi.eval(z)).norm() < 1e-13);
        }
        assert!(cowen_map(c(1.0, 0.0), 0.0).is_err());
        assert!(cowen_map(c(1.0, 1.0), FRAC_PI_2 / 2.0).is_err());
        assert!(cowen_map(c(1.0, 0.5), FRAC_PI_2).is_ok());
        assert!(dilation(c(1.0, 0.0)).is_err());
    }
}
