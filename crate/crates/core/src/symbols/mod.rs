//! Analytic self-maps of the disc and bounded weights.
//!
//! A [`Symbol`] is an evaluator plus whatever exact structure its constructor
//! knows: the underlying linear fractional map, the half-plane description
//! `Φ = T∘φ∘T⁻¹`, or closed-form boundary derivatives.

mod catalogue;
mod jet;

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::sampling::{halfplane_grid, halton_disc};
use crate::series::{extract_dual_radius, SamplingConfig, TaylorSeries};

pub use catalogue::{
    catalogue_entry, cowen_map, dilation, hyperbolic_automorphism, sector_map, symbol, weight, CatalogueEntry,
    SYMBOL_IDS, WEIGHT_IDS,
};
pub use jet::{boundary_jet, radial_jet, schwarzian_at};

pub type Evaluator = Arc<dyn Fn(Complex64) -> Complex64 + Send + Sync>;

const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolKind {
    Mobius,
    HalfplaneBuilt,
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JetMethod {
    Exact,
    RadialExtrapolation,
}

/// Value and derivatives of a symbol at a boundary point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryJet {
    #[serde(with = "crate::serde_complex")]
    pub zeta: Complex64,
    #[serde(with = "crate::serde_complex")]
    pub phi_at: Complex64,
    #[serde(with = "crate::serde_complex")]
    pub d1: Complex64,
    #[serde(with = "crate::serde_complex")]
    pub d2: Complex64,
    #[serde(with = "crate::serde_complex::option")]
    pub d3: Option<Complex64>,
    #[serde(with = "crate::serde_complex::option")]
    pub schwarzian: Option<Complex64>,
    pub method: JetMethod,
    /// Estimated absolute error of `phi_at, d1, d2` and, when present, `d3`.
    pub uncertainty: Vec<f64>,
}

impl BoundaryJet {
    pub fn exact(zeta: Complex64, phi_at: Complex64, d1: Complex64, d2: Complex64, d3: Option<Complex64>) -> Self {
        let mut jet = BoundaryJet {
            zeta,
            phi_at,
            d1,
            d2,
            d3,
            schwarzian: None,
            method: JetMethod::Exact,
            uncertainty: vec![0.0; if d3.is_some() { 4 } else { 3 }],
        };
        jet.schwarzian = jet.compute_schwarzian();
        jet
    }

    /// `(φ''/φ')' − ½(φ''/φ')²` with `(φ''/φ')' = φ'''/φ' − (φ''/φ')²`.
    fn compute_schwarzian(&self) -> Option<Complex64> {
        let d3 = self.d3?;
        let q = self.d2 / self.d1;
        Some(d3 / self.d1 - q * q - 0.5 * q * q)
    }

    /// Jet of `z ↦ λ̄φ(λz)` at `λ̄ζ`.
    pub fn rotated(&self, lambda: Complex64) -> Self {
        let lc = lambda.conj();
        BoundaryJet {
            zeta: lc * self.zeta,
            phi_at: lc * self.phi_at,
            d1: self.d1,
            d2: self.d2 * lambda,
            d3: self.d3.map(|d| d * lambda * lambda),
            schwarzian: self.schwarzian.map(|s| s * lambda * lambda),
            method: self.method,
            uncertainty: self.uncertainty.clone(),
        }
    }
}

/// One term `β/(w+1)^γ` of the half-plane remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaTerm {
    #[serde(with = "crate::serde_complex")]
    pub beta: Complex64,
    pub gamma: f64,
}

/// `Φ(w) = slope·w + constant + Σ β/(w+1)^γ` on the right half-plane.
///
/// `slope` is `1/φ'(1)`; `constant` is the full additive term, so that with
/// `p = φ'(1)` and `a = φ''(1)` one has `constant = 1/p − 1 + a/p²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfplaneSpec {
    pub slope: f64,
    #[serde(with = "crate::serde_complex")]
    pub constant: Complex64,
    #[serde(default)]
    pub gamma_terms: Vec<GammaTerm>,
}

impl HalfplaneSpec {
    pub fn new(slope: f64, constant: Complex64, gamma_terms: Vec<GammaTerm>) -> Self {
        HalfplaneSpec {
            slope,
            constant,
            gamma_terms,
        }
    }

    /// Builds the spec from `p = φ'(1)`, `a = φ''(1)` and the remainder.
    pub fn from_derivatives(p: f64, a: Complex64, gamma_terms: Vec<GammaTerm>) -> Self {
        HalfplaneSpec {
            slope: 1.0 / p,
            constant: Complex64::new(1.0 / p - 1.0, 0.0) + a / (p * p),
            gamma_terms,
        }
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        let tail: Complex64 = self
            .gamma_terms
            .iter()
            .map(|t| t.beta * (-t.gamma * (w + 1.0).ln()).exp())
            .sum();
        self.slope * w + self.constant + tail
    }

    fn validate(&self) -> Result<()> {
        if !(self.slope > 0.0 && self.slope.is_finite()) {
            return Err(Error::NotASelfMap(format!(
                "half-plane slope {} must be positive",
                self.slope
            )));
        }
        for t in &self.gamma_terms {
            let twice = 2.0 * t.gamma;
            if t.gamma < 1.0 || (twice - twice.round()).abs() > 1e-12 {
                return Err(Error::ParameterOutOfRange(format!(
                    "remainder exponent {} must be a half-integer ≥ 1",
                    t.gamma
                )));
            }
        }
        // a pure translation by an imaginary constant is an automorphism of Π,
        // so the closed half-plane is allowed when there is no remainder
        let inf = self.inf_real_part();
        let floor = if self.gamma_terms.is_empty() { -1e-12 } else { 0.0 };
        if !(inf > floor) {
            return Err(Error::NotASelfMap(format!(
                "Re Φ reaches {inf:e} on the half-plane sample"
            )));
        }
        Ok(())
    }

    /// Infimum of `Re Φ` over the fixed 1024-point half-plane grid.
    pub fn inf_real_part(&self) -> f64 {
        halfplane_grid()
            .into_iter()
            .map(|w| self.eval(w).re)
            .fold(f64::INFINITY, f64::min)
    }

    /// Closed-form jet of `T⁻¹∘Φ∘T` at 1.
    ///
    /// With `μ = slope`, `K = constant + 1 − μ` and `B₁` the sum of the
    /// `γ = 1` coefficients: `φ(1) = 1`, `φ' = 1/μ`, `φ'' = K/μ²`,
    /// `φ''' = (3/2)(K²/μ³ − B₁/μ²)`. Terms with `γ > 1` are `o((1−z)³)`.
    pub fn jet_at_one(&self) -> BoundaryJet {
        let mu = self.slope;
        let k = self.constant + 1.0 - mu;
        let b1: Complex64 = self
            .gamma_terms
            .iter()
            .filter(|t| (t.gamma - 1.0).abs() < 1e-12)
            .map(|t| t.beta)
            .sum();
        let d3 = 1.5 * (k * k / mu.powi(3) - b1 / (mu * mu));
        BoundaryJet::exact(ONE, ONE, Complex64::new(1.0 / mu, 0.0), k / (mu * mu), Some(d3))
    }

    /// `Ψ(w) = slope·w + constant` lifted to the disc, when the remainder is empty.
    pub fn as_mobius(&self) -> Option<MobiusMap> {
        if !self.gamma_terms.is_empty() {
            return None;
        }
        MobiusMap::from_halfplane_affine(Complex64::new(self.slope, 0.0), self.constant).ok()
    }
}

#[derive(Clone)]
pub struct Symbol {
    id: String,
    eval: Evaluator,
    kind: SymbolKind,
    exact_jet: Option<BoundaryJet>,
    domain_note: String,
    mobius: Option<MobiusMap>,
    halfplane: Option<HalfplaneSpec>,
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Symbol")
            .field("id", &self.id)
            .field("kind", &self.kind)
            .field("exact_jet", &self.exact_jet)
            .field("mobius", &self.mobius)
            .field("halfplane", &self.halfplane)
            .finish()
    }
}

fn check_self_map(eval: &Evaluator) -> Result<()> {
    for z in halton_disc(256, 1.0) {
        let v = eval(z);
        if !(v.norm() < 1.0) {
            return Err(Error::NotASelfMap(format!("|φ({z})| = {}", v.norm())));
        }
    }
    Ok(())
}

impl Symbol {
    pub fn from_mobius(id: impl Into<String>, m: MobiusMap) -> Result<Self> {
        if !m.is_disc_self_map() {
            return Err(Error::NotASelfMap(format!(
                "linear fractional map {m:?} leaves the closed disc"
            )));
        }
        let eval: Evaluator = Arc::new(move |z| m.eval(z));
        check_self_map(&eval)?;
        let exact_jet = m
            .boundary_fixed_points(1e-9)
            .first()
            .map(|&z| z / z.norm())
            .map(|zeta| {
                BoundaryJet::exact(
                    zeta,
                    m.eval(zeta),
                    m.derivative(zeta),
                    m.second_derivative(zeta),
                    Some(m.third_derivative(zeta)),
                )
            });
        Ok(Symbol {
            id: id.into(),
            eval,
            kind: SymbolKind::Mobius,
            exact_jet,
            domain_note: "linear fractional".into(),
            mobius: Some(m),
            halfplane: None,
        })
    }

    pub fn from_halfplane(id: impl Into<String>, spec: HalfplaneSpec) -> Result<Self> {
        spec.validate()?;
        let s = spec.clone();
        let eval: Evaluator = Arc::new(move |z: Complex64| {
            let w = (1.0 + z) / (1.0 - z);
            let big = s.eval(w);
            (big - 1.0) / (big + 1.0)
        });
        check_self_map(&eval)?;
        Ok(Symbol {
            id: id.into(),
            eval,
            kind: SymbolKind::HalfplaneBuilt,
            exact_jet: Some(spec.jet_at_one()),
            domain_note: "T⁻¹∘Φ∘T with Φ(w) = slope·w + constant + Σ β/(w+1)^γ".into(),
            mobius: spec.as_mobius(),
            halfplane: Some(spec),
        })
    }

    pub fn closed_form<F>(
        id: impl Into<String>,
        eval: F,
        exact_jet: Option<BoundaryJet>,
        domain_note: impl Into<String>,
    ) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        let eval: Evaluator = Arc::new(eval);
        check_self_map(&eval)?;
        if let Some(j) = &exact_jet {
            if (j.phi_at.norm() - 1.0).abs() > 1e-10 {
                return Err(Error::ContractViolation(format!(
                    "jet value {} is not unimodular",
                    j.phi_at
                )));
            }
        }
        Ok(Symbol {
            id: id.into(),
            eval,
            kind: SymbolKind::ClosedForm,
            exact_jet,
            domain_note: domain_note.into(),
            mobius: None,
            halfplane: None,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> SymbolKind {
        self.kind
    }

    pub fn exact_jet(&self) -> Option<&BoundaryJet> {
        self.exact_jet.as_ref()
    }

    pub fn domain_note(&self) -> &str {
        &self.domain_note
    }

    pub fn mobius(&self) -> Option<&MobiusMap> {
        self.mobius.as_ref()
    }

    pub fn halfplane(&self) -> Option<&HalfplaneSpec> {
        self.halfplane.as_ref()
    }

    pub fn evaluator(&self) -> Evaluator {
        self.eval.clone()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.eval)(z)
    }

    /// Replaces the stored exact jet.
    pub fn with_jet(mut self, jet: BoundaryJet) -> Self {
        self.exact_jet = Some(jet);
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    /// `z ↦ λ̄φ(λz)` for unimodular `λ`.
    pub fn rotated(&self, lambda: Complex64) -> Result<Self> {
        if (lambda.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::ParameterOutOfRange(format!("{lambda} is not unimodular")));
        }
        let inner = self.eval.clone();
        let lc = lambda.conj();
        let mobius = self.mobius.map(|m| {
            MobiusMap::scaling(lc)
                .expect("unimodular scaling")
                .compose(&m)
                .compose(&MobiusMap::scaling(lambda).expect("unimodular scaling"))
        });
        Ok(Symbol {
            id: format!("{}-rot", self.id),
            eval: Arc::new(move |z| lc * inner(lambda * z)),
            kind: self.kind,
            exact_jet: self.exact_jet.as_ref().map(|j| j.rotated(lambda)),
            domain_note: format!("rotation conjugate of {}", self.id),
            mobius,
            halfplane: None,
        })
    }

    /// `α∘φ∘α⁻¹` for a disc automorphism `α`; jets are not carried over.
    pub fn conjugated(&self, alpha: &MobiusMap) -> Result<Self> {
        let inner = self.eval.clone();
        let (a, ai) = (*alpha, alpha.inverse());
        let eval: Evaluator = Arc::new(move |z| a.eval(inner(ai.eval(z))));
        check_self_map(&eval)?;
        Ok(Symbol {
            id: format!("{}-conj", self.id),
            eval,
            kind: if self.mobius.is_some() {
                SymbolKind::Mobius
            } else {
                SymbolKind::ClosedForm
            },
            exact_jet: None,
            domain_note: format!("automorphism conjugate of {}", self.id),
            mobius: self.mobius.map(|m| a.compose(&m).compose(&ai)),
            halfplane: None,
        })
    }

    /// Maclaurin coefficients: exact for linear fractional symbols, otherwise
    /// by dual-radius sampling.
    pub fn maclaurin(&self, n: usize) -> Result<TaylorSeries> {
        if let Some(m) = &self.mobius {
            if let Ok(s) = m.maclaurin(n) {
                return Ok(s);
            }
        }
        extract_dual_radius(&*self.eval, SamplingConfig::with_n(n))
    }
}

#[derive(Clone)]
pub struct Weight {
    id: String,
    eval: Evaluator,
    boundary_value_at_1: Option<Complex64>,
    lipschitz_at_1: bool,
    exact_coeffs: Option<Vec<Complex64>>,
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Weight")
            .field("id", &self.id)
            .field("boundary_value_at_1", &self.boundary_value_at_1)
            .field("lipschitz_at_1", &self.lipschitz_at_1)
            .field("exact_coeffs", &self.exact_coeffs)
            .finish()
    }
}

impl Weight {
    pub fn closed_form<F>(
        id: impl Into<String>,
        eval: F,
        boundary_value_at_1: Option<Complex64>,
        lipschitz_at_1: bool,
    ) -> Result<Self>
    where
        F: Fn(Complex64) -> Complex64 + Send + Sync + 'static,
    {
        let w = Weight {
            id: id.into(),
            eval: Arc::new(eval),
            boundary_value_at_1,
            lipschitz_at_1,
            exact_coeffs: None,
        };
        w.validate()?;
        Ok(w)
    }

    /// `g(z) = Σ cₖ zᵏ`.
    pub fn polynomial(id: impl Into<String>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::ContractViolation("empty polynomial weight".into()));
        }
        let c = coeffs.clone();
        let horner = move |z: Complex64| c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &x| acc * z + x);
        let g1 = horner(ONE);
        let w = Weight {
            id: id.into(),
            eval: Arc::new(horner),
            boundary_value_at_1: Some(g1),
            lipschitz_at_1: true,
            exact_coeffs: Some(coeffs),
        };
        w.validate()?;
        Ok(w)
    }

    pub fn constant(value: Complex64) -> Self {
        Weight {
            id: format!("const({value})"),
            eval: Arc::new(move |_| value),
            boundary_value_at_1: Some(value),
            lipschitz_at_1: true,
            exact_coeffs: Some(vec![value]),
        }
    }

    fn validate(&self) -> Result<()> {
        for z in halton_disc(256, 1.0) {
            let v = (self.eval)(z);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::SamplingFailure { point: z });
            }
        }
        if let Some(g1) = self.boundary_value_at_1 {
            // radial samples g(1 − 2⁻ᵐ) must approach g(1): either already
            // close, or shrinking between m = 8 and m = 12
            let gap = |m: i32| ((self.eval)(Complex64::new(1.0 - 2f64.powi(-m), 0.0)) - g1).norm();
            let (g8, g12) = (gap(8), gap(12));
            if !(g12 <= 1e-9 * g1.norm().max(1.0) || g12 <= 0.3 * g8) {
                return Err(Error::ContractViolation(format!(
                    "radial samples of weight `{}` do not approach the stated g(1) = {g1} (gaps {g8:e}, {g12:e})",
                    self.id
                )));
            }
        }
        Ok(())
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.eval)(z)
    }

    pub fn evaluator(&self) -> Evaluator {
        self.eval.clone()
    }

    pub fn boundary_value_at_1(&self) -> Option<Complex64> {
        self.boundary_value_at_1
    }

    pub fn lipschitz_at_1(&self) -> bool {
        self.lipschitz_at_1
    }

    /// `g(ω)`, using the stored boundary value when `ω = 1`.
    pub fn value_at(&self, omega: Complex64) -> Complex64 {
        if (omega - ONE).norm() < 1e-12 {
            if let Some(g1) = self.boundary_value_at_1 {
                return g1;
            }
        }
        if omega.norm() < 1.0 {
            return (self.eval)(omega);
        }
        (self.eval)(omega * (1.0 - 2f64.powi(-30)))
    }

    /// `c·g`.
    pub fn scaled(&self, c: Complex64) -> Self {
        let inner = self.eval.clone();
        Weight {
            id: format!("{}*{c}", self.id),
            eval: Arc::new(move |z| c * inner(z)),
            boundary_value_at_1: self.boundary_value_at_1.map(|g| c * g),
            lipschitz_at_1: self.lipschitz_at_1,
            exact_coeffs: self.exact_coeffs.as_ref().map(|v| v.iter().map(|x| c * x).collect()),
        }
    }

    pub fn maclaurin(&self, n: usize) -> Result<TaylorSeries> {
        if let Some(c) = &self.exact_coeffs {
            let mut c = c.clone();
            if c.len() > n {
                return Err(Error::ContractViolation(format!(
                    "polynomial weight of degree {} exceeds truncation {n}",
                    c.len() - 1
                )));
            }
            c.resize(n.max(1), Complex64::new(0.0, 0.0));
            return TaylorSeries::exact(c);
        }
        extract_dual_radius(&*self.eval, SamplingConfig::with_n(n))
    }

    /// `sup |g|` over 256 interior quasi-random points and 512 points at radius 0.999.
    pub fn sup_estimate(&self) -> f64 {
        halton_disc(256, 1.0)
            .into_iter()
            .chain(crate::sampling::circle(512, 0.999))
            .map(|z| (self.eval)(z).norm())
            .fold(0.0, f64::max)
    }
}
