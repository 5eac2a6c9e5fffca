//! Symbol and weight specification files.
//!
//! ```json
//! {"kind": "catalogue", "catalogue_id": "EIHT"}
//! {"kind": "mobius", "mobius": {"a": 0.5, "b": 0, "c": 0, "d": 1}}
//! {"kind": "halfplane", "halfplane": {"slope": 0.5, "constant": 1,
//!   "gamma_terms": [{"beta": 2, "gamma": 1}]}}
//! ```
//!
//! Complex numbers are `{"re": .., "im": ..}` or a bare real. An optional
//! `jet_overrides` object `{zeta, phi_at, d1, d2, d3?}` attaches an exact
//! boundary jet.

use std::fmt;
use std::path::Path;

use hardy_spectra::mobius::MobiusMap;
use hardy_spectra::symbols::{self, BoundaryJet, GammaTerm, HalfplaneSpec, Symbol, Weight};
use hardy_spectra::Complex64;
use serde::Deserialize;

/// A spec file that could not be read or understood (exit code 2).
#[derive(Debug)]
pub struct SpecError(pub String);

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "spec error: {}", self.0)
    }
}

impl std::error::Error for SpecError {}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(untagged)]
enum ComplexIn {
    Real(f64),
    Pair {
        re: f64,
        #[serde(default)]
        im: f64,
    },
}

impl From<ComplexIn> for Complex64 {
    fn from(z: ComplexIn) -> Self {
        match z {
            ComplexIn::Real(re) => Complex64::new(re, 0.0),
            ComplexIn::Pair { re, im } => Complex64::new(re, im),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MobiusIn {
    a: ComplexIn,
    b: ComplexIn,
    c: ComplexIn,
    d: ComplexIn,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GammaIn {
    beta: ComplexIn,
    gamma: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct HalfplaneIn {
    slope: f64,
    constant: ComplexIn,
    #[serde(default)]
    gamma_terms: Vec<GammaIn>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct JetIn {
    zeta: ComplexIn,
    phi_at: ComplexIn,
    d1: ComplexIn,
    d2: ComplexIn,
    d3: Option<ComplexIn>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case")]
enum SymbolKindIn {
    Catalogue,
    Mobius,
    Halfplane,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SymbolSpec {
    kind: SymbolKindIn,
    id: Option<String>,
    catalogue_id: Option<String>,
    mobius: Option<MobiusIn>,
    halfplane: Option<HalfplaneIn>,
    jet_overrides: Option<JetIn>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum WeightSpec {
    Catalogue { catalogue_id: String },
    Polynomial { id: Option<String>, coeffs: Vec<ComplexIn> },
    Constant { value: ComplexIn },
}

fn missing(field: &str, kind: &str) -> SpecError {
    SpecError(format!("`{field}` is required for kind `{kind}`"))
}

fn read(arg: &str) -> Result<Option<String>, SpecError> {
    let path = Path::new(arg);
    if path.exists() {
        std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| SpecError(format!("cannot read {arg}: {e}")))
    } else {
        Ok(None)
    }
}

fn core(e: hardy_spectra::Error) -> anyhow::Error {
    anyhow::Error::new(e)
}

/// A path to a spec file, or a bare catalogue id.
pub fn load_symbol(arg: &str) -> anyhow::Result<Symbol> {
    match read(arg)? {
        Some(text) => parse_symbol(&text),
        None => symbols::symbol(arg)
            .map_err(|_| SpecError(format!("`{arg}` is neither a readable file nor a symbol catalogue id")).into()),
    }
}

pub fn parse_symbol(text: &str) -> anyhow::Result<Symbol> {
    let spec: SymbolSpec = serde_json::from_str(text).map_err(|e| SpecError(e.to_string()))?;
    let mut s = match spec.kind {
        SymbolKindIn::Catalogue => {
            let id = spec
                .catalogue_id
                .as_deref()
                .ok_or_else(|| missing("catalogue_id", "catalogue"))?;
            symbols::symbol(id).map_err(|e| SpecError(e.to_string()))?
        }
        SymbolKindIn::Mobius => {
            let m = spec.mobius.as_ref().ok_or_else(|| missing("mobius", "mobius"))?;
            let map =
                MobiusMap::new(m.a.into(), m.b.into(), m.c.into(), m.d.into()).map_err(|e| SpecError(e.to_string()))?;
            Symbol::from_mobius(spec.id.clone().unwrap_or_else(|| "mobius".into()), map)
                .map_err(|e| SpecError(e.to_string()))?
        }
        SymbolKindIn::Halfplane => {
            let h = spec
                .halfplane
                .as_ref()
                .ok_or_else(|| missing("halfplane", "halfplane"))?;
            let terms = h
                .gamma_terms
                .iter()
                .map(|t| GammaTerm {
                    beta: t.beta.into(),
                    gamma: t.gamma,
                })
                .collect();
            Symbol::from_halfplane(
                spec.id.clone().unwrap_or_else(|| "halfplane".into()),
                HalfplaneSpec::new(h.slope, h.constant.into(), terms),
            )
            .map_err(|e| SpecError(e.to_string()))?
        }
    };
    if let Some(j) = spec.jet_overrides {
        s = s.with_jet(BoundaryJet::exact(
            j.zeta.into(),
            j.phi_at.into(),
            j.d1.into(),
            j.d2.into(),
            j.d3.map(Into::into),
        ));
    }
    if let Some(id) = spec.id {
        s = s.with_id(id);
    }
    Ok(s)
}

/// A path to a weight spec file, or a bare weight catalogue id.
pub fn load_weight(arg: &str) -> anyhow::Result<Weight> {
    match read(arg)? {
        Some(text) => parse_weight(&text),
        None => symbols::weight(arg)
            .map_err(|_| SpecError(format!("`{arg}` is neither a readable file nor a weight catalogue id")).into()),
    }
}

pub fn parse_weight(text: &str) -> anyhow::Result<Weight> {
    let spec: WeightSpec = serde_json::from_str(text).map_err(|e| SpecError(e.to_string()))?;
    let w = match spec {
        WeightSpec::Catalogue { catalogue_id } => {
            symbols::weight(&catalogue_id).map_err(|e| SpecError(e.to_string()))?
        }
        WeightSpec::Polynomial { id, coeffs } => Weight::polynomial(
            id.unwrap_or_else(|| "polynomial".into()),
            coeffs.into_iter().map(Into::into).collect(),
        )
        .map_err(core)?,
        WeightSpec::Constant { value } => Weight::constant(value.into()),
    };
    Ok(w)
}
