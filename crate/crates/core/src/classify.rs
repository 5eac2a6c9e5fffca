//! Denjoy–Wolff point, type, horocyclic test, the linear fractional
//! approximant and orbit diagnostics.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::mobius::MobiusMap;
use crate::sampling::{circle, halfplane_grid};
use crate::symbols::{boundary_jet, BoundaryJet, JetMethod, Symbol};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const MAX_STEPS: usize = 100_000;
const INTERIOR_RADIUS: f64 = 0.999;
const BOUNDARY_WINDOW: usize = 50;
const SNAP_DISTANCE: f64 = 1e-3;
const TIE_BAND: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeLabel {
    Dilation,
    Hyperbolic,
    ParabolicAuto,
    ParabolicNonauto,
}

impl TypeLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            TypeLabel::Dilation => "dilation",
            TypeLabel::Hyperbolic => "hyperbolic",
            TypeLabel::ParabolicAuto => "parabolic_auto",
            TypeLabel::ParabolicNonauto => "parabolic_nonauto",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenjoyWolff {
    pub omega: Complex64,
    pub derivative: Complex64,
    pub interior: bool,
    /// Boundary jet at `ω` for boundary Denjoy–Wolff points.
    pub jet: Option<BoundaryJet>,
}

/// Four-point complex stencil; the `h²` terms of the real and imaginary
/// central differences cancel.
fn stencil_derivative(s: &Symbol, z: Complex64, h: f64) -> Complex64 {
    let ih = Complex64::new(0.0, h);
    let real = (s.eval(z + h) - s.eval(z - h)) / (2.0 * h);
    let imag = (s.eval(z + ih) - s.eval(z - ih)) / (2.0 * ih);
    0.5 * (real + imag)
}

pub fn denjoy_wolff(s: &Symbol) -> Result<DenjoyWolff> {
    let mut z = Complex64::new(0.0, 0.0);
    let mut history: VecDeque<Complex64> = VecDeque::with_capacity(10);
    let mut streak = 0;
    let nonconvergence = |history: &VecDeque<Complex64>| Error::NonConvergence {
        context: format!("Denjoy–Wolff iteration of `{}`", s.id()),
        last_points: history.iter().copied().collect(),
    };

    for _ in 0..MAX_STEPS {
        let next = s.eval(z);
        if !(next.re.is_finite() && next.im.is_finite()) {
            return Err(nonconvergence(&history));
        }
        if history.len() == 10 {
            history.pop_front();
        }
        history.push_back(next);
        let settled = (next - z).norm() < 1e-13;
        z = next;
        if z.norm() >= INTERIOR_RADIUS {
            streak += 1;
        } else {
            streak = 0;
            if settled {
                return interior_point(s, z);
            }
        }
        if streak >= BOUNDARY_WINDOW {
            return boundary_point(s, z, &mut history).ok_or_else(|| nonconvergence(&history))?;
        }
    }
    Err(nonconvergence(&history))
}

fn interior_point(s: &Symbol, mut z: Complex64) -> Result<DenjoyWolff> {
    // damped Newton on φ(z) − z
    for _ in 0..50 {
        let g = s.eval(z) - z;
        if g.norm() < 1e-15 {
            break;
        }
        let dg = stencil_derivative(s, z, 1e-5) - 1.0;
        let mut step = g / dg;
        while step.norm() > 1e-2 {
            step *= 0.5;
        }
        z -= step;
    }
    let residual = (s.eval(z) - z).norm();
    if residual >= 1e-12 {
        return Err(Error::NonConvergence {
            context: format!("fixed-point refinement of `{}` (residual {residual:e})", s.id()),
            last_points: vec![z],
        });
    }
    let derivative = match s.mobius() {
        Some(m) => m.derivative(z),
        None => stencil_derivative(s, z, 1e-5),
    };
    if derivative.norm() >= 1.0 {
        return Err(Error::hypothesis(
            "Denjoy–Wolff theorem",
            format!(
                "interior fixed point {z} with |φ'| = {} ≥ 1 (elliptic automorphism)",
                derivative.norm()
            ),
        ));
    }
    Ok(DenjoyWolff {
        omega: z,
        derivative,
        interior: true,
        jet: None,
    })
}

/// Keeps iterating until the orbit's steps are tiny, then projects to the
/// circle and snaps to a known boundary fixed point.
fn boundary_point(s: &Symbol, mut z: Complex64, history: &mut VecDeque<Complex64>) -> Option<Result<DenjoyWolff>> {
    for _ in 0..MAX_STEPS {
        if 1.0 - z.norm() < 1e-12 {
            break;
        }
        let next = s.eval(z);
        if !(next.re.is_finite() && next.im.is_finite()) {
            break;
        }
        if history.len() == 10 {
            history.pop_front();
        }
        history.push_back(next);
        let step = (next - z).norm();
        z = next;
        if step < 1e-7 {
            break;
        }
    }
    let projected = z / z.norm();

    let mut candidates: Vec<Complex64> = Vec::new();
    if let Some(m) = s.mobius() {
        candidates.extend(m.boundary_fixed_points(1e-9).into_iter().map(|p| p / p.norm()));
    }
    if let Some(j) = s.exact_jet() {
        candidates.push(j.zeta);
    }
    let snapped = candidates
        .into_iter()
        .filter(|c| (c - projected).norm() < SNAP_DISTANCE)
        .min_by(|a, b| (a - projected).norm().total_cmp(&(b - projected).norm()));
    let omega = snapped.unwrap_or(projected);
    Some(boundary_jet(s, omega).map(|jet| DenjoyWolff {
        omega,
        derivative: jet.d1,
        interior: false,
        jet: Some(jet),
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HorocyclicReport {
    pub flag: bool,
    /// `Re(1/p − 1 + a/p²)` at 1, absent when 1 is not a boundary fixed point.
    pub margin: Option<f64>,
    /// Infimum of `Re Φ` over the fixed half-plane grid.
    pub empirical_c: Option<f64>,
    /// `sup |1−φ|²/(1−|φ|²)` over 512 points at radius 0.999.
    pub beta: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub symbol_id: String,
    #[serde(with = "crate::serde_complex")]
    pub omega: Complex64,
    #[serde(with = "crate::serde_complex")]
    pub derivative: Complex64,
    #[serde(rename = "type")]
    pub type_label: TypeLabel,
    pub horocyclic: HorocyclicReport,
    pub elf_witnessed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jet: Option<BoundaryJet>,
}

pub fn classify_type(s: &Symbol) -> Result<Classification> {
    let dw = denjoy_wolff(s)?;
    let horocyclic = horocyclic_test(s)?;
    let elf_witnessed = horocyclic.flag && elf_witnessed(s);
    let type_label = if dw.interior {
        TypeLabel::Dilation
    } else {
        let jet = dw.jet.as_ref().expect("boundary Denjoy–Wolff point carries a jet");
        let tol = if jet.method == JetMethod::Exact { TIE_BAND } else { 1e-6 };
        let p = jet.d1.re;
        if p < 1.0 - tol {
            TypeLabel::Hyperbolic
        } else if p <= 1.0 + tol {
            parabolic_split(jet)?
        } else {
            return Err(Error::hypothesis(
                "Julia–Carathéodory inequality",
                format!("angular derivative {p} > 1 at the Denjoy–Wolff point"),
            ));
        }
    };
    Ok(Classification {
        symbol_id: s.id().to_string(),
        omega: dw.omega,
        derivative: dw.derivative,
        type_label,
        horocyclic,
        elf_witnessed,
        jet: dw.jet,
    })
}

/// Parabolic type test: `φ''(ω) = 0` or `Re(ωφ''(ω)) > 0` means
/// non-automorphism; a purely imaginary `ωφ''(ω)` with third-derivative data
/// means automorphism type.
fn parabolic_split(jet: &BoundaryJet) -> Result<TypeLabel> {
    let v = jet.zeta * jet.d2;
    if jet.d2.norm() < 1e-12 || v.re > TIE_BAND {
        return Ok(TypeLabel::ParabolicNonauto);
    }
    if v.re.abs() <= TIE_BAND {
        return match jet.d3 {
            Some(_) => Ok(TypeLabel::ParabolicAuto),
            None => Err(Error::IndeterminateType { value: v.re }),
        };
    }
    Err(Error::hypothesis(
        "parabolic type test",
        format!("Re(ωφ''(ω)) = {} < 0 cannot occur for a self-map", v.re),
    ))
}

fn cayley(z: Complex64) -> Complex64 {
    (1.0 + z) / (1.0 - z)
}

/// `Re Φ` over the half-plane grid, `Φ = T∘φ∘T⁻¹`.
fn empirical_c(s: &Symbol) -> Option<f64> {
    if let Some(h) = s.halfplane() {
        return Some(h.inf_real_part());
    }
    let inf = halfplane_grid()
        .into_iter()
        .map(|w| cayley(s.eval((w - 1.0) / (w + 1.0))).re)
        .filter(|x| x.is_finite())
        .fold(f64::INFINITY, f64::min);
    inf.is_finite().then_some(inf)
}

/// Smallest `β` with `φ(z)` in the horodisc `{|1−z|² < β(1−|z|²)}` for 512
/// points at radius 0.999.
pub fn horodisc_beta(s: &Symbol) -> f64 {
    circle(512, 0.999)
        .into_iter()
        .map(|z| {
            let w = s.eval(z);
            (1.0 - w).norm_sqr() / (1.0 - w.norm_sqr())
        })
        .fold(0.0, f64::max)
}

pub fn horocyclic_test(s: &Symbol) -> Result<HorocyclicReport> {
    let jet = match boundary_jet(s, ONE) {
        Ok(j) => j,
        Err(Error::LowSmoothness { .. }) => {
            return Ok(HorocyclicReport {
                flag: false,
                margin: None,
                empirical_c: empirical_c(s),
                beta: None,
            })
        }
        Err(e) => return Err(e),
    };
    if (jet.phi_at - ONE).norm() > 1e-8 {
        return Ok(HorocyclicReport {
            flag: false,
            margin: None,
            empirical_c: None,
            beta: None,
        });
    }
    let p = jet.d1.re;
    let margin = (1.0 / p - 1.0 + jet.d2 / (p * p)).re;
    let flag = margin > 1e-10;
    Ok(HorocyclicReport {
        flag,
        margin: Some(margin),
        empirical_c: empirical_c(s),
        beta: flag.then(|| horodisc_beta(s)),
    })
}

/// Numerical witness that 1 is the only boundary preimage of 1: the minimum of
/// `|1 − φ(0.999e^{it})|` over 720 angles sits at `|t| < 0.1`.
pub fn elf_witnessed(s: &Symbol) -> bool {
    let pts = circle(720, 0.999);
    let (j, _) = pts
        .iter()
        .enumerate()
        .map(|(j, &z)| (j, (1.0 - s.eval(z)).norm()))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let t = -PI + 2.0 * PI * j as f64 / 720.0;
    t.abs() < 0.1
}

/// `ψ = T⁻¹∘Ψ∘T` with `Ψ(w) = w/p + (1/p − 1 + a/p²)`, matching `φ` to second
/// order at 1.
pub fn elf_approximant(s: &Symbol) -> Result<MobiusMap> {
    let report = horocyclic_test(s)?;
    if !report.flag {
        return Err(Error::hypothesis(
            "linear fractional approximation",
            format!("not horocyclic at 1 (margin {:?})", report.margin),
        ));
    }
    let jet = boundary_jet(s, ONE)?;
    let p = jet.d1.re;
    let shift = Complex64::new(1.0 / p - 1.0, 0.0) + jet.d2 / (p * p);
    MobiusMap::from_halfplane_affine(Complex64::new(1.0 / p, 0.0), shift)
}

/// Partial sums `S_m = Σ_{k≤m} (1 − |φ^{[k]}(z0)|)` for `m = 0..=n_max`.
pub fn blaschke_diagnostic(s: &Symbol, z0: Complex64, n_max: usize) -> Result<Vec<f64>> {
    if z0.norm() >= 1.0 {
        return Err(Error::ParameterOutOfRange(format!(
            "orbit start {z0} is not in the disc"
        )));
    }
    let mut z = z0;
    let mut total = 0.0;
    let mut sums = Vec::with_capacity(n_max + 1);
    for k in 0..=n_max {
        if k > 0 {
            z = s.eval(z);
        }
        total += 1.0 - z.norm();
        sums.push(total);
    }
    Ok(sums)
}

#[derive(Debug, Clone, Serialize)]
pub struct JuliaRow {
    pub n: usize,
    /// `sup |1 − φ^{[n+1]}|²` over the sample.
    pub lhs_squared: f64,
    /// `sup |1 − φ^{[n+1]}|`, the unsquared quantity.
    pub lhs: f64,
    /// `φ'(1)ⁿ β`.
    pub bound: f64,
    pub holds: bool,
}

/// Iterated horodisc bound `|1 − φ^{[n+1]}(z)|² ≤ φ'(1)ⁿ β (1 − |φ^{[n+1]}(z)|²)
/// ≤ φ'(1)ⁿ β` on 512 points at radius 0.999, with relative slack.
pub fn julia_bound(s: &Symbol, n_max: usize, slack: f64) -> Result<Vec<JuliaRow>> {
    let report = horocyclic_test(s)?;
    let beta = report
        .beta
        .ok_or_else(|| Error::hypothesis("iterated horodisc bound", "symbol is not horocyclic at 1"))?;
    let p = boundary_jet(s, ONE)?.d1.re;
    let mut pts: Vec<Complex64> = circle(512, 0.999).into_iter().map(|z| s.eval(z)).collect();
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        if n > 0 {
            pts.iter_mut().for_each(|z| *z = s.eval(*z));
        }
        let lhs_squared = pts.iter().map(|z| (1.0 - z).norm_sqr()).fold(0.0, f64::max);
        let bound = p.powi(n as i32) * beta;
        rows.push(JuliaRow {
            n,
            lhs_squared,
            lhs: lhs_squared.sqrt(),
            bound,
            holds: lhs_squared <= bound * (1.0 + slack),
        });
    }
    Ok(rows)
}
