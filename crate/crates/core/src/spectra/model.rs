//! Closed-form spectral sets: a disc, finitely many points, a spiral
//! `{c·e^{−at}: t ≥ 0}` and possibly 0.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classify::{Classification, TypeLabel};
use crate::error::{Error, Result};
use crate::symbols::{boundary_jet, BoundaryJet, Symbol, Weight};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
/// Tolerance for "the boundary data is at 1" and "φ(ζ) = ζ".
const POINT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spiral {
    #[serde(with = "crate::serde_complex")]
    pub scale: Complex64,
    #[serde(with = "crate::serde_complex")]
    pub rate: Complex64,
}

impl Spiral {
    pub fn at(&self, t: f64) -> Complex64 {
        self.scale * (-self.rate * t).exp()
    }

    /// Past this parameter the curve is within `e^{−20}` of 0.
    pub fn horizon(&self) -> f64 {
        ((self.scale.norm().ln() + 20.0) / self.rate.re).max(0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumModel {
    pub disc_radius: Option<f64>,
    #[serde(with = "crate::serde_complex::vec")]
    pub extra_points: Vec<Complex64>,
    pub spiral: Option<Spiral>,
    pub includes_zero: bool,
    pub provenance: String,
}

impl SpectrumModel {
    /// Points inside the disc are absorbed; a spiral brings its limit point 0.
    pub fn new(
        disc_radius: Option<f64>,
        extra_points: Vec<Complex64>,
        spiral: Option<Spiral>,
        includes_zero: bool,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if let Some(r) = disc_radius {
            if !(r >= 0.0 && r.is_finite()) {
                return Err(Error::ContractViolation(format!("disc radius {r}")));
            }
        }
        if let Some(s) = spiral {
            if !(s.rate.re > 0.0) {
                return Err(Error::ContractViolation(format!("spiral rate {} needs Re > 0", s.rate)));
            }
        }
        let extra_points = match disc_radius {
            Some(r) => extra_points.into_iter().filter(|z| z.norm() > r).collect(),
            None => extra_points,
        };
        Ok(SpectrumModel {
            disc_radius,
            extra_points,
            spiral,
            includes_zero: includes_zero || spiral.is_some() || disc_radius.is_some(),
            provenance: provenance.into(),
        })
    }

    pub fn zero(provenance: impl Into<String>) -> Self {
        SpectrumModel {
            disc_radius: None,
            extra_points: Vec::new(),
            spiral: None,
            includes_zero: true,
            provenance: provenance.into(),
        }
    }

    /// Largest modulus in the set.
    pub fn spectral_radius(&self) -> f64 {
        let mut r = self.disc_radius.unwrap_or(0.0);
        for z in &self.extra_points {
            r = r.max(z.norm());
        }
        if let Some(s) = self.spiral {
            // |c|e^{−Re(a)t} is largest at t = 0
            r = r.max(s.scale.norm());
        }
        r
    }

    /// `count` points on the disc boundary circle, then `count` points of the
    /// spiral for `t ∈ [0, 3]`; the extra points when neither is present.
    pub fn probes(&self, count: usize) -> Vec<Complex64> {
        let mut out = Vec::new();
        if let Some(r) = self.disc_radius {
            out.extend((0..count).map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / count as f64)));
        }
        if let Some(s) = self.spiral {
            let last = (count.max(2) - 1) as f64;
            out.extend((0..count).map(|k| s.at(3.0 * k as f64 / last)));
        }
        if out.is_empty() {
            out.extend(self.extra_points.iter().copied());
        }
        out
    }

    /// Axis-aligned box `[re_min, re_max] × [im_min, im_max]` around the set,
    /// scaled by `factor` about its centre; half-widths are at least 0.1.
    pub fn bounding_region(&self, factor: f64) -> [f64; 4] {
        let mut pts: Vec<Complex64> = self.extra_points.clone();
        if self.includes_zero {
            pts.push(Complex64::new(0.0, 0.0));
        }
        if let Some(r) = self.disc_radius {
            pts.extend([Complex64::new(r, r), Complex64::new(-r, -r)]);
        }
        if let Some(s) = self.spiral {
            let t_max = s.horizon();
            pts.extend((0..=4000).map(|k| s.at(t_max * k as f64 / 4000.0)));
        }
        if pts.is_empty() {
            return [-1.0, 1.0, -1.0, 1.0];
        }
        let fold = |f: fn(&Complex64) -> f64, init: f64, pick: fn(f64, f64) -> f64| pts.iter().map(f).fold(init, pick);
        let (x0, x1) = (
            fold(|z| z.re, f64::INFINITY, f64::min),
            fold(|z| z.re, f64::NEG_INFINITY, f64::max),
        );
        let (y0, y1) = (
            fold(|z| z.im, f64::INFINITY, f64::min),
            fold(|z| z.im, f64::NEG_INFINITY, f64::max),
        );
        let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
        let hx = ((x1 - x0) / 2.0 * factor).max(0.1);
        let hy = ((y1 - y0) / 2.0 * factor).max(0.1);
        [cx - hx, cx + hx, cy - hy, cy + hy]
    }
}

/// Spectrum and essential spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub spectrum: SpectrumModel,
    pub essential: SpectrumModel,
}

fn require(ok: bool, theorem: &str, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::hypothesis(theorem, detail()))
    }
}

/// `Re(1/p − 1 + ζφ''(ζ)/p²)`: the horocyclic margin after rotating `ζ` to 1.
fn elf_margin(jet: &BoundaryJet) -> f64 {
    let p = jet.d1.re;
    (1.0 / p - 1.0 + jet.zeta * jet.d2 / (p * p)).re
}

fn check_elf_at_fixed_point(c: &Classification, jet: &BoundaryJet, theorem: &str) -> Result<()> {
    require((jet.phi_at - jet.zeta).norm() <= POINT_TOL, theorem, || {
        format!("boundary point {} is not fixed (φ = {})", jet.zeta, jet.phi_at)
    })?;
    let margin = elf_margin(jet);
    require(margin > 1e-10, theorem, || {
        format!("not horocyclic at {} (margin {margin:e})", jet.zeta)
    })?;
    if (jet.zeta - ONE).norm() <= POINT_TOL {
        require(c.elf_witnessed, theorem, || {
            "1 is not the only boundary preimage of 1".into()
        })?;
    }
    Ok(())
}

/// Requirements on the weight at the boundary point 1.
fn weight_at_one(g: &Weight, jet: &BoundaryJet, theorem: &str) -> Result<Complex64> {
    require((jet.zeta - ONE).norm() <= POINT_TOL, theorem, || {
        format!(
            "weighted predictions need the boundary fixed point at 1 (got {})",
            jet.zeta
        )
    })?;
    require(g.lipschitz_at_1(), theorem, || {
        format!("weight `{}` is not differentiable at 1", g.id())
    })?;
    g.boundary_value_at_1()
        .ok_or_else(|| Error::hypothesis(theorem, format!("weight `{}` has no boundary value at 1", g.id())))
}

/// Closed-form `Sp` and `Sp_e` of `C_φ` or `C_{g,φ}`.
///
/// `jet` is the boundary jet at `ω` for boundary Denjoy–Wolff points, and at
/// the boundary point `ζ` of the essentially linear fractional structure when
/// `ω` is interior. Every theorem precondition that can be checked from this
/// data is checked; the rest (continuity and injectivity on the closed disc,
/// Hölder smoothness beyond third order) are the caller's.
pub fn predict_spectrum(c: &Classification, jet: Option<&BoundaryJet>, weight: Option<&Weight>) -> Result<Prediction> {
    let jet = jet.ok_or_else(|| Error::hypothesis("spectral model", "no boundary jet supplied"))?;
    match c.type_label {
        TypeLabel::Hyperbolic => hyperbolic(c, jet, weight),
        TypeLabel::Dilation => dilation(c, jet, weight),
        TypeLabel::ParabolicNonauto => parabolic(c, jet, weight),
        TypeLabel::ParabolicAuto => Err(Error::hypothesis(
            "spectral model",
            "parabolic automorphism type lies outside the closed-form theorems",
        )),
    }
}

/// The boundary jet [`predict_spectrum`] needs: the Denjoy–Wolff jet for
/// boundary types; for an interior point, the jet at the boundary fixed point
/// (a Möbius boundary fixed point, the stored jet's point, or 1).
pub fn boundary_data(s: &Symbol, c: &Classification) -> Result<Option<BoundaryJet>> {
    if let Some(j) = &c.jet {
        return Ok(Some(j.clone()));
    }
    let zeta = if let Some(m) = s.mobius() {
        match m.boundary_fixed_points(1e-10).first() {
            Some(&z) => z,
            None => return Ok(None),
        }
    } else if let Some(j) = s.exact_jet() {
        j.zeta
    } else {
        ONE
    };
    match boundary_jet(s, zeta) {
        Ok(j) => Ok(Some(j)),
        Err(Error::LowSmoothness { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn equal_pair(m: SpectrumModel) -> Prediction {
    Prediction {
        spectrum: m.clone(),
        essential: m,
    }
}

fn degenerate_weight(g: &Weight, g1: Complex64) -> Option<Prediction> {
    (g1.norm() == 0.0 && g.lipschitz_at_1()).then(|| equal_pair(SpectrumModel::zero("weighted-vanishing-at-1")))
}

fn hyperbolic(c: &Classification, jet: &BoundaryJet, weight: Option<&Weight>) -> Result<Prediction> {
    let p = jet.d1.re;
    require(p > 0.0 && p < 1.0, "hyperbolic model", || {
        format!("φ'(ω) = {p} not in (0, 1)")
    })?;
    check_elf_at_fixed_point(c, jet, "hyperbolic model")?;
    let scale = match weight {
        None => 1.0,
        Some(g) => {
            let g1 = weight_at_one(g, jet, "weighted hyperbolic model")?;
            if let Some(pred) = degenerate_weight(g, g1) {
                return Ok(pred);
            }
            g1.norm()
        }
    };
    let tag = if weight.is_some() {
        "weighted-hyperbolic"
    } else {
        "hyperbolic"
    };
    Ok(equal_pair(SpectrumModel::new(
        Some(scale * p.powf(-0.5)),
        vec![],
        None,
        true,
        tag,
    )?))
}

fn dilation(c: &Classification, jet: &BoundaryJet, weight: Option<&Weight>) -> Result<Prediction> {
    let lambda = c.derivative;
    require(lambda.norm() < 1.0, "interior fixed point model", || {
        format!("|φ'(ω)| = {} ≥ 1", lambda.norm())
    })?;
    if (jet.phi_at - jet.zeta).norm() > POINT_TOL {
        // φ(ζ) ≠ ζ: a power of C_φ is compact, so Sp_e = {0} and the
        // spectrum is {0} with the Koenigs points
        return compact_power(c, weight);
    }
    let p = jet.d1.re;
    require(p > 1.0, "interior fixed point model", || {
        format!("φ'(ζ) = {p} is not > 1")
    })?;
    check_elf_at_fixed_point(c, jet, "interior fixed point model")?;
    match weight {
        None => {
            let r = p.powf(-0.5);
            // least positive N with |φ'(ω)|^N ≤ r; the points are n = 0..N−1
            let mut points = vec![ONE];
            let mut n = 1;
            while lambda.norm().powi(n) > r {
                points.push(lambda.powi(n));
                n += 1;
            }
            Ok(Prediction {
                spectrum: SpectrumModel::new(Some(r), points, None, true, "interior-fixed-point")?,
                essential: SpectrumModel::new(Some(r), vec![], None, true, "interior-fixed-point")?,
            })
        }
        Some(g) => {
            let g1 = weight_at_one(g, jet, "weighted interior fixed point model")?;
            if let Some(pred) = degenerate_weight(g, g1) {
                return Ok(pred);
            }
            let r = g1.norm() * p.powf(-0.5);
            let gw = g.value_at(c.omega);
            // least nonnegative N with |g(ω)||φ'(ω)|^N ≤ r
            let mut points = Vec::new();
            let mut n = 0;
            while gw.norm() * lambda.norm().powi(n) > r {
                points.push(gw * lambda.powi(n));
                n += 1;
            }
            Ok(Prediction {
                spectrum: SpectrumModel::new(Some(r), points, None, true, "weighted-interior-fixed-point")?,
                essential: SpectrumModel::new(Some(r), vec![], None, true, "weighted-interior-fixed-point")?,
            })
        }
    }
}

/// `{0} ∪ {g(ω)φ'(ω)ⁿ: n ≥ 0}`, listed down to modulus `1e−12`.
fn compact_power(c: &Classification, weight: Option<&Weight>) -> Result<Prediction> {
    let lambda = c.derivative;
    let gw = weight.map_or(ONE, |g| g.value_at(c.omega));
    let mut points = Vec::new();
    let mut z = gw;
    while z.norm() > 1e-12 {
        points.push(z);
        z *= lambda;
    }
    Ok(Prediction {
        spectrum: SpectrumModel::new(None, points, None, true, "compact-power")?,
        essential: SpectrumModel::zero("compact-power"),
    })
}

fn parabolic(c: &Classification, jet: &BoundaryJet, weight: Option<&Weight>) -> Result<Prediction> {
    check_elf_at_fixed_point(c, jet, "parabolic model")?;
    // ωφ''(ω) is φ''(1) after rotating ω to 1
    let a = jet.zeta * jet.d2;
    require(a.re > 0.0, "parabolic model", || {
        format!("Re φ''(ω) = {} is not positive", a.re)
    })?;
    match weight {
        None => Ok(equal_pair(SpectrumModel::new(
            None,
            vec![],
            Some(Spiral { scale: ONE, rate: a }),
            true,
            "parabolic",
        )?)),
        Some(g) => {
            let g1 = weight_at_one(g, jet, "weighted parabolic model")?;
            if let Some(pred) = degenerate_weight(g, g1) {
                return Ok(pred);
            }
            let s = jet.schwarzian.ok_or(Error::MissingThirdDerivative)?;
            let flag = (jet.d2.conj() * s).re;
            require(flag >= 0.0, "weighted parabolic model", || {
                format!("Re(conj(φ''(1))·Sφ(1)) = {flag} < 0")
            })?;
            Ok(equal_pair(SpectrumModel::new(
                None,
                vec![],
                Some(Spiral { scale: g1, rate: a }),
                true,
                "weighted-parabolic",
            )?))
        }
    }
}

/// Distance from `λ` to the model set.
pub fn model_distance(model: &SpectrumModel, lambda: Complex64) -> f64 {
    let mut best = f64::INFINITY;
    if let Some(r) = model.disc_radius {
        best = best.min((lambda.norm() - r).max(0.0));
    }
    for z in &model.extra_points {
        best = best.min((lambda - z).norm());
    }
    if model.includes_zero {
        best = best.min(lambda.norm());
    }
    if let Some(s) = model.spiral {
        best = best.min(spiral_distance(&s, lambda));
    }
    best
}

/// Coarse grid of 256 parameters on `[0, T*]`, then golden-section search in
/// the bracket around the best grid point. The limit point 0 is included.
fn spiral_distance(s: &Spiral, lambda: Complex64) -> f64 {
    let t_max = s.horizon();
    let f = |t: f64| (lambda - s.at(t)).norm();
    let step = t_max / 255.0;
    let (k, _) = (0..256)
        .map(|k| (k, f(k as f64 * step)))
        .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
    let (mut lo, mut hi) = ((k as f64 - 1.0).max(0.0) * step, ((k + 1) as f64).min(255.0) * step);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut x1, mut x2) = (hi - g * (hi - lo), lo + g * (hi - lo));
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if hi - lo <= 1e-15 * t_max.max(1.0) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    f1.min(f2).min(f(lo)).min(f(hi)).min(lambda.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::classify_type;
    use crate::symbols::{boundary_jet, symbol, weight};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn predict(id: &str, g: Option<&str>) -> Result<Prediction> {
        let s = symbol(id).unwrap();
        let cl = classify_type(&s).unwrap();
        let jet = boundary_jet(&s, ONE).unwrap();
        let w = g.map(|g| weight(g).unwrap());
        predict_spectrum(&cl, Some(&jet), w.as_ref())
    }

    #[test]
    fn unweighted_examples() {
        let p = predict("EIHT", None).unwrap();
        assert!((p.spectrum.disc_radius.unwrap() - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(p.spectrum, p.essential);

        let p = predict("ELFSQE", None).unwrap();
        assert!((p.spectrum.disc_radius.unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(p.spectrum.extra_points, vec![ONE]);
        assert!(p.essential.extra_points.is_empty());

        let p = predict("EIPC", None).unwrap();
        let s = p.spectrum.spiral.unwrap();
        assert_eq!((s.scale, s.rate), (ONE, c(2.0, 1.0)));
        assert!(p.spectrum.includes_zero);
        assert_eq!(p.spectrum, p.essential);
    }

    #[test]
    fn weighted_examples() {
        let p = predict("EIHT", Some("W-EIHT")).unwrap();
        assert!((p.spectrum.disc_radius.unwrap() - 1.0).abs() < 1e-12);
        assert_eq!(p.spectrum, p.essential);

        let p = predict("ELFSQE", Some("W-ELFSQE")).unwrap();
        assert!((p.spectrum.disc_radius.unwrap() - 0.5f64.sqrt()).abs() < 1e-12);
        let pts = &p.spectrum.extra_points;
        assert_eq!(pts.len(), 3);
        for (z, want) in pts.iter().zip([8.0, 3.0, 9.0 / 8.0]) {
            // φ'(ω) at the interior fixed point is numerical
            assert!((z - c(want, 0.0)).norm() < 1e-8, "{z}");
        }
        assert!(p.essential.extra_points.is_empty());

        let p = predict("EIPC", Some("W-EIPC")).unwrap();
        let s = p.spectrum.spiral.unwrap();
        assert_eq!((s.scale, s.rate), (c(0.0, 2.0), c(2.0, 1.0)));

        let p = predict("EIHT", Some("ONE-MINUS-Z")).unwrap();
        assert_eq!(p.spectrum, SpectrumModel::zero("weighted-vanishing-at-1"));
    }

    #[test]
    fn weight_scaling_covariance() {
        let s = symbol("ELFSQE").unwrap();
        let cl = classify_type(&s).unwrap();
        let jet = boundary_jet(&s, ONE).unwrap();
        let g = weight("W-ELFSQE").unwrap();
        let k = c(0.6, -0.8) * 2.0;
        let a = predict_spectrum(&cl, Some(&jet), Some(&g)).unwrap().spectrum;
        let b = predict_spectrum(&cl, Some(&jet), Some(&g.scaled(k))).unwrap().spectrum;
        assert!((b.disc_radius.unwrap() - 2.0 * a.disc_radius.unwrap()).abs() < 1e-12);
        for (x, y) in a.extra_points.iter().zip(&b.extra_points) {
            assert!((k * x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn compact_power_case() {
        let s = symbol("ELFSQE").unwrap();
        let cl = classify_type(&s).unwrap();
        let mut jet = boundary_jet(&s, ONE).unwrap();
        jet.phi_at = c(0.0, 1.0);
        let p = predict_spectrum(&cl, Some(&jet), None).unwrap();
        assert_eq!(p.essential, SpectrumModel::zero("compact-power"));
        for (z, want) in p.spectrum.extra_points.iter().zip([1.0, 0.375, 0.140625]) {
            assert!((z - c(want, 0.0)).norm() < 1e-8);
        }
    }

    #[test]
    fn hypothesis_failures() {
        let s = symbol("EIPC").unwrap();
        let cl = classify_type(&s).unwrap();
        let mut jet = boundary_jet(&s, ONE).unwrap();
        jet.schwarzian = Some(c(-1.0, 0.0));
        let g = weight("W-EIPC").unwrap();
        assert!(matches!(
            predict_spectrum(&cl, Some(&jet), Some(&g)),
            Err(Error::HypothesisViolation { .. })
        ));
        assert!(predict_spectrum(&cl, None, None).is_err());
        jet.d3 = None;
        jet.schwarzian = None;
        assert!(matches!(
            predict_spectrum(&cl, Some(&jet), Some(&g)),
            Err(Error::MissingThirdDerivative)
        ));
    }

    #[test]
    fn distances() {
        let disc = SpectrumModel::new(Some(1.0), vec![], None, true, "t").unwrap();
        assert_eq!(model_distance(&disc, c(2.0, 0.0)), 1.0);
        let sp = SpectrumModel::new(None, vec![], Some(Spiral { scale: ONE, rate: ONE }), true, "t").unwrap();
        assert!(model_distance(&sp, c((-1f64).exp(), 0.0)) < 1e-12);
        let eipc = predict("EIPC", None).unwrap().spectrum;
        let on_curve = (-c(2.0, 1.0) * 0.7).exp();
        assert!(model_distance(&eipc, on_curve) < 1e-9);
        assert!(model_distance(&eipc, c(0.0, 0.0)) == 0.0);
        assert!(model_distance(&eipc, c(-1.0, 0.0)) > 0.5);
    }

    #[test]
    fn extra_points_inside_disc_are_absorbed() {
        let m = SpectrumModel::new(Some(1.0), vec![c(0.5, 0.0), c(2.0, 0.0)], None, false, "t").unwrap();
        assert_eq!(m.extra_points, vec![c(2.0, 0.0)]);
        assert!(SpectrumModel::new(
            None,
            vec![],
            Some(Spiral {
                scale: ONE,
                rate: c(-1.0, 0.0)
            }),
            true,
            "t"
        )
        .is_err());
    }

    #[test]
    fn json_layout() {
        let m = predict("EIPC", Some("W-EIPC")).unwrap().spectrum;
        let v = serde_json::to_value(&m).unwrap();
        assert_eq!(v["spiral"]["rate"], serde_json::json!({"re": 2.0, "im": 1.0}));
        assert_eq!(v["spiral"]["scale"], serde_json::json!({"re": 0.0, "im": 2.0}));
        assert_eq!(v["includes_zero"], serde_json::json!(true));
        assert!(v["disc_radius"].is_null());
        let back: SpectrumModel = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);
    }
}
