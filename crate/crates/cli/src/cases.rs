//! The reproduction suite: every worked example and validator battery as a
//! case with gated checks and a verdict.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::time::Instant;

use hardy_spectra::classify::{
    blaschke_diagnostic, classify_type, elf_approximant, julia_bound, Classification, TypeLabel,
};
use hardy_spectra::mobius::MobiusMap;
use hardy_spectra::operators::{
    adjoint_auxiliaries, adjoint_via_cowen, composition_matrix, hs_partial_sums, hs_tail_ratio, multiplication_matrix,
    weighted_composition_matrix,
};
use hardy_spectra::sampling::rng;
use hardy_spectra::series::kernel_vector;
use hardy_spectra::spectra::{
    boundary_data, compact_difference, compare, coverage_report, eigenvalue_bound_gate, eigenvalues, koenigs_check,
    predict_spectrum, pseudospectrum_grid, verify_eigen_relation, EigenRelation, Grade, Prediction, Region,
    SpectralEstimate,
};
use hardy_spectra::symbols::{boundary_jet, symbol, weight, Symbol, Weight};
use hardy_spectra::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub n: usize,
    pub grid: (usize, usize),
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub grade: Grade,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationSummary {
    pub symbol_id: String,
    #[serde(rename = "type")]
    pub type_label: TypeLabel,
    #[serde(with = "hardy_spectra::serde_complex")]
    pub omega: Complex64,
    #[serde(with = "hardy_spectra::serde_complex")]
    pub derivative: Complex64,
}

impl From<&Classification> for ClassificationSummary {
    fn from(c: &Classification) -> Self {
        ClassificationSummary {
            symbol_id: c.symbol_id.clone(),
            type_label: c.type_label,
            omega: c.omega,
            derivative: c.derivative,
        }
    }
}

#[derive(Serialize)]
pub struct CaseReport {
    pub case_id: String,
    pub theorem: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<ClassificationSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<Prediction>,
    pub evidence: serde_json::Map<String, Value>,
    pub checks: Vec<Check>,
    pub verdict: Grade,
    pub wall_time: f64,
    /// The larger truncation's estimate, for file emission.
    #[serde(skip)]
    pub estimate: Option<SpectralEstimate>,
}

struct Case {
    report: CaseReport,
}

impl Case {
    fn new(id: &str, theorem: &'static str) -> Self {
        Case {
            report: CaseReport {
                case_id: id.to_string(),
                theorem,
                classification: None,
                model: None,
                evidence: serde_json::Map::new(),
                checks: Vec::new(),
                verdict: Grade::Pass,
                wall_time: 0.0,
                estimate: None,
            },
        }
    }

    fn push(&mut self, name: &str, grade: Grade, detail: String) {
        self.report.checks.push(Check {
            name: name.to_string(),
            grade,
            detail,
        });
    }

    /// A failed gated check fails the case.
    fn gate(&mut self, name: &str, ok: bool, detail: String) {
        self.push(name, if ok { Grade::Pass } else { Grade::Fail }, detail);
    }

    /// A failed heuristic check only downgrades the case to evidence-weak.
    fn heuristic(&mut self, name: &str, ok: bool, detail: String) {
        self.push(name, if ok { Grade::Pass } else { Grade::EvidenceWeak }, detail);
    }

    fn put(&mut self, key: &str, value: Value) {
        self.report.evidence.insert(key.to_string(), value);
    }

    fn finish(mut self) -> CaseReport {
        self.report.verdict = self
            .report
            .checks
            .iter()
            .fold(Grade::Pass, |acc, ch| worst(acc, ch.grade));
        self.report
    }
}

fn worst(a: Grade, b: Grade) -> Grade {
    match (a, b) {
        (Grade::Fail, _) | (_, Grade::Fail) => Grade::Fail,
        (Grade::EvidenceWeak, _) | (_, Grade::EvidenceWeak) => Grade::EvidenceWeak,
        _ => Grade::Pass,
    }
}

type Runner = fn(&mut Case, Settings) -> anyhow::Result<()>;

pub const CASE_IDS: [&str; 19] = [
    "EIHT",
    "ELFSQE",
    "EIPC",
    "EIHT-weighted",
    "ELFSQE-weighted",
    "EIPC-weighted",
    "schwarzian-EIPC",
    "zero-spectrum",
    "compact-power",
    "adjoint-battery",
    "kernel-battery",
    "fb-battery",
    "cowen-battery",
    "parabolic-intertwining",
    "hs-trend",
    "blaschke",
    "julia-bound",
    "compact-difference",
    "koenigs",
];

fn lookup(id: &str) -> Option<(&'static str, Runner)> {
    let entry: (&'static str, Runner) = match id {
        "EIHT" => ("hyperbolic-elf-spectrum", |c, s| spectral(c, s, "EIHT", None)),
        "ELFSQE" => ("interior-fixed-point-elf-spectrum", |c, s| {
            spectral(c, s, "ELFSQE", None)
        }),
        "EIPC" => ("parabolic-elf-spectrum", |c, s| spectral(c, s, "EIPC", None)),
        "EIHT-weighted" => ("weighted-hyperbolic-spectrum", |c, s| {
            spectral(c, s, "EIHT", Some("W-EIHT"))
        }),
        "ELFSQE-weighted" => ("weighted-interior-fixed-point-spectrum", |c, s| {
            spectral(c, s, "ELFSQE", Some("W-ELFSQE"))
        }),
        "EIPC-weighted" => ("weighted-parabolic-spectrum", |c, s| {
            spectral(c, s, "EIPC", Some("W-EIPC"))
        }),
        "schwarzian-EIPC" => ("weighted-parabolic-schwarzian-hypothesis", schwarzian),
        "zero-spectrum" => ("weight-vanishing-at-boundary-point", zero_spectrum),
        "compact-power" => ("compact-power-spectrum", compact_power),
        "adjoint-battery" => ("linear-fractional-adjoint-formula", adjoint_battery),
        "kernel-battery" => ("reproducing-kernel-identities", kernel_battery),
        "fb-battery" => ("hyperbolic-automorphism-eigenfunctions", fb_battery),
        "cowen-battery" => ("sector-translation-eigenfunctions", cowen_battery),
        "parabolic-intertwining" => ("parabolic-translation-intertwining", parabolic_intertwining),
        "hs-trend" => ("hilbert-schmidt-vanishing-weight", hs_trend),
        "blaschke" => ("non-blaschke-parabolic-orbits", blaschke),
        "julia-bound" => ("iterated-horodisc-bound", julia),
        "compact-difference" => ("compact-difference-from-approximant", compact_diff),
        "koenigs" => ("koenigs-eigenvalues", koenigs),
        _ => return None,
    };
    Some(entry)
}

pub fn is_case(id: &str) -> bool {
    lookup(id).is_some()
}

pub fn run_case(id: &str, settings: Settings) -> CaseReport {
    let (theorem, runner) = lookup(id).expect("known case id");
    let start = Instant::now();
    let mut case = Case::new(id, theorem);
    if let Err(e) = runner(&mut case, settings) {
        case.gate("completed", false, format!("error: {e}"));
    }
    let mut report = case.finish();
    report.wall_time = start.elapsed().as_secs_f64();
    report
}

/// Runs cases in parallel; reports come back in the order given.
pub fn run_cases(ids: &[&str], settings: Settings) -> Vec<CaseReport> {
    ids.par_iter().map(|id| run_case(id, settings)).collect()
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() < tol
}

/// Model expectations for the six worked spectra.
fn expected_model(id: &str, g: Option<&str>, p: &Prediction) -> (bool, String) {
    let sp = &p.spectrum;
    let r = sp.disc_radius.unwrap_or(f64::NAN);
    match (id, g) {
        ("EIHT", None) => (
            (r - 3f64.sqrt()).abs() < 1e-12 && p.spectrum == p.essential,
            format!("disc radius {r}"),
        ),
        ("ELFSQE", None) => (
            (r - 0.5f64.sqrt()).abs() < 1e-12
                && sp.extra_points.len() == 1
                && close(sp.extra_points[0], ONE, 1e-12)
                && p.essential.extra_points.is_empty(),
            format!("disc radius {r}, points {:?}", sp.extra_points),
        ),
        ("EIPC", None) => (
            sp.spiral
                .is_some_and(|s| close(s.rate, c(2.0, 1.0), 1e-8) && close(s.scale, ONE, 1e-12)),
            format!("spiral {:?}", sp.spiral),
        ),
        ("EIHT", Some(_)) => (
            (r - 1.0).abs() < 1e-12 && p.spectrum == p.essential,
            format!("disc radius {r}"),
        ),
        ("ELFSQE", Some(_)) => {
            let want = [8.0, 3.0, 1.125];
            let ok = (r - 0.5f64.sqrt()).abs() < 1e-12
                && sp.extra_points.len() == 3
                && sp
                    .extra_points
                    .iter()
                    .zip(want)
                    .all(|(z, w)| close(*z, c(w, 0.0), 1e-8))
                && p.essential.extra_points.is_empty();
            (
                ok,
                format!(
                    "disc radius {r}, {} points {:?}",
                    sp.extra_points.len(),
                    sp.extra_points
                ),
            )
        }
        ("EIPC", Some(_)) => (
            sp.spiral
                .is_some_and(|s| close(s.rate, c(2.0, 1.0), 1e-8) && close(s.scale, c(0.0, 2.0), 1e-12)),
            format!("spiral {:?}", sp.spiral),
        ),
        _ => (false, "no expectation".into()),
    }
}

fn expected_type(id: &str) -> TypeLabel {
    match id {
        "EIHT" => TypeLabel::Hyperbolic,
        "ELFSQE" => TypeLabel::Dilation,
        _ => TypeLabel::ParabolicNonauto,
    }
}

fn section(s: &Symbol, g: Option<&Weight>, n: usize) -> anyhow::Result<hardy_spectra::operators::OperatorMatrix> {
    Ok(match g {
        Some(g) => weighted_composition_matrix(g, s, n)?,
        None => composition_matrix(s, n)?,
    })
}

fn spectral(case: &mut Case, set: Settings, id: &str, wid: Option<&str>) -> anyhow::Result<()> {
    let s = symbol(id)?;
    let g = wid.map(weight).transpose()?;
    let cl = classify_type(&s)?;
    case.report.classification = Some((&cl).into());
    case.gate(
        "type",
        cl.type_label == expected_type(id),
        cl.type_label.as_str().into(),
    );

    let jet = boundary_data(&s, &cl)?;
    let pred = predict_spectrum(&cl, jet.as_ref(), g.as_ref())?;
    let (ok, detail) = expected_model(id, wid, &pred);
    case.gate("model", ok, detail);

    let model = pred.spectrum.clone();
    let region = Region::auto(&model);
    let small_n = 3 * set.n / 4;
    let small = pseudospectrum_grid(&section(&s, g.as_ref(), small_n)?, region, set.grid.0, set.grid.1)?;
    let large = pseudospectrum_grid(&section(&s, g.as_ref(), set.n)?, region, set.grid.0, set.grid.1)?;
    let cov = coverage_report(&small, &large, &model, 0.1, 0.9)?;
    case.push(
        "pseudospectra coverage",
        cov.grade,
        format!(
            "coverage {:.3} → {:.3} at N = {small_n} → {}",
            cov.small.coverage, cov.large.coverage, set.n
        ),
    );
    case.put("coverage", serde_json::to_value(&cov)?);

    if id == "EIHT" && wid.is_none() {
        let eps = large.pseudo_grid.quantile(0.1);
        let r = compare(&large, &model, eps, 0.2)?;
        case.heuristic(
            "eigenvalue containment",
            r.containment < 0.15,
            format!(
                "max model distance {:.3e} over {} eigenvalues with |λ| ≥ 0.2",
                r.containment, r.scored_eigenvalues
            ),
        );
    }

    if let Some(g) = &g {
        // unweighted spectral radius times |g(ω)|, plus 0.1
        let r = predict_spectrum(&cl, jet.as_ref(), None)?.spectrum.spectral_radius();
        let gate = eigenvalue_bound_gate(&small.eigenvalues, &large.eigenvalues, g.value_at(cl.omega).norm(), r);
        case.heuristic(
            "eigenvalue bound",
            gate.holds,
            format!(
                "{} stable eigenvalues, bound {:.4}, {} above",
                gate.stable,
                gate.bound,
                gate.violations.len()
            ),
        );
        case.put("eigenvalue_bound", serde_json::to_value(&gate)?);
    }
    if id == "ELFSQE" && wid.is_some() {
        let count = pred.spectrum.extra_points.len();
        case.gate("point count", count == 3, format!("{count} points outside the disc"));
    }
    case.report.model = Some(pred);
    case.report.estimate = Some(large);
    Ok(())
}

fn schwarzian(case: &mut Case, _: Settings) -> anyhow::Result<()> {
    let s = symbol("EIPC")?;
    let exact = boundary_jet(&s, ONE)?;
    let radial = hardy_spectra::symbols::radial_jet(&s, ONE)?;
    let sch = exact.schwarzian.ok_or(hardy_spectra::Error::MissingThirdDerivative)?;
    case.gate("Sφ(1) = 3/8", close(sch, c(0.375, 0.0), 1e-6), format!("{sch}"));
    let flag = (exact.d2.conj() * sch).re;
    case.gate(
        "Re(conj(φ''(1))·Sφ(1)) = 3/4",
        (flag - 0.75).abs() < 1e-6,
        format!("{flag}"),
    );
    case.gate(
        "φ'''(1) = 39/8 + 6i",
        exact.d3.is_some_and(|d| close(d, c(4.875, 6.0), 1e-12)),
        format!("{:?}", exact.d3),
    );
    // radial extrapolation seldom settles on φ''' here; recorded, not gated
    case.put("radial_schwarzian", json!(radial.schwarzian.map(|z| [z.re, z.im])));
    Ok(())
}

fn zero_spectrum(case: &mut Case, set: Settings) -> anyhow::Result<()> {
    let s = symbol("EIHT")?;
    let g = weight("ONE-MINUS-Z")?;
    let cl = classify_type(&s)?;
    case.report.classification = Some((&cl).into());
    let pred = predict_spectrum(&cl, boundary_data(&s, &cl)?.as_ref(), Some(&g))?;
    let sp = &pred.spectrum;
    case.gate(
        "model {0}",
        sp.disc_radius.is_none() && sp.extra_points.is_empty() && sp.spiral.is_none() && sp.includes_zero,
        format!("{sp:?}"),
    );
    let small = eigenvalues(&weighted_composition_matrix(&g, &s, 3 * set.n / 4)?)?;
    let large = eigenvalues(&weighted_composition_matrix(&g, &s, set.n)?)?;
    let gate = eigenvalue_bound_gate(&small, &large, 0.0, 0.0);
    let biggest = large.iter().map(|z| z.norm()).fold(0.0, f64::max);
    case.heuristic(
        "eigenvalue bound",
        gate.holds,
        format!(
            "largest truncation eigenvalue modulus {biggest:.3e}; bound {:.2}",
            gate.bound
        ),
    );
    case.report.model = Some(pred);
    Ok(())
}

/// `φ(z) = i(1+z)/2` touches the circle only at `φ(1) = i ≠ 1`, so a power
/// of `C_φ` is compact.
fn compact_power(case: &mut Case, set: Settings) -> anyhow::Result<()> {
    let m = MobiusMap::new(c(0.0, 0.5), c(0.0, 0.5), c(0.0, 0.0), ONE)?;
    let s = Symbol::from_mobius("i(1+z)/2", m)?;
    let cl = classify_type(&s)?;
    case.report.classification = Some((&cl).into());
    case.gate(
        "type",
        cl.type_label == TypeLabel::Dilation,
        cl.type_label.as_str().into(),
    );
    let lambda = c(0.0, 0.5);
    case.gate(
        "φ'(ω) = i/2",
        close(cl.derivative, lambda, 1e-8),
        format!("{}", cl.derivative),
    );
    let jet = boundary_jet(&s, ONE)?;
    let pred = predict_spectrum(&cl, Some(&jet), None)?;
    let pts = &pred.spectrum.extra_points;
    let ok = pts
        .iter()
        .enumerate()
        .all(|(k, z)| close(*z, lambda.powi(k as i32), 1e-6))
        && pred.essential.disc_radius.is_none()
        && pred.essential.extra_points.is_empty();
    case.gate(
        "model {0} ∪ {(i/2)ⁿ}",
        ok,
        format!("{} points, essential spectrum {{0}}", pts.len()),
    );
    let ev = eigenvalues(&composition_matrix(&s, set.n)?)?;
    let miss = (0..6)
        .map(|k| {
            ev.iter()
                .map(|z| (z - lambda.powi(k)).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max);
    case.heuristic(
        "truncation eigenvalues",
        miss < 1e-6,
        format!("max miss over (i/2)^k, k < 6: {miss:.2e}"),
    );
    case.report.model = Some(pred);
    Ok(())
}

fn adjoint_battery(case: &mut Case, set: Settings) -> anyhow::Result<()> {
    let mut worst: f64 = 0.0;
    for id in ["EIHT", "ELFSQE", "EIPC"] {
        let psi = elf_approximant(&symbol(id)?)?;
        let a = adjoint_via_cowen(&psi, set.n)?;
        let b = composition_matrix(&Symbol::from_mobius("psi", psi)?, set.n)?.adjoint();
        let r = a.block_distance(&b, set.n / 2);
        case.put(id, json!(r));
        worst = worst.max(r);
    }
    case.gate("interior Frobenius residual", worst < 1e-6, format!("max {worst:.2e}"));

    // σ and zσ' against their closed forms in p, a for ψ built from (p, a)
    let (p, a) = (2.0, c(4.0, 1.0));
    let psi = MobiusMap::from_halfplane_affine(c(1.0 / p, 0.0), c(1.0 / p - 1.0, 0.0) + a / (p * p))?;
    let (sigma, zs) = adjoint_auxiliaries(&psi)?;
    let ab = a.conj();
    let closed = MobiusMap::new(-2.0 * p * p + ab, -ab, 2.0 * p - 2.0 * p * p + ab, -2.0 * p - ab)?;
    let z = c(0.3, -0.2);
    let zs_closed = 4.0 * p.powi(3) * z / ((2.0 * p - 2.0 * p * p + ab) * z - 2.0 * p - ab).powi(2);
    case.gate(
        "closed forms of σ and zσ'",
        sigma.approx_eq(&closed, 1e-12) && close(zs(z), zs_closed, 1e-12),
        format!("p = {p}, a = {a}"),
    );
    Ok(())
}

fn kernel_battery(case: &mut Case, set: Settings) -> anyhow::Result<()> {
    let n = set.n;
    let mut r = rng();
    let dist = |v: &[Complex64], w: &[Complex64]| v.iter().zip(w).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    let (mut wc, mut wm): (f64, f64) = (0.0, 0.0);
    for (id, wid) in [("EIHT", "W-EIHT"), ("ELFSQE", "W-ELFSQE"), ("EIPC", "W-EIPC")] {
        let s = symbol(id)?;
        let h = weight(wid)?;
        let ca = composition_matrix(&s, n)?.adjoint();
        let ma = multiplication_matrix(&h, n)?.adjoint();
        for _ in 0..16 {
            let alpha = Complex64::from_polar(0.7 * r.gen::<f64>().sqrt(), r.gen_range(-PI..PI));
            let k = kernel_vector(alpha, n);
            wc = wc.max(dist(&ca.apply(k.coeffs()), kernel_vector(s.eval(alpha), n).coeffs()));
            let hk: Vec<Complex64> = k.coeffs().iter().map(|x| h.eval(alpha).conj() * x).collect();
            wm = wm.max(dist(&ma.apply(k.coeffs()), &hk));
        }
    }
    case.gate(
        "(C_φ)* K_α = K_φ(α)",
        wc < 1e-6,
        format!("max residual {wc:.2e} over 48 α"),
    );
    case.gate(
        "(M_h)* K_α = conj(h(α)) K_α",
        wm < 1e-6,
        format!("max residual {wm:.2e} over 48 α"),
    );
    Ok(())
}

fn relation_battery(
    case: &mut Case,
    set: Settings,
    rels: Vec<EigenRelation>,
    tol: f64,
    name: &str,
) -> anyhow::Result<()> {
    let mut worst: f64 = 0.0;
    let mut rows = Vec::new();
    for rel in &rels {
        let r = verify_eigen_relation(rel, set.n)?;
        worst = worst.max(r.residual);
        rows.push(serde_json::to_value(&r)?);
    }
    case.put("relations", Value::Array(rows));
    case.gate(
        name,
        worst < tol,
        format!(
            "max residual {worst:.2e} over {} relations (tolerance {tol:e})",
            rels.len()
        ),
    );
    Ok(())
}

fn fb_battery(case: &mut Case, set: Settings) -> anyhow::Result<()> {
    let bs = [
        c(0.25, 0.0),
        c(-0.3, 0.0),
        c(0.1, 0.5),
        c(0.45, 0.0),
        c(-0.45, 1.0),
        c(0.2, -2.0),
        c(0.0, 0.0),
        c(-0.1, -0.3),
    ];
    let rels = bs
        .into_iter()
        .map(|b| EigenRelation::HyperbolicPower { p: 0.5, b })
        .collect();
    relation_battery(case, set, rels, 1e-6, "C_ν f_b = p^b f_b")
}

fn cowen_battery(case: &mut Case, set: Settings) -> anyhow::Result<()> {
    let mut rels = Vec::new();
    for beta in [0.5, 1.0, 2.0, 3.0] {
        rels.push(EigenRelation::SectorTranslation {
            a: c(1.0, 0.5),
            theta: FRAC_PI_2,
            beta: c(beta, 0.0),
        });
    }
    for beta in [c(0.5, 0.0), c(1.0, 0.3), c(2.0, -0.5), c(1.5, 0.0)] {
        rels.push(EigenRelation::SectorTranslation {
            a: c(0.5, 0.2),
            theta: FRAC_PI_4,
            beta,
        });
    }
    relation_battery(case, set, rels, 1e-5, "C_φ F = e^{−βa} F")
}

fn parabolic_intertwining(case: &mut Case, set: Settings) -> anyhow::Result<()> {
    let psi = elf_approximant(&symbol("EIPC")?)?;
    let rels = [0.5, 1.0, 2.0]
        .into_iter()
        .map(|t| EigenRelation::HalfplaneTranslation { psi, t })
        .collect();
    relation_battery(case, set, rels, 1e-6, "C_ψ e^{−tT} = e^{−ta} e^{−tT}")
}

fn hs_trend(case: &mut Case, set: Settings) -> anyhow::Result<()> {
    let s = symbol("EIHT")?;
    let lip = hs_tail_ratio(&hs_partial_sums(&weight("ONE-MINUS-Z")?, &s, set.n)?);
    let one = hs_tail_ratio(&hs_partial_sums(&weight("ONE")?, &s, set.n)?);
    case.put("tail_ratio_one_minus_z", json!(lip));
    case.put("tail_ratio_one", json!(one));
    case.gate("g = 1 − z tail ratio < 0.05", lip < 0.05, format!("{lip:.4}"));
    case.gate("g = 1 tail ratio > 0.05", one > 0.05, format!("{one:.4}"));
    Ok(())
}

fn blaschke(case: &mut Case, _: Settings) -> anyhow::Result<()> {
    let z0 = c(0.0, 0.0);
    let par = blaschke_diagnostic(&symbol("EIPC")?, z0, 2000)?;
    let hyp = blaschke_diagnostic(&symbol("EIHT")?, z0, 2000)?;
    let growth = par[2000] / par[1000];
    let change = (hyp[2000] - hyp[1000]).abs();
    case.put("parabolic", json!({"S_1000": par[1000], "S_2000": par[2000]}));
    case.put("hyperbolic", json!({"S_1000": hyp[1000], "S_2000": hyp[2000]}));
    case.gate(
        "parabolic growth ≥ 20%",
        growth >= 1.2,
        format!("S_2000/S_1000 = {growth:.4}"),
    );
    case.gate("hyperbolic change < 1e−6", change < 1e-6, format!("{change:.2e}"));
    Ok(())
}

fn julia(case: &mut Case, _: Settings) -> anyhow::Result<()> {
    let rows = julia_bound(&symbol("EIHT")?, 12, 0.05)?;
    let worst = rows.iter().map(|r| r.lhs_squared / r.bound).fold(0.0, f64::max);
    case.put("rows", serde_json::to_value(&rows)?);
    case.gate(
        "bound holds for n ≤ 12",
        rows.iter().all(|r| r.holds),
        format!("max ratio {worst:.4}"),
    );
    Ok(())
}

fn compact_diff(case: &mut Case, set: Settings) -> anyhow::Result<()> {
    let mut ok = true;
    let mut parts = Vec::new();
    for id in ["EIHT", "ELFSQE", "EIPC"] {
        let s = symbol(id)?;
        let small = compact_difference(&s, 3 * set.n / 4)?.ratio;
        let large = compact_difference(&s, set.n)?.ratio;
        ok &= large < 0.05 && large <= small + 1e-10;
        case.put(id, json!({"small": small, "large": large}));
        parts.push(format!("{id} {small:.1e} → {large:.1e}"));
    }
    case.gate("σ32/σ1 < 0.05, not increasing", ok, parts.join(", "));
    Ok(())
}

fn koenigs(case: &mut Case, _: Settings) -> anyhow::Result<()> {
    let t = Instant::now();
    let r = koenigs_check(&symbol("ELFSQE")?, 32, 6)?;
    let secs = t.elapsed().as_secs_f64();
    let worst = r.misses.iter().copied().fold(0.0, f64::max);
    case.gate(
        "(3/8)^k, k ≤ 6, within 1e−6",
        worst < 1e-6,
        format!("max miss {worst:.2e}"),
    );
    case.gate("triangular section", r.triangular, String::new());
    case.heuristic("runtime < 1 s", secs < 1.0, format!("{secs:.3}s"));
    case.put("koenigs", serde_json::to_value(&r)?);
    Ok(())
}
