//! Truncation eigenvalues, `σ_min` grids and their comparison with a model.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::model::{model_distance, SpectrumModel};
use crate::error::{Error, Result};
use crate::linalg::{self, ShiftedSmin};
use crate::operators::OperatorMatrix;

pub const MAX_GRID: usize = 200;
pub const PROBE_COUNT: usize = 40;

/// `[re_min, re_max] × [im_min, im_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Region {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Region {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if !(re_min < re_max && im_min < im_max) {
            return Err(Error::ContractViolation(format!(
                "empty region [{re_min}, {re_max}] × [{im_min}, {im_max}]"
            )));
        }
        Ok(Region {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn from_array(b: [f64; 4]) -> Result<Self> {
        Region::new(b[0], b[1], b[2], b[3])
    }

    pub fn square(half: f64) -> Self {
        Region {
            re_min: -half,
            re_max: half,
            im_min: -half,
            im_max: half,
        }
    }

    /// Model bounding box scaled by 1.3.
    pub fn auto(model: &SpectrumModel) -> Self {
        let b = model.bounding_region(1.3);
        Region {
            re_min: b[0],
            re_max: b[1],
            im_min: b[2],
            im_max: b[3],
        }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (self.re_min..=self.re_max).contains(&z.re) && (self.im_min..=self.im_max).contains(&z.im)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PseudoGrid {
    pub region: Region,
    pub nx: usize,
    pub ny: usize,
    /// Row-major in the imaginary direction: `values[iy·nx + ix]`.
    pub values: Vec<f64>,
}

impl PseudoGrid {
    pub fn point(&self, ix: usize, iy: usize) -> Complex64 {
        let r = &self.region;
        let x = r.re_min + (r.re_max - r.re_min) * ix as f64 / (self.nx - 1) as f64;
        let y = r.im_min + (r.im_max - r.im_min) * iy as f64 / (self.ny - 1) as f64;
        Complex64::new(x, y)
    }

    /// Empirical `q`-quantile of the grid values (lower interpolation).
    pub fn quantile(&self, q: f64) -> f64 {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        let idx = ((v.len() - 1) as f64 * q.clamp(0.0, 1.0)).floor() as usize;
        v[idx]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,sigma_min\n");
        for iy in 0..self.ny {
            for ix in 0..self.nx {
                let z = self.point(ix, iy);
                out.push_str(&format!("{},{},{}\n", z.re, z.im, self.values[iy * self.nx + ix]));
            }
        }
        out
    }
}

/// Eigenvalues and a `σ_min` grid of one truncation.
#[derive(Clone, Serialize)]
pub struct SpectralEstimate {
    pub n: usize,
    #[serde(with = "crate::serde_complex::vec")]
    pub eigenvalues: Vec<Complex64>,
    pub pseudo_grid: PseudoGrid,
    #[serde(skip)]
    smin: ShiftedSmin,
}

impl std::fmt::Debug for SpectralEstimate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralEstimate")
            .field("n", &self.n)
            .field("eigenvalues", &self.eigenvalues)
            .field("pseudo_grid", &self.pseudo_grid)
            .finish()
    }
}

impl SpectralEstimate {
    /// `σ_min(A − λI)` at an arbitrary point.
    pub fn sigma_min(&self, lambda: Complex64) -> Result<f64> {
        self.smin.sigma_min(lambda)
    }
}

pub fn eigenvalues(m: &OperatorMatrix) -> Result<Vec<Complex64>> {
    linalg::eigenvalues(m.entries())
}

pub fn pseudospectrum_grid(m: &OperatorMatrix, region: Region, nx: usize, ny: usize) -> Result<SpectralEstimate> {
    if !(2..=MAX_GRID).contains(&nx) || !(2..=MAX_GRID).contains(&ny) {
        return Err(Error::ContractViolation(format!(
            "grid {nx}×{ny} outside 2..={MAX_GRID}"
        )));
    }
    let smin = ShiftedSmin::new(m.entries())?;
    let mut grid = PseudoGrid {
        region,
        nx,
        ny,
        values: Vec::new(),
    };
    let values: Result<Vec<f64>> = (0..nx * ny)
        .into_par_iter()
        .map(|k| smin.sigma_min(grid.point(k % nx, k / nx)))
        .collect();
    grid.values = values?;
    Ok(SpectralEstimate {
        n: m.n(),
        eigenvalues: eigenvalues(m)?,
        pseudo_grid: grid,
        smin,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    /// Largest model distance over the scored truncation eigenvalues.
    pub containment: f64,
    pub scored_eigenvalues: usize,
    /// Fraction of model probes with `σ_min < ε`.
    pub coverage: f64,
    pub epsilon: f64,
    pub probes: usize,
}

/// Eigenvalues with `|λ| < exclude_below` are not scored; callers pass
/// `0.1·disc_radius` for disc models.
pub fn compare(
    est: &SpectralEstimate,
    model: &SpectrumModel,
    epsilon: f64,
    exclude_below: f64,
) -> Result<CompareReport> {
    let scored: Vec<f64> = est
        .eigenvalues
        .iter()
        .filter(|z| z.norm() >= exclude_below)
        .map(|&z| model_distance(model, z))
        .collect();
    let probes = model.probes(PROBE_COUNT);
    let below: Result<Vec<bool>> = probes.par_iter().map(|&z| Ok(est.sigma_min(z)? < epsilon)).collect();
    let below = below?;
    let hits = below.iter().filter(|&&b| b).count();
    Ok(CompareReport {
        containment: scored.iter().copied().fold(0.0, f64::max),
        scored_eigenvalues: scored.len(),
        coverage: if probes.is_empty() {
            1.0
        } else {
            hits as f64 / probes.len() as f64
        },
        epsilon,
        probes: probes.len(),
    })
}

/// `0.1·disc_radius`, or 0 without a disc.
pub fn default_exclusion(model: &SpectrumModel) -> f64 {
    0.1 * model.disc_radius.unwrap_or(0.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Grade {
    Pass,
    EvidenceWeak,
    Fail,
}

impl Grade {
    pub fn as_str(&self) -> &'static str {
        match self {
            Grade::Pass => "pass",
            Grade::EvidenceWeak => "evidence-weak",
            Grade::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverageReport {
    pub small: CompareReport,
    pub large: CompareReport,
    pub containment_delta: f64,
    pub coverage_delta: f64,
    pub grade: Grade,
}

/// Coverage at two truncation orders, each against the `q`-quantile of its
/// own grid. Pass needs coverage ≥ `target` at the larger order and no drop
/// from the smaller one; the monotone half alone grades evidence-weak.
pub fn coverage_report(
    small: &SpectralEstimate,
    large: &SpectralEstimate,
    model: &SpectrumModel,
    q: f64,
    target: f64,
) -> Result<CoverageReport> {
    let ex = default_exclusion(model);
    let s = compare(small, model, small.pseudo_grid.quantile(q), ex)?;
    let l = compare(large, model, large.pseudo_grid.quantile(q), ex)?;
    let monotone = l.coverage >= s.coverage;
    let grade = match (l.coverage >= target, monotone) {
        (true, true) => Grade::Pass,
        (_, true) => Grade::EvidenceWeak,
        _ => Grade::Fail,
    };
    Ok(CoverageReport {
        containment_delta: l.containment - s.containment,
        coverage_delta: l.coverage - s.coverage,
        small: s,
        large: l,
        grade,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueGate {
    pub bound: f64,
    pub stable: usize,
    #[serde(with = "crate::serde_complex::vec")]
    pub violations: Vec<Complex64>,
    pub holds: bool,
}

/// Truncation eigenvalues of the larger section that move less than `1e−3`
/// between the two orders must satisfy `|λ| ≤ |g(ω)|·r + 0.1`. Heuristic:
/// violations are reported, not raised.
pub fn eigenvalue_bound_gate(small: &[Complex64], large: &[Complex64], g_omega: f64, r: f64) -> EigenvalueGate {
    let bound = g_omega * r + 0.1;
    let stable: Vec<Complex64> = large
        .iter()
        .copied()
        .filter(|z| small.iter().any(|w| (z - w).norm() < 1e-3))
        .collect();
    let violations: Vec<Complex64> = stable.iter().copied().filter(|z| z.norm() > bound).collect();
    EigenvalueGate {
        bound,
        stable: stable.len(),
        holds: violations.is_empty(),
        violations,
    }
}
