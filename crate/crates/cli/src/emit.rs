//! File output: matrix CSV with a JSON sidecar, pseudospectra CSV, plot SVG.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::Context;
use hardy_spectra::operators::OperatorMatrix;
use hardy_spectra::spectra::{SpectralEstimate, SpectrumModel};
use serde::Serialize;

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

pub fn matrix_csv(m: &OperatorMatrix) -> String {
    let mut out = String::from("j,k,re,im\n");
    let e = m.entries();
    for j in 0..m.n() {
        for k in 0..m.n() {
            let z = e[(j, k)];
            let _ = writeln!(out, "{j},{k},{:e},{:e}", z.re, z.im);
        }
    }
    out
}

#[derive(Serialize)]
struct MatrixSidecar<'a> {
    label: &'a str,
    n: usize,
    basis: &'static str,
    layout: &'static str,
}

/// `<stem>.csv` and `<stem>.json`.
pub fn write_matrix(dir: &Path, stem: &str, m: &OperatorMatrix) -> anyhow::Result<()> {
    fs::write(dir.join(format!("{stem}.csv")), matrix_csv(m))?;
    write_json(
        &dir.join(format!("{stem}.json")),
        &MatrixSidecar {
            label: m.label(),
            n: m.n(),
            basis: "monomials z^k, k = 0..n-1",
            layout: "row j, column k; column k holds the coefficients of the image of z^k",
        },
    )
}

fn color(t: f64) -> String {
    // dark (small σ_min) to light
    let v = (40.0 + 200.0 * t.clamp(0.0, 1.0)) as u8;
    format!("rgb({v},{v},{})", v.saturating_add(15))
}

/// Heat map of `log10 σ_min` with the model and the truncation eigenvalues
/// drawn on top.
pub fn plot_svg(est: &SpectralEstimate, model: &SpectrumModel) -> String {
    let g = &est.pseudo_grid;
    let r = g.region;
    let size = 600.0;
    let (w, h) = (r.re_max - r.re_min, r.im_max - r.im_min);
    let scale = size / w.max(h);
    let (pw, ph) = (w * scale, h * scale);
    let px = |x: f64| (x - r.re_min) * scale;
    let py = |y: f64| (r.im_max - y) * scale;

    let logs: Vec<f64> = g.values.iter().map(|v| v.max(1e-300).log10()).collect();
    let (lo, hi) = logs
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
    let span = (hi - lo).max(1e-12);
    let (cw, chh) = (pw / (g.nx - 1) as f64, ph / (g.ny - 1) as f64);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{pw:.0}" height="{ph:.0}" viewBox="0 0 {pw:.1} {ph:.1}">"#
    );
    for iy in 0..g.ny {
        for ix in 0..g.nx {
            let z = g.point(ix, iy);
            let t = (logs[iy * g.nx + ix] - lo) / span;
            let _ = writeln!(
                s,
                r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{}"/>"#,
                px(z.re) - cw / 2.0,
                py(z.im) - chh / 2.0,
                cw,
                chh,
                color(t)
            );
        }
    }
    let stroke = r##"fill="none" stroke="#d62728" stroke-width="1.5""##;
    if let Some(rad) = model.disc_radius {
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="{:.2}" {stroke}/>"#,
            px(0.0),
            py(0.0),
            rad * scale
        );
    }
    if let Some(sp) = model.spiral {
        let t_max = sp.horizon();
        let pts: Vec<String> = (0..=2000)
            .map(|k| sp.at(t_max * k as f64 / 2000.0))
            .map(|z| format!("{:.2},{:.2}", px(z.re), py(z.im)))
            .collect();
        let _ = writeln!(s, r#"<polyline points="{}" {stroke}/>"#, pts.join(" "));
    }
    for z in &model.extra_points {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="4" fill="#d62728"/>"##,
            px(z.re),
            py(z.im)
        );
    }
    for z in est.eigenvalues.iter().filter(|z| r.contains(**z)) {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2" fill="#1f77b4"/>"##,
            px(z.re),
            py(z.im)
        );
    }
    s.push_str("</svg>\n");
    s
}
