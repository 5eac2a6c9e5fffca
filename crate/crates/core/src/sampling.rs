//! Deterministic sample sets: Halton points in the disc, a fixed half-plane
//! grid and seeded pseudo-random generators.
//!
//! The only source of run-to-run variation is the `HARDY_SPECTRA_SEED`
//! environment variable, which offsets the Halton sequence and seeds the
//! ChaCha generator. Without it every sample set is fixed.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SEED_ENV: &str = "HARDY_SPECTRA_SEED";
pub const DEFAULT_SEED: u64 = 0x5eed_2009;

pub fn seed() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed())
}

/// Radical inverse of `index` in `base`.
fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut out = 0.0;
    while index > 0 {
        out += (index % base) as f64 * f;
        index /= base;
        f *= inv;
    }
    out
}

/// `count` Halton points (bases 2, 3) mapped area-uniformly into the disc of
/// radius `radius`.
pub fn halton_disc(count: usize, radius: f64) -> Vec<Complex64> {
    let offset = seed() % 4096 + 1;
    (0..count as u64)
        .map(|i| {
            let u = radical_inverse(i + offset, 2);
            let v = radical_inverse(i + offset, 3);
            Complex64::from_polar(radius * u.sqrt(), 2.0 * PI * v)
        })
        .collect()
}

/// `count` equally spaced points on the circle of radius `radius`, starting
/// at angle `-π` (so `t = 0` is hit when `count` is even).
pub fn circle(count: usize, radius: f64) -> Vec<Complex64> {
    (0..count)
        .map(|j| {
            let t = -PI + 2.0 * PI * j as f64 / count as f64;
            Complex64::from_polar(radius, t)
        })
        .collect()
}

/// Fixed 32×32 grid in the closed right half-plane: real parts `{0}` plus 31
/// log-spaced values in `[1e-3, 1e3]`, imaginary parts 32 sinh-spaced values
/// in `[-1e3, 1e3]`.
pub fn halfplane_grid() -> Vec<Complex64> {
    let mut re = vec![0.0];
    re.extend((0..31).map(|i| 10f64.powf(-3.0 + 6.0 * i as f64 / 30.0)));
    let scale = 1e3f64.asinh();
    let im: Vec<f64> = (0..32)
        .map(|i| (scale * (-1.0 + 2.0 * i as f64 / 31.0)).sinh())
        .collect();
    re.iter()
        .flat_map(|&x| im.iter().map(move |&y| Complex64::new(x, y)))
        .collect()
}
