//! Seeded synthetic data: sampled shapes with Gaussian jitter, noise
//! ladders over shape classes, and time series for delay embedding.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};
use core::str::FromStr;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::persistence::PointCloud;
use crate::seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    /// Unit circle in the plane.
    Circle,
    /// Unit circles centred at `(-2, 0)` and `(2, 0)`.
    TwoCircles,
    /// Two circles of radius 0.6 touching at the origin.
    FigureEight,
    /// Unit sphere in `R^3`.
    Sphere,
    /// Torus in `R^3` with radii 1.5 and 0.5.
    Torus,
    /// Uniform samples of the unit disk.
    Blob,
}

impl ShapeClass {
    pub const ALL: [ShapeClass; 6] = [
        Self::Circle,
        Self::TwoCircles,
        Self::FigureEight,
        Self::Sphere,
        Self::Torus,
        Self::Blob,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Circle => "circle",
            Self::TwoCircles => "two_circles",
            Self::FigureEight => "figure_eight",
            Self::Sphere => "sphere",
            Self::Torus => "torus",
            Self::Blob => "blob",
        }
    }
}

impl FromStr for ShapeClass {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| invalid!("unknown shape class '{s}'"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeSpec {
    pub class: ShapeClass,
    pub n: usize,
    pub noise_sigma: f64,
    pub seed: u64,
}

impl ShapeSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(invalid!("need at least 3 samples, got {}", self.n));
        }
        if !(self.noise_sigma >= 0.0) || !self.noise_sigma.is_finite() {
            return Err(invalid!("noise_sigma must be finite and >= 0"));
        }
        Ok(())
    }
}

const NOISE_STREAM: u64 = 0x006e_6f69_7365;

/// Noiseless samples of `spec.class`, then i.i.d. Gaussian jitter of
/// standard deviation `spec.noise_sigma` on every coordinate.
pub fn sample_shape(spec: &ShapeSpec) -> Result<PointCloud> {
    spec.validate()?;
    let clean = clean_shape(spec.class, spec.n, spec.seed)?;
    Ok(jitter(&clean, spec.noise_sigma, seed::derive(spec.seed, &[NOISE_STREAM])))
}

pub fn clean_shape(class: ShapeClass, n: usize, seed_value: u64) -> Result<PointCloud> {
    if n < 3 {
        return Err(invalid!("need at least 3 samples, got {n}"));
    }
    let mut rng = seed::rng(seed_value, &[]);
    let mut coords: Vec<f64> = Vec::new();
    let dim = match class {
        ShapeClass::Sphere | ShapeClass::Torus => 3,
        _ => 2,
    };
    for i in 0..n {
        match class {
            ShapeClass::Circle => {
                let t: f64 = rng.random_range(0.0..TAU);
                coords.extend([libm::cos(t), libm::sin(t)]);
            }
            ShapeClass::TwoCircles | ShapeClass::FigureEight => {
                let (cx, r) = match class {
                    ShapeClass::TwoCircles => (2.0, 1.0),
                    _ => (0.6, 0.6),
                };
                let side = if i < n / 2 { -1.0 } else { 1.0 };
                let t: f64 = rng.random_range(0.0..TAU);
                coords.extend([side * cx + r * libm::cos(t), r * libm::sin(t)]);
            }
            ShapeClass::Sphere => {
                let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
                let norm = libm::sqrt(v.iter().map(|x| x * x).sum::<f64>()).max(f64::MIN_POSITIVE);
                coords.extend(v.iter().map(|x| x / norm));
            }
            ShapeClass::Torus => {
                let (big, small) = (1.5, 0.5);
                let u: f64 = rng.random_range(0.0..TAU);
                let v: f64 = rng.random_range(0.0..TAU);
                let ring = big + small * libm::cos(v);
                coords.extend([ring * libm::cos(u), ring * libm::sin(u), small * libm::sin(v)]);
            }
            ShapeClass::Blob => {
                let r = libm::sqrt(rng.random_range(0.0..1.0f64));
                let t: f64 = rng.random_range(0.0..TAU);
                coords.extend([r * libm::cos(t), r * libm::sin(t)]);
            }
        }
    }
    PointCloud::from_flat(dim, coords)
}

/// Adds i.i.d. `N(0, sigma^2)` noise to every coordinate.
pub fn jitter(cloud: &PointCloud, sigma: f64, seed_value: u64) -> PointCloud {
    if sigma == 0.0 {
        return cloud.clone();
    }
    let mut rng = seed::rng(seed_value, &[]);
    cloud.map_points(|src, dst| {
        for (d, s) in dst.iter_mut().zip(src) {
            let z: f64 = rng.sample(StandardNormal);
            *d = s + sigma * z;
        }
    })
}

/// One cloud of a noise ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledCloud {
    pub class: ShapeClass,
    /// Index of `class` in the ladder's class list.
    pub label: u32,
    pub level: f64,
    pub level_index: usize,
    pub trial: usize,
    pub cloud: PointCloud,
}

/// For each class, level and trial: the trial's clean sample jittered at
/// that level. Every trial's clean sample is shared across levels, and a
/// level of 0 reproduces it exactly.
pub fn noise_ladder(classes: &[ShapeClass], n: usize, levels: &[f64], trials: usize, master_seed: u64) -> Result<Vec<LabeledCloud>> {
    if levels.is_empty() {
        return Err(invalid!("noise ladder needs at least one level"));
    }
    if levels.windows(2).any(|w| !(w[0] <= w[1])) || levels.iter().any(|l| !(*l >= 0.0)) {
        return Err(invalid!("noise levels must be nonnegative and ascending"));
    }
    let mut out = Vec::with_capacity(classes.len() * levels.len() * trials);
    for (ci, &class) in classes.iter().enumerate() {
        let cleans = (0..trials)
            .map(|t| clean_shape(class, n, trial_seed(master_seed, class, t)))
            .collect::<Result<Vec<_>>>()?;
        for (li, &level) in levels.iter().enumerate() {
            for (t, clean) in cleans.iter().enumerate() {
                let noise_seed = seed::derive(trial_seed(master_seed, class, t), &[NOISE_STREAM, li as u64]);
                out.push(LabeledCloud {
                    class,
                    label: ci as u32,
                    level,
                    level_index: li,
                    trial: t,
                    cloud: jitter(clean, level, noise_seed),
                });
            }
        }
    }
    Ok(out)
}

/// Seed of the clean sample for `(class, trial)` under `master`.
pub fn trial_seed(master: u64, class: ShapeClass, trial: usize) -> u64 {
    seed::derive(master, &[class as u64, trial as u64])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeriesKind {
    /// `sin(2 pi t / period + phase)`, phase drawn from the seed.
    Sine { period: f64 },
    /// Sum of two sines with a seeded relative phase.
    SumOfSines { periods: [f64; 2] },
    /// x-coordinate of the Lorenz system (10, 28, 8/3), RK4 with step `dt`,
    /// after discarding `transient` steps.
    LorenzX { dt: f64, transient: usize },
    Constant { value: f64 },
}

pub fn sample_series(kind: SeriesKind, length: usize, seed_value: u64) -> Result<Vec<f64>> {
    if length < 10 {
        return Err(invalid!("series length must be at least 10, got {length}"));
    }
    let mut rng = seed::rng(seed_value, &[]);
    let positive = |v: f64, what: &str| {
        if v > 0.0 && v.is_finite() {
            Ok(())
        } else {
            Err(invalid!("{what} must be positive, got {v}"))
        }
    };
    match kind {
        SeriesKind::Sine { period } => {
            positive(period, "period")?;
            let phase: f64 = rng.random_range(0.0..TAU);
            Ok((0..length).map(|t| libm::sin(2.0 * PI * t as f64 / period + phase)).collect())
        }
        SeriesKind::SumOfSines { periods } => {
            positive(periods[0], "period")?;
            positive(periods[1], "period")?;
            let phase: f64 = rng.random_range(0.0..TAU);
            Ok((0..length)
                .map(|t| {
                    let t = t as f64;
                    libm::sin(2.0 * PI * t / periods[0]) + libm::sin(2.0 * PI * t / periods[1] + phase)
                })
                .collect())
        }
        SeriesKind::LorenzX { dt, transient } => {
            positive(dt, "dt")?;
            let mut s = [
                1.0 + rng.random_range(-0.1..0.1),
                1.0 + rng.random_range(-0.1..0.1),
                1.0 + rng.random_range(-0.1..0.1),
            ];
            for _ in 0..transient {
                s = rk4_lorenz(s, dt);
            }
            let mut out = Vec::with_capacity(length);
            for _ in 0..length {
                out.push(s[0]);
                s = rk4_lorenz(s, dt);
            }
            Ok(out)
        }
        SeriesKind::Constant { value } => {
            if !value.is_finite() {
                return Err(invalid!("constant must be finite"));
            }
            Ok(alloc::vec![value; length])
        }
    }
}

fn lorenz(s: [f64; 3]) -> [f64; 3] {
    let (sigma, rho, beta) = (10.0, 28.0, 8.0 / 3.0);
    [sigma * (s[1] - s[0]), s[0] * (rho - s[2]) - s[1], s[0] * s[1] - beta * s[2]]
}

fn rk4_lorenz(s: [f64; 3], h: f64) -> [f64; 3] {
    let add = |a: [f64; 3], b: [f64; 3], w: f64| [a[0] + w * b[0], a[1] + w * b[1], a[2] + w * b[2]];
    let k1 = lorenz(s);
    let k2 = lorenz(add(s, k1, h / 2.0));
    let k3 = lorenz(add(s, k2, h / 2.0));
    let k4 = lorenz(add(s, k3, h));
    let mut out = s;
    for i in 0..3 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out
}
