//! Per-call timing of diagram and subspace distances.
//!
//! Calls are grouped into batches, and batches of the different metrics are
//! interleaved. The first round warms caches and is discarded; the reported
//! time is the median over the remaining batches of the per-call batch
//! mean. Everything runs on the calling thread.

use std::hint::black_box;
use std::time::Instant;

use pts_core::datasets::{sample_shape, ShapeClass, ShapeSpec};
use pts_core::grassmann::{chordal_distance, geodesic_distance, GrassmannPoint};
use pts_core::pd_metrics::{bottleneck, wasserstein};
use pts_core::pts::PtsConfig;
use pts_core::seed;
use pts_core::PersistenceDiagram;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::experiment::{cloud_diagram, embed_corpus};
use crate::report::{EnvironmentStamp, ExperimentReport, GridTiming, ReportKind, Timing};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimingConfig {
    pub master_seed: u64,
    /// Diagrams in the generated corpus; consecutive pairs are timed.
    pub n_diagrams: usize,
    /// Points per sampled cloud. The corpus uses H0 diagrams, which have
    /// one finite point per merge.
    pub cloud_points: usize,
    pub noise: f64,
    /// Timed calls per metric, warm-up excluded.
    pub repetitions: usize,
    pub batches: usize,
    /// Grid sizes for the sweep; empty disables it.
    pub grid_sizes: Vec<usize>,
    pub sweep_repetitions: usize,
    /// Subspace dimension used at every sweep size; the coarsest grid
    /// limits the achievable rank.
    pub sweep_subspace_p: usize,
    pub pts: PtsConfig,
}

impl Default for TimingConfig {
    fn default() -> Self {
        Self {
            master_seed: 0,
            n_diagrams: 6,
            cloud_points: 64,
            noise: 0.05,
            repetitions: 200,
            batches: 10,
            grid_sizes: vec![5, 50, 500],
            sweep_repetitions: 100,
            sweep_subspace_p: 5,
            pts: PtsConfig { sigma: 0.05, grid_k: 50, subspace_p: 10, ..PtsConfig::default() },
        }
    }
}

impl TimingConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_diagrams < 2 {
            return Err(Error::Usage("timing needs at least two diagrams".into()));
        }
        if self.repetitions < 100 || self.sweep_repetitions < 100 && !self.grid_sizes.is_empty() {
            return Err(Error::Usage("at least 100 repetitions per metric are required".into()));
        }
        if self.batches < 2 {
            return Err(Error::Usage("at least two batches are required".into()));
        }
        self.pts.validate()?;
        Ok(())
    }
}

/// One timed quantity: `call(i)` for `i` cycling over `0..pairs`.
pub struct Timed<'a> {
    pub name: &'a str,
    pub pairs: usize,
    pub call: Box<dyn FnMut(usize) -> f64 + 'a>,
}

/// Times every entry of `timed`, interleaving their batches so that drift
/// in machine speed affects all of them alike.
pub fn time_calls(timed: Vec<Timed<'_>>, repetitions: usize, batches: usize) -> Vec<Timing> {
    let per_batch = repetitions.div_ceil(batches).max(1);
    let mut timed = timed;
    let mut idx = vec![0usize; timed.len()];
    let mut run_batch = |k: usize, t: &mut Timed<'_>| {
        let start = Instant::now();
        for _ in 0..per_batch {
            black_box((t.call)(black_box(idx[k] % t.pairs)));
            idx[k] += 1;
        }
        start.elapsed().as_secs_f64() / per_batch as f64
    };
    let mut means = vec![Vec::with_capacity(batches); timed.len()];
    for round in 0..=batches {
        for (k, t) in timed.iter_mut().enumerate() {
            let m = run_batch(k, t);
            if round > 0 {
                means[k].push(m);
            }
        }
    }
    timed
        .iter()
        .zip(means)
        .map(|(t, mut means)| {
            let avg = means.iter().sum::<f64>() / batches as f64;
            let var = means.iter().map(|m| (m - avg).powi(2)).sum::<f64>() / (batches - 1) as f64;
            means.sort_by(f64::total_cmp);
            let median = if batches % 2 == 1 {
                means[batches / 2]
            } else {
                (means[batches / 2 - 1] + means[batches / 2]) / 2.0
            };
            Timing {
                metric: t.name.to_string(),
                mean_secs: median,
                std_secs: var.sqrt(),
                repetitions: per_batch * batches,
                ratio_to_chordal: f64::NAN,
            }
        })
        .collect()
}

fn set_ratios(timings: &mut [Timing]) {
    let base = timings.iter().find(|t| t.metric == "chordal").map(|t| t.mean_secs);
    for t in timings {
        t.ratio_to_chordal = base.map_or(f64::NAN, |b| t.mean_secs / b);
    }
}

/// Finite H0 diagrams of noisy shape samples, cycling through the shape
/// classes.
pub fn timing_corpus(cfg: &TimingConfig) -> Result<Vec<PersistenceDiagram>> {
    (0..cfg.n_diagrams)
        .into_par_iter()
        .map(|i| {
            let class = ShapeClass::ALL[i % ShapeClass::ALL.len()];
            let spec = ShapeSpec {
                class,
                n: cfg.cloud_points,
                noise_sigma: cfg.noise,
                seed: seed::derive(cfg.master_seed, &[i as u64]),
            };
            let pd = cloud_diagram(&sample_shape(&spec)?, 0, 10.0)?;
            Ok(PersistenceDiagram { points: pd.finite().cloned().collect(), cap: pd.cap })
        })
        .collect()
}

/// Times every metric over consecutive pairs of the given corpus.
pub fn time_corpus(pds: &[PersistenceDiagram], emb: &[GrassmannPoint], repetitions: usize, batches: usize) -> Result<Vec<Timing>> {
    if pds.len() < 2 || emb.len() < 2 {
        return Err(pts_core::Error::Empty("timing corpus needs at least two diagrams and two embeddings").into());
    }
    let dp = pds.len() - 1;
    let ep = emb.len() - 1;
    // surface errors once, outside the timed loops
    wasserstein(&pds[0], &pds[1], 1.0)?;
    chordal_distance(&emb[0], &emb[1])?;
    geodesic_distance(&emb[0], &emb[1])?;
    let timed = vec![
        Timed { name: "w1", pairs: dp, call: Box::new(|i| wasserstein(&pds[i], &pds[i + 1], 1.0).unwrap()) },
        Timed { name: "w2", pairs: dp, call: Box::new(|i| wasserstein(&pds[i], &pds[i + 1], 2.0).unwrap()) },
        Timed { name: "bottleneck", pairs: dp, call: Box::new(|i| bottleneck(&pds[i], &pds[i + 1]).unwrap()) },
        Timed { name: "geodesic", pairs: ep, call: Box::new(|i| geodesic_distance(&emb[i], &emb[i + 1]).unwrap()) },
        Timed { name: "chordal", pairs: ep, call: Box::new(|i| chordal_distance(&emb[i], &emb[i + 1]).unwrap()) },
    ];
    let mut timings = time_calls(timed, repetitions, batches);
    set_ratios(&mut timings);
    Ok(timings)
}

pub fn run_timing_benchmark(cfg: &TimingConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let pds = timing_corpus(cfg)?;
    let (_, emb) = embed_corpus(&pds, 0, &cfg.pts)?;
    let timings = time_corpus(&pds, &emb, cfg.repetitions, cfg.batches)?;

    let mut grid_sweep = Vec::new();
    for &k in &cfg.grid_sizes {
        let pts = PtsConfig { grid_k: k, subspace_p: cfg.sweep_subspace_p, ..cfg.pts.clone() };
        let (_, emb) = embed_corpus(&pds[..2], 0, &pts)?;
        let timed = vec![
            Timed { name: "chordal", pairs: 1, call: Box::new(|_| chordal_distance(&emb[0], &emb[1]).unwrap()) },
            Timed { name: "geodesic", pairs: 1, call: Box::new(|_| geodesic_distance(&emb[0], &emb[1]).unwrap()) },
        ];
        let mut t = time_calls(timed, cfg.sweep_repetitions, cfg.batches);
        set_ratios(&mut t);
        let geodesic = t.pop().unwrap();
        let chordal = t.pop().unwrap();
        grid_sweep.push(GridTiming { grid_k: k, chordal, geodesic });
    }

    Ok(ExperimentReport {
        kind: ReportKind::Timing,
        master_seed: cfg.master_seed,
        config: serde_json::to_value(cfg)?,
        class_names: Vec::new(),
        levels: Vec::new(),
        accuracy: Vec::new(),
        timings,
        grid_sweep,
        environment: Some(EnvironmentStamp::capture(1, start.elapsed().as_secs_f64())),
    })
}
