//! Noise-robustness experiment: clean shapes form a 1-NN gallery per trial
//! and their jittered copies at every noise level are classified against it.

use std::time::Instant;

use pts_core::datasets::{clean_shape, noise_ladder, trial_seed, ShapeClass};
use pts_core::grassmann::GrassmannPoint;
use pts_core::learn::{confusion_matrix, knn_classify, Feature, LabeledSet, Metric};
use pts_core::pd_metrics::Essentials;
use pts_core::persistence::{vr_persistence, PointCloud};
use pts_core::pts::{fit_scaling, pts_embed_transformed, transform_axes, PtsConfig, Scaling, TransformedDiagram};
use pts_core::{PersistenceDiagram, PersistencePoint};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{EnvironmentStamp, ExperimentReport, MethodAccuracy, ReportKind};

/// Points closer than this are merged before building the Rips complex.
pub const DEDUP_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseExperimentConfig {
    pub classes: Vec<ShapeClass>,
    pub n_points: usize,
    pub levels: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    /// Rips scale cap.
    pub max_eps: f64,
    /// Homology dimension whose diagram is classified.
    pub homology_dim: u32,
    pub essentials: Essentials,
    pub pts: PtsConfig,
}

impl Default for NoiseExperimentConfig {
    fn default() -> Self {
        Self {
            classes: vec![
                ShapeClass::Circle,
                ShapeClass::TwoCircles,
                ShapeClass::FigureEight,
                ShapeClass::Torus,
                ShapeClass::Blob,
            ],
            n_points: 40,
            levels: (1..=10).map(|i| i as f64 / 20.0).collect(),
            trials: 20,
            master_seed: 0,
            max_eps: 3.0,
            homology_dim: 1,
            essentials: Essentials::Exclude,
            pts: PtsConfig { sigma: 0.05, ..PtsConfig::default() },
        }
    }
}

impl NoiseExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.classes.is_empty() {
            return Err(Error::Usage("at least one shape class is required".into()));
        }
        if self.trials == 0 {
            return Err(Error::Usage("trials must be at least 1".into()));
        }
        if self.n_points < 3 {
            return Err(Error::Usage("n_points must be at least 3".into()));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(self.max_eps > 0.0 && self.max_eps.is_finite()) {
            return Err(Error::Usage("max_eps must be positive".into()));
        }
        if self.homology_dim > 1 {
            return Err(pts_core::Error::UnsupportedDimension(self.homology_dim as usize).into());
        }
        self.pts.validate()?;
        Ok(())
    }
}

pub const METHOD_W1: &str = "wasserstein1";
pub const METHOD_BOTTLENECK: &str = "bottleneck";
pub const METHOD_PTS_GEODESIC: &str = "pts_geodesic";
pub const METHOD_PTS_CHORDAL: &str = "pts_chordal";

/// Rips diagram of `cloud` in `dim`, after merging near-duplicate points.
pub fn cloud_diagram(cloud: &PointCloud, dim: u32, max_eps: f64) -> Result<PersistenceDiagram> {
    let mut pds = vr_persistence(&cloud.dedup(DEDUP_TOL), dim as usize, max_eps)?;
    Ok(pds.swap_remove(dim as usize))
}

/// A zero-lifetime point at the origin stands in for an empty diagram so
/// that a surface is defined.
pub fn with_sentinel(pd: &PersistenceDiagram, dim: u32) -> PersistenceDiagram {
    let mut out = pd.clone();
    if out.points.is_empty() {
        out.points.push(PersistencePoint::new(0.0, 0.0, dim));
    }
    out
}

/// Transformed diagrams, a shared scaling box fitted over all of them, and
/// one embedding per diagram.
pub fn embed_corpus(pds: &[PersistenceDiagram], dim: u32, cfg: &PtsConfig) -> Result<(Scaling, Vec<GrassmannPoint>)> {
    let transformed: Vec<TransformedDiagram> = pds.iter().map(|d| transform_axes(&with_sentinel(d, dim))).collect();
    let scaling = fit_scaling(&transformed, cfg.margin)?;
    let emb = transformed
        .par_iter()
        .map(|t| pts_embed_transformed(t, cfg, &scaling).map_err(Error::from))
        .collect::<Result<Vec<_>>>()?;
    Ok((scaling, emb))
}

struct Item {
    label: u32,
    trial: usize,
    level_index: usize,
}

pub fn run_noise_experiment(cfg: &NoiseExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();

    let mut gallery_clouds = Vec::new();
    let mut gallery = Vec::new();
    for (ci, &class) in cfg.classes.iter().enumerate() {
        for t in 0..cfg.trials {
            gallery_clouds.push(clean_shape(class, cfg.n_points, trial_seed(cfg.master_seed, class, t))?);
            gallery.push(Item { label: ci as u32, trial: t, level_index: 0 });
        }
    }
    let ladder = noise_ladder(&cfg.classes, cfg.n_points, &cfg.levels, cfg.trials, cfg.master_seed)?;
    let queries: Vec<Item> = ladder
        .iter()
        .map(|c| Item { label: c.label, trial: c.trial, level_index: c.level_index })
        .collect();

    let clouds: Vec<&PointCloud> = gallery_clouds.iter().chain(ladder.iter().map(|c| &c.cloud)).collect();
    let pds = clouds
        .par_iter()
        .map(|c| {
            let pd = cloud_diagram(c, cfg.homology_dim, cfg.max_eps)?;
            Ok(match cfg.essentials {
                Essentials::Include => pd,
                Essentials::Exclude => PersistenceDiagram { points: pd.finite().cloned().collect(), cap: pd.cap },
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let (_, embeddings) = embed_corpus(&pds, cfg.homology_dim, &cfg.pts)?;

    let ng = gallery.len();
    let methods: [(&str, Metric); 4] = [
        (METHOD_W1, Metric::Wasserstein(1.0)),
        (METHOD_BOTTLENECK, Metric::Bottleneck),
        (METHOD_PTS_GEODESIC, Metric::Geodesic),
        (METHOD_PTS_CHORDAL, Metric::Chordal),
    ];
    let mut accuracy = Vec::new();
    for (name, metric) in methods {
        let feature = |i: usize| match metric {
            Metric::Geodesic | Metric::NormalizedGeodesic | Metric::Chordal => Feature::Subspace(embeddings[i].clone()),
            _ => Feature::Diagram(pds[i].clone()),
        };
        let per_trial = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let train: Vec<(Feature, u32)> =
                    (0..ng).filter(|&i| gallery[i].trial == t).map(|i| (feature(i), gallery[i].label)).collect();
                let train = LabeledSet::new(train, None)?;
                let idx: Vec<usize> = (0..queries.len()).filter(|&q| queries[q].trial == t).collect();
                let test: Vec<Feature> = idx.iter().map(|&q| feature(ng + q)).collect();
                let pred = knn_classify(&train, &test, metric, 1)?;
                Ok(idx.into_iter().zip(pred).collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()?;
        let mut predicted = vec![0u32; queries.len()];
        for (q, p) in per_trial.into_iter().flatten() {
            predicted[q] = p;
        }
        accuracy.push(summarize(name, &queries, &predicted, cfg.levels.len(), cfg.classes.len()));
    }

    Ok(ExperimentReport {
        kind: ReportKind::Noise,
        master_seed: cfg.master_seed,
        config: serde_json::to_value(cfg)?,
        class_names: cfg.classes.iter().map(|c| c.name().to_string()).collect(),
        levels: cfg.levels.clone(),
        accuracy,
        timings: Vec::new(),
        grid_sweep: Vec::new(),
        environment: Some(EnvironmentStamp::capture(rayon::current_num_threads(), start.elapsed().as_secs_f64())),
    })
}

fn summarize(name: &str, queries: &[Item], predicted: &[u32], n_levels: usize, n_classes: usize) -> MethodAccuracy {
    let ratio = |hit: usize, all: usize| if all == 0 { 0.0 } else { hit as f64 / all as f64 };
    let mut level = vec![(0usize, 0usize); n_levels];
    let mut class = vec![(0usize, 0usize); n_classes];
    for (q, &p) in queries.iter().zip(predicted) {
        let ok = (q.label == p) as usize;
        level[q.level_index].0 += ok;
        level[q.level_index].1 += 1;
        class[q.label as usize].0 += ok;
        class[q.label as usize].1 += 1;
    }
    let per_level: Vec<f64> = level.iter().map(|&(h, a)| ratio(h, a)).collect();
    let truth: Vec<u32> = queries.iter().map(|q| q.label).collect();
    MethodAccuracy {
        method: name.to_string(),
        mean: per_level.iter().sum::<f64>() / n_levels as f64,
        per_level,
        per_class: class.iter().map(|&(h, a)| ratio(h, a)).collect(),
        confusion: confusion_matrix(&truth, predicted, n_classes),
    }
}

/// Runs `f` on a dedicated pool of `threads` workers (all cores when `None`).
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads.unwrap_or(0)).build()?;
    Ok(pool.install(f))
}
