//! Nearest-neighbour classification and Gram-matrix export over diagrams
//! and Grassmann points.

use alloc::string::String;
use alloc::vec::Vec;
use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::diagram::PersistenceDiagram;
use crate::error::{invalid, Error, Result};
use crate::grassmann::{gram_matrix, GrassmannPoint, SubspaceKernel, SubspaceMetric};
use crate::pd_metrics::{self, Essentials};
use crate::seed;

#[derive(Debug, Clone, PartialEq)]
pub enum Feature {
    Diagram(PersistenceDiagram),
    Subspace(GrassmannPoint),
}

impl Feature {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Diagram(_) => "diagram",
            Self::Subspace(_) => "subspace",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Metric {
    Bottleneck,
    Wasserstein(f64),
    Geodesic,
    NormalizedGeodesic,
    Chordal,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Self::Bottleneck => "bottleneck",
            Self::Wasserstein(_) => "wasserstein",
            Self::Geodesic => "geodesic",
            Self::NormalizedGeodesic => "normalized_geodesic",
            Self::Chordal => "chordal",
        }
    }

    pub fn distance(self, a: &Feature, b: &Feature) -> Result<f64> {
        match (self, a, b) {
            (Self::Bottleneck, Feature::Diagram(x), Feature::Diagram(y)) => pd_metrics::bottleneck_with(x, y, Essentials::Exclude),
            (Self::Wasserstein(p), Feature::Diagram(x), Feature::Diagram(y)) => pd_metrics::wasserstein_with(x, y, p, Essentials::Exclude),
            (Self::Geodesic, Feature::Subspace(x), Feature::Subspace(y)) => SubspaceMetric::Geodesic.eval(x, y),
            (Self::NormalizedGeodesic, Feature::Subspace(x), Feature::Subspace(y)) => SubspaceMetric::NormalizedGeodesic.eval(x, y),
            (Self::Chordal, Feature::Subspace(x), Feature::Subspace(y)) => SubspaceMetric::Chordal.eval(x, y),
            (m, a, b) => Err(Error::MetricMismatch {
                metric: m.name(),
                feature: if matches!(a, Feature::Diagram(_)) { b.kind() } else { a.kind() },
            }),
        }
    }
}

/// Labelled training features, all of one kind.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSet {
    items: Vec<(Feature, u32)>,
    class_names: Option<Vec<String>>,
}

impl LabeledSet {
    pub fn new(items: Vec<(Feature, u32)>, class_names: Option<Vec<String>>) -> Result<Self> {
        let first = items.first().ok_or(Error::Empty("labeled set"))?;
        let kind = first.0.kind();
        if let Some((f, _)) = items.iter().find(|(f, _)| f.kind() != kind) {
            return Err(invalid!("labeled set mixes {kind} and {} features", f.kind()));
        }
        Ok(Self { items, class_names })
    }

    pub fn items(&self) -> &[(Feature, u32)] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn class_names(&self) -> Option<&[String]> {
        self.class_names.as_deref()
    }

    pub fn labels(&self) -> Vec<u32> {
        self.items.iter().map(|(_, l)| *l).collect()
    }
}

/// k-nearest-neighbour labels for each test feature.
///
/// Neighbours are ranked by `(distance, label)`; the vote goes to the most
/// frequent label, ties to the smaller summed distance and then the lower
/// label, so the result does not depend on training order.
pub fn knn_classify(train: &LabeledSet, test: &[Feature], metric: Metric, k: usize) -> Result<Vec<u32>> {
    if k == 0 || k > train.len() {
        return Err(invalid!("k must lie in [1, {}], got {k}", train.len()));
    }
    test.iter().map(|q| classify_one(train, q, metric, k)).collect()
}

fn classify_one(train: &LabeledSet, query: &Feature, metric: Metric, k: usize) -> Result<u32> {
    let mut scored = train
        .items
        .iter()
        .map(|(f, l)| metric.distance(query, f).map(|d| (d, *l)))
        .collect::<Result<Vec<_>>>()?;
    scored.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    scored.truncate(k);
    let votes = vote(&scored);
    Ok(votes)
}

fn vote(neigh: &[(f64, u32)]) -> u32 {
    let mut tally: Vec<(u32, usize, f64)> = Vec::new();
    for &(d, l) in neigh {
        match tally.iter_mut().find(|t| t.0 == l) {
            Some(t) => {
                t.1 += 1;
                t.2 += d;
            }
            None => tally.push((l, 1, d)),
        }
    }
    tally.sort_by(|a, b| b.1.cmp(&a.1).then(a.2.total_cmp(&b.2)).then(a.0.cmp(&b.0)));
    tally[0].0
}

/// Gram matrix of `kernel` over a set of Grassmann features, with the labels
/// in row order.
pub fn export_gram(set: &LabeledSet, kernel: SubspaceKernel) -> Result<(DMatrix<f64>, Vec<u32>)> {
    let points = set
        .items
        .iter()
        .map(|(f, _)| match f {
            Feature::Subspace(g) => Ok(g.clone()),
            Feature::Diagram(_) => Err(Error::MetricMismatch {
                metric: "gram kernel",
                feature: "diagram",
            }),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((gram_matrix(&points, kernel)?, set.labels()))
}

/// Fraction of matching labels.
pub fn accuracy(truth: &[u32], predicted: &[u32]) -> f64 {
    if truth.is_empty() {
        return 0.0;
    }
    let hits = truth.iter().zip(predicted).filter(|(a, b)| a == b).count();
    hits as f64 / truth.len() as f64
}

/// `n_classes x n_classes` counts, rows indexed by true label.
pub fn confusion_matrix(truth: &[u32], predicted: &[u32], n_classes: usize) -> Vec<Vec<u64>> {
    let mut m = alloc::vec![alloc::vec![0u64; n_classes]; n_classes];
    for (&t, &p) in truth.iter().zip(predicted) {
        if (t as usize) < n_classes && (p as usize) < n_classes {
            m[t as usize][p as usize] += 1;
        }
    }
    m
}

/// Shuffles `0..n` with a seeded generator and splits off `n_test` indices.
pub fn random_split(n: usize, n_test: usize, seed_value: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    if n_test > n {
        return Err(invalid!("cannot take {n_test} test items from {n}"));
    }
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut seed::rng(seed_value, &[]));
    let train = idx.split_off(n_test);
    Ok((train, idx))
}
