use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Accuracy of one method in a noise experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodAccuracy {
    pub method: String,
    /// One entry per noise level.
    pub per_level: Vec<f64>,
    /// Mean over levels (every level has the same number of queries).
    pub mean: f64,
    pub per_class: Vec<f64>,
    /// `confusion[truth][predicted]`, summed over all levels and trials.
    pub confusion: Vec<Vec<u64>>,
}

/// Per-call wall-clock time of one distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub metric: String,
    /// Median over batches of the per-call batch mean, seconds.
    pub mean_secs: f64,
    /// Standard deviation of the per-call batch means, seconds.
    pub std_secs: f64,
    /// Timed calls, warm-up excluded.
    pub repetitions: usize,
    pub ratio_to_chordal: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridTiming {
    pub grid_k: usize,
    pub chordal: Timing,
    pub geodesic: Timing,
}

/// Host details, kept apart from results so reports can be compared byte
/// for byte once it is removed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentStamp {
    pub package_version: String,
    pub os: String,
    pub arch: String,
    pub threads: usize,
    pub elapsed_secs: f64,
    pub unix_time: u64,
}

impl EnvironmentStamp {
    pub fn capture(threads: usize, elapsed_secs: f64) -> Self {
        Self {
            package_version: env!("CARGO_PKG_VERSION").to_string(),
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            threads,
            elapsed_secs,
            unix_time: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportKind {
    Noise,
    Timing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub kind: ReportKind,
    pub master_seed: u64,
    /// The full configuration the report was produced from.
    pub config: serde_json::Value,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub class_names: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub accuracy: Vec<MethodAccuracy>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub timings: Vec<Timing>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub grid_sweep: Vec<GridTiming>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub environment: Option<EnvironmentStamp>,
}

impl ExperimentReport {
    pub fn method(&self, name: &str) -> Option<&MethodAccuracy> {
        self.accuracy.iter().find(|m| m.method == name)
    }

    pub fn timing(&self, name: &str) -> Option<&Timing> {
        self.timings.iter().find(|t| t.metric == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// JSON with the environment stamp removed.
    pub fn results_json(&self) -> String {
        let mut r = self.clone();
        r.environment = None;
        r.to_json()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        if !self.accuracy.is_empty() {
            let mut header = vec!["method".to_string()];
            header.extend(self.levels.iter().map(|l| format!("{l}")));
            header.push("mean".into());
            let rows: Vec<Vec<String>> = self
                .accuracy
                .iter()
                .map(|m| {
                    let mut r = vec![m.method.clone()];
                    r.extend(m.per_level.iter().map(|a| format!("{:.2}", 100.0 * a)));
                    r.push(format!("{:.2}", 100.0 * m.mean));
                    r
                })
                .collect();
            out.push_str("Average accuracy (%) by noise level\n");
            out.push_str(&align(&header, &rows));
        }
        if !self.timings.is_empty() {
            let header: Vec<String> = ["metric", "time (1e-4 s)", "std (1e-4 s)", "calls", "ratio"]
                .map(String::from)
                .to_vec();
            let rows: Vec<Vec<String>> = self
                .timings
                .iter()
                .map(|t| {
                    vec![
                        t.metric.clone(),
                        format!("{:.4}", t.mean_secs * 1e4),
                        format!("{:.4}", t.std_secs * 1e4),
                        t.repetitions.to_string(),
                        format!("{:.2}", t.ratio_to_chordal),
                    ]
                })
                .collect();
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str("Average time per distance\n");
            out.push_str(&align(&header, &rows));
        }
        if !self.grid_sweep.is_empty() {
            let mut header = vec!["grid size (k)".to_string()];
            let mut chordal = vec!["chordal (1e-4 s)".to_string()];
            let mut geodesic = vec!["geodesic (1e-4 s)".to_string()];
            for g in &self.grid_sweep {
                header.push(g.grid_k.to_string());
                chordal.push(format!("{:.4}", g.chordal.mean_secs * 1e4));
                geodesic.push(format!("{:.4}", g.geodesic.mean_secs * 1e4));
            }
            if !out.is_empty() {
                out.push('\n');
            }
            out.push_str(&align(&header, &[chordal, geodesic]));
        }
        out
    }
}

fn align(header: &[String], rows: &[Vec<String>]) -> String {
    let cols = header.len();
    let mut width = vec![0; cols];
    for r in std::iter::once(header).chain(rows.iter().map(Vec::as_slice)) {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let mut line = |r: &[String]| {
        let cells: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { format!("{c:<w$}", w = width[i]) } else { format!("{c:>w$}", w = width[i]) })
            .collect();
        let _ = writeln!(out, "{}", cells.join("  ").trim_end());
    };
    line(header);
    let rule: Vec<String> = width.iter().map(|w| "-".repeat(*w)).collect();
    line(&rule);
    for r in rows {
        line(r);
    }
    out
}
