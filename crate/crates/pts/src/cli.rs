//! Command-line front end shared by the `pts` and `pd` binaries.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pts_core::datasets::{noise_ladder, sample_series, sample_shape, SeriesKind, ShapeClass, ShapeSpec};
use pts_core::grassmann::{gram_matrix, min_eigenvalue, GrassmannPoint, RbfForm, SubspaceKernel};
use pts_core::learn::{knn_classify, Feature, LabeledSet, Metric};
use pts_core::pd_metrics::{distance, DistanceMode, Essentials};
use pts_core::persistence::{delay_embed, scalar_field_h0, vr_persistence, Direction, PointCloud};
use pts_core::pts::{fit_scaling, pts_embed_transformed, transform_axes, PtsConfig, Scaling};
use pts_core::PersistenceDiagram;

use crate::bench::{run_timing_benchmark, TimingConfig};
use crate::error::{Error, Result};
use crate::experiment::{run_noise_experiment, with_sentinel, with_threads, NoiseExperimentConfig, DEDUP_TOL};
use crate::io::{self, CorpusManifest, ManifestEntry};

#[derive(Debug, Parser)]
#[command(version, about = "Persistence diagrams, perturbed topological signatures and their distances")]
pub struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// Options every subcommand accepts.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Master seed; overrides the seed in the config file.
    #[arg(long)]
    pub seed: Option<u64>,
    /// JSON config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute persistence diagrams from a point cloud, scalar graph or time series.
    ComputePd(ComputePdArgs),
    /// Embed diagrams as perturbed topological signatures.
    Embed(EmbedArgs),
    /// Distance or kernel value between two diagrams or embeddings.
    Dist(DistArgs),
    /// k-nearest-neighbour classification of a directory of features.
    Knn(KnnArgs),
    /// Gram matrix of a directory of embeddings.
    Gram(GramArgs),
    /// Generate shapes, noise-ladder corpora and time series.
    Gen(GenArgs),
    /// Run the noise-robustness classification experiment.
    Noise(ExperimentArgs),
    /// Run the distance timing benchmark (single-threaded).
    Bench(ExperimentArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputKind {
    Cloud,
    Graph,
    Series,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirectionArg {
    Sublevel,
    Superlevel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EssentialsArg {
    Exclude,
    Include,
}

impl From<EssentialsArg> for Essentials {
    fn from(e: EssentialsArg) -> Self {
        match e {
            EssentialsArg::Exclude => Essentials::Exclude,
            EssentialsArg::Include => Essentials::Include,
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputePdArgs {
    /// Point cloud CSV, edge CSV (with --values) or series file.
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "cloud")]
    pub kind: InputKind,
    /// Vertex values of a scalar graph, one per line.
    #[arg(long)]
    pub values: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "sublevel")]
    pub direction: DirectionArg,
    #[arg(long, default_value_t = 1)]
    pub max_dim: usize,
    #[arg(long, default_value_t = 3.0)]
    pub max_eps: f64,
    /// Delay-embedding dimension for series input.
    #[arg(long, default_value_t = 2)]
    pub embed_dim: usize,
    #[arg(long, default_value_t = 1)]
    pub lag: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// A diagram CSV, or a directory of them.
    pub input: PathBuf,
    /// Output file, or directory when the input is a directory.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Only use points of this homology dimension.
    #[arg(long)]
    pub dim: Option<u32>,
    /// Scaling box JSON (`{"lo": [..], "hi": [..]}`); fitted on the input otherwise.
    #[arg(long)]
    pub scaling: Option<PathBuf>,
    /// Keep essential points in the surfaces.
    #[arg(long)]
    pub keep_essential: bool,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    pub a: PathBuf,
    pub b: PathBuf,
    /// bottleneck | w1 | w2 | wp:<p> | geo | ngeo | chordal | kp | krbf:<beta>
    #[arg(long)]
    pub metric: MetricArg,
    /// Use exp(-beta d_chordal^2) for krbf.
    #[arg(long)]
    pub conventional: bool,
    #[arg(long)]
    pub dim: Option<u32>,
    #[arg(long, value_enum, default_value = "exclude")]
    pub essentials: EssentialsArg,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct KnnArgs {
    #[arg(long)]
    pub train: PathBuf,
    /// `file,label` CSV for the training files.
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long)]
    pub test: PathBuf,
    #[arg(long)]
    pub metric: MetricArg,
    #[arg(short, default_value_t = 1)]
    pub k: usize,
    #[arg(long)]
    pub dim: Option<u32>,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct GramArgs {
    /// Directory of `.pts` embeddings.
    pub input: PathBuf,
    /// kp | krbf:<beta>
    #[arg(long, default_value = "kp")]
    pub kernel: MetricArg,
    #[arg(long)]
    pub conventional: bool,
    #[arg(short, long)]
    pub output: PathBuf,
    /// `file,label` CSV; when given, the labels are written next to the matrix.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long)]
    pub labels_out: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesArg {
    Sine,
    SumOfSines,
    LorenzX,
    Constant,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Shape class for a single cloud.
    #[arg(long)]
    pub class: Option<String>,
    #[arg(short, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    /// Write a noise-ladder corpus and manifest into the output directory.
    #[arg(long)]
    pub corpus: bool,
    /// Comma-separated classes for a corpus.
    #[arg(long, value_delimiter = ',')]
    pub classes: Vec<String>,
    /// Comma-separated ascending noise levels for a corpus.
    #[arg(long, value_delimiter = ',')]
    pub levels: Vec<f64>,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
    /// Generate a time series instead of a shape.
    #[arg(long, value_enum)]
    pub series: Option<SeriesArg>,
    #[arg(long, default_value_t = 200)]
    pub length: usize,
    /// Sine period, or the first of two periods.
    #[arg(long, default_value_t = 50.0)]
    pub period: f64,
    #[arg(long, default_value_t = 50.0 * std::f64::consts::SQRT_2)]
    pub period2: f64,
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    #[arg(long, default_value_t = 1000)]
    pub transient: usize,
    #[arg(long, default_value_t = 0.0)]
    pub value: f64,
    #[arg(short, long)]
    pub output: PathBuf,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// Report JSON (standard output when omitted).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Aligned text table of the results.
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Override the number of trials (noise experiment).
    #[arg(long)]
    pub trials: Option<usize>,
    #[command(flatten)]
    pub common: Common,
}

/// Distance and kernel selectors accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MetricArg {
    Bottleneck,
    Wasserstein(f64),
    Geodesic,
    NormalizedGeodesic,
    Chordal,
    ProjectionKernel,
    RbfKernel(f64),
}

impl FromStr for MetricArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let num = |v: &str, what: &str| v.parse::<f64>().map_err(|_| format!("invalid {what} in `{s}`"));
        Ok(match s {
            "bottleneck" => Self::Bottleneck,
            "w1" => Self::Wasserstein(1.0),
            "w2" => Self::Wasserstein(2.0),
            "geo" => Self::Geodesic,
            "ngeo" => Self::NormalizedGeodesic,
            "chordal" => Self::Chordal,
            "kp" => Self::ProjectionKernel,
            _ => {
                if let Some(p) = s.strip_prefix("wp:") {
                    Self::Wasserstein(num(p, "order")?)
                } else if let Some(b) = s.strip_prefix("krbf:") {
                    Self::RbfKernel(num(b, "beta")?)
                } else {
                    return Err(format!(
                        "unknown metric `{s}` (expected bottleneck, w1, w2, wp:<p>, geo, ngeo, chordal, kp or krbf:<beta>)"
                    ));
                }
            }
        })
    }
}

impl MetricArg {
    fn on_diagrams(self) -> bool {
        matches!(self, Self::Bottleneck | Self::Wasserstein(_))
    }

    fn mode(self) -> Option<DistanceMode> {
        match self {
            Self::Bottleneck => Some(DistanceMode::Bottleneck),
            Self::Wasserstein(p) => Some(DistanceMode::Wasserstein(p)),
            _ => None,
        }
    }

    fn kernel(self, conventional: bool) -> Option<SubspaceKernel> {
        let form = if conventional { RbfForm::Conventional } else { RbfForm::Projection };
        match self {
            Self::ProjectionKernel => Some(SubspaceKernel::Projection),
            Self::RbfKernel(beta) => Some(SubspaceKernel::Rbf { beta, form }),
            _ => None,
        }
    }

    fn metric(self) -> Option<Metric> {
        match self {
            Self::Bottleneck => Some(Metric::Bottleneck),
            Self::Wasserstein(p) => Some(Metric::Wasserstein(p)),
            Self::Geodesic => Some(Metric::Geodesic),
            Self::NormalizedGeodesic => Some(Metric::NormalizedGeodesic),
            Self::Chordal => Some(Metric::Chordal),
            _ => None,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Results go to `out`, warnings and errors to `err`.
pub fn run(args: impl IntoIterator<Item = impl Into<OsString> + Clone>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let msg = Error::Usage(e.kind().to_string() + ": " + e.render().to_string().lines().next().unwrap_or(""));
            let _ = writeln!(err, "{}", msg.to_json());
            return 2;
        }
    };
    match execute(cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "{}", e.to_json());
            1
        }
    }
}

pub fn execute(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    if let Command::Bench(args) = cli.command {
        if cli.threads.is_some() {
            let _ = writeln!(err, "warning: --threads is ignored; the timing benchmark runs single-threaded");
        }
        return bench(&args, out);
    }
    let threads = cli.threads;
    let mut buf = Vec::new();
    let mut warn = Vec::new();
    with_threads(threads, || dispatch(cli.command, &mut buf, &mut warn))??;
    out.write_all(&buf).map_err(|e| Error::io(Path::new("<stdout>"), e))?;
    err.write_all(&warn).map_err(|e| Error::io(Path::new("<stderr>"), e))?;
    Ok(())
}

fn dispatch(cmd: Command, out: &mut Vec<u8>, err: &mut Vec<u8>) -> Result<()> {
    match cmd {
        Command::ComputePd(a) => compute_pd(&a, out),
        Command::Embed(a) => embed(&a),
        Command::Dist(a) => dist(&a, out),
        Command::Knn(a) => knn(&a, out),
        Command::Gram(a) => gram(&a, err),
        Command::Gen(a) => gen(&a),
        Command::Noise(a) => noise(&a, out),
        Command::Bench(a) => bench(&a, out),
    }
}

fn pts_config(common: &Common) -> Result<PtsConfig> {
    let mut cfg = match &common.config {
        Some(p) => io::read_config(p)?,
        None => PtsConfig::default(),
    };
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    Ok(cfg)
}

fn emit_text(out: &mut Vec<u8>, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => io::write_text(p, text),
        None => {
            out.extend_from_slice(text.as_bytes());
            Ok(())
        }
    }
}

fn merge_diagrams(pds: Vec<PersistenceDiagram>, cap: f64) -> PersistenceDiagram {
    PersistenceDiagram { points: pds.into_iter().flat_map(|d| d.points).collect(), cap }
}

fn compute_pd(a: &ComputePdArgs, out: &mut Vec<u8>) -> Result<()> {
    if let Some(p) = &a.common.config {
        io::read_config(p)?;
    }
    let pd = match a.kind {
        InputKind::Cloud => {
            let cloud = io::read_cloud(&a.input)?;
            merge_diagrams(vr_persistence(&cloud.dedup(DEDUP_TOL), a.max_dim, a.max_eps)?, a.max_eps)
        }
        InputKind::Series => {
            let series = io::read_values(&a.input)?;
            let cloud = delay_embed(&series, a.embed_dim, a.lag)?;
            merge_diagrams(vr_persistence(&cloud.dedup(DEDUP_TOL), a.max_dim, a.max_eps)?, a.max_eps)
        }
        InputKind::Graph => {
            let values = a.values.as_deref().ok_or_else(|| Error::Usage("--values is required for graph input".into()))?;
            let graph = io::read_scalar_graph(&a.input, values)?;
            let dir = match a.direction {
                DirectionArg::Sublevel => Direction::Sublevel,
                DirectionArg::Superlevel => Direction::Superlevel,
            };
            scalar_field_h0(&graph, dir)
        }
    };
    emit_text(out, a.output.as_deref(), &io::pd_to_csv(&pd))
}

fn prepared(pd: &PersistenceDiagram, dim: Option<u32>, keep_essential: bool) -> PersistenceDiagram {
    let pd = match dim {
        Some(d) => io::restrict_dim(pd, d),
        None => pd.clone(),
    };
    if keep_essential {
        pd
    } else {
        PersistenceDiagram { points: pd.finite().cloned().collect(), cap: pd.cap }
    }
}

fn embed(a: &EmbedArgs) -> Result<()> {
    let cfg = pts_config(&a.common)?;
    let files = if a.input.is_dir() { io::list_dir(&a.input, "csv")? } else { vec![a.input.clone()] };
    if files.is_empty() {
        return Err(pts_core::Error::Empty("no diagram files found").into());
    }
    let sentinel_dim = a.dim.unwrap_or(0);
    let transformed = files
        .iter()
        .map(|f| Ok(transform_axes(&with_sentinel(&prepared(&io::read_pd(f)?, a.dim, a.keep_essential), sentinel_dim))))
        .collect::<Result<Vec<_>>>()?;
    let scaling: Scaling = match &a.scaling {
        Some(p) => {
            let s: Scaling = io::read_json(p)?;
            Scaling::new(s.lo, s.hi)?
        }
        None => fit_scaling(&transformed, cfg.margin)?,
    };
    use rayon::prelude::*;
    let emb = transformed
        .par_iter()
        .map(|t| pts_embed_transformed(t, &cfg, &scaling).map_err(Error::from))
        .collect::<Result<Vec<_>>>()?;
    if a.input.is_dir() {
        for (f, g) in files.iter().zip(&emb) {
            let name = Path::new(f.file_stem().unwrap_or_default()).with_extension("pts");
            io::write_embedding(&a.output.join(name), g)?;
        }
        io::write_json(&a.output.join("scaling.json"), &scaling)
    } else {
        io::write_embedding(&a.output, &emb[0])
    }
}

fn diagram_distance(x: &PersistenceDiagram, y: &PersistenceDiagram, mode: DistanceMode, ess: Essentials) -> Result<f64> {
    // Mixed-dimension files: per-dimension distances, combined as max for
    // bottleneck and as an l_p sum for Wasserstein.
    let mut dims = io::dims_present(x);
    dims.extend(io::dims_present(y));
    dims.sort_unstable();
    dims.dedup();
    if dims.len() <= 1 {
        return Ok(distance(x, y, mode, ess)?);
    }
    let mut acc = 0.0_f64;
    for d in dims {
        let v = distance(&io::restrict_dim(x, d), &io::restrict_dim(y, d), mode, ess)?;
        acc = match mode {
            DistanceMode::Bottleneck => acc.max(v),
            DistanceMode::Wasserstein(p) => acc + v.powf(p),
        };
    }
    Ok(match mode {
        DistanceMode::Bottleneck => acc,
        DistanceMode::Wasserstein(p) => acc.powf(1.0 / p),
    })
}

fn dist(a: &DistArgs, out: &mut Vec<u8>) -> Result<()> {
    pts_config(&a.common)?;
    let value = if let Some(mode) = a.metric.mode() {
        let x = io::read_pd(&a.a)?;
        let y = io::read_pd(&a.b)?;
        let (x, y) = match a.dim {
            Some(d) => (io::restrict_dim(&x, d), io::restrict_dim(&y, d)),
            None => (x, y),
        };
        diagram_distance(&x, &y, mode, a.essentials.into())?
    } else {
        let x = io::read_embedding(&a.a)?;
        let y = io::read_embedding(&a.b)?;
        match (a.metric.metric(), a.metric.kernel(a.conventional)) {
            (Some(m), _) => m.distance(&Feature::Subspace(x), &Feature::Subspace(y))?,
            (None, Some(k)) => k.eval(&x, &y)?,
            (None, None) => unreachable!("every selector is a metric or a kernel"),
        }
    };
    out.extend_from_slice(format!("{value}\n").as_bytes());
    Ok(())
}

fn load_features(dir: &Path, metric: MetricArg, dim: Option<u32>) -> Result<(Vec<String>, Vec<Feature>)> {
    let ext = if metric.on_diagrams() { "csv" } else { "pts" };
    let files = io::list_dir(dir, ext)?;
    if files.is_empty() {
        return Err(Error::Usage(format!("no .{ext} files in {}", dir.display())));
    }
    let mut names = Vec::new();
    let mut feats = Vec::new();
    for f in files {
        names.push(io::file_name(&f));
        feats.push(if metric.on_diagrams() {
            let pd = io::read_pd(&f)?;
            Feature::Diagram(match dim {
                Some(d) => io::restrict_dim(&pd, d),
                None if io::dims_present(&pd).len() > 1 => {
                    return Err(Error::Usage(format!("{} mixes homology dimensions; pass --dim", f.display())));
                }
                None => pd,
            })
        } else {
            Feature::Subspace(io::read_embedding(&f)?)
        });
    }
    Ok((names, feats))
}

fn lookup_labels(names: &[String], labels: &std::collections::BTreeMap<String, u32>, path: &Path) -> Result<Vec<u32>> {
    names
        .iter()
        .map(|n| labels.get(n).copied().ok_or_else(|| Error::format(path, format!("no label for `{n}`"))))
        .collect()
}

fn knn(a: &KnnArgs, out: &mut Vec<u8>) -> Result<()> {
    pts_config(&a.common)?;
    let metric = a
        .metric
        .metric()
        .ok_or_else(|| Error::Usage("knn needs a distance, not a kernel".into()))?;
    let (train_names, train) = load_features(&a.train, a.metric, a.dim)?;
    let labels = lookup_labels(&train_names, &io::read_labels(&a.labels)?, &a.labels)?;
    let set = LabeledSet::new(train.into_iter().zip(labels).collect(), None)?;
    let (test_names, test) = load_features(&a.test, a.metric, a.dim)?;
    let pred = knn_classify(&set, &test, metric, a.k)?;
    emit_text(out, a.output.as_deref(), &io::labels_to_csv(&test_names, &pred))
}

fn gram(a: &GramArgs, err: &mut Vec<u8>) -> Result<()> {
    pts_config(&a.common)?;
    let kernel = a
        .kernel
        .kernel(a.conventional)
        .ok_or_else(|| Error::Usage("gram needs a kernel: kp or krbf:<beta>".into()))?;
    let files = io::list_dir(&a.input, "pts")?;
    if files.is_empty() {
        return Err(pts_core::Error::Empty("no .pts files to build a gram matrix from").into());
    }
    let names: Vec<String> = files.iter().map(|f| io::file_name(f)).collect();
    let points = files.iter().map(|f| io::read_embedding(f)).collect::<Result<Vec<GrassmannPoint>>>()?;
    let g = gram_matrix(&points, kernel)?;
    if kernel == SubspaceKernel::Projection {
        let lmin = min_eigenvalue(&g);
        if lmin < -1e-8 {
            err.extend_from_slice(format!("warning: projection-kernel gram matrix has eigenvalue {lmin}\n").as_bytes());
        }
    }
    io::write_text(&a.output, &io::gram_to_csv(&names, &g))?;
    if let Some(lp) = &a.labels {
        let labels = lookup_labels(&names, &io::read_labels(lp)?, lp)?;
        let target = a.labels_out.clone().unwrap_or_else(|| a.output.with_extension("labels.csv"));
        io::write_text(&target, &io::labels_to_csv(&names, &labels))?;
    }
    Ok(())
}

fn parse_class(s: &str) -> Result<ShapeClass> {
    Ok(ShapeClass::from_str(s)?)
}

fn gen(a: &GenArgs) -> Result<()> {
    if let Some(p) = &a.common.config {
        io::read_config(p)?;
    }
    let seed = a.common.seed.unwrap_or(0);
    if let Some(kind) = a.series {
        let kind = match kind {
            SeriesArg::Sine => SeriesKind::Sine { period: a.period },
            SeriesArg::SumOfSines => SeriesKind::SumOfSines { periods: [a.period, a.period2] },
            SeriesArg::LorenzX => SeriesKind::LorenzX { dt: a.dt, transient: a.transient },
            SeriesArg::Constant => SeriesKind::Constant { value: a.value },
        };
        return io::write_values(&a.output, &sample_series(kind, a.length, seed)?);
    }
    if a.corpus {
        let classes = if a.classes.is_empty() {
            ShapeClass::ALL.to_vec()
        } else {
            a.classes.iter().map(|c| parse_class(c)).collect::<Result<Vec<_>>>()?
        };
        let levels = if a.levels.is_empty() { vec![a.noise] } else { a.levels.clone() };
        let ladder = noise_ladder(&classes, a.n, &levels, a.trials, seed)?;
        let mut entries = Vec::with_capacity(ladder.len());
        for c in &ladder {
            let file = format!("{}_l{:02}_t{:03}.csv", c.class.name(), c.level_index, c.trial);
            io::write_cloud(&a.output.join(&file), &c.cloud)?;
            entries.push(ManifestEntry { file, class: c.class, label: c.label, level: c.level, trial: c.trial });
        }
        let manifest = CorpusManifest { master_seed: seed, n_points: a.n, classes, levels, trials: a.trials, entries };
        return io::write_json(&a.output.join("manifest.json"), &manifest);
    }
    let class = a
        .class
        .as_deref()
        .ok_or_else(|| Error::Usage("gen needs --class, --corpus or --series".into()))?;
    let spec = ShapeSpec { class: parse_class(class)?, n: a.n, noise_sigma: a.noise, seed };
    let cloud: PointCloud = sample_shape(&spec)?;
    io::write_cloud(&a.output, &cloud)
}

fn write_report(a: &ExperimentArgs, report: &crate::report::ExperimentReport, out: &mut dyn Write) -> Result<()> {
    let json = report.to_json() + "\n";
    match &a.output {
        Some(p) => io::write_text(p, &json)?,
        None => out.write_all(json.as_bytes()).map_err(|e| Error::io(Path::new("<stdout>"), e))?,
    }
    if let Some(t) = &a.table {
        io::write_text(t, &report.to_table())?;
    }
    Ok(())
}

fn noise(a: &ExperimentArgs, out: &mut Vec<u8>) -> Result<()> {
    let mut cfg: NoiseExperimentConfig = match &a.common.config {
        Some(p) => io::read_json(p)?,
        None => NoiseExperimentConfig::default(),
    };
    if let Some(s) = a.common.seed {
        cfg.master_seed = s;
    }
    if let Some(t) = a.trials {
        cfg.trials = t;
    }
    let report = run_noise_experiment(&cfg)?;
    write_report(a, &report, out)
}

fn bench(a: &ExperimentArgs, out: &mut dyn Write) -> Result<()> {
    let mut cfg: TimingConfig = match &a.common.config {
        Some(p) => io::read_json(p)?,
        None => TimingConfig::default(),
    };
    if let Some(s) = a.common.seed {
        cfg.master_seed = s;
    }
    let report = with_threads(Some(1), || run_timing_benchmark(&cfg))??;
    write_report(a, &report, out)
}
