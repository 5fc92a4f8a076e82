//! File formats.
//!
//! * point cloud: CSV, one row per point, no header
//! * scalar graph: edge CSV of `u,v` index pairs plus a values file with one float per line
//! * diagram: CSV with header `birth,death,dim,essential`
//! * embedding: `PTS1` binary (little-endian `u32` grid_k, N, p, then `N * p` `f64` column-major)
//! * config: [`PtsConfig`] as JSON
//! * gram: square CSV with a header row of item names

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use nalgebra::DMatrix;
use pts_core::datasets::ShapeClass;
use pts_core::grassmann::GrassmannPoint;
use pts_core::persistence::{PointCloud, ScalarGraph};
use pts_core::pts::PtsConfig;
use pts_core::{PersistenceDiagram, PersistencePoint};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const PTS_MAGIC: &[u8; 4] = b"PTS1";

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

fn csv_reader(text: &str, headers: bool) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(headers)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes())
}

fn parse_f64(path: &Path, row: usize, field: &str) -> Result<f64> {
    field
        .parse::<f64>()
        .map_err(|_| Error::format(path, format!("row {row}: `{field}` is not a number")))
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    Error::format(path, e.to_string())
}

pub fn read_cloud(path: &Path) -> Result<PointCloud> {
    let text = read_text(path)?;
    let mut rows = Vec::new();
    for (i, rec) in csv_reader(&text, false).records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        rows.push(rec.iter().map(|f| parse_f64(path, i + 1, f)).collect::<Result<Vec<_>>>()?);
    }
    Ok(PointCloud::new(&rows)?)
}

pub fn cloud_to_csv(cloud: &PointCloud) -> String {
    let mut out = String::new();
    for p in cloud.points() {
        let row: Vec<String> = p.iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn write_cloud(path: &Path, cloud: &PointCloud) -> Result<()> {
    write_bytes(path, cloud_to_csv(cloud).as_bytes())
}

/// One float per line; blank lines and `#` comments are skipped.
pub fn read_values(path: &Path) -> Result<Vec<f64>> {
    read_text(path)?
        .lines()
        .enumerate()
        .map(|(i, l)| (i, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(i, l)| parse_f64(path, i + 1, l))
        .collect()
}

pub fn write_values(path: &Path, values: &[f64]) -> Result<()> {
    let mut out = String::new();
    for v in values {
        out.push_str(&v.to_string());
        out.push('\n');
    }
    write_bytes(path, out.as_bytes())
}

pub fn read_scalar_graph(edges: &Path, values: &Path) -> Result<ScalarGraph> {
    let vals = read_values(values)?;
    let text = read_text(edges)?;
    let mut list = Vec::new();
    for (i, rec) in csv_reader(&text, false).records().enumerate() {
        let rec = rec.map_err(|e| csv_err(edges, e))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        if rec.len() != 2 {
            return Err(Error::format(edges, format!("row {}: expected `u,v`", i + 1)));
        }
        let idx = |f: &str| {
            f.parse::<usize>()
                .map_err(|_| Error::format(edges, format!("row {}: `{f}` is not a vertex index", i + 1)))
        };
        list.push((idx(&rec[0])?, idx(&rec[1])?));
    }
    Ok(ScalarGraph::new(vals, list)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct PdRow {
    birth: f64,
    death: f64,
    dim: u32,
    essential: u8,
}

/// Reads a diagram CSV. The cap is the common death of the essential
/// points, or the largest finite value when there are none.
pub fn read_pd(path: &Path) -> Result<PersistenceDiagram> {
    let text = read_text(path)?;
    let mut rdr = csv_reader(&text, true);
    let header = rdr.headers().map_err(|e| csv_err(path, e))?.clone();
    if header.iter().collect::<Vec<_>>() != ["birth", "death", "dim", "essential"] {
        return Err(Error::format(path, "expected header `birth,death,dim,essential`"));
    }
    let mut points = Vec::new();
    for (i, row) in rdr.deserialize::<PdRow>().enumerate() {
        let r = row.map_err(|e| Error::format(path, format!("row {}: {e}", i + 1)))?;
        if r.essential > 1 {
            return Err(Error::format(path, format!("row {}: essential must be 0 or 1", i + 1)));
        }
        points.push(PersistencePoint { birth: r.birth, death: r.death, dim: r.dim, essential: r.essential == 1 });
    }
    let caps: Vec<f64> = points.iter().filter(|p| p.essential).map(|p| p.death).collect();
    let cap = match caps.first() {
        Some(&c) => {
            if caps.iter().any(|&d| d != c) {
                return Err(Error::format(path, "essential points disagree on the cap"));
            }
            c
        }
        None => points.iter().flat_map(|p| [p.birth, p.death]).fold(0.0, f64::max),
    };
    Ok(PersistenceDiagram::new(points, cap)?)
}

pub fn pd_to_csv(pd: &PersistenceDiagram) -> String {
    let mut out = String::from("birth,death,dim,essential\n");
    for p in &pd.points {
        out.push_str(&format!("{},{},{},{}\n", p.birth, p.death, p.dim, p.essential as u8));
    }
    out
}

pub fn write_pd(path: &Path, pd: &PersistenceDiagram) -> Result<()> {
    write_bytes(path, pd_to_csv(pd).as_bytes())
}

/// Points of `pd` in homology dimension `dim`, keeping the cap.
pub fn restrict_dim(pd: &PersistenceDiagram, dim: u32) -> PersistenceDiagram {
    PersistenceDiagram {
        points: pd.points.iter().filter(|p| p.dim == dim).cloned().collect(),
        cap: pd.cap,
    }
}

/// Distinct homology dimensions present, ascending.
pub fn dims_present(pd: &PersistenceDiagram) -> Vec<u32> {
    let mut d: Vec<u32> = pd.points.iter().map(|p| p.dim).collect();
    d.sort_unstable();
    d.dedup();
    d
}

pub fn encode_embedding(g: &GrassmannPoint) -> Vec<u8> {
    let b = g.basis();
    let mut out = Vec::with_capacity(16 + 8 * b.len());
    out.extend_from_slice(PTS_MAGIC);
    out.extend_from_slice(&g.grid_k().to_le_bytes());
    out.extend_from_slice(&(b.nrows() as u32).to_le_bytes());
    out.extend_from_slice(&(b.ncols() as u32).to_le_bytes());
    for v in b.as_slice() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_embedding(bytes: &[u8], path: &Path) -> Result<GrassmannPoint> {
    if bytes.len() < 16 || &bytes[..4] != PTS_MAGIC {
        return Err(Error::format(path, "not a PTS1 embedding file"));
    }
    let word = |i: usize| u32::from_le_bytes(bytes[4 * i..4 * i + 4].try_into().unwrap());
    let (grid_k, n, p) = (word(1), word(2) as usize, word(3) as usize);
    let expected = n
        .checked_mul(p)
        .and_then(|c| c.checked_mul(8))
        .and_then(|c| c.checked_add(16))
        .ok_or_else(|| Error::format(path, "header sizes overflow"))?;
    if bytes.len() != expected {
        return Err(Error::format(path, format!("expected {expected} bytes for {n}x{p}, found {}", bytes.len())));
    }
    if grid_k != 0 && (grid_k as usize).pow(2) != n {
        return Err(Error::format(path, format!("grid_k {grid_k} does not match N = {n}")));
    }
    let values: Vec<f64> = bytes[16..]
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(GrassmannPoint::new(DMatrix::from_vec(n, p, values), grid_k)?)
}

pub fn read_embedding(path: &Path) -> Result<GrassmannPoint> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode_embedding(&bytes, path)
}

pub fn write_embedding(path: &Path, g: &GrassmannPoint) -> Result<()> {
    write_bytes(path, &encode_embedding(g))
}

pub fn read_config(path: &Path) -> Result<PtsConfig> {
    let cfg: PtsConfig = serde_json::from_str(&read_text(path)?)
        .map_err(|e| Error::format(path, e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_bytes(path, text.as_bytes())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Error::format(path, e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub class: ShapeClass,
    pub label: u32,
    pub level: f64,
    pub trial: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusManifest {
    pub master_seed: u64,
    pub n_points: usize,
    pub classes: Vec<ShapeClass>,
    pub levels: Vec<f64>,
    pub trials: usize,
    pub entries: Vec<ManifestEntry>,
}

/// `names` as the header row, then one row per matrix row.
pub fn gram_to_csv(names: &[String], gram: &DMatrix<f64>) -> String {
    let mut out = names.join(",");
    out.push('\n');
    for i in 0..gram.nrows() {
        let row: Vec<String> = (0..gram.ncols()).map(|j| gram[(i, j)].to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn read_gram(path: &Path) -> Result<(Vec<String>, DMatrix<f64>)> {
    let text = read_text(path)?;
    let mut rdr = csv_reader(&text, true);
    let names: Vec<String> = rdr.headers().map_err(|e| csv_err(path, e))?.iter().map(String::from).collect();
    let n = names.len();
    let mut values = Vec::with_capacity(n * n);
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        if rec.len() != n {
            return Err(Error::format(path, format!("row {} has {} entries, expected {n}", i + 1, rec.len())));
        }
        for f in rec.iter() {
            values.push(parse_f64(path, i + 1, f)?);
        }
    }
    if values.len() != n * n {
        return Err(Error::format(path, "gram matrix is not square"));
    }
    Ok((names, DMatrix::from_row_slice(n, n, &values)))
}

/// Two-column CSV `file,label`.
pub fn labels_to_csv(names: &[String], labels: &[u32]) -> String {
    let mut out = String::from("file,label\n");
    for (n, l) in names.iter().zip(labels) {
        out.push_str(&format!("{n},{l}\n"));
    }
    out
}

pub fn read_labels(path: &Path) -> Result<BTreeMap<String, u32>> {
    let text = read_text(path)?;
    let mut rdr = csv_reader(&text, true);
    let mut map = BTreeMap::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        if rec.len() != 2 {
            return Err(Error::format(path, format!("row {}: expected `file,label`", i + 1)));
        }
        let label = rec[1]
            .parse::<u32>()
            .map_err(|_| Error::format(path, format!("row {}: label must be a nonnegative integer", i + 1)))?;
        map.insert(rec[0].to_string(), label);
    }
    Ok(map)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    write_bytes(path, text.as_bytes())
}

/// Files in `dir` with extension `ext`, sorted by name.
pub fn list_dir(dir: &Path, ext: &str) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == ext) {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}

pub fn file_name(path: &Path) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_text(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Error::io(Path::new("<stdout>"), e))
        }
    }
}
