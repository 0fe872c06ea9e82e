//! CSV and JSON report files.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use csmoute_core::taxonomy::TypeProportions;
use serde::{Deserialize, Serialize};

use crate::benchmark::{AverageRow, BenchmarkOutput, DatasetInfo};
use crate::compare::Tables;
use crate::error::{CliError, CliResult};

pub const TAXONOMY_HEADER: [&str; 8] = [
    "dataset",
    "imbalance_ratio",
    "samples",
    "features",
    "safe",
    "borderline",
    "rare",
    "outlier",
];

/// Reproducibility record of a benchmark run. Holds nothing that varies
/// between identical runs (no clock, host or thread count).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub software: String,
    pub version: String,
    pub seed: u64,
    pub config_hash: String,
    pub datasets: Vec<String>,
    pub methods: Vec<String>,
    pub classifiers: Vec<String>,
    pub failures: usize,
}

fn csv_err(path: &Path, e: csv::Error) -> CliError {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(path, io),
        other => CliError::Config(format!("{}: {other:?}", path.display())),
    }
}

/// Writes `rows` as CSV with a header taken from the field names.
pub fn write_rows<T: Serialize>(path: &Path, rows: &[T], header: &[&str]) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_path(path)
        .map_err(|e| csv_err(path, e))?;
    w.write_record(header).map_err(|e| csv_err(path, e))?;
    for r in rows {
        w.serialize(r).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// One dataset summary row: name, IR and type percentages to 2 d.p.
pub fn taxonomy_record(info: &DatasetInfo) -> Vec<String> {
    let mut rec = vec![
        info.name.clone(),
        format!("{:.2}", info.imbalance_ratio),
        info.samples.to_string(),
        info.features.to_string(),
    ];
    match &info.proportions {
        Some(p) => rec.extend(p.as_array().iter().map(|v| format!("{:.2}", v * 100.0))),
        None => rec.extend(std::iter::repeat_n(String::new(), 4)),
    }
    rec
}

pub fn write_taxonomy<W: Write>(out: W, infos: &[DatasetInfo]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TAXONOMY_HEADER)?;
    for info in infos {
        w.write_record(taxonomy_record(info))?;
    }
    w.flush()?;
    Ok(())
}

/// Writes every benchmark report into `dir`.
pub fn write_benchmark(dir: &Path, out: &BenchmarkOutput, tables: &Tables, manifest: &Manifest) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let p = |name: &str| dir.join(name);
    write_rows(
        &p("folds.csv"),
        &out.folds,
        &["dataset", "method", "classifier", "metric", "params", "repetition", "fold", "value"],
    )?;
    write_json(&p("folds.json"), &out.folds)?;
    write_rows(&p("averages.csv"), &out.averages, &AVERAGES_HEADER)?;
    write_json(&p("averages.json"), &out.averages)?;
    write_rows(&p("failures.csv"), &out.failures, &["dataset", "method", "classifier", "error"])?;
    let path = p("taxonomy.csv");
    let file = std::fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
    write_taxonomy(file, &out.datasets).map_err(|e| csv_err(&path, e))?;
    write_tables(dir, tables)?;
    write_json(&p("manifest.json"), manifest)
}

pub const AVERAGES_HEADER: [&str; 6] = ["dataset", "method", "classifier", "metric", "params", "value"];

/// Writes the comparison tables into `dir`.
pub fn write_tables(dir: &Path, t: &Tables) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let p = |name: &str| dir.join(name);
    write_rows(
        &p("pairwise.csv"),
        &t.pairs,
        &[
            "classifier",
            "metric",
            "challenger",
            "reference",
            "n_datasets",
            "wins",
            "losses",
            "ties",
            "statistic",
            "p_value",
            "note",
        ],
    )?;
    write_rows(
        &p("correlations.csv"),
        &t.correlations,
        &["classifier", "metric", "method", "minority_type", "n_datasets", "r", "p_value", "significant"],
    )?;
    write_rows(
        &p("ranks.csv"),
        &t.ranks,
        &[
            "classifier",
            "metric",
            "method",
            "average_rank",
            "p_value",
            "adjusted_p",
            "significant",
            "vs_control",
        ],
    )?;
    write_rows(
        &p("friedman.csv"),
        &t.friedman,
        &["classifier", "metric", "n_methods", "n_datasets", "statistic", "p_value"],
    )?;
    write_rows(
        &p("win_loss_tie.csv"),
        &t.control_wlt,
        &["classifier", "metric", "control", "method", "control_wins", "control_losses", "ties"],
    )?;
    write_json(&p("tables.json"), t)
}

pub fn read_averages(path: &Path) -> CliResult<Vec<AverageRow>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    r.deserialize().map(|row| row.map_err(|e| csv_err(path, e))).collect()
}

#[derive(Debug, Deserialize)]
struct TaxonomyLine {
    dataset: String,
    safe: Option<f64>,
    borderline: Option<f64>,
    rare: Option<f64>,
    outlier: Option<f64>,
}

/// Type shares by dataset from a dataset summary CSV (percentages become fractions).
pub fn read_taxonomy(path: &Path) -> CliResult<BTreeMap<String, TypeProportions>> {
    let mut r = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let mut out = BTreeMap::new();
    for line in r.deserialize::<TaxonomyLine>() {
        let l = line.map_err(|e| csv_err(path, e))?;
        if let (Some(s), Some(b), Some(ra), Some(o)) = (l.safe, l.borderline, l.rare, l.outlier) {
            out.insert(
                l.dataset,
                TypeProportions {
                    safe: s / 100.0,
                    borderline: b / 100.0,
                    rare: ra / 100.0,
                    outlier: o / 100.0,
                },
            );
        }
    }
    Ok(out)
}
