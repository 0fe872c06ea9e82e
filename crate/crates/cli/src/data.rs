//! Dataset loading by file extension.

use std::path::{Path, PathBuf};

use csmoute_core::{encode_categoricals, parse_csv, parse_keel, LabeledDataset};

use crate::error::{CliError, CliResult};

/// How to read the class of a CSV file. KEEL files declare their own.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CsvClass {
    #[serde(default = "default_class_column")]
    pub class_column: String,
    pub minority_label: Option<String>,
}

fn default_class_column() -> String {
    "class".into()
}

impl Default for CsvClass {
    fn default() -> Self {
        Self::new(None, None)
    }
}

impl CsvClass {
    pub fn new(class_column: Option<String>, minority_label: Option<String>) -> Self {
        Self {
            class_column: class_column.unwrap_or_else(default_class_column),
            minority_label,
        }
    }
}

/// Dataset name: the file stem.
pub fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// Reads a `.dat` (KEEL) or `.csv` file. Categorical columns stay as text.
pub fn load_raw(path: &Path, csv: &CsvClass) -> CliResult<LabeledDataset> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
    let ds = match ext.as_str() {
        "csv" => {
            let minority = match &csv.minority_label {
                Some(m) => m.clone(),
                None => smaller_class(&text, &csv.class_column)?,
            };
            parse_csv(&text, &csv.class_column, &minority)?
        }
        _ => parse_keel(&text)?,
    };
    Ok(ds.with_name(dataset_name(path)))
}

/// Reads a dataset and integer-encodes its categorical columns.
pub fn load(path: &Path, csv: &CsvClass) -> CliResult<LabeledDataset> {
    Ok(encode_categoricals(&load_raw(path, csv)?))
}

/// The less frequent value of `class_column`; ties go to the first seen.
fn smaller_class(text: &str, class_column: &str) -> CliResult<String> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| CliError::Core(csmoute_core::Error::Parse { line: 1, message: e.to_string() }))?
        .clone();
    let idx = header
        .iter()
        .position(|h| h == class_column)
        .ok_or_else(|| CliError::Config(format!("class column '{class_column}' not found")))?;
    let mut counts: Vec<(String, usize)> = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| {
            CliError::Core(csmoute_core::Error::Parse {
                line: i + 2,
                message: e.to_string(),
            })
        })?;
        let Some(v) = rec.get(idx) else { continue };
        match counts.iter_mut().find(|(k, _)| k == v) {
            Some((_, c)) => *c += 1,
            None => counts.push((v.to_string(), 1)),
        }
    }
    counts
        .into_iter()
        .enumerate()
        .min_by_key(|(i, (_, c))| (*c, *i))
        .map(|(_, (k, _))| k)
        .ok_or_else(|| CliError::Core(csmoute_core::Error::Validation("CSV has no data rows".into())))
}

/// Files in `dir` with a `.dat` or `.csv` extension, sorted by name.
pub fn list_dir(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| CliError::io(dir, e))? {
        let path = entry.map_err(|e| CliError::io(dir, e))?.path();
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
        if path.is_file() && (ext == "dat" || ext == "csv") {
            out.push(path);
        }
    }
    out.sort();
    Ok(out)
}
