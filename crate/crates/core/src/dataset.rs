//! Binary labeled datasets: KEEL and CSV ingestion, categorical encoding and
//! standardization.
//!
//! A [`LabeledDataset`] always names its smaller class "minority". Columns keep
//! their raw text until [`encode_categoricals`] turns them into integer codes;
//! numeric algorithms work on the [`Matrix`] returned by
//! [`LabeledDataset::features`].

use std::collections::HashMap;

use log::{debug, warn};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Minority,
    Majority,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeatureKind {
    Numeric,
    /// Nominal column: raw text before encoding, integer codes after.
    Categorical,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ColumnValues {
    Numeric(Vec<f64>),
    Text(Vec<String>),
}

impl ColumnValues {
    fn len(&self) -> usize {
        match self {
            ColumnValues::Numeric(v) => v.len(),
            ColumnValues::Text(v) => v.len(),
        }
    }

    fn select(&self, rows: &[usize]) -> ColumnValues {
        match self {
            ColumnValues::Numeric(v) => ColumnValues::Numeric(rows.iter().map(|&i| v[i]).collect()),
            ColumnValues::Text(v) => ColumnValues::Text(rows.iter().map(|&i| v[i].clone()).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub kind: FeatureKind,
    pub values: ColumnValues,
}

/// What to do with rows containing a missing value (`?`, `<null>`, empty).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    /// Drop incomplete rows, logging a warning.
    #[default]
    DropRows,
    Error,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    name: String,
    columns: Vec<Column>,
    labels: Vec<Label>,
    minority_class: String,
    majority_class: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    /// Majority count divided by minority count.
    pub imbalance_ratio: f64,
    pub n_samples: usize,
    pub n_features: usize,
}

impl LabeledDataset {
    /// Builds a dataset from columns and raw class values.
    ///
    /// `class_order` breaks frequency ties: the first listed class becomes the
    /// minority. Without it, the class seen first in `classes` wins ties.
    pub fn from_columns(
        name: impl Into<String>,
        columns: Vec<Column>,
        classes: &[String],
        class_order: Option<&[String]>,
    ) -> Result<Self> {
        let n = classes.len();
        for c in &columns {
            if c.values.len() != n {
                return Err(Error::Validation(format!(
                    "column '{}' has {} values but there are {n} labels",
                    c.name,
                    c.values.len()
                )));
            }
        }
        let mut counts: Vec<(String, usize)> = Vec::new();
        for c in classes {
            match counts.iter_mut().find(|(k, _)| k == c) {
                Some((_, cnt)) => *cnt += 1,
                None => counts.push((c.clone(), 1)),
            }
        }
        if counts.len() < 2 {
            return Err(Error::Validation(format!(
                "need two classes, found {}",
                counts.len()
            )));
        }
        if counts.len() > 2 {
            return Err(Error::Validation(format!(
                "only binary datasets are supported, found {} classes",
                counts.len()
            )));
        }
        if let Some(order) = class_order {
            let pos = |k: &str| order.iter().position(|o| o == k).unwrap_or(usize::MAX);
            counts.sort_by_key(|(k, _)| pos(k));
        }
        // stable: equal counts keep declaration (or appearance) order
        counts.sort_by_key(|(_, cnt)| *cnt);
        let minority_class = counts[0].0.clone();
        let majority_class = counts[1].0.clone();
        let labels = classes
            .iter()
            .map(|c| {
                if *c == minority_class {
                    Label::Minority
                } else {
                    Label::Majority
                }
            })
            .collect();
        Ok(Self {
            name: name.into(),
            columns,
            labels,
            minority_class,
            majority_class,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn feature_names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn feature_kinds(&self) -> Vec<FeatureKind> {
        self.columns.iter().map(|c| c.kind).collect()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn minority_class(&self) -> &str {
        &self.minority_class
    }

    pub fn majority_class(&self) -> &str {
        &self.majority_class
    }

    pub fn class_name(&self, label: Label) -> &str {
        match label {
            Label::Minority => &self.minority_class,
            Label::Majority => &self.majority_class,
        }
    }

    pub fn n_samples(&self) -> usize {
        self.labels.len()
    }

    pub fn n_features(&self) -> usize {
        self.columns.len()
    }

    pub fn minority_count(&self) -> usize {
        self.labels.iter().filter(|l| **l == Label::Minority).count()
    }

    pub fn majority_count(&self) -> usize {
        self.n_samples() - self.minority_count()
    }

    pub fn summary(&self) -> DatasetSummary {
        DatasetSummary {
            imbalance_ratio: self.majority_count() as f64 / self.minority_count() as f64,
            n_samples: self.n_samples(),
            n_features: self.n_features(),
        }
    }

    /// True once every column holds numbers (after encoding, if needed).
    pub fn is_numeric(&self) -> bool {
        self.columns
            .iter()
            .all(|c| matches!(c.values, ColumnValues::Numeric(_)))
    }

    /// Feature matrix, rows in dataset order. Fails while any column is
    /// still unencoded text.
    pub fn features(&self) -> Result<Matrix> {
        let n = self.n_samples();
        let d = self.n_features();
        let mut data = vec![0.0; n * d];
        for (j, col) in self.columns.iter().enumerate() {
            let ColumnValues::Numeric(v) = &col.values else {
                return Err(Error::Argument(format!(
                    "column '{}' is categorical text; run encode_categoricals first",
                    col.name
                )));
            };
            for (i, x) in v.iter().enumerate() {
                data[i * d + j] = *x;
            }
        }
        Matrix::from_vec(d, data)
    }

    /// Row indices per class, each in dataset order.
    pub fn class_indices(&self) -> (Vec<usize>, Vec<usize>) {
        let mut minority = Vec::new();
        let mut majority = Vec::new();
        for (i, l) in self.labels.iter().enumerate() {
            match l {
                Label::Minority => minority.push(i),
                Label::Majority => majority.push(i),
            }
        }
        (majority, minority)
    }

    /// Dataset restricted to `rows` (in that order). The class naming is kept
    /// even if the subset's counts flip.
    pub fn subset(&self, rows: &[usize]) -> LabeledDataset {
        LabeledDataset {
            name: self.name.clone(),
            columns: self
                .columns
                .iter()
                .map(|c| Column {
                    name: c.name.clone(),
                    kind: c.kind,
                    values: c.values.select(rows),
                })
                .collect(),
            labels: rows.iter().map(|&i| self.labels[i]).collect(),
            minority_class: self.minority_class.clone(),
            majority_class: self.majority_class.clone(),
        }
    }

    /// Replaces the numeric content with `features` (same shape), keeping
    /// names, kinds and labels.
    pub fn with_features(&self, features: &Matrix) -> Result<LabeledDataset> {
        if features.n_rows() != self.n_samples() || features.n_cols() != self.n_features() {
            return Err(Error::Argument("feature matrix shape mismatch".into()));
        }
        let columns = self
            .columns
            .iter()
            .enumerate()
            .map(|(j, c)| Column {
                name: c.name.clone(),
                kind: c.kind,
                values: ColumnValues::Numeric(features.column(j)),
            })
            .collect();
        Ok(LabeledDataset {
            columns,
            ..self.clone()
        })
    }

    /// Builds a numeric dataset from a matrix and labels. `class_names` are
    /// (minority, majority).
    pub fn from_matrix(
        name: impl Into<String>,
        feature_names: Vec<String>,
        features: &Matrix,
        labels: Vec<Label>,
        class_names: (&str, &str),
    ) -> Result<LabeledDataset> {
        if feature_names.len() != features.n_cols() {
            return Err(Error::Argument("feature name count mismatch".into()));
        }
        let classes: Vec<String> = labels
            .iter()
            .map(|l| match l {
                Label::Minority => class_names.0.to_string(),
                Label::Majority => class_names.1.to_string(),
            })
            .collect();
        let columns = feature_names
            .into_iter()
            .enumerate()
            .map(|(j, name)| Column {
                name,
                kind: FeatureKind::Numeric,
                values: ColumnValues::Numeric(features.column(j)),
            })
            .collect();
        let order = [class_names.0.to_string(), class_names.1.to_string()];
        LabeledDataset::from_columns(name, columns, &classes, Some(&order))
    }
}

fn is_missing(v: &str) -> bool {
    v.is_empty() || v == "?" || v.eq_ignore_ascii_case("<null>")
}

fn unquote(s: &str) -> &str {
    let s = s.trim();
    if s.len() >= 2
        && ((s.starts_with('\'') && s.ends_with('\'')) || (s.starts_with('"') && s.ends_with('"')))
    {
        &s[1..s.len() - 1]
    } else {
        s
    }
}

#[derive(Debug)]
struct KeelAttribute {
    name: String,
    /// Declared nominal values; `None` for numeric attributes.
    nominal: Option<Vec<String>>,
}

fn parse_attribute(rest: &str, line: usize) -> Result<KeelAttribute> {
    let rest = rest.trim();
    if rest.is_empty() {
        return Err(Error::parse(line, "@attribute without a name"));
    }
    let (name, spec) = if let Some(q) = rest.chars().next().filter(|c| *c == '\'' || *c == '"') {
        let end = rest[1..]
            .find(q)
            .ok_or_else(|| Error::parse(line, "unterminated quoted attribute name"))?;
        (&rest[1..=end], rest[end + 2..].trim())
    } else {
        let brace = rest.find('{');
        let ws = rest.find(char::is_whitespace);
        let cut = match (brace, ws) {
            (Some(b), Some(w)) => b.min(w),
            (Some(b), None) => b,
            (None, Some(w)) => w,
            (None, None) => return Err(Error::parse(line, "@attribute without a type")),
        };
        (&rest[..cut], rest[cut..].trim())
    };
    if name.is_empty() {
        return Err(Error::parse(line, "@attribute without a name"));
    }
    if let Some(open) = spec.strip_prefix('{') {
        let close = open
            .rfind('}')
            .ok_or_else(|| Error::parse(line, format!("unterminated value set for '{name}'")))?;
        let values: Vec<String> = open[..close]
            .split(',')
            .map(|v| unquote(v).to_string())
            .filter(|v| !v.is_empty())
            .collect();
        if values.is_empty() {
            return Err(Error::parse(line, format!("empty value set for '{name}'")));
        }
        return Ok(KeelAttribute {
            name: name.to_string(),
            nominal: Some(values),
        });
    }
    let ty = spec
        .split(|c: char| c.is_whitespace() || c == '[')
        .next()
        .unwrap_or("")
        .to_ascii_lowercase();
    match ty.as_str() {
        "real" | "integer" | "numeric" => Ok(KeelAttribute {
            name: name.to_string(),
            nominal: None,
        }),
        "" => Err(Error::parse(line, format!("attribute '{name}' has no type"))),
        other => Err(Error::parse(
            line,
            format!("attribute '{name}' has unsupported type '{other}'"),
        )),
    }
}

/// Parses a KEEL `.dat` file with the default [`MissingPolicy`].
pub fn parse_keel(text: &str) -> Result<LabeledDataset> {
    parse_keel_with(text, MissingPolicy::default())
}

pub fn parse_keel_with(text: &str, missing: MissingPolicy) -> Result<LabeledDataset> {
    let mut relation: Option<String> = None;
    let mut attributes: Vec<KeelAttribute> = Vec::new();
    let mut output_name: Option<String> = None;
    let mut data_start: Option<usize> = None;

    let lines: Vec<&str> = text.lines().collect();
    for (idx, raw) in lines.iter().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if !line.starts_with('@') {
            return Err(Error::parse(
                line_no,
                "expected a header directive before @data",
            ));
        }
        let (directive, rest) = match line.find(char::is_whitespace) {
            Some(p) => (&line[..p], line[p..].trim()),
            None => (line, ""),
        };
        match directive.to_ascii_lowercase().as_str() {
            "@relation" => {
                if rest.is_empty() {
                    return Err(Error::parse(line_no, "@relation without a name"));
                }
                relation = Some(unquote(rest).to_string());
            }
            "@attribute" => attributes.push(parse_attribute(rest, line_no)?),
            "@inputs" | "@input" => {}
            "@outputs" | "@output" => {
                let names: Vec<&str> = rest.split(',').map(unquote).filter(|s| !s.is_empty()).collect();
                if names.len() != 1 {
                    return Err(Error::parse(line_no, "exactly one output attribute is required"));
                }
                output_name = Some(names[0].to_string());
            }
            "@data" => {
                data_start = Some(idx + 1);
                break;
            }
            other => {
                return Err(Error::parse(line_no, format!("unknown directive '{other}'")));
            }
        }
    }
    let data_start = data_start.ok_or_else(|| Error::parse(lines.len().max(1), "missing @data section"))?;
    if attributes.len() < 2 {
        return Err(Error::parse(
            data_start.max(1),
            "need at least one input attribute and a class attribute",
        ));
    }
    let class_idx = match &output_name {
        Some(name) => attributes
            .iter()
            .position(|a| a.name == *name)
            .ok_or_else(|| Error::parse(data_start, format!("output attribute '{name}' is not declared")))?,
        None => attributes.len() - 1,
    };
    let class_values = attributes[class_idx]
        .nominal
        .clone()
        .ok_or_else(|| Error::parse(data_start, "class attribute must be nominal"))?;

    let n_attr = attributes.len();
    let mut numeric: Vec<Vec<f64>> = vec![Vec::new(); n_attr];
    let mut text_cols: Vec<Vec<String>> = vec![Vec::new(); n_attr];
    let mut classes = Vec::new();
    let mut dropped = 0usize;
    let mut row_no = 0usize;
    for (offset, raw) in lines[data_start..].iter().enumerate() {
        let line_no = data_start + offset + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        row_no += 1;
        let fields: Vec<&str> = line.split(',').map(unquote).collect();
        if fields.len() != n_attr {
            return Err(Error::parse(
                line_no,
                format!("data row {row_no} has {} fields, expected {n_attr}", fields.len()),
            ));
        }
        if fields.iter().any(|f| is_missing(f)) {
            match missing {
                MissingPolicy::DropRows => {
                    dropped += 1;
                    continue;
                }
                MissingPolicy::Error => {
                    return Err(Error::parse(line_no, format!("data row {row_no} has a missing value")));
                }
            }
        }
        let class = fields[class_idx];
        if !class_values.iter().any(|c| c == class) {
            return Err(Error::parse(
                line_no,
                format!("data row {row_no} has undeclared class label '{class}'"),
            ));
        }
        for (j, (attr, field)) in attributes.iter().zip(&fields).enumerate() {
            if j == class_idx {
                continue;
            }
            match &attr.nominal {
                Some(allowed) => {
                    if !allowed.iter().any(|a| a == field) {
                        return Err(Error::parse(
                            line_no,
                            format!("data row {row_no}: '{field}' is not a declared value of '{}'", attr.name),
                        ));
                    }
                    text_cols[j].push(field.to_string());
                }
                None => {
                    let v: f64 = field.parse().map_err(|_| {
                        Error::parse(
                            line_no,
                            format!("data row {row_no}: '{field}' is not a number for '{}'", attr.name),
                        )
                    })?;
                    if !v.is_finite() {
                        return Err(Error::parse(line_no, format!("data row {row_no}: non-finite value")));
                    }
                    numeric[j].push(v);
                }
            }
        }
        classes.push(class.to_string());
    }
    if dropped > 0 {
        warn!("dropped {dropped} row(s) with missing values");
    }
    let columns = attributes
        .into_iter()
        .enumerate()
        .filter(|(j, _)| *j != class_idx)
        .map(|(j, a)| {
            let (kind, values) = match a.nominal {
                Some(_) => (FeatureKind::Categorical, ColumnValues::Text(std::mem::take(&mut text_cols[j]))),
                None => (FeatureKind::Numeric, ColumnValues::Numeric(std::mem::take(&mut numeric[j]))),
            };
            Column {
                name: a.name,
                kind,
                values,
            }
        })
        .collect();
    LabeledDataset::from_columns(
        relation.unwrap_or_else(|| "unnamed".to_string()),
        columns,
        &classes,
        Some(&class_values),
    )
}

/// Parses CSV with a header row. Columns whose every value parses as a
/// number are numeric; the rest are categorical text.
pub fn parse_csv(text: &str, class_column: &str, minority_label: &str) -> Result<LabeledDataset> {
    parse_csv_with(text, class_column, minority_label, MissingPolicy::default())
}

pub fn parse_csv_with(
    text: &str,
    class_column: &str,
    minority_label: &str,
    missing: MissingPolicy,
) -> Result<LabeledDataset> {
    if text.trim().is_empty() {
        return Err(Error::Validation("empty CSV input".into()));
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| Error::parse(1, e.to_string()))?
        .iter()
        .map(str::to_string)
        .collect();
    let class_idx = header
        .iter()
        .position(|h| h == class_column)
        .ok_or_else(|| Error::Validation(format!("class column '{class_column}' not found")))?;
    let mut raw_rows: Vec<Vec<String>> = Vec::new();
    let mut dropped = 0usize;
    for (i, rec) in reader.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::parse(line, e.to_string()))?;
        if rec.len() != header.len() {
            return Err(Error::parse(
                line,
                format!("row has {} fields, expected {}", rec.len(), header.len()),
            ));
        }
        if rec.iter().any(is_missing) {
            match missing {
                MissingPolicy::DropRows => {
                    dropped += 1;
                    continue;
                }
                MissingPolicy::Error => return Err(Error::parse(line, "row has a missing value")),
            }
        }
        raw_rows.push(rec.iter().map(str::to_string).collect());
    }
    if raw_rows.is_empty() {
        return Err(Error::Validation("CSV has no data rows".into()));
    }
    if dropped > 0 {
        warn!("dropped {dropped} row(s) with missing values");
    }
    let classes: Vec<String> = raw_rows.iter().map(|r| r[class_idx].clone()).collect();
    if !classes.iter().any(|c| c == minority_label) {
        return Err(Error::Validation(format!(
            "minority label '{minority_label}' does not occur in column '{class_column}'"
        )));
    }
    let mut columns = Vec::new();
    for (j, name) in header.iter().enumerate() {
        if j == class_idx {
            continue;
        }
        let parsed: Option<Vec<f64>> = raw_rows
            .iter()
            .map(|r| r[j].parse::<f64>().ok().filter(|v| v.is_finite()))
            .collect();
        let (kind, values) = match parsed {
            Some(v) => (FeatureKind::Numeric, ColumnValues::Numeric(v)),
            None => (
                FeatureKind::Categorical,
                ColumnValues::Text(raw_rows.iter().map(|r| r[j].clone()).collect()),
            ),
        };
        columns.push(Column {
            name: name.clone(),
            kind,
            values,
        });
    }
    let other: Vec<String> = classes
        .iter()
        .filter(|c| *c != minority_label)
        .take(1)
        .cloned()
        .collect();
    let order: Vec<String> = std::iter::once(minority_label.to_string()).chain(other).collect();
    let ds = LabeledDataset::from_columns("csv", columns, &classes, Some(&order))?;
    if ds.minority_class() != minority_label {
        warn!(
            "'{minority_label}' is the larger class; '{}' is treated as minority",
            ds.minority_class()
        );
    }
    Ok(ds)
}

fn format_number(v: f64) -> String {
    // Display for f64 is the shortest string that round-trips
    format!("{v}")
}

/// Emits the dataset as CSV with a header row and a trailing `class` column
/// holding the original class names.
pub fn write_csv(ds: &LabeledDataset) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = ds.feature_names();
    header.push("class");
    writer.write_record(&header).map_err(csv_io)?;
    for i in 0..ds.n_samples() {
        let mut record: Vec<String> = ds
            .columns
            .iter()
            .map(|c| match &c.values {
                ColumnValues::Numeric(v) => format_number(v[i]),
                ColumnValues::Text(v) => v[i].clone(),
            })
            .collect();
        record.push(ds.class_name(ds.labels[i]).to_string());
        writer.write_record(&record).map_err(csv_io)?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Validation(e.to_string()))
}

fn csv_io(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e.to_string()))
}

/// Replaces every categorical text column with integer codes
/// `0..cardinality` in order of first appearance down the rows.
pub fn encode_categoricals(ds: &LabeledDataset) -> LabeledDataset {
    let columns = ds
        .columns
        .iter()
        .map(|c| match &c.values {
            ColumnValues::Numeric(_) => c.clone(),
            ColumnValues::Text(values) => {
                let mut codes: HashMap<&str, usize> = HashMap::new();
                let encoded = values
                    .iter()
                    .map(|v| {
                        let next = codes.len();
                        *codes.entry(v.as_str()).or_insert(next) as f64
                    })
                    .collect();
                Column {
                    name: c.name.clone(),
                    kind: FeatureKind::Categorical,
                    values: ColumnValues::Numeric(encoded),
                }
            }
        })
        .collect();
    LabeledDataset {
        columns,
        ..ds.clone()
    }
}

/// Fitted per-column standardization `(x - mean) / scale`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scaler {
    pub mean: Vec<f64>,
    /// Population standard deviation, or 1 for zero-variance columns.
    pub scale: Vec<f64>,
    /// Columns whose variance was zero when fitted.
    pub constant_columns: Vec<usize>,
}

impl Scaler {
    pub fn fit(x: &Matrix) -> Scaler {
        let n = x.n_rows() as f64;
        let d = x.n_cols();
        let mut mean = vec![0.0; d];
        for row in x.rows() {
            for (m, v) in mean.iter_mut().zip(row) {
                *m += v;
            }
        }
        for m in &mut mean {
            *m /= n;
        }
        let mut var = vec![0.0; d];
        for row in x.rows() {
            for ((s, v), m) in var.iter_mut().zip(row).zip(&mean) {
                *s += (v - m) * (v - m);
            }
        }
        let mut constant_columns = Vec::new();
        let scale = var
            .iter()
            .enumerate()
            .map(|(j, s)| {
                let sd = (s / n).sqrt();
                // relative test: a constant column can pick up rounding noise in the mean
                if sd <= 1e-12 * mean[j].abs().max(1.0) || !sd.is_finite() {
                    constant_columns.push(j);
                    1.0
                } else {
                    sd
                }
            })
            .collect();
        Scaler {
            mean,
            scale,
            constant_columns,
        }
    }

    pub fn transform(&self, x: &Matrix) -> Matrix {
        let mut out = x.clone();
        for i in 0..out.n_rows() {
            for (j, v) in out.row_mut(i).iter_mut().enumerate() {
                *v = (*v - self.mean[j]) / self.scale[j];
            }
        }
        out
    }
}

/// Standardizes every column to mean 0 and unit population variance.
/// Zero-variance columns get scale 1 (so they become all zero) and a warning.
pub fn standardize(ds: &LabeledDataset) -> Result<(LabeledDataset, Scaler)> {
    let x = ds.features()?;
    let scaler = Scaler::fit(&x);
    for &j in &scaler.constant_columns {
        debug!(
            "{}: column '{}' has zero variance; scaled by 1",
            ds.name(),
            ds.columns[j].name
        );
    }
    let out = ds.with_features(&scaler.transform(&x))?;
    Ok((out, scaler))
}
