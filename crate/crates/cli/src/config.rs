//! Experiment configuration (TOML).

use std::path::{Path, PathBuf};

use csmoute_core::evaluation::{EvalOptions, LogisticParams, Scaling};
use csmoute_core::{ClassifierSpec, Metric, Resampler, SmuteOptions};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::data::{list_dir, CsvClass};
use crate::error::{CliError, CliResult};

pub const METHODS: [&str; 6] = ["none", "rus", "ros", "smote", "smute", "csmoute"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Required: no default is taken from the clock.
    pub seed: u64,
    #[serde(default)]
    pub datasets: Vec<PathBuf>,
    /// Every `.dat`/`.csv` file in this directory, sorted by name, is added
    /// after `datasets`.
    #[serde(default)]
    pub dataset_dir: Option<PathBuf>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default = "default_classifiers")]
    pub classifiers: Vec<String>,
    #[serde(default = "default_metrics")]
    pub metrics: Vec<Metric>,
    #[serde(default)]
    pub flags: Flags,
    #[serde(default)]
    pub grid: Grid,
    #[serde(default)]
    pub compare: CompareConfig,
    #[serde(default)]
    pub csv: CsvClass,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub fold_safe_scaling: bool,
    #[serde(default)]
    pub smute_originals_only: bool,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default = "default_knn_k")]
    pub knn_k: usize,
}

impl Default for Flags {
    fn default() -> Self {
        Self {
            fold_safe_scaling: false,
            smute_originals_only: false,
            threshold: default_threshold(),
            knn_k: default_knn_k(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default = "default_methods")]
    pub methods: Vec<String>,
    #[serde(default = "default_k_smote")]
    pub k_smote: Vec<usize>,
    #[serde(default = "default_k_smute")]
    pub k_smute: Vec<usize>,
    #[serde(default = "default_ratio")]
    pub ratio: Vec<f64>,
}

impl Default for Grid {
    fn default() -> Self {
        Self {
            methods: default_methods(),
            k_smote: default_k_smote(),
            k_smute: default_k_smute(),
            ratio: default_ratio(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareConfig {
    /// Method the rank table is tested against.
    #[serde(default = "default_control")]
    pub control: String,
    /// Level for the Holm-adjusted rank comparisons.
    #[serde(default = "default_rank_alpha")]
    pub rank_alpha: f64,
    /// Level for the correlation table.
    #[serde(default = "default_correlation_alpha")]
    pub correlation_alpha: f64,
    /// `[challenger, reference]` pairs for the win/loss/tie + Wilcoxon table.
    #[serde(default = "default_pairs")]
    pub pairs: Vec<[String; 2]>,
    #[serde(default)]
    pub tie_tolerance: f64,
}

impl Default for CompareConfig {
    fn default() -> Self {
        Self {
            control: default_control(),
            rank_alpha: default_rank_alpha(),
            correlation_alpha: default_correlation_alpha(),
            pairs: default_pairs(),
            tie_tolerance: 0.0,
        }
    }
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("results")
}
fn default_classifiers() -> Vec<String> {
    vec!["lr".into(), "knn".into()]
}
fn default_metrics() -> Vec<Metric> {
    Metric::ALL.to_vec()
}
fn default_threshold() -> f64 {
    0.5
}
fn default_knn_k() -> usize {
    5
}
fn default_methods() -> Vec<String> {
    METHODS.iter().map(|s| s.to_string()).collect()
}
fn default_k_smote() -> Vec<usize> {
    vec![1, 3, 5, 7]
}
fn default_k_smute() -> Vec<usize> {
    vec![1, 3, 5]
}
fn default_ratio() -> Vec<f64> {
    (0..=5).map(|i| i as f64 / 5.0).collect()
}
fn default_control() -> String {
    "csmoute".into()
}
fn default_rank_alpha() -> f64 {
    0.10
}
fn default_correlation_alpha() -> f64 {
    0.05
}
fn default_pairs() -> Vec<[String; 2]> {
    vec![["smute".into(), "rus".into()]]
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Loads a config file; relative paths inside it are resolved against the
    /// file's directory.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let mut cfg = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let resolve = |p: &Path| if p.is_absolute() { p.to_path_buf() } else { base.join(p) };
        cfg.datasets = cfg.datasets.iter().map(|p| resolve(p)).collect();
        cfg.dataset_dir = cfg.dataset_dir.as_deref().map(resolve);
        cfg.output_dir = resolve(&cfg.output_dir);
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |m: String| Err(CliError::Config(m));
        if self.datasets.is_empty() && self.dataset_dir.is_none() {
            return bad("no datasets: set `datasets` or `dataset_dir`".into());
        }
        if self.classifiers.is_empty() || self.metrics.is_empty() || self.grid.methods.is_empty() {
            return bad("classifiers, metrics and grid.methods must be non-empty".into());
        }
        if self.grid.k_smote.is_empty() || self.grid.k_smute.is_empty() || self.grid.ratio.is_empty() {
            return bad("grid.k_smote, grid.k_smute and grid.ratio must be non-empty".into());
        }
        if self.grid.k_smote.iter().chain(&self.grid.k_smute).any(|k| *k == 0) {
            return bad("neighbor counts must be at least 1".into());
        }
        if self.grid.ratio.iter().any(|r| !(0.0..=1.0).contains(r)) {
            return bad("grid.ratio values must lie in [0, 1]".into());
        }
        for m in &self.grid.methods {
            if !METHODS.contains(&m.as_str()) {
                return bad(format!("unknown method '{m}' (known: {})", METHODS.join(", ")));
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for m in &self.grid.methods {
            if !seen.insert(m) {
                return bad(format!("method '{m}' listed twice"));
            }
        }
        for c in &self.classifiers {
            parse_classifier(c, self.flags.knn_k)?;
        }
        if self.flags.knn_k == 0 {
            return bad("flags.knn_k must be at least 1".into());
        }
        if !(self.flags.threshold > 0.0 && self.flags.threshold < 1.0) {
            return bad("flags.threshold must lie in (0, 1)".into());
        }
        let alphas = [self.compare.rank_alpha, self.compare.correlation_alpha];
        if alphas.iter().any(|a| !(*a > 0.0 && *a < 1.0)) {
            return bad("alpha levels must lie in (0, 1)".into());
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form of the parsed config: comments,
    /// whitespace and key order in the file do not affect it. `output_dir`
    /// is left out since it does not change results.
    pub fn hash(&self) -> String {
        let mut value = serde_json::to_value(self).expect("config serializes");
        if let Some(obj) = value.as_object_mut() {
            obj.remove("output_dir");
        }
        hex(&Sha256::digest(value.to_string().as_bytes()))
    }

    /// Dataset files in run order: `datasets` first, then `dataset_dir`.
    pub fn dataset_paths(&self) -> CliResult<Vec<PathBuf>> {
        let mut out = self.datasets.clone();
        if let Some(dir) = &self.dataset_dir {
            out.extend(list_dir(dir)?);
        }
        if out.is_empty() {
            return Err(CliError::Config("no dataset files found".into()));
        }
        Ok(out)
    }

    pub fn classifier_specs(&self) -> CliResult<Vec<ClassifierSpec>> {
        self.classifiers.iter().map(|c| parse_classifier(c, self.flags.knn_k)).collect()
    }

    pub fn eval_options(&self) -> EvalOptions {
        EvalOptions {
            seed: self.seed,
            scaling: if self.flags.fold_safe_scaling {
                Scaling::FoldSafe
            } else {
                Scaling::Global
            },
            threshold: self.flags.threshold,
            smute: SmuteOptions {
                originals_only: self.flags.smute_originals_only,
            },
        }
    }

    /// Parameter candidates for one method family, in grid order.
    pub fn candidates(&self, method: &str) -> Vec<Resampler> {
        let g = &self.grid;
        match method {
            "none" => vec![Resampler::None],
            "rus" => vec![Resampler::Rus],
            "ros" => vec![Resampler::Ros],
            "smote" => g.k_smote.iter().map(|&k| Resampler::Smote { k }).collect(),
            "smute" => g.k_smute.iter().map(|&k| Resampler::Smute { k }).collect(),
            "csmoute" => {
                let mut out = Vec::new();
                for &k_smote in &g.k_smote {
                    for &k_smute in &g.k_smute {
                        for &ratio in &g.ratio {
                            out.push(Resampler::Csmoute { k_smote, k_smute, ratio });
                        }
                    }
                }
                out
            }
            _ => Vec::new(),
        }
    }
}

pub fn parse_classifier(name: &str, knn_k: usize) -> CliResult<ClassifierSpec> {
    match name {
        "lr" | "logistic" => Ok(ClassifierSpec::Logistic(LogisticParams::default())),
        "knn" => Ok(ClassifierSpec::Knn { k: knn_k }),
        other => Err(CliError::Config(format!("unknown classifier '{other}' (known: lr, knn)"))),
    }
}

pub fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
