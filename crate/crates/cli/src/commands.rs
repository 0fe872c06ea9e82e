//! Subcommand bodies. Each returns `Ok(())` or an error carrying its exit code.

use std::path::{Path, PathBuf};

use csmoute_core::{write_csv, ClassifierSpec, EvalOptions, Metric, Resampler, Scaling, SmuteOptions};
use log::info;

use crate::benchmark::{run_benchmark, thread_pool, try_dataset_info};
use crate::compare::compare;
use crate::config::{CompareConfig, ExperimentConfig};
use crate::data::{load, CsvClass};
use crate::error::{CliError, CliResult};
use crate::reports::{read_averages, read_taxonomy, write_benchmark, write_json, write_rows, write_tables, write_taxonomy, Manifest};
use crate::resample::resample;
use crate::sweep::{run_sweep, SweepSettings};

pub struct ResampleArgs {
    pub input: PathBuf,
    pub output: PathBuf,
    /// Defaults to the output path with a `.lineage.json` suffix.
    pub lineage: Option<PathBuf>,
    pub method: Resampler,
    pub seed: u64,
    pub smute_originals_only: bool,
    pub csv: CsvClass,
}

pub fn lineage_path(output: &Path) -> PathBuf {
    let mut name = output.file_stem().unwrap_or_default().to_os_string();
    name.push(".lineage.json");
    output.with_file_name(name)
}

pub fn cmd_resample(a: &ResampleArgs) -> CliResult<()> {
    let ds = load(&a.input, &a.csv)?;
    let options = SmuteOptions {
        originals_only: a.smute_originals_only,
    };
    let out = resample(&ds, a.method, a.seed, options)?;
    let text = write_csv(&out.dataset)?;
    let lineage = a.lineage.clone().unwrap_or_else(|| lineage_path(&a.output));
    std::fs::write(&a.output, text).map_err(|e| CliError::io(&a.output, e))?;
    write_json(&lineage, &out.lineage)?;
    info!(
        "{}: {} -> {} minority / {} majority",
        ds.name(),
        a.method,
        out.lineage.output_minority,
        out.lineage.output_majority
    );
    Ok(())
}

/// Writes one dataset summary row per input, in input order, to `output` or stdout.
/// Every input is processed before anything is written.
pub fn cmd_categorize(inputs: &[PathBuf], output: Option<&Path>, csv: &CsvClass) -> CliResult<()> {
    let mut infos = Vec::with_capacity(inputs.len());
    for path in inputs {
        infos.push(try_dataset_info(&load(path, csv)?)?);
    }
    let io_err = |p: &Path, e: csv::Error| match e.into_kind() {
        csv::ErrorKind::Io(io) => CliError::io(p, io),
        other => CliError::Config(format!("{other:?}")),
    };
    match output {
        Some(p) => {
            let file = std::fs::File::create(p).map_err(|e| CliError::io(p, e))?;
            write_taxonomy(file, &infos).map_err(|e| io_err(p, e))
        }
        None => write_taxonomy(std::io::stdout().lock(), &infos).map_err(|e| io_err(Path::new("<stdout>"), e)),
    }
}

pub fn cmd_benchmark(config_path: &Path, output_dir: Option<&Path>, threads: Option<usize>) -> CliResult<()> {
    let mut config = ExperimentConfig::load(config_path)?;
    if let Some(dir) = output_dir {
        config.output_dir = dir.to_path_buf();
    }
    let out = run_benchmark(&config, threads)?;
    let taxonomy = out
        .datasets
        .iter()
        .filter_map(|d| d.proportions.map(|p| (d.name.clone(), p)))
        .collect();
    let tables = compare(&out.averages, &taxonomy, &config.compare);
    let manifest = Manifest {
        software: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        seed: config.seed,
        config_hash: config.hash(),
        datasets: out.datasets.iter().map(|d| d.name.clone()).collect(),
        methods: config.grid.methods.clone(),
        classifiers: config.classifiers.clone(),
        failures: out.failures.len(),
    };
    write_benchmark(&config.output_dir, &out, &tables, &manifest)?;
    info!("results written to {}", config.output_dir.display());
    if out.failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Partial {
            failed: out.failures.len(),
        })
    }
}

pub struct SweepArgs {
    pub inputs: Vec<PathBuf>,
    pub output: PathBuf,
    pub seed: u64,
    pub ratios: Vec<f64>,
    pub k_smote: usize,
    pub k_smute: usize,
    pub classifier: ClassifierSpec,
    pub metrics: Vec<Metric>,
    pub fold_safe_scaling: bool,
    pub smute_originals_only: bool,
    pub threads: Option<usize>,
    pub csv: CsvClass,
}

pub fn cmd_sweep(a: &SweepArgs) -> CliResult<()> {
    if a.ratios.iter().any(|r| !(0.0..=1.0).contains(r)) {
        return Err(CliError::Config("ratios must lie in [0, 1]".into()));
    }
    let mut ratios = a.ratios.clone();
    ratios.sort_by(f64::total_cmp);
    ratios.dedup();
    let datasets = a.inputs.iter().map(|p| load(p, &a.csv)).collect::<CliResult<Vec<_>>>()?;
    let settings = SweepSettings {
        ratios,
        k_smote: a.k_smote,
        k_smute: a.k_smute,
        classifier: a.classifier,
        metrics: a.metrics.clone(),
        options: EvalOptions {
            scaling: if a.fold_safe_scaling {
                Scaling::FoldSafe
            } else {
                Scaling::Global
            },
            smute: SmuteOptions {
                originals_only: a.smute_originals_only,
            },
            ..EvalOptions::new(a.seed)
        },
    };
    let pool = thread_pool(a.threads)?;
    let (rows, failures) = pool.install(|| run_sweep(&datasets, &settings));
    write_rows(&a.output, &rows, &["ratio", "metric", "mean", "ci_low", "ci_high"])?;
    if failures.is_empty() {
        return Ok(());
    }
    let path = a.output.with_extension("failures.csv");
    write_rows(&path, &failures, &["dataset", "method", "classifier", "error"])?;
    Err(CliError::Partial { failed: failures.len() })
}

/// Recomputes the comparison tables from an existing `averages.csv` (and,
/// when given, a dataset summary CSV for the correlations).
pub fn cmd_compare(
    averages: &Path,
    taxonomy: Option<&Path>,
    config: Option<&Path>,
    output_dir: &Path,
) -> CliResult<()> {
    let rows = read_averages(averages)?;
    let tax = match taxonomy {
        Some(p) => read_taxonomy(p)?,
        None => Default::default(),
    };
    let cfg = match config {
        Some(p) => ExperimentConfig::load(p)?.compare,
        None => CompareConfig::default(),
    };
    let tables = compare(&rows, &tax, &cfg);
    write_tables(output_dir, &tables)
}
