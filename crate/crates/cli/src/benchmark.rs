//! Nested benchmark: per dataset and method, an inner stratified 2-fold split
//! picks grid parameters for each (classifier, metric); the pick is then
//! scored by outer 5×2 cross-validation.

use std::collections::BTreeMap;

use csmoute_core::evaluation::{
    evaluate_plan, make_fold_plan, plan_for_labels, prepare_features, run_split, EvalOptions, FoldPlan,
};
use csmoute_core::taxonomy::TypeProportions;
use csmoute_core::{categorize, standardize, ClassifierSpec, LabeledDataset, Metric, Resampler, StreamRng};
use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::data::load;
use crate::error::CliResult;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldRow {
    pub dataset: String,
    pub method: String,
    pub classifier: String,
    pub metric: Metric,
    pub params: String,
    pub repetition: usize,
    pub fold: usize,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AverageRow {
    pub dataset: String,
    pub method: String,
    pub classifier: String,
    pub metric: Metric,
    pub params: String,
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub dataset: String,
    pub method: String,
    pub classifier: String,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetInfo {
    pub name: String,
    pub imbalance_ratio: f64,
    pub samples: usize,
    pub features: usize,
    /// `None` when the taxonomy could not be computed.
    pub proportions: Option<TypeProportions>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkOutput {
    pub folds: Vec<FoldRow>,
    pub averages: Vec<AverageRow>,
    pub failures: Vec<Failure>,
    pub datasets: Vec<DatasetInfo>,
}

/// Seed of the inner selection split for a dataset: `(seed, dataset, "inner")`.
pub fn inner_seed(seed: u64, dataset: &str) -> u64 {
    StreamRng::derive(seed, &[dataset, "inner"]).next_u64()
}

/// Summary and taxonomy of a dataset; the taxonomy runs on standardized
/// features.
pub fn try_dataset_info(ds: &LabeledDataset) -> csmoute_core::Result<DatasetInfo> {
    let s = ds.summary();
    let (z, scaler) = standardize(ds)?;
    if !scaler.constant_columns.is_empty() {
        warn!("{}: {} constant column(s) left unscaled", ds.name(), scaler.constant_columns.len());
    }
    let report = categorize(&z)?;
    Ok(DatasetInfo {
        name: ds.name().to_string(),
        imbalance_ratio: s.imbalance_ratio,
        samples: s.n_samples,
        features: s.n_features,
        proportions: Some(report.proportions),
    })
}

/// Like [`try_dataset_info`], leaving the taxonomy empty when it fails.
pub fn dataset_info(ds: &LabeledDataset) -> DatasetInfo {
    try_dataset_info(ds).unwrap_or_else(|e| {
        warn!("{}: no taxonomy: {e}", ds.name());
        let s = ds.summary();
        DatasetInfo {
            name: ds.name().to_string(),
            imbalance_ratio: s.imbalance_ratio,
            samples: s.n_samples,
            features: s.n_features,
            proportions: None,
        }
    })
}

/// Picks, for each classifier and metric, the candidate with the best mean
/// inner-split score. Earlier candidates win ties. `None` where every
/// candidate failed or the metric was never defined.
fn select(
    ds: &LabeledDataset,
    candidates: &[Resampler],
    specs: &[ClassifierSpec],
    metrics: &[Metric],
    options: &EvalOptions,
) -> CliResult<Vec<Vec<Option<usize>>>> {
    let mut best: Vec<Vec<Option<(usize, f64)>>> = vec![vec![None; metrics.len()]; specs.len()];
    if candidates.len() == 1 {
        return Ok(vec![vec![Some(0); metrics.len()]; specs.len()]);
    }
    let seed = inner_seed(options.seed, ds.name());
    let inner = plan_for_labels(ds.labels(), seed, 1)?;
    let inner_options = EvalOptions { seed, ..*options };
    let x = prepare_features(ds, options.scaling)?;
    let splits = inner.splits();
    for (ci, cand) in candidates.iter().enumerate() {
        let mut sums = vec![vec![(0.0, 0usize); metrics.len()]; specs.len()];
        let mut failed = false;
        for split in &splits {
            match run_split(&x, ds.labels(), split, cand, specs, &inner_options) {
                Ok(reports) => {
                    for (s, r) in reports.iter().enumerate() {
                        for (m, metric) in metrics.iter().enumerate() {
                            if let Some(v) = r.metrics.get(*metric) {
                                sums[s][m].0 += v;
                                sums[s][m].1 += 1;
                            }
                        }
                    }
                }
                Err(e) => {
                    warn!("{}: candidate {cand} skipped in selection: {e}", ds.name());
                    failed = true;
                    break;
                }
            }
        }
        if failed {
            continue;
        }
        for s in 0..specs.len() {
            for m in 0..metrics.len() {
                let (sum, n) = sums[s][m];
                if n == 0 {
                    continue;
                }
                let score = sum / n as f64;
                if best[s][m].is_none_or(|(_, b)| score > b) {
                    best[s][m] = Some((ci, score));
                }
            }
        }
    }
    Ok(best
        .into_iter()
        .map(|row| row.into_iter().map(|b| b.map(|(i, _)| i)).collect())
        .collect())
}

struct UnitOutput {
    folds: Vec<FoldRow>,
    averages: Vec<AverageRow>,
    failures: Vec<Failure>,
}

fn run_unit(
    ds: &LabeledDataset,
    outer: &FoldPlan,
    method: &str,
    config: &ExperimentConfig,
    specs: &[ClassifierSpec],
) -> UnitOutput {
    let mut out = UnitOutput {
        folds: Vec::new(),
        averages: Vec::new(),
        failures: Vec::new(),
    };
    let options = config.eval_options();
    let metrics = &config.metrics;
    let candidates = config.candidates(method);
    let fail_all = |out: &mut UnitOutput, s: usize, msg: String| {
        out.failures.push(Failure {
            dataset: ds.name().to_string(),
            method: method.to_string(),
            classifier: specs[s].short_name().to_string(),
            error: msg,
        });
    };
    let chosen = match select(ds, &candidates, specs, metrics, &options) {
        Ok(c) => c,
        Err(e) => {
            for s in 0..specs.len() {
                fail_all(&mut out, s, e.to_string());
            }
            return out;
        }
    };
    // evaluate each distinct pick once, for the classifiers that need it
    let mut needed: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (s, row) in chosen.iter().enumerate() {
        if row.iter().any(Option::is_none) {
            fail_all(&mut out, s, "no feasible parameter candidate in selection".into());
            continue;
        }
        for c in row.iter().flatten() {
            let list = needed.entry(*c).or_default();
            if !list.contains(&s) {
                list.push(s);
            }
        }
    }
    let mut failed_specs: Vec<usize> = Vec::new();
    let mut reports = BTreeMap::new();
    for (cand, spec_ids) in &needed {
        let subset: Vec<ClassifierSpec> = spec_ids.iter().map(|&s| specs[s]).collect();
        match evaluate_plan(ds, outer, &candidates[*cand], &subset, &options) {
            Ok(rs) => {
                for (s, r) in spec_ids.iter().zip(rs) {
                    reports.insert((*cand, *s), r);
                }
            }
            Err(e) => {
                for &s in spec_ids {
                    if !failed_specs.contains(&s) {
                        failed_specs.push(s);
                        fail_all(&mut out, s, e.to_string());
                    }
                }
            }
        }
    }
    for (s, row) in chosen.iter().enumerate() {
        if failed_specs.contains(&s) || row.iter().any(Option::is_none) {
            continue;
        }
        let classifier = specs[s].short_name().to_string();
        for (m, metric) in metrics.iter().enumerate() {
            let cand = row[m].expect("checked above");
            let report = &reports[&(cand, s)];
            let params = candidates[cand].to_string();
            for f in &report.folds {
                out.folds.push(FoldRow {
                    dataset: ds.name().to_string(),
                    method: method.to_string(),
                    classifier: classifier.clone(),
                    metric: *metric,
                    params: params.clone(),
                    repetition: f.repetition,
                    fold: f.fold,
                    value: f.metrics.get(*metric),
                });
            }
            out.averages.push(AverageRow {
                dataset: ds.name().to_string(),
                method: method.to_string(),
                classifier: classifier.clone(),
                metric: *metric,
                params,
                value: report.averages.get(*metric),
            });
        }
    }
    out
}

/// Rayon pool; `RESAMPLE_BENCH_THREADS` overrides `threads`, which defaults
/// to the number of available cores.
pub fn thread_pool(threads: Option<usize>) -> CliResult<rayon::ThreadPool> {
    let from_env = std::env::var("RESAMPLE_BENCH_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|n| *n > 0);
    let width = from_env
        .or(threads)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    rayon::ThreadPoolBuilder::new()
        .num_threads(width)
        .build()
        .map_err(|e| crate::error::CliError::Config(format!("thread pool: {e}")))
}

/// Runs the whole grid. Dataset loading errors abort; per-cell errors are
/// collected in `failures`.
pub fn run_benchmark(config: &ExperimentConfig, threads: Option<usize>) -> CliResult<BenchmarkOutput> {
    let specs = config.classifier_specs()?;
    let paths = config.dataset_paths()?;
    let datasets: Vec<LabeledDataset> = paths.iter().map(|p| load(p, &config.csv)).collect::<CliResult<_>>()?;
    let mut names: Vec<&str> = datasets.iter().map(|d| d.name()).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(crate::error::CliError::Config(format!("duplicate dataset name '{}'", w[0])));
    }
    let pool = thread_pool(threads)?;
    info!(
        "benchmark: {} datasets x {} methods x {} classifiers on {} threads",
        datasets.len(),
        config.grid.methods.len(),
        specs.len(),
        pool.current_num_threads()
    );
    let (infos, units): (Vec<DatasetInfo>, Vec<UnitOutput>) = pool.install(|| {
        let infos: Vec<DatasetInfo> = datasets.par_iter().map(dataset_info).collect();
        let plans: Vec<Result<FoldPlan, String>> = datasets
            .iter()
            .map(|d| make_fold_plan(d, config.seed).map_err(|e| e.to_string()))
            .collect();
        let work: Vec<(usize, &str)> = (0..datasets.len())
            .flat_map(|d| config.grid.methods.iter().map(move |m| (d, m.as_str())))
            .collect();
        let units = work
            .par_iter()
            .map(|&(d, method)| match &plans[d] {
                Ok(plan) => run_unit(&datasets[d], plan, method, config, &specs),
                Err(e) => UnitOutput {
                    folds: Vec::new(),
                    averages: Vec::new(),
                    failures: specs
                        .iter()
                        .map(|s| Failure {
                            dataset: datasets[d].name().to_string(),
                            method: method.to_string(),
                            classifier: s.short_name().to_string(),
                            error: e.clone(),
                        })
                        .collect(),
                },
            })
            .collect();
        (infos, units)
    });
    let mut out = BenchmarkOutput {
        datasets: infos,
        ..Default::default()
    };
    for u in units {
        out.folds.extend(u.folds);
        out.averages.extend(u.averages);
        out.failures.extend(u.failures);
    }
    sort_output(&mut out);
    Ok(out)
}

pub fn sort_output(out: &mut BenchmarkOutput) {
    out.folds.sort_by(|a, b| {
        (&a.dataset, &a.method, &a.classifier, a.metric.name(), a.repetition, a.fold).cmp(&(
            &b.dataset,
            &b.method,
            &b.classifier,
            b.metric.name(),
            b.repetition,
            b.fold,
        ))
    });
    out.averages.sort_by(|a, b| {
        (&a.dataset, &a.method, &a.classifier, a.metric.name()).cmp(&(
            &b.dataset,
            &b.method,
            &b.classifier,
            b.metric.name(),
        ))
    });
    out.failures.sort_by(|a, b| {
        (&a.dataset, &a.method, &a.classifier).cmp(&(&b.dataset, &b.method, &b.classifier))
    });
    out.datasets.sort_by(|a, b| a.name.cmp(&b.name));
}
