//! The `sweep` command: CSMOUTE performance across the ratio grid, averaged
//! over datasets with a t-based 95% confidence interval.

use csmoute_core::evaluation::{evaluate_plan, make_fold_plan};
use csmoute_core::special::student_t_quantile;
use csmoute_core::{ClassifierSpec, EvalOptions, LabeledDataset, Metric, Resampler};
use log::warn;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmark::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub ratio: f64,
    pub metric: Metric,
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSettings {
    pub ratios: Vec<f64>,
    pub k_smote: usize,
    pub k_smute: usize,
    pub classifier: ClassifierSpec,
    pub metrics: Vec<Metric>,
    pub options: EvalOptions,
}

/// `0.0, 0.1, ..., 1.0`.
pub fn default_ratios() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

/// Mean and 95% interval `mean ± t(0.975, n-1) * sd / sqrt(n)`. A single
/// value gives a zero-width interval.
pub fn mean_ci(values: &[f64]) -> Option<(f64, f64, f64)> {
    let n = values.len();
    if n == 0 {
        return None;
    }
    let mean = values.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return Some((mean, mean, mean));
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let half = student_t_quantile(0.975, (n - 1) as f64) * (var / n as f64).sqrt();
    Some((mean, mean - half, mean + half))
}

/// Runs every (dataset, ratio) cell on the current rayon pool. Rows come out
/// ratio-major, metrics in settings order.
pub fn run_sweep(datasets: &[LabeledDataset], s: &SweepSettings) -> (Vec<SweepRow>, Vec<Failure>) {
    let cells: Vec<(usize, usize)> = (0..datasets.len())
        .flat_map(|d| (0..s.ratios.len()).map(move |r| (d, r)))
        .collect();
    let results: Vec<Result<Vec<Option<f64>>, String>> = cells
        .par_iter()
        .map(|&(d, r)| {
            let ds = &datasets[d];
            let resampler = Resampler::Csmoute {
                k_smote: s.k_smote,
                k_smute: s.k_smute,
                ratio: s.ratios[r],
            };
            let plan = make_fold_plan(ds, s.options.seed).map_err(|e| e.to_string())?;
            let report = evaluate_plan(ds, &plan, &resampler, &[s.classifier], &s.options)
                .map_err(|e| e.to_string())?
                .remove(0);
            Ok(s.metrics.iter().map(|m| report.averages.get(*m)).collect())
        })
        .collect();

    let mut failures = Vec::new();
    let mut per_ratio: Vec<Vec<Vec<f64>>> = vec![vec![Vec::new(); s.metrics.len()]; s.ratios.len()];
    for (&(d, r), res) in cells.iter().zip(results) {
        match res {
            Ok(values) => {
                for (m, v) in values.into_iter().enumerate() {
                    if let Some(v) = v {
                        per_ratio[r][m].push(v);
                    }
                }
            }
            Err(e) => failures.push(Failure {
                dataset: datasets[d].name().to_string(),
                method: format!("csmoute(ratio={})", s.ratios[r]),
                classifier: s.classifier.short_name().to_string(),
                error: e,
            }),
        }
    }
    let mut rows = Vec::new();
    for (r, ratio) in s.ratios.iter().enumerate() {
        for (m, metric) in s.metrics.iter().enumerate() {
            match mean_ci(&per_ratio[r][m]) {
                Some((mean, ci_low, ci_high)) => rows.push(SweepRow {
                    ratio: *ratio,
                    metric: *metric,
                    mean,
                    ci_low,
                    ci_high,
                }),
                None => warn!("ratio {ratio}, {metric}: no dataset produced a value"),
            }
        }
    }
    (rows, failures)
}
