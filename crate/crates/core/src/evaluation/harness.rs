use log::warn;
use serde::{Deserialize, Serialize};

use super::classifier::ClassifierSpec;
use super::folds::{make_fold_plan, FoldPlan, Split};
use super::metrics::{Metric, MetricReport};
use crate::dataset::{standardize, Label, LabeledDataset, Scaler};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::resampling::{Resampler, SmuteOptions};
use crate::rng::StreamRng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scaling {
    /// Standardize the whole dataset once, before splitting.
    #[default]
    Global,
    /// Fit the scaler on each training fold and apply it to that fold's test set.
    FoldSafe,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalOptions {
    pub seed: u64,
    pub scaling: Scaling,
    /// `score >= threshold` predicts minority.
    pub threshold: f64,
    pub smute: SmuteOptions,
}

impl EvalOptions {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            scaling: Scaling::default(),
            threshold: 0.5,
            smute: SmuteOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldReport {
    pub repetition: usize,
    pub fold: usize,
    /// Class sizes of the training set after resampling.
    pub train_majority: usize,
    pub train_minority: usize,
    pub metrics: MetricReport,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricAverages {
    pub f_measure: f64,
    /// Mean over folds where AUC was defined; `None` if it never was.
    pub auc: Option<f64>,
    pub g_mean: f64,
}

impl MetricAverages {
    pub fn get(&self, metric: Metric) -> Option<f64> {
        match metric {
            Metric::FMeasure => Some(self.f_measure),
            Metric::Auc => self.auc,
            Metric::GMean => Some(self.g_mean),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub dataset: String,
    pub resampler: Resampler,
    pub classifier: ClassifierSpec,
    pub folds: Vec<FoldReport>,
    pub averages: MetricAverages,
}

pub fn average(folds: &[FoldReport]) -> MetricAverages {
    let n = folds.len().max(1) as f64;
    let aucs: Vec<f64> = folds.iter().filter_map(|f| f.metrics.auc).collect();
    if aucs.len() < folds.len() {
        warn!(
            "AUC undefined on {} of {} folds; averaged over the rest",
            folds.len() - aucs.len(),
            folds.len()
        );
    }
    MetricAverages {
        f_measure: folds.iter().map(|f| f.metrics.f_measure).sum::<f64>() / n,
        auc: (!aucs.is_empty()).then(|| aucs.iter().sum::<f64>() / aucs.len() as f64),
        g_mean: folds.iter().map(|f| f.metrics.g_mean).sum::<f64>() / n,
    }
}

/// Seed handed to the resampler on one fold: drawn from the stream
/// `(seed, "resample", repetition, fold)`.
pub fn fold_seed(seed: u64, repetition: usize, fold: usize) -> u64 {
    StreamRng::derive(seed, &["resample", &repetition.to_string(), &fold.to_string()]).next_u64()
}

/// Numeric features of `ds`, standardized if `scaling` is global.
pub fn prepare_features(ds: &LabeledDataset, scaling: Scaling) -> Result<Matrix> {
    match scaling {
        Scaling::Global => standardize(ds)?.0.features(),
        Scaling::FoldSafe => ds.features(),
    }
}

/// Runs one split for several classifiers sharing the same resampled
/// training set. `x` comes from [`prepare_features`].
pub fn run_split(
    x: &Matrix,
    labels: &[Label],
    split: &Split,
    resampler: &Resampler,
    classifiers: &[ClassifierSpec],
    options: &EvalOptions,
) -> Result<Vec<FoldReport>> {
    let wrap = |e: Error| Error::FoldFailed {
        repetition: split.repetition,
        fold: split.fold,
        source: Box::new(e),
    };
    let mut in_test = vec![false; labels.len()];
    for &i in &split.test {
        in_test[i] = true;
    }
    assert!(
        split.train.iter().all(|&i| !in_test[i]),
        "fold {}.{}: training rows overlap the test set",
        split.repetition,
        split.fold
    );

    let (train_x, test_x) = match options.scaling {
        Scaling::Global => (x.select_rows(&split.train), x.select_rows(&split.test)),
        Scaling::FoldSafe => {
            let train = x.select_rows(&split.train);
            let scaler = Scaler::fit(&train);
            (scaler.transform(&train), scaler.transform(&x.select_rows(&split.test)))
        }
    };
    let (mut maj_rows, mut min_rows) = (Vec::new(), Vec::new());
    for (pos, &i) in split.train.iter().enumerate() {
        match labels[i] {
            Label::Majority => maj_rows.push(pos),
            Label::Minority => min_rows.push(pos),
        }
    }
    let seed = fold_seed(options.seed, split.repetition, split.fold);
    let (maj, min) = resampler
        .apply(
            &train_x.select_rows(&maj_rows),
            &train_x.select_rows(&min_rows),
            seed,
            options.smute,
        )
        .map_err(wrap)?;
    let fit_x = maj.vstack(&min).map_err(wrap)?;
    let mut fit_y = vec![Label::Majority; maj.n_rows()];
    fit_y.resize(maj.n_rows() + min.n_rows(), Label::Minority);
    let test_y: Vec<Label> = split.test.iter().map(|&i| labels[i]).collect();

    classifiers
        .iter()
        .map(|spec| {
            let model = spec.fit(&fit_x, &fit_y).map_err(wrap)?;
            let scores = model.predict_scores(&test_x).map_err(wrap)?;
            let metrics = MetricReport::from_scores(&scores, &test_y, options.threshold).map_err(wrap)?;
            Ok(FoldReport {
                repetition: split.repetition,
                fold: split.fold,
                train_majority: maj.n_rows(),
                train_minority: min.n_rows(),
                metrics,
            })
        })
        .collect()
}

/// Evaluates one resampler with several classifiers over every split of
/// `plan`. Returns one report per classifier, in input order.
pub fn evaluate_plan(
    ds: &LabeledDataset,
    plan: &FoldPlan,
    resampler: &Resampler,
    classifiers: &[ClassifierSpec],
    options: &EvalOptions,
) -> Result<Vec<EvaluationReport>> {
    let x = prepare_features(ds, options.scaling)?;
    let mut per_classifier: Vec<Vec<FoldReport>> = vec![Vec::new(); classifiers.len()];
    for split in plan.splits() {
        let reports = run_split(&x, ds.labels(), &split, resampler, classifiers, options)?;
        for (acc, r) in per_classifier.iter_mut().zip(reports) {
            acc.push(r);
        }
    }
    Ok(classifiers
        .iter()
        .zip(per_classifier)
        .map(|(spec, folds)| EvaluationReport {
            dataset: ds.name().to_string(),
            resampler: *resampler,
            classifier: *spec,
            averages: average(&folds),
            folds,
        })
        .collect())
}

/// 5×2 cross-validation of one resampler and classifier on `ds`: resample
/// the training half only, fit, score the test half.
pub fn evaluate(
    ds: &LabeledDataset,
    resampler: &Resampler,
    classifier: &ClassifierSpec,
    options: &EvalOptions,
) -> Result<EvaluationReport> {
    let plan = make_fold_plan(ds, options.seed)?;
    let mut reports = evaluate_plan(ds, &plan, resampler, std::slice::from_ref(classifier), options)?;
    Ok(reports.remove(0))
}
