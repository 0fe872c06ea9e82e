//! 5×2 cross-validation, imbalance-aware metrics and the built-in
//! classifiers.

mod classifier;
mod folds;
mod harness;
mod metrics;

pub use classifier::{train_knn, train_logistic, Classifier, ClassifierSpec, LogisticParams};
pub use folds::{make_fold_plan, plan_for_labels, FoldPlan, Split, REPETITIONS};
pub use harness::{
    average, evaluate, evaluate_plan, fold_seed, prepare_features, run_split, EvalOptions, EvaluationReport,
    FoldReport, MetricAverages, Scaling,
};
pub use metrics::{auc, confusion, f_measure, g_mean, Confusion, Metric, MetricReport};
