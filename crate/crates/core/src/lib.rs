//! Interpolation-based resampling for imbalanced binary classification
//! (SMOTE, SMUTE and their combination CSMOUTE), a minority-instance
//! taxonomy, a 5×2 cross-validation harness and nonparametric statistics for
//! comparing methods over many datasets.

pub mod dataset;
pub mod error;
pub mod evaluation;
pub mod matrix;
pub mod neighbors;
pub mod resampling;
pub mod rng;
pub mod special;
pub mod stats;
pub mod taxonomy;

pub use dataset::{
    encode_categoricals, parse_csv, parse_csv_with, parse_keel, parse_keel_with, standardize, write_csv, Column,
    ColumnValues, DatasetSummary, FeatureKind, Label, LabeledDataset, MissingPolicy, Scaler,
};
pub use error::{Error, Result};
pub use evaluation::{ClassifierSpec, EvalOptions, EvaluationReport, FoldPlan, Metric, MetricReport, Scaling};
pub use matrix::Matrix;
pub use neighbors::{knn, knn_cross, NeighborList};
pub use resampling::{
    csmoute, csmoute_with, ros, rus, smote, smute, smute_with, ResampleConfig, ResampleResult, Resampler,
    SmoteOutput, SmuteOptions, SmuteOutput, Synthetic,
};
pub use rng::{Draws, ScriptedDraws, StreamRng};
pub use stats::{ComparisonTable, TestResult};
pub use taxonomy::{categorize, categorize_with, MinorityType, MinorityTypeReport, SelfExclusion};
