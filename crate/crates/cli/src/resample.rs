//! The `resample` command: rebalance one dataset and record lineage.

use csmoute_core::resampling::{ROS_STREAM, RUS_STREAM, SMOTE_STREAM, SMUTE_STREAM};
use csmoute_core::{
    csmoute_with, ros, rus, smote, smute_with, Label, LabeledDataset, Matrix, ResampleConfig, Resampler,
    SmuteOptions, StreamRng, Synthetic,
};
use serde::{Deserialize, Serialize};

use crate::error::CliResult;

/// Provenance of a resampled dataset. Ids are class-local: original rows of
/// a class are `0..m` in input order, new rows are numbered from `m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lineage {
    pub method: Resampler,
    pub seed: u64,
    /// Input row index of each original minority id.
    pub minority_input_rows: Vec<usize>,
    /// Input row index of each original majority id.
    pub majority_input_rows: Vec<usize>,
    /// Interpolated minority rows (SMOTE), in output order.
    pub minority_synthetic: Vec<Synthetic>,
    /// Interpolated majority rows (SMUTE), in creation order. Some may have
    /// been merged away later; see `majority_removed`.
    pub majority_synthetic: Vec<Synthetic>,
    /// Minority ids copied by random oversampling, in output order.
    pub minority_copies: Vec<usize>,
    /// Majority ids deleted, in deletion order.
    pub majority_removed: Vec<usize>,
    pub output_minority: usize,
    pub output_majority: usize,
}

#[derive(Debug, Clone)]
pub struct Resampled {
    pub dataset: LabeledDataset,
    pub lineage: Lineage,
}

/// Rebalances `ds` (numeric features, unscaled). Output rows: surviving input
/// rows in input order, then new minority rows, then new majority rows.
pub fn resample(ds: &LabeledDataset, method: Resampler, seed: u64, options: SmuteOptions) -> CliResult<Resampled> {
    let x = ds.features()?;
    let (maj_rows, min_rows) = ds.class_indices();
    let (minority, majority) = (x.select_rows(&min_rows), x.select_rows(&maj_rows));
    let m_maj = majority.n_rows();
    let gap = m_maj.saturating_sub(minority.n_rows());

    let mut lineage = Lineage {
        method,
        seed,
        minority_input_rows: min_rows.clone(),
        majority_input_rows: maj_rows.clone(),
        minority_synthetic: Vec::new(),
        majority_synthetic: Vec::new(),
        minority_copies: Vec::new(),
        majority_removed: Vec::new(),
        output_minority: 0,
        output_majority: 0,
    };
    // kept majority ids (< m_maj) plus new rows for each class
    let mut kept_majority: Vec<usize> = (0..m_maj).collect();
    let mut new_minority = Matrix::new(x.n_cols());
    let mut new_majority = Matrix::new(x.n_cols());

    match method {
        Resampler::None => {}
        Resampler::Rus => {
            let (_, kept) = rus(&majority, gap, &mut StreamRng::derive(seed, &[RUS_STREAM]))?;
            lineage.majority_removed = (0..m_maj).filter(|i| kept.binary_search(i).is_err()).collect();
            kept_majority = kept;
        }
        Resampler::Ros => {
            let (_, sources) = ros(&minority, gap, &mut StreamRng::derive(seed, &[ROS_STREAM]))?;
            new_minority = minority.select_rows(&sources);
            lineage.minority_copies = sources;
        }
        Resampler::Smote { k } => {
            let out = smote(&minority, k, gap, &mut StreamRng::derive(seed, &[SMOTE_STREAM]))?;
            new_minority = out.rows.select_rows(&(minority.n_rows()..out.rows.n_rows()).collect::<Vec<_>>());
            lineage.minority_synthetic = out.lineage;
        }
        Resampler::Smute { k } => {
            let out = smute_with(&majority, k, gap, options, &mut StreamRng::derive(seed, &[SMUTE_STREAM]))?;
            (kept_majority, new_majority) = split_smute(&out.rows, &out.ids, m_maj);
            lineage.majority_synthetic = out.lineage;
            lineage.majority_removed = out.removed;
        }
        Resampler::Csmoute { k_smote, k_smute, ratio } => {
            let config = ResampleConfig {
                k_smote,
                k_smute,
                ratio,
                seed,
            };
            let out = csmoute_with(&majority, &minority, &config, options)?;
            let m_min = minority.n_rows();
            new_minority = out
                .minority_out
                .select_rows(&(m_min..out.minority_out.n_rows()).collect::<Vec<_>>());
            (kept_majority, new_majority) = split_smute(&out.majority_out, &out.majority_ids, m_maj);
            lineage.minority_synthetic = out.minority_lineage;
            lineage.majority_synthetic = out.majority_lineage;
            lineage.majority_removed = out.removed;
        }
    }

    let mut keep_input = vec![false; ds.n_samples()];
    for &r in &min_rows {
        keep_input[r] = true;
    }
    for &id in &kept_majority {
        keep_input[maj_rows[id]] = true;
    }
    let rows: Vec<usize> = (0..ds.n_samples()).filter(|&i| keep_input[i]).collect();
    let mut labels: Vec<Label> = rows.iter().map(|&i| ds.labels()[i]).collect();
    let mut out = x.select_rows(&rows);
    out = out.vstack(&new_minority)?.vstack(&new_majority)?;
    labels.extend(std::iter::repeat_n(Label::Minority, new_minority.n_rows()));
    labels.extend(std::iter::repeat_n(Label::Majority, new_majority.n_rows()));

    lineage.output_minority = labels.iter().filter(|l| **l == Label::Minority).count();
    lineage.output_majority = labels.len() - lineage.output_minority;
    let names = ds.feature_names().into_iter().map(String::from).collect();
    let dataset = LabeledDataset::from_matrix(
        ds.name(),
        names,
        &out,
        labels,
        (ds.minority_class(), ds.majority_class()),
    )?;
    Ok(Resampled { dataset, lineage })
}

/// Splits SMUTE output into surviving original ids (sorted) and the
/// synthetic rows still present, in id order.
fn split_smute(rows: &Matrix, ids: &[usize], m: usize) -> (Vec<usize>, Matrix) {
    let mut kept: Vec<usize> = ids.iter().copied().filter(|&id| id < m).collect();
    kept.sort_unstable();
    let mut synth: Vec<(usize, usize)> = ids.iter().enumerate().filter(|(_, &id)| id >= m).map(|(r, &id)| (id, r)).collect();
    synth.sort_unstable();
    let at: Vec<usize> = synth.into_iter().map(|(_, r)| r).collect();
    (kept, rows.select_rows(&at))
}
