use serde::{Deserialize, Serialize};

use crate::dataset::{Label, LabeledDataset};
use crate::error::{Error, Result};
use crate::rng::{Draws, StreamRng};

pub const REPETITIONS: usize = 5;

/// One train/test evaluation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Split {
    pub repetition: usize,
    /// 0 or 1: which half is the test set.
    pub fold: usize,
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Repeated stratified two-fold splits. Each repetition holds two
/// complementary halves (sorted row ids); each half serves once as the test
/// set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub seed: u64,
    pub halves: Vec<[Vec<usize>; 2]>,
}

impl FoldPlan {
    pub fn splits(&self) -> Vec<Split> {
        let mut out = Vec::with_capacity(self.halves.len() * 2);
        for (repetition, halves) in self.halves.iter().enumerate() {
            for fold in 0..2 {
                out.push(Split {
                    repetition,
                    fold,
                    train: halves[1 - fold].clone(),
                    test: halves[fold].clone(),
                });
            }
        }
        out
    }
}

/// The 5×2 plan for `ds`.
pub fn make_fold_plan(ds: &LabeledDataset, seed: u64) -> Result<FoldPlan> {
    plan_for_labels(ds.labels(), seed, REPETITIONS)
}

/// Stratified 50/50 splits over `labels`, `repetitions` times. Repetition `r`
/// shuffles each class with the stream `(seed, "folds", r)`. With an odd class
/// size the first half gets the extra minority row and the second half the
/// extra majority row.
pub fn plan_for_labels(labels: &[Label], seed: u64, repetitions: usize) -> Result<FoldPlan> {
    let minority: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == Label::Minority).collect();
    let majority: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == Label::Majority).collect();
    if minority.len() < 2 {
        return Err(Error::SampleTooSmall {
            got: minority.len(),
            needed: 2,
        });
    }
    if majority.len() < 2 {
        return Err(Error::SampleTooSmall {
            got: majority.len(),
            needed: 2,
        });
    }
    let mut halves = Vec::with_capacity(repetitions);
    for r in 0..repetitions {
        let mut rng = StreamRng::derive(seed, &["folds", &r.to_string()]);
        let min = shuffled(&minority, &mut rng);
        let maj = shuffled(&majority, &mut rng);
        let min_cut = min.len().div_ceil(2);
        let maj_cut = maj.len() / 2;
        let mut a: Vec<usize> = min[..min_cut].iter().chain(&maj[..maj_cut]).copied().collect();
        let mut b: Vec<usize> = min[min_cut..].iter().chain(&maj[maj_cut..]).copied().collect();
        a.sort_unstable();
        b.sort_unstable();
        halves.push([a, b]);
    }
    Ok(FoldPlan { seed, halves })
}

fn shuffled<D: Draws>(items: &[usize], rng: &mut D) -> Vec<usize> {
    let mut v = items.to_vec();
    for i in (1..v.len()).rev() {
        let j = rng.index(i + 1);
        v.swap(i, j);
    }
    v
}
