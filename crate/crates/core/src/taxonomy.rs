//! Minority-instance taxonomy: each minority row is labelled safe,
//! borderline, rare or outlier from the number of minority rows among its
//! five nearest neighbors in the whole dataset.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::{Label, LabeledDataset};
use crate::error::{Error, Result};
use crate::neighbors::nearest_to;

pub const NEIGHBORHOOD: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinorityType {
    Safe,
    Borderline,
    Rare,
    Outlier,
}

impl MinorityType {
    pub const ALL: [MinorityType; 4] = [
        MinorityType::Safe,
        MinorityType::Borderline,
        MinorityType::Rare,
        MinorityType::Outlier,
    ];

    /// Category for `c` minority rows among the 5 neighbors.
    pub fn from_count(c: usize) -> MinorityType {
        match c {
            4.. => MinorityType::Safe,
            2 | 3 => MinorityType::Borderline,
            1 => MinorityType::Rare,
            0 => MinorityType::Outlier,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MinorityType::Safe => "safe",
            MinorityType::Borderline => "borderline",
            MinorityType::Rare => "rare",
            MinorityType::Outlier => "outlier",
        }
    }
}

impl fmt::Display for MinorityType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the query row itself is kept out of its own neighborhood.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum SelfExclusion {
    /// Take the 6 nearest rows to the query point (the query included) and
    /// drop the first. Differs from `ByIndex` only when the query has exact
    /// duplicates at a lower index.
    #[default]
    FirstNearest,
    /// Skip the query's own row index.
    ByIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InstanceType {
    pub row: usize,
    pub category: MinorityType,
    /// Minority rows among the neighbors, 0..=5.
    pub same_class: usize,
}

/// Shares of safe, borderline, rare and outlier minority rows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TypeProportions {
    pub safe: f64,
    pub borderline: f64,
    pub rare: f64,
    pub outlier: f64,
}

impl TypeProportions {
    pub fn get(&self, t: MinorityType) -> f64 {
        match t {
            MinorityType::Safe => self.safe,
            MinorityType::Borderline => self.borderline,
            MinorityType::Rare => self.rare,
            MinorityType::Outlier => self.outlier,
        }
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.safe, self.borderline, self.rare, self.outlier]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorityTypeReport {
    pub per_instance: Vec<InstanceType>,
    pub proportions: TypeProportions,
}

impl MinorityTypeReport {
    pub fn counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for inst in &self.per_instance {
            c[inst.category as usize] += 1;
        }
        c
    }
}

/// Categorizes every minority row. The dataset should already be encoded and
/// standardized.
pub fn categorize(ds: &LabeledDataset) -> Result<MinorityTypeReport> {
    categorize_with(ds, SelfExclusion::default())
}

pub fn categorize_with(ds: &LabeledDataset, exclusion: SelfExclusion) -> Result<MinorityTypeReport> {
    let n = ds.n_samples();
    if n < NEIGHBORHOOD + 1 {
        return Err(Error::Argument(format!(
            "{}: taxonomy needs at least {} rows, got {n}",
            ds.name(),
            NEIGHBORHOOD + 1
        )));
    }
    let x = ds.features()?;
    let labels = ds.labels();
    let mut per_instance = Vec::with_capacity(ds.minority_count());
    for (row, _) in labels.iter().enumerate().filter(|(_, l)| **l == Label::Minority) {
        let neighbors: Vec<usize> = match exclusion {
            SelfExclusion::FirstNearest => nearest_to(&x, x.row(row), NEIGHBORHOOD + 1, None)
                .into_iter()
                .skip(1)
                .map(|(i, _)| i)
                .collect(),
            SelfExclusion::ByIndex => nearest_to(&x, x.row(row), NEIGHBORHOOD, Some(row))
                .into_iter()
                .map(|(i, _)| i)
                .collect(),
        };
        let same_class = neighbors.iter().filter(|&&i| labels[i] == Label::Minority).count();
        per_instance.push(InstanceType {
            row,
            category: MinorityType::from_count(same_class),
            same_class,
        });
    }
    let total = per_instance.len() as f64;
    let mut counts = [0usize; 4];
    for inst in &per_instance {
        counts[inst.category as usize] += 1;
    }
    let share = |c: usize| c as f64 / total;
    Ok(MinorityTypeReport {
        per_instance,
        proportions: TypeProportions {
            safe: share(counts[0]),
            borderline: share(counts[1]),
            rare: share(counts[2]),
            outlier: share(counts[3]),
        },
    })
}
