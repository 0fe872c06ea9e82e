use std::fmt;
use std::str::FromStr;

use log::warn;
use serde::{Deserialize, Serialize};

use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::stats::rank_ascending;

/// Confusion counts with the minority class as positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

pub fn confusion(y_true: &[Label], y_pred: &[Label]) -> Result<Confusion> {
    if y_true.len() != y_pred.len() {
        return Err(Error::Argument(format!(
            "{} true labels but {} predictions",
            y_true.len(),
            y_pred.len()
        )));
    }
    let mut c = Confusion::default();
    for (t, p) in y_true.iter().zip(y_pred) {
        match (t, p) {
            (Label::Minority, Label::Minority) => c.tp += 1,
            (Label::Majority, Label::Minority) => c.fp += 1,
            (Label::Majority, Label::Majority) => c.tn += 1,
            (Label::Minority, Label::Majority) => c.fn_ += 1,
        }
    }
    Ok(c)
}

/// Harmonic mean of precision and recall. 0 when `tp = 0` with any error, 1
/// when there is nothing to find and nothing was predicted.
pub fn f_measure(tp: usize, fp: usize, fn_: usize) -> f64 {
    if tp == 0 {
        return if fp == 0 && fn_ == 0 { 1.0 } else { 0.0 };
    }
    // 2PR/(P+R) simplifies to 2tp/(2tp+fp+fn)
    2.0 * tp as f64 / (2 * tp + fp + fn_) as f64
}

/// `sqrt(sensitivity * specificity)`. A class absent from the test set
/// contributes a factor of 1 (with a warning).
pub fn g_mean(tp: usize, fn_: usize, tn: usize, fp: usize) -> f64 {
    let factor = |good: usize, bad: usize, what: &str| {
        if good + bad == 0 {
            warn!("no {what} rows in test set; G-mean factor set to 1");
            1.0
        } else {
            good as f64 / (good + bad) as f64
        }
    };
    (factor(tp, fn_, "minority") * factor(tn, fp, "majority")).sqrt()
}

/// ROC AUC as the Mann-Whitney statistic: the share of (minority, majority)
/// pairs where the minority row scores higher, ties counting one half.
pub fn auc(scores: &[f64], y_true: &[Label]) -> Result<f64> {
    if scores.len() != y_true.len() {
        return Err(Error::Argument(format!(
            "{} scores but {} labels",
            scores.len(),
            y_true.len()
        )));
    }
    if scores.iter().any(|s| s.is_nan()) {
        return Err(Error::Argument("NaN score".into()));
    }
    let n_pos = y_true.iter().filter(|l| **l == Label::Minority).count();
    let n_neg = y_true.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return Err(Error::Undefined("AUC needs both classes in the test set".into()));
    }
    let ranks = rank_ascending(scores);
    let rank_sum: f64 = ranks
        .iter()
        .zip(y_true)
        .filter(|(_, l)| **l == Label::Minority)
        .map(|(r, _)| r)
        .sum();
    // rank sums are multiples of 1/2, so this is exact for realistic sizes
    let u = rank_sum - (n_pos * (n_pos + 1)) as f64 / 2.0;
    Ok(u / (n_pos as f64 * n_neg as f64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    FMeasure,
    Auc,
    GMean,
}

impl Metric {
    pub const ALL: [Metric; 3] = [Metric::FMeasure, Metric::Auc, Metric::GMean];

    pub fn name(self) -> &'static str {
        match self {
            Metric::FMeasure => "f_measure",
            Metric::Auc => "auc",
            Metric::GMean => "g_mean",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "f_measure" | "f1" | "f" => Ok(Metric::FMeasure),
            "auc" => Ok(Metric::Auc),
            "g_mean" | "gmean" => Ok(Metric::GMean),
            other => Err(Error::Argument(format!("unknown metric '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub f_measure: f64,
    /// `None` when the test set holds a single class.
    pub auc: Option<f64>,
    pub g_mean: f64,
}

impl MetricReport {
    /// Scores test rows: `score >= threshold` predicts minority.
    pub fn from_scores(scores: &[f64], y_true: &[Label], threshold: f64) -> Result<MetricReport> {
        let pred: Vec<Label> = scores
            .iter()
            .map(|&s| if s >= threshold { Label::Minority } else { Label::Majority })
            .collect();
        let c = confusion(y_true, &pred)?;
        let auc = match auc(scores, y_true) {
            Ok(a) => Some(a),
            Err(Error::Undefined(msg)) => {
                warn!("{msg}; AUC reported as missing");
                None
            }
            Err(e) => return Err(e),
        };
        Ok(MetricReport {
            tp: c.tp,
            fp: c.fp,
            tn: c.tn,
            fn_: c.fn_,
            f_measure: f_measure(c.tp, c.fp, c.fn_),
            auc,
            g_mean: g_mean(c.tp, c.fn_, c.tn, c.fp),
        })
    }

    pub fn get(&self, metric: Metric) -> Option<f64> {
        match metric {
            Metric::FMeasure => Some(self.f_measure),
            Metric::Auc => self.auc,
            Metric::GMean => Some(self.g_mean),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::{Majority as J, Minority as N};

    #[test]
    fn confusion_examples() {
        let t = [N, N, J, J, J];
        let c = confusion(&t, &t).unwrap();
        assert_eq!((c.fp, c.fn_), (0, 0));
        let inv: Vec<Label> = t.iter().map(|l| if *l == N { J } else { N }).collect();
        let c = confusion(&t, &inv).unwrap();
        assert_eq!((c.tp, c.tn), (0, 0));
        let c = confusion(&t, &[N, J, N, J, J]).unwrap();
        assert_eq!(c, Confusion { tp: 1, fp: 1, tn: 2, fn_: 1 });
        assert!(confusion(&t, &t[..3]).is_err());
    }

    #[test]
    fn f_measure_examples() {
        assert!((f_measure(5, 10, 5) - 0.4).abs() < 1e-15);
        assert_eq!(f_measure(0, 3, 2), 0.0);
        assert_eq!(f_measure(7, 0, 0), 1.0);
        assert_eq!(f_measure(0, 0, 0), 1.0);
    }

    #[test]
    fn g_mean_examples() {
        // sens 0.5, spec 0.9
        let g = g_mean(5, 5, 9, 1);
        assert!((g - 0.670_820).abs() < 5e-7);
        assert_eq!(g_mean(0, 4, 9, 1), 0.0);
        assert_eq!(g_mean(4, 0, 9, 0), 1.0);
        // minority absent: factor 1
        assert!((g_mean(0, 0, 9, 1) - 0.9f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn auc_examples() {
        assert_eq!(auc(&[0.9, 0.8, 0.1, 0.2], &[N, N, J, J]).unwrap(), 1.0);
        assert_eq!(auc(&[0.3; 4], &[N, J, N, J]).unwrap(), 0.5);
        assert_eq!(auc(&[0.7, 0.6, 0.8], &[N, J, J]).unwrap(), 0.5);
        assert!(matches!(auc(&[0.1, 0.2], &[J, J]), Err(Error::Undefined(_))));
    }

    #[test]
    fn report_marks_missing_auc() {
        let r = MetricReport::from_scores(&[0.2, 0.7], &[J, J], 0.5).unwrap();
        assert_eq!(r.auc, None);
        assert_eq!((r.tn, r.fp), (1, 1));
        assert_eq!(r.tp + r.fp + r.tn + r.fn_, 2);
    }

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
    }
}
