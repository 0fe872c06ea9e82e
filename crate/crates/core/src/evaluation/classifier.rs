use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dataset::Label;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::neighbors::nearest_to;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogisticParams {
    /// L2 penalty on the weights (not the bias).
    pub l2: f64,
    pub learning_rate: f64,
    pub iterations: usize,
}

impl Default for LogisticParams {
    fn default() -> Self {
        Self {
            l2: 1.0,
            learning_rate: 0.1,
            iterations: 1000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassifierSpec {
    Logistic(LogisticParams),
    Knn { k: usize },
}

impl ClassifierSpec {
    pub fn logistic() -> Self {
        ClassifierSpec::Logistic(LogisticParams::default())
    }

    pub fn knn() -> Self {
        ClassifierSpec::Knn { k: 5 }
    }

    /// Short name used in reports: `lr` or `knn`.
    pub fn short_name(&self) -> &'static str {
        match self {
            ClassifierSpec::Logistic(_) => "lr",
            ClassifierSpec::Knn { .. } => "knn",
        }
    }

    pub fn fit(&self, x: &Matrix, y: &[Label]) -> Result<Classifier> {
        match *self {
            ClassifierSpec::Logistic(p) => train_logistic(x, y, p),
            ClassifierSpec::Knn { k } => train_knn(x, y, k),
        }
    }
}

impl fmt::Display for ClassifierSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classifier {
    Logistic { weights: Vec<f64>, bias: f64 },
    Knn { k: usize, points: Matrix, labels: Vec<Label> },
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

fn check_training(x: &Matrix, y: &[Label]) -> Result<()> {
    if x.n_rows() != y.len() {
        return Err(Error::Argument(format!("{} rows but {} labels", x.n_rows(), y.len())));
    }
    if !y.contains(&Label::Minority) || !y.contains(&Label::Majority) {
        return Err(Error::DegenerateClass("training data needs both classes".into()));
    }
    if x.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::Argument("non-finite feature value".into()));
    }
    Ok(())
}

/// Full-batch gradient descent on mean log-loss plus `l2 / 2 * ||w||^2`,
/// starting from zero. Minority is the positive class.
pub fn train_logistic(x: &Matrix, y: &[Label], params: LogisticParams) -> Result<Classifier> {
    check_training(x, y)?;
    let n = x.n_rows() as f64;
    let d = x.n_cols();
    let target: Vec<f64> = y.iter().map(|l| if *l == Label::Minority { 1.0 } else { 0.0 }).collect();
    let mut w = vec![0.0; d];
    let mut b = 0.0;
    let mut grad = vec![0.0; d];
    for _ in 0..params.iterations {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let mut grad_b = 0.0;
        for (row, t) in x.rows().zip(&target) {
            let z: f64 = b + row.iter().zip(&w).map(|(a, c)| a * c).sum::<f64>();
            let err = sigmoid(z) - t;
            grad_b += err;
            for (g, v) in grad.iter_mut().zip(row) {
                *g += err * v;
            }
        }
        for (wj, g) in w.iter_mut().zip(&grad) {
            *wj -= params.learning_rate * (g / n + params.l2 * *wj);
        }
        b -= params.learning_rate * grad_b / n;
    }
    Ok(Classifier::Logistic { weights: w, bias: b })
}

/// Stores the training set; the score of a query is the minority share of
/// its `k` nearest training rows.
pub fn train_knn(x: &Matrix, y: &[Label], k: usize) -> Result<Classifier> {
    if k == 0 {
        return Err(Error::Argument("k must be at least 1".into()));
    }
    check_training(x, y)?;
    Ok(Classifier::Knn {
        k,
        points: x.clone(),
        labels: y.to_vec(),
    })
}

impl Classifier {
    /// Minority-class score in `[0, 1]` for each row of `x`.
    pub fn predict_scores(&self, x: &Matrix) -> Result<Vec<f64>> {
        match self {
            Classifier::Logistic { weights, bias } => {
                if x.n_cols() != weights.len() {
                    return Err(Error::Argument("feature count differs from training".into()));
                }
                Ok(x.rows()
                    .map(|row| sigmoid(bias + row.iter().zip(weights).map(|(a, c)| a * c).sum::<f64>()))
                    .collect())
            }
            Classifier::Knn { k, points, labels } => {
                if x.n_cols() != points.n_cols() {
                    return Err(Error::Argument("feature count differs from training".into()));
                }
                Ok(x.rows()
                    .map(|row| {
                        let found = nearest_to(points, row, *k, None);
                        let hits = found.iter().filter(|(i, _)| labels[*i] == Label::Minority).count();
                        hits as f64 / found.len() as f64
                    })
                    .collect())
            }
        }
    }
}
